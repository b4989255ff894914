"""Twisted (hom-)Lie algebras over exact rationals: the algebra type, its axioms
as structured checkers, representations, and direct sums."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .core import (
    Matrix,
    Vector,
    ZERO,
    identity_matrix,
    mat_mul,
    mat_vec,
    matrix,
    matrix_rank,
    nullspace,
    rational,
    transpose,
    vector,
    zero_vector,
)
from .reporting import CheckReport, failure

BracketTable = dict[tuple[int, int], dict[int, Fraction]]


def _normalize_brackets(
    dim: int, brackets: Mapping[tuple[int, int], Mapping[int, int | str | Fraction]]
) -> BracketTable:
    table: BracketTable = {}
    for (i, j), coeffs in brackets.items():
        if not (0 <= i < j < dim):
            raise ValueError(f"bracket key ({i}, {j}) must satisfy 0 <= i < j < dim")
        cleaned = {k: rational(v) for k, v in coeffs.items() if rational(v) != 0}
        for k in cleaned:
            if not 0 <= k < dim:
                raise ValueError(f"bracket value index {k} out of range")
        if cleaned:
            table[(i, j)] = cleaned
    return table


@dataclass
class HomLieAlgebra:
    """A dim-dimensional algebra with antisymmetric bracket and a twist map phi.

    Structure constants are stored sparsely for i < j only; [b_j, b_i] is derived
    by antisymmetry and [b_i, b_i] = 0. An optional symmetric bilinear form (Gram
    matrix) makes the algebra a candidate quadratic algebra.
    """

    dim: int
    brackets: BracketTable
    phi: Matrix
    form: Matrix | None = None
    name: str | None = None

    @classmethod
    def create(
        cls,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, int | str | Fraction]],
        phi: Sequence[Sequence[int | str | Fraction]] | None = None,
        form: Sequence[Sequence[int | str | Fraction]] | None = None,
        name: str | None = None,
    ) -> HomLieAlgebra:
        """Build and validate: the twisted Jacobi identity is enforced at load time."""
        algebra = cls.unchecked(dim, brackets, phi, form, name)
        report = check_hom_jacobi(algebra)
        if not report.passed:
            first = report.failures[0]
            raise ValueError(
                f"twisted Jacobi identity fails at basis triple {first.index}: {first.residual}"
            )
        return algebra

    @classmethod
    def unchecked(
        cls,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, int | str | Fraction]],
        phi: Sequence[Sequence[int | str | Fraction]] | None = None,
        form: Sequence[Sequence[int | str | Fraction]] | None = None,
        name: str | None = None,
    ) -> HomLieAlgebra:
        """Build without validity checks, for negative tests and for constructions
        whose validity a separate certifier re-establishes."""
        phi_matrix = identity_matrix(dim) if phi is None else matrix(phi)
        form_matrix = None if form is None else matrix(form)
        return cls(dim, _normalize_brackets(dim, brackets), phi_matrix, form_matrix, name)

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        """Sparse coordinates of [b_i, b_j] for any index pair."""
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -v for k, v in self.brackets.get((j, i), {}).items()}

    def bracket(self, x: Vector, y: Vector) -> Vector:
        """Bilinear extension of the bracket to coordinate vectors."""
        out = [ZERO] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    out[k] += xi * yj * c
        return tuple(out)

    def phi_apply(self, x: Vector) -> Vector:
        return mat_vec(self.phi, x)

    def basis_vector(self, i: int) -> Vector:
        return tuple(Fraction(1) if j == i else ZERO for j in range(self.dim))

    def pair(self, x: Vector, y: Vector) -> Fraction:
        """Evaluate the bilinear form; requires a form to be present."""
        if self.form is None:
            raise ValueError("algebra carries no bilinear form")
        total = ZERO
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.form[i]
            for j, yj in enumerate(y):
                if yj != 0 and row[j] != 0:
                    total += xi * row[j] * yj
        return total


def _sparse_bracket(h: HomLieAlgebra, xs: dict[int, Fraction], ys: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, xi in xs.items():
        for j, yj in ys.items():
            for k, c in h.bracket_basis(i, j).items():
                total = out.get(k, ZERO) + xi * yj * c
                if total == 0:
                    out.pop(k, None)
                else:
                    out[k] = total
    return out


def _phi_sparse(h: HomLieAlgebra, xs: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for i, xi in xs.items():
        for a in range(h.dim):
            c = h.phi[a][i]
            if c == 0:
                continue
            total = out.get(a, ZERO) + c * xi
            if total == 0:
                out.pop(a, None)
            else:
                out[a] = total
    return out


def _dense(h: HomLieAlgebra, xs: dict[int, Fraction]) -> Vector:
    out = [ZERO] * h.dim
    for i, v in xs.items():
        out[i] = v
    return tuple(out)


def check_hom_jacobi(h: HomLieAlgebra) -> CheckReport:
    """Twisted Jacobi: [phi(x),[y,z]] + [phi(y),[z,x]] + [phi(z),[x,y]] = 0 on all basis triples."""
    failures = []
    phi_cols = [_phi_sparse(h, {i: Fraction(1)}) for i in range(h.dim)]
    for i in range(h.dim):
        for j in range(h.dim):
            for k in range(h.dim):
                inner_jk = h.bracket_basis(j, k)
                inner_ki = h.bracket_basis(k, i)
                inner_ij = h.bracket_basis(i, j)
                if not (inner_jk or inner_ki or inner_ij):
                    continue
                total: dict[int, Fraction] = {}
                for outer, inner in ((phi_cols[i], inner_jk), (phi_cols[j], inner_ki), (phi_cols[k], inner_ij)):
                    if not inner:
                        continue
                    for a, v in _sparse_bracket(h, outer, inner).items():
                        s = total.get(a, ZERO) + v
                        if s == 0:
                            total.pop(a, None)
                        else:
                            total[a] = s
                if total:
                    failures.append(failure("hom_jacobi", (i, j, k), _dense(h, total)))
    return CheckReport("hom_jacobi", failures)


def check_twist_morphism(h: HomLieAlgebra) -> CheckReport:
    """phi is multiplicative: phi[x, y] = [phi(x), phi(y)] on all basis pairs."""
    failures = []
    phi_cols = [_phi_sparse(h, {i: Fraction(1)}) for i in range(h.dim)]
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            lhs = _phi_sparse(h, h.bracket_basis(i, j))
            rhs = _sparse_bracket(h, phi_cols[i], phi_cols[j])
            if lhs != rhs:
                diff = dict(lhs)
                for a, v in rhs.items():
                    s = diff.get(a, ZERO) - v
                    if s == 0:
                        diff.pop(a, None)
                    else:
                        diff[a] = s
                failures.append(failure("twist_morphism", (i, j), _dense(h, diff)))
    return CheckReport("twist_morphism", failures)


def check_involutive(h: HomLieAlgebra) -> bool:
    """True when the twist squares to the identity."""
    return mat_mul(h.phi, h.phi) == identity_matrix(h.dim)


def check_homomorphism(f: Matrix, h1: HomLieAlgebra, h2: HomLieAlgebra) -> CheckReport:
    """f intertwines twists and brackets: f . phi1 = phi2 . f and f[x,y] = [f(x), f(y)]."""
    failures = []
    lhs_twist = mat_mul(f, h1.phi)
    rhs_twist = mat_mul(h2.phi, f)
    for i in range(h1.dim):
        col_l = tuple(row[i] for row in lhs_twist)
        col_r = tuple(row[i] for row in rhs_twist)
        if col_l != col_r:
            failures.append(failure("twist_intertwine", (i,), tuple(a - b for a, b in zip(col_l, col_r))))
    f_cols = [tuple(row[i] for row in f) for i in range(h1.dim)]
    for i in range(h1.dim):
        for j in range(i + 1, h1.dim):
            lhs = mat_vec(f, _dense(h1, h1.bracket_basis(i, j)))
            rhs = h2.bracket(f_cols[i], f_cols[j])
            if lhs != rhs:
                failures.append(failure("bracket_preserved", (i, j), tuple(a - b for a, b in zip(lhs, rhs))))
    return CheckReport("homomorphism", failures)


@dataclass(frozen=True)
class LinearRep:
    """Linear data of a representation: rho maps each basis element of the algebra
    to an endomorphism of a target space, intertwined by the target twist alpha."""

    target_dim: int
    rho: tuple[Matrix, ...]
    alpha: Matrix

    @classmethod
    def of(
        cls,
        target_dim: int,
        rho: Sequence[Sequence[Sequence[int | str | Fraction]]],
        alpha: Sequence[Sequence[int | str | Fraction]] | None = None,
    ) -> LinearRep:
        alpha_matrix = identity_matrix(target_dim) if alpha is None else matrix(alpha)
        return cls(target_dim, tuple(matrix(m) for m in rho), alpha_matrix)

    def rho_of(self, x: Vector) -> Matrix:
        """rho extended linearly to an arbitrary algebra element."""
        out = [[ZERO] * self.target_dim for _ in range(self.target_dim)]
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for r, row in enumerate(self.rho[i]):
                for c, v in enumerate(row):
                    if v != 0:
                        out[r][c] += xi * v
        return tuple(tuple(row) for row in out)


def adjoint_representation(h: HomLieAlgebra) -> LinearRep:
    """The algebra acting on itself by ad_x(y) = [x, y], twisted by its own phi."""
    mats = []
    for i in range(h.dim):
        cols = [h.bracket_basis(i, j) for j in range(h.dim)]
        mats.append(tuple(tuple(cols[j].get(r, ZERO) for j in range(h.dim)) for r in range(h.dim)))
    return LinearRep(h.dim, tuple(mats), h.phi)


def check_representation(h: HomLieAlgebra, rep: LinearRep) -> CheckReport:
    """Representation axioms: rho(phi x) alpha = alpha rho(x), and
    rho([x,y]) alpha = rho(phi x) rho(y) - rho(phi y) rho(x)."""
    failures = []
    rho_phi = [rep.rho_of(h.phi_apply(h.basis_vector(i))) for i in range(h.dim)]
    for i in range(h.dim):
        lhs = mat_mul(rho_phi[i], rep.alpha)
        rhs = mat_mul(rep.alpha, rep.rho[i])
        if lhs != rhs:
            failures.append(failure("intertwine", (i,)))
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            lhs = mat_mul(rep.rho_of(_dense(h, h.bracket_basis(i, j))), rep.alpha)
            rhs_mat = mat_mul(rho_phi[i], rep.rho[j])
            neg = mat_mul(rho_phi[j], rep.rho[i])
            rhs = tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(rhs_mat, neg))
            if lhs != rhs:
                failures.append(failure("bracket_action", (i, j)))
    return CheckReport("representation", failures)


def check_admissible_representation(h: HomLieAlgebra, rep: LinearRep) -> CheckReport:
    """Dual-representation conditions: alpha rho(phi x) = rho(x) alpha, and
    alpha rho([x,y]) = rho(x) rho(phi y) - rho(y) rho(phi x). Needs invertible alpha."""
    if matrix_rank(rep.alpha) < rep.target_dim:
        return CheckReport(
            "admissible_representation",
            applicable=False,
            reason="alpha is singular; the dual-side conditions are undefined",
        )
    failures = []
    rho_phi = [rep.rho_of(h.phi_apply(h.basis_vector(i))) for i in range(h.dim)]
    for i in range(h.dim):
        lhs = mat_mul(rep.alpha, rho_phi[i])
        rhs = mat_mul(rep.rho[i], rep.alpha)
        if lhs != rhs:
            failures.append(failure("dual_intertwine", (i,)))
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            lhs = mat_mul(rep.alpha, rep.rho_of(_dense(h, h.bracket_basis(i, j))))
            pos = mat_mul(rep.rho[i], rho_phi[j])
            neg = mat_mul(rep.rho[j], rho_phi[i])
            rhs = tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(pos, neg))
            if lhs != rhs:
                failures.append(failure("dual_bracket_action", (i, j)))
    return CheckReport("admissible_representation", failures)


def check_admissible_algebra(h: HomLieAlgebra) -> CheckReport:
    """The coadjoint action is a representation: [(Id - phi^2)x, phi y] = 0 and
    [(Id - phi^2)x, [phi y, z]] = [(Id - phi^2)y, [phi x, z]] on basis elements."""
    failures = []
    phi2 = mat_mul(h.phi, h.phi)
    defect_cols = []  # coordinates of (Id - phi^2) b_i
    for i in range(h.dim):
        col = {a: (Fraction(1) if a == i else ZERO) - phi2[a][i] for a in range(h.dim)}
        defect_cols.append({a: v for a, v in col.items() if v != 0})
    phi_cols = [_phi_sparse(h, {i: Fraction(1)}) for i in range(h.dim)]
    for i in range(h.dim):
        if not defect_cols[i]:
            continue
        for j in range(h.dim):
            residual = _sparse_bracket(h, defect_cols[i], phi_cols[j])
            if residual:
                failures.append(failure("defect_bracket", (i, j), _dense(h, residual)))
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            if not (defect_cols[i] or defect_cols[j]):
                continue
            for k in range(h.dim):
                lhs = _sparse_bracket(h, defect_cols[i], _sparse_bracket(h, phi_cols[j], {k: Fraction(1)}))
                rhs = _sparse_bracket(h, defect_cols[j], _sparse_bracket(h, phi_cols[i], {k: Fraction(1)}))
                if lhs != rhs:
                    diff = dict(lhs)
                    for a, v in rhs.items():
                        s = diff.get(a, ZERO) - v
                        if s == 0:
                            diff.pop(a, None)
                        else:
                            diff[a] = s
                    failures.append(failure("defect_nested", (i, j, k), _dense(h, diff)))
    return CheckReport("admissible_algebra", failures)


def check_quadratic(h: HomLieAlgebra) -> CheckReport:
    """The form is symmetric, nondegenerate (else the kernel basis is reported),
    invariant <[x,y],z> = <x,[y,z]>, and twist-self-adjoint <phi x, y> = <x, phi y>."""
    if h.form is None:
        raise ValueError("algebra carries no bilinear form to check")
    failures = []
    g = h.form
    for i in range(h.dim):
        for j in range(i + 1, h.dim):
            if g[i][j] != g[j][i]:
                failures.append(failure("symmetric", (i, j), g[i][j] - g[j][i]))
    kernel = nullspace(g)
    for v in kernel:
        failures.append(failure("nondegenerate", None, v))
    lhs_twist = mat_mul(transpose(h.phi), g)
    rhs_twist = mat_mul(g, h.phi)
    for i in range(h.dim):
        for j in range(h.dim):
            if lhs_twist[i][j] != rhs_twist[i][j]:
                failures.append(failure("twist_self_adjoint", (i, j), lhs_twist[i][j] - rhs_twist[i][j]))
    for i in range(h.dim):
        for j in range(h.dim):
            c_ij = h.bracket_basis(i, j)
            for k in range(h.dim):
                c_jk = h.bracket_basis(j, k)
                if not (c_ij or c_jk):
                    continue
                lhs = sum((v * g[a][k] for a, v in c_ij.items()), ZERO)
                rhs = sum((g[i][a] * v for a, v in c_jk.items()), ZERO)
                if lhs != rhs:
                    failures.append(failure("invariant", (i, j, k), lhs - rhs))
    return CheckReport("quadratic", failures)


def direct_sum(h1: HomLieAlgebra, h2: HomLieAlgebra) -> HomLieAlgebra:
    """Componentwise bracket and twist on the concatenated coordinate space;
    forms (when both present) combine block-diagonally."""
    dim = h1.dim + h2.dim
    brackets: BracketTable = {k: dict(v) for k, v in h1.brackets.items()}
    for (i, j), coeffs in h2.brackets.items():
        brackets[(i + h1.dim, j + h1.dim)] = {k + h1.dim: v for k, v in coeffs.items()}
    phi = tuple(
        tuple(row) + zero_vector(h2.dim) for row in h1.phi
    ) + tuple(zero_vector(h1.dim) + tuple(row) for row in h2.phi)
    form = None
    if h1.form is not None and h2.form is not None:
        form = tuple(
            tuple(row) + zero_vector(h2.dim) for row in h1.form
        ) + tuple(zero_vector(h1.dim) + tuple(row) for row in h2.form)
    out = HomLieAlgebra(dim, brackets, phi, form)
    return out

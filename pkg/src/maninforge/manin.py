"""Quadratic twisted Lie algebras with Lagrangian splittings: the triple type,
its certifier, dual bases and the induced r-matrix, self-dual doubles built from
a cobracket, and the worked split/diagonal constructions for special linear data."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .core import (
    Matrix,
    ONE,
    Subspace,
    SparseTensor,
    Vector,
    ZERO,
    identity_matrix,
    inverse,
    map_subspace,
    mat_mul,
    mat_vec,
    matrix,
    subspace_equal,
    subspace_sum,
    transpose,
    unit_vector,
    vec_add,
    vec_scale,
    vec_sub,
    wedge,
    zero_vector,
)
from .homlie import (
    BracketTable,
    HomLieAlgebra,
    check_hom_jacobi,
    check_quadratic,
    check_twist_morphism,
    direct_sum,
)
from .reporting import CheckReport, combine, failure


@dataclass
class ManinTriple:
    """A quadratic algebra split into two Lagrangian halves."""

    algebra: HomLieAlgebra
    part1: Subspace
    part2: Subspace
    name: str | None = None

    @classmethod
    def of(
        cls,
        algebra: HomLieAlgebra,
        part1_rows: Sequence[Sequence[int | str | Fraction]],
        part2_rows: Sequence[Sequence[int | str | Fraction]],
        name: str | None = None,
    ) -> ManinTriple:
        return cls(
            algebra,
            Subspace.span(algebra.dim, part1_rows),
            Subspace.span(algebra.dim, part2_rows),
            name,
        )

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def form(self) -> Matrix:
        if self.algebra.form is None:
            raise ValueError("triple's algebra carries no bilinear form")
        return self.algebra.form


def _part_report(t: ManinTriple, part: Subspace, label: str) -> CheckReport:
    """Isotropy, bracket closure, and twist stability of one half."""
    failures = []
    h = t.algebra
    rows = part.rows
    for a in range(len(rows)):
        for b in range(a, len(rows)):
            value = h.pair(rows[a], rows[b])
            if value != 0:
                failures.append(failure("isotropic", (a, b), value))
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            w = h.bracket(rows[a], rows[b])
            if not part.contains(w):
                failures.append(failure("subalgebra", (a, b), w))
    for a, row in enumerate(rows):
        image = h.phi_apply(row)
        if not part.contains(image):
            failures.append(failure("twist_stable", (a,), image))
    return CheckReport(label, failures)


def _splitting_report(t: ManinTriple) -> CheckReport:
    """Halves of equal dimension whose sum is the whole even-dimensional space."""
    h = t.algebra
    shape_failures = []
    if h.dim % 2 != 0:
        shape_failures.append(failure("even_dimension", (h.dim,)))
    if t.part1.dim != h.dim // 2:
        shape_failures.append(failure("part1_dim", (t.part1.dim,)))
    if t.part2.dim != h.dim // 2:
        shape_failures.append(failure("part2_dim", (t.part2.dim,)))
    if subspace_sum(t.part1, t.part2).dim != h.dim:
        shape_failures.append(failure("direct_sum"))
    return CheckReport("splitting", shape_failures)


def manin_triple_checks(t: ManinTriple) -> tuple[Callable[[], CheckReport], ...]:
    """The independent sub-checks of the triple certifier, as thunks so callers
    can run them in parallel."""
    h = t.algebra
    return (
        lambda: check_hom_jacobi(h),
        lambda: check_twist_morphism(h),
        lambda: check_quadratic(h),
        lambda: _part_report(t, t.part1, "part1"),
        lambda: _part_report(t, t.part2, "part2"),
        lambda: _splitting_report(t),
    )


def check_manin_triple(t: ManinTriple) -> CheckReport:
    """Certify the whole structure: valid quadratic ambient algebra, halves of equal
    dimension in direct sum, each isotropic, closed under the bracket, twist-stable."""
    return combine("manin_triple", [check() for check in manin_triple_checks(t)])


@dataclass(frozen=True)
class DualBasisPair:
    """Bases x_i of part 1 and xi_i of part 2 with <xi_i, x_j> = delta_ij;
    `gram` holds the re-computed pairings as a certificate (the identity)."""

    x_basis: tuple[Vector, ...]
    xi_basis: tuple[Vector, ...]
    gram: Matrix


def dual_basis(t: ManinTriple) -> DualBasisPair:
    """Dual bases of the two halves under the ambient form."""
    h = t.algebra
    xi_rows = t.part2.rows
    x_candidates = t.part1.rows
    m = len(xi_rows)
    if len(x_candidates) != m:
        raise ValueError("halves have different dimensions")
    pairing = tuple(
        tuple(h.pair(xi_rows[a], x_candidates[b]) for b in range(m)) for a in range(m)
    )
    coeffs = inverse(pairing)  # columns give the dual combinations
    x_basis = []
    for j in range(m):
        v = zero_vector(h.dim)
        for b in range(m):
            if coeffs[b][j] != 0:
                v = vec_add(v, vec_scale(coeffs[b][j], x_candidates[b]))
        x_basis.append(v)
    gram = tuple(tuple(h.pair(xi_rows[a], x_basis[b]) for b in range(m)) for a in range(m))
    return DualBasisPair(tuple(x_basis), tuple(xi_rows), gram)


def r_from_splitting(t: ManinTriple) -> SparseTensor:
    """The canonical element sum_i xi_i (x) x_i of the splitting."""
    pair = dual_basis(t)
    out = SparseTensor.zero(2, t.dim)
    for xi, x in zip(pair.xi_basis, pair.x_basis):
        for a, xa in enumerate(xi):
            if xa == 0:
                continue
            for b, xb in enumerate(x):
                if xb != 0:
                    out.add_into((a, b), xa * xb)
    return out


def check_manin_isomorphism(f: Matrix, t1: ManinTriple, t2: ManinTriple) -> CheckReport:
    """f is a triple isomorphism: preserves bracket, form, twist, and maps each half onto its mate."""
    h1, h2 = t1.algebra, t2.algebra
    failures = []
    if h1.dim != h2.dim or len(f) != h1.dim:
        return CheckReport("manin_isomorphism", [failure("shape", (h1.dim, h2.dim, len(f)))])
    f_cols = [tuple(row[i] for row in f) for i in range(h1.dim)]
    lhs_twist = mat_mul(f, h1.phi)
    rhs_twist = mat_mul(h2.phi, f)
    if lhs_twist != rhs_twist:
        for i in range(h1.dim):
            col_l = tuple(row[i] for row in lhs_twist)
            col_r = tuple(row[i] for row in rhs_twist)
            if col_l != col_r:
                failures.append(failure("twist_intertwine", (i,), vec_sub(col_l, col_r)))
    for i in range(h1.dim):
        for j in range(i + 1, h1.dim):
            coeffs = h1.bracket_basis(i, j)
            lhs = zero_vector(h1.dim)
            for k, c in coeffs.items():
                lhs = vec_add(lhs, vec_scale(c, f_cols[k]))
            rhs = h2.bracket(f_cols[i], f_cols[j])
            if lhs != rhs:
                failures.append(failure("bracket_preserved", (i, j), vec_sub(lhs, rhs)))
    pulled_back = mat_mul(transpose(f), mat_mul(t2.form, f))
    if pulled_back != t1.form:
        for i in range(h1.dim):
            for j in range(h1.dim):
                if pulled_back[i][j] != t1.form[i][j]:
                    failures.append(failure("form_preserved", (i, j), pulled_back[i][j] - t1.form[i][j]))
    if not subspace_equal(map_subspace(f, t1.part1), t2.part1):
        failures.append(failure("part1_image"))
    if not subspace_equal(map_subspace(f, t1.part2), t2.part2):
        failures.append(failure("part2_image"))
    return CheckReport("manin_isomorphism", failures)


# ---------------------------------------------------------------------------
# Self-dual double of an algebra with a cobracket


def coboundary_cobracket(g: HomLieAlgebra, lam: SparseTensor) -> BracketTable:
    """Dual structure constants of the cobracket x -> ad_x(lam) of a skew tensor
    (untwisted algebras): [f_a, f_b]* = sum_k (ad_{b_k} lam)_{ab} f_k for a < b."""
    if lam.degree != 2:
        raise ValueError("cobracket seed must have degree 2")
    table: BracketTable = {}
    for k in range(g.dim):
        delta = SparseTensor.zero(2, g.dim)
        for (a, b), v in lam.entries.items():
            if a >= b:
                continue
            bka = g.bracket(g.basis_vector(k), g.basis_vector(a))
            bkb = g.bracket(g.basis_vector(k), g.basis_vector(b))
            delta = delta + wedge(bka, g.basis_vector(b)).scale(v)
            delta = delta + wedge(g.basis_vector(a), bkb).scale(v)
        for (a, b), v in delta.entries.items():
            if a < b:
                entry = table.setdefault((a, b), {})
                total = entry.get(k, ZERO) + v
                if total == 0:
                    entry.pop(k, None)
                else:
                    entry[k] = total
    return {key: coeffs for key, coeffs in table.items() if coeffs}


def double_from_bialgebra(
    g: HomLieAlgebra,
    cobracket_dual: Mapping[tuple[int, int], Mapping[int, int | str | Fraction]],
) -> ManinTriple:
    """Bracket on g + g* extending both brackets so the canonical pairing is invariant:
    [x + xi, y + eta] = [x,y] - ad*_eta x + ad*_xi y + [xi,eta]* + ad*_x eta - ad*_y xi.

    The ambient algebra is built without validation: its twisted Jacobi identity
    holds exactly when the cobracket is compatible, and the certifier decides that.
    """
    if g.phi != identity_matrix(g.dim):
        raise ValueError("the double construction needs an untwisted algebra")
    if not check_hom_jacobi(g).passed:
        raise ValueError("base bracket is not a Lie bracket")
    # Rejects non-Lie dual tables up front (Jacobi on g* alone, not compatibility).
    HomLieAlgebra.create(g.dim, cobracket_dual)
    d = g.dim
    dual = _normalize_table(d, cobracket_dual)
    brackets: BracketTable = {k: dict(v) for k, v in g.brackets.items()}
    for (a, b), coeffs in dual.items():
        brackets[(d + a, d + b)] = {d + k: v for k, v in coeffs.items()}
    for i in range(d):
        for j in range(d):
            entry: dict[int, Fraction] = {}
            # ad*_{b_i} f_j = sum_k c[k][i]_j f_k
            for k in range(d):
                c = g.bracket_basis(k, i).get(j, ZERO)
                if c != 0:
                    entry[d + k] = entry.get(d + k, ZERO) + c
            # -ad*_{f_j} b_i = -sum_l dual[l][j]_i b_l
            for l in range(d):
                c = _dual_coeff(dual, l, j, i)
                if c != 0:
                    entry[l] = entry.get(l, ZERO) - c
            entry = {k: v for k, v in entry.items() if v != 0}
            if entry:
                brackets[(i, d + j)] = entry
    form = tuple(
        tuple(ONE if abs(i - j) == d else ZERO for j in range(2 * d))
        for i in range(2 * d)
    )
    ambient = HomLieAlgebra(2 * d, brackets, identity_matrix(2 * d), form)
    part1 = Subspace.span(2 * d, [unit_vector(2 * d, i) for i in range(d)])
    part2 = Subspace.span(2 * d, [unit_vector(2 * d, d + i) for i in range(d)])
    return ManinTriple(ambient, part1, part2, name="bialgebra-double")


def _normalize_table(
    dim: int, table: Mapping[tuple[int, int], Mapping[int, int | str | Fraction]]
) -> BracketTable:
    out: BracketTable = {}
    for (i, j), coeffs in table.items():
        cleaned = {k: Fraction(v) for k, v in coeffs.items() if Fraction(v) != 0}
        if cleaned:
            out[(i, j)] = cleaned
    return out


def _dual_coeff(dual: BracketTable, a: int, b: int, k: int) -> Fraction:
    """Coefficient of f_k in [f_a, f_b]* for arbitrary index order."""
    if a == b:
        return ZERO
    if a < b:
        return dual.get((a, b), {}).get(k, ZERO)
    return -dual.get((b, a), {}).get(k, ZERO)


# ---------------------------------------------------------------------------
# Special linear root data and the worked triples


@dataclass(frozen=True)
class RootData:
    """A special linear algebra presented by root-space data: trace-form algebra,
    Cartan indices, and matched negative/positive root-vector indices with
    [E_-a, E_a] = H_a."""

    rank: int
    algebra: HomLieAlgebra
    cartan: tuple[int, ...]
    negatives: tuple[int, ...]
    positives: tuple[int, ...]


def _matrix_units(k: int) -> list[list[list[Fraction]]]:
    return [[[ONE if (r, c) == (i, j) else ZERO for c in range(k)] for r in range(k)] for i in range(k) for j in range(k)]


def _mat_commutator(a, b, k):
    prod1 = [[sum((a[i][l] * b[l][j] for l in range(k)), ZERO) for j in range(k)] for i in range(k)]
    prod2 = [[sum((b[i][l] * a[l][j] for l in range(k)), ZERO) for j in range(k)] for i in range(k)]
    return [[prod1[i][j] - prod2[i][j] for j in range(k)] for i in range(k)]


def special_linear_data(k: int) -> RootData:
    """Trace-form data of the rank k-1 special linear algebra, for k in {2, 3}.

    Basis order: Cartan elements H_i = E_ii - E_(i+1)(i+1), then negative root
    vectors -E_ji, then positive root vectors E_ij (positive roots i < j in
    lexicographic order), so each matched pair satisfies [E_-a, E_a] = H_a.
    """
    if k not in (2, 3):
        raise ValueError(f"unsupported rank {k - 1}: only the 2x2 and 3x3 cases are built in")
    roots = [(i, j) for i in range(k) for j in range(i + 1, k)]
    basis_mats: list[list[list[Fraction]]] = []
    for i in range(k - 1):
        m = [[ZERO] * k for _ in range(k)]
        m[i][i] = ONE
        m[i + 1][i + 1] = -ONE
        basis_mats.append(m)
    for (i, j) in roots:
        m = [[ZERO] * k for _ in range(k)]
        m[j][i] = -ONE
        basis_mats.append(m)
    for (i, j) in roots:
        m = [[ZERO] * k for _ in range(k)]
        m[i][j] = ONE
        basis_mats.append(m)
    dim = len(basis_mats)
    flat = matrix([[m[r][c] for m in basis_mats] for r in range(k) for c in range(k)])
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    from .core import rref

    for a in range(dim):
        for b in range(a + 1, dim):
            comm = _mat_commutator(basis_mats[a], basis_mats[b], k)
            target = tuple(comm[r][c] for r in range(k) for c in range(k))
            augmented = tuple(row + (t,) for row, t in zip(flat, target))
            reduced, pivots = rref(augmented)
            coords = [ZERO] * dim
            for row, piv in zip(reduced, pivots):
                if piv == dim:
                    raise AssertionError("commutator escaped the span")
                coords[piv] = row[dim]
            entry = {c: v for c, v in enumerate(coords) if v != 0}
            if entry:
                brackets[(a, b)] = entry
    trace_form = tuple(
        tuple(
            sum((basis_mats[a][r][c] * basis_mats[b][c][r] for r in range(k) for c in range(k)), ZERO)
            for b in range(dim)
        )
        for a in range(dim)
    )
    algebra = HomLieAlgebra.create(dim, brackets, form=trace_form, name=f"sl{k}")
    n_roots = len(roots)
    return RootData(
        rank=k,
        algebra=algebra,
        cartan=tuple(range(k - 1)),
        negatives=tuple(range(k - 1, k - 1 + n_roots)),
        positives=tuple(range(k - 1 + n_roots, dim)),
    )


def lambda_st(data: RootData) -> SparseTensor:
    """The standard skew tensor (1/2) sum over positive roots of E_-a ^ E_a."""
    out = SparseTensor.zero(2, data.algebra.dim)
    half = Fraction(1, 2)
    for neg, pos in zip(data.negatives, data.positives):
        out.add_into((neg, pos), half)
        out.add_into((pos, neg), -half)
    return out


def hyperbolic_triple() -> ManinTriple:
    """Two-dimensional commutative quadratic algebra <p, q> = 1 split along p and q."""
    algebra = HomLieAlgebra.unchecked(2, {}, form=[[0, 1], [1, 0]], name="hyperbolic")
    return ManinTriple.of(algebra, [[1, 0]], [[0, 1]], name="hyperbolic")


def triple_g_plus_h(data: RootData) -> ManinTriple:
    """Ambient g + Cartan with form <x1,x2> - <y1,y2>; half 1 spanned by
    (E_a, 0) and (h, h), half 2 by (E_-a, 0) and (h, -h)."""
    g = data.algebra
    c = len(data.cartan)
    cartan_form = tuple(
        tuple(-g.form[a][b] for b in data.cartan) for a in data.cartan
    )
    abelian = HomLieAlgebra.unchecked(c, {}, form=cartan_form)
    ambient = direct_sum(g, abelian)
    d = g.dim
    part1_rows = [unit_vector(d + c, p) for p in data.positives]
    part2_rows = [unit_vector(d + c, n) for n in data.negatives]
    for slot, h_idx in enumerate(data.cartan):
        base = unit_vector(d + c, h_idx)
        mirror = unit_vector(d + c, d + slot)
        part1_rows.append(vec_add(base, mirror))
        part2_rows.append(vec_sub(base, mirror))
    return ManinTriple.of(ambient, part1_rows, part2_rows, name="g-plus-h")


def triple_double(data: RootData) -> ManinTriple:
    """Ambient g + g with form <x1,x2> - <y1,y2>; half 1 the diagonal, half 2
    spanned by (E_a, 0), (0, E_-a), and (h, -h)."""
    g = data.algebra
    negated = HomLieAlgebra(
        g.dim, g.brackets, g.phi, tuple(tuple(-v for v in row) for row in g.form)
    )
    ambient = direct_sum(g, negated)
    d = g.dim
    part1_rows = [
        vec_add(unit_vector(2 * d, i), unit_vector(2 * d, d + i)) for i in range(d)
    ]
    part2_rows = [unit_vector(2 * d, p) for p in data.positives]
    part2_rows += [unit_vector(2 * d, d + n) for n in data.negatives]
    part2_rows += [
        vec_sub(unit_vector(2 * d, h), unit_vector(2 * d, d + h)) for h in data.cartan
    ]
    return ManinTriple.of(ambient, part1_rows, part2_rows, name="double")

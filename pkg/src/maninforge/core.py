"""Exact rational linear and multilinear algebra: matrices, sparse tensors,
row-reduced subspaces, and permutations.

Every scalar is a `fractions.Fraction`; equality everywhere is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction
Vector = tuple[Fraction, ...]
Matrix = tuple[tuple[Fraction, ...], ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def rational(x: int | str | Fraction) -> Fraction:
    """Coerce an int, string like ``-3/4``, or Fraction to an exact Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def vector(entries: Iterable[int | str | Fraction]) -> Vector:
    """Build an exact coordinate vector."""
    return tuple(rational(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    """Standard basis vector e_i (0-based) in dimension n."""
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Fraction, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def vec_dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), ZERO)


def is_zero_vector(v: Vector) -> bool:
    return all(a == 0 for a in v)


def matrix(rows: Sequence[Sequence[int | str | Fraction]]) -> Matrix:
    """Build an exact matrix from any nested sequence of scalars."""
    return tuple(vector(row) for row in rows)


def identity_matrix(n: int) -> Matrix:
    return tuple(unit_vector(n, i) for i in range(n))


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple(zero_vector(cols) for _ in range(rows))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(vec_add(x, y) for x, y in zip(a, b, strict=True))


def mat_scale(c: Fraction, m: Matrix) -> Matrix:
    return tuple(vec_scale(c, row) for row in m)


def mat_vec(m: Matrix, v: Vector) -> Vector:
    """Matrix times column vector."""
    return tuple(vec_dot(row, v) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product, skipping zero entries (block/permutation matrices are common)."""
    cols_b = len(b[0]) if b else 0
    out = [[ZERO] * cols_b for _ in a]
    for i, row in enumerate(a):
        out_i = out[i]
        for k, a_ik in enumerate(row):
            if a_ik == 0:
                continue
            b_k = b[k]
            for j, b_kj in enumerate(b_k):
                if b_kj != 0:
                    out_i[j] += a_ik * b_kj
    return tuple(tuple(row) for row in out)


def is_invertible(m: Matrix) -> bool:
    return len(m) > 0 and len(m) == len(m[0]) and matrix_rank(m) == len(m)


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped.

    >>> r, p = rref(matrix([[2, 4], [1, 2]]))
    >>> r, p
    (((Fraction(1, 1), Fraction(2, 1)),), (0,))
    """
    rows = [list(row) for row in m]
    n_cols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows[:r]), tuple(pivots)


def matrix_rank(m: Matrix) -> int:
    return len(rref(m)[0])


def nullspace(m: Matrix) -> list[Vector]:
    """Basis of {v : m @ v = 0}, one vector per free column (deterministic order)."""
    reduced, pivots = rref(m)
    n_cols = len(m[0]) if m else 0
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v = [ZERO] * n_cols
        v[free] = ONE
        for row, piv in zip(reduced, pivots):
            v[piv] = -row[free]
        basis.append(tuple(v))
    return basis


def solve(a: Matrix, b: Vector) -> Vector:
    """The unique solution of a @ x = b for invertible square a."""
    n = len(a)
    augmented = tuple(row + (b_i,) for row, b_i in zip(a, b, strict=True))
    reduced, pivots = rref(augmented)
    if pivots != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(row[n] for row in reduced)


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a square invertible matrix."""
    n = len(m)
    augmented = tuple(row + unit_vector(n, i) for i, row in enumerate(m))
    reduced, pivots = rref(augmented)
    if pivots != tuple(range(n)):
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in reduced)


def determinant(m: Matrix) -> Fraction:
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(m)
    rows = [list(row) for row in m]
    det = ONE
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = -det
        det *= rows[c][c]
        inv = ONE / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


# ---------------------------------------------------------------------------
# Sparse tensors


@dataclass
class SparseTensor:
    """Sparse tensor of degree 1, 2, or 3 over a dim-dimensional space.

    Entries map index tuples (0-based) to nonzero Fractions; zero values are
    never stored, so equality of entry dicts is equality of tensors.
    """

    degree: int
    dim: int
    entries: dict[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.degree not in (1, 2, 3):
            raise ValueError(f"unsupported tensor degree {self.degree}")
        for idx, value in list(self.entries.items()):
            if len(idx) != self.degree or not all(0 <= i < self.dim for i in idx):
                raise ValueError(f"index {idx} out of range for degree {self.degree}, dim {self.dim}")
            if value == 0:
                del self.entries[idx]

    @classmethod
    def zero(cls, degree: int, dim: int) -> SparseTensor:
        return cls(degree, dim, {})

    @classmethod
    def from_entries(
        cls, degree: int, dim: int, entries: Mapping[tuple[int, ...], int | str | Fraction]
    ) -> SparseTensor:
        return cls(degree, dim, {idx: rational(v) for idx, v in entries.items() if rational(v) != 0})

    def get(self, idx: tuple[int, ...]) -> Fraction:
        return self.entries.get(idx, ZERO)

    def items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Entries in sorted index order (deterministic)."""
        return sorted(self.entries.items())

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def add_into(self, idx: tuple[int, ...], value: Fraction) -> None:
        """Accumulate value at idx, dropping the entry if it cancels to zero."""
        total = self.entries.get(idx, ZERO) + value
        if total == 0:
            self.entries.pop(idx, None)
        else:
            self.entries[idx] = total

    def __add__(self, other: SparseTensor) -> SparseTensor:
        self._check_compatible(other)
        out = SparseTensor(self.degree, self.dim, dict(self.entries))
        for idx, v in other.entries.items():
            out.add_into(idx, v)
        return out

    def __sub__(self, other: SparseTensor) -> SparseTensor:
        return self + other.scale(Fraction(-1))

    def __neg__(self) -> SparseTensor:
        return self.scale(Fraction(-1))

    def scale(self, c: Fraction) -> SparseTensor:
        if c == 0:
            return SparseTensor.zero(self.degree, self.dim)
        return SparseTensor(self.degree, self.dim, {idx: c * v for idx, v in self.entries.items()})

    def swap(self) -> SparseTensor:
        """Transpose of a degree-2 tensor (swap the two slots)."""
        if self.degree != 2:
            raise ValueError("swap is defined for degree-2 tensors only")
        return SparseTensor(2, self.dim, {(j, i): v for (i, j), v in self.entries.items()})

    def apply_per_slot(self, maps: Sequence[Matrix]) -> SparseTensor:
        """Apply one linear map per slot: e_i in slot s maps to sum_a maps[s][a][i] e_a."""
        if len(maps) != self.degree:
            raise ValueError("need one matrix per tensor slot")
        out = SparseTensor.zero(self.degree, self.dim)
        for idx, v in self.entries.items():
            terms: list[tuple[tuple[int, ...], Fraction]] = [((), v)]
            for s, i in enumerate(idx):
                m = maps[s]
                new_terms = []
                for prefix, coeff in terms:
                    for a in range(self.dim):
                        m_ai = m[a][i]
                        if m_ai != 0:
                            new_terms.append((prefix + (a,), coeff * m_ai))
                terms = new_terms
            for full_idx, coeff in terms:
                out.add_into(full_idx, coeff)
        return out

    def contract(self, covectors: Sequence[Vector]) -> Fraction:
        """Full pairing with one coordinate covector per slot."""
        if len(covectors) != self.degree:
            raise ValueError("need one covector per tensor slot")
        total = ZERO
        for idx, v in self.entries.items():
            term = v
            for s, i in enumerate(idx):
                term *= covectors[s][i]
                if term == 0:
                    break
            total += term
        return total

    def to_matrix(self) -> Matrix:
        """Dense matrix of a degree-2 tensor (entry [i][j] = coefficient of e_i (x) e_j)."""
        if self.degree != 2:
            raise ValueError("to_matrix is defined for degree-2 tensors only")
        rows = [[ZERO] * self.dim for _ in range(self.dim)]
        for (i, j), v in self.entries.items():
            rows[i][j] = v
        return tuple(tuple(row) for row in rows)

    @classmethod
    def from_matrix(cls, m: Matrix) -> SparseTensor:
        dim = len(m)
        return cls(2, dim, {(i, j): v for i, row in enumerate(m) for j, v in enumerate(row) if v != 0})

    def _check_compatible(self, other: SparseTensor) -> None:
        if (self.degree, self.dim) != (other.degree, other.dim):
            raise ValueError("tensor shapes differ")


def tensor_skew_sym_split(t: SparseTensor) -> tuple[SparseTensor, SparseTensor]:
    """Split a degree-2 tensor into (skew-symmetric, symmetric) halves.

    >>> t = SparseTensor.from_entries(2, 2, {(0, 1): 1})
    >>> lam, s = tensor_skew_sym_split(t)
    >>> lam.items(), s.items()
    ([((0, 1), Fraction(1, 2)), ((1, 0), Fraction(-1, 2))], [((0, 1), Fraction(1, 2)), ((1, 0), Fraction(1, 2))])
    """
    if t.degree != 2:
        raise ValueError("split is defined for degree-2 tensors only")
    half = Fraction(1, 2)
    swapped = t.swap()
    return (t - swapped).scale(half), (t + swapped).scale(half)


def dyad(x: Vector, y: Vector) -> SparseTensor:
    """The rank-one tensor x (x) y."""
    dim = len(x)
    out = SparseTensor.zero(2, dim)
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj != 0:
                out.add_into((i, j), xi * yj)
    return out


def wedge(x: Vector, y: Vector) -> SparseTensor:
    """The wedge x ^ y = x (x) y - y (x) x (no 1/2 normalization)."""
    return dyad(x, y) - dyad(y, x)


def wedge3_basis(t: SparseTensor, a: int, b: int, c: int, coeff: Fraction) -> None:
    """Accumulate coeff * (e_a ^ e_b ^ e_c), the signed sum over all six slot orders."""
    if coeff == 0:
        return
    for idx, sign in (
        ((a, b, c), 1), ((b, c, a), 1), ((c, a, b), 1),
        ((b, a, c), -1), ((a, c, b), -1), ((c, b, a), -1),
    ):
        t.add_into(idx, coeff if sign > 0 else -coeff)


def wedge_t2_v1(t2: SparseTensor, v: Vector) -> SparseTensor:
    """Wedge of an antisymmetric degree-2 tensor with a vector (degree-3 result)."""
    if t2.degree != 2:
        raise ValueError("first factor must have degree 2")
    out = SparseTensor.zero(3, t2.dim)
    for (a, b), coeff in t2.entries.items():
        if a >= b:
            continue  # each unordered pair once; the (b, a) entry is its negative
        for c, vc in enumerate(v):
            if vc != 0:
                wedge3_basis(out, a, b, c, coeff * vc)
    return out


def is_antisymmetric(t: SparseTensor) -> bool:
    """True when a degree-2 tensor satisfies t(i,j) = -t(j,i) with zero diagonal."""
    if t.degree != 2:
        raise ValueError("degree-2 tensors only")
    return all(i != j and t.get((j, i)) == -v for (i, j), v in t.entries.items())


def is_symmetric(t: SparseTensor) -> bool:
    """True when a degree-2 tensor satisfies t(i,j) = t(j,i)."""
    if t.degree != 2:
        raise ValueError("degree-2 tensors only")
    return all(t.get((j, i)) == v for (i, j), v in t.entries.items())


# ---------------------------------------------------------------------------
# Subspaces


@dataclass(frozen=True)
class Subspace:
    """Subspace of a coordinate space, held as a canonical reduced-row-echelon basis.

    Canonicity makes equality of subspaces equality of the `rows` tuples.
    """

    ambient_dim: int
    rows: Matrix

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence[int | str | Fraction]]) -> Subspace:
        mat = matrix(list(vectors))
        for row in mat:
            if len(row) != ambient_dim:
                raise ValueError("spanning vector has wrong length")
        reduced, _ = rref(mat) if mat else ((), ())
        return cls(ambient_dim, reduced)

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, identity_matrix(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v: Vector) -> bool:
        """Exact membership by reduction against the canonical basis."""
        residual = list(v)
        for row in self.rows:
            pivot = next(i for i, x in enumerate(row) if x != 0)
            if residual[pivot] != 0:
                f = residual[pivot]
                residual = [x - f * y for x, y in zip(residual, row)]
        return all(x == 0 for x in residual)

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(row) for row in other.rows)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    """Span of the union of two subspaces of the same ambient space."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return Subspace.span(a.ambient_dim, list(a.rows) + list(b.rows))


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    """Equality of subspaces; canonical bases make this a tuple comparison."""
    return a.ambient_dim == b.ambient_dim and a.rows == b.rows


def subspace_contains(a: Subspace, b: Subspace) -> bool:
    """True when b is contained in a."""
    return a.ambient_dim == b.ambient_dim and a.contains_subspace(b)


def orthogonal_complement(space: Subspace, gram: Matrix) -> Subspace:
    """{v : <w, v> = 0 for all w in space}, for the bilinear form with Gram matrix `gram`."""
    if not space.rows:
        return Subspace.full(space.ambient_dim)
    conditions = mat_mul(space.rows, gram)
    return Subspace.span(space.ambient_dim, nullspace(conditions))


def annihilator(space: Subspace) -> Subspace:
    """Covectors vanishing on the subspace: {xi : xi(w) = 0 for all w in space}."""
    if not space.rows:
        return Subspace.full(space.ambient_dim)
    return Subspace.span(space.ambient_dim, nullspace(space.rows))


def map_subspace(m: Matrix, space: Subspace) -> Subspace:
    """Image of a subspace under the linear map with matrix m (columns index the source)."""
    return Subspace.span(len(m), [mat_vec(m, row) for row in space.rows])


# ---------------------------------------------------------------------------
# Permutations


@dataclass(frozen=True)
class Permutation:
    """Permutation of {0, ..., n-1}; images[i] is where slot i is sent.

    >>> Permutation((1, 2, 0)).sign
    1
    >>> Permutation((1, 0)).inverse()
    Permutation(images=(1, 0))
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("not a permutation of 0..n-1")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: Permutation) -> Permutation:
        """self after other: (self.compose(other))(i) = self(other(i))."""
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    @property
    def sign(self) -> int:
        inversions = sum(
            1
            for i in range(len(self.images))
            for j in range(i + 1, len(self.images))
            if self.images[i] > self.images[j]
        )
        return -1 if inversions % 2 else 1

    def permute(self, seq: Sequence) -> tuple:
        """Move the entry in slot i to slot images[i]."""
        out = [None] * len(self.images)
        for i, x in enumerate(seq):
            out[self.images[i]] = x
        return tuple(out)

    def matrix(self, block: int = 1) -> Matrix:
        """Permutation matrix (columns index the source), blown up to block size."""
        n = len(self.images) * block
        rows = [[ZERO] * n for _ in range(n)]
        for i, j in enumerate(self.images):
            for b in range(block):
                rows[j * block + b][i * block + b] = ONE
        return tuple(tuple(row) for row in rows)

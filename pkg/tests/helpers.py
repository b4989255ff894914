"""Shared test utilities: seeded random generators over exact rationals and
independent dense oracles used to cross-check the sparse implementations."""
from __future__ import annotations

import random
from fractions import Fraction

from maninforge.core import Matrix, SparseTensor, Subspace, Vector, determinant, matrix
from maninforge.homlie import HomLieAlgebra

_DENOMINATORS = (1, 1, 1, 2, 3, 4)


def rand_fraction(rng: random.Random, lo: int = -9, hi: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(_DENOMINATORS))


def rand_vector(rng: random.Random, n: int, lo: int = -9, hi: int = 9) -> Vector:
    return tuple(rand_fraction(rng, lo, hi) for _ in range(n))


def rand_int_vector(rng: random.Random, n: int, lo: int = -9, hi: int = 9) -> Vector:
    return tuple(Fraction(rng.randint(lo, hi)) for _ in range(n))


def rand_tensor(rng: random.Random, degree: int, dim: int, fill: int = 5) -> SparseTensor:
    t = SparseTensor.zero(degree, dim)
    for _ in range(fill):
        idx = tuple(rng.randrange(dim) for _ in range(degree))
        t.add_into(idx, rand_fraction(rng))
    return t


def rand_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        m = matrix([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        if determinant(m) != 0:
            return m


def rand_subspace(rng: random.Random, ambient: int, spanning: int) -> Subspace:
    return Subspace.span(
        ambient, [[rng.randint(-4, 4) for _ in range(ambient)] for _ in range(spanning)]
    )


def rand_phi_fixed_skew(rng: random.Random, h: HomLieAlgebra, fill: int = 6) -> SparseTensor:
    """A random antisymmetric degree-2 tensor fixed by the twist (slot-wise).

    Works by projecting: skew part first, then average with its twisted image.
    Requires an involutive twist so that the average is genuinely fixed.
    """
    t = rand_tensor(rng, 2, h.dim, fill)
    skew = (t - t.swap()).scale(Fraction(1, 2))
    twisted = skew.apply_per_slot([h.phi, h.phi])
    return (skew + twisted).scale(Fraction(1, 2))


def dense_structure_constants(h: HomLieAlgebra) -> list[list[list[Fraction]]]:
    n = h.dim
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, v in h.bracket_basis(i, j).items():
                c[i][j][k] = v
    return c


def dense_hcyb(h: HomLieAlgebra, r: SparseTensor) -> dict[tuple[int, int, int], Fraction]:
    """Brute-force twin of the twisted Yang-Baxter contraction.

    Expands r over all basis index pairs with dense structure constants and
    dense twist columns, accumulating every product term one scalar at a time.
    Deliberately written without SparseTensor arithmetic so it can serve as an
    independent oracle for the sparse implementation.
    """
    n = h.dim
    c = dense_structure_constants(h)
    phi = h.phi
    dense_r = [[Fraction(0)] * n for _ in range(n)]
    for (a, b), v in r.items():
        dense_r[a][b] = v
    out: dict[tuple[int, int, int], Fraction] = {}

    def add(i: int, j: int, k: int, v: Fraction) -> None:
        if v:
            key = (i, j, k)
            total = out.get(key, Fraction(0)) + v
            if total:
                out[key] = total
            else:
                out.pop(key, None)

    for a in range(n):
        for b in range(n):
            v_ab = dense_r[a][b]
            if not v_ab:
                continue
            for cc in range(n):
                for d in range(n):
                    v_cd = dense_r[cc][d]
                    if not v_cd:
                        continue
                    w = v_ab * v_cd
                    for k1 in range(n):
                        for k2 in range(n):
                            for k3 in range(n):
                                add(k1, k2, k3, w * c[a][cc][k1] * phi[k2][b] * phi[k3][d])
                                add(k1, k2, k3, w * phi[k1][a] * c[b][cc][k2] * phi[k3][d])
                                add(k1, k2, k3, w * phi[k1][a] * phi[k2][cc] * c[b][d][k3])
    return out


def tensor_entries(t: SparseTensor) -> dict[tuple[int, ...], Fraction]:
    return dict(t.items())

"""Iterated doubles of a split quadratic algebra: the n-fold alternating-sign
power with its two Lagrangian chains, the snake reindexing that identifies the
mn-fold power with the n-fold power of the m-fold one, and the colored chain
graphs that encode both splittings."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Matrix,
    ONE,
    Permutation,
    Subspace,
    Vector,
    ZERO,
    mat_vec,
    unit_vector,
    vec_add,
)
from .homlie import BracketTable, HomLieAlgebra
from .manin import ManinTriple, check_manin_isomorphism
from .reporting import CheckReport


def _edge_rows(n: int, d: int, s: int) -> list[Vector]:
    """Diagonal rows joining ambient slots s and s+1 (1-based slots, block size d)."""
    lo = (s - 1) * d
    hi = s * d
    return [vec_add(unit_vector(n * d, lo + i), unit_vector(n * d, hi + i)) for i in range(d)]


def _embed_rows(n: int, d: int, s: int, rows) -> list[Vector]:
    """Rows of a subspace of the base, placed into ambient slot s (1-based)."""
    offset = (s - 1) * d
    out = []
    for row in rows:
        v = [ZERO] * (n * d)
        for i, x in enumerate(row):
            v[offset + i] = x
        out.append(tuple(v))
    return out


def nuble(t: ManinTriple, n: int) -> ManinTriple:
    """The n-fold power: componentwise bracket and twist, alternating-sign form
    sum_j (-1)^(j+1) <a_j, a_j'>, split into the two diagonal chains."""
    if n < 1:
        raise ValueError("n must be at least 1")
    h = t.algebra
    d = h.dim
    big = n * d
    brackets: BracketTable = {}
    for copy in range(n):
        off = copy * d
        for (i, j), coeffs in h.brackets.items():
            brackets[(off + i, off + j)] = {off + k: v for k, v in coeffs.items()}
    phi = tuple(
        tuple(h.phi[r % d][c - (r // d) * d] if (c // d) == (r // d) else ZERO for c in range(big))
        for r in range(big)
    )
    form = tuple(
        tuple(
            (h.form[r % d][c - (r // d) * d] if (r // d) % 2 == 0 else -h.form[r % d][c - (r // d) * d])
            if (c // d) == (r // d)
            else ZERO
            for c in range(big)
        )
        for r in range(big)
    )
    ambient = HomLieAlgebra(big, brackets, phi, form)
    part1_rows: list[Vector] = []
    part2_rows: list[Vector] = []
    if n % 2 == 1:
        for s in range(1, n - 1, 2):  # edges (1,2), (3,4), ..., (n-2, n-1)
            part1_rows += _edge_rows(n, d, s)
        part1_rows += _embed_rows(n, d, n, t.part1.rows)
        part2_rows += _embed_rows(n, d, 1, t.part2.rows)
        for s in range(2, n, 2):  # edges (2,3), (4,5), ..., (n-1, n)
            part2_rows += _edge_rows(n, d, s)
    else:
        for s in range(1, n, 2):  # edges (1,2), ..., (n-1, n)
            part1_rows += _edge_rows(n, d, s)
        part2_rows += _embed_rows(n, d, 1, t.part2.rows)
        for s in range(2, n - 1, 2):  # edges (2,3), ..., (n-2, n-1)
            part2_rows += _edge_rows(n, d, s)
        part2_rows += _embed_rows(n, d, n, t.part1.rows)
    base = t.name or "triple"
    return ManinTriple(
        ambient,
        Subspace.span(big, part1_rows),
        Subspace.span(big, part2_rows),
        name=f"{base}^{n}",
    )


def uble_of_uble(t: ManinTriple, m: int, n: int) -> ManinTriple:
    """The n-fold power of the m-fold power, by literal composition."""
    return nuble(nuble(t, m), n)


def snake_permutation(m: int, n: int) -> Permutation:
    """Where each of the mn source slots lands when the flat chain is folded into
    an n-row, m-column boustrophedon: column c reads downward for odd c and upward
    for even c; the slot at (row r, column c) flattens to (r-1)m + c.

    >>> snake_permutation(2, 2).images  # slots 1..4 -> (1,1),(2,1),(2,2),(1,2)
    (0, 2, 3, 1)
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be at least 1")
    images = [0] * (m * n)
    for s in range(1, m * n + 1):
        c = (s + n - 1) // n
        j = s - (c - 1) * n
        r = j if c % 2 == 1 else n + 1 - j
        images[s - 1] = (r - 1) * m + c - 1
    return Permutation(tuple(images))


def snake_matrix(t: ManinTriple, m: int, n: int) -> Matrix:
    """The slot permutation blown up to the ambient coordinates of the mn-fold power."""
    return snake_permutation(m, n).matrix(block=t.algebra.dim)


def snake_iso_apply(t: ManinTriple, m: int, n: int, x: Vector) -> Vector:
    """Apply the snake identification to an ambient coordinate vector."""
    if len(x) != t.algebra.dim * m * n:
        raise ValueError("vector length does not match the mn-fold ambient space")
    return mat_vec(snake_matrix(t, m, n), x)


def verify_snake_iso(t: ManinTriple, m: int, n: int) -> CheckReport:
    """Certify that the snake map is an isomorphism of split quadratic algebras
    from the mn-fold power onto the n-fold power of the m-fold power."""
    flat = nuble(t, m * n)
    nested = uble_of_uble(t, m, n)
    return check_manin_isomorphism(snake_matrix(t, m, n), flat, nested)


# ---------------------------------------------------------------------------
# Chain graphs


@dataclass(frozen=True)
class ChainVertex:
    """One graph vertex: the 1-based slot it occupies, its sign color, and its shape."""

    index: int
    color: str  # "open" (positive form sign) or "filled" (negative)
    shape: str  # "circle", "left-triangle" (first half), "right-triangle" (second half)


@dataclass(frozen=True)
class ChainGraph:
    """Vertices and edges of both splitting chains of the n-fold power."""

    n: int
    vertices: tuple[ChainVertex, ...]
    edges: tuple[tuple[int, int], ...]


def _slot_color(s: int) -> str:
    return "open" if s % 2 == 1 else "filled"


def render_graph(n: int) -> ChainGraph:
    """The colored chain diagram of the n-fold power: circles for the full-algebra
    slots, triangles where a bare half occupies a slot, edges for diagonal pairs."""
    if n < 1:
        raise ValueError("n must be at least 1")
    vertices = [ChainVertex(s, _slot_color(s), "circle") for s in range(1, n + 1)]
    vertices.append(ChainVertex(1, _slot_color(1), "right-triangle"))
    vertices.append(ChainVertex(n, _slot_color(n), "left-triangle"))
    edges: list[tuple[int, int]] = []
    if n % 2 == 1:
        edges += [(s, s + 1) for s in range(1, n - 1, 2)]
        edges += [(s, s + 1) for s in range(2, n, 2)]
    else:
        edges += [(s, s + 1) for s in range(1, n, 2)]
        edges += [(s, s + 1) for s in range(2, n - 1, 2)]
    return ChainGraph(n, tuple(vertices), tuple(sorted(edges)))


def chain_graph_dot(g: ChainGraph) -> str:
    """Deterministic DOT text: circle nodes u<j>, triangle nodes for the bare
    halves, style=filled on every negative-sign vertex."""
    lines = ["graph chains {"]
    for v in g.vertices:
        if v.shape == "circle":
            node, label = f"u{v.index}", f"u{v.index}"
            shape = "circle"
        elif v.shape == "right-triangle":
            node, label = f"hp{v.index}", "h'"
            shape = "triangle"
        else:
            node, label = f"h{v.index}", "h"
            shape = "triangle"
        style = ' style=filled' if v.color == "filled" else ""
        lines.append(f'  {node} [label="{label}" shape={shape}{style}];')
    for (a, b) in g.edges:
        lines.append(f"  u{a} -- u{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Iterated powers of a split quadratic algebra, the snake identification
between the two ways of iterating, and the chain diagrams."""
from __future__ import annotations

import itertools

import pytest

from maninforge.core import (
    Permutation,
    mat_mul,
    matrix,
    subspace_equal,
    transpose,
)
from maninforge.manin import (
    check_manin_isomorphism,
    check_manin_triple,
    hyperbolic_triple,
    special_linear_data,
    triple_g_plus_h,
)
from maninforge.polyuble import (
    chain_graph_dot,
    nuble,
    render_graph,
    snake_iso_apply,
    snake_matrix,
    snake_permutation,
    uble_of_uble,
    verify_snake_iso,
)

DOT_N2 = (
    "graph chains {\n"
    '  u1 [label="u1" shape=circle];\n'
    '  u2 [label="u2" shape=circle style=filled];\n'
    "  hp1 [label=\"h'\" shape=triangle];\n"
    '  h2 [label="h" shape=triangle style=filled];\n'
    "  u1 -- u2;\n"
    "}\n"
)


# ---------------------------------------------------------------------------
# Powers


def test_single_power_reproduces_the_triple():
    t = hyperbolic_triple()
    u = nuble(t, 1)
    assert u.algebra.brackets == t.algebra.brackets
    assert u.form == t.form
    assert subspace_equal(u.part1, t.part1)
    assert subspace_equal(u.part2, t.part2)


def test_power_dimensions():
    t = triple_g_plus_h(special_linear_data(2))
    for n in range(1, 5):
        u = nuble(t, n)
        assert u.dim == 4 * n
        assert u.part1.dim == u.part2.dim == 2 * n


def test_power_form_alternates_sign_by_copy():
    t = hyperbolic_triple()
    u = nuble(t, 3)
    form = u.form
    # copy j contributes (-1)^j times the base form on its 2x2 block
    for j in range(3):
        sign = 1 if j % 2 == 0 else -1
        assert form[2 * j][2 * j + 1] == sign
        assert form[2 * j + 1][2 * j] == sign
    # no cross-copy pairing
    assert form[0][2] == 0 and form[1][4] == 0


def test_powers_certify_small():
    t = hyperbolic_triple()
    for n in range(1, 5):
        assert check_manin_triple(nuble(t, n)).passed, n


def test_power_rejects_nonpositive():
    with pytest.raises(ValueError):
        nuble(hyperbolic_triple(), 0)


def test_nested_power_is_power_of_power():
    t = hyperbolic_triple()
    nested = uble_of_uble(t, 2, 3)
    assert nested.dim == 12
    via_base = nuble(nuble(t, 2), 3)
    assert nested.algebra.brackets == via_base.algebra.brackets
    assert subspace_equal(nested.part1, via_base.part1)
    assert subspace_equal(nested.part2, via_base.part2)


# ---------------------------------------------------------------------------
# The snake identification


def test_snake_permutation_trivial_edges():
    assert snake_permutation(1, 4) == Permutation.identity(4)
    assert snake_permutation(4, 1) == Permutation.identity(4)
    assert snake_permutation(1, 1) == Permutation.identity(1)


def test_snake_permutation_two_by_two():
    """Four slots regroup as ((a1, a4), (a2, a3)): slot order 1,4,2,3, i.e.
    images (0, 2, 3, 1)."""
    assert snake_permutation(2, 2).images == (0, 2, 3, 1)


def test_snake_permutation_three_by_two():
    """Six slots regroup as ((a1, a4, a5), (a2, a3, a6))."""
    assert snake_permutation(3, 2).images == (0, 3, 4, 1, 2, 5)


def test_snake_permutation_reverses_on_even_inner_copies():
    assert snake_permutation(2, 3).images == (0, 2, 4, 5, 3, 1)


def test_snake_matrix_is_block_permutation():
    t = hyperbolic_triple()
    m = snake_matrix(t, 2, 2)
    assert m == snake_permutation(2, 2).matrix(block=2)
    assert transpose(m) == snake_permutation(2, 2).inverse().matrix(block=2)


def test_snake_apply_moves_slot_contents():
    t = hyperbolic_triple()
    x = tuple(map(int, (1, 2, 3, 4, 5, 6, 7, 8)))
    out = snake_iso_apply(t, 2, 2, x)
    images = snake_permutation(2, 2).images
    for s in range(4):
        dst = images[s]
        assert out[2 * dst : 2 * dst + 2] == x[2 * s : 2 * s + 2]
    with pytest.raises(ValueError):
        snake_iso_apply(t, 2, 2, x[:6])


def test_snake_is_an_isomorphism_hyperbolic_all_small_shapes():
    t = hyperbolic_triple()
    for m, n in itertools.product((1, 2, 3), repeat=2):
        assert verify_snake_iso(t, m, n).passed, (m, n)


def test_snake_is_an_isomorphism_g_plus_h_two_by_two():
    t = triple_g_plus_h(special_linear_data(2))
    assert verify_snake_iso(t, 2, 2).passed


def test_snake_is_the_unique_slot_regrouping_two_by_two():
    """Among all 24 slot permutations of the four-fold power, only the snake
    regrouping carries the flat splitting onto the nested one."""
    t = hyperbolic_triple()
    flat = nuble(t, 4)
    nested = uble_of_uble(t, 2, 2)
    winners = []
    for images in itertools.permutations(range(4)):
        p = Permutation(images)
        if check_manin_isomorphism(p.matrix(block=2), flat, nested).passed:
            winners.append(images)
    assert winners == [snake_permutation(2, 2).images]


def test_snake_preserves_the_pairing():
    """Pulling the nested Gram matrix back through the snake map returns the
    flat one (the form-functoriality half of the isomorphism, in isolation)."""
    for t in (hyperbolic_triple(), triple_g_plus_h(special_linear_data(2))):
        for m, n in ((2, 2), (3, 2), (2, 3)):
            s = snake_matrix(t, m, n)
            flat = nuble(t, m * n)
            nested = uble_of_uble(t, m, n)
            assert mat_mul(transpose(s), mat_mul(nested.form, s)) == flat.form


def test_snake_tower_coherence_two_cubed():
    """Flattening an 8-fold power in two association orders agrees on the nose:
    snaking 2x4 then regrouping the outer four copies equals snaking 4x2 then
    snaking each inner four-fold block."""
    t = hyperbolic_triple()
    inner = nuble(t, 2)
    path_a = mat_mul(snake_matrix(inner, 2, 2), snake_matrix(t, 2, 4))
    s_in = snake_matrix(t, 2, 2)
    half = len(s_in)
    lifted = tuple(
        tuple(
            s_in[i % half][j % half] if (i < half) == (j < half) else 0
            for j in range(2 * half)
        )
        for i in range(2 * half)
    )
    path_b = mat_mul(lifted, snake_matrix(t, 4, 2))
    assert path_a == path_b
    target = nuble(nuble(inner, 2), 2)
    assert check_manin_isomorphism(path_a, nuble(t, 8), target).passed


# ---------------------------------------------------------------------------
# Chain diagrams


def test_graph_vertices_and_edges():
    g = render_graph(3)
    assert g.n == 3
    circles = [v for v in g.vertices if v.shape == "circle"]
    assert [v.index for v in circles] == [1, 2, 3]
    assert [v.color for v in circles] == ["open", "filled", "open"]
    shapes = {v.shape for v in g.vertices} - {"circle"}
    assert shapes == {"right-triangle", "left-triangle"}
    assert g.edges == ((1, 2), (2, 3))


def test_graph_edges_are_never_monochromatic():
    for n in range(1, 11):
        g = render_graph(n)
        colors = {v.index: v.color for v in g.vertices if v.shape == "circle"}
        for a, b in g.edges:
            assert colors[a] != colors[b], (n, a, b)


def test_graph_each_slot_in_at_most_one_edge_per_chain():
    for n in range(1, 11):
        g = render_graph(n)
        part1_edges = [e for e in g.edges if e[0] % 2 == 1]
        part2_edges = [e for e in g.edges if e[0] % 2 == 0]
        for chain in (part1_edges, part2_edges):
            seen = [s for e in chain for s in e]
            assert len(seen) == len(set(seen))


def test_graph_rejects_nonpositive():
    with pytest.raises(ValueError):
        render_graph(0)


def test_dot_output_golden_two():
    assert chain_graph_dot(render_graph(2)) == DOT_N2


def test_dot_output_marks_bare_halves():
    text = chain_graph_dot(render_graph(5))
    assert 'hp1 [label="h\'" shape=triangle];' in text
    assert 'h5 [label="h" shape=triangle];' in text
    assert text.count("--") == 4

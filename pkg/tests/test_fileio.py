"""Round-trip and error-position tests for the plain-text formats."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from maninforge import fileio
from maninforge.core import SparseTensor, Subspace
from maninforge.homlie import HomLieAlgebra
from maninforge.manin import hyperbolic_triple, special_linear_data, triple_double
from maninforge.rmatrix import sl2_twisted

rationals = st.builds(
    Fraction, st.integers(-9, 9), st.integers(1, 4)
)


@st.composite
def sparse_tensors(draw):
    degree = draw(st.integers(1, 3))
    dim = draw(st.integers(1, 4))
    indices = st.tuples(*[st.integers(0, dim - 1)] * degree)
    entries = draw(st.dictionaries(indices, rationals, max_size=6))
    return SparseTensor(degree, dim, entries)


# ---------------------------------------------------------------------------
# round trips
# ---------------------------------------------------------------------------


@given(sparse_tensors())
def test_tensor_round_trip(t):
    text = fileio.format_tensor(t)
    assert fileio.parse_tensor(text) == t
    assert fileio.format_tensor(fileio.parse_tensor(text)) == text


@given(
    st.integers(1, 4).flatmap(
        lambda dim: st.lists(
            st.tuples(*[rationals] * dim), min_size=0, max_size=dim
        ).map(lambda rows: Subspace.span(dim, rows))
    )
)
def test_subspace_round_trip(s):
    text = fileio.format_subspace(s)
    assert fileio.parse_subspace(text) == s
    assert fileio.format_subspace(fileio.parse_subspace(text)) == text


def test_algebra_round_trip_with_and_without_form():
    h = sl2_twisted()
    parsed = fileio.parse_algebra(fileio.format_algebra(h))
    assert parsed.brackets == h.brackets
    assert parsed.phi == h.phi
    assert parsed.form == h.form
    assert parsed.name == h.name
    bare = HomLieAlgebra.create(2, {})
    assert fileio.parse_algebra(fileio.format_algebra(bare)).form is None


def test_triple_round_trip():
    for t in (hyperbolic_triple(), triple_double(special_linear_data(2))):
        parsed = fileio.parse_triple(fileio.format_triple(t))
        assert parsed.algebra.brackets == t.algebra.brackets
        assert parsed.part1 == t.part1
        assert parsed.part2 == t.part2


def test_matrix_blocks_round_trip():
    blocks = [
        ((Fraction(1), Fraction(1, 2)), (Fraction(0), Fraction(1))),
        ((Fraction(-3),),),
    ]
    text = fileio.format_matrix_blocks(blocks)
    assert fileio.parse_matrix_blocks(text) == blocks


def test_render_rational_is_canonical():
    assert fileio.render_rational(Fraction(3)) == "3"
    assert fileio.render_rational(Fraction(-1, 2)) == "-1/2"
    assert fileio.render_rational(Fraction(2, 4)) == "1/2"


# ---------------------------------------------------------------------------
# error positions
# ---------------------------------------------------------------------------


def expect_parse_error(fn, text, lineno, fragment):
    with pytest.raises(fileio.ParseError) as excinfo:
        fn(text)
    assert excinfo.value.lineno == lineno
    assert str(excinfo.value).startswith(f"line {lineno}:")
    assert fragment in str(excinfo.value)


def test_tensor_errors_carry_line_numbers():
    expect_parse_error(fileio.parse_tensor, "", 1, "empty")
    expect_parse_error(fileio.parse_tensor, "tensor degree=2\n", 1, "dim=")
    expect_parse_error(
        fileio.parse_tensor, "tensor degree=2 dim=2\n0 1\n", 2, "expected 2 indices"
    )
    expect_parse_error(
        fileio.parse_tensor, "tensor degree=1 dim=2\n5 1\n", 2, "out of range"
    )
    expect_parse_error(
        fileio.parse_tensor, "tensor degree=1 dim=2\n0 1\n0 2\n", 3, "duplicate"
    )
    expect_parse_error(
        fileio.parse_tensor, "tensor degree=1 dim=2\n0 1/0\n", 2, "malformed rational"
    )


def test_subspace_errors_carry_line_numbers():
    expect_parse_error(fileio.parse_subspace, "subspace\n", 1, "dim=")
    expect_parse_error(fileio.parse_subspace, "subspace dim=3\n1 0\n", 2, "3 entries")


def test_algebra_errors_carry_line_numbers():
    good_tail = "phi 1 0\nphi 0 1\n"
    expect_parse_error(
        fileio.parse_algebra, "algebra dim=2\nbogus 1\n" + good_tail, 2, "unknown line"
    )
    expect_parse_error(
        fileio.parse_algebra,
        "algebra dim=2\nbracket 1 0 : 0:1\n" + good_tail,
        2,
        "0 <= i < j",
    )
    expect_parse_error(
        fileio.parse_algebra,
        "algebra dim=2\nbracket 0 1 : 0:1\nbracket 0 1 : 0:1\n" + good_tail,
        3,
        "duplicate bracket",
    )
    expect_parse_error(fileio.parse_algebra, "algebra dim=2\nphi 1 0\n", 1, "phi rows")


def test_triple_requires_both_parts():
    text = "algebra dim=2\nphi 1 0\nphi 0 1\npart1 1 0\n"
    expect_parse_error(fileio.parse_triple, text, 1, "part1 and part2")


def test_document_split_rejects_leading_content():
    with pytest.raises(fileio.ParseError) as excinfo:
        fileio.split_documents("1 2 3\ntensor degree=1 dim=1\n")
    assert excinfo.value.lineno == 1


def test_document_split_kinds_in_order():
    text = (
        "algebra dim=1\nphi 1\n"
        "tensor degree=1 dim=1\n0 1\n"
        "subspace dim=1\n1\n"
    )
    kinds = [kind for kind, _ in fileio.split_documents(text)]
    assert kinds == ["algebra", "tensor", "subspace"]
    for kind, body in fileio.split_documents(text):
        parse = {
            "algebra": fileio.parse_algebra,
            "tensor": fileio.parse_tensor,
            "subspace": fileio.parse_subspace,
        }[kind]
        parse(body)

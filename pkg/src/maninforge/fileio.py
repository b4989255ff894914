"""Plain-text formats for tensors, subspaces, algebras, triples, and matrix
blocks.  Every serializer emits sorted, canonical output and every parser
round-trips it bit-exactly; parse errors carry 1-based line numbers."""
from __future__ import annotations

from fractions import Fraction

from .core import Matrix, Subspace, SparseTensor, Vector, matrix
from .homlie import HomLieAlgebra
from .manin import ManinTriple


class ParseError(ValueError):
    """A malformed input line; `lineno` is 1-based within the parsed text."""

    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def render_rational(x: Fraction) -> str:
    """Canonical text for an exact rational: `p` for integers, else `p/q`."""
    return str(x)


def _parse_rational(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, f"malformed rational {token!r}") from None


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"malformed integer {token!r}") from None


def _parse_header_fields(line: str, lineno: int, kind: str) -> dict[str, str]:
    tokens = line.split()
    if not tokens or tokens[0] != kind:
        raise ParseError(lineno, f"expected a `{kind}` header")
    fields: dict[str, str] = {}
    for token in tokens[1:]:
        if "=" not in token:
            raise ParseError(lineno, f"malformed header field {token!r}")
        key, _, value = token.partition("=")
        fields[key] = value
    return fields


def _numbered_lines(text: str) -> list[tuple[int, str]]:
    return [
        (i, line.strip())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip()
    ]


def _row_text(row: Vector) -> str:
    return " ".join(render_rational(x) for x in row)


# ---------------------------------------------------------------------------
# Tensors


def format_tensor(t: SparseTensor) -> str:
    lines = [f"tensor degree={t.degree} dim={t.dim}"]
    for idx, value in t.items():
        lines.append(" ".join(str(i) for i in idx) + f" {render_rational(value)}")
    return "\n".join(lines) + "\n"


def parse_tensor(text: str) -> SparseTensor:
    lines = _numbered_lines(text)
    if not lines:
        raise ParseError(1, "empty tensor document")
    lineno, header = lines[0]
    fields = _parse_header_fields(header, lineno, "tensor")
    if "degree" not in fields or "dim" not in fields:
        raise ParseError(lineno, "tensor header needs degree= and dim=")
    degree = _parse_int(fields["degree"], lineno)
    dim = _parse_int(fields["dim"], lineno)
    entries: dict[tuple[int, ...], Fraction] = {}
    for lineno, line in lines[1:]:
        tokens = line.split()
        if len(tokens) != degree + 1:
            raise ParseError(lineno, f"expected {degree} indices and one value")
        idx = tuple(_parse_int(tok, lineno) for tok in tokens[:degree])
        if any(i < 0 or i >= dim for i in idx):
            raise ParseError(lineno, f"index out of range in {line!r}")
        if idx in entries:
            raise ParseError(lineno, f"duplicate entry for index {idx}")
        entries[idx] = _parse_rational(tokens[degree], lineno)
    try:
        return SparseTensor(degree, dim, entries)
    except ValueError as exc:
        raise ParseError(lines[0][0], str(exc)) from None


# ---------------------------------------------------------------------------
# Subspaces


def format_subspace(s: Subspace) -> str:
    lines = [f"subspace dim={s.ambient_dim}"]
    lines.extend(_row_text(row) for row in s.rows)
    return "\n".join(lines) + "\n"


def parse_subspace(text: str) -> Subspace:
    lines = _numbered_lines(text)
    if not lines:
        raise ParseError(1, "empty subspace document")
    lineno, header = lines[0]
    fields = _parse_header_fields(header, lineno, "subspace")
    if "dim" not in fields:
        raise ParseError(lineno, "subspace header needs dim=")
    dim = _parse_int(fields["dim"], lineno)
    rows = []
    for lineno, line in lines[1:]:
        row = tuple(_parse_rational(tok, lineno) for tok in line.split())
        if len(row) != dim:
            raise ParseError(lineno, f"expected {dim} entries per row")
        rows.append(row)
    return Subspace.span(dim, rows)


# ---------------------------------------------------------------------------
# Algebras and triples


def _format_algebra_lines(h: HomLieAlgebra) -> list[str]:
    header = f"algebra dim={h.dim}"
    if h.name:
        header += f" name={h.name}"
    lines = [header]
    for (i, j) in sorted(h.brackets):
        coeffs = h.brackets[(i, j)]
        terms = " ".join(f"{k}:{render_rational(v)}" for k, v in sorted(coeffs.items()))
        lines.append(f"bracket {i} {j} : {terms}")
    for row in h.phi:
        lines.append(f"phi {_row_text(row)}")
    if h.form is not None:
        for row in h.form:
            lines.append(f"form {_row_text(row)}")
    return lines


def format_algebra(h: HomLieAlgebra) -> str:
    return "\n".join(_format_algebra_lines(h)) + "\n"


def format_triple(t: ManinTriple) -> str:
    lines = _format_algebra_lines(t.algebra)
    for row in t.part1.rows:
        lines.append(f"part1 {_row_text(row)}")
    for row in t.part2.rows:
        lines.append(f"part2 {_row_text(row)}")
    return "\n".join(lines) + "\n"


def _parse_algebra_body(lines: list[tuple[int, str]], allow_parts: bool):
    lineno, header = lines[0]
    fields = _parse_header_fields(header, lineno, "algebra")
    if "dim" not in fields:
        raise ParseError(lineno, "algebra header needs dim=")
    dim = _parse_int(fields["dim"], lineno)
    name = fields.get("name")
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    phi_rows: list[Vector] = []
    form_rows: list[Vector] = []
    part_rows: dict[str, list[Vector]] = {"part1": [], "part2": []}
    for lineno, line in lines[1:]:
        tokens = line.split()
        keyword = tokens[0]
        if keyword == "bracket":
            if len(tokens) < 4 or tokens[3] != ":":
                raise ParseError(lineno, "expected `bracket <i> <j> : <k>:<value> ...`")
            i = _parse_int(tokens[1], lineno)
            j = _parse_int(tokens[2], lineno)
            if not 0 <= i < j < dim:
                raise ParseError(lineno, f"bracket indices must satisfy 0 <= i < j < dim, got {i} {j}")
            if (i, j) in brackets:
                raise ParseError(lineno, f"duplicate bracket line for ({i}, {j})")
            coeffs: dict[int, Fraction] = {}
            for term in tokens[4:]:
                target, sep, value = term.partition(":")
                if not sep:
                    raise ParseError(lineno, f"malformed bracket term {term!r}")
                k = _parse_int(target, lineno)
                if not 0 <= k < dim:
                    raise ParseError(lineno, f"bracket target {k} out of range")
                if k in coeffs:
                    raise ParseError(lineno, f"duplicate bracket target {k}")
                coeffs[k] = _parse_rational(value, lineno)
            brackets[(i, j)] = coeffs
        elif keyword in ("phi", "form") or (allow_parts and keyword in part_rows):
            row = tuple(_parse_rational(tok, lineno) for tok in tokens[1:])
            if len(row) != dim:
                raise ParseError(lineno, f"expected {dim} entries after {keyword!r}")
            if keyword == "phi":
                phi_rows.append(row)
            elif keyword == "form":
                form_rows.append(row)
            else:
                part_rows[keyword].append(row)
        else:
            raise ParseError(lineno, f"unknown line keyword {keyword!r}")
    if len(phi_rows) != dim:
        raise ParseError(lines[0][0], f"expected {dim} phi rows, found {len(phi_rows)}")
    if form_rows and len(form_rows) != dim:
        raise ParseError(lines[0][0], f"expected {dim} form rows, found {len(form_rows)}")
    algebra = HomLieAlgebra.unchecked(
        dim,
        brackets,
        phi=matrix(phi_rows),
        form=matrix(form_rows) if form_rows else None,
        name=name,
    )
    return algebra, part_rows


def parse_algebra(text: str) -> HomLieAlgebra:
    lines = _numbered_lines(text)
    if not lines:
        raise ParseError(1, "empty algebra document")
    algebra, _ = _parse_algebra_body(lines, allow_parts=False)
    return algebra


def parse_triple(text: str) -> ManinTriple:
    lines = _numbered_lines(text)
    if not lines:
        raise ParseError(1, "empty triple document")
    algebra, part_rows = _parse_algebra_body(lines, allow_parts=True)
    if not part_rows["part1"] or not part_rows["part2"]:
        raise ParseError(lines[0][0], "triple needs part1 and part2 rows")
    return ManinTriple(
        algebra,
        Subspace.span(algebra.dim, part_rows["part1"]),
        Subspace.span(algebra.dim, part_rows["part2"]),
        name=algebra.name,
    )


# ---------------------------------------------------------------------------
# Matrix blocks (one matrix per blank-line-separated block)


def format_matrix_blocks(blocks) -> str:
    parts = []
    for block in blocks:
        parts.append("\n".join(_row_text(row) for row in block))
    return "\n\n".join(parts) + "\n"


def parse_matrix_blocks(text: str) -> list[Matrix]:
    blocks: list[Matrix] = []
    current: list[Vector] = []
    width: int | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if current:
                blocks.append(tuple(current))
                current, width = [], None
            continue
        row = tuple(_parse_rational(tok, lineno) for tok in line.split())
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(lineno, f"ragged matrix row (expected {width} entries)")
        current.append(row)
    if current:
        blocks.append(tuple(current))
    return blocks


# ---------------------------------------------------------------------------
# Multi-document streams


DOCUMENT_KINDS = ("algebra", "tensor", "subspace")


def split_documents(text: str) -> list[tuple[str, str]]:
    """Split a concatenated stream at `algebra`/`tensor`/`subspace` headers,
    returning (kind, document text) in order of appearance."""
    docs: list[tuple[str, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        first = stripped.split(maxsplit=1)[0] if stripped else ""
        if first in DOCUMENT_KINDS:
            docs.append((first, [raw]))
        elif stripped:
            if not docs:
                raise ParseError(lineno, "content before the first document header")
            docs[-1][1].append(raw)
    return [(kind, "\n".join(body) + "\n") for kind, body in docs]

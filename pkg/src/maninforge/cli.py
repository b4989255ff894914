"""Command-line front end: verification and construction subcommands over the
plain-text formats, with deterministic output, machine-readable JSON reports,
and 0/1/2 exit codes for pass/fail/usage."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from . import fileio
from .flagleaf import (
    GroupElement,
    PsiStages,
    WeylElement,
    DoubleLeafIndex,
    leaf_index_map,
    psi_map,
    psi_stages,
    weyl_from_word,
    weyl_identity,
)
from .manin import (
    check_manin_triple,
    hyperbolic_triple,
    lambda_st,
    manin_triple_checks,
    special_linear_data,
    triple_double,
    triple_g_plus_h,
)
from .polyuble import chain_graph_dot, nuble, render_graph, snake_permutation, verify_snake_iso
from .reporting import CheckReport, combine, failure
from .rmatrix import check_quasi_triangular, cyb, sl2_r, sl2_twisted
from .stabilizer import (
    check_bracket_sharp_condition,
    check_coisotropy,
    check_phi_stable,
    check_s_sharp_condition,
)


class CliError(Exception):
    """A usage-level problem: bad input file, malformed data, unusable flags."""


class _Inputs:
    """File/stdin reader that splits concatenated documents and hands them out
    by kind, so one stream can feed several arguments."""

    def __init__(self) -> None:
        self._cache: dict[str, list[list]] = {}

    def _documents(self, path: str) -> list[list]:
        if path not in self._cache:
            try:
                text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
            except OSError as exc:
                raise CliError(f"cannot read {path}: {exc.strerror}") from None
            docs = fileio.split_documents(text)
            self._cache[path] = [[kind, body, False] for kind, body in docs]
        return self._cache[path]

    def take(self, path: str, kind: str):
        header_kind = "algebra" if kind == "triple" else kind
        for doc in self._documents(path):
            if doc[0] == header_kind and not doc[2]:
                doc[2] = True
                if kind == "triple":
                    return fileio.parse_triple(doc[1])
                if kind == "algebra":
                    return fileio.parse_algebra(doc[1])
                if kind == "tensor":
                    return fileio.parse_tensor(doc[1])
                return fileio.parse_subspace(doc[1])
        raise CliError(f"no {kind} document found in {path}")

    def raw(self, path: str) -> str:
        try:
            return sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        except OSError as exc:
            raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _status(ok: bool) -> str:
    text = "PASS" if ok else "FAIL"
    if os.environ.get("NO_COLOR") is None and sys.stdout.isatty():
        return f"\x1b[{'32' if ok else '31'}m{text}\x1b[0m"
    return text


def _emit_json(command: str, verdict: str, failures: list[dict], started: float, result: str | None = None) -> None:
    payload: dict = {
        "command": command,
        "verdict": verdict,
        "failures": failures,
        "timing": round(time.perf_counter() - started, 6),
    }
    if result is not None:
        payload["result"] = result
    print(json.dumps(payload))


def _print_report(report: CheckReport, stream=None) -> None:
    stream = stream or sys.stdout
    print(f"{report.name}: {_status(report.passed)}", file=stream)
    if not report.applicable:
        print(f"  inapplicable: {report.reason}", file=stream)
    for f in report.failures:
        where = f" at {f.index}" if f.index is not None else ""
        extra = f": {f.residual}" if f.residual is not None else ""
        print(f"  {f.check}{where}{extra}", file=stream)


def _report_exit(args, command: str, report: CheckReport, started: float, result: str | None = None) -> int:
    if args.json:
        _emit_json(command, report.verdict, report.to_json()["failures"], started, result)
    else:
        if result is not None:
            sys.stdout.write(result)
        _print_report(report)
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# Subcommand bodies


def _cmd_verify(args, inputs: _Inputs, started: float) -> int:
    triple = inputs.take(args.file, "triple")
    checks = manin_triple_checks(triple)
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(lambda check: check(), checks))
    else:
        reports = [check() for check in checks]
    report = combine("manin_triple", reports)
    return _report_exit(args, "verify manin", report, started)


def _cmd_polyuble(args, inputs: _Inputs, started: float) -> int:
    triple = inputs.take(args.file, "triple")
    if args.n < 1:
        raise CliError("-n must be at least 1")
    built = nuble(triple, args.n)
    text = fileio.format_triple(built)
    if not args.check:
        if args.json:
            _emit_json("polyuble", "pass", [], started, text)
        else:
            sys.stdout.write(text)
        return 0
    report = check_manin_triple(built)
    if args.json:
        _emit_json("polyuble", report.verdict, report.to_json()["failures"], started, text)
    else:
        sys.stdout.write(text)
        _print_report(report, sys.stderr)
    return 0 if report.passed else 1


def _cmd_snake(args, inputs: _Inputs, started: float) -> int:
    if args.m < 1 or args.n < 1:
        raise CliError("-m and -n must be at least 1")
    perm = snake_permutation(args.m, args.n)
    perm_text = " ".join(str(i) for i in perm.images) + "\n"
    if args.dot is not None:
        dot_text = chain_graph_dot(render_graph(args.m * args.n))
        if args.dot == "-":
            sys.stdout.write(dot_text)
        else:
            with open(args.dot, "w", encoding="utf-8") as handle:
                handle.write(dot_text)
    if args.verify is None:
        if args.json:
            _emit_json("snake", "pass", [], started, perm_text)
        else:
            sys.stdout.write(perm_text)
        return 0
    triple = inputs.take(args.verify, "triple")
    report = verify_snake_iso(triple, args.m, args.n)
    return _report_exit(args, "snake", report, started, perm_text)


def _cmd_hcybe(args, inputs: _Inputs, started: float) -> int:
    algebra = inputs.take(args.file, "algebra")
    r = inputs.take(args.r, "tensor")
    if r.degree != 2 or r.dim != algebra.dim:
        raise CliError("--r must be a degree-2 tensor over the algebra")
    if args.classical:
        residual = cyb(algebra, r)
        ok = residual.is_zero
        lines = [f"residual_zero: {str(ok).lower()}"]
        failures = [] if ok else [failure("residual", None, residual)]
    else:
        verdict = check_quasi_triangular(algebra, r)
        residual = verdict.hcyb_residual
        ok = verdict.verdict == "quasi-triangular"
        lines = [
            f"phi_fixed: {str(verdict.phi_fixed).lower()}",
            f"s_invariant: {str(verdict.s_invariant).lower()}",
            f"verdict: {verdict.verdict}",
            f"factorizable: {str(verdict.factorizable).lower()}",
        ]
        failures = []
        if not verdict.phi_fixed:
            failures.append(failure("phi_fixed"))
        if not verdict.s_invariant:
            failures.append(failure("s_invariant"))
        if not residual.is_zero:
            failures.append(failure("residual", None, residual))
    result = fileio.format_tensor(residual) + "\n".join(lines) + "\n"
    if args.json:
        report = CheckReport("hcybe", failures)
        _emit_json("hcybe", "pass" if ok else "fail", report.to_json()["failures"], started, result)
    else:
        sys.stdout.write(result)
    return 0 if ok else 1


def _cmd_stabilizer(args, inputs: _Inputs, started: float) -> int:
    triple = inputs.take(args.file, "triple")
    q = inputs.take(args.q, "subspace")
    if q.ambient_dim != triple.dim:
        raise CliError("--q must live in the triple's ambient space")
    if triple.algebra.form is None:
        raise CliError("the triple's algebra carries no bilinear form")
    s = inputs.take(args.s, "tensor") if args.s is not None else None
    if s is not None and (s.degree != 2 or s.dim != triple.dim):
        raise CliError("--S must be a degree-2 tensor over the triple's algebra")
    outcomes: list[tuple[str, bool]] = [
        ("coisotropic", check_coisotropy(triple, q)),
        ("twist_stable", check_phi_stable(q, triple.algebra.phi)),
    ]
    if s is not None:
        outcomes.append(("s_sharp_image", check_s_sharp_condition(triple.algebra, s, q)))
        outcomes.append(
            ("sharp_brackets", check_bracket_sharp_condition(triple.algebra, s, q))
        )
    report = CheckReport(
        "stabilizer", [failure(name) for name, ok in outcomes if not ok]
    )
    result = "".join(f"{name}: {str(ok).lower()}\n" for name, ok in outcomes)
    if args.json:
        _emit_json("stabilizer", report.verdict, report.to_json()["failures"], started, result)
    else:
        sys.stdout.write(result)
        print(f"stabilizer: {_status(report.passed)}")
    return 0 if report.passed else 1


def _parse_weyl_word(k: int, text: str) -> WeylElement:
    if text in ("e", ""):
        return weyl_identity(k)
    try:
        letters = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise CliError(f"malformed word {text!r}: expected comma-separated indices") from None
    try:
        return weyl_from_word(k, letters)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _parse_weyl_words(k: int, n: int, text: str, flag: str) -> tuple[WeylElement, ...]:
    words = tuple(_parse_weyl_word(k, part.strip()) for part in text.split(";"))
    if len(words) != n:
        raise CliError(f"{flag} needs exactly {n} words separated by ';'")
    return words


def _render_weyl(w: WeylElement) -> str:
    return ",".join(str(w.apply(i)) for i in range(1, w.letters + 1))


def _cmd_leafmap(args, inputs: _Inputs, started: float) -> int:
    k = args.rank
    if k < 2:
        raise CliError("--rank must be at least 2")
    u = _parse_weyl_words(k, args.n, args.u, "-u")
    v = _parse_weyl_words(k, args.n, args.v, "-v")
    w = _parse_weyl_word(k, args.w)
    image = leaf_index_map(DoubleLeafIndex(u, v, w))
    result = (
        "words: " + " ".join(_render_weyl(e) for e in image.u) + "\n"
        "w: " + _render_weyl(image.w) + "\n"
    )
    if args.json:
        _emit_json("leafmap", "pass", [], started, result)
    else:
        sys.stdout.write(result)
    return 0


def _matrix_block_text(g: GroupElement) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in g.matrix)


def _psi_output(pairs, stages: PsiStages | None) -> str:
    sections: list[str] = []
    if stages is not None:
        for label, items in (("stage 1", stages.stage1), ("stage 2", stages.stage2)):
            for i, g in enumerate(items, start=1):
                sections.append(f"{label} item {i}:\n{_matrix_block_text(g)}")
        for label, items in (("stage 3", stages.stage3), ("stage 4", stages.stage4)):
            for i, (left, right) in enumerate(items, start=1):
                sections.append(f"{label} pair {i} left:\n{_matrix_block_text(left)}")
                sections.append(f"{label} pair {i} right:\n{_matrix_block_text(right)}")
    for i, (left, right) in enumerate(pairs, start=1):
        sections.append(f"pair {i} left:\n{_matrix_block_text(left)}")
        sections.append(f"pair {i} right:\n{_matrix_block_text(right)}")
    return "\n".join(sections) + "\n"


def _cmd_psi(args, inputs: _Inputs, started: float) -> int:
    if args.rank < 2:
        raise CliError("--rank must be at least 2")
    if args.n < 1:
        raise CliError("--n must be at least 1")
    blocks = fileio.parse_matrix_blocks(inputs.raw(args.input))
    if len(blocks) != 2 * args.n:
        raise CliError(f"expected {2 * args.n} matrix blocks, found {len(blocks)}")
    elements = []
    for b, block in enumerate(blocks, start=1):
        if len(block) != args.rank or any(len(row) != args.rank for row in block):
            raise CliError(f"matrix block {b} is not {args.rank}x{args.rank}")
        try:
            elements.append(GroupElement.of(block))
        except ValueError as exc:
            raise CliError(f"matrix block {b}: {exc}") from None
    gs = tuple(elements)
    pairs = psi_map(args.n, gs)
    stages = psi_stages(args.n, gs) if args.stages else None
    result = _psi_output(pairs, stages)
    if args.json:
        _emit_json("psi", "pass", [], started, result)
    else:
        sys.stdout.write(result)
    return 0


def _example_text(name: str) -> str:
    if name == "sl2":
        return fileio.format_algebra(sl2_twisted()) + fileio.format_tensor(sl2_r())
    if name == "hyperbolic":
        return fileio.format_triple(hyperbolic_triple())
    if name == "g-plus-h":
        return fileio.format_triple(triple_g_plus_h(special_linear_data(2)))
    if name == "double":
        return fileio.format_triple(triple_double(special_linear_data(2)))
    if name == "lambda-st":
        return fileio.format_tensor(lambda_st(special_linear_data(2)))
    raise CliError(f"unknown example {name!r}")


def _cmd_examples(args, inputs: _Inputs, started: float) -> int:
    text = _example_text(args.name)
    if args.json:
        _emit_json("examples", "pass", [], started, text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing and dispatch


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
    common.add_argument("--jobs", type=int, default=1, help="run independent sub-checks in N threads")

    parser = argparse.ArgumentParser(
        prog="maninforge",
        description="Exact-rational verification toolkit for split quadratic twisted Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", parents=[common], help="certify a structure file")
    p_verify.add_argument("kind", choices=["manin"], help="what to verify")
    p_verify.add_argument("file", help="triple file ('-' for stdin)")
    p_verify.set_defaults(func=_cmd_verify)

    p_poly = sub.add_parser("polyuble", parents=[common], help="build the n-fold power of a triple")
    p_poly.add_argument("file", help="triple file ('-' for stdin)")
    p_poly.add_argument("-n", type=int, required=True, help="number of copies")
    p_poly.add_argument("--check", action="store_true", help="also certify the result")
    p_poly.set_defaults(func=_cmd_polyuble)

    p_snake = sub.add_parser("snake", parents=[common], help="snake slot permutation and certification")
    p_snake.add_argument("-m", type=int, required=True)
    p_snake.add_argument("-n", type=int, required=True)
    p_snake.add_argument("--verify", metavar="TRIPLE", help="certify the identification over this base triple")
    p_snake.add_argument("--dot", metavar="OUT", help="write the chain graph as DOT ('-' for stdout)")
    p_snake.set_defaults(func=_cmd_snake)

    p_hcybe = sub.add_parser("hcybe", parents=[common], help="Yang-Baxter residual and classification")
    p_hcybe.add_argument("file", help="algebra file ('-' for stdin)")
    p_hcybe.add_argument("--r", required=True, metavar="TENSOR", help="candidate degree-2 tensor")
    p_hcybe.add_argument("--classical", action="store_true", help="evaluate with the identity twist")
    p_hcybe.set_defaults(func=_cmd_hcybe)

    p_stab = sub.add_parser("stabilizer", parents=[common], help="subalgebra conditions for a subspace")
    p_stab.add_argument("file", help="triple file ('-' for stdin)")
    p_stab.add_argument("--q", required=True, metavar="SUBSPACE", help="candidate subspace")
    p_stab.add_argument("--S", dest="s", metavar="TENSOR", help="symmetric part for the sharp conditions")
    p_stab.set_defaults(func=_cmd_stabilizer)

    p_leaf = sub.add_parser("leafmap", parents=[common], help="double-chain label to folded-chain label")
    p_leaf.add_argument("--rank", type=int, required=True, help="letters of the symmetric group")
    p_leaf.add_argument("--n", type=int, required=True)
    p_leaf.add_argument("-u", required=True, help="n words, ';'-separated, each comma-separated indices or 'e'")
    p_leaf.add_argument("-v", required=True, help="n words, same syntax")
    p_leaf.add_argument("-w", required=True, help="one word")
    p_leaf.set_defaults(func=_cmd_leafmap)

    p_psi = sub.add_parser("psi", parents=[common], help="chain map on matrix tuples")
    p_psi.add_argument("--rank", type=int, required=True, help="matrix size")
    p_psi.add_argument("--n", type=int, required=True)
    p_psi.add_argument("--input", required=True, help="2n blank-line-separated matrices ('-' for stdin)")
    p_psi.add_argument("--stages", action="store_true", help="also print the four-stage factorization")
    p_psi.set_defaults(func=_cmd_psi)

    p_ex = sub.add_parser("examples", parents=[common], help="emit a built-in example file")
    p_ex.add_argument(
        "name", choices=["sl2", "g-plus-h", "double", "hyperbolic", "lambda-st"]
    )
    p_ex.set_defaults(func=_cmd_examples)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    started = time.perf_counter()
    try:
        return args.func(args, _Inputs(), started)
    except (CliError, fileio.ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

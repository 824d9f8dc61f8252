"""Command-line interface.

    suslin-clifford gen    --n 3 --a 1,2,3 --b 4,5,6 --det
    suslin-clifford bases  --n 2 --format json
    suslin-clifford blocks --p 1,2 --a 3 --f 4,5 --b 6 --basis suslin
    suslin-clifford verify --suite all --n 0..3 --mode symbolic

Exit codes: 0 on success, 1-125 the number of failed verification reports,
64 on usage errors.  The default ring comes from ``$SUSLIN_RING`` (else
``int``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .clifford import HyperbolicElement, phi_blocks
from .exterior import OrderedBasis, canonical_split
from .ring import Ring, RingError, ring_make
from .suslin import (
    basis_to_text,
    build_suslin_bases,
    generalized_suslin,
    generalized_suslin_bar,
    represent,
    suslin_bar,
    suslin_matrix,
)
from .verify import DEFAULT_SEED, THEOREMS, UsageError, det_division_free, run_suite, symbolic_element, symbolic_names

EXIT_USAGE = 64
MAX_FAILURE_CODE = 125
RING_ENV = "SUSLIN_RING"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D401 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_ring() -> str:
    return os.environ.get(RING_ENV, "int")


def _ring(text: str) -> Ring:
    try:
        return ring_make(text)
    except RingError as exc:
        raise UsageError(str(exc)) from None


def _vector(ring: Ring, text: str, what: str) -> list:
    if text.strip() == "":
        return []
    try:
        return [ring.parse(t) for t in text.split(",")]
    except RingError as exc:
        raise UsageError(f"malformed {what}: {exc}") from None


def parse_ranks(text: str) -> list[int]:
    """``"2"``, ``"0..3"`` (inclusive) or ``"0,2,3"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad rank specification {text!r}") from None
    if not out or any(n < 0 for n in out):
        raise UsageError(f"bad rank specification {text!r}")
    return out


def _emit(obj, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, ensure_ascii=False))
    else:
        print(text)


def cmd_gen(args) -> int:
    ring = _ring(args.ring)
    a = _vector(ring, args.a, "--a")
    b = _vector(ring, args.b, "--b")
    if len(a) != args.n or len(b) != args.n:
        raise UsageError(f"--a and --b must both have length n = {args.n}")
    if args.n < 1:
        raise UsageError("Suslin matrices need n >= 1")
    mats = []
    if args.flavor in ("plain", "both"):
        mats.append(suslin_matrix(a, b, ring))
    if args.flavor in ("bar", "both"):
        mats.append(suslin_bar(a, b, ring))
    blobs, lines = [], []
    for sm in mats:
        blob = sm.to_json()
        if args.flavor == "both":
            lines.append("S =" if sm.flavor == "plain" else "S̄ =")
        lines.append(sm.matrix.format())
        if args.det:
            d = det_division_free(sm.matrix)
            blob["det"] = str(d)
            lines.append(f"det = {d}")
        blobs.append(blob)
    _emit(blobs[0] if len(blobs) == 1 else blobs, args.format, "\n".join(lines))
    return 0


def cmd_bases(args) -> int:
    if args.n < 0:
        raise UsageError("rank must be non-negative")
    b1, b0 = build_suslin_bases(args.n)
    obj = {"n": args.n, "B1": b1.to_json(), "B0": b0.to_json()}
    text = f"B1 = [{', '.join(basis_to_text(b1))}]\nB0 = [{', '.join(basis_to_text(b0))}]"
    _emit(obj, args.format, text)
    return 0


def _element(args, ring: Ring) -> HyperbolicElement:
    if args.x is not None:
        raw = args.x
        if raw.startswith("@"):
            raw = Path(raw[1:]).read_text()
        try:
            return HyperbolicElement.from_json(ring, json.loads(raw))
        except (ValueError, KeyError, RingError) as exc:
            raise UsageError(f"malformed --x: {exc}") from None
    if args.symbolic:
        if args.n is None:
            raise UsageError("--symbolic needs --n")
        return symbolic_element(ring_make("poly:" + ",".join(symbolic_names(args.n))), args.n)
    if args.a is None or args.b is None:
        raise UsageError("give --x, --symbolic --n N, or all of --p --a --f --b")
    p = _vector(ring, args.p or "", "--p")
    f = _vector(ring, args.f or "", "--f")
    if len(p) != len(f):
        raise UsageError("--p and --f must have the same length")
    try:
        return HyperbolicElement(ring, tuple(p), ring.parse(args.a), tuple(f), ring.parse(args.b))
    except RingError as exc:
        raise UsageError(str(exc)) from None


def cmd_blocks(args) -> int:
    ring = _ring(args.ring)
    x = _element(args, ring)
    act = phi_blocks(x)
    s, sb = generalized_suslin(x), generalized_suslin_bar(x)
    n = x.n
    if args.basis == "suslin":
        src, dst = build_suslin_bases(n)
        phi10 = represent(act.phi10, src, dst)
        phi01 = represent(act.phi01, dst, src)
        sm, sbm = represent(s, src, src), represent(sb, src, src)
        odd, even = src, dst
    elif args.basis == "split":
        odd, even = canonical_split(n + 1, 1).basis(), canonical_split(n + 1, 0).basis()
        phi10, phi01 = represent(act.phi10, odd, even), represent(act.phi01, even, odd)
        sm, sbm = represent(s, odd, odd), represent(sb, odd, odd)
    else:
        odd, even = OrderedBasis.lexicographic(n + 1, 1), OrderedBasis.lexicographic(n + 1, 0)
        phi10, phi01, sm, sbm = act.phi10.matrix, act.phi01.matrix, s.matrix, sb.matrix
    obj = {
        "x": x.to_json(),
        "q": str(x.q()),
        "basis": args.basis,
        "odd_basis": odd.to_json(),
        "even_basis": even.to_json(),
        "phi10": phi10.to_json(),
        "phi01": phi01.to_json(),
        "S": sm.to_json(),
        "Sbar": sbm.to_json(),
    }
    text = "\n".join(
        [
            f"x = {x}",
            f"q(x) = {x.q()}",
            f"odd basis  = {odd.to_text()}",
            f"even basis = {even.to_text()}",
            "Φ_{1,0}(x) =",
            phi10.format(),
            "Φ_{0,1}(x) =",
            phi01.format(),
            "S(x) =",
            sm.format(),
            "S̄(x) =",
            sbm.format(),
        ]
    )
    _emit(obj, args.format, text)
    return 0


def cmd_verify(args) -> int:
    ranks = parse_ranks(args.n)
    mode = args.mode or ("randomized" if args.trials is not None else "symbolic")
    trials = args.trials if args.trials is not None else 100
    failures = 0

    def on_report(r) -> None:
        nonlocal failures
        if not r.passed and not r.experimental:
            failures += 1
        print(json.dumps(r.to_json(timing=args.timing), ensure_ascii=False, sort_keys=True), flush=True)

    run_suite(
        args.suite,
        _ring(args.ring),
        ranks,
        mode,
        trials=trials,
        seed=args.seed,
        gl=args.experimental_gl,
        on_report=on_report,
    )
    return min(failures, MAX_FAILURE_CODE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="suslin-clifford", description="Suslin matrices and the Clifford action on exterior algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="print S_n(a, b) and/or its bar matrix")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--a", required=True, help="comma-separated first row")
    g.add_argument("--b", required=True, help="comma-separated second row")
    g.add_argument("--ring", default=_default_ring())
    g.add_argument("--flavor", choices=("plain", "bar", "both"), default="plain")
    g.add_argument("--det", action="store_true", help="also print the determinant")
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("bases", help="print the ordered bases B1 and B0 of Λ(R^{n+1})")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--format", choices=("text", "json"), default="text")
    b.set_defaults(func=cmd_bases)

    k = sub.add_parser("blocks", help="print Φ_{1,0}(x), Φ_{0,1}(x), S(x) and S̄(x)")
    k.add_argument("--x", help="element as JSON {p, a, f, b}, or @file")
    k.add_argument("--p", help="comma-separated vector p")
    k.add_argument("--a")
    k.add_argument("--f", help="comma-separated functional f")
    k.add_argument("--b")
    k.add_argument("--symbolic", action="store_true", help="use indeterminates p1..pn, a, f1..fn, b")
    k.add_argument("--n", type=int)
    k.add_argument("--ring", default=_default_ring())
    k.add_argument("--basis", choices=("lex", "split", "suslin"), default="lex")
    k.add_argument("--format", choices=("text", "json"), default="text")
    k.set_defaults(func=cmd_blocks)

    v = sub.add_parser("verify", help="run verification suites, one JSON report per line")
    v.add_argument("--suite", default="all", help=f"comma-separated ids, 'all' or 'lemmas'; known: {', '.join(THEOREMS)}")
    v.add_argument("--n", default="0..2", help="rank, inclusive range a..b, or list")
    v.add_argument("--ring", default=_default_ring())
    v.add_argument("--mode", choices=("symbolic", "randomized"))
    v.add_argument("--trials", type=int)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    v.add_argument("--experimental-gl", action="store_true", help="sample φ in GL instead of SL; no pass/fail contract")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

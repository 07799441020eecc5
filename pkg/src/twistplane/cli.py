"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 mathematical rejection
(obstruction, failed verification, inconsistent prefix), 3 window-limited.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any, Sequence

from .algebra.field import Field
from .algebra.obstruction import DEFAULT_BOUND, find_q_root, find_r_root, pq_values, r_value
from .bandmatrix import BandMatrix
from .errors import MathRejection, ParseError, TwistError, WindowError
from .families import DEFAULT_DEPTH, VARIANTS, FamilyParams, branch_2n
from .seqlab import (
    count_prefixes,
    enumerate_prefixes,
    extensions,
    failure_witness,
    find_violation,
    generate,
    parse_terms,
)
from .verify import (
    check_fundamental,
    check_gamma_axioms,
    check_mtilde,
    classify,
    gamma_table,
    merge_reports,
)

EXIT_OK, EXIT_USAGE, EXIT_REJECT, EXIT_WINDOW = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args: Any, **kwargs: Any) -> None:
        super().__init__(*args, **kwargs)
        # let signed rationals such as -4/3 through as values
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


class _Out:
    """JSON goes to --json-out when given, else stdout; summaries go wherever JSON doesn't."""

    def __init__(self, path: str | None) -> None:
        self.path = path

    def json(self, obj: Any) -> None:
        text = _dump(obj) + "\n"
        if self.path:
            Path(self.path).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)

    def say(self, line: str) -> None:
        stream = sys.stdout if self.path else sys.stderr
        stream.write(line + "\n")


def _field(args: argparse.Namespace) -> Field:
    return Field.parse(args.field)


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _load_matrix(path: str) -> BandMatrix:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ParseError("matrix JSON must be an object")
    return BandMatrix.from_json(data)


def cmd_build(args: argparse.Namespace, out: _Out) -> int:
    F = _field(args)
    if args.params:
        params = FamilyParams.from_json(_load_json(args.params), field=F)
    else:
        if not args.variant:
            raise ParseError("build needs --variant or --params")
        raw: dict[str, Any] = {"variant": args.variant, "depth": args.depth or DEFAULT_DEPTH}
        for key in ("b", "c", "d", "a"):
            if getattr(args, key) is not None:
                raw[key] = getattr(args, key)
        if args.n is not None:
            raw["n"] = args.n
        if args.L is not None:
            raw["L"] = list(parse_terms(args.L).terms)
        params = FamilyParams.from_json(raw, field=F)
    if args.depth is not None and args.params:
        params = FamilyParams.from_json({**params.to_json(), "depth": args.depth}, field=F)
    M = params.build(tilde=args.tilde)
    out.json(M.to_json())
    name = "M - Y" if args.tilde else "M"
    summary = json.dumps(params.to_json(), separators=(",", ":"))
    out.say(f"built {name} for {summary}: {M.valid_rows} rows over {F.name}")
    return EXIT_OK


def _exit_for(status: str) -> int:
    return {"pass": EXIT_OK, "fail": EXIT_REJECT, "window-limited": EXIT_WINDOW}[status]


def cmd_verify(args: argparse.Namespace, out: _Out) -> int:
    M = _load_matrix(args.matrix)
    checks = [c.strip() for c in args.check.split(",") if c.strip()]
    unknown = set(checks) - {"fundamental", "gamma", "mtilde"}
    if unknown or not checks:
        raise ParseError(f"unknown checks: {', '.join(sorted(unknown)) or '(none)'}")
    reports = {}
    for check in checks:
        if check == "fundamental":
            reports[check] = check_fundamental(M, args.depth)
        elif check == "gamma":
            reports[check] = check_gamma_axioms(gamma_table(M, args.max_r, args.max_i))
        else:
            a, L = args.a, args.L
            if a is None or L is None:
                tag = classify(M)
                if tag.variant != "bnl":
                    raise ParseError("mtilde needs --a and --L unless the matrix classifies as bnl")
                a = a or tag.params["a"]
                L = L or ",".join(str(t) for t in tag.params["L"])
            Mt = M - BandMatrix.shift_matrix(M.field, M.valid_rows)
            reports[check] = check_mtilde(Mt, M.field.scalar(a), parse_terms(L), args.depth)
    report = merge_reports("verify", reports, M.field) if len(reports) > 1 else reports[checks[0]]
    out.json(report.to_json())
    out.say(f"verify {','.join(checks)}: {report.status} (checked depth {report.checked_depth})")
    return _exit_for(report.status)


def cmd_classify(args: argparse.Namespace, out: _Out) -> int:
    M = _load_matrix(args.matrix)
    tag = classify(M)
    out.json(tag.to_json())
    out.say(f"classified as {tag.variant}")
    return EXIT_REJECT if tag.variant == "inconsistent" else EXIT_OK


def cmd_seq(args: argparse.Namespace, out: _Out) -> int:
    n = args.n
    if args.enumerate is not None:
        seqs = enumerate_prefixes(n, args.enumerate)
        out.json([s.to_json() for s in seqs])
        out.say(f"{len(seqs)} quasi-balanced prefixes of length {args.enumerate}")
        return EXIT_OK
    if args.count:
        if args.max_len is None:
            raise ParseError("--count needs --max-len")
        lines = ["length,count"] + [f"{m},{c}" for m, c in count_prefixes(n, args.max_len)]
        text = "\n".join(lines) + "\n"
        if out.path:
            Path(out.path).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if args.generate is not None:
        if args.length is None:
            raise ParseError("--generate needs --length")
        L = generate(n, args.length, args.generate, args.seed)
        out.json(L.to_json())
        return EXIT_OK
    text = args.extend or args.witness or args.check
    if text is None:
        raise ParseError("seq needs one of --enumerate, --count, --generate, --extend, --witness, --check")
    L = parse_terms(text)
    if L.n != n:
        raise ParseError(f"sequence starts at {L.n} but --n is {n}")
    if args.extend:
        out.json(list(extensions(L)))
        return EXIT_OK
    w = find_violation(L)
    if args.check:
        out.json({"quasi_balanced": w is None, "witness": None if w is None else w.to_json()})
        return EXIT_OK if w is None else EXIT_REJECT
    if w is None:
        raise ParseError(f"{L.to_json()} is quasi-balanced; there is no witness")
    fc = failure_witness(L)
    out.json({"witness": w.to_json(), "failure": fc.to_json()})
    out.say(f"case {fc.case}, (r, j) = ({w.r}, {w.j}), Δ = {w.delta}")
    return EXIT_OK


def cmd_roots(args: argparse.Namespace, out: _Out) -> int:
    F = _field(args)
    if args.family == "q":
        if args.b is None or args.c is None:
            raise ParseError("roots q needs --b and --c")
        b, c = F.scalar(args.b), F.scalar(args.c)
        found = find_q_root(b, c, args.bound)
        result: dict[str, Any] = {"family": "Q", "b": F.format(b), "c": F.format(c)}
        if found.index is not None:
            result["value"] = F.format(pq_values(b, c, found.index)[1])
    else:
        if args.a is None or args.d is None:
            raise ParseError("roots r needs --a and --d")
        a, d = F.scalar(args.a), F.scalar(args.d)
        found = find_r_root(a, d, args.bound)
        result = {"family": "R", "a": F.format(a), "d": F.format(d)}
        if found.index is not None:
            result["value"] = F.format(r_value(a, d, found.index))
    result.update({"index": found.index, "tag": found.tag, "bound": args.bound})
    out.json(result)
    if found.index is None:
        out.say(f"none <= {args.bound} ({found.tag})")
    else:
        out.say(f"root at index {found.index} ({found.tag})")
    return EXIT_OK


def cmd_branch(args: argparse.Namespace, out: _Out) -> int:
    F = _field(args)
    state = branch_2n(args.n, F.scalar(args.a), field=F)
    out.json(state.to_json(F))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def add_globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
        def default(value: Any) -> Any:
            return argparse.SUPPRESS if suppress else value

        parser.add_argument("--field", default=default("rational"), help="rational or gf:p")
        parser.add_argument("--depth", type=int, default=default(None),
                            help="valid rows / verification depth")
        parser.add_argument("--json-out", default=default(None), metavar="PATH")

    # global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    add_globals(common, suppress=True)

    p = _Parser(prog="twistplane", description=__doc__.splitlines()[0])
    add_globals(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", parents=[common], help="construct a family matrix")
    b.add_argument("--variant", choices=VARIANTS)
    b.add_argument("--params", help="FamilyParams JSON file")
    for key in ("b", "c", "d", "a"):
        b.add_argument(f"--{key}", default=None)
    b.add_argument("--n", type=int, default=None)
    b.add_argument("--L", default=None, help="comma-separated sequence prefix")
    b.add_argument("--tilde", action="store_true", help="emit M - Y instead of M")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", parents=[common], help="check a matrix file")
    v.add_argument("matrix")
    v.add_argument("--check", default="fundamental", help="comma list of fundamental,gamma,mtilde")
    v.add_argument("--a", default=None)
    v.add_argument("--L", default=None)
    v.add_argument("--max-r", type=int, default=6)
    v.add_argument("--max-i", type=int, default=6)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify", parents=[common], help="name the family of a matrix file")
    c.add_argument("matrix")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("seq", parents=[common], help="quasi-balanced sequences")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--enumerate", type=int, default=None, metavar="LEN")
    s.add_argument("--count", action="store_true")
    s.add_argument("--max-len", type=int, default=None)
    s.add_argument("--extend", default=None, metavar="L")
    s.add_argument("--witness", default=None, metavar="L")
    s.add_argument("--check", default=None, metavar="L")
    s.add_argument("--generate", choices=("greedy-n", "greedy-n1", "random"), default=None)
    s.add_argument("--length", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_seq)

    r = sub.add_parser("roots", parents=[common], help="roots of the obstruction polynomials")
    r.add_argument("family", choices=("q", "r"))
    for key in ("b", "c", "a", "d"):
        r.add_argument(f"--{key}", default=None)
    r.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    r.set_defaults(func=cmd_roots)

    br = sub.add_parser("branch", parents=[common], help="the four admissible rows 2n, 2n+1")
    br.add_argument("--n", type=int, required=True)
    br.add_argument("--a", required=True)
    br.set_defaults(func=cmd_branch)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.json_out)
    try:
        return args.func(args, out)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except WindowError as exc:
        out.json(exc.certificate())
        sys.stderr.write(f"window: {exc}\n")
        return EXIT_WINDOW
    except MathRejection as exc:
        out.json(exc.certificate())
        sys.stderr.write(f"rejected: {exc}\n")
        return EXIT_REJECT
    except (TwistError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

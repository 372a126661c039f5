"""Command-line interface.

Exit codes: 0 success / verification passed, 1 verification failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import verify
from .conjugacy import (
    action_classes,
    g_conjugacy_classes,
    primary_is_transitive,
    primary_pairs,
    tilde_classes,
)
from .errors import HypothesisNotMet, NotInverse, NotRegular, SemigroupError
from .families import build_family
from .representations import (
    DEFAULT_SEED,
    Verdict,
    char_equal_decision,
    character_table,
    snap,
    witness_family,
)
from .semigroup import FiniteSemigroup, greens, is_inverse, is_regular
from .serialize import (
    check_size,
    closure_from_generator_json,
    digest,
    dumps_semigroup,
    load_semigroup,
    parse_family_token,
    semigroup_from_json,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
RELATIONS = ("primary", "tilde", "action", "character", "group")
FAMILIES = ("is", "t", "monogenic", "sym", "cyclic", "from-generators", "from-table")


class UsageError(Exception):
    pass


def resolve_seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("SEMICONJ_SEED")
    if env:
        try:
            return int(env, 0)
        except ValueError as exc:
            raise UsageError(f"SEMICONJ_SEED={env!r} is not an integer") from exc
    return DEFAULT_SEED


# ---------------------------------------------------------------------------
# text rendering


def _cell(S: FiniteSemigroup, members, starred: bool) -> str:
    return ("*" if starred else " ") + " ".join(S.name(x) for x in members)


def render_eggbox(S: FiniteSemigroup, fancy: bool = False) -> str:
    g = greens(S)
    H = g.H.classes
    diag = S.table.diagonal()
    h, v, c = ("─", "│", "┼") if fancy else ("-", "|", "+")
    out = []
    for d in g.dclasses:
        kind = "regular" if d.is_regular else "non-regular"
        out.append(
            f"D-class {d.index}: {len(d.members)} element(s), {kind}, "
            f"{len(d.rows)}x{len(d.cols)} H-classes of size {len(H[d.grid[0][0]])}"
        )
        cells = [
            [_cell(S, H[k], any(diag[x] == x for x in H[k])) for k in row] for row in d.grid
        ]
        width = max(len(s) for row in cells for s in row) + 1
        rule = c + c.join(h * width for _ in d.cols) + c
        out.append(rule)
        for row in cells:
            out.append(v + v.join(s.ljust(width) for s in row) + v)
            out.append(rule)
    return "\n".join(out)


def greens_json(S: FiniteSemigroup) -> dict:
    g = greens(S)
    diag = S.table.diagonal()
    H = g.H.classes
    return {
        "R": g.R.classes,
        "L": g.L.classes,
        "H": H,
        "D": g.D.classes,
        "J": g.J.classes,
        "regular": is_regular(S),
        "inverse": is_inverse(S),
        "dclasses": [
            {
                "index": d.index,
                "members": list(d.members),
                "idempotents": list(d.idempotents),
                "regular": d.is_regular,
                "eggbox": [
                    [{"members": H[k], "group": any(diag[x] == x for x in H[k])} for k in row]
                    for row in d.grid
                ],
            }
            for d in g.dclasses
        ],
    }


def _names(S: FiniteSemigroup, block) -> str:
    return "{" + ", ".join(S.name(x) for x in block) + "}"


def _report_text(rep) -> str:
    lines = [f"{rep.claim}: {'PASS' if rep.passed else 'FAIL'}"]
    for k, v in rep.hypotheses.items():
        lines.append(f"  hypothesis {k}: {v}")
    for k, v in rep.checks.items():
        lines.append(f"  check {k}: {'ok' if v else 'FAILED'}")
    for k, v in rep.details.items():
        if isinstance(v, (int, float, str)):
            lines.append(f"  {k}: {v}")
    if rep.counterexample:
        lines.append(f"  counterexample: {json.dumps(rep.counterexample, sort_keys=True)}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def cmd_build(args) -> tuple[dict, str, int]:
    family = args.family
    if family in ("from-generators", "from-table"):
        if len(args.params) != 1:
            raise UsageError(f"{family} takes one JSON file")
        path = args.params[0]
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SemigroupError(f"cannot read {path}: {exc}") from exc
        if family == "from-generators":
            S = closure_from_generator_json(data).semigroup
        else:
            S = semigroup_from_json(data)
        provenance = {"family": family, "source": Path(path).name}
    else:
        try:
            params = [int(p) for p in args.params]
        except ValueError as exc:
            raise UsageError(f"parameters must be integers: {args.params}") from exc
        check_size(family, params, args.force)
        S = build_family(family, params)
        provenance = {"family": family, "params": params}
    text = dumps_semigroup(S, provenance)
    if args.out:
        Path(args.out).write_text(text)
        summary = f"wrote order-{S.order} semigroup to {args.out}"
    else:
        summary = text.rstrip("\n")
    return {"order": S.order, "identity": S.identity, "provenance": provenance}, summary, EXIT_OK


def cmd_analyze(args, S: FiniteSemigroup) -> tuple[dict, str, int]:
    text = f"order {S.order}, regular={is_regular(S)}, inverse={is_inverse(S)}\n"
    text += render_eggbox(S, args.fancy)
    return greens_json(S), text, EXIT_OK


def cmd_conjugacy(args, S: FiniteSemigroup, seed: int) -> tuple[dict, str, int]:
    rel = args.relation
    if rel == "primary":
        pairs = sorted({(min(x, y), max(x, y)) for x, y in primary_pairs(S).tolist() if x != y})
        witness = primary_is_transitive(S)
        payload = {
            "relation": "primary",
            "pairs": [list(p) for p in pairs],
            "transitive": witness is None,
            "non_transitive_witness": list(witness) if witness else None,
        }
        text = "\n".join(f"{S.name(x)} ~p {S.name(y)}" for x, y in pairs)
        text += f"\ntransitive: {witness is None}"
        return payload, text, EXIT_OK
    if rel == "character":
        n = S.order
        verdicts = [[char_equal_decision(S, x, y, seed).verdict.value for y in range(n)] for x in range(n)]
        payload = {"relation": "character", "verdicts": verdicts}
        lines = []
        for x in range(n):
            for y in range(x + 1, n):
                d = char_equal_decision(S, x, y, seed)
                if d.verdict is not Verdict.DISTINCT:
                    lines.append(f"{S.name(x)} vs {S.name(y)}: {d.verdict.value} ({d.reason})")
        if not any(v == Verdict.UNKNOWN.value for row in verdicts for v in row):
            from .representations import family_partition

            payload["classes"] = family_partition(S, seed).classes
            lines.append("classes: " + " ".join(_names(S, b) for b in payload["classes"]))
        return payload, "\n".join(lines) or "all pairs DISTINCT", EXIT_OK
    if rel == "tilde":
        cp = tilde_classes(S)
    elif rel == "action":
        cp = action_classes(S)
    else:
        cp = g_conjugacy_classes(S)
    payload = cp.to_json()
    payload["sizes"] = [len(c) for c in cp.classes]
    text = f"{rel}: {len(cp.classes)} classes\n" + "\n".join(_names(S, b) for b in cp.classes)
    return payload, text, EXIT_OK


def cmd_characters(args, S: FiniteSemigroup, seed: int) -> tuple[dict, str, int]:
    from .representations import _require_group
    from .errors import NotGroup

    try:
        _require_group(S)
        ct = character_table(S, seed)
    except NotGroup:
        fam = witness_family(S, seed)
        payload = {"characters": [c.to_json() for c in fam]}
        lines = [f"{c.provenance}: {_fmt(snap(c.values))}" for c in fam]
        return payload, "\n".join(lines), EXIT_OK
    payload = ct.to_json()
    lines = [f"classes (sizes): {ct.class_sizes}"] + [_fmt(row) for row in snap(ct.table)]
    return payload, "\n".join(lines), EXIT_OK


def _fmt(values) -> str:
    def one(z):
        if z.imag == 0:
            return f"{z.real:g}"
        return f"{z.real:g}{z.imag:+g}i"

    return " ".join(one(z) for z in values)


def cmd_verify(args, seed: int) -> tuple[dict, str, int]:
    claim = args.claim
    token = parse_family_token(args.input)
    if claim == "lemma1" and token is not None and token[0] == "is":
        n = token[1][0]
        if n > 5:
            raise UsageError("lemma1 on partial injections supports degree <= 5")
        samples = args.samples if args.samples is not None else (None if n <= 3 else verify.LEMMA1_SAMPLES)
        rep = verify.verify_lemma1_concrete(n, samples, seed)
    else:
        S = load_semigroup(args.input, force=args.force)
        try:
            rep = verify.CLAIMS[claim](S, seed, count=args.spot_checks)
        except (NotRegular, NotInverse, HypothesisNotMet) as exc:
            raise HypothesisNotMet(f"{claim}: hypothesis not met: {exc}") from exc
    code = EXIT_OK if rep.passed else EXIT_FAIL
    return rep.to_json(), _report_text(rep), code


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                        help="seed for character-table randomisation (default 0xC0FFEE)")
    common.add_argument("--fancy", action="store_true", help="UTF-8 box drawing")
    common.add_argument("--force", action="store_true", help="lift size guards")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    p = argparse.ArgumentParser(prog="semiconj", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="build a semigroup file")
    b.add_argument("family", choices=FAMILIES)
    b.add_argument("params", nargs="*")
    b.add_argument("--out", help="output path (default: stdout)")

    a = sub.add_parser("analyze", parents=[common], help="Green's structure and eggbox")
    a.add_argument("input", help="semigroup JSON file or family token such as is:3")

    c = sub.add_parser("conjugacy", parents=[common], help="conjugacy partitions")
    c.add_argument("input")
    c.add_argument("--relation", choices=RELATIONS, default="tilde")

    ch = sub.add_parser("characters", parents=[common], help="character table or induced family")
    ch.add_argument("input")

    v = sub.add_parser("verify", parents=[common], help="verify a claim")
    v.add_argument("claim", choices=sorted(verify.CLAIMS))
    v.add_argument("input")
    v.add_argument("--samples", type=int, default=None, help="random triples for lemma1 on is:n")
    v.add_argument("--spot-checks", type=int, default=20, help="pairs for eq-a")
    return p


def run(argv: list[str], stdout=sys.stdout, stderr=sys.stderr) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    start = time.perf_counter()
    try:
        seed = resolve_seed(args.seed)
        S = None
        if args.command == "build":
            payload, text, code = cmd_build(args)
        elif args.command == "verify":
            payload, text, code = cmd_verify(args, seed)
        else:
            S = load_semigroup(args.input, force=args.force)
            if args.command == "analyze":
                payload, text, code = cmd_analyze(args, S)
            elif args.command == "conjugacy":
                payload, text, code = cmd_conjugacy(args, S, seed)
            else:
                payload, text, code = cmd_characters(args, S, seed)
    except (SemigroupError, UsageError) as exc:
        print(f"semiconj: error: {exc}", file=stderr)
        return EXIT_USAGE

    if args.json:
        report = {"command": argv, "seed": seed, "result": payload}
        if S is not None:
            report["input_digest"] = digest(S)
        if args.command == "verify":
            report["passed"] = code == EXIT_OK
        if args.timing:
            report["seconds"] = round(time.perf_counter() - start, 6)
        stdout.write(json.dumps(report, sort_keys=True, ensure_ascii=not args.fancy) + "\n")
    else:
        if not args.fancy:
            text = text.encode("ascii", "replace").decode()
        stdout.write(text + "\n")
        if args.timing:
            stdout.write(f"time: {time.perf_counter() - start:.3f}s\n")
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

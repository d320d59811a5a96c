"""
Command-line entry point.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad
input (unreadable or invalid documents, unknown commands).  Reports go
to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from .beilinson import (URoof, charac_roundtrip, dualize, embed_ind_window,
                        is_admissible, kato_failure, uroof_equiv)
from .documents import (Document, DocumentError, load, serialize, to_document)
from .errors import IndProError
from .harness import HARNESSES, HarnessParams, Report, run_trials
from .linalg import is_ses
from .tate import laurent_window, reversal
from .windows import roof_equiv, strictify_ind, strictify_pro

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Bad command-line input; maps to exit code 2."""


def _load(path: str, *kinds: str) -> Document:
    try:
        doc = load(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except DocumentError as exc:
        raise InputError(f"{path}: {exc}") from None
    if kinds and doc.kind not in kinds:
        raise InputError(f"{path}: expected {' or '.join(kinds)}, got {doc.kind}")
    return doc


def _emit(args, lines: List[str], payload: dict) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _write_doc(obj, out: Optional[str]) -> None:
    text = serialize(to_document(obj))
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Commands


def cmd_check(args) -> int:
    what = args.what
    if what in ("admissible", "kato"):
        X = _load(args.file, "pi_window").payload
        if what == "admissible":
            ok, bad = is_admissible(X)
            detail = {} if ok else {"triple": list(bad)}
            line = "admissible ok" if ok else "admissible FAIL triple=%d,%d,%d" % bad
            counter = None if ok else X.triple(*bad)
        else:
            bad = kato_failure(X)
            ok = bad is None
            detail = {} if ok else {"square": list(bad[0]), "property": bad[1]}
            line = "kato ok" if ok else f"kato FAIL square={bad[0][0]},{bad[0][1]} not {bad[1]}"
            counter = None
    else:
        t = _load(args.file, "ses").payload
        ok = is_ses(t)
        detail, counter = {}, None
        line = "ses ok" if ok else "ses FAIL"
    payload = {"check": what, "ok": ok, **detail}
    if counter is not None:
        payload["counterexample"] = json.loads(serialize(to_document(counter)))
        if args.dump_dir:
            path = Path(args.dump_dir) / f"{what}-counterexample.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(serialize(to_document(counter)), encoding="utf-8")
    _emit(args, [line], payload)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_roof_eq(args) -> int:
    a = _load(args.file1, "roof", "u_roof").payload
    b = _load(args.file2, "roof", "u_roof").payload
    if type(a) is not type(b):
        raise InputError("the two roofs are of different kinds")
    eq = uroof_equiv(a, b) if isinstance(a, URoof) else roof_equiv(a, b)
    _emit(args, ["equivalent" if eq else "not equivalent"], {"equivalent": eq})
    return EXIT_OK if eq else EXIT_FAIL


def cmd_strictify(args) -> int:
    doc = _load(args.file, "pro_window", "ind_window")
    res = strictify_pro(doc.payload) if doc.kind == "pro_window" else strictify_ind(doc.payload)
    _write_doc(res.strict, args.out)
    if args.out:
        _emit(args, [f"strict dims={list(res.strict.dims)} steps={list(res.steps)}"],
              {"dims": list(res.strict.dims), "steps": list(res.steps)})
    return EXIT_OK


def cmd_dualize(args) -> int:
    X = _load(args.file, "pi_window").payload
    _write_doc(dualize(X), args.out)
    return EXIT_OK


def cmd_embed_ind(args) -> int:
    X = _load(args.file, "ind_window").payload
    if not X.is_strict():
        raise InputError(f"{args.file}: the ind window is not strict")
    _write_doc(embed_ind_window(X, args.depth), args.out)
    return EXIT_OK


def cmd_demo(args) -> int:
    if args.lo > args.hi:
        raise InputError("--lo must not exceed --hi")
    X = laurent_window(args.p, args.lo, args.hi)
    adm, _ = is_admissible(X)
    kato = kato_failure(X) is None
    charac = kato and charac_roundtrip(X)
    D = dualize(X)
    Y = laurent_window(args.p, -args.hi, -args.lo)
    F = X.field
    dual_ok = all(
        reversal(F, Y.dims[(i, j + 1)]) @ D.monos[(i, j)] @ reversal(F, D.dims[(i, j)])
        == Y.monos[(i, j)] for (i, j) in D.monos) and all(
        reversal(F, Y.dims[(i + 1, j)]) @ D.epis[(i, j)] @ reversal(F, D.dims[(i, j)])
        == Y.epis[(i, j)] for (i, j) in D.epis)
    checks = {"admissible": adm, "kato": kato, "charac": charac, "self_dual": dual_ok}
    lines = [f"laurent p={args.p} lo={args.lo} hi={args.hi} corner_dim={X.dim(args.lo, args.hi)}"]
    lines += [f"{k} {'ok' if v else 'FAIL'}" for k, v in checks.items()]
    _emit(args, lines, {"p": args.p, "lo": args.lo, "hi": args.hi,
                        "corner_dim": X.dim(args.lo, args.hi), **checks})
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


def cmd_harness(args) -> int:
    seed = args.seed
    env = os.environ.get("INDPRO_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise InputError(f"INDPRO_SEED must be an integer, got {env!r}") from None
    if seed < 0:
        raise InputError("seeds must be nonnegative")
    if args.trials < 0:
        raise InputError("--trials must be nonnegative")
    if not 0 <= args.max_dim <= 8:
        raise InputError("--max-dim must lie in 0..8")
    if args.lo > args.hi or args.hi - args.lo > 8:
        raise InputError("need lo <= hi with a span of at most 8")
    prm = HarnessParams(p=args.p, max_dim=args.max_dim, lo=args.lo, hi=args.hi)
    report = run_trials(args.name, args.trials, seed, HARNESSES[args.name](prm))
    sys.stdout.write(report.to_json() if args.json else report.text())
    if args.dump_dir:
        _dump_failures(report, Path(args.dump_dir))
    return EXIT_OK if report.ok else EXIT_FAIL


def _dump_failures(report: Report, root: Path) -> None:
    for r in report.results:
        for k, (_, obj) in enumerate(r.instance):
            root.mkdir(parents=True, exist_ok=True)
            (root / f"{report.name}-trial{r.trial}-{k}.json").write_text(
                serialize(to_document(obj)), encoding="utf-8")


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="indpro",
                                 description="Checks for ind/pro windows and Tate windows.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    c = sub.add_parser("check", parents=[common], help="check a document")
    c.add_argument("what", choices=["admissible", "kato", "ses"])
    c.add_argument("file")
    c.add_argument("--dump-dir", help="write counterexamples here")
    c.set_defaults(fn=cmd_check)

    c = sub.add_parser("roof-eq", parents=[common], help="decide equivalence of two roofs")
    c.add_argument("file1")
    c.add_argument("file2")
    c.set_defaults(fn=cmd_roof_eq)

    c = sub.add_parser("strictify", parents=[common], help="strictify a pro (or ind) window")
    c.add_argument("file")
    c.add_argument("--out")
    c.set_defaults(fn=cmd_strictify)

    c = sub.add_parser("dualize", parents=[common], help="dualize a Pi window")
    c.add_argument("file")
    c.add_argument("--out")
    c.set_defaults(fn=cmd_dualize)

    c = sub.add_parser("embed-ind", parents=[common], help="embed a strict ind window")
    c.add_argument("file")
    c.add_argument("--depth", type=int, default=1)
    c.add_argument("--out")
    c.set_defaults(fn=cmd_embed_ind)

    c = sub.add_parser("demo", parents=[common], help="worked examples")
    c.add_argument("example", choices=["laurent"])
    c.add_argument("--p", type=int, default=2)
    c.add_argument("--lo", type=int, default=-2)
    c.add_argument("--hi", type=int, default=2)
    c.set_defaults(fn=cmd_demo)

    c = sub.add_parser("harness", parents=[common], help="run a randomized property suite")
    c.add_argument("name", choices=sorted(HARNESSES))
    c.add_argument("--trials", type=int, default=10)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--p", type=int, default=2)
    c.add_argument("--max-dim", type=int, default=3)
    c.add_argument("--lo", type=int, default=0)
    c.add_argument("--hi", type=int, default=4)
    c.add_argument("--dump-dir", help="write failing instances here")
    c.set_defaults(fn=cmd_harness)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"indpro: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (IndProError, ValueError) as exc:
        print(f"indpro: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

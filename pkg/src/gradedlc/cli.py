"""Command-line front end: ``gradedlc <command> [options]``.

Exit codes: 0 on success, 2 when a verdict fails (oracle mismatch, inexact
sequence, scenario mismatch), 1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .combinatorics import RingConfig, fmt_vars, members
from .engine import local_cohomology, local_cohomology_dims
from .errors import GradedLCError
from .invariants import (INFINITE, associated_primes, bass_table, cohomological_dimension,
                         fmt_class, injective_dimension, is_cofinite, nonzero_degrees,
                         resolution_shape, support_dimension)
from .mayer_vietoris import mayer_vietoris_check
from .oracle import Box, boxed_local_cohomology_all, cross_validate
from .parser import format_ideal, ideal_from_text
from .scenarios import SCENARIOS, verify_paper

MONOMIAL_PRIMES_NOTE = "Bass numbers and injective dimension are read off monomial primes only"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _jsonable(v):
    if isinstance(v, float) and v == INFINITE:
        return "infinite"
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def _pattern(N: int) -> list[int]:
    return list(members(N))


def _need(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")


def _ideal(args, attr="ideal"):
    _need(args, "n", attr)
    return ideal_from_text(getattr(args, attr), args.n)


def _module(args):
    I = _ideal(args)
    _need(args, "i")
    return I, local_cohomology(I, args.i, args.char)


# -- commands: each returns (result dict, text lines, exit code, citations) --

def cmd_lc(args):
    I = _ideal(args)
    dims = local_cohomology_dims(I, args.char)
    degrees = [args.i] if args.i is not None else sorted(dims)
    result, lines = {"degrees": {}}, []
    for i in degrees:
        ds = dims.get(i)
        pieces = [] if ds is None else [(N, d) for N, d in enumerate(ds) if d]
        result["degrees"][i] = [{"pattern": _pattern(N), "dim": d} for N, d in pieces]
        lines.append(f"H^{i}:" + ("" if pieces else " 0"))
        for N, d in sorted(pieces, key=lambda e: (bin(e[0]).count("1"), members(e[0]))):
            lines.append(f"  {fmt_vars(N)}: {d}")
    return result, lines, 0, []


def cmd_invariants(args):
    I, H = _module(args)
    if H.is_zero():
        return {"zero": True}, [f"H^{args.i} is zero"], 0, []
    d = support_dimension(H)
    try:
        e = injective_dimension(H)
    except GradedLCError:
        e = INFINITE
    ass = [str(p) for p in associated_primes(H)]
    v = is_cofinite(I, H, args.max_level)
    result = {"zero": False, "dim": d, "injdim": e, "associated_primes": ass, "cofinite": v.verdict}
    lines = [f"dim = {d}", f"injdim = {'infinite' if e == INFINITE else e}",
             "ass = {" + ", ".join(ass) + "}", f"cofinite: {v.verdict}"]
    return result, lines, 0, [MONOMIAL_PRIMES_NOTE]


def cmd_bass(args):
    _, H = _module(args)
    T = bass_table(H)
    entries = [{"prime": str(p), "level": j, "mu": v} for p, j, v in T.nonzero()]
    lines = [f"mu_{e['level']}({e['prime']}) = {e['mu']}" for e in entries] or ["all Bass numbers vanish"]
    return {"entries": entries}, lines, 0, [MONOMIAL_PRIMES_NOTE]


def cmd_resolve(args):
    _, H = _module(args)
    shape = resolution_shape(H)
    levels = [[{"prime": str(p), "multiplicity": m} for p, m in lev] for lev in shape.levels]
    return {"levels": levels, "injdim": shape.injective_dimension}, [str(shape)], 0, [MONOMIAL_PRIMES_NOTE]


def cmd_cofinite(args):
    I, H = _module(args)
    v = is_cofinite(I, H, args.max_level)
    checked = [{"level": l, "finitely_generated": fg, "witness": None if w is None else fmt_class(w)}
               for l, fg, w in v.checked_levels]
    result = {"supp_ok": v.supp_ok, "verdict": v.verdict, "checked_levels": checked,
              "support_witness": None if v.support_witness is None else _pattern(v.support_witness)}
    lines = [f"support inside V(I): {'yes' if v.supp_ok else 'no'}"]
    if v.support_witness is not None:
        lines.append(f"  nonzero piece at pattern {fmt_vars(v.support_witness)} outside V(I)")
    for c in checked:
        tail = "" if c["finitely_generated"] else f"  witness {c['witness']}"
        lines.append(f"Ext^{c['level']}(R/I, H): {'finitely generated' if c['finitely_generated'] else 'not finitely generated'}{tail}")
    lines.append(f"verdict: {v.verdict}")
    return result, lines, 0, []


def cmd_cd(args):
    I = _ideal(args)
    c = cohomological_dimension(I, args.char)
    nz = nonzero_degrees(I, args.char)
    return {"cd": c, "nonzero_degrees": nz}, [f"cd = {c}", f"nonzero degrees: {nz}"], 0, []


def cmd_mv_check(args):
    I1 = _ideal(args)
    I2 = _ideal(args, "ideal2")
    rep = mayer_vietoris_check(I1, I2, args.i, args.char)
    ok = rep.exact and rep.identified
    mismatches = [_pattern(N) for N, seq in sorted(rep.patterns.items()) if not seq.identified]
    result = {"exact": rep.exact, "identified": rep.identified, "mismatched_patterns": mismatches}
    lines = rep.lines() + [f"exact: {rep.exact}", f"terms match direct computation: {rep.identified}"]
    return result, lines, 0 if ok else 2, []


def _parse_box(text: str, n: int) -> Box:
    try:
        lo, hi = text.split("..")
        return Box.cube(n, int(lo), int(hi))
    except ValueError:
        raise UsageError(f"--box expects lo..hi, got {text!r}") from None


def cmd_oracle_check(args):
    I = _ideal(args)
    box = _parse_box(args.box, args.n) if args.box else Box.default(args.n)
    boxed = boxed_local_cohomology_all(I, box, args.char)
    degrees = [args.i] if args.i is not None else sorted(boxed)
    result, lines, code = {"box": [list(box.lo), list(box.hi)], "degrees": {}}, [], 0
    dump = []
    for i in degrees:
        ref = boxed.get(i)
        M = local_cohomology(I, i, args.char)
        if ref is None:
            agree = M.is_zero()
            rep_checked, diag = 0, "" if agree else "engine nonzero beyond the Čech length"
        else:
            rep = cross_validate(M, ref, box)
            agree, rep_checked, diag = rep.agree, rep.checked, rep.diagnostic
            dump.append(ref.dump() if len(degrees) == 1 else f"# H^{i}\n" + ref.dump())
        result["degrees"][i] = {"agree": agree, "checked": rep_checked}
        lines.append(f"H^{i}: {'agree' if agree else 'MISMATCH'} on {rep_checked} degrees")
        if not agree:
            code = 2
            lines.extend(diag.splitlines())
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write("".join(dump))
    return result, lines, code, []


def cmd_verify_paper(args):
    results = verify_paper(args.scenario)
    lines, out, citations = [], {}, []
    for r in results:
        lines.extend(r.text())
        out[r.name] = {"passed": r.passed, "checks": [
            {"key": c.key, "expected": c.expected, "computed": c.computed, "passed": c.passed}
            for c in r.lines]}
        citations.extend(f"{r.name}: {c.key}: {c.source}" for c in r.lines)
    ok = all(r.passed for r in results)
    lines.append("PASS" if ok else "FAIL")
    return out, lines, 0 if ok else 2, citations


COMMANDS = {
    "lc": (cmd_lc, "local cohomology modules H^i_I(R) as pattern tables"),
    "invariants": (cmd_invariants, "dimension, injective dimension, associated primes, cofiniteness"),
    "bass": (cmd_bass, "nonzero Bass numbers at monomial primes"),
    "resolve": (cmd_resolve, "shape of the minimal injective resolution"),
    "cofinite": (cmd_cofinite, "I-cofiniteness verdict with witnesses"),
    "cd": (cmd_cd, "cohomological dimension"),
    "mv-check": (cmd_mv_check, "Mayer-Vietoris sequence for --ideal and --ideal2"),
    "oracle-check": (cmd_oracle_check, "compare with brute-force pieces in a box"),
    "verify-paper": (cmd_verify_paper, "run the named worked examples"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, help="number of variables")
    common.add_argument("--ideal", help='ideal expression, e.g. "V(x1,x2) & V(x3,x4)"')
    common.add_argument("--i", type=int, help="cohomological degree")
    common.add_argument("--char", type=int, default=0, help="field characteristic (0 = rationals)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--timing", action="store_true", help="include wall-clock seconds in JSON")
    common.add_argument("--max-level", type=int, default=None, help="highest Ext level to test")
    p = _Parser(prog="gradedlc", description="Local cohomology of squarefree monomial ideals.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=helptext)
        if name == "mv-check":
            sp.add_argument("--ideal2", help="second ideal")
        if name == "oracle-check":
            sp.add_argument("--box", help="cube lo..hi in every coordinate")
            sp.add_argument("--dump", help="write boxed dimensions to this file")
        if name == "verify-paper":
            sp.add_argument("scenario", nargs="?", default="all",
                            choices=["all", *SCENARIOS], help="scenario name")
    return p


def run(argv=None) -> tuple[int, str]:
    """Run one command; returns the exit code and the text written to stdout."""
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    start = time.perf_counter()
    try:
        if args.n is not None:
            RingConfig(args.n, args.char)
        result, lines, code, citations = func(args)
    except (UsageError, GradedLCError, ValueError) as exc:
        print(f"gradedlc {args.command}: error: {exc}", file=sys.stderr)
        return 1, ""
    elapsed = time.perf_counter() - start
    if args.json:
        ideal = None
        if args.ideal is not None and args.n is not None:
            ideal = format_ideal(ideal_from_text(args.ideal, args.n))
        doc = {
            "ring": None if args.n is None else {"n": args.n, "char": args.char},
            "ideal": ideal,
            "command": args.command,
            "result": _jsonable(result),
            "citations": citations,
            "timing": round(elapsed, 3) if args.timing else None,
        }
        text = json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    return code, text


def main(argv=None) -> int:
    code, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

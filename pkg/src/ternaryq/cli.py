"""Command-line front end.

Every command prints one JSON document on stdout.  Exit codes: 0 answered
(a "not represented" verdict is still an answer), 2 usage error, 3 a
resource bound was exceeded.  ``--batch FILE`` reads JSON Lines queries and
writes one result line per query, in input order.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import arith
from .decide import (excluded_progressions, integer_witness, is_represented,
                     legendre_isotropic, rational_witness, universal_over_Z)
from .errors import LimitError, TernaryError
from .forms import DiagonalForm, TernaryForm, diagonalize, normalize
from .local import prime_obstructions, two_adic_classify
from .oracle import brute_rational, crosscheck_progression, residues_represented

EXIT_OK, EXIT_USAGE, EXIT_LIMIT = 0, 2, 3

DEFAULTS = {"max_den": 24, "max_num": 600, "count": 20, "range": 20}
GENERAL_KEYS = ("q11", "q22", "q33", "q12", "q13", "q23")
_NEG_FRACTION = re.compile(r"^-\d+/\d+$")


class UsageError(TernaryError):
    pass


def rat(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _parse_rat(v) -> Fraction:
    try:
        return Fraction(str(v).strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {v!r}") from None


def _need(q, key):
    if q.get(key) is None:
        raise UsageError(f"missing required field {key!r} for {q.get('cmd')}")
    return _parse_rat(q[key])


def _int(q, key):
    v = q.get(key)
    if v is None:
        return DEFAULTS[key]
    try:
        return int(v)
    except (TypeError, ValueError):
        raise UsageError(f"{key} must be an integer, got {v!r}") from None


def _diag(q) -> DiagonalForm:
    return DiagonalForm(_need(q, "a"), _need(q, "b"), _need(q, "c"))


def _normal_form(q):
    nf = normalize(_diag(q))
    return nf, [nf.a, nf.b, nf.c]


# ------------------------------------------------------------------ handlers

def cmd_decide(q):
    return is_represented(_diag(q), _need(q, "N")).to_dict()


def cmd_witness(q):
    w = rational_witness(_diag(q), _need(q, "N"), _int(q, "max_den"), _int(q, "max_num"))
    if w is None:
        return {"x": None, "y": None, "z": None}
    return {"x": rat(w.x), "y": rat(w.y), "z": rat(w.z)}


def cmd_classify2(q):
    nf, form = _normal_form(q)
    cls = two_adic_classify(nf)
    return {"form": form, "class": cls.kind, "modulus": cls.modulus,
            "residue": cls.residue}


def cmd_obstructions(q):
    nf, form = _normal_form(q)
    return {"form": form, "obstructions": [
        {"p": o.p, "slot": o.slot, "symbol": o.symbol_value,
         "excluded_unit_residues": list(o.excluded_unit_residues)}
        for o in prime_obstructions(nf)]}


def cmd_excluded(q):
    return {"progressions": [p.to_dict() for p in excluded_progressions(_diag(q))]}


def cmd_normalize(q):
    nf, form = _normal_form(q)
    return {"form": form, "lambda": rat(nf.lam), "u": [rat(u) for u in nf.u]}


def cmd_diagonalize(q):
    vals = [_parse_rat(q.get(k, 0) or 0) for k in GENERAL_KEYS]
    if all(v == 0 for v in vals[:3]) and all(v == 0 for v in vals[3:]):
        raise UsageError("diagonalize needs the coefficients --q11 ... --q23")
    D, T = diagonalize(TernaryForm(*vals))
    return {"form": [rat(v) for v in D.coeffs],
            "transform": [[rat(v) for v in row] for row in T]}


def cmd_universal(q):
    f = _diag(q)
    u = universal_over_Z(f)
    iso = list(legendre_isotropic(f).vector) if u else None
    return {"universal": u, "isotropic": iso}


def cmd_verify(q):
    """Replay the decision procedures against the brute-force oracle."""
    f = _diag(q)
    max_den, max_num = _int(q, "max_den"), _int(q, "max_num")
    checks = []
    nf = normalize(f)
    cls = two_adic_classify(nf)
    rep = residues_represented(nf, cls.modulus)
    expected = [] if cls.residue is None else [cls.residue]
    checks.append({"check": "two_adic", "ok": sorted(rep.missing) == expected,
                   "modulus": cls.modulus, "missing": sorted(rep.missing)})

    mismatches = []
    R = _int(q, "range")
    for N in range(-R, R + 1):
        if N == 0:
            continue
        v = is_represented(f, N).represented
        found = brute_rational(f, N, max_den, max_num) is not None
        if found and not v:
            mismatches.append({"N": N, "decided": v, "witness_found": found})
    checks.append({"check": "decide_vs_brute", "ok": not mismatches,
                   "range": R, "mismatches": mismatches})

    if f.is_positive():
        for pr in excluded_progressions(f):
            r = crosscheck_progression(f, pr, _int(q, "count"), max_den, max_num)
            checks.append({"check": "progression", **r.to_dict()})
    if any(v < 0 for v in f.coeffs) and not f.is_negative() and f.is_integral() \
            and f.is_normalized():
        u = universal_over_Z(f)
        bad = []
        if u:
            for n in range(-R, R + 1):
                if not integer_witness(f, n).check(f):
                    bad.append(n)
        checks.append({"check": "universal_witnesses", "ok": not bad,
                       "universal": u, "failures": bad})
    return {"ok": all(c["ok"] for c in checks), "checks": checks}


COMMANDS = {
    "decide": cmd_decide,
    "witness": cmd_witness,
    "classify2": cmd_classify2,
    "obstructions": cmd_obstructions,
    "excluded": cmd_excluded,
    "normalize": cmd_normalize,
    "diagonalize": cmd_diagonalize,
    "universal": cmd_universal,
    "verify": cmd_verify,
}


def run_query(q: dict) -> dict:
    cmd = q.get("cmd")
    if cmd not in COMMANDS:
        raise UsageError(f"unknown command {cmd!r}")
    return COMMANDS[cmd](q)


def _error_kind(e) -> str:
    return "limit" if isinstance(e, LimitError) else "usage"


def _batch_line(args):
    line, trial_limit = args
    if trial_limit is not None:
        arith.set_trial_limit(trial_limit)
    try:
        q = json.loads(line)
        if not isinstance(q, dict):
            raise UsageError("each batch line must be a JSON object")
    except (json.JSONDecodeError, UsageError) as e:
        return {"query": line, "error": {"kind": "usage", "message": str(e)}}
    try:
        return {"query": q, "result": run_query(q)}
    except TernaryError as e:
        return {"query": q, "error": {"kind": _error_kind(e), "message": str(e)}}


def run_batch(path, jobs=1, trial_limit=None, out=None) -> int:
    out = sys.stdout if out is None else out
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in (l.strip() for l in fh) if ln]
    tasks = [(ln, trial_limit) for ln in lines]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_batch_line, tasks))
    else:
        results = [_batch_line(t) for t in tasks]
    for r in results:
        out.write(json.dumps(r) + "\n")
    return EXIT_OK


# -------------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _global_flags(p, suppress):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--max-den", type=int, default=d, help="largest common denominator searched (24)")
    p.add_argument("--max-num", type=int, default=d, help="largest numerator searched (600)")
    p.add_argument("--trial-limit", type=int, default=d, help="trial-division bound (10^6)")
    p.add_argument("--jobs", type=int, default=d, help="parallel workers for --batch (1)")


def build_parser():
    parser = _Parser(prog="ternaryq", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    parser.add_argument("--batch", metavar="FILE", help="JSON Lines query file")
    sub = parser.add_subparsers(dest="cmd", parser_class=_Parser)

    helps = {
        "decide": "is N represented over Q",
        "witness": "search for rational x, y, z with f = N",
        "classify2": "2-adic residue classification of the normalized form",
        "obstructions": "odd primes with a Legendre-symbol obstruction",
        "excluded": "progressions never represented (positive forms)",
        "normalize": "squarefree pairwise coprime rescaling",
        "diagonalize": "diagonalize a general ternary form",
        "universal": "integer universality of a mixed-sign form",
        "verify": "cross-check decisions against brute force",
    }
    for name, h in helps.items():
        sp = sub.add_parser(name, help=h, description=h)
        _global_flags(sp, suppress=True)
        if name == "diagonalize":
            for k in GENERAL_KEYS:
                sp.add_argument(f"--{k}", default="0", metavar="RAT")
            continue
        for k in ("a", "b", "c"):
            sp.add_argument(f"-{k}", required=True, metavar="RAT")
        if name in ("decide", "witness"):
            sp.add_argument("-N", required=True, metavar="RAT")
        if name == "verify":
            sp.add_argument("--count", type=int, default=DEFAULTS["count"])
            sp.add_argument("--range", type=int, default=DEFAULTS["range"])
    return parser


def _glue_negative_fractions(argv):
    # argparse reads "-1/2" as an option; attach it to the preceding flag
    out = []
    for tok in argv:
        if out and _NEG_FRACTION.match(tok) and out[-1].startswith("-") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_glue_negative_fractions(argv))
    if args.trial_limit is not None:
        arith.set_trial_limit(args.trial_limit)
    if args.batch:
        try:
            return run_batch(args.batch, max(1, args.jobs or 1), args.trial_limit)
        except OSError as e:
            print(f"ternaryq: cannot read batch file: {e}", file=sys.stderr)
            return EXIT_USAGE
    if not args.cmd:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    q = {k: v for k, v in vars(args).items()
         if v is not None and k not in ("batch", "jobs", "trial_limit")}
    try:
        result = run_query(q)
    except LimitError as e:
        print(f"ternaryq: limit exceeded: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except TernaryError as e:
        print(f"ternaryq: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(result))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

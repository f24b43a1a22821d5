"""Command-line frontend.

    bks lfactors --n N [--coset i1,i2,...]
    bks basic --n N --upto M [--out FILE]
    bks fourier --in FILE --out FILE
    bks norm --p P --matrix FILE
    bks verify local --n N
    bks verify rank-one --q Q --z {1,-1,i,-i} --s RE,IM --shells K
    bks verify classical --c C
    bks verify geometry
    bks verify growth
    bks verify global --lambda L --radius R --tol T [--json OUT]

Exit codes: 0 ok, 2 usage, 3 parse, 4 check failed, 5 internal.
A JSON report is written to $BKS_REPORT_DIR when that variable is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import checks
from .exact_algebra import ParseError
from .plucker_geometry import NotSymplectic, SymplecticMatrix, coset_index, norm
from .schwartz_nonarch import CoefficientFunction, SchemaError, basic_function, fourier
from .weyl_lfactors import MAX_RANK, WeylCosetDatum, a_w, enumerate_cosets

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_FAILED, EXIT_INTERNAL = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


class InputError(Exception):
    """Unreadable or malformed input file (exit 3)."""


# -- interchange files ------------------------------------------------------

def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None


def parse_function_file(path) -> CoefficientFunction:
    doc = _read_json(path)
    try:
        return CoefficientFunction.from_json(doc)
    except ParseError as e:
        raise ParseError(f"{path}: {e}") from None
    except SchemaError as e:
        raise SchemaError(f"{path}: {e}") from None


def serialize_function(f) -> str:
    return json.dumps(f.to_json(), separators=(",", ":")) + "\n"


def write_function_file(f, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_function(f))


def parse_matrix_file(path) -> SymplecticMatrix:
    doc = _read_json(path)
    if not isinstance(doc, list) or not all(isinstance(r, list) for r in doc):
        raise InputError(f"{path}: matrix must be a JSON array of rows")
    rows = []
    for i, row in enumerate(doc):
        out = []
        for j, x in enumerate(row):
            if not isinstance(x, (str, int)) or isinstance(x, bool):
                raise InputError(f"{path}: entry [{i}][{j}] must be a rational string")
            try:
                out.append(Fraction(x))
            except (ValueError, ZeroDivisionError):
                raise InputError(f"{path}: entry [{i}][{j}] = {x!r} is not a rational") from None
        rows.append(out)
    try:
        return SymplecticMatrix.from_rows(rows)
    except NotSymplectic as e:
        raise InputError(f"{path}: {e}") from None


# -- report -----------------------------------------------------------------

def _dump(doc):
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _report_name(command):
    return "report-" + command.replace(" ", "-") + ".json"


def emit_report(command, config, results, extra=None, json_path=None):
    doc = {
        "command": command,
        "config": config,
        "checks": [r.to_json() for r in results],
        "status": "pass" if all(r.ok for r in results) else "fail",
    }
    if extra:
        doc.update(extra)
    text = _dump(doc)
    directory = os.environ.get("BKS_REPORT_DIR")
    if directory:
        os.makedirs(directory, exist_ok=True)
        with open(os.path.join(directory, _report_name(command)), "w", encoding="utf-8") as fh:
            fh.write(text)
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return doc


def _run_concurrently(jobs):
    # jobs: list of zero-argument callables; results keep the given order
    if len(jobs) == 1:
        return [jobs[0]()]
    with ThreadPoolExecutor(max_workers=min(4, len(jobs))) as pool:
        futures = [pool.submit(job) for job in jobs]
        return [f.result() for f in futures]


def _print_results(results):
    for r in results:
        print(f"{r.name:<18} {r.identity:<28} {'PASS' if r.ok else 'FAIL'}")


# -- argument parsing -------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _complex_pair(text):
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}")


_Z_VALUES = {"1": 1, "-1": -1, "i": 1j, "-i": -1j}


def _place(text):
    if text in ("inf", "infinity"):
        return "inf"
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a prime or 'inf', got {text!r}")
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def build_parser():
    parser = _Parser(prog="bks", description="Spherical Fourier analysis on [P,P]\\Sp_2n.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("lfactors", help="a_w as a product of L-factors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coset", type=_int_list, default=None,
                   help="the set I as i1,i2,...; all cosets when omitted")

    p = sub.add_parser("basic", help="truncated basic function")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("fourier", help="Fourier transform of a function file")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("norm", help="Pluecker norm and coset index")
    p.add_argument("--p", type=_place, required=True)
    p.add_argument("--matrix", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    vs = p.add_subparsers(dest="suite", required=True, parser_class=_Parser)

    v = vs.add_parser("local", help="symbolic suite for one n")
    v.add_argument("--n", type=int, required=True)

    v = vs.add_parser("rank-one", help="shell sum against c_w for n = 1")
    v.add_argument("--q", type=float, required=True)
    v.add_argument("--z", choices=sorted(_Z_VALUES), required=True)
    v.add_argument("--s", type=_complex_pair, required=True)
    v.add_argument("--shells", type=int, required=True)

    v = vs.add_parser("classical", help="n = 1 against the plane Fourier transform")
    v.add_argument("--c", type=int, required=True)

    v = vs.add_parser("geometry", help="norm invariance and Pluecker equivariance")
    v.add_argument("--pairs", type=int, default=500)
    v.add_argument("--equivariance", type=int, default=200)
    v.add_argument("--seed", type=int, default=7)

    v = vs.add_parser("growth", help="support floor of F(1_0) and growth of b")
    v.add_argument("--max-n", type=int, default=4)

    v = vs.add_parser("global", help="summation formula for n = 1 over Q")
    v.add_argument("--lambda", dest="lam", type=float, required=True)
    v.add_argument("--radius", type=float, required=True)
    v.add_argument("--tol", type=float, required=True)
    v.add_argument("--json", dest="json_out", default=None)
    return parser


# -- commands ---------------------------------------------------------------

def _check_rank(n, hi=MAX_RANK):
    if not 1 <= n <= hi:
        raise UsageError(f"--n must lie in 1..{hi}")


def cmd_lfactors(args):
    _check_rank(args.n)
    if args.coset is None:
        cosets = enumerate_cosets(args.n)
    else:
        try:
            cosets = [WeylCosetDatum(args.n, args.coset)]
        except ValueError as e:
            raise UsageError(str(e)) from None
    entries = []
    for w in cosets:
        prod = a_w(w)
        entries.append({"I": list(w.I), "product": str(prod), "symbol": str(prod.symbol(args.n))})
        if args.coset is None:
            print("I = {" + ",".join(map(str, w.I)) + "}")
        print(prod)
        print(prod.symbol(args.n))
    emit_report("lfactors", {"n": args.n, "coset": None if args.coset is None else list(args.coset)},
                [], {"a_w": entries})
    return EXIT_OK


def cmd_basic(args):
    _check_rank(args.n)
    if args.upto < 0:
        raise UsageError("--upto must be nonnegative")
    b = basic_function(args.n, upto=args.upto)
    if args.out:
        write_function_file(b, args.out)
    else:
        sys.stdout.write(serialize_function(b))
    emit_report("basic", {"n": args.n, "upto": args.upto, "out": args.out}, [],
                {"function": b.to_json()})
    return EXIT_OK


def cmd_fourier(args):
    f = parse_function_file(args.inp)
    if f.n > MAX_RANK:
        raise UsageError(f"rank must lie in 1..{MAX_RANK}")
    g = fourier(f)
    write_function_file(g, args.out)
    emit_report("fourier", {"in": args.inp, "out": args.out}, [],
                {"input": f.to_json(), "output": g.to_json()})
    return EXIT_OK


def cmd_norm(args):
    g = parse_matrix_file(args.matrix)
    value = norm(g, args.p)
    doc = {"norm": str(value) if args.p != "inf" else repr(value)}
    print(f"norm {doc['norm']}")
    if args.p != "inf":
        doc["coset_index"] = coset_index(g, args.p)
        print(f"coset_index {doc['coset_index']}")
    emit_report("norm", {"p": args.p, "matrix": args.matrix}, [], doc)
    return EXIT_OK


def _finish(command, config, results, json_path=None):
    _print_results(results)
    emit_report(command, config, results, json_path=json_path)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILED


def cmd_verify(args):
    suite = args.suite
    if suite == "local":
        _check_rank(args.n, 6)
        ns = (args.n,)
        jobs = [
            lambda: checks.check_aw_special_cases(ns),
            lambda: checks.check_gk(ns),
            lambda: checks.check_basic_fixed(ns),
            lambda: checks.check_involution(ns),
        ]
        return _finish("verify local", {"n": args.n}, _run_concurrently(jobs))
    if suite == "rank-one":
        z = _Z_VALUES[args.z]
        config = {"q": args.q, "z": args.z, "s": [args.s.real, args.s.imag], "shells": args.shells}
        try:
            result = checks.check_rank_one_point(args.q, z, args.s, args.shells)
        except ValueError as e:
            raise UsageError(str(e)) from None
        return _finish("verify rank-one", config, [result])
    if suite == "classical":
        if abs(args.c) > 10:
            raise UsageError("--c must satisfy |c| <= 10")
        return _finish("verify classical", {"c": args.c}, [checks.check_classical((args.c,))])
    if suite == "geometry":
        config = {"pairs": args.pairs, "equivariance": args.equivariance, "seed": args.seed}
        result = checks.check_geometry(args.pairs, args.equivariance, seed=args.seed)
        return _finish("verify geometry", config, [result])
    if suite == "growth":
        _check_rank(args.max_n, 6)
        ns = range(1, args.max_n + 1)
        jobs = [lambda: checks.check_support_floor(ns), lambda: checks.check_growth(ns)]
        return _finish("verify growth", {"max_n": args.max_n}, _run_concurrently(jobs))
    if suite == "global":
        config = {"lambda": args.lam, "radius": args.radius, "tol": args.tol}
        try:
            result = checks.check_global_point(args.lam, args.radius, args.tol)
        except ValueError as e:
            raise UsageError(str(e)) from None
        return _finish("verify global", config, [result], json_path=args.json_out)
    raise UsageError(f"unknown suite {suite!r}")


COMMANDS = {
    "lfactors": cmd_lfactors,
    "basic": cmd_basic,
    "fourier": cmd_fourier,
    "norm": cmd_norm,
    "verify": cmd_verify,
}


def _glue_negative_values(argv):
    # argparse reads "--z -i" as two flags; keep such values attached
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--z", "--s"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_negative_values(argv))
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, ParseError, SchemaError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except SystemExit as e:
        # --help exits 0 through argparse
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except Exception as e:  # noqa: BLE001
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every command prints one JSON report (or writes it to ``--out``).  Exit codes:
0 for a verified or positive verdict, 1 for a negative verdict with a witness,
2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import io
from .catalog import DENSE_LIMIT, catalog
from .designs.bent_partitions import bent_partition_check, dual_bent_partition
from .designs.boolean import classify_function
from .designs.pds import pds_check, pds_eigenfunctions, pds_to_coloring
from .designs.spreads import spread_check, spread_construct, subspace_count_bound
from .group import Group, GroupFunction, boolean_fourier, convolve, sign_fourier, walsh_hadamard
from .hypergraph import Coloring, Counterexample, check_perfect, check_perfect_via_convolution, subspace_D, subspace_H

DEFAULT_TOL = 1e-9


def _report(verdict: str, parameters=None, witnesses=None, residuals=None) -> dict:
    return {
        "verdict": verdict,
        "parameters": parameters or {},
        "witnesses": witnesses or {},
        "residuals": residuals or {},
    }


def _vec_list(xs, n: int) -> list[str]:
    return [io.format_vector(int(x), n) for x in xs]


# -- commands: each returns (report, exit code) ------------------------------------------


def cmd_wht(args):
    if (args.truth_table is None) == (args.function is None):
        raise UsageError("give exactly one of --truth-table and --function")
    if args.truth_table is not None:
        tt = io.read_truth_table(args.truth_table, args.n)
        n = tt.size.bit_length() - 1
        params = {
            "n": n,
            "transform": "boolean",
            "walsh": walsh_hadamard(1 - 2 * tt),
            "values": boolean_fourier(tt).values.real,
        }
    else:
        v = io.read_complex_function(args.function, args.n)
        n = v.size.bit_length() - 1
        params = {"n": n, "transform": "sign", "values": sign_fourier(GroupFunction(Group(2, n), v)).values}
    return _report("OK", params), 0


def cmd_convolve(args):
    f = io.read_complex_function(args.f, args.n)
    g = io.read_complex_function(args.g, args.n)
    if f.size != g.size:
        raise UsageError(f"functions have {f.size} and {g.size} values")
    G = Group(2, f.size.bit_length() - 1)
    out = convolve(GroupFunction(G, f), GroupFunction(G, g), args.method).values
    return _report("OK", {"n": G.rank, "method": args.method, "values": out}), 0


def cmd_classify(args):
    tt = io.read_truth_table(args.truth_table, args.n)
    r = classify_function(tt)
    report = {"verdict": r.classification, "weight": r.weight}
    report.update(_report(r.classification, {"n": r.n, "s": r.s, "weight": r.weight, "spectrum": r.to_json()["spectrum"]}))
    return report, 0 if r.s is not None else 1


def _read_set(args):
    D, n = io.read_set(args.set, args.n)
    return D, n


def cmd_check_pds(args):
    D, n = _read_set(args)
    rep = pds_check(D, n)
    return rep.to_json(), 0 if rep.ok else 1


def cmd_pds_eigen(args):
    D, n = _read_set(args)
    rep = pds_check(D, n)
    if not rep.ok:
        return rep.to_json(), 1
    sols = pds_eigenfunctions(D, rep.value, n, args.tol)
    rows = [
        {"branch": s.branch, "alpha": complex(s.alpha), "beta": complex(s.beta), "theta": complex(s.theta), "exact": s.exact}
        for s in sols
    ]
    residuals = {"max": max((s.residual for s in sols), default=0.0)}
    return _report("EIGENFUNCTIONS", {**rep.parameters, "solutions": rows}, {}, residuals), 0 if sols else 1


def cmd_pds_coloring(args):
    D, n = _read_set(args)
    rep = pds_to_coloring(D, n)
    return rep.to_json(), 0 if rep.ok else 1


def cmd_make_spread(args):
    spread = spread_construct(args.n)
    classes = [list(c) for c in spread.classes]
    perturbed = None
    if args.perturb:
        rng = random.Random(args.seed)
        i, j = rng.sample(range(len(classes)), 2)
        a, b = rng.randrange(len(classes[i])), rng.randrange(len(classes[j]))
        classes[i][a], classes[j][b] = classes[j][b], classes[i][a]
        perturbed = {"classes": [i, j], "elements": [classes[j][b], classes[i][a]], "seed": args.seed}
    data = {"n": args.n, "classes": [_vec_list(sorted(c), args.n) for c in classes]}
    if args.out:
        io.write_json(data, args.out)
    params = {"n": args.n, "m": len(classes), "out": args.out}
    if perturbed:
        params["perturbed"] = perturbed
    if not args.out:
        params["spread"] = data
    return _report("PERTURBED_SPREAD" if perturbed else "SPREAD", params), 0


def cmd_check_spread(args):
    n, classes = io.read_spread(args.input)
    return spread_check(classes, n).to_json(), None


def cmd_check_coloring(args):
    n, kind, colors = io.read_coloring(args.input)
    H = subspace_H(n) if kind == "H" else subspace_D(n)
    c = Coloring(H, colors, allow_empty=True)
    S = check_perfect(H, c)
    params = {"n": n, "hypergraph": kind, "k": c.k}
    if kind == "H":
        S2 = check_perfect_via_convolution(n, c)
        assert isinstance(S, Counterexample) == isinstance(S2, Counterexample) and (
            isinstance(S, Counterexample) or S == S2
        ), "census and convolution oracles disagree"
    if isinstance(S, Counterexample):
        return _report("IMPERFECT", params, {"reason": S.reason, "vertices": list(S.vertices), **S.detail}), 1
    return _report("PERFECT", {**params, "S": S.to_json()}), 0


def cmd_check_bent_partition(args):
    n, U, classes = io.read_partition(args.input)
    rep = bent_partition_check(U, classes, n)
    return rep.to_json(), None


def cmd_dual_partition(args):
    n, U, classes = io.read_partition(args.input)
    rep = bent_partition_check(U, classes, n)
    if not rep.ok or not rep.value.strong_verified:
        out = rep.to_json()
        out["verdict"] = "NOT_STRONG" if rep.ok else rep.verdict
        return out, 1
    dual = dual_bent_partition(rep.value)
    data = {"n": n, "U": _vec_list(dual.U, n), "classes": [_vec_list(c, n) for c in dual.classes]}
    if args.out:
        io.write_json(data, args.out)
    params = {"n": n, "k": dual.k, "offset": rep.value.offset, "involution": True, "strong": True}
    if args.out:
        params["out"] = args.out
    else:
        params["dual"] = data
    return _report("DUAL", params), 0


def cmd_eigen_catalog(args):
    if args.max_size > DENSE_LIMIT:
        raise UsageError(f"--max-size is capped at {DENSE_LIMIT}")
    rows = catalog(args.max_size, args.tol)
    if args.out:
        io.write_json(rows, args.out)
    return rows, 0 if all(r["verified"] for r in rows) else 1


def cmd_bound_check(args):
    P, n = _read_set(args)
    count, bound, tight = subspace_count_bound(P)
    return _report("BOUND_HOLDS", {"n": n, "size": len(set(P)), "count": count, "bound": bound, "tight": tight}), 0


# -- parser -----------------------------------------------------------------------------


class UsageError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="convhyper", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="dimension, when not inferable from the input")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(func=fn)
        return s

    s = add("wht", cmd_wht, "normalised Walsh-Hadamard transform")
    s.add_argument("--truth-table")
    s.add_argument("--function")
    s = add("convolve", cmd_convolve, "convolution of two functions on F_2^n")
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    s.add_argument("--method", choices=("auto", "direct", "fast"), default="auto")
    s = add("classify", cmd_classify, "bent / plateaued classification")
    s.add_argument("--truth-table", required=True)
    for name, fn, help_ in (
        ("check-pds", cmd_check_pds, "partial difference set parameters"),
        ("pds-eigen", cmd_pds_eigen, "eigenfunctions built from a partial difference set"),
        ("pds-coloring", cmd_pds_coloring, "perfect 2-coloring of H_n from a partial difference set"),
        ("bound-check", cmd_bound_check, "2-dimensional subspaces inside a set against the bound"),
    ):
        s = add(name, fn, help_)
        s.add_argument("--set", required=True)
    s = add("make-spread", cmd_make_spread, "Desarguesian n/2-spread (file written with --out)")
    s.add_argument("--perturb", action="store_true", help="swap two elements between classes (uses --seed)")
    for name, fn, help_ in (
        ("check-spread", cmd_check_spread, "verify an n/2-spread file"),
        ("check-coloring", cmd_check_coloring, "perfectness of a coloring file"),
        ("check-bent-partition", cmd_check_bent_partition, "normal / strong bent partition check"),
        ("dual-partition", cmd_dual_partition, "dual of a strong bent partition (file written with --out)"),
    ):
        s = add(name, fn, help_)
        s.add_argument("input")
    s = add("eigen-catalog", cmd_eigen_catalog, "verified closed-form eigenvalues for p^n <= 9")
    s.add_argument("--max-size", type=int, default=DENSE_LIMIT)
    return p


_WRITES_DATA = {"make-spread", "dual-partition", "eigen-catalog"}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        report, code = args.func(args)
    except (io.FormatError, UsageError, OSError, ValueError) as e:
        print(f"convhyper {args.command}: {e}", file=stderr)
        return 2
    if code is None:
        code = 0 if report.get("verdict") in ("SPREAD", "STRONG", "NORMAL") else 1
    text = io.dumps(report)
    if args.out and args.command not in _WRITES_DATA:
        io.write_json(report, args.out)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

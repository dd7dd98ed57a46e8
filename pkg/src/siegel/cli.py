"""Command-line frontend wiring every module.

Exit codes: 0 success/verified, 1 verification failure (an exact
inequality violated, or a check/search that came back negative), 2 input
error, 3 precondition violation. Structured output is a single JSON
document on stdout with exact values as grammar strings; floats appear
only in clearly marked approx/advisory fields.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .basis import (
    DEFAULT_SUBSET_BUDGET,
    BasisReport,
    check_equality_characterization,
    sparse_basis,
)
from .bounds import compare_regimes, compute_bounds, render_table
from .field import FieldCtx, qnum_str
from .heights import ExactHeight, height_dual, height_subspace, height_vector
from .linalg import PreconditionError, QMatrix
from .matfile import ParseError, parse_matrix_file, render_matrix
from .relative import relative_report
from .sensing import (
    SensingMatrix,
    many_bases,
    search_sensing,
    strict_monotonicity,
    vandermonde_sensing,
    verify_sensing,
)
from . import selftest


def _field_doc(ctx: FieldCtx) -> dict:
    doc = {"kind": str(ctx), "degree": ctx.degree, "disc": ctx.disc}
    if ctx.is_quadratic:
        doc["d"] = ctx.d
    return doc


def _height_doc(h: ExactHeight) -> dict:
    return {"exponent": h.exponent, "value": str(h.value), "approx": h.approx}


def _matrix_doc(m: QMatrix) -> list[list[str]]:
    return [[qnum_str(x) for x in m.row(i)] for i in range(m.rows)]


def _mask(subset) -> int:
    return sum(1 << (i - 1) for i in subset)


def _sorted_subsets(table):
    return sorted(table, key=lambda s: (len(s), s))


def _basis_doc(rep: BasisReport, char_ok, elapsed: float) -> dict:
    return {
        "field": _field_doc(rep.input_matrix.ctx),
        "pivot_set": list(rep.pivot_set),
        "basis_matrix": _matrix_doc(rep.basis_matrix),
        "column_sparsity": list(rep.column_sparsity),
        "column_heights": [_height_doc(h) for h in rep.column_heights],
        "subspace_height": _height_doc(rep.subspace_height),
        "subset_heights": {
            str(_mask(s)): _height_doc(rep.subset_heights[s])
            for s in _sorted_subsets(rep.subset_heights)
        },
        "partial": rep.subset_table_partial,
        "verdicts": {
            "pivot_identity": rep.pivot_identity_ok,
            "sparsity": rep.sparsity_ok,
            "column_heights": rep.column_heights_ok,
            "monotonicity": rep.monotonicity_verified,
            "equality_characterization": char_ok,
        },
        "timings": {"elapsed_sec": round(elapsed, 6)},
    }


def _print_basis_text(rep: BasisReport, char_ok):
    print(f"field {rep.input_matrix.ctx}")
    print("pivot set:", " ".join(map(str, rep.pivot_set)))
    print("basis matrix:")
    for line in render_matrix(rep.basis_matrix, header=False).splitlines()[2:]:
        print("  " + line)
    print("column  sparsity  height")
    for i, (s, h) in enumerate(zip(rep.column_sparsity, rep.column_heights), start=1):
        print(f"{i:<7} {s:<9} {h.render()}")
    print("subspace height:", rep.subspace_height.render())
    label = "partial" if rep.subset_table_partial else "exhaustive"
    print(f"subset heights ({label}):")
    for s in _sorted_subsets(rep.subset_heights):
        print(f"  {{{','.join(map(str, s))}}}: {rep.subset_heights[s].render()}")
    print(
        "verdicts:",
        f"pivot-identity={rep.pivot_identity_ok}",
        f"sparsity={rep.sparsity_ok}",
        f"column-heights={rep.column_heights_ok}",
        f"monotonicity={rep.monotonicity_verified}",
        f"equality-characterization={char_ok}",
    )


def cmd_basis(args) -> int:
    m = parse_matrix_file(args.file)
    pivot = None
    if args.pivot_set:
        pivot = tuple(int(x) for x in args.pivot_set.split(","))
    t0 = time.perf_counter()
    rep = sparse_basis(m, pivot_set=pivot, subset_budget=args.subset_budget)
    char_ok = None if rep.subset_table_partial else check_equality_characterization(rep)
    elapsed = time.perf_counter() - t0
    ok = rep.construction_ok and char_ok is not False
    if args.json:
        print(json.dumps(_basis_doc(rep, char_ok, elapsed), indent=2))
    else:
        _print_basis_text(rep, char_ok)
    return 0 if ok else 1


def cmd_height(args) -> int:
    m = parse_matrix_file(args.file)
    if args.vectors:
        heights = [height_vector(m.col(j), m.ctx) for j in range(m.cols)]
        if args.json:
            print(
                json.dumps(
                    {
                        "field": _field_doc(m.ctx),
                        "column_heights": [_height_doc(h) for h in heights],
                    },
                    indent=2,
                )
            )
        else:
            for j, h in enumerate(heights, start=1):
                print(f"column {j}: {h.render()}")
        return 0
    h = height_subspace(m)
    if args.json:
        print(
            json.dumps(
                {"field": _field_doc(m.ctx), "subspace_height": _height_doc(h)},
                indent=2,
            )
        )
    else:
        print("subspace height:", h.render())
    return 0


def cmd_verify(args) -> int:
    m = parse_matrix_file(args.file)
    n, l = m.rows, m.cols
    if not 1 <= l < n:
        raise PreconditionError("verify expects a tall basis matrix (cols < rows)")
    results = {}
    results["duality"] = height_dual(m.transpose()) == height_subspace(m)
    hz = height_subspace(m)
    prod = ExactHeight.one(m.ctx)
    for j in range(l):
        prod = prod * height_vector(m.col(j), m.ctx)
    results["hadamard-columns"] = hz <= prod
    part_ok = True
    if l >= 2 and 2 ** l <= args.subset_budget:
        for mask in range(1, 2 ** l - 1):
            left = [j for j in range(l) if mask >> j & 1]
            right = [j for j in range(l) if not mask >> j & 1]
            if not hz <= height_subspace(m.take_cols(left)) * height_subspace(
                m.take_cols(right)
            ):
                part_ok = False
                break
    results["hadamard-partitions"] = part_ok
    rep = sparse_basis(m, subset_budget=args.subset_budget)
    results["monotonicity"] = rep.monotonicity_verified
    results["equality-characterization"] = (
        check_equality_characterization(rep) if not rep.subset_table_partial else True
    )
    if args.json:
        print(json.dumps({"field": _field_doc(m.ctx), "checks": results}, indent=2))
    else:
        for name, ok in results.items():
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return 0 if all(results.values()) else 1


def cmd_relative(args) -> int:
    m = parse_matrix_file(args.file)
    if not m.ctx.is_quadratic:
        raise PreconditionError("relative pipeline needs a quadratic field header")
    t0 = time.perf_counter()
    rep = relative_report(m, subset_budget=args.subset_budget)
    char_ok = (
        None
        if rep.basis_report.subset_table_partial
        else check_equality_characterization(rep.basis_report)
    )
    elapsed = time.perf_counter() - t0
    ok = rep.all_ok and char_ok is not False
    if args.json:
        doc = _basis_doc(rep.basis_report, char_ok, elapsed)
        doc["kernel_dimension"] = rep.instance.dim
        doc["kernel_basis"] = _matrix_doc(rep.instance.kernel_basis_q)
        doc["H_scriptA"] = _height_doc(rep.h_stack)
        doc["bound_product"] = _height_doc(rep.bound_product)
        doc["verdicts"]["height_identity"] = rep.height_identity_ok
        doc["verdicts"]["bounds"] = rep.bounds_ok
        print(json.dumps(doc, indent=2))
    else:
        print(f"field {m.ctx}, kernel dimension {rep.instance.dim}")
        print("kernel basis over Q:")
        for line in render_matrix(rep.instance.kernel_basis_q, header=False).splitlines()[2:]:
            print("  " + line)
        print("H(Z):          ", rep.h_z.render())
        print("H(stack):      ", rep.h_stack.render())
        print("bound product: ", rep.bound_product.render())
        print(
            "verdicts:",
            f"height-identity={rep.height_identity_ok}",
            f"bounds={rep.bounds_ok}",
            f"construction={rep.basis_report.construction_ok}",
            f"equality-characterization={char_ok}",
        )
    return 0 if ok else 1


def _reference_sup_norm(m: int, l: int) -> int:
    """Smallest integer at least (2M)^((L-1)/L), computed exactly."""
    if l == 1:
        return 1
    t = 1
    while t ** l < (2 * m) ** (l - 1):
        t += 1
    return t


def _build_sensing(l: int, m: int, method: str, max_abs, seed, max_tries, sparsity):
    if method == "vandermonde":
        return vandermonde_sensing(l, m)
    t = max_abs if max_abs is not None else _reference_sup_norm(m, l)
    return search_sensing(l, m, t, seed=seed, max_tries=max_tries, s=sparsity)


def cmd_sensing_gen(args) -> int:
    sparsity = args.sparsity if args.sparsity else args.rows
    s = _build_sensing(
        args.rows, args.cols, args.method, args.max_abs, args.seed, args.max_tries, sparsity
    )
    if s is None:
        print("search exhausted its trial budget without a verified matrix", file=sys.stderr)
        return 1
    if args.json:
        print(
            json.dumps(
                {
                    "rows": s.rows,
                    "cols": s.cols,
                    "entries": [list(r) for r in s.entries],
                    "sup_norm": s.sup_norm,
                    "sparsity_level": s.sparsity_level,
                    "verified": s.verified,
                    "method": s.method,
                    "seed": s.seed,
                    "trials": s.trials,
                },
                indent=2,
            )
        )
    else:
        meta = f"method={s.method} sup_norm={s.sup_norm} sparsity={s.sparsity_level}"
        if s.seed is not None:
            meta += f" seed={s.seed} trials={s.trials}"
        print(render_matrix(s.as_qmatrix(), header=False, comment=meta), end="")
    return 0


def cmd_sensing_check(args) -> int:
    m = parse_matrix_file(args.file)
    entries = []
    for i in range(m.rows):
        row = []
        for x in m.row(i):
            if x.b != 0 or x.a.denominator != 1:
                print(f"input error: non-integer entry {qnum_str(x)}", file=sys.stderr)
                return 2
            row.append(int(x.a))
        entries.append(row)
    s = args.sparsity if args.sparsity else m.rows
    ok = verify_sensing(entries, s)
    if args.json:
        print(
            json.dumps(
                {"rows": m.rows, "cols": m.cols, "sparsity": s, "verified": ok}, indent=2
            )
        )
    else:
        print(f"verified={'true' if ok else 'false'} (every {s} columns independent)")
    return 0 if ok else 1


def cmd_manybases(args) -> int:
    z = parse_matrix_file(args.file)
    l = z.cols
    if args.count <= l:
        raise PreconditionError("--count must exceed the subspace dimension")
    sens = _build_sensing(
        l, args.count, args.method, args.max_abs, args.seed, args.max_tries, l
    )
    if sens is None:
        print("search exhausted its trial budget without a verified matrix", file=sys.stderr)
        return 1
    t0 = time.perf_counter()
    res = many_bases(z, sens, subset_budget=args.subset_budget, sample_seed=args.seed)
    strict = strict_monotonicity(sens)
    elapsed = time.perf_counter() - t0
    if args.json:
        doc = {
            "field": _field_doc(z.ctx),
            "dimension": l,
            "count": args.count,
            "basis_choice": res.basis_choice,
            "sensing": {
                "entries": [list(r) for r in res.sensing.entries],
                "sup_norm": res.sensing.sup_norm,
                "method": res.sensing.method,
                "seed": res.sensing.seed,
            },
            "omega_matrix": _matrix_doc(res.omega_matrix),
            "vectors": _matrix_doc(res.product),
            "heights": [_height_doc(h) for h in res.heights],
            "subspace_height": _height_doc(res.subspace_height),
            "bound": _height_doc(res.bound),
            "verdicts": {
                "all_subsets_are_bases": res.all_bases_ok,
                "heights_within_bound": res.heights_ok,
                "strict_monotonicity": strict,
            },
            "subsets_sampled": res.subsets_sampled,
            "checked_subsets": res.checked_subsets,
            "sup_norm_within_reference": res.sup_norm_within_reference,
            "advisory_envelope_branch": res.envelope_branch_bound,
            "timings": {"elapsed_sec": round(elapsed, 6)},
        }
        print(json.dumps(doc, indent=2))
    else:
        print(
            f"{args.count} vectors in a {l}-dimensional space over {z.ctx} "
            f"({res.basis_choice} basis, sensing {res.sensing.method}, T = {res.sensing.sup_norm})"
        )
        for j, h in enumerate(res.heights, start=1):
            print(f"  y{j}: {h.render()}")
        print("height bound:", res.bound.render())
        print(
            "verdicts:",
            f"all-subsets-bases={res.all_bases_ok}",
            f"heights-within-bound={res.heights_ok}",
            f"strict-monotonicity={strict}",
            f"(checked {res.checked_subsets} subsets"
            + (", sampled)" if res.subsets_sampled else ")"),
        )
    return 0 if (res.all_ok and strict) else 1


def cmd_bounds(args) -> int:
    z = parse_matrix_file(args.file)
    table = compute_bounds(z, epsilon=args.epsilon)
    regimes = compare_regimes(table)
    if args.json:
        doc = {
            "field": _field_doc(z.ctx),
            "N": table.n,
            "L": table.l,
            "epsilon": table.epsilon,
            "H_Z": table.h_z,
            "bounds": {name: val for name, val in table.labeled()},
            "envelope_constant": table.envelope,
            "smallest": regimes.smallest,
            "caveat": regimes.caveat,
        }
        print(json.dumps(doc, indent=2))
    else:
        print(render_table(table, regimes))
    return 0


def cmd_selftest(args) -> int:
    return 0 if selftest.run_all(print) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="siegel",
        description="Exact heights and sparse small-height bases over Q and quadratic fields",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, budget=True):
        sp.add_argument("--json", action="store_true", help="structured output")
        if budget:
            sp.add_argument(
                "--subset-budget", type=int, default=DEFAULT_SUBSET_BUDGET, metavar="B"
            )

    sp = sub.add_parser("basis", help="pivot-normalized sparse basis with height table")
    sp.add_argument("file")
    sp.add_argument("--pivot", choices=["lex"], default="lex")
    sp.add_argument("--pivot-set", metavar="i,j,k")
    add_common(sp)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("height", help="exact heights of a matrix file")
    sp.add_argument("file")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--vectors", action="store_true", help="per-column vector heights")
    g.add_argument("--subspace", action="store_true", help="column-space height (default)")
    add_common(sp, budget=False)
    sp.set_defaults(func=cmd_height)

    sp = sub.add_parser("verify", help="instance-level identity and inequality checks")
    sp.add_argument("file")
    add_common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("relative", help="rational kernel pipeline for a quadratic matrix")
    sp.add_argument("file")
    add_common(sp)
    sp.set_defaults(func=cmd_relative)

    sp = sub.add_parser("sensing", help="integer sensing matrices")
    ssub = sp.add_subparsers(dest="subcommand", required=True)
    spg = ssub.add_parser("gen", help="generate a verified sensing matrix")
    spg.add_argument("--rows", type=int, required=True, metavar="L")
    spg.add_argument("--cols", type=int, required=True, metavar="M")
    spg.add_argument("--method", choices=["vandermonde", "search"], default="vandermonde")
    spg.add_argument("--max-abs", type=int, default=None, metavar="T")
    spg.add_argument("--seed", type=int, default=0, metavar="S")
    spg.add_argument("--max-tries", type=int, default=100_000)
    spg.add_argument("--sparsity", type=int, default=None, metavar="s")
    spg.add_argument("--json", action="store_true")
    spg.set_defaults(func=cmd_sensing_gen)
    spc = ssub.add_parser("check", help="exhaustively verify a sensing matrix file")
    spc.add_argument("file")
    spc.add_argument("--sparsity", type=int, default=None, metavar="s")
    spc.add_argument("--json", action="store_true")
    spc.set_defaults(func=cmd_sensing_check)

    sp = sub.add_parser("manybases", help="many interchangeable small-height bases")
    sp.add_argument("file")
    sp.add_argument("--count", type=int, required=True, metavar="M")
    sp.add_argument("--seed", type=int, default=0, metavar="S")
    sp.add_argument("--method", choices=["vandermonde", "search"], default="vandermonde")
    sp.add_argument("--max-abs", type=int, default=None, metavar="T")
    sp.add_argument("--max-tries", type=int, default=100_000)
    add_common(sp)
    sp.set_defaults(func=cmd_manybases)

    sp = sub.add_parser("bounds", help="floating-point guarantee comparison table")
    sp.add_argument("file")
    sp.add_argument("--epsilon", type=float, default=1e-6)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("selftest", help="run the full verification suite")
    sp.set_defaults(func=cmd_selftest)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"input error: {e}", file=sys.stderr)
        return 2
    except PreconditionError as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError) as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

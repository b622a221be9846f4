"""Command line reports: ``python -m wbrauer <command> [flags]``.

Every command prints one JSON document (sorted keys) or, with ``--pretty``,
a short human-readable table. Exit codes: 0 ok, 2 usage, 3 budget exceeded,
4 an internal consistency check failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from collections import Counter

from . import __version__
from . import arc_algebra as aa
from . import combinatorics as cb
from . import schur_weyl as sw
from .graded_walled_brauer import GradedWalledBrauer, MixedParameters, NonIntegerDelta

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERIFY = 0, 2, 3, 4


class VerificationFailed(RuntimeError):
    """A report's built-in consistency check did not hold."""


def _report(command: str, params: dict, result: dict) -> dict:
    return {"command": command, "parameters": params, "result": result, "version": __version__}


def _word_budget(word: str, budget: int | None) -> None:
    cap = sw.default_budget() if budget is None else budget
    if math.factorial(len(word)) > cap:
        raise sw.BudgetExceeded(f"dimension {math.factorial(len(word))} exceeds budget {cap}")


# ---------------------------------------------------------------- commands


def cmd_tableaux(word: str, delta: int, budget: int | None = None) -> dict:
    _word_budget(word, budget)
    alg = GradedWalledBrauer(word, delta)
    rows = []
    for k, t in enumerate(alg.tableaux):
        rows.append(
            {
                "chain": [str(b) for b in t.bipartitions(delta)],
                "content": list(t.content),
                "degree": alg.degrees[k],
                "shape": str(cb.weight_to_bipartition(t.shape, delta)),
                "restricted": alg.is_restricted(k),
            }
        )
    return _report("tableaux", {"word": word, "delta": delta}, {"count": len(rows), "tableaux": rows})


def cmd_algebra(word: str, delta: int, truncate: int | None = None, structure: bool = False,
                budget: int | None = None) -> dict:
    _word_budget(word, budget)
    alg = GradedWalledBrauer(word, delta)
    pieces = Counter(alg.k_of(*p) for p in alg.basis)
    degrees = Counter(alg.degree(p) for p in alg.basis)
    radical = len(alg.radical())
    blocks = []
    for shape in alg.shapes():
        d = alg.cell_module(shape).irreducible_dim()
        if d:
            blocks.append({"bipartition": str(cb.weight_to_bipartition(shape, delta)), "block_dim": d * d})
    blocks.sort(key=lambda b: b["bipartition"])
    checks = {
        "dim_is_factorial": alg.dim == math.factorial(len(word)),
        "radical_plus_blocks": radical + sum(b["block_dim"] for b in blocks) == alg.dim,
    }
    result = {
        "dim": alg.dim,
        "tableaux": len(alg.tableaux),
        "pieces": {str(k): v for k, v in sorted(pieces.items())},
        "degrees": {str(k): v for k, v in sorted(degrees.items())},
        "radical_dim": radical,
        "blocks": blocks,
        "checks": checks,
    }
    if truncate is not None:
        result["truncation"] = {
            "k": truncate,
            "ideal_dim": len(alg.truncation(truncate)),
            "quotient_dim": alg.dim - len(alg.truncation(truncate)),
        }
    if structure:
        result["structure_constants"] = [[a, b, c, str(v)] for a, b, c, v in alg.structure_constants()]
    if not all(checks.values()):
        raise VerificationFailed(json.dumps(checks, sort_keys=True))
    return _report("algebra", {"word": word, "delta": delta, "truncate": truncate}, result)


def cmd_dmatrix(delta: int, r: int, s: int) -> dict:
    idx, d = aa.d_matrix(delta, r, s)
    _, p = aa.p_matrix(delta, r, s)
    ok = aa.check_inverse(d, p)
    natural = all(e.nonnegative() and e.is_polynomial() for row in p for e in row)
    if not ok:
        raise VerificationFailed("d(q) p(-q) is not the identity")
    result = {
        "index": [str(cb.weight_to_bipartition(w, delta)) for w in idx],
        "d": [[str(e) for e in row] for row in d],
        "p": [[str(e) for e in row] for row in p],
        "checks": {"d_times_p_minus_q_is_identity": ok, "p_entries_in_N_q": natural},
    }
    return _report("dmatrix", {"delta": delta, "r": r, "s": s}, result)


def cmd_schurweyl(m: int, n: int, r: int, s: int, budget: int | None = None, threads: int = 1) -> dict:
    sw.check_budget(m, n, r, s, budget)
    rk, kdim, _ = sw.psi_rank_kernel(m, n, r, s, budget=budget, threads=threads)
    injective = kdim == 0
    predicted = sw.is_injective_predicted(m, n, r, s)
    census = sw.summand_census(m, n, r, s, budget=budget)
    galg = GradedWalledBrauer(sw.canonical_word(r, s), m - n)
    truncated = len(galg.truncation(min(m, n)))
    checks = {
        "injectivity_matches_prediction": injective == predicted,
        "kernel_matches_truncation": kdim == truncated,
        "survivors_are_cross": all(c["cross"] == c["survives"] for c in census["classes"]),
    }
    result = {
        "rank": rk,
        "kernel_dim": kdim,
        "injective": injective,
        "predicted_injective": predicted,
        "truncation_dim": truncated,
        "census": [{k: c[k] for k in ("bipartition", "cross", "k", "survives")} for c in census["classes"]],
        "cross_count": census["cross_count"],
    }
    if m * n == 0 and r + s > 0:
        gens = sw.idempotents_with_positive_k(m, n, r, s)
        ideal = sw.ideal_dim(gens, r, s, m - n)
        result["ideal_dim"] = ideal
        checks["ideal_equals_kernel"] = ideal == kdim
    result["checks"] = checks
    if not all(checks.values()):
        raise VerificationFailed(json.dumps(checks, sort_keys=True))
    return _report("schurweyl", {"m": m, "n": n, "r": r, "s": s}, result)


# ----------------------------------------------------------------- parsing


def _word(text: str) -> str:
    if any(c not in "EF" for c in text):
        raise argparse.ArgumentTypeError("word must be over the letters E and F")
    return text


def _natural(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="human-readable output")
    common.add_argument("--threads", type=_natural, default=1)
    common.add_argument("--budget", type=_natural, default=None,
                        help=f"size cap (default from ${sw.BUDGET_ENV} or {sw.DEFAULT_BUDGET})")
    parser = argparse.ArgumentParser(prog="wbrauer", description="Walled Brauer algebra reports")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tableaux", parents=[common])
    p.add_argument("--word", type=_word, required=True)
    p.add_argument("--delta", type=int, required=True)

    p = sub.add_parser("algebra", parents=[common])
    p.add_argument("--word", type=_word, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--truncate", type=_natural, default=None)
    p.add_argument("--structure-constants", action="store_true")

    p = sub.add_parser("dmatrix", parents=[common])
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--r", type=_natural, required=True)
    p.add_argument("--s", type=_natural, required=True)

    p = sub.add_parser("schurweyl", parents=[common])
    for flag in ("--m", "--n", "--r", "--s"):
        p.add_argument(flag, type=_natural, required=True)
    return parser


def _pretty(report: dict) -> str:
    lines = [f"{report['command']} {report['parameters']}"]
    result = report["result"]
    if report["command"] == "tableaux":
        for row in result["tableaux"]:
            lines.append(f"  {' -> '.join(row['chain'])}  content={row['content']}  deg={row['degree']}"
                         f"  {'restricted' if row['restricted'] else ''}".rstrip())
    else:
        for key in sorted(result):
            lines.append(f"  {key}: {result[key]}")
    return "\n".join(lines)


def run(argv: list[str] | None = None) -> tuple[int, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "tableaux":
            report = cmd_tableaux(args.word, args.delta, args.budget)
        elif args.command == "algebra":
            report = cmd_algebra(args.word, args.delta, args.truncate, args.structure_constants, args.budget)
        elif args.command == "dmatrix":
            report = cmd_dmatrix(args.delta, args.r, args.s)
        else:
            report = cmd_schurweyl(args.m, args.n, args.r, args.s, args.budget, args.threads)
    except sw.BudgetExceeded as exc:
        return EXIT_BUDGET, json.dumps({"error": "budget", "message": str(exc)})
    except VerificationFailed as exc:
        return EXIT_VERIFY, json.dumps({"error": "verification", "message": str(exc)})
    except (NonIntegerDelta, MixedParameters, ValueError) as exc:
        return EXIT_USAGE, json.dumps({"error": "usage", "message": str(exc)})
    text = _pretty(report) if args.pretty else json.dumps(report, sort_keys=True, indent=2)
    return EXIT_OK, text


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code == EXIT_OK else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: aut, classify, ci, iso and batch verbs with
deterministic JSON output.

JSON records never vary between identical invocations: orders are decimal
strings, generator lists are sorted, and the "ms" field is pinned to 0 in
JSON mode (the human-readable mode reports real wall time instead).

Exit codes: 0 success, 1 input error, 2 verification mismatch, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .autsolver import aut, aut_pq, aut_prime, aut_squarefree
from .classify import (
    edge_transitive_prime,
    is_normal_circulant,
    noncyclic_regular_sufficient,
    two_arc_classify,
    zhang_classify,
)
from .errors import BudgetExceeded, CirculantError, UnsupportedOrder
from .graphs import CirculantGraph, new_circulant, parse_graph_text
from .oracle import (
    SearchBudget,
    are_isomorphic,
    brute_force_aut,
    ci_counterexample,
    ci_via_conjugacy,
    is_ci_group,
    symmetric_connection_sets,
)
from .permgroup import (
    DirectProduct,
    GeneratedBy,
    GroupDescription,
    HolomorphSubgroup,
    Symmetric,
    Wreath,
    group_equal,
    realize,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MISMATCH = 2
EXIT_BUDGET = 3


def describe_json(desc: GroupDescription) -> dict:
    if isinstance(desc, Symmetric):
        return {"kind": "symmetric", "m": desc.m}
    if isinstance(desc, HolomorphSubgroup):
        return {
            "kind": "holomorph",
            "n": desc.n,
            "multipliers": list(desc.multipliers.elements),
        }
    if isinstance(desc, Wreath):
        return {
            "kind": "wreath",
            "outer": describe_json(desc.outer),
            "inner": describe_json(desc.inner),
        }
    if isinstance(desc, DirectProduct):
        return {
            "kind": "direct",
            "left": describe_json(desc.left),
            "right": describe_json(desc.right),
            "m": desc.crt_divisor,
        }
    if isinstance(desc, GeneratedBy):
        return {
            "kind": "generators",
            "degree": desc.degree,
            "generators": sorted(list(g.images) for g in desc.generators),
        }
    raise TypeError(f"not a description: {desc!r}")


def describe_text(desc: GroupDescription) -> str:
    def wrap(d):
        t = describe_text(d)
        return f"({t})" if isinstance(d, (Wreath, DirectProduct)) else t

    if isinstance(desc, Symmetric):
        return f"S_{desc.m}"
    if isinstance(desc, HolomorphSubgroup):
        mults = "{" + ",".join(str(a) for a in desc.multipliers.elements) + "}"
        return "{T_{a,b} : a ∈ " + mults + f", b ∈ Z_{desc.n}" + "}"
    if isinstance(desc, Wreath):
        return f"{wrap(desc.outer)} ≀ {wrap(desc.inner)}"
    if isinstance(desc, DirectProduct):
        return f"{wrap(desc.left)} × {wrap(desc.right)}"
    if isinstance(desc, GeneratedBy):
        return f"⟨{len(desc.generators)} generators on {desc.degree} points⟩"
    raise TypeError(f"not a description: {desc!r}")


def _emit(payload: dict, as_json: bool, human: str):
    if as_json:
        sys.stdout.write(json.dumps(payload, separators=(",", ":")) + "\n")
    else:
        sys.stdout.write(human + "\n")


def _budget(args) -> SearchBudget:
    return SearchBudget(
        max_vertices=args.budget_vertices,
        max_group_order_for_enumeration=args.budget_order,
    )


def _parse_set(text: str, n: int) -> list[int]:
    out = []
    if text.strip():
        for tok in text.split(","):
            try:
                out.append(int(tok))
            except ValueError:
                raise CirculantError(f"bad connection element {tok.strip()!r}") from None
    return out


def _solve(X: CirculantGraph, method: str, budget: SearchBudget):
    if method == "auto":
        desc = aut(X, budget)
        mod = X.modulus
        if X.n == 1 or mod.is_prime:
            used = "prime" if mod.is_prime else "auto"
        elif mod.is_squarefree:
            used = "pq" if len(mod.primes) == 2 else "squarefree"
        else:
            used = "oracle"
        return desc, used
    if method == "prime":
        return aut_prime(X), "prime"
    if method == "pq":
        return aut_pq(X), "pq"
    if method == "squarefree":
        return aut_squarefree(X), "squarefree"
    if method == "oracle":
        return GeneratedBy(X.n, brute_force_aut(X, budget).generators), "oracle"
    raise CirculantError(f"unknown method {method!r}")


def _aut_payload(X: CirculantGraph, method: str, verify: bool, budget: SearchBudget):
    t0 = time.monotonic()
    desc, used = _solve(X, method, budget)
    group = realize(desc)
    verified = None
    if verify:
        try:
            reference = brute_force_aut(X, budget)
            verified = group_equal(group, reference)
        except BudgetExceeded:
            verified = None
    elapsed = (time.monotonic() - t0) * 1000.0
    payload = {
        "n": X.n,
        "set": list(X.elements),
        "method": used,
        "group": describe_json(desc),
        "order": str(group.order()),
        "generators": sorted(list(g.images) for g in group.generators),
        "verified": verified,
        "ms": 0,
    }
    return payload, desc, elapsed


def cmd_aut(args) -> int:
    budget = _budget(args)
    try:
        X = new_circulant(args.n, _parse_set(args.set, args.n))
        payload, desc, elapsed = _aut_payload(X, args.method, args.verify, budget)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CirculantError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    human = (
        f"Aut(X({X.n};{{{','.join(map(str, X.elements))}}})) = {describe_text(desc)}, "
        f"order {payload['order']}"
    )
    if payload["verified"] is not None:
        human += ", verified" if payload["verified"] else ", MISMATCH with oracle"
    human += f" [{elapsed:.1f} ms]"
    _emit(payload, args.json, human)
    if payload["verified"] is False:
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_classify(args) -> int:
    budget = _budget(args)
    try:
        X = new_circulant(args.n, _parse_set(args.set, args.n))
        two_arc = two_arc_classify(X)
        payload = {
            "n": X.n,
            "set": list(X.elements),
            "edge_transitive_prime": (
                edge_transitive_prime(X) if X.modulus.is_prime else "n/a"
            ),
            "two_arc": two_arc.label,
            "two_arc_detail": two_arc.detail,
            "zhang": "n/a",
            "normal_circulant": "n/a",
            "noncyclic_regular_prime": noncyclic_regular_sufficient(X),
            "ms": 0,
        }
        try:
            payload["zhang"] = zhang_classify(X, budget)
            payload["normal_circulant"] = is_normal_circulant(X, budget)
        except (BudgetExceeded, UnsupportedOrder):
            pass
    except (CirculantError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    human = (
        f"X({X.n};{{{','.join(map(str, X.elements))}}}): two-arc={payload['two_arc']}"
        f" zhang={payload['zhang']} normal={payload['normal_circulant']}"
        f" edge-transitive(prime)={payload['edge_transitive_prime']}"
        f" noncyclic-regular-prime={payload['noncyclic_regular_prime']}"
    )
    _emit(payload, args.json, human)
    return EXIT_OK


def cmd_ci(args) -> int:
    budget = _budget(args)
    n = args.n
    try:
        if args.mode == "lookup":
            dci, ci = is_ci_group(n)
            payload = {"n": n, "mode": "lookup", "dci": dci, "ci": ci, "ms": 0}
            human = f"Z_{n}: DCI={dci} CI={ci}"
        elif args.mode == "exhaustive":
            witness = None
            for s in symmetric_connection_sets(n):
                bad = ci_counterexample(new_circulant(n, s), budget)
                if bad is not None:
                    witness = {"set": list(s), "iso_set": list(bad)}
                    break
            payload = {
                "n": n,
                "mode": "exhaustive",
                "ci": witness is None,
                "witness": witness,
                "ms": 0,
            }
            human = (
                f"Z_{n}: CI confirmed exhaustively"
                if witness is None
                else f"Z_{n}: non-CI witness {witness['set']} ~ {witness['iso_set']}"
            )
        elif args.mode == "conjugacy":
            ok = all(
                ci_via_conjugacy(new_circulant(n, s), budget)
                for s in symmetric_connection_sets(n)
            )
            payload = {"n": n, "mode": "conjugacy", "ci": ok, "ms": 0}
            human = f"Z_{n}: CI by n-cycle conjugacy = {ok}"
        else:
            raise CirculantError(f"unknown mode {args.mode!r}")
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CirculantError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(payload, args.json, human)
    return EXIT_OK


def cmd_iso(args) -> int:
    budget = _budget(args)
    try:
        X = new_circulant(args.n, _parse_set(args.set, args.n))
        Y = new_circulant(args.n, _parse_set(args.set2, args.n))
        witness = are_isomorphic(X, Y, budget)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CirculantError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    payload = {
        "n": args.n,
        "set": list(X.elements),
        "set2": list(Y.elements),
        "isomorphic": witness is not None,
        "witness": list(witness.images) if witness is not None else None,
        "ms": 0,
    }
    human = (
        f"X({args.n};{X.elements}) ~ X({args.n};{Y.elements})"
        if witness is not None
        else f"X({args.n};{X.elements}) !~ X({args.n};{Y.elements})"
    )
    _emit(payload, args.json, human)
    return EXIT_OK


def cmd_batch(args) -> int:
    budget = _budget(args)
    try:
        with open(args.path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            X = parse_graph_text(line)
            payload, _desc, _elapsed = _aut_payload(X, "auto", args.verify, budget)
            payload = {"line": lineno, **payload}
        except (CirculantError, ValueError) as exc:
            payload = {"line": lineno, "error": f"line {lineno}: {exc}"}
        except BudgetExceeded as exc:
            payload = {"line": lineno, "error": f"line {lineno}: budget: {exc}"}
        sys.stdout.write(json.dumps(payload, separators=(",", ":")) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circulant",
        description="Automorphism groups and classifications of circulant graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_set=True):
        p.add_argument("--n", type=int, required=True, help="number of vertices")
        if with_set:
            p.add_argument(
                "--set",
                default="",
                help="comma-separated connection set; empty string for the empty set",
            )
        p.add_argument("--json", action="store_true", help="emit one JSON record")
        p.add_argument("--budget-vertices", type=int, default=32)
        p.add_argument("--budget-order", type=int, default=10**6)
        p.add_argument(
            "--seed-less",
            action="store_true",
            help="reserved; no randomness exists anywhere, so this flag is rejected",
        )

    p_aut = sub.add_parser("aut", help="compute Aut(X(n;S))")
    common(p_aut)
    p_aut.add_argument(
        "--method",
        choices=["auto", "prime", "pq", "squarefree", "oracle"],
        default="auto",
    )
    p_aut.add_argument("--verify", action="store_true", help="cross-check with the oracle")
    p_aut.set_defaults(func=cmd_aut)

    p_cls = sub.add_parser("classify", help="classification predicates for X(n;S)")
    common(p_cls)
    p_cls.set_defaults(func=cmd_classify)

    p_ci = sub.add_parser("ci", help="Cayley-isomorphism status of Z_n")
    common(p_ci, with_set=False)
    p_ci.add_argument(
        "--mode", choices=["lookup", "exhaustive", "conjugacy"], default="lookup"
    )
    p_ci.set_defaults(func=cmd_ci)

    p_iso = sub.add_parser("iso", help="isomorphism test between two circulants")
    common(p_iso)
    p_iso.add_argument("--set2", default="", help="second connection set")
    p_iso.set_defaults(func=cmd_iso)

    p_batch = sub.add_parser("batch", help="solve a file of 'n;s1,s2,...' lines")
    p_batch.add_argument("path")
    p_batch.add_argument("--verify", action="store_true")
    p_batch.add_argument("--json", action="store_true")
    p_batch.add_argument("--budget-vertices", type=int, default=32)
    p_batch.add_argument("--budget-order", type=int, default=10**6)
    p_batch.add_argument("--seed-less", action="store_true")
    p_batch.set_defaults(func=cmd_batch)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed_less", False):
        print(
            "error: --seed-less is reserved; this tool has no randomness to seed away",
            file=sys.stderr,
        )
        return EXIT_INPUT
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

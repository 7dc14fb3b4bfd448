"""Command-line entry point ``thomason-lab``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .categories import load_category_file
from .dwyer import check_cisinski_dwyer, check_dwyer
from .filtration import MonoidPushoutProblem, MuroInstance, compare_monoid_stages, compare_muro_stages
from .homology import HomologyProfile, homology
from .scenarios import SCENARIOS, run_scenario, scenario_comonoidal, scenario_szpilrajn
from .simplicial import FiniteSimplicialSet


def _load_json(path: str) -> dict:
    return json.loads(Path(path).read_text())


def _emit(obj: dict, text: str, fmt: str) -> None:
    print(json.dumps(obj, indent=1, sort_keys=True) if fmt == "json" else text)


def cmd_scenario(args) -> int:
    if args.name == "szpilrajn" and args.category:
        reports = [scenario_szpilrajn(load_category_file(_load_json(args.category), args.max_path_len), args.pivot)]
    elif args.name == "comonoidal" and (args.a or args.b):
        reports = [scenario_comonoidal(args.a or "simplex:1", args.b or "simplex:1", args.max_path_len)]
    else:
        reports = run_scenario(args.name, args.max_path_len)
    ok = all(r.passed(args.allow_unknown) for r in reports)
    if args.format == "json":
        payload = [r.to_json_dict() for r in reports]
        print(json.dumps(payload[0] if len(payload) == 1 else payload, indent=1, sort_keys=True))
    else:
        for r in reports:
            print(r.text())
        print("ALL PASS" if ok else "FAILURES PRESENT")
    return 0 if ok else 1


def cmd_homology(args) -> int:
    X = FiniteSimplicialSet.loads(Path(args.file).read_text())
    H = homology(X)
    lines = [f"H{n}: {HomologyProfile.format_group(b, t)}" for n, (b, t) in enumerate(H.groups)] or ["H: 0"]
    _emit(H.to_json_dict(), "\n".join(lines), args.format)
    return 0


def cmd_dwyer(args) -> int:
    B = load_category_file(_load_json(args.file), args.max_path_len)
    names = [s for s in args.sub.split(",") if s]
    sub = [B.index(name) for name in names]
    check = check_dwyer if args.dwyer else check_cisinski_dwyer
    verdict = check(B, sub, node_budget=args.node_budget)
    print(json.dumps(verdict.to_json_dict(), indent=1, sort_keys=True))
    return 0 if verdict.status != "unknown" else 2


def cmd_filtration(args) -> int:
    data = _load_json(args.file)
    if args.kind == "monoid":
        comps = compare_monoid_stages(MonoidPushoutProblem.from_json_dict(data), args.stages)
    else:
        comps = compare_muro_stages(MuroInstance.from_json_dict(data, args.max_path_len), args.stages)
    ok = all(c.agrees for c in comps)
    payload = {"kind": args.kind, "stages": [c.to_json_dict() for c in comps], "agrees": ok}
    text = "\n".join(
        f"stage {c.index}: size {c.stage_size}, oracle {c.oracle_size}, {'ok' if c.agrees else 'MISMATCH'}"
        + (f" witness {c.witness}" if c.witness else "")
        for c in comps
    )
    _emit(payload, text, args.format)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thomason-lab", description="Finite checks for the Thomason model structure")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scenario", help="run a named scenario")
    s.add_argument("name", choices=list(SCENARIOS) + ["all"])
    s.add_argument("--format", choices=["text", "json"], default="text")
    s.add_argument("--max-path-len", type=int, default=8)
    s.add_argument("--allow-unknown", action="store_true")
    s.add_argument("--category", help="category file for szpilrajn")
    s.add_argument("--pivot", default="0", help="pivot object name for szpilrajn")
    s.add_argument("--a", help="first factor for comonoidal, e.g. simplex:1")
    s.add_argument("--b", help="second factor for comonoidal, e.g. boundary:2")
    s.set_defaults(func=cmd_scenario)

    h = sub.add_parser("homology", help="integral homology of a simplicial set file")
    h.add_argument("file")
    h.add_argument("--format", choices=["text", "json"], default="text")
    h.set_defaults(func=cmd_homology)

    d = sub.add_parser("dwyer-check", help="Cisinski-Dwyer verdict for a full subcategory")
    d.add_argument("file")
    d.add_argument("--sub", required=True, help="comma-separated object names")
    d.add_argument("--dwyer", action="store_true", help="also test the adjunction condition")
    d.add_argument("--node-budget", type=int, default=200_000)
    d.add_argument("--max-path-len", type=int, default=8)
    d.set_defaults(func=cmd_dwyer)

    f = sub.add_parser("filtration", help="compare filtration stages with the brute-force oracle")
    f.add_argument("kind", choices=["monoid", "muro"])
    f.add_argument("file")
    f.add_argument("--stages", type=int, default=3)
    f.add_argument("--format", choices=["text", "json"], default="text")
    f.add_argument("--max-path-len", type=int, default=8)
    f.set_defaults(func=cmd_filtration)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

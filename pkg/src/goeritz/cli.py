"""Command-line entry point.

Exit status is 0 for a definitive answer, 2 when the answer is inconclusive
(an Unknown verdict or a cone distance that is only an upper bound) and 1
for usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from . import complexes, slopes
from .classify import BUDGET_ENV, classify, default_budget, scan_subgroup
from .freegroup import cyclic_reduce, is_primitive, reduce
from .group import normal_form, parse, presentation_checks, random_word
from .recognize import OutsideTableError, parse_monodromy, recognize

EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    budget: int
    radius_cap: int = complexes.RADIUS_CAP
    slope_cap: int = slopes.SCAN_CAP
    seed: int = 0

    def __post_init__(self):
        for name in ("budget", "radius_cap", "slope_cap"):
            if getattr(self, name) <= 0:
                raise UsageError(f"{name} must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _word(text: str, parser=parse) -> str:
    if not text.strip():
        raise UsageError("empty word")
    return parser(text)


def _element(text: str):
    # the empty word and "e" both denote the identity
    return normal_form("" if text.strip() == "e" else parse(text))


def cmd_classify(args, cfg: Config) -> int:
    verdict = classify(_word(args.word), cfg.budget)
    print(verdict.to_json() if args.json else verdict)
    return EXIT_OK if verdict.definite else EXIT_UNKNOWN


def cmd_scan(args, cfg: Config) -> int:
    gens = [_word(g) for g in args.gens.split(",")]
    report = scan_subgroup(gens, args.maxlen, cfg.budget)
    if args.json:
        print(_dump(report.to_dict()))
    else:
        print(f"words: {report.total}")
        for kind, n in sorted(report.counts.items()):
            print(f"{kind}: {n}")
        print(f"unknown rate: {report.unknown_rate:.4f}")
        for hit in report.hits:
            print(f"  {hit['word']}: {hit['verdict']['type']} {hit['verdict'].get('subgroup', '')}")
    return EXIT_UNKNOWN if report.unknown else EXIT_OK


def cmd_primitive(args, cfg: Config) -> int:
    w = reduce(_word(args.word, lambda s: s))
    res = is_primitive(w)
    core, _ = cyclic_reduce(w)
    data = {
        "word": str(w),
        "core": str(core),
        "primitive": res.primitive,
        "moves": list(res.moves),
        "obstruction": res.obstruction,
    }
    if args.json:
        print(_dump(data))
    elif res.primitive:
        print(f"{w}: primitive via {' '.join(res.moves) or 'no moves'}")
    else:
        print(f"{w}: not primitive ({res.obstruction})")
    return EXIT_OK


def cmd_slopes(args, cfg: Config) -> int:
    mono = slopes.Monodromy.parse(args.mono)
    found = sorted(slopes.vertical_primitive_scan(mono, args.bound, cfg.slope_cap), key=slopes.Slope.sort_key)
    if args.dot:
        print(slopes.farey_dot(found, name=mono.value), end="")
    elif args.json:
        print(_dump({"mono": mono.value, "bound": args.bound, "slopes": [str(s) for s in found]}))
    else:
        print(" ".join(str(s) for s in found))
    return EXIT_OK


def cmd_dist(args, cfg: Config) -> int:
    u, v = _element(args.w1), _element(args.w2)
    if args.space == "tree":
        k1, k2 = args.kinds
        d = complexes.tree_distance(complexes.TreeVertex.of(k1, u), complexes.TreeVertex.of(k2, v))
        print(_dump({"space": "tree", "distance": d, "exact": True}) if args.json else d)
        return EXIT_OK
    res = complexes.cone_distance_upper(u, v, args.horizon)
    if args.json:
        print(_dump({"space": "cone", "distance": res.bound, "lower": res.lower, "exact": res.exact}))
    else:
        print(res.bound if res.exact else f"<= {res.bound} (>= {res.lower})")
    return EXIT_OK if res.exact else EXIT_UNKNOWN


def cmd_ball(args, cfg: Config) -> int:
    if args.radius > cfg.radius_cap:
        raise UsageError(f"radius {args.radius} exceeds cap {cfg.radius_cap}")
    center = _element(args.center)
    if args.space == "tree":
        kind = args.kind if args.kind in ("A", "B") else "A"
        ball = complexes.tree_ball(complexes.TreeVertex.of(kind, center), args.radius, args.horizon)
    else:
        vertex = (complexes.ConeVertex.element(center) if args.kind == "element"
                  else complexes.ConeVertex.cone(center))
        ball = complexes.cone_ball(vertex, args.radius, args.horizon)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(complexes.to_dot(ball))
    data = {
        "space": args.space,
        "radius": args.radius,
        "vertices": ball.graph.number_of_nodes(),
        "edges": ball.graph.number_of_edges(),
        "truncated": ball.truncated,
    }
    print(_dump(data) if args.json else " ".join(f"{k}={v}" for k, v in data.items()))
    return EXIT_OK


def cmd_recognize(args, cfg: Config) -> int:
    result = recognize(_word(args.word, parse_monodromy))
    print(result.to_json() if args.json else result)
    return EXIT_OK


def cmd_selfcheck(args, cfg: Config) -> int:
    checks = presentation_checks()
    rng = random.Random(cfg.seed)
    sound = True
    for _ in range(args.samples):
        u, v = random_word(rng, rng.randint(0, 20)), random_word(rng, rng.randint(0, 20))
        g = normal_form(u)
        sound &= (g * g.inverse()).is_identity and g * normal_form(v) == normal_form(u + v)
    checks.append((f"normal-form soundness on {args.samples} random words", sound))
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="goeritz", description="Computations in the genus-2 Goeritz group.")
    parser.add_argument("--budget", type=int, default=None,
                        help=f"cyclic forms scanned per subgroup test (default ${BUDGET_ENV} or 4096)")
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="Nielsen-Thurston type of a word in a b B g d D")
    p.add_argument("word")
    p.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", help="classify all short words in a list of generators")
    p.add_argument("--gens", required=True, help="comma-separated generator words")
    p.add_argument("--maxlen", type=int, required=True)
    p.add_argument("--budget", type=int, default=argparse.SUPPRESS)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("primitive", help="primitivity of a word in x X y Y")
    p.add_argument("word")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_primitive)

    p = sub.add_parser("slopes", help="vertical primitive disk slopes")
    p.add_argument("--mono", required=True, choices=[m.value for m in slopes.Monodromy])
    p.add_argument("--bound", type=int, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_slopes)

    p = sub.add_parser("dist", help="distance in the tree or the cone graph")
    p.add_argument("--space", choices=("tree", "cone"), required=True)
    p.add_argument("--kinds", default="AA", choices=("AA", "AB", "BA", "BB"),
                   help="vertex kinds for the tree")
    p.add_argument("--horizon", type=int, default=2, help="exploration radius for the cone graph")
    p.add_argument("--json", action="store_true")
    p.add_argument("w1")
    p.add_argument("w2")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("ball", help="finite ball in the tree or the cone graph")
    p.add_argument("--space", choices=("tree", "cone"), required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--horizon", type=int, default=2,
                   help="b-power range for the tree, subgroup word length for the cone")
    p.add_argument("--center", default="", help="group word for the centre (default identity)")
    p.add_argument("--kind", default="A", choices=("A", "B", "cone", "element"))
    p.add_argument("--dot", metavar="PATH")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("recognize", help="identify the mapping torus of a word in t T u U z Z")
    p.add_argument("word")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("selfcheck", help="validate the group presentation")
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_selfcheck)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        budget = args.budget if args.budget is not None else default_budget()
        cfg = Config(budget=budget, seed=args.seed)
        return args.func(args, cfg)
    except (UsageError, ValueError) as exc:
        print(f"goeritz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OutsideTableError as exc:
        print(f"goeritz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())

"""modspec command line: lattices, spectra, topologies and the verification suite."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from typing import Sequence

from . import __version__
from .algebra import (
    DEFAULT_ELEMENT_BUDGET,
    DEFAULT_MEMBER_BUDGET,
    AlgebraError,
    BudgetExceeded,
    Lattice,
    ModuleShape,
    colon_ideal,
    enumerate_submodules,
)
from .spectra import (
    analysis,
    annihilator_divisor,
    generalized_associated_primes,
    has_complete_max_property,
    has_max_property,
    has_min_property,
    is_coprime_module,
    iter_bits,
    structural_predicates,
)
from .topology import (
    build_space,
    decide_top_c,
    decide_top_s,
    generic_points,
    irreducible_closed_sets,
    irreducible_components,
    topological_properties,
)
from .verify import (
    CATALOG,
    InstanceBudget,
    InstanceContext,
    InvalidBudget,
    UnknownCheck,
    run_on_context,
    run_suite,
    select_checks,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_KIND = {("s", "full"): "xi_s", ("s", "restricted"): "xi_s_c", ("c", "full"): "xi_c", ("c", "restricted"): "xi_c_m"}


def _envelope(command: str, instance: str | None) -> dict:
    return {"tool": "modspec", "version": __version__, "command": command, "instance": instance}


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _load(args: argparse.Namespace) -> tuple[ModuleShape, Lattice]:
    shape = ModuleShape.parse(args.instance)
    return shape, enumerate_submodules(shape, budget=args.max_lattice, element_budget=args.max_elements)


def _names(lat: Lattice, ids) -> list[str]:
    return [lat[i].name for i in ids]


# ---------------------------------------------------------------------------
# subcommands


def cmd_lattice(args: argparse.Namespace) -> tuple[int, str]:
    shape, lat = _load(args)
    covers = lat.covers()
    if args.format == "dot":
        lines = ["digraph lattice {", "  rankdir=BT;", f'  label="{shape}";']
        for sub in lat:
            lines.append(f'  n{sub.id} [label="{sub.name}"];')
        for lo, hi in covers:
            lines.append(f"  n{lo} -> n{hi};")
        lines.append("}")
        return EXIT_OK, "\n".join(lines) + "\n"
    doc = _envelope("lattice", str(shape))
    doc["size"] = len(lat)
    doc["nodes"] = [
        {
            "id": sub.id,
            "name": sub.name,
            "order": sub.cardinality,
            "generators": [str(g) for g in sub.generators],
            "annihilator": annihilator_divisor(sub),
        }
        for sub in lat
    ]
    doc["covers"] = [list(c) for c in covers]
    return EXIT_OK, _dump(doc)


def cmd_spec(args: argparse.Namespace) -> tuple[int, str]:
    shape, lat = _load(args)
    an = analysis(lat)
    doc = _envelope("spec", str(shape))
    doc["kind"] = args.kind
    members = []
    if args.kind == "second":
        for i in iter_bits(an.second):
            members.append(
                {
                    "id": i,
                    "name": lat[i].name,
                    "annihilator": annihilator_divisor(lat[i]),
                    "strongly_hollow": an.strongly_hollow(i) is None,
                }
            )
    else:
        for i in iter_bits(an.coprime):
            members.append(
                {
                    "id": i,
                    "name": lat[i].name,
                    "colon": colon_ideal(lat[i], lat.whole).divisor,
                    "strongly_irreducible": an.strongly_irreducible(i) is None,
                }
            )
    doc["members"] = members
    return EXIT_OK, _dump(doc)


def cmd_topology(args: argparse.Namespace) -> tuple[int, str]:
    shape, lat = _load(args)
    kind = _KIND[args.side, args.variant]
    doc = _envelope("topology", str(shape))
    doc.update(side=args.side, variant=args.variant, family=kind)
    if args.variant == "full":
        decision = (decide_top_s if args.side == "s" else decide_top_c)(lat)
        doc["is_topology"] = decision.is_topology
        if not decision.is_topology:
            i, j = decision.witness
            an = analysis(lat)
            points = list(iter_bits(an.second if args.side == "s" else an.coprime))
            union = [points[k] for k in iter_bits(decision.union)]
            doc["witness"] = {"pair": [i, j], "names": _names(lat, (i, j)), "union": union}
            doc["points"] = points
            return EXIT_OK, _dump(doc)
    else:
        doc["is_topology"] = True
    space = build_space(lat, kind)

    def as_ids(subset: int) -> list[int]:
        return list(space.ids_of(subset))

    doc["points"] = list(space.points)
    doc["point_names"] = _names(lat, space.points)
    doc["closed_sets"] = [as_ids(c) for c in space.closed_sets]
    doc["irreducible_closed_sets"] = [
        {"set": as_ids(c), "generic_points": [space.points[k] for k in generic_points(space, c)]}
        for c in irreducible_closed_sets(space)
    ]
    doc["components"] = [as_ids(c) for c in irreducible_components(space)]
    props = asdict(topological_properties(space))
    props["degenerate"] = list(props["degenerate"])
    doc["properties"] = props
    return EXIT_OK, _dump(doc)


def cmd_props(args: argparse.Namespace) -> tuple[int, str]:
    shape, lat = _load(args)
    an = analysis(lat)
    doc = _envelope("props", str(shape))
    doc["size"] = len(lat)
    doc["structural"] = asdict(structural_predicates(lat))
    coprime = is_coprime_module(lat)
    # over a commutative ring the two notions coincide; both names are reported
    doc["coprime_module"] = coprime.holds
    doc["completely_coprime_module"] = coprime.holds
    doc["coprime_witness"] = None if coprime.holds else coprime.witness.divisor
    doc["min_property"] = has_min_property(lat).holds
    doc["max_property"] = has_max_property(lat).holds
    doc["complete_max_property"] = has_complete_max_property(lat).holds
    doc["spec_s"] = list(iter_bits(an.second))
    doc["spec_c"] = list(iter_bits(an.coprime))
    doc["spec_s_in_sh"] = an.second & ~an.sh == 0
    doc["spec_c_in_si"] = an.coprime & ~an.si == 0
    doc["top_s"] = decide_top_s(lat).is_topology
    doc["top_c"] = decide_top_c(lat).is_topology
    doc["associated_primes"] = [p.divisor for p in generalized_associated_primes(lat)]
    return EXIT_OK, _dump(doc)


def _check_patterns(raw: str | None) -> list[str] | None:
    if not raw:
        return None
    return [p.strip() for p in raw.split(",") if p.strip()]


def cmd_verify(args: argparse.Namespace) -> tuple[int, str]:
    budget = InstanceBudget(args.max_modulus, args.max_order, args.max_lattice, args.max_rank)
    report = run_suite(budget, _check_patterns(args.checks))
    code = EXIT_OK if report.ok else EXIT_FAILED
    if args.format == "text":
        lines = [f"modspec {__version__} verify {json.dumps(budget.as_dict())}"]
        for cid, c in report.counts.items():
            lines.append(f"{cid:18s} pass={c['pass']} vacuous={c['vacuous']} fail={c['fail']} skipped={c['skipped']}")
        for r in report.failures:
            lines.append(f"FAIL {r.check} {r.instance} {json.dumps(r.witness, sort_keys=True)}")
        for gap in report.coverage_gaps:
            lines.append(f"NEVER EXERCISED {gap}")
        for u in report.unattainable:
            lines.append(f"UNATTAINABLE {u['id']}: {u['reason']}")
        lines.append("OK" if report.ok else f"FAILED ({len(report.failures)} failures)")
        return code, "\n".join(lines) + "\n"
    return code, report.to_json("all" if args.format == "json" else "failures")


def cmd_report(args: argparse.Namespace) -> tuple[int, str]:
    shape, lat = _load(args)
    ctx = InstanceContext(shape, lat)
    checks = select_checks(_check_patterns(args.checks))
    results = [run_on_context(d, ctx) for d in checks]
    doc = _envelope("report", str(shape))
    doc["tags"] = list(ctx.tags)
    doc["results"] = [r.as_dict() for r in results]
    doc["ok"] = all(r.status != "fail" for r in results)
    return (EXIT_OK if doc["ok"] else EXIT_FAILED), _dump(doc)


# ---------------------------------------------------------------------------
# parser


def _integer(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modspec", description=__doc__)
    parser.add_argument("--version", action="version", version=f"modspec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_command(name: str, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("instance", help="module as n=<int>;M=<d1,...,dk> with d1 | d2 | ... | dk | n")
        p.add_argument("--max-lattice", type=_integer, default=DEFAULT_MEMBER_BUDGET, help="submodule count limit")
        p.add_argument("--max-elements", type=_integer, default=DEFAULT_ELEMENT_BUDGET, help="|M| limit")
        return p

    p = instance_command("lattice", "submodule lattice as JSON or a DOT Hasse diagram")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.set_defaults(handler=cmd_lattice)

    p = instance_command("spec", "second or coprime spectrum")
    p.add_argument("--kind", choices=("second", "coprime"), default="second")
    p.set_defaults(handler=cmd_spec)

    p = instance_command("topology", "Zariski-style topology on a spectrum")
    p.add_argument("--side", choices=("s", "c"), default="s")
    p.add_argument("--variant", choices=("full", "restricted"), default="full")
    p.set_defaults(handler=cmd_topology)

    p = instance_command("props", "module predicates and spectrum facts")
    p.set_defaults(handler=cmd_props)

    p = instance_command("report", "run the check catalogue on one instance")
    p.add_argument("--checks", help="comma-separated check ids or shell patterns")
    p.set_defaults(handler=cmd_report)

    defaults = InstanceBudget()
    p = sub.add_parser("verify", help="run the check catalogue over every instance in a budget")
    p.add_argument("--max-modulus", type=_integer, default=defaults.max_modulus)
    p.add_argument("--max-order", type=_integer, default=defaults.max_order)
    p.add_argument("--max-lattice", type=_integer, default=defaults.max_lattice)
    p.add_argument("--max-rank", type=_integer, default=defaults.max_rank)
    p.add_argument("--checks", help=f"comma-separated check ids or shell patterns ({len(CATALOG)} available)")
    p.add_argument(
        "--format",
        choices=("summary", "json", "text"),
        default="summary",
        help="summary lists only failed and skipped results; json lists every result",
    )
    p.add_argument("--output", help="write the report here instead of stdout")
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = args.handler(args)
    except BudgetExceeded as exc:
        doc = _envelope(args.command, getattr(args, "instance", None))
        doc["error"] = {"type": "budget_exceeded", **exc.as_dict()}
        sys.stdout.write(_dump(doc))
        return EXIT_BUDGET
    except (AlgebraError, InvalidBudget, UnknownCheck) as exc:
        print(f"modspec {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Report builders behind the CLI commands.  Every builder returns plain JSON
data with a deterministic layout; node numbers are 1-based."""

from __future__ import annotations

import json
from typing import Any, Optional

from . import __version__
from .config import Config, DEFAULT_COEFF_BOUND, parse_divisor, site_to_json
from .errors import ConfigError, NegativeLength
from .exceptional import (
    chain_count, chain_for_ordering, composition_multiplicities, hom_length, injective_class,
    iter_subsheaf_lattice, jet_degree, projective_class,
)
from .kclass import SheafClass, minimal_lift_class, pullback_class, shriek_class, twist_class
from .lattice import (
    DivisorClass, canonical_class, enumerate_minus_one_divisors, enumerate_minus_two_classes,
    exceptional_components, intersect, intersection_matrix,
)
from .pseudo_twist import JetProfile, ResolutionTrace, pseudo_twist_down, pseudo_twist_up, resolve_disjoint
from .rigidity import RestrictionKind, chi_alpha, is_rigid_candidate, leaf_tangent_dim
from .surface import anticanonical_class, classify_birational_type, h1_anticanonical


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def divisor_json(d: DivisorClass) -> dict:
    return {"s": d.s, "f": d.f, "e": list(d.e), "text": str(d)}


def sheaf_json(m: SheafClass) -> dict:
    return {"rank": m.rank, "c1": divisor_json(m.c1), "chi": m.chi, "n": m.n}


def jets_json(jets: JetProfile) -> list:
    return [{"site": site_to_json(j.site), "length": j.length} for j in jets.entries]


def _header(command: str, config: Config) -> dict:
    s = config.surface
    return {
        "command": command,
        "version": __version__,
        "surface": {"base_case": s.base_case.name, "genus": s.genus, "n": s.n,
                    "subcase": s.subcase.value if s.subcase else None},
    }


def lattice_report(config: Config, bound: Optional[int] = None) -> dict:
    surface = config.surface
    k = canonical_class(surface)
    ac = anticanonical_class(surface)
    comps = exceptional_components(surface)
    minus_one = enumerate_minus_one_divisors(surface)
    report = _header("lattice", config)
    report.update({
        "classification": classify_birational_type(surface),
        "basis": ["s", "f"] + [f"e{i + 1}" for i in range(surface.n)],
        "intersection_matrix": intersection_matrix(surface),
        "canonical_class": divisor_json(k),
        "anticanonical_class": divisor_json(ac),
        "K_squared": intersect(surface, k, k),
        "chi_structure_sheaf": surface.chi_structure,
        "h1_anticanonical": None if surface.trivial_canonical else h1_anticanonical(surface),
        "components": [
            {
                "node": c.index + 1,
                "parent": surface.forest.nodes[c.index].parent if surface.forest.nodes[c.index].is_base
                else surface.forest.nodes[c.index].parent + 1,
                "f": divisor_json(c.class_f),
                "f_squared": intersect(surface, c.class_f, c.class_f),
                "f_dual": divisor_json(c.class_f_dual),
                "e_f": divisor_json(c.class_e_f),
            }
            for c in comps
        ],
        "minus_one_divisors": [divisor_json(d) for d in minus_one],
    })
    summary = (f"{surface.base_case.name} g={surface.genus} with {surface.n} blowup{'s' if surface.n != 1 else ''}; "
               f"K^2={report['K_squared']}; {len(minus_one)} orthonormal -1 divisors")
    if bound is not None:
        classes = enumerate_minus_two_classes(surface, bound)
        report["minus_two_classes"] = {"coeff_bound": bound, "effectivity": "not decided",
                                       "classes": [divisor_json(d) for d in classes]}
        summary += f"; {len(classes)} numerical -2 classes within bound {bound}"
    report["summary"] = summary
    return report


def parse_ops(text: str) -> list[tuple[str, Optional[str]]]:
    ops = []
    for raw in text.replace(",", ";").split(";"):
        raw = raw.strip()
        if not raw:
            continue
        name, _, arg = raw.partition(":")
        name = name.strip()
        if name not in {"pullback", "shriek", "minimal-lift", "twist", "pseudo-twist-up", "pseudo-twist-down"}:
            raise ConfigError(f"unknown operation {name!r}", "--ops")
        needs_arg = name in {"twist", "pseudo-twist-up", "pseudo-twist-down"}
        if needs_arg and not arg.strip():
            raise ConfigError(f"operation {name!r} needs an argument ({name}:<value>)", "--ops")
        ops.append((name, arg.strip() or None))
    if not ops:
        raise ConfigError("empty operation chain", "--ops")
    return ops


def transform_report(config: Config, sheaf_name: str, ops_text: str) -> dict:
    entry = config.sheaf(sheaf_name)
    full = config.surface
    current = entry.sheaf
    lift_source: Optional[SheafClass] = None  # class on Y whose minimal lift is `current`
    steps = []
    for name, arg in parse_ops(ops_text):
        step: dict[str, Any] = {"op": name if arg is None else f"{name}:{arg}"}
        if name in ("pullback", "shriek", "minimal-lift"):
            if current.n != entry.stage:
                raise ConfigError(f"{name} applies to the configured stage-{entry.stage} class", "--ops")
            if name == "pullback":
                current = pullback_class(current, full)
            elif name == "shriek":
                current = shriek_class(current, full)
            else:
                if entry.lift is None:
                    raise ConfigError(f"sheaf {sheaf_name!r} has no lift datum", f"sheaves.{sheaf_name}.lift")
                lift_source = current
                current = minimal_lift_class(current, entry.lift, full)
            if name != "minimal-lift":
                lift_source = None
        elif name == "twist":
            surface = full.prefix(current.n)
            d = parse_divisor(arg, current.n, "--ops")
            current = twist_class(surface, current, d)
            lift_source = None
            step["divisor"] = divisor_json(d)
        else:
            if lift_source is None:
                raise ConfigError(f"{name} needs a preceding minimal-lift step", "--ops")
            try:
                node = int(arg)
            except ValueError:
                raise ConfigError(f"{name} needs a node number, got {arg!r}", "--ops") from None
            if not entry.stage < node <= full.n:
                raise ConfigError(f"node {node} is not blown up over stage {entry.stage}", "--ops")
            twist = pseudo_twist_up if name == "pseudo-twist-up" else pseudo_twist_down
            current, r = twist(full, lift_source, current, node - 1)
            step["r1" if name == "pseudo-twist-up" else "r2"] = r
            lift_source = None
        step["sheaf"] = sheaf_json(current)
        steps.append(step)
    report = _header("transform", config)
    report.update({
        "sheaf": sheaf_name,
        "initial": sheaf_json(entry.sheaf),
        "stage": entry.stage,
        "steps": steps,
        "summary": f"{len(steps)} operation{'s' if len(steps) != 1 else ''} on {sheaf_name}: "
                   + " -> ".join(s["op"] for s in steps),
    })
    return report


def trace_json(trace: ResolutionTrace) -> list:
    return [
        {
            "step": i + 1,
            "blowup": {"node": st.node_index + 1,
                       "parent": st.node.parent if st.node.is_base else st.node.parent + 1,
                       "multiplicity": st.node.multiplicity},
            "site": site_to_json(st.site),
            "pseudo_twist": st.direction,
            "r_value": st.r_value,
            "sheaf": sheaf_json(st.sheaf),
            "jets": jets_json(st.jets),
        }
        for i, st in enumerate(trace.steps)
    ]


def resolve_report(config: Config, sheaf_name: str) -> dict:
    entry = config.sheaf(sheaf_name)
    if entry.jets is None:
        raise ConfigError(f"sheaf {sheaf_name!r} has no jet profile", f"sheaves.{sheaf_name}.jets")
    surface = config.surface.prefix(entry.stage)
    trace = resolve_disjoint(surface, entry.sheaf, entry.jets)
    final_surface = trace.final_surface
    final = trace.final_sheaf
    meet = intersect(final_surface, final.c1, anticanonical_class(final_surface))
    report = _header("resolve", config)
    report.update({
        "sheaf": sheaf_name,
        "initial": sheaf_json(entry.sheaf),
        "initial_jets": jets_json(entry.jets),
        "initial_meet": entry.jets.total_length,
        "steps": trace_json(trace),
        "final": sheaf_json(final),
        "final_blowups": final_surface.n,
        "final_meet_anticanonical": meet,
        "disjoint": meet == 0,
        "summary": f"{len(trace.steps)} Poisson blowup{'s' if len(trace.steps) != 1 else ''} separate {sheaf_name} from the anticanonical curve",
    })
    return report


def rigidity_report(config: Config, sheaf_name: str, bound: Optional[int] = None) -> dict:
    entry = config.sheaf(sheaf_name)
    surface = config.surface.prefix(entry.stage)
    restr = entry.restriction_data()
    m = entry.sheaf
    value = chi_alpha(surface, m, m, restr)
    report = _header("rigidity", config)
    report.update({"sheaf": sheaf_name, "class": sheaf_json(m), "restriction": restr.kind.value,
                   "index_of_rigidity": value, "dim_end": entry.dim_end,
                   "conditional_on_explicit_restriction": restr.kind is RestrictionKind.EXPLICIT})
    try:
        report["leaf_tangent_dim"] = leaf_tangent_dim(surface, m, restr, entry.dim_end)
    except NegativeLength as exc:
        report["leaf_tangent_dim"] = None
        report["leaf_tangent_error"] = str(exc)
    if m.rank == 0 and restr.kind is RestrictionKind.DISJOINT:
        cand = is_rigid_candidate(surface, m, restr, bound or DEFAULT_COEFF_BOUND)
        report.update({
            "numeric_rigid": cand.numeric_rigid,
            "c1_squared": cand.c1_squared,
            "c1_dot_K": cand.c1_dot_k,
            "in_minus_two_search": cand.in_minus_two_search,
            "coeff_bound": cand.coeff_bound,
            "disclaimer": cand.disclaimer,
        })
        verdict = "numeric_rigid: true" if cand.numeric_rigid else "numeric_rigid: false"
    else:
        report["numeric_rigid"] = None
        verdict = "rigidity test needs a rank-0 class with disjoint restriction data"
    report["summary"] = f"index of rigidity of {sheaf_name} = {value}; {verdict}"
    return report


def exceptional_report(config: Config) -> dict:
    surface = config.surface
    n = surface.n
    lattice = [{"subset": [f + 1 for f in subset], "divisor": divisor_json(d),
                "D_dot_complement": intersect(surface, d, DivisorClass(0, 0, (1,) * n) - d),
                "D_squared": intersect(surface, d, d)}
               for subset, d in iter_subsheaf_lattice(surface)]
    components = []
    for f in range(n):
        p, i = projective_class(surface, f), injective_class(surface, f)
        components.append({
            "node": f + 1,
            "projective": {"c1": divisor_json(p.c1), "multiplicities": list(composition_multiplicities(surface, p.c1))},
            "injective": {"c1": divisor_json(i.c1), "multiplicities": list(i.multiplicities)},
            "jet_degree": jet_degree(surface, f),
        })
    chain = chain_for_ordering(surface, range(n))
    report = _header("exceptional", config)
    report.update({
        "components": components,
        "hom_length": [[hom_length(surface, f, g) for g in range(n)] for f in range(n)],
        "subsheaf_lattice": lattice,
        "lattice_size": len(lattice),
        "chain_count": chain_count(surface),
        "forest_order_chain": [{"c1": divisor_json(e.c1), "multiplicities": list(e.multiplicities)}
                               for e in chain],
        "summary": f"{n} exceptional component{'s' if n != 1 else ''}; {len(lattice)} exceptional subsheaves of "
                   f"pi^!O/O; {chain_count(surface)} maximal chain{'s' if chain_count(surface) != 1 else ''}",
    })
    return report

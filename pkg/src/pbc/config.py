"""JSON configuration documents.

Node numbers in configs and reports are 1-based (matching the labels
``e1 .. en``); the engine API is 0-based.  Conversion happens only here and in
:mod:`pbc.report`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from .errors import ConfigError, PbcError
from .kclass import LiftDatum, SheafClass
from .lattice import BlowupForest, BlowupNode, DivisorClass
from .pseudo_twist import NODE_PREFIX, JetEntry, JetProfile
from .rigidity import RestrictionData, RestrictionKind
from .surface import BaseCase, Subcase, SurfaceModel

DEFAULT_COEFF_BOUND = 5


@dataclass(frozen=True)
class SheafEntry:
    name: str
    sheaf: SheafClass
    stage: int
    lift: Optional[LiftDatum] = None
    jets: Optional[JetProfile] = None
    restriction: Optional[RestrictionData] = None
    dim_end: int = 1

    def restriction_data(self) -> RestrictionData:
        if self.restriction is not None:
            return self.restriction
        if self.jets is not None and len(self.jets):
            return RestrictionData.transverse(self.jets)
        return RestrictionData.disjoint()


@dataclass(frozen=True)
class Config:
    surface: SurfaceModel
    sheaves: dict[str, SheafEntry] = field(default_factory=dict)
    coeff_bound: Optional[int] = None
    output_format: str = "json"

    def sheaf(self, name: str) -> SheafEntry:
        if name not in self.sheaves:
            known = ", ".join(sorted(self.sheaves)) or "none"
            raise ConfigError(f"unknown sheaf {name!r} (known: {known})", "sheaves")
        return self.sheaves[name]


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(s|f|e(\d+))")


def parse_divisor(text: str, n: int, path: str = "divisor") -> DivisorClass:
    """Parse a linear expression such as ``"2s - f + e1 - 3e2"`` (1-based ``e`` labels)."""
    compact = text.replace(" ", "")
    if compact in ("", "0"):
        return DivisorClass.zero(n)
    pos, s, f, e = 0, 0, 0, [0] * n
    for m in _TERM.finditer(compact):
        if m.start() != pos or (pos and not m.group(1)):
            raise ConfigError(f"cannot parse divisor {text!r}", path)
        pos = m.end()
        coeff = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
        if m.group(3) == "s":
            s += coeff
        elif m.group(3) == "f":
            f += coeff
        else:
            i = int(m.group(4))
            if not 1 <= i <= n:
                raise ConfigError(f"e{i} does not exist on a surface with {n} blowups", path)
            e[i - 1] += coeff
    if pos != len(compact):
        raise ConfigError(f"cannot parse divisor {text!r}", path)
    return DivisorClass(s, f, tuple(e))


def divisor_to_json(d: DivisorClass) -> dict:
    return {"s": d.s, "f": d.f, "e": list(d.e)}


def _divisor_from_json(raw: Any, n: int, path: str) -> DivisorClass:
    if isinstance(raw, str):
        return parse_divisor(raw, n, path)
    if not isinstance(raw, dict):
        raise ConfigError("expected a divisor string or an object with s, f, e", path)
    unknown = set(raw) - {"s", "f", "e"}
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}", path)
    e = raw.get("e", [0] * n)
    if not isinstance(e, list) or len(e) != n:
        raise ConfigError(f"e must be a list of {n} integers", f"{path}.e")
    return DivisorClass(_int(raw.get("s", 0), f"{path}.s"), _int(raw.get("f", 0), f"{path}.f"),
                        tuple(_int(c, f"{path}.e[{i}]") for i, c in enumerate(e)))


def _int(value: Any, path: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", path)
    if minimum is not None and value < minimum:
        raise ConfigError(f"must be >= {minimum}, got {value}", path)
    return value


def _obj(value: Any, path: str, allowed: set[str]) -> dict:
    if not isinstance(value, dict):
        raise ConfigError("expected an object", path)
    unknown = set(value) - allowed
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}", path)
    return value


def site_from_json(site: Any, n: int, path: str) -> str:
    if not isinstance(site, str) or not site:
        raise ConfigError("jet site must be a nonempty string", path)
    if site.startswith(NODE_PREFIX):
        try:
            k = int(site[len(NODE_PREFIX):])
        except ValueError:
            raise ConfigError(f"bad node site {site!r}", path) from None
        if not 1 <= k <= n:
            raise ConfigError(f"jet site {site!r} names a node that does not exist", path)
        return f"{NODE_PREFIX}{k - 1}"
    return site


def site_to_json(site: str) -> str:
    if site.startswith(NODE_PREFIX):
        return f"{NODE_PREFIX}{int(site[len(NODE_PREFIX):]) + 1}"
    return site


def _surface_from_json(doc: dict) -> SurfaceModel:
    raw = _obj(doc.get("surface"), "surface", {"base_case", "genus", "subcase", "chi_structure"})
    try:
        base_case = BaseCase[raw.get("base_case", "")]
    except KeyError:
        names = ", ".join(b.name for b in BaseCase)
        raise ConfigError(f"base_case must be one of {names}", "surface.base_case") from None
    default_genus = 1 if base_case is BaseCase.GENUS1_PRODUCT else 0
    genus = _int(raw.get("genus", default_genus), "surface.genus", 0)
    subcase = None
    if raw.get("subcase") is not None:
        try:
            subcase = Subcase(raw["subcase"])
        except ValueError:
            raise ConfigError(f"unknown Kodaira subcase {raw['subcase']!r}", "surface.subcase") from None
    extra = {}
    if "chi_structure" in raw:
        if base_case is not BaseCase.TRIVIAL_CANONICAL:
            raise ConfigError("chi_structure is only configurable for TRIVIAL_CANONICAL", "surface.chi_structure")
        extra["trivial_canonical_chi"] = _int(raw["chi_structure"], "surface.chi_structure")

    blowups = doc.get("blowups", [])
    if not isinstance(blowups, list):
        raise ConfigError("expected a list", "blowups")
    nodes = []
    for i, b in enumerate(blowups):
        path = f"blowups[{i}]"
        b = _obj(b, path, {"parent", "on_anticanonical", "multiplicity"})
        parent = b.get("parent")
        if isinstance(parent, str) and parent:
            pass
        elif isinstance(parent, int) and not isinstance(parent, bool):
            if not 1 <= parent <= i:
                raise ConfigError(f"node {i + 1}: parent {parent} is not an earlier node (1..{i})", f"{path}.parent")
            parent -= 1
        else:
            raise ConfigError(f"node {i + 1}: parent must be a base-site label or an earlier node number",
                              f"{path}.parent")
        on_ac = b.get("on_anticanonical", True)
        if not isinstance(on_ac, bool):
            raise ConfigError("expected true or false", f"{path}.on_anticanonical")
        mult = _int(b.get("multiplicity", 1 if on_ac else 0), f"{path}.multiplicity", 0)
        nodes.append(BlowupNode(parent, on_ac, mult))

    try:
        forest = BlowupForest(tuple(nodes))
        return SurfaceModel(base_case, genus, forest, subcase, **extra)
    except PbcError as exc:
        if isinstance(exc, ConfigError) and exc.path:
            raise
        msg = re.sub(r"node (\d+)", lambda m: f"node {int(m.group(1)) + 1}", str(exc))
        raise type(exc)(msg) from None


def _sheaf_from_json(name: str, raw: Any, surface: SurfaceModel) -> SheafEntry:
    path = f"sheaves.{name}"
    raw = _obj(raw, path, {"rank", "c1", "chi", "stage", "lift", "jets", "restriction", "dim_end"})
    stage = _int(raw.get("stage", surface.n), f"{path}.stage", 0)
    if stage > surface.n:
        raise ConfigError(f"stage {stage} exceeds the {surface.n} configured blowups", f"{path}.stage")
    if "chi" not in raw or "rank" not in raw:
        raise ConfigError("rank and chi are required", path)
    c1 = _divisor_from_json(raw.get("c1", "0"), stage, f"{path}.c1")
    sheaf = SheafClass(_int(raw["rank"], f"{path}.rank", 0), c1, _int(raw["chi"], f"{path}.chi"))

    lift = None
    if "lift" in raw:
        ld = _obj(raw["lift"], f"{path}.lift", {str(k) for k in range(1, surface.n + 1)})
        mults = {}
        for key, m in ld.items():
            k = int(key)
            if k <= stage:
                raise ConfigError(f"node {k} is already blown up at stage {stage}", f"{path}.lift.{key}")
            mults[k - 1] = _int(m, f"{path}.lift.{key}", 0)
        lift = LiftDatum(mults)

    jets = None
    if "jets" in raw:
        if not isinstance(raw["jets"], list):
            raise ConfigError("expected a list", f"{path}.jets")
        entries = []
        for i, j in enumerate(raw["jets"]):
            jp = f"{path}.jets[{i}]"
            j = _obj(j, jp, {"site", "length", "on_anticanonical"})
            on_ac = j.get("on_anticanonical", True)
            if not isinstance(on_ac, bool):
                raise ConfigError("expected true or false", f"{jp}.on_anticanonical")
            entries.append(JetEntry(site_from_json(j.get("site"), stage, f"{jp}.site"),
                                    _int(j.get("length"), f"{jp}.length", 1), on_ac))
        jets = JetProfile(tuple(entries))

    restriction = None
    if "restriction" in raw:
        r = raw["restriction"]
        if r == "disjoint":
            restriction = RestrictionData.disjoint()
        elif r == "jets":
            if jets is None:
                raise ConfigError("restriction 'jets' needs a jets list", f"{path}.restriction")
            restriction = RestrictionData.transverse(jets)
        else:
            r = _obj(r, f"{path}.restriction", {"hom_dim", "ext_minus1_dim"})
            restriction = RestrictionData.explicit(
                _int(r.get("hom_dim", 0), f"{path}.restriction.hom_dim", 0),
                _int(r.get("ext_minus1_dim", 0), f"{path}.restriction.ext_minus1_dim", 0))

    dim_end = _int(raw.get("dim_end", 1), f"{path}.dim_end", 1)
    return SheafEntry(name, sheaf, stage, lift, jets, restriction, dim_end)


def config_from_dict(doc: Any) -> Config:
    doc = _obj(doc, "<root>", {"surface", "blowups", "sheaves", "options"})
    if "surface" not in doc:
        raise ConfigError("missing surface block", "surface")
    surface = _surface_from_json(doc)
    raw_sheaves = _obj(doc.get("sheaves", {}), "sheaves", set(doc.get("sheaves", {}) or {}))
    sheaves = {name: _sheaf_from_json(name, raw, surface) for name, raw in sorted(raw_sheaves.items())}
    opts = _obj(doc.get("options", {}), "options", {"coeff_bound", "format"})
    bound = None
    if "coeff_bound" in opts:
        bound = _int(opts["coeff_bound"], "options.coeff_bound", 1)
    fmt = opts.get("format", "json")
    if fmt != "json":
        raise ConfigError("only the 'json' output format is supported", "options.format")
    return Config(surface, sheaves, bound, fmt)


def load_config(path: str | Path) -> Config:
    text = Path(path).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from None
    return config_from_dict(doc)


def config_to_dict(config: Config) -> dict:
    surface = config.surface
    sblock: dict[str, Any] = {"base_case": surface.base_case.name, "genus": surface.genus}
    if surface.subcase is not None:
        sblock["subcase"] = surface.subcase.value
    if surface.trivial_canonical:
        sblock["chi_structure"] = surface.trivial_canonical_chi
    blowups = []
    for node in surface.forest.nodes:
        blowups.append({
            "parent": node.parent if node.is_base else node.parent + 1,
            "on_anticanonical": node.on_anticanonical,
            "multiplicity": node.multiplicity,
        })
    sheaves = {}
    for name, entry in sorted(config.sheaves.items()):
        out: dict[str, Any] = {
            "rank": entry.sheaf.rank,
            "c1": divisor_to_json(entry.sheaf.c1),
            "chi": entry.sheaf.chi,
            "stage": entry.stage,
            "dim_end": entry.dim_end,
        }
        if entry.lift is not None:
            out["lift"] = {str(k + 1): m for k, m in entry.lift.multiplicities.items()}
        if entry.jets is not None:
            out["jets"] = [{"site": site_to_json(j.site), "length": j.length,
                            "on_anticanonical": j.on_anticanonical} for j in entry.jets.entries]
        r = entry.restriction
        if r is not None:
            if r.kind is RestrictionKind.DISJOINT:
                out["restriction"] = "disjoint"
            elif r.kind is RestrictionKind.TRANSVERSE_JETS:
                out["restriction"] = "jets"
            else:
                out["restriction"] = {"hom_dim": r.hom_dim, "ext_minus1_dim": r.ext_minus1_dim}
        sheaves[name] = out
    options: dict[str, Any] = {"format": config.output_format}
    if config.coeff_bound is not None:
        options["coeff_bound"] = config.coeff_bound
    return {"surface": sblock, "blowups": blowups, "sheaves": sheaves, "options": options}


def dump_config(config: Config) -> str:
    return json.dumps(config_to_dict(config), indent=2, sort_keys=True) + "\n"

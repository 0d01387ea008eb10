"""JSON schemas for groups, starters, certificates and search outcomes.

Starter schema::

    {"group": {"factors": [m1, ...]},
     "subgroup": {"order": h} | {"generators": [[c1, ...], ...]},
     "pairs": [[x, y], ...]}

Elements of cyclic groups serialize as bare integers, otherwise as
coordinate lists.  Unknown keys are ignored so corpus files can carry
metadata.  Parsing raises SchemaError with the offending location.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import FrameStarterError, SchemaError
from .groups import Element, GroupSpec, SubgroupSpec, cyclic_subgroup, generated_subgroup
from .starters import FrameStarter, VerificationReport, make_starter
from .theory import NonexistenceCertificate
from .search import SearchConfig, SearchOutcome


def _expect(obj: Any, kind: type, location: str) -> Any:
    if not isinstance(obj, kind):
        raise SchemaError(f"expected {kind.__name__}, got {type(obj).__name__}",
                          location)
    return obj


def group_to_obj(group: GroupSpec) -> dict:
    return {"factors": list(group.factors)}


def group_from_obj(obj: Any, location: str = "$.group") -> GroupSpec:
    _expect(obj, dict, location)
    factors = _expect(obj.get("factors"), list, f"{location}.factors")
    if not factors or not all(isinstance(m, int) for m in factors):
        raise SchemaError("factors must be a non-empty list of integers",
                          f"{location}.factors")
    try:
        return GroupSpec(tuple(factors))
    except FrameStarterError as exc:
        raise SchemaError(str(exc), f"{location}.factors") from exc


def subgroup_to_obj(sub: SubgroupSpec) -> dict:
    if sub.group.is_cyclic:
        return {"order": sub.order}
    return {"generators": [list(x.coords) for x in sub.generators]}


def subgroup_from_obj(group: GroupSpec, obj: Any,
                      location: str = "$.subgroup") -> SubgroupSpec:
    _expect(obj, dict, location)
    if "order" in obj:
        order = _expect(obj["order"], int, f"{location}.order")
        try:
            return cyclic_subgroup(group, order)
        except FrameStarterError as exc:
            raise SchemaError(str(exc), f"{location}.order") from exc
    if "generators" in obj:
        gens_obj = _expect(obj["generators"], list, f"{location}.generators")
        try:
            gens = [_element_from_obj(group, g, f"{location}.generators[{i}]")
                    for i, g in enumerate(gens_obj)]
            return generated_subgroup(group, gens)
        except FrameStarterError as exc:
            raise SchemaError(str(exc), f"{location}.generators") from exc
    raise SchemaError("need either 'order' or 'generators'", location)


def _element_to_obj(group: GroupSpec, x: Element):
    return x.coords[0] if group.is_cyclic else list(x.coords)


def _element_from_obj(group: GroupSpec, obj: Any, location: str) -> Element:
    if isinstance(obj, int):
        if not group.is_cyclic:
            raise SchemaError("bare integer element in a non-cyclic group",
                              location)
        return group.element(obj)
    if isinstance(obj, list) and all(isinstance(c, int) for c in obj):
        try:
            return group.element(obj)
        except FrameStarterError as exc:
            raise SchemaError(str(exc), location) from exc
    raise SchemaError("element must be an integer or list of integers", location)


def starter_to_obj(s: FrameStarter) -> dict:
    return {
        "group": group_to_obj(s.group),
        "subgroup": subgroup_to_obj(s.subgroup),
        "pairs": [[_element_to_obj(s.group, p.first),
                   _element_to_obj(s.group, p.second)] for p in s.pairs],
    }


def starter_from_obj(obj: Any, location: str = "$") -> FrameStarter:
    _expect(obj, dict, location)
    group = group_from_obj(obj.get("group"), f"{location}.group")
    sub = subgroup_from_obj(group, obj.get("subgroup"), f"{location}.subgroup")
    pairs_obj = _expect(obj.get("pairs"), list, f"{location}.pairs")
    raw = []
    for i, entry in enumerate(pairs_obj):
        loc = f"{location}.pairs[{i}]"
        entry = _expect(entry, list, loc)
        if len(entry) != 2:
            raise SchemaError("a pair needs exactly two elements", loc)
        raw.append((_element_from_obj(group, entry[0], f"{loc}[0]"),
                    _element_from_obj(group, entry[1], f"{loc}[1]")))
    try:
        return make_starter(group, sub, raw)
    except FrameStarterError as exc:
        raise SchemaError(str(exc), f"{location}.pairs") from exc


def load_starter(path: str | Path) -> FrameStarter:
    path = Path(path)
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", str(path)) from exc
    return starter_from_obj(obj)


def dump_starter(s: FrameStarter, path: str | Path):
    Path(path).write_text(json.dumps(starter_to_obj(s), indent=1) + "\n",
                          encoding="utf-8")


def report_to_obj(report: VerificationReport) -> dict:
    out = {
        "is_frame": report.is_frame,
        "is_strong": report.is_strong,
        "is_skew": report.is_skew,
        "witness": report.witness,
    }
    if report.witnesses:
        out["witnesses"] = list(report.witnesses)
    return out


def certificate_to_obj(cert: NonexistenceCertificate) -> dict:
    return {
        "type": str(cert.starter_type),
        "level": cert.level,
        "theorem": cert.theorem,
        "statement": cert.statement,
        "conclusive": cert.conclusive,
    }


def config_to_obj(cfg: SearchConfig) -> dict:
    return {
        "type": str(cfg.target_type),
        "property": cfg.property,
        "mode": cfg.mode,
        "node_budget": cfg.node_budget,
        "worker_count": cfg.worker_count,
        "symmetry_reduction": cfg.symmetry_reduction,
    }


def outcome_to_obj(outcome: SearchOutcome) -> dict:
    return {
        "result": outcome.result,
        "nodes_visited": outcome.nodes_visited,
        "wall_time_s": round(outcome.wall_time, 6),
        "starters": [starter_to_obj(s) for s in outcome.starters],
        "config": config_to_obj(outcome.config),
    }

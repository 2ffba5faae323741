"""Report assembly for workbench files and the JSON / DOT emitters."""
from __future__ import annotations

from .dsl import MapDecl, SpaceDecl, SupportDecl, ObjectDecl, WorkbenchFile, iter_decls
from .errors import InputError
from .finspace import FinSpace
from .report import Property, Report, fmt_set
from .rickard import (
    check_extension_axioms, eta_pullback_extension, extended_support, gamma_point_support,
    idempotent_identities_check, is_extension_faithful,
)
from .suppdata import PULLBACK, PUSHFORWARD, SupportDatum, support_report

FORMATS = ("json", "dot")


def _order_strings(space: FinSpace) -> list[str]:
    return [f"{a}<{b}" for a, b in space.order_pairs()]


def instance_block(wb: WorkbenchFile) -> dict:
    """Declared structures, with orders reduced to covering relations."""
    block: dict = {"spaces": {}, "maps": {}, "supports": {}, "objects": {}}
    for d in iter_decls(wb, SpaceDecl):
        sp = wb.spaces[d.name]
        block["spaces"][d.name] = {"points": list(sp.points), "order": _order_strings(sp)}
    for d in iter_decls(wb, MapDecl):
        block["maps"][d.name] = {"from": d.source, "to": d.target,
                                 "assign": wb.maps[d.name].as_dict()}
    for d in iter_decls(wb, SupportDecl):
        sd = wb.supports[d.name]
        block["supports"][d.name] = {"kind": d.kind, "base": wb.space_name(sd.base),
                                     "target": wb.space_name(sd.target)}
    for d in iter_decls(wb, ObjectDecl):
        obj = wb.objects[d.name]
        block["objects"][d.name] = {"expr": obj.describe(), "supp": fmt_set(obj.base, obj.supp)}
    for key in [k for k, v in block.items() if not v]:
        del block[key]
    return block


def _extension_entry(sd: SupportDatum) -> Property | None:
    applicable = sd.kind == PUSHFORWARD or bool(sd.tensorial and sd.realizing and sd.faithful)
    if not applicable:
        return None
    v = is_extension_faithful(sd)
    return Property("extension-faithful", v.holds, v.witness, support=sd.name)


def check_support(sd: SupportDatum) -> tuple[list[Property], list[dict]]:
    """Properties and derived maps reported by ``check`` for one support."""
    props = support_report(sd)
    comps: list[dict] = []
    ext = _extension_entry(sd)
    if ext is not None:
        props.append(ext)
    if sd.tensorial and sd.realizing:
        comps.append({"support": sd.name, "eta": sd.eta_map.as_dict()})
        comp = sd.comparative
        if comp:
            comps.append({"support": sd.name, "rho": comp.value.as_dict()})
    return props, comps


def select_supports(wb: WorkbenchFile, names=None) -> list[SupportDatum]:
    if names:
        return [wb.support(n) for n in names]
    return [wb.supports[d.name] for d in iter_decls(wb, SupportDecl)]


def check_report(wb: WorkbenchFile, names=None) -> Report:
    rep = Report(instance=instance_block(wb))
    for sd in select_supports(wb, names):
        props, comps = check_support(sd)
        rep.extend(props)
        rep.computations.extend(comps)
    return rep


def full_report(wb: WorkbenchFile, names=None) -> Report:
    """``check`` plus extension axioms, idempotent identities and object supports."""
    rep = Report(instance=instance_block(wb))
    sds = select_supports(wb, names)
    for sd in sds:
        props, comps = check_support(sd)
        for p in check_extension_axioms(sd) + idempotent_identities_check(sd):
            p.support = sd.name
            props.append(p)
        rep.extend(props)
        rep.computations.extend(comps)
        X = sd.target
        rep.computations.append({
            "support": sd.name,
            "gammapt": {X.points[x]: fmt_set(sd.base, gamma_point_support(sd, x))
                        for x in range(X.n)},
        })
    for d in iter_decls(wb, ObjectDecl):
        rep.computations.extend(object_supports(wb, d.name, sds))
    return rep


def object_supports(wb: WorkbenchFile, name: str, sds=None) -> list[dict]:
    """``sigma~`` (and ``sigma^`` for pullbacks) of one object under each matching support."""
    obj = wb.object(name)
    out = []
    for sd in sds if sds is not None else select_supports(wb):
        if sd.base != obj.base:
            continue
        entry = {"object": name, "support": sd.name, "supp": fmt_set(obj.base, obj.supp),
                 "extended": fmt_set(sd.target, extended_support(sd, obj))}
        if sd.kind == PULLBACK:
            entry["hat"] = fmt_set(sd.target, eta_pullback_extension(sd, obj))
        out.append(entry)
    return out


def to_dot(wb: WorkbenchFile) -> str:
    """One digraph; a cluster per space with covering edges drawn from generic to
    special point, and dashed edges for declared maps."""
    lines = ["digraph ttg {", "  node [shape=plaintext];"]
    for d in iter_decls(wb, SpaceDecl):
        sp = wb.spaces[d.name]
        lines.append(f'  subgraph "cluster_{d.name}" {{')
        lines.append(f'    label="{d.name}";')
        for p in sp.points:
            lines.append(f'    "{d.name}.{p}" [label="{p}"];')
        for q, p in sp.covers:
            lines.append(f'    "{d.name}.{sp.points[q]}" -> "{d.name}.{sp.points[p]}";')
        lines.append("  }")
    for d in iter_decls(wb, MapDecl):
        for a, b in wb.maps[d.name].as_dict().items():
            lines.append(f'  "{d.source}.{a}" -> "{d.target}.{b}" '
                         f'[style=dashed, constraint=false, label="{d.name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit(obj, fmt: str) -> bytes:
    """Serialize a ``Report`` (json) or a ``WorkbenchFile`` (json report or dot)."""
    if fmt not in FORMATS:
        raise InputError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if fmt == "json":
        rep = obj if isinstance(obj, Report) else full_report(obj)
        return rep.dumps().encode("utf-8")
    if not isinstance(obj, WorkbenchFile):
        raise InputError("dot output needs a workbench file")
    return to_dot(obj).encode("utf-8")


def format_text(rep: Report) -> str:
    """Human-readable listing of a report."""
    out = []
    current = object()
    for p in rep.properties:
        if p.support != current:
            current = p.support
            if p.support is not None:
                out.append(f"support {p.support}")
        status = "pass" if p.verdict else ("info" if p.informational else "FAIL")
        line = f"  {p.name:<32} {status}"
        if p.witness is not None:
            line += f"  witness {p.witness}"
        out.append(line)
    for c in rep.computations:
        if "eta" in c or "rho" in c:
            key = "eta" if "eta" in c else "rho"
            out.append(f"  {c['support']}: {key} " +
                       " ".join(f"{a}->{b}" for a, b in c[key].items()))
    return "\n".join(out) + "\n"


__all__ = ["FORMATS", "check_report", "emit", "format_text", "full_report",
           "instance_block", "object_supports", "to_dot"]

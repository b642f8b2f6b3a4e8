"""The JSON bundle format: one self-contained document naming the
classifications, theories, infomorphisms and systems of an analysis.

Parsing resolves every cross-reference and runs each module's checker,
so a returned bundle is fully valid.  Serialization is canonical (sorted
keys, sorted set renderings) and round-trips.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .classification import (
    Classification,
    Infomorphism,
    check_infomorphism,
    valid_identifier,
    validate_classification,
)
from .diagrams import ShapeGraph
from .errors import BundleError, IfkError
from .integration import InformationSystem, validate_system
from .theories import Sequent, SequentTheory, sequent_key

TOP_LEVEL_KEYS = ("classifications", "theories", "infomorphisms", "systems")


@dataclass
class Bundle:
    classifications: dict[str, Classification] = field(default_factory=dict)
    theories: dict[str, SequentTheory] = field(default_factory=dict)
    infomorphisms: dict[str, Infomorphism] = field(default_factory=dict)
    systems: dict[str, InformationSystem] = field(default_factory=dict)


def parse_sequent(literal: str) -> Sequent:
    """Command-line sequent literal: ``a, b |- c`` (either side may be empty)."""
    if literal.count("|-") != 1:
        raise BundleError(f"sequent literal needs exactly one '|-': {literal!r}")
    left, right = literal.split("|-")

    def side(text: str) -> frozenset[str]:
        names = [part.strip() for part in text.split(",") if part.strip()]
        for name in names:
            if not valid_identifier(name):
                raise BundleError(f"bad identifier in sequent literal: {name!r}")
        return frozenset(names)

    return Sequent(side(left), side(right))


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise BundleError(message)


def _ident_list(raw, where: str) -> list[str]:
    _expect(isinstance(raw, list), f"{where}: expected a list")
    seen = set()
    for name in raw:
        _expect(valid_identifier(name), f"{where}: bad identifier {name!r}")
        _expect(name not in seen, f"{where}: duplicate identifier {name!r}")
        seen.add(name)
    return list(raw)


def _str_map(raw, where: str) -> dict[str, str]:
    _expect(isinstance(raw, dict), f"{where}: expected an object")
    for k, v in raw.items():
        _expect(valid_identifier(k), f"{where}: bad identifier {k!r}")
        _expect(valid_identifier(v), f"{where}: bad identifier {v!r}")
    return dict(raw)


def _parse_classification(name: str, raw, where: str) -> Classification:
    _expect(isinstance(raw, dict), f"{where}: expected an object")
    instances = _ident_list(raw.get("instances", []), f"{where}.instances")
    types = _ident_list(raw.get("types", []), f"{where}.types")
    incidence_raw = raw.get("incidence", [])
    _expect(isinstance(incidence_raw, list), f"{where}.incidence: expected a list")
    incidence = []
    for k, pair in enumerate(incidence_raw):
        _expect(
            isinstance(pair, list)
            and len(pair) == 2
            and all(isinstance(x, str) for x in pair),
            f"{where}.incidence[{k}]: expected an [instance, type] pair",
        )
        incidence.append((pair[0], pair[1]))
    c = Classification(name, frozenset(instances), frozenset(types), frozenset(incidence))
    result = validate_classification(c)
    if not result.ok:
        raise BundleError(f"{where}: {result.defects[0]}")
    return c


def _parse_sequent_obj(raw, where: str) -> Sequent:
    _expect(isinstance(raw, dict), f"{where}: expected an object")
    _expect(set(raw) <= {"ant", "con"}, f"{where}: unknown keys {sorted(set(raw) - {'ant', 'con'})}")
    return Sequent(
        frozenset(_ident_list(raw.get("ant", []), f"{where}.ant")),
        frozenset(_ident_list(raw.get("con", []), f"{where}.con")),
    )


def _parse_theory(raw, where: str) -> SequentTheory:
    _expect(isinstance(raw, dict), f"{where}: expected an object")
    types = _ident_list(raw.get("types", []), f"{where}.types")
    axioms_raw = raw.get("axioms", [])
    _expect(isinstance(axioms_raw, list), f"{where}.axioms: expected a list")
    axioms = [
        _parse_sequent_obj(a, f"{where}.axioms[{k}]") for k, a in enumerate(axioms_raw)
    ]
    try:
        return SequentTheory(frozenset(types), frozenset(axioms))
    except IfkError as exc:
        raise BundleError(f"{where}: {exc}") from exc


def parse_bundle(text: str) -> Bundle:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    _expect(isinstance(raw, dict), "bundle: expected a JSON object")
    unknown = set(raw) - set(TOP_LEVEL_KEYS)
    _expect(not unknown, f"bundle: unknown top-level keys {sorted(unknown)}")

    bundle = Bundle()
    for name, body in (raw.get("classifications") or {}).items():
        _expect(valid_identifier(name), f"classifications: bad name {name!r}")
        bundle.classifications[name] = _parse_classification(
            name, body, f"classifications.{name}"
        )
    for name, body in (raw.get("theories") or {}).items():
        _expect(valid_identifier(name), f"theories: bad name {name!r}")
        bundle.theories[name] = _parse_theory(body, f"theories.{name}")
    for name, body in (raw.get("infomorphisms") or {}).items():
        where = f"infomorphisms.{name}"
        _expect(valid_identifier(name), f"infomorphisms: bad name {name!r}")
        _expect(isinstance(body, dict), f"{where}: expected an object")
        for endpoint in ("source", "target"):
            ref = body.get(endpoint)
            _expect(
                isinstance(ref, str) and ref in bundle.classifications,
                f"{where}.{endpoint}: dangling reference to classification {ref!r}",
            )
        info = Infomorphism(
            name=name,
            source=bundle.classifications[body["source"]],
            target=bundle.classifications[body["target"]],
            type_map=_str_map(body.get("type_map", {}), f"{where}.type_map"),
            instance_map=_str_map(body.get("instance_map", {}), f"{where}.instance_map"),
        )
        try:
            result = check_infomorphism(info)
        except IfkError as exc:
            raise BundleError(f"{where}: {exc}") from exc
        if not result.ok:
            b, t, side = result.defects[0]
            raise BundleError(f"{where}: invariance fails at ({b}, {t}, {side})")
        bundle.infomorphisms[name] = info
    for name, body in (raw.get("systems") or {}).items():
        where = f"systems.{name}"
        _expect(valid_identifier(name), f"systems: bad name {name!r}")
        bundle.systems[name] = _parse_system(bundle, body, where)
    return bundle


def _parse_system(bundle: Bundle, raw, where: str) -> InformationSystem:
    _expect(isinstance(raw, dict), f"{where}: expected an object")
    nodes_raw = raw.get("nodes", {})
    _expect(isinstance(nodes_raw, dict), f"{where}.nodes: expected an object")
    node_theory: dict[str, SequentTheory] = {}
    node_cls: dict[str, Classification | None] = {}
    for node, body in nodes_raw.items():
        _expect(valid_identifier(node), f"{where}.nodes: bad name {node!r}")
        _expect(isinstance(body, dict), f"{where}.nodes.{node}: expected an object")
        tname = body.get("theory")
        _expect(
            isinstance(tname, str) and tname in bundle.theories,
            f"{where}.nodes.{node}: dangling reference to theory {tname!r}",
        )
        node_theory[node] = bundle.theories[tname]
        cname = body.get("classification")
        if cname is not None:
            _expect(
                isinstance(cname, str) and cname in bundle.classifications,
                f"{where}.nodes.{node}: dangling reference to classification {cname!r}",
            )
            node_cls[node] = bundle.classifications[cname]
    edges_raw = raw.get("edges", [])
    _expect(isinstance(edges_raw, list), f"{where}.edges: expected a list")
    edges = []
    edge_type_map = {}
    edge_instance_map = {}
    for k, body in enumerate(edges_raw):
        ewhere = f"{where}.edges[{k}]"
        _expect(isinstance(body, dict), f"{ewhere}: expected an object")
        eid, src, dst = body.get("id"), body.get("src"), body.get("dst")
        for label, value in (("id", eid), ("src", src), ("dst", dst)):
            _expect(valid_identifier(value), f"{ewhere}.{label}: bad identifier {value!r}")
        _expect(src in node_theory, f"{ewhere}.src: unknown node {src!r}")
        _expect(dst in node_theory, f"{ewhere}.dst: unknown node {dst!r}")
        edges.append((eid, src, dst))
        edge_type_map[eid] = _str_map(body.get("type_map", {}), f"{ewhere}.type_map")
        imap = body.get("instance_map")
        if imap is not None:
            edge_instance_map[eid] = _str_map(imap, f"{ewhere}.instance_map")
    try:
        system = InformationSystem(
            shape=ShapeGraph(frozenset(node_theory), frozenset(edges)),
            node_theory=node_theory,
            edge_type_map=edge_type_map,
            node_cls=node_cls,
            edge_instance_map=edge_instance_map,
        )
    except IfkError as exc:
        raise BundleError(f"{where}: {exc}") from exc
    result = validate_system(system)
    if not result.ok:
        raise BundleError(f"{where}: invalid system: {result.defects[0]}")
    return system


# ---------------------------------------------------------------------------
# canonical serialization

def sequent_to_obj(s: Sequent) -> dict:
    return {"ant": sorted(s.antecedent), "con": sorted(s.consequent)}


def _classification_to_obj(c: Classification) -> dict:
    return {
        "instances": sorted(c.instances),
        "types": sorted(c.types),
        "incidence": [[i, t] for i, t in sorted(c.incidence)],
    }


def _theory_to_obj(t: SequentTheory) -> dict:
    return {
        "types": sorted(t.types),
        "axioms": [sequent_to_obj(a) for a in sorted(t.axioms, key=sequent_key)],
    }


def _cls_name_of(bundle: Bundle, c: Classification) -> str:
    for name, known in bundle.classifications.items():
        if known == c:
            return name
    raise IfkError(f"classification {c.name} is not part of the bundle")


def _theory_name_of(bundle: Bundle, t: SequentTheory) -> str:
    for name, known in bundle.theories.items():
        if known == t:
            return name
    raise IfkError("theory is not part of the bundle")


def serialize_bundle(bundle: Bundle) -> str:
    doc = {
        "classifications": {
            name: _classification_to_obj(c)
            for name, c in sorted(bundle.classifications.items())
        },
        "theories": {
            name: _theory_to_obj(t) for name, t in sorted(bundle.theories.items())
        },
        "infomorphisms": {
            name: {
                "source": _cls_name_of(bundle, f.source),
                "target": _cls_name_of(bundle, f.target),
                "type_map": dict(sorted(f.type_map.items())),
                "instance_map": dict(sorted(f.instance_map.items())),
            }
            for name, f in sorted(bundle.infomorphisms.items())
        },
        "systems": {
            name: {
                "nodes": {
                    n: {
                        "theory": _theory_name_of(bundle, s.node_theory[n]),
                        "classification": (
                            _cls_name_of(bundle, s.node_cls[n]) if n in s.node_cls else None
                        ),
                    }
                    for n in sorted(s.shape.nodes)
                },
                "edges": [
                    {
                        "id": e,
                        "src": src,
                        "dst": dst,
                        "type_map": dict(sorted(s.edge_type_map[e].items())),
                        "instance_map": (
                            dict(sorted(s.edge_instance_map[e].items()))
                            if e in s.edge_instance_map
                            else None
                        ),
                    }
                    for e, src, dst in sorted(s.shape.edges)
                ],
            }
            for name, s in sorted(bundle.systems.items())
        },
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"

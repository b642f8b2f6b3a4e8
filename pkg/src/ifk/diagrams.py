"""Finite diagrams of languages and classifications over shape graphs,
their colimits, and covering channels.

The colimit of a language diagram disjointly sums the node languages and
quotients by the identifications the edges generate.  The sum of a
classification diagram has that colimit as its types and edge-compatible
instance tuples as its instances; its legs form the universal covering
channel: any other covering channel factors through it by a unique
mediating infomorphism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .classification import Classification, Infomorphism, check_infomorphism
from .errors import CapExceeded, IfkError, ValidationResult

DEFAULT_INSTANCE_CAP = 4096


@dataclass(frozen=True)
class ShapeGraph:
    nodes: frozenset[str]
    edges: frozenset[tuple[str, str, str]]  # (edge id, source node, target node)

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        ids = [e for e, _, _ in self.edges]
        if len(set(ids)) != len(ids):
            raise IfkError("duplicate edge ids in shape graph")
        for e, src, dst in self.edges:
            if src not in self.nodes or dst not in self.nodes:
                raise IfkError(f"edge {e} has undeclared endpoint")


@dataclass(frozen=True)
class LanguageDiagram:
    shape: ShapeGraph
    node_language: Mapping[str, frozenset[str]]
    edge_map: Mapping[str, Mapping[str, str]]

    def __post_init__(self):
        object.__setattr__(
            self,
            "node_language",
            {n: frozenset(ts) for n, ts in self.node_language.items()},
        )
        object.__setattr__(self, "edge_map", {e: dict(m) for e, m in self.edge_map.items()})
        missing = self.shape.nodes - self.node_language.keys()
        if missing:
            raise IfkError(f"no language for node(s): {', '.join(sorted(missing))}")
        for e, src, dst in sorted(self.shape.edges):
            if e not in self.edge_map:
                raise IfkError(f"no type function for edge {e}")
            f = self.edge_map[e]
            dom, cod = self.node_language[src], self.node_language[dst]
            if dom - f.keys():
                raise IfkError(f"edge {e}: type function not total on the source language")
            if any(f[t] not in cod for t in dom):
                raise IfkError(f"edge {e}: type function lands outside the target language")


@dataclass(frozen=True)
class LanguageColimit:
    types: frozenset[str]
    cocone: Mapping[str, Mapping[str, str]]
    members: Mapping[str, frozenset[tuple[str, str]]]


def _find(parent: dict, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _union(parent: dict, a, b):
    ra, rb = _find(parent, a), _find(parent, b)
    if ra != rb:
        parent[ra] = rb


def class_name(node: str, typ: str) -> str:
    return f"sum:{node}.{typ}"


def colimit_language(d: LanguageDiagram) -> LanguageColimit:
    """Disjoint union of the node languages, quotiented by edge identifications.

    Class representatives are the lexicographically least (node, type)
    member, so output is identical across runs.
    """
    pairs = [
        (n, t) for n in sorted(d.shape.nodes) for t in sorted(d.node_language[n])
    ]
    parent = {p: p for p in pairs}
    for e, src, dst in sorted(d.shape.edges):
        f = d.edge_map[e]
        for t in sorted(d.node_language[src]):
            _union(parent, (src, t), (dst, f[t]))
    groups: dict[tuple[str, str], set[tuple[str, str]]] = {}
    for p in pairs:
        groups.setdefault(_find(parent, p), set()).add(p)
    members: dict[str, frozenset[tuple[str, str]]] = {}
    cocone: dict[str, dict[str, str]] = {n: {} for n in d.shape.nodes}
    for group in groups.values():
        rep = min(group)
        name = class_name(*rep)
        if name in members:
            raise IfkError(f"class name collision at {name}; rename node or type identifiers")
        members[name] = frozenset(group)
        for n, t in group:
            cocone[n][t] = name
    return LanguageColimit(frozenset(members), cocone, members)


@dataclass(frozen=True)
class ClsDiagram:
    shape: ShapeGraph
    node_cls: Mapping[str, Classification]
    edge_info: Mapping[str, Infomorphism]

    def __post_init__(self):
        object.__setattr__(self, "node_cls", dict(self.node_cls))
        object.__setattr__(self, "edge_info", dict(self.edge_info))
        missing = self.shape.nodes - self.node_cls.keys()
        if missing:
            raise IfkError(f"no classification for node(s): {', '.join(sorted(missing))}")
        for e, src, dst in sorted(self.shape.edges):
            if e not in self.edge_info:
                raise IfkError(f"no infomorphism for edge {e}")
            f = self.edge_info[e]
            if f.source != self.node_cls[src] or f.target != self.node_cls[dst]:
                raise IfkError(f"edge {e}: infomorphism endpoints do not match the shape")
            result = check_infomorphism(f)
            if not result.ok:
                raise IfkError(f"edge {e}: invariance fails at {result.defects[0]}")

    def language_diagram(self) -> LanguageDiagram:
        return LanguageDiagram(
            self.shape,
            {n: c.types for n, c in self.node_cls.items()},
            {e: dict(f.type_map) for e, f in self.edge_info.items()},
        )


@dataclass(frozen=True)
class Channel:
    core: Classification
    legs: Mapping[str, Infomorphism]

    def __post_init__(self):
        object.__setattr__(self, "legs", dict(self.legs))


def tuple_instance_name(components: Mapping[str, str]) -> str:
    return "tup:" + ",".join(f"{n}.{x}" for n, x in sorted(components.items()))


def _compatible_tuples(d: ClsDiagram) -> list[dict[str, str]]:
    """Enumerate node-indexed instance tuples compatible with every edge.

    Nodes are assigned in sorted order; an edge constraint is applied as
    soon as both its endpoints are assigned.
    """
    nodes = sorted(d.shape.nodes)
    position = {n: k for k, n in enumerate(nodes)}
    checks_at: dict[int, list[tuple[str, str, str]]] = {k: [] for k in range(len(nodes))}
    for e, src, dst in sorted(d.shape.edges):
        checks_at[max(position[src], position[dst])].append((e, src, dst))

    out: list[dict[str, str]] = []

    def extend(k: int, partial: dict[str, str]):
        if k == len(nodes):
            out.append(dict(partial))
            return
        node = nodes[k]
        for x in sorted(d.node_cls[node].instances):
            partial[node] = x
            ok = True
            for e, src, dst in checks_at[k]:
                f = d.edge_info[e]
                if f.instance_map[partial[dst]] != partial[src]:
                    ok = False
                    break
            if ok:
                extend(k + 1, partial)
            del partial[node]

    extend(0, {})
    return out


def sum_classification(d: ClsDiagram, instance_cap: int = DEFAULT_INSTANCE_CAP) -> Channel:
    """The universal covering channel of a classification diagram.

    Core types are the language-colimit classes; core instances are the
    edge-compatible tuples; a tuple falls under a class when its
    component at any member node does (invariance makes the choice of
    member immaterial).
    """
    required = math.prod(len(c.instances) for c in d.node_cls.values())
    if required > instance_cap:
        raise CapExceeded("sum classification instances", required, instance_cap)
    colim = colimit_language(d.language_diagram())
    tuples = _compatible_tuples(d)
    names = [tuple_instance_name(tup) for tup in tuples]
    if len(set(names)) != len(names):
        raise IfkError("tuple name collision; rename node or instance identifiers")

    incidence = []
    for name, tup in zip(names, tuples):
        for cls_name, group in colim.members.items():
            n0, t0 = min(group)
            if (tup[n0], t0) in d.node_cls[n0].incidence:
                incidence.append((name, cls_name))
    core = Classification(
        name="sum(" + ",".join(sorted(d.shape.nodes)) + ")",
        instances=frozenset(names),
        types=frozenset(colim.types),
        incidence=frozenset(incidence),
    )
    legs = {
        n: Infomorphism(
            name=f"leg:{n}",
            source=d.node_cls[n],
            target=core,
            type_map=dict(colim.cocone[n]),
            instance_map={name: tup[n] for name, tup in zip(names, tuples)},
        )
        for n in d.shape.nodes
    }
    return Channel(core, legs)


def verify_channel_covers(ch: Channel, d: ClsDiagram) -> ValidationResult:
    """Legs are valid infomorphisms into the core and commute with every edge."""
    if set(ch.legs) != set(d.shape.nodes):
        raise IfkError("shape mismatch: channel legs do not match the diagram nodes")
    for n in sorted(d.shape.nodes):
        leg = ch.legs[n]
        if leg.source != d.node_cls[n] or leg.target != ch.core:
            raise IfkError(f"shape mismatch: leg {n} endpoints are wrong")
    defects = []
    broken = set()
    for n in sorted(d.shape.nodes):
        try:
            result = check_infomorphism(ch.legs[n])
        except IfkError as exc:
            defects.append(("leg", n, str(exc)))
            broken.add(n)
            continue
        defects.extend(("leg", n, viol) for viol in result.defects)
    for e, src, dst in sorted(d.shape.edges):
        if src in broken or dst in broken:
            continue
        edge = d.edge_info[e]
        for t in sorted(d.node_cls[src].types):
            if ch.legs[dst].type_map[edge.type_map[t]] != ch.legs[src].type_map[t]:
                defects.append(("edge", e, "type", t))
        for z in sorted(ch.core.instances):
            if edge.instance_map[ch.legs[dst].instance_map[z]] != ch.legs[src].instance_map[z]:
                defects.append(("edge", e, "instance", z))
    return ValidationResult.from_defects(defects)


def mediating_morphism(ch: Channel, other: Channel, d: ClsDiagram) -> Infomorphism:
    """The unique infomorphism from the sum core through which ``other`` factors.

    Types are forced classwise by the legs of ``other``; instances are
    forced componentwise because the sum legs project tuples.
    """
    cover = verify_channel_covers(other, d)
    if not cover.ok:
        raise IfkError(f"channel does not cover the diagram: {cover.defects[0]}")

    type_map: dict[str, str] = {}
    for n in sorted(d.shape.nodes):
        for t in sorted(d.node_cls[n].types):
            cls = ch.legs[n].type_map[t]
            want = other.legs[n].type_map[t]
            if type_map.get(cls, want) != want:
                raise IfkError(f"no mediator: class {cls} is forced to two different types")
            type_map[cls] = want
    uncovered = ch.core.types - type_map.keys()
    if uncovered:
        raise IfkError(
            f"core types outside every leg image: {', '.join(sorted(uncovered))}"
        )

    nodes = sorted(d.shape.nodes)
    instance_map: dict[str, str] = {}
    for b in sorted(other.core.instances):
        matches = [
            z
            for z in sorted(ch.core.instances)
            if all(ch.legs[n].instance_map[z] == other.legs[n].instance_map[b] for n in nodes)
        ]
        if len(matches) != 1:
            raise IfkError(
                f"no unique mediator: instance {b} has {len(matches)} compatible tuples"
            )
        instance_map[b] = matches[0]
    return Infomorphism(
        name=f"mediator:{other.core.name}",
        source=ch.core,
        target=other.core,
        type_map=type_map,
        instance_map=instance_map,
    )

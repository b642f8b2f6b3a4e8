"""Seeded random generators shared by the property and acceptance tests."""

from __future__ import annotations

import random

from ifk import (
    Channel,
    Classification,
    ClsDiagram,
    InformationSystem,
    Infomorphism,
    Sequent,
    SequentTheory,
    ShapeGraph,
    check_infomorphism,
    compose_infomorphisms,
    intent,
    validate_system,
)
from ifk.theories import _sat


def rand_classification(
    rng: random.Random,
    max_instances: int = 3,
    max_types: int = 3,
    name: str = "C",
    min_instances: int = 0,
    min_types: int = 0,
) -> Classification:
    ni = rng.randint(min_instances, max_instances)
    nt = rng.randint(min_types, max_types)
    instances = [f"i{k}" for k in range(ni)]
    types = [f"t{k}" for k in range(nt)]
    incidence = [(i, t) for i in instances for t in types if rng.random() < 0.5]
    return Classification(name, instances, types, incidence)


def rand_sequent(rng: random.Random, types, max_side: int | None = None) -> Sequent:
    types = sorted(types)
    limit = len(types) if max_side is None else min(max_side, len(types))
    ant = rng.sample(types, rng.randint(0, limit))
    con = rng.sample(types, rng.randint(0, limit))
    return Sequent(frozenset(ant), frozenset(con))


def rand_theory(
    rng: random.Random, types, max_axioms: int = 3, max_side: int | None = None
) -> SequentTheory:
    n = rng.randint(0, max_axioms)
    return SequentTheory(
        frozenset(types), frozenset(rand_sequent(rng, types, max_side) for _ in range(n))
    )


def rand_type_map(rng: random.Random, src_types, dst_types) -> dict[str, str]:
    dst = sorted(dst_types)
    return {t: rng.choice(dst) for t in sorted(src_types)}


def rand_infomorphism(
    rng: random.Random,
    max_size: int = 3,
    surjective_instances: bool | None = None,
    max_attempts: int = 50000,
    name: str = "f",
) -> Infomorphism:
    """Rejection-sample a valid infomorphism between two random classifications.

    ``surjective_instances`` constrains the instance map: True forces a
    surjection onto the source instances, False forbids one.
    """
    for _ in range(max_attempts):
        src = rand_classification(rng, max_size, max_size, "A")
        # small targets keep the invariance constraint count low
        dst_max_inst = max_size if surjective_instances else 2
        dst = rand_classification(rng, dst_max_inst, max_size, "B")
        if src.types and not dst.types:
            continue  # total type map impossible
        if dst.instances and not src.instances:
            continue  # total instance map impossible
        src_inst, dst_inst = sorted(src.instances), sorted(dst.instances)
        tmap = rand_type_map(rng, src.types, dst.types)
        imap = {b: rng.choice(src_inst) for b in dst_inst}
        image = set(imap.values())
        if surjective_instances is True and image != set(src_inst):
            continue
        if surjective_instances is False and image == set(src_inst):
            continue
        f = Infomorphism(name, src, dst, tmap, imap)
        if check_infomorphism(f).ok:
            return f
    raise AssertionError("could not sample a valid infomorphism; widen the attempts")


def rand_infomorphism_from(
    rng: random.Random,
    src: Classification,
    max_extra_types: int = 1,
    max_instances: int = 2,
    name: str = "g",
) -> Infomorphism:
    """Construct a valid infomorphism out of ``src`` directly.

    The type map is injective, so the target incidence on image types can
    be defined by invariance; extra target types get random incidence.
    """
    dst_inst = (
        [f"z{k}" for k in range(rng.randint(1, max_instances))] if src.instances else []
    )
    imap = {z: rng.choice(sorted(src.instances)) for z in dst_inst}
    image = {t: f"u{k}" for k, t in enumerate(sorted(src.types))}
    extra = [f"v{k}" for k in range(rng.randint(0, max_extra_types))]
    incidence = [
        (z, image[t])
        for z in dst_inst
        for t in sorted(src.types)
        if (imap[z], t) in src.incidence
    ]
    incidence += [(z, v) for z in dst_inst for v in extra if rng.random() < 0.5]
    dst = Classification("D", dst_inst, list(image.values()) + extra, incidence)
    return Infomorphism(name, src, dst, image, imap)


def rand_system(
    rng: random.Random,
    max_nodes: int = 3,
    max_types: int = 3,
    max_axioms: int = 2,
    max_edges: int = 2,
    mediator_bias: float = 0.5,
) -> InformationSystem:
    """A valid information system: edges that fail the morphism condition
    are resampled a few times and then dropped."""
    n_nodes = rng.randint(1, max_nodes)
    nodes = [f"N{k}" for k in range(n_nodes)]
    theories = {}
    for k, node in enumerate(nodes):
        types = [f"{node.lower()}t{j}" for j in range(rng.randint(1, max_types))]
        if k == 0 and rng.random() < mediator_bias:
            theories[node] = SequentTheory(frozenset(types), frozenset())
        else:
            theories[node] = rand_theory(rng, types, max_axioms)
    edges: list[tuple[str, str, str]] = []
    edge_type_map: dict[str, dict[str, str]] = {}
    for k in range(rng.randint(0, max_edges)):
        src, dst = rng.choice(nodes), rng.choice(nodes)
        if src == dst:
            continue
        for _ in range(10):
            tmap = rand_type_map(rng, theories[src].types, theories[dst].types)
            eid = f"e{k}"
            probe = InformationSystem(
                shape=ShapeGraph(nodes, edges + [(eid, src, dst)]),
                node_theory=theories,
                edge_type_map={**edge_type_map, eid: tmap},
            )
            if validate_system(probe).ok:
                edges.append((eid, src, dst))
                edge_type_map[eid] = tmap
                break
    return InformationSystem(
        shape=ShapeGraph(nodes, edges), node_theory=theories, edge_type_map=edge_type_map
    )


def rand_cls_diagram(
    rng: random.Random, max_nodes: int = 3, max_size: int = 2, max_edges: int = 2
) -> ClsDiagram:
    """A valid classification diagram; edges are rejection-sampled."""
    n_nodes = rng.randint(1, max_nodes)
    nodes = [f"N{k}" for k in range(n_nodes)]
    node_cls = {
        n: rand_classification(rng, max_size, max_size, n, min_instances=1, min_types=1)
        for n in nodes
    }
    edges: list[tuple[str, str, str]] = []
    edge_info: dict[str, Infomorphism] = {}
    for k in range(rng.randint(0, max_edges)):
        src, dst = rng.choice(nodes), rng.choice(nodes)
        if src == dst:
            continue
        a, b = node_cls[src], node_cls[dst]
        for _ in range(200):
            tmap = rand_type_map(rng, a.types, b.types)
            imap = {z: rng.choice(sorted(a.instances)) for z in sorted(b.instances)}
            f = Infomorphism(f"e{k}", a, b, tmap, imap)
            if check_infomorphism(f).ok:
                edges.append((f"e{k}", src, dst))
                edge_info[f"e{k}"] = f
                break
    return ClsDiagram(ShapeGraph(nodes, edges), node_cls, edge_info)


def postcompose_channel(ch: Channel, j: Infomorphism) -> Channel:
    """Another covering channel: compose every leg with ``j`` out of the core."""
    return Channel(j.target, {n: compose_infomorphisms(leg, j) for n, leg in ch.legs.items()})


def sound_theory(rng: random.Random, c: Classification, max_axioms: int = 3) -> SequentTheory:
    """A theory every instance of ``c`` satisfies (sampled from satisfied sequents)."""
    intents = [intent(c, i) for i in sorted(c.instances)]
    axioms = []
    for _ in range(rng.randint(0, max_axioms)):
        for _ in range(50):
            s = rand_sequent(rng, c.types)
            if all(_sat(s.antecedent, s.consequent, x) for x in intents):
                axioms.append(s)
                break
    return SequentTheory(c.types, frozenset(axioms))

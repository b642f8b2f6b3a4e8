"""Direct and inverse flow of theories along type functions.

Direct flow pushes a theory forward by taking images of its axioms.
Inverse flow pulls a theory back: a source sequent counts as a theorem
exactly when its image is a theorem at the target.  In the entailment
order the two form an inverse pair, with inverse flow on the left:

    inverse_flow(f, t')  <=  t      iff      t'  <=  direct_flow(f, t)

Flows need only a bare type function; a full infomorphism enters where
instances matter (borrowing).
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .classification import Classification, Infomorphism
from .errors import IfkError
from .theories import (
    DEFAULT_SEQUENT_CAP,
    FlatTheory,
    Sequent,
    SequentTheory,
    entails,
    flat_closure,
    flat_entails,
    satisfying_states,
    theory_of_states,
)


def _require_total(type_map: Mapping[str, str], domain: frozenset[str], codomain: frozenset[str]):
    missing = domain - type_map.keys()
    if missing:
        raise IfkError(f"type map not total, missing: {', '.join(sorted(missing))}")
    bad = {t for t in domain if type_map[t] not in codomain}
    if bad:
        raise IfkError(f"type map lands outside the target language at: {', '.join(sorted(bad))}")


def direct_flow(
    type_map: Mapping[str, str], t: SequentTheory, target_types: Iterable[str]
) -> SequentTheory:
    """Image of every axiom under the type function, over the target language."""
    target_types = frozenset(target_types)
    _require_total(type_map, t.types, target_types)
    return SequentTheory(target_types, frozenset(a.rename(type_map) for a in t.axioms))


class InverseFlowTheory:
    """Query view of a theory pulled back along a type map.

    Axioms are never stored; entailment of a source sequent is answered
    by translating it forward and asking the target theory.  The full
    axiom set (everything the pullback entails) can be materialized
    under a cap.
    """

    def __init__(
        self,
        type_map: Mapping[str, str],
        target: SequentTheory,
        source_types: Iterable[str],
    ):
        self.types = frozenset(source_types)
        _require_total(type_map, self.types, target.types)
        self.type_map = dict(type_map)
        self.target = target

    def entails(self, s: Sequent) -> bool:
        outside = s.types() - self.types
        if outside:
            raise IfkError(
                f"sequent uses types outside the language: {', '.join(sorted(outside))}"
            )
        return entails(self.target, s.rename(self.type_map))

    def materialize(self, cap: int = DEFAULT_SEQUENT_CAP) -> SequentTheory:
        # every sequent the pullback entails, i.e. the inverse image of the
        # target closure; checked against the target's models rather than
        # one solver call per candidate
        models = satisfying_states(self.target)
        pulled = [frozenset(x for x in self.types if self.type_map[x] in m) for m in models]
        return theory_of_states(self.types, pulled, cap, "inverse flow materialization")


def inverse_flow(
    type_map: Mapping[str, str], target: SequentTheory, source_types: Iterable[str]
) -> InverseFlowTheory:
    return InverseFlowTheory(type_map, target, source_types)


def flat_direct_flow(
    type_map: Mapping[str, str], ft: FlatTheory, target_types: Iterable[str]
) -> FlatTheory:
    target_types = frozenset(target_types)
    _require_total(type_map, ft.types, target_types)
    return FlatTheory(target_types, frozenset(type_map[t] for t in ft.members))


def flat_inverse_flow(
    c_target: Classification,
    type_map: Mapping[str, str],
    ft_target: FlatTheory,
    source_types: Iterable[str],
) -> FlatTheory:
    """Pull back the flat closure of the target theory along the type map."""
    source_types = frozenset(source_types)
    _require_total(type_map, source_types, c_target.types)
    closed = flat_closure(c_target, ft_target)
    return FlatTheory(
        source_types, frozenset(t for t in source_types if type_map[t] in closed.members)
    )


def borrowing_holds(f: Infomorphism, ft: FlatTheory, typ: str) -> bool:
    """Source-side entailment agrees with target-side entailment of the image."""
    if ft.types != f.source.types:
        raise IfkError("flat theory must live over the infomorphism's source types")
    if typ not in f.source.types:
        raise IfkError(f"unknown type: {typ}")
    at_source = flat_entails(f.source, ft, typ)
    image = flat_direct_flow(f.type_map, ft, f.target.types)
    at_target = flat_entails(f.target, image, f.type_map[typ])
    return at_source == at_target

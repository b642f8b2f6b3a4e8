"""Local logics: a classification, a theory over its types, and a set of
normal instances whose intents satisfy every axiom.

Soundness quantifies over all instances, completeness only over the
normal ones.  The natural logic of a classification takes every sequent
its instances jointly satisfy as a theorem and is the sound and complete
logic over that classification, up to closure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classification import Classification, Infomorphism, intent
from .errors import IfkError
from .flow import direct_flow, inverse_flow
from .theories import (
    DEFAULT_SEQUENT_CAP,
    Sequent,
    SequentTheory,
    _sat,
    satisfying_states,
    theory_leq,
    theory_of_states,
)


@dataclass(frozen=True)
class LocalLogic:
    classification: Classification
    theory: SequentTheory
    normal: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "normal", frozenset(self.normal))
        if self.theory.types != self.classification.types:
            raise IfkError("logic theory must share the classification's types")
        stray = self.normal - self.classification.instances
        if stray:
            raise IfkError(f"normal instances not declared: {', '.join(sorted(stray))}")
        for i in sorted(self.normal):
            holds = intent(self.classification, i)
            for a in self.theory.axioms:
                if not _sat(a.antecedent, a.consequent, holds):
                    raise IfkError(f"normal instance {i} violates axiom {a!r}")


def _instance_states(c: Classification, instances) -> set[frozenset[str]]:
    return {intent(c, i) for i in instances}


def natural_entails(c: Classification, s: Sequent) -> bool:
    """Virtual form of the natural theory: satisfaction by every instance."""
    outside = s.types() - c.types
    if outside:
        raise IfkError(f"sequent uses types outside the language: {', '.join(sorted(outside))}")
    return all(
        _sat(s.antecedent, s.consequent, x) for x in _instance_states(c, c.instances)
    )


def natural_logic(c: Classification, cap: int = DEFAULT_SEQUENT_CAP) -> LocalLogic:
    """All sequents satisfied by every instance, with every instance normal.

    Materializes 4^|types| candidate sequents; above the cap, query
    entailment through ``natural_entails`` instead.
    """
    theory = theory_of_states(
        c.types, _instance_states(c, c.instances), cap, "natural logic"
    )
    return LocalLogic(c, theory, c.instances)


def is_sound(l: LocalLogic) -> bool:
    """Every instance, normal or not, satisfies every axiom."""
    return all(
        _sat(a.antecedent, a.consequent, x)
        for x in _instance_states(l.classification, l.classification.instances)
        for a in l.theory.axioms
    )


def is_complete(l: LocalLogic) -> bool:
    """Every sequent satisfied by all normal instances is a theorem.

    Over a finite language any state set is pinned down by sequents, so
    this is equivalent to: every state satisfying the theory is the
    intent of some normal instance.
    """
    normal_states = _instance_states(l.classification, l.normal)
    return all(x in normal_states for x in satisfying_states(l.theory))


def restriction(l: LocalLogic, cap: int = DEFAULT_SEQUENT_CAP) -> LocalLogic:
    """The sound logic with theory: theorems of ``l`` satisfied by every instance."""
    states = _instance_states(l.classification, l.classification.instances) | set(
        satisfying_states(l.theory)
    )
    theory = theory_of_states(l.classification.types, states, cap, "logic restriction")
    return LocalLogic(l.classification, theory, l.classification.instances)


def normalize(l: LocalLogic) -> LocalLogic:
    """Grow the normal set to every instance whose intent satisfies the theory."""
    normal = frozenset(
        i
        for i in l.classification.instances
        if all(
            _sat(a.antecedent, a.consequent, intent(l.classification, i))
            for a in l.theory.axioms
        )
    )
    return LocalLogic(l.classification, l.theory, normal)


def logic_direct_image(f: Infomorphism, l: LocalLogic) -> LocalLogic:
    """Push a logic forward: direct flow on the theory, instance-map preimage on normal."""
    if l.classification != f.source:
        raise IfkError("logic must live on the infomorphism's source")
    theory = direct_flow(f.type_map, l.theory, f.target.types)
    normal = frozenset(b for b in f.target.instances if f.instance_map[b] in l.normal)
    return LocalLogic(f.target, theory, normal)


def logic_inverse_image(
    f: Infomorphism, l: LocalLogic, cap: int = DEFAULT_SEQUENT_CAP
) -> LocalLogic:
    """Pull a logic back: materialized inverse flow, instance-map image on normal."""
    if l.classification != f.target:
        raise IfkError("logic must live on the infomorphism's target")
    theory = inverse_flow(f.type_map, l.theory, f.source.types).materialize(cap)
    normal = frozenset(f.instance_map[b] for b in l.normal)
    return LocalLogic(f.source, theory, normal)


def logic_leq(l1: LocalLogic, l2: LocalLogic) -> bool:
    """Theories ordered by entailment, normal sets by reverse containment."""
    if l1.classification != l2.classification:
        raise IfkError("logics are ordered over a shared classification")
    return theory_leq(l1.theory, l2.theory) and l1.normal >= l2.normal

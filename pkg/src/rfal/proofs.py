"""Hilbert-style proof certificates: a strict checker and a trace synthesizer.

The deductive system has one axiom scheme and two rules:

  axiom  every formula whose consequent is fully contained in its antecedent
  cut    from A => B and B|C => D infer A|C => D   (| is fuzzy-set union)
  mul    from A => B infer cA => cB for a rational scalar c

The checker is the minimal trusted core: it accepts only these primitive
steps, recomputing every set operation exactly.  Derived rules (projectivity,
additivity) exist only as expansion macros inside the synthesizer, which turns
an engine trace into a certificate of `A => c*B` with c the provability
degree.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, as_unit_degree, rational_from_json, rational_to_json
from .engine import ClosureTrace
from .lsets import FuzzySet, is_contained, scalar_multiple, subsethood, union
from .logic import Implication, Theory, serialize_theory

AXIOM = "axiom"
HYP = "hyp"
CUT = "cut"
MUL = "mul"

BAD_AXIOM = "BAD_AXIOM"
NOT_IN_THEORY = "NOT_IN_THEORY"
BAD_CUT = "BAD_CUT"
BAD_MUL = "BAD_MUL"
BAD_INDEX = "BAD_INDEX"
HASH_MISMATCH = "HASH_MISMATCH"


class ProofFormatError(ValueError):
    """Malformed certificate JSON (distinct from a checker REJECT)."""


class SynthesisError(ValueError):
    """The synthesizer refuses the request (e.g. a non-fixpoint trace)."""


@dataclass(frozen=True)
class ProofStep:
    formula: Implication
    rule: str
    premises: tuple[int, ...] = ()
    hyp_index: int | None = None
    scalar: Fraction | None = None


@dataclass(frozen=True)
class Proof:
    theory_hash: str
    steps: tuple[ProofStep, ...]
    conclusion: Implication

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise ValueError("a proof must contain at least one step")
        if self.steps[-1].formula != self.conclusion:
            raise ValueError("the conclusion must equal the last step's formula")

    def to_json(self) -> dict:
        steps = []
        for step in self.steps:
            obj: dict = {
                "ante": step.formula.antecedent.to_json(),
                "cons": step.formula.consequent.to_json(),
                "rule": step.rule,
            }
            if step.premises:
                obj["premises"] = list(step.premises)
            if step.hyp_index is not None:
                obj["hyp_index"] = step.hyp_index
            if step.scalar is not None:
                obj["scalar"] = rational_to_json(step.scalar)
            steps.append(obj)
        return {
            "theory_hash": self.theory_hash,
            "steps": steps,
            "conclusion": self.conclusion.to_json(),
        }

    @classmethod
    def from_json(cls, obj) -> "Proof":
        try:
            if not isinstance(obj, dict):
                raise ValueError(f"malformed proof object: {type(obj).__name__}")
            digest = obj["theory_hash"]
            if not isinstance(digest, str):
                raise ValueError("theory_hash must be a string")
            steps = []
            for raw in obj["steps"]:
                rule = raw.get("rule")
                if rule not in (AXIOM, HYP, CUT, MUL):
                    raise ValueError(f"unknown step rule: {rule!r}")
                formula = Implication(
                    FuzzySet.from_json(raw["ante"]), FuzzySet.from_json(raw["cons"])
                )
                premises = tuple(raw.get("premises", ()))
                if not all(isinstance(i, int) and not isinstance(i, bool) for i in premises):
                    raise ValueError("premises must be integers")
                hyp_index = raw.get("hyp_index")
                if hyp_index is not None and (not isinstance(hyp_index, int) or isinstance(hyp_index, bool)):
                    raise ValueError("hyp_index must be an integer")
                scalar = raw.get("scalar")
                if scalar is not None:
                    scalar = rational_from_json(scalar)
                steps.append(ProofStep(formula, rule, premises, hyp_index, scalar))
            conclusion = Implication.from_json(obj["conclusion"])
            return cls(digest, tuple(steps), conclusion)
        except (KeyError, TypeError, ValueError) as exc:
            raise ProofFormatError(f"malformed proof certificate: {exc}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "Proof":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProofFormatError(f"certificate is not valid JSON: {exc}") from exc
        return cls.from_json(obj)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    step: int | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        if self.accepted:
            return {"verdict": "ACCEPT"}
        return {"verdict": "REJECT", "step": self.step, "reason": self.reason}


ACCEPT = Verdict(True)


def theory_hash(theory: Theory) -> str:
    """SHA-256 of the canonical theory serialization."""
    return hashlib.sha256(serialize_theory(theory).encode("utf-8")).hexdigest()


def cut_conclusion(first: Implication, second: Implication) -> Implication | None:
    """Deterministic cut matching shared by the checker and the builder.

    With first = A => B and second = X => D, the step is valid when B is fully
    contained in X; then X decomposes as B|C for the minimal cover C (the part
    of X strictly above B) and the conclusion is A|C => D.  No search over
    decompositions is performed.
    """
    b, x = first.consequent, second.antecedent
    if not is_contained(b, x):
        return None
    cover = {var: degree for var, degree in x.items() if degree > b.degree(var)}
    return Implication(union(first.antecedent, FuzzySet._raw(cover)), second.consequent)


def _check_step(alg: Algebra, theory: Theory, steps: tuple[ProofStep, ...], index: int) -> str | None:
    step = steps[index]
    if step.rule == AXIOM:
        if not is_contained(step.formula.consequent, step.formula.antecedent):
            return BAD_AXIOM
        return None
    if step.rule == HYP:
        k = step.hyp_index
        if k is None or not 0 <= k < len(theory.rules):
            return BAD_INDEX
        if step.formula != theory.rules[k]:
            return NOT_IN_THEORY
        return None
    if step.rule == CUT:
        if len(step.premises) != 2 or not all(0 <= i < index for i in step.premises):
            return BAD_INDEX
        i, j = step.premises
        expected = cut_conclusion(steps[i].formula, steps[j].formula)
        if expected is None or expected != step.formula:
            return BAD_CUT
        return None
    if step.rule == MUL:
        if len(step.premises) != 1 or not 0 <= step.premises[0] < index:
            return BAD_INDEX
        if step.scalar is None:
            return BAD_MUL
        try:
            c = as_unit_degree(step.scalar)
        except (TypeError, ValueError):
            return BAD_MUL
        premise = steps[step.premises[0]].formula
        expected = Implication(
            scalar_multiple(alg, c, premise.antecedent),
            scalar_multiple(alg, c, premise.consequent),
        )
        if expected != step.formula:
            return BAD_MUL
        return None
    return BAD_INDEX


def check_proof(alg: Algebra, theory: Theory, proof: Proof) -> Verdict:
    """ACCEPT iff every step is a valid primitive inference over the theory."""
    if proof.theory_hash != theory_hash(theory):
        return Verdict(False, None, HASH_MISMATCH)
    for index in range(len(proof.steps)):
        reason = _check_step(alg, theory, proof.steps, index)
        if reason is not None:
            return Verdict(False, index, reason)
    return ACCEPT


class ProofBuilder:
    """Append-only builder whose primitives mirror the checker exactly.

    Identical steps are deduplicated, so reusing a hypothesis or an axiom
    costs nothing.
    """

    def __init__(self, alg: Algebra, theory: Theory):
        self._alg = alg
        self._theory = theory
        self._steps: list[ProofStep] = []
        self._index: dict[ProofStep, int] = {}

    def _push(self, step: ProofStep) -> int:
        found = self._index.get(step)
        if found is not None:
            return found
        self._steps.append(step)
        index = len(self._steps) - 1
        self._index[step] = index
        return index

    def formula(self, index: int) -> Implication:
        return self._steps[index].formula

    def axiom(self, antecedent: FuzzySet, consequent: FuzzySet) -> int:
        if not is_contained(consequent, antecedent):
            raise SynthesisError(f"not an axiom instance: {consequent} is not contained in {antecedent}")
        return self._push(ProofStep(Implication(antecedent, consequent), AXIOM))

    def hypothesis(self, rule_index: int) -> int:
        return self._push(ProofStep(self._theory.rules[rule_index], HYP, hyp_index=rule_index))

    def mul(self, premise: int, scalar: Fraction) -> int:
        base = self.formula(premise)
        scaled = Implication(
            scalar_multiple(self._alg, scalar, base.antecedent),
            scalar_multiple(self._alg, scalar, base.consequent),
        )
        return self._push(ProofStep(scaled, MUL, (premise,), scalar=scalar))

    def cut(self, first: int, second: int) -> int:
        conclusion = cut_conclusion(self.formula(first), self.formula(second))
        if conclusion is None:
            raise SynthesisError("cut premises do not chain")
        return self._push(ProofStep(conclusion, CUT, (first, second)))

    def union_of(self, first: int, second: int) -> int:
        """Additivity macro: from X => Y and X => Z derive X => Y|Z.

        Expands to two axioms and three cuts; only primitive steps are
        emitted.
        """
        fy, fz = self.formula(first), self.formula(second)
        if fy.antecedent != fz.antecedent:
            raise SynthesisError("additivity needs premises with equal antecedents")
        x, y, z = fy.antecedent, fy.consequent, fz.consequent
        xy = union(x, y)
        lift = self.axiom(xy, x)                 # X|Y => X
        carried = self.cut(lift, second)         # X|Y => Z
        widen = self.axiom(union(xy, z), union(y, z))  # X|Y|Z => Y|Z
        merged = self.cut(carried, widen)        # X|Y => Y|Z
        return self.cut(first, merged)           # X => Y|Z

    def build(self) -> Proof:
        if not self._steps:
            raise SynthesisError("no steps have been added")
        return Proof(theory_hash(self._theory), tuple(self._steps), self._steps[-1].formula)


def synthesize_proof(
    alg: Algebra,
    theory: Theory,
    query: Implication,
    trace: ClosureTrace,
) -> Proof:
    """Certificate of `A => c*B` with c the provability degree of A => B.

    Follows the trace: for every productive step and fired rule it multiplies
    the rule by its firing degree, cuts the scaled copy onto the accumulated
    closure of A, and merges the contributions with the additivity macro; a
    final axiom plus cut lands on the conclusion.  Refuses traces that did not
    reach a fixpoint, since a lower bound cannot be certified as the degree.
    """
    if not trace.reached_fixpoint:
        raise SynthesisError("cannot certify a degree from a capped (non-fixpoint) trace")
    if trace.start != query.antecedent:
        raise SynthesisError("the trace must start from the query antecedent")

    a = query.antecedent
    degree = subsethood(alg, query.consequent, trace.final)
    target = Implication(a, scalar_multiple(alg, degree, query.consequent))

    builder = ProofBuilder(alg, theory)
    if is_contained(target.consequent, a):
        builder.axiom(a, target.consequent)
        return builder.build()

    accumulated = builder.axiom(a, a)
    current = a
    for step_eval, firings in zip(trace.steps, trace.firing_log):
        contributions: list[tuple[int, FuzzySet]] = []
        for rule_index, firing_degree in firings:
            rule = theory.rules[rule_index]
            contribution = scalar_multiple(alg, firing_degree, rule.consequent)
            if not contribution or is_contained(contribution, current):
                continue
            hyp = builder.hypothesis(rule_index)
            scaled = builder.mul(hyp, firing_degree)
            anchor = builder.axiom(current, scalar_multiple(alg, firing_degree, rule.antecedent))
            landed = builder.cut(anchor, scaled)      # current => c*F
            lifted = builder.cut(accumulated, landed)  # A => c*F
            contributions.append((lifted, contribution))
        grown = current
        for lifted, contribution in contributions:
            accumulated = builder.union_of(accumulated, lifted)
            grown = union(grown, contribution)
        if grown != step_eval:
            raise SynthesisError("trace firing log is inconsistent with its steps")
        current = grown

    closing = builder.axiom(current, target.consequent)
    builder.cut(accumulated, closing)
    return builder.build()

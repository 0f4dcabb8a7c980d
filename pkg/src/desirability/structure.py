"""Marginal and conditional sets, their assembly, and marginal extension."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .consistency import avoids_partial_loss
from .gambles import (
    Partition,
    UnsupportedSpecError,
    as_event,
    as_gamble,
    as_gambles,
    block_minimum,
    is_measurable,
    vanishes_outside,
)
from .operators import ClosureSpec, DesirSet, GeneratedSet, Kind, Membership, Verdict

_MEASURABLE_TOL = 0.0


def marginal_member(D: DesirSet, f, partition: Partition) -> Membership:
    """Member of D that is constant on every block."""
    f = as_gamble(f, D.n)
    if not is_measurable(f, partition, _MEASURABLE_TOL):
        return Membership(Verdict.OUT, {"reason": "not measurable"})
    return D.member(f)


def conditional_member(D: DesirSet, f, B) -> Membership:
    """Member of D that vanishes outside ``B``."""
    f = as_gamble(f, D.n)
    B = as_event(B, D.n)
    if not B.any():
        raise ValueError("conditioning on the empty event")
    if not vanishes_outside(f, B):
        return Membership(Verdict.OUT, {"reason": "nonzero outside the event"})
    return D.member(f)


class ConditionalSet(DesirSet):
    """Lazy view of the members of ``D`` vanishing outside ``B``."""

    def __init__(self, D: DesirSet, B):
        self.base = D
        self.n = D.n
        self.event = as_event(B, D.n)
        if not self.event.any():
            raise ValueError("conditioning on the empty event")
        self.spec = D.spec

    def member(self, f) -> Membership:
        return conditional_member(self.base, f, self.event)

    def member_codes(self, F) -> np.ndarray:
        F = as_gambles(F, self.n)
        codes = np.zeros(F.shape[0], dtype=np.int8)
        inside = np.all(F[:, ~self.event] == 0.0, axis=1)
        if inside.any():
            codes[inside] = self.base.member_codes(F[inside])
        return codes

    def describe(self) -> dict:
        return {"type": "conditional", "event": self.event.astype(int).tolist(), "of": self.base.describe()}


@dataclass
class ConditionalFamily:
    """One conditional set per block of a partition."""

    partition: Partition
    per_block: list

    def __post_init__(self):
        if len(self.per_block) != len(self.partition):
            raise ValueError("one conditional set per block is required")
        for D, B in zip(self.per_block, self.partition):
            if isinstance(D, GeneratedSet) and D.generators.shape[0]:
                if np.any(D.generators[:, ~B] != 0.0):
                    raise ValueError("block generators must vanish outside their block")

    @classmethod
    def from_set(cls, D: DesirSet, partition: Partition) -> "ConditionalFamily":
        return cls(partition, [ConditionalSet(D, B) for B in partition])

    @property
    def n(self) -> int:
        return self.partition.n


def assembled_member(F: ConditionalFamily, f) -> Membership:
    """Nonzero gambles whose restriction to each block is zero or a member
    of that block's conditional set."""
    f = as_gamble(f, F.n)
    if not np.any(f != 0.0):
        return Membership(Verdict.OUT, {"reason": "zero gamble"})
    unknown = False
    for i, (D, B) in enumerate(zip(F.per_block, F.partition)):
        part = np.where(B, f, 0.0)
        if not np.any(part != 0.0):
            continue
        m = D.member(part)
        if m.is_out:
            return Membership(Verdict.OUT, {"block": i})
        unknown |= m.verdict is Verdict.UNKNOWN
    return Membership(Verdict.UNKNOWN if unknown else Verdict.IN)


class AssembledSet(DesirSet):
    def __init__(self, family: ConditionalFamily, spec: ClosureSpec | None = None):
        self.family = family
        self.n = family.n
        self.spec = spec

    def member(self, f) -> Membership:
        return assembled_member(self.family, f)

    def member_codes(self, F) -> np.ndarray:
        F = as_gambles(F, self.n)
        codes = np.where(np.any(F != 0.0, axis=1), 1, 0).astype(np.int8)
        for D, B in zip(self.family.per_block, self.family.partition):
            parts = np.where(B[None, :], F, 0.0)
            live = (codes != 0) & np.any(parts != 0.0, axis=1)
            if not live.any():
                continue
            c = D.member_codes(parts[live])
            sub = codes[live]
            sub = np.where(c == 0, 0, np.where((c == -1) & (sub == 1), -1, sub))
            codes[live] = sub
        return codes

    def describe(self) -> dict:
        return {"type": "assembled", "blocks": len(self.family.partition)}


@dataclass
class ConglomerabilityReport:
    status: str  # "Witness" or "NoWitness"
    witness: list | None = None
    checked: int = 0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"status": self.status, "witness": self.witness, "checked": self.checked, "details": self.details}


def _structured_candidates(F: ConditionalFamily) -> np.ndarray:
    n = F.n
    rows = [np.array(list(itertools.product((-1.0, 0.0, 1.0), repeat=n)))] if n <= 8 else []
    blocks = []
    for D, B in zip(F.per_block, F.partition):
        if isinstance(D, GeneratedSet) and D.generators.shape[0]:
            blocks.append(list(D.generators) + [np.zeros(n)])
        else:
            blocks.append([np.zeros(n)])
    for combo in itertools.islice(itertools.product(*blocks), 4096):
        rows.append(np.sum(combo, axis=0)[None, :])
    return np.vstack(rows)


def conglomerability_check(
    D: DesirSet, family: ConditionalFamily | None = None, partition: Partition | None = None, trials: int = 2000, seed: int = 0
) -> ConglomerabilityReport:
    """Search for a gamble in the assembled conditional set that D rejects.

    Deterministic block-structured candidates come first, then seeded random
    gambles. A witness is a proof of non-conglomerability; finding none is
    only evidence.
    """
    if family is None:
        if partition is None:
            raise ValueError("a family or a partition is required")
        family = ConditionalFamily.from_set(D, partition)
    A = AssembledSet(family)
    rng = np.random.default_rng(seed)
    batches = [_structured_candidates(family), rng.uniform(-3.0, 3.0, size=(trials, D.n))]
    checked = 0
    for cands in batches:
        a = A.member_codes(cands)
        idx = np.nonzero(a == 1)[0]
        checked += int(cands.shape[0])
        if idx.size == 0:
            continue
        d = D.member_codes(cands[idx])
        bad = idx[d == 0]
        if bad.size:
            w = cands[bad[0]]
            details = {}
            if D.spec is not None:
                ext = GeneratedSet(np.vstack([w[None, :]] + ([D.generators] if isinstance(D, GeneratedSet) else [])), D.spec, D.n)
                apl = avoids_partial_loss(ext)
                details["extension_avoids_partial_loss"] = apl.holds
            return ConglomerabilityReport("Witness", w.tolist(), checked, details)
    return ConglomerabilityReport("NoWitness", None, checked)


class MarginalExtensionSet(DesirSet):
    """Dominance-type marginal extension without finite generators.

    A gamble is a member when it is positive, when its block-wise minimum is
    in the marginal set, or when each block is nonnegative or in the block's
    conditional set with at least one block in it.
    """

    def __init__(self, D_marg: DesirSet, family: ConditionalFamily, spec: ClosureSpec):
        self.marginal = D_marg
        self.family = family
        self.spec = spec
        self.n = family.n

    def member(self, f) -> Membership:
        f = as_gamble(f, self.n)
        return Membership(Verdict(int(self.member_codes(f[None, :])[0])))

    def member_codes(self, F) -> np.ndarray:
        F = as_gambles(F, self.n)
        k = F.shape[0]
        pos = np.all(F >= 0.0, axis=1) & np.any(F > 0.0, axis=1)
        mins = np.array([block_minimum(f, self.family.partition) for f in F]).reshape(k, self.n)
        marg = self.marginal.member_codes(mins)
        all_ok = np.ones(k, dtype=bool)
        some_in = np.zeros(k, dtype=bool)
        unknown = marg == -1
        for D, B in zip(self.family.per_block, self.family.partition):
            parts = np.where(B[None, :], F, 0.0)
            c = D.member_codes(parts)
            nonneg = np.all(parts >= 0.0, axis=1)
            all_ok &= (c == 1) | nonneg | (c == -1)
            unknown |= (c == -1) & ~nonneg
            some_in |= c == 1
        cond = all_ok & some_in
        codes = np.where(pos | (marg == 1) | (cond & ~unknown), 1, np.where(unknown & all_ok, -1, 0))
        return codes.astype(np.int8)

    def describe(self) -> dict:
        return {"type": "marginal-extension", "spec": self.spec.name, "blocks": len(self.family.partition)}


def marginal_extension_set(D_marg: DesirSet, family: ConditionalFamily, spec: ClosureSpec) -> DesirSet:
    """Closure of the marginal set together with the assembled conditional set."""
    if spec.kind in (Kind.KAPPA1, Kind.KAPPA2):
        parts = [D_marg] + list(family.per_block)
        if not all(isinstance(D, GeneratedSet) and D.spec.kind in (Kind.KAPPA1, Kind.KAPPA2) for D in parts):
            raise UnsupportedSpecError("additive marginal extension needs finitely generated conic or sum inputs")
        gens = [D.generators for D in parts if D.generators.shape[0]]
        G = np.vstack(gens) if gens else np.zeros((0, family.n))
        return GeneratedSet(G, spec, family.n)
    if spec.kind in (Kind.KAPPA3, Kind.KAPPA4):
        return MarginalExtensionSet(D_marg, family, spec)
    raise UnsupportedSpecError(f"marginal extension is not available for {spec.name}")


__all__ = [
    "marginal_member",
    "conditional_member",
    "ConditionalSet",
    "ConditionalFamily",
    "assembled_member",
    "AssembledSet",
    "ConglomerabilityReport",
    "conglomerability_check",
    "MarginalExtensionSet",
    "marginal_extension_set",
]

"""Gambles, events and partitions on a finite possibility space.

A gamble is represented as a one-dimensional float64 numpy array indexed by
the outcomes of a :class:`PossibilitySpace`. Events are boolean arrays of the
same length. The helpers here validate shapes and implement the pointwise
order used throughout the package.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

Gamble = np.ndarray
Event = np.ndarray


class DimensionError(ValueError):
    """Gamble, event or partition length does not match the space."""


class NumericalError(RuntimeError):
    """A numerical routine could not produce a trustworthy answer."""


class UnsupportedSpecError(ValueError):
    """An operation is not available for the given closure or set."""


@dataclass(frozen=True)
class PossibilitySpace:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if not labels:
            raise DimensionError("possibility space must be nonempty")
        if len(set(labels)) != len(labels):
            raise ValueError("outcome labels must be distinct")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of_size(cls, n: int) -> "PossibilitySpace":
        return cls(tuple(f"w{i + 1}" for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return self.n

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"unknown outcome {label!r}") from None

    def gamble(self, values: Sequence[float] | Mapping[str, float]) -> Gamble:
        if isinstance(values, Mapping):
            out = np.zeros(self.n)
            for key, v in values.items():
                out[self.index(key)] = float(v)
            return out
        return as_gamble(values, self.n)

    def event(self, labels: Iterable[str]) -> Event:
        out = np.zeros(self.n, dtype=bool)
        for lab in labels:
            out[self.index(lab)] = True
        return out

    def partition(self, blocks: Iterable[Iterable[str]]) -> "Partition":
        return Partition(tuple(self.event(b) for b in blocks))


def as_gamble(values, n: int | None = None) -> Gamble:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise DimensionError(f"a gamble must be one-dimensional, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise DimensionError(f"gamble has {arr.shape[0]} values, space has {n}")
    if arr.shape[0] == 0:
        raise DimensionError("empty gamble")
    if not np.all(np.isfinite(arr)):
        raise ValueError("gamble values must be finite")
    return arr


def as_gambles(rows, n: int | None = None) -> np.ndarray:
    """Stack gambles into a C-contiguous (k, n) float64 array; k may be zero."""
    if isinstance(rows, np.ndarray):
        arr = rows.astype(np.float64)
        if arr.size == 0:
            width = arr.shape[1] if arr.ndim == 2 else (n or 0)
            return np.zeros((0, width))
    else:
        rows = list(rows)
        if not rows:
            return np.zeros((0, n or 0))
        arr = np.asarray([as_gamble(r, n) for r in rows], dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionError(f"expected a list of gambles, got shape {arr.shape}")
    if n is not None and arr.shape[1] != n:
        raise DimensionError(f"gambles have {arr.shape[1]} values, space has {n}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("gamble values must be finite")
    return np.ascontiguousarray(arr)


def as_event(mask, n: int | None = None) -> Event:
    arr = np.asarray(mask)
    if arr.dtype != bool:
        if not np.all(np.isin(arr, (0, 1))):
            raise ValueError("event indicator must be 0/1 or boolean")
        arr = arr.astype(bool)
    if arr.ndim != 1:
        raise DimensionError("an event must be one-dimensional")
    if n is not None and arr.shape[0] != n:
        raise DimensionError(f"event has {arr.shape[0]} entries, space has {n}")
    return arr


def indicator(event: Event) -> Gamble:
    return as_event(event).astype(np.float64)


@dataclass(frozen=True)
class Partition:
    blocks: tuple[Event, ...]

    def __post_init__(self):
        blocks = tuple(as_event(b) for b in self.blocks)
        if not blocks:
            raise ValueError("partition needs at least one block")
        n = blocks[0].shape[0]
        cover = np.zeros(n, dtype=int)
        for b in blocks:
            if b.shape[0] != n:
                raise DimensionError("partition blocks differ in length")
            if not b.any():
                raise ValueError("partition blocks must be nonempty")
            cover += b
        if not np.all(cover == 1):
            raise ValueError("blocks must be pairwise disjoint and cover the space")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return self.blocks[0].shape[0]

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def block_of(self, i: int) -> int:
        for k, b in enumerate(self.blocks):
            if b[i]:
                return k
        raise IndexError(i)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        labels = np.asarray(labels)
        return cls(tuple(labels == v for v in dict.fromkeys(labels.tolist())))


# pointwise order -------------------------------------------------------------


def gneq(f, g) -> bool:
    """``f >= g`` pointwise with at least one strict coordinate."""
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != g.shape:
        raise DimensionError(f"shape mismatch {f.shape} vs {g.shape}")
    return bool(np.all(f >= g) and np.any(f > g))


def is_positive(f) -> bool:
    """Membership of the positive cone: ``f >= 0`` and ``f != 0``."""
    f = np.asarray(f, dtype=float)
    return bool(np.all(f >= 0.0) and np.any(f > 0.0))


def positive_rows(F: np.ndarray) -> np.ndarray:
    return np.all(F >= 0.0, axis=1) & np.any(F > 0.0, axis=1)


def nonpositive_rows(F: np.ndarray) -> np.ndarray:
    return np.all(F <= 0.0, axis=1)


class GambleClass(Enum):
    POSITIVE = "Positive"
    STRICTLY_NEGATIVE = "StrictlyNegative"
    NEGATIVE_OR_ZERO = "NegativeOrZero"
    OTHER = "Other"

    @property
    def nonpositive(self) -> bool:
        """True for classes contained in the non-positive gambles."""
        return self in (GambleClass.STRICTLY_NEGATIVE, GambleClass.NEGATIVE_OR_ZERO)


def classify(f) -> GambleClass:
    """Most specific of: positive, sup < 0, everywhere <= 0, other."""
    f = as_gamble(f)
    if is_positive(f):
        return GambleClass.POSITIVE
    if f.max() < 0.0:
        return GambleClass.STRICTLY_NEGATIVE
    if f.max() <= 0.0:
        return GambleClass.NEGATIVE_OR_ZERO
    return GambleClass.OTHER


def cutoff(f, event) -> Gamble:
    """The gamble equal to ``f`` on the event and zero elsewhere."""
    f = as_gamble(f)
    event = as_event(event, f.shape[0])
    if not event.any():
        raise ValueError("cut-off by the empty event")
    return np.where(event, f, 0.0)


def is_measurable(f, partition: Partition, tol: float = 0.0) -> bool:
    """Constant on every block of the partition."""
    f = as_gamble(f, partition.n)
    for b in partition:
        vals = f[b]
        if vals.max() - vals.min() > tol:
            return False
    return True


def vanishes_outside(f, event, tol: float = 0.0) -> bool:
    f = as_gamble(f)
    return bool(np.all(np.abs(f[~as_event(event, f.shape[0])]) <= tol))


def block_minimum(f, partition: Partition) -> Gamble:
    """Largest measurable gamble below ``f``."""
    f = as_gamble(f, partition.n)
    out = np.empty_like(f)
    for b in partition:
        out[b] = f[b].min()
    return out

"""Structured-system data model.

All indices are 1-based. A pattern stores only the positions of its stars;
a star at ``(r, c)`` of a state matrix means state ``c`` influences state ``r``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple


@dataclass(frozen=True)
class SparsityPattern:
    n_rows: int
    n_cols: int
    stars: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n_rows < 1 or self.n_cols < 1:
            raise ValueError(f"pattern dimensions must be positive, got {self.n_rows}x{self.n_cols}")
        stars = frozenset((int(r), int(c)) for r, c in self.stars)
        for r, c in stars:
            if not (1 <= r <= self.n_rows and 1 <= c <= self.n_cols):
                raise ValueError(f"star ({r}, {c}) outside {self.n_rows}x{self.n_cols} pattern")
        object.__setattr__(self, "stars", stars)

    @classmethod
    def from_dense(cls, rows: Iterable[Iterable[object]]) -> "SparsityPattern":
        """Build from a nested list where any truthy entry is a star."""
        rows = [list(r) for r in rows]
        stars = {(i + 1, j + 1) for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(len(rows), len(rows[0]), frozenset(stars))

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def __len__(self) -> int:
        return len(self.stars)

    def __contains__(self, pos) -> bool:
        return tuple(pos) in self.stars

    def transpose(self) -> "SparsityPattern":
        return SparsityPattern(self.n_cols, self.n_rows, frozenset((c, r) for r, c in self.stars))

    def to_dense(self):
        import numpy as np

        out = np.zeros((self.n_rows, self.n_cols), dtype=bool)
        for r, c in self.stars:
            out[r - 1, c - 1] = True
        return out


class StateId(NamedTuple):
    subsystem: int
    state: int


def global_index(s: StateId, n_s: int) -> int:
    return n_s * (s.subsystem - 1) + s.state


def decode(g: int, n_s: int) -> StateId:
    return StateId((g - 1) // n_s + 1, (g - 1) % n_s + 1)


@dataclass(frozen=True)
class SubsystemTemplate:
    n_s: int
    a_s: SparsityPattern

    def __post_init__(self):
        if self.a_s.n_rows != self.n_s or self.a_s.n_cols != self.n_s:
            raise ValueError(f"template pattern must be {self.n_s}x{self.n_s}")


@dataclass(frozen=True)
class CompositeSpec:
    """k copies of one subsystem pattern plus a composite input pattern."""

    k: int
    template: SubsystemTemplate
    b: SparsityPattern

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.b.n_rows != self.n_T:
            raise ValueError(f"input pattern has {self.b.n_rows} rows, expected n_T={self.n_T}")

    @classmethod
    def build(cls, k: int, n_s: int, a_s: Iterable[tuple[int, int]], b: Iterable[tuple[int, int]], m: int = 1):
        return cls(k, SubsystemTemplate(n_s, SparsityPattern(n_s, n_s, frozenset(a_s))),
                   SparsityPattern(k * n_s, m, frozenset(b)))

    @classmethod
    def with_local_input(cls, k: int, template: SubsystemTemplate, b_local: SparsityPattern):
        """Place a per-subsystem input pattern in subsystem 1's rows only."""
        if b_local.n_rows != template.n_s:
            raise ValueError("local input pattern must have n_s rows")
        return cls(k, template, SparsityPattern(k * template.n_s, b_local.n_cols, b_local.stars))

    @property
    def n_s(self) -> int:
        return self.template.n_s

    @property
    def a_s(self) -> SparsityPattern:
        return self.template.a_s

    @property
    def n_T(self) -> int:
        return self.k * self.template.n_s

    @property
    def m(self) -> int:
        return self.b.n_cols

    def g(self, s: StateId) -> int:
        return global_index(s, self.n_s)

    def state(self, g: int) -> StateId:
        return decode(g, self.n_s)


@dataclass(frozen=True, order=True)
class Interconnection:
    """Directed influence ``source -> target`` between two distinct subsystems.

    Equivalently a star at ``(target.state, source.state)`` of the off-diagonal
    block E[target.subsystem, source.subsystem].
    """

    target: StateId
    source: StateId

    def __post_init__(self):
        object.__setattr__(self, "target", StateId(*self.target))
        object.__setattr__(self, "source", StateId(*self.source))
        if self.target.subsystem == self.source.subsystem:
            raise ValueError(f"interconnection {self.source} -> {self.target} stays inside one subsystem")


def _block_diagonal(spec: CompositeSpec) -> set[tuple[int, int]]:
    n_s = spec.n_s
    return {(n_s * i + r, n_s * i + c) for i in range(spec.k) for r, c in spec.a_s.stars}


def compose_full(spec: CompositeSpec) -> SparsityPattern:
    """Composite state pattern with every off-diagonal block entry present."""
    n_s = spec.n_s
    stars = _block_diagonal(spec)
    for i in range(spec.k):
        for j in range(spec.k):
            if i == j:
                continue
            stars.update((n_s * i + r, n_s * j + c) for r in range(1, n_s + 1) for c in range(1, n_s + 1))
    return SparsityPattern(spec.n_T, spec.n_T, frozenset(stars))


def apply_interconnections(spec: CompositeSpec, links: Iterable[Interconnection]) -> SparsityPattern:
    stars = _block_diagonal(spec)
    for link in links:
        if not isinstance(link, Interconnection):
            link = Interconnection(*link)
        for s in (link.target, link.source):
            if not (1 <= s.subsystem <= spec.k and 1 <= s.state <= spec.n_s):
                raise ValueError(f"state {s} outside the composite")
        stars.add((spec.g(link.target), spec.g(link.source)))
    return SparsityPattern(spec.n_T, spec.n_T, frozenset(stars))


def transpose_system(a: SparsityPattern, b: SparsityPattern) -> tuple[SparsityPattern, SparsityPattern]:
    """Dual pair: observability of ``(a, c)`` is controllability of ``(a^T, c^T)``."""
    if not a.is_square:
        raise ValueError("state pattern must be square")
    if b.n_rows != a.n_rows:
        raise ValueError(f"input pattern has {b.n_rows} rows, state pattern has {a.n_rows}")
    return a.transpose(), b.transpose()


@dataclass(frozen=True)
class SynthesisReport:
    """Outcome of interconnection synthesis with its optimality certificates.

    ``matching_witness`` holds ``(left global index, (kind, index))`` pairs of a
    left-perfect matching of the composed system; its interconnection edges are a
    subset of ``interconnections``.
    """

    q: int
    alpha: int
    beta: int
    interconnections: frozenset[Interconnection]
    lower_bound: int
    matching_witness: frozenset[tuple[int, tuple[str, int]]] = frozenset()
    feasible: bool = True

    @property
    def gamma_d(self) -> int:
        return self.alpha + self.beta

    @property
    def size(self) -> int:
        return len(self.interconnections)

    @classmethod
    def infeasible(cls) -> "SynthesisReport":
        return cls(0, 0, 0, frozenset(), 0, frozenset(), False)

"""Propagated direct systems, weight restriction, profinite weights and smoothness."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DepthError, RankError, ShapeError, SpecParseError
from .exact import ZERO
from .rootsys import (
    MIN_RANK,
    DynkinType,
    RestrictedRootSystem,
    Weight,
    build_system,
    dynkin,
    from_fundamental_coords,
)

FINITE_VERDICT = "spherical ⇔ conical"
INFINITE_VERDICT = "no irreducible representation is both spherical and conical"

_STEP = re.compile(r"^step(\d+)$")


@dataclass(frozen=True)
class DirectSystemSpec:
    """Rank sequence r_1 <= r_2 <= ... of a propagated system of one Dynkin type.

    ``rule`` extends the prefix: None (the system stops), "constant", or
    "step<d>" meaning r_{n+1} = r_n + d.
    """

    dynkin: DynkinType
    prefix: tuple
    rule: str | None = None
    table_row: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "dynkin", dynkin(self.dynkin))
        prefix = tuple(self.prefix)
        if not prefix:
            raise ShapeError("a direct system needs at least one level")
        for r in prefix:
            if not isinstance(r, int) or isinstance(r, bool):
                raise ShapeError(f"ranks must be integers, got {r!r}")
        if any(b < a for a, b in zip(prefix, prefix[1:])):
            raise ShapeError(f"ranks must be nondecreasing, got {list(prefix)}")
        if prefix[0] < MIN_RANK[self.dynkin.kind]:
            raise RankError(f"{self.dynkin}{prefix[0]} is below the minimal rank")
        if self.rule is not None and self.rule != "constant" and not _STEP.match(self.rule):
            raise ShapeError(f"unknown rank rule {self.rule!r}")
        object.__setattr__(self, "prefix", prefix)

    @property
    def step(self) -> int:
        if self.rule is None or self.rule == "constant":
            return 0
        return int(_STEP.match(self.rule).group(1))

    @property
    def depth(self) -> int | None:
        """Number of levels, None when unbounded."""
        return len(self.prefix) if self.rule is None else None

    def rank(self, n: int) -> int:
        """Rank r_n at level n (1-based)."""
        if n < 1:
            raise DepthError(f"levels start at 1, got {n}")
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        if self.rule is None:
            raise DepthError(f"the system has only {len(self.prefix)} levels")
        return self.prefix[-1] + self.step * (n - len(self.prefix))

    def system(self, n: int) -> RestrictedRootSystem:
        return build_system(self.dynkin, self.rank(n), warn=False)

    def bounded(self) -> bool:
        return self.rule is None or self.step == 0

    def to_json(self) -> dict:
        out = {"dynkin": self.dynkin.kind, "ranks": {"prefix": list(self.prefix), "rule": self.rule}}
        if self.table_row is not None:
            out["table_row"] = self.table_row
        return out

    @classmethod
    def from_json(cls, data) -> "DirectSystemSpec":
        if not isinstance(data, dict):
            raise SpecParseError("system spec must be an object")
        try:
            ranks = data["ranks"]
            if isinstance(ranks, list):
                prefix, rule = ranks, None
            else:
                prefix, rule = ranks["prefix"], ranks.get("rule")
            row = data.get("table_row")
            return cls(data["dynkin"], tuple(prefix), rule, None if row is None else str(row))
        except KeyError as exc:
            raise SpecParseError(f"system spec is missing field {exc.args[0]!r}") from None


@dataclass(frozen=True)
class LimitRank:
    finite: bool
    rank: int | None
    verdict: str


def limit_rank(spec: DirectSystemSpec) -> LimitRank:
    if spec.bounded():
        return LimitRank(True, spec.prefix[-1], FINITE_VERDICT)
    return LimitRank(False, None, INFINITE_VERDICT)


def restrict_weight(lam: Weight, k: int) -> Weight:
    """Restriction to the rank-k level: truncation of e-coordinates."""
    if k > lam.rank:
        raise RankError(f"cannot restrict a rank-{lam.rank} weight to rank {k}")
    if k < MIN_RANK[lam.dynkin.kind]:
        raise RankError(f"{lam.dynkin}{k} is below the minimal rank")
    keep = k + 1 if lam.dynkin.kind == "A" else k
    return Weight(lam.dynkin, k, lam.coords[:keep])


def sup_norm(lam: Weight) -> Fraction:
    """max |coordinate|, on the canonical representative for A-type."""
    return max((abs(c) for c in lam.canonical()), default=ZERO)


# --- profinite weights ---------------------------------------------------


@dataclass(frozen=True)
class TailRule:
    """Fundamental coefficients past the explicit head: c_j = offset + slope*j.

    kind is "zero", "constant" (slope 0) or "affine".
    """

    kind: str = "zero"
    offset: int = 0
    slope: int = 0

    def __post_init__(self):
        if self.kind not in ("zero", "constant", "affine"):
            raise ShapeError(f"unsupported tail rule {self.kind!r}")
        if self.kind == "zero" and (self.offset or self.slope):
            raise ShapeError("a zero tail carries no parameters")
        if self.kind == "constant" and self.slope:
            raise ShapeError("a constant tail has no slope")
        if self.offset < 0 or self.slope < 0:
            raise ShapeError("tail coefficients must stay nonnegative")

    def value(self, j: int) -> int:
        return self.offset + self.slope * j

    def vanishes(self) -> bool:
        return self.offset == 0 and self.slope == 0

    def to_json(self):
        if self.kind == "zero":
            return "zero"
        if self.kind == "constant":
            return {"constant": self.offset}
        return {"affine": [self.offset, self.slope]}

    @classmethod
    def from_json(cls, data) -> "TailRule":
        if data in (None, "zero"):
            return cls()
        if isinstance(data, dict) and "constant" in data:
            return cls("constant", int(data["constant"]))
        if isinstance(data, dict) and "affine" in data:
            offset, slope = data["affine"]
            return cls("affine", int(offset), int(slope))
        raise SpecParseError(f"unsupported tail rule {data!r}")


@dataclass(frozen=True)
class ProfiniteWeight:
    system: DirectSystemSpec
    head: tuple
    tail: TailRule = field(default_factory=TailRule)

    def __post_init__(self):
        head = tuple(self.head)
        for c in head:
            if not isinstance(c, int) or isinstance(c, bool) or c < 0:
                raise ShapeError(f"fundamental coefficients must be nonnegative integers, got {c!r}")
        object.__setattr__(self, "head", head)

    def coefficient(self, j: int) -> int:
        """c_j, 1-based."""
        if j <= len(self.head):
            return self.head[j - 1]
        return self.tail.value(j)

    def coefficients(self, r: int) -> list[int]:
        return [self.coefficient(j) for j in range(1, r + 1)]

    def level(self, n: int) -> Weight:
        sys_n = self.system.system(n)
        return from_fundamental_coords(sys_n, self.coefficients(sys_n.rank))

    def support_size(self) -> int | None:
        """Index of the last nonzero coefficient, None if there are infinitely many."""
        if not self.tail.vanishes():
            return None
        nz = [j for j, c in enumerate(self.head, 1) if c]
        return nz[-1] if nz else 0

    def to_json(self) -> dict:
        return {"coefficients": list(self.head), "tail": self.tail.to_json()}


@dataclass(frozen=True)
class SmoothVerdict:
    smooth: bool
    bound: Fraction | None
    # (level, sup-norm) pairs; strictly increasing norms when not smooth
    witness: tuple = ()


def _levels_until_stable(spec: DirectSystemSpec, need_rank: int) -> list[int]:
    """Levels 1..N where N is the first level whose rank covers need_rank (or stops growing)."""
    levels = []
    n = 1
    while True:
        levels.append(n)
        if spec.depth is not None and n >= spec.depth:
            return levels
        r = spec.rank(n)
        if r >= need_rank:
            return levels
        if n >= len(spec.prefix) and spec.step == 0:
            return levels
        n += 1


def is_smooth_weight(mu: ProfiniteWeight, witness_levels: int = 10) -> SmoothVerdict:
    spec = mu.system
    support = mu.support_size()
    if spec.bounded() or support is not None:
        need = max(spec.prefix[-1] if spec.bounded() else 0, support or 0)
        levels = _levels_until_stable(spec, need)
        norms = [(n, sup_norm(mu.level(n))) for n in levels]
        return SmoothVerdict(True, max(v for _, v in norms), tuple(norms))
    # unbounded coefficients on an unbounded rank sequence: sample levels where the rank grows
    wit = []
    n = 1
    last_rank = None
    while len(wit) < witness_levels:
        r = spec.rank(n)
        if r != last_rank and r > len(mu.head):
            wit.append((n, sup_norm(mu.level(n))))
        last_rank = r
        n += 1
    return SmoothVerdict(False, None, tuple(wit))


def strictly_increasing(values: Iterable) -> bool:
    vals = list(values)
    return all(a < b for a, b in zip(vals, vals[1:]))

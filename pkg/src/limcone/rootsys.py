"""Classical restricted root systems A/B/C/D with increasing-coefficient conventions.

Coordinates are in the orthonormal e-basis.  A-type of rank r lives in
Q^(r+1) modulo the all-ones vector.  Positive roots are the ones whose last
nonzero coordinate is positive, and simple roots are numbered from the
"small" end: alpha_1 involves e_1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import RankError, ShapeError
from .exact import ZERO, frac, solve_dense

KINDS = ("A", "B", "C", "D")
MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 2}
# below these ranks the diagram degenerates (B_1 = C_1 = A_1, C_2 = B_2, D_3 = A_3, D_2 = A_1 x A_1)
CLASSICAL_MIN = {"A": 1, "B": 2, "C": 3, "D": 4}


@dataclass(frozen=True)
class DynkinType:
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ShapeError(f"unknown Dynkin type {self.kind!r}")

    def __str__(self):
        return self.kind


def dynkin(kind) -> DynkinType:
    return kind if isinstance(kind, DynkinType) else DynkinType(str(kind).upper())


def ambient_dim(kind: str, rank: int) -> int:
    return rank + 1 if kind == "A" else rank


@dataclass(frozen=True, eq=False)
class Weight:
    dynkin: DynkinType
    rank: int
    coords: tuple

    def __post_init__(self):
        coords = tuple(frac(c) for c in self.coords)
        if len(coords) != ambient_dim(self.dynkin.kind, self.rank):
            raise ShapeError(
                f"{self.dynkin}{self.rank} weight needs {ambient_dim(self.dynkin.kind, self.rank)} coordinates, got {len(coords)}"
            )
        object.__setattr__(self, "coords", coords)

    def canonical(self) -> tuple:
        """Representative used for display and hashing (first coordinate 0 for A-type)."""
        if self.dynkin.kind == "A":
            c0 = self.coords[0]
            return tuple(c - c0 for c in self.coords)
        return self.coords

    def __eq__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return (self.dynkin, self.rank) == (other.dynkin, other.rank) and self.canonical() == other.canonical()

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.dynkin.kind, self.rank, self.canonical()))
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other):
        _same_shape(self, other)
        return Weight(self.dynkin, self.rank, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        _same_shape(self, other)
        return Weight(self.dynkin, self.rank, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "Weight":
        c = frac(c)
        return Weight(self.dynkin, self.rank, tuple(c * a for a in self.coords))

    def __repr__(self):
        body = ",".join(_fmt(c) for c in self.canonical())
        return f"Weight({self.dynkin}{self.rank}: ({body}))"


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _same_shape(a: Weight, b: Weight) -> None:
    if (a.dynkin, a.rank) != (b.dynkin, b.rank):
        raise ShapeError(f"weights of {a.dynkin}{a.rank} and {b.dynkin}{b.rank} do not mix")


def inner(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), ZERO)


def _unit(n: int, i: int, c=1) -> tuple:
    return tuple(Fraction(c) if j == i else ZERO for j in range(n))


def _vec(n: int, entries: dict) -> tuple:
    return tuple(Fraction(entries.get(j, 0)) for j in range(n))


@dataclass(frozen=True)
class RestrictedRootSystem:
    dynkin: DynkinType
    rank: int
    positive_roots: tuple = field(repr=False)
    simple_roots: tuple = field(repr=False)
    fundamental_weights: tuple = field(repr=False)

    @property
    def kind(self) -> str:
        return self.dynkin.kind

    @property
    def dim(self) -> int:
        return ambient_dim(self.kind, self.rank)

    def weight(self, coords: Iterable) -> Weight:
        return Weight(self.dynkin, self.rank, tuple(coords))

    def all_roots(self) -> tuple:
        return self.positive_roots + tuple(r.scale(-1) for r in self.positive_roots)


def positive_root_vectors(kind: str, r: int) -> list[tuple]:
    """The positive indivisible roots as coordinate tuples, ordered by (j, i, sign)."""
    n = ambient_dim(kind, r)
    out = []
    for j in range(n):
        if kind in "BC":
            out.append(_unit(n, j, 1 if kind == "B" else 2))
        for i in range(j):
            out.append(_vec(n, {j: 1, i: -1}))
            if kind != "A":
                out.append(_vec(n, {j: 1, i: 1}))
    return out


def simple_root_vectors(kind: str, r: int) -> list[tuple]:
    n = ambient_dim(kind, r)
    if kind == "A":
        return [_vec(n, {j + 1: 1, j: -1}) for j in range(r)]
    first = {
        "B": _vec(n, {0: 1}),
        "C": _vec(n, {0: 2}),
        "D": _vec(n, {0: 1, 1: 1}),
    }[kind]
    rest_start = 2 if kind == "D" else 1
    out = [first]
    if kind == "D":
        out.append(_vec(n, {1: 1, 0: -1}))
    for j in range(rest_start, r):
        out.append(_vec(n, {j: 1, j - 1: -1}))
    return out


def _solve_fundamental(kind: str, r: int, simple: list[tuple]) -> list[tuple]:
    """Solve <xi_i, alpha_j>/<alpha_j, alpha_j> = delta_ij exactly."""
    n = ambient_dim(kind, r)
    rows = [[a / inner(alpha, alpha) for a in alpha] for alpha in simple]
    if kind == "A":
        # pin the A-type representative: first coordinate 0
        rows.append([Fraction(1)] + [ZERO] * (n - 1))
    out = []
    for i in range(r):
        rhs = [Fraction(int(i == j)) for j in range(r)]
        if kind == "A":
            rhs.append(ZERO)
        x = solve_dense(rows, rhs)
        if x is None:
            raise ArithmeticError(f"no fundamental weight {i + 1} for {kind}{r}")
        out.append(tuple(x))
    return out


def check_rank(kind: str, rank: int) -> None:
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise RankError(f"rank must be an integer, got {rank!r}")
    if rank < MIN_RANK[kind]:
        raise RankError(f"{kind} needs rank >= {MIN_RANK[kind]}, got {rank}")


@lru_cache(maxsize=None)
def _build(kind: str, rank: int) -> RestrictedRootSystem:
    dt = DynkinType(kind)
    simple = simple_root_vectors(kind, rank)
    fund = _solve_fundamental(kind, rank, simple)
    mk = lambda v: Weight(dt, rank, v)  # noqa: E731
    return RestrictedRootSystem(
        dt,
        rank,
        tuple(mk(v) for v in positive_root_vectors(kind, rank)),
        tuple(mk(v) for v in simple),
        tuple(mk(v) for v in fund),
    )


def build_system(kind, rank: int, warn: bool = True) -> RestrictedRootSystem:
    kind = dynkin(kind).kind
    check_rank(kind, rank)
    if warn and rank < CLASSICAL_MIN[kind]:
        warnings.warn(
            f"{kind}{rank} is below the classical range; it is kept as a labeled system "
            "(isomorphic to a system of another type)",
            stacklevel=2,
        )
    return _build(kind, rank)


def fundamental_weights(system: RestrictedRootSystem) -> tuple:
    return system.fundamental_weights


def _check(system: RestrictedRootSystem, lam: Weight) -> None:
    if lam.dynkin != system.dynkin or lam.rank != system.rank:
        raise ShapeError(f"weight of {lam.dynkin}{lam.rank} given to {system.dynkin}{system.rank}")


def is_dominant_integral(system: RestrictedRootSystem, lam: Weight) -> bool:
    """<lam, alpha>/<alpha, alpha> is a nonnegative integer for every positive root."""
    _check(system, lam)
    memo = lam.__dict__.get("_dominant")
    if memo is None:
        memo = _dominant(system.kind, system.rank, _key(lam.coords))
        object.__setattr__(lam, "_dominant", memo)
    return memo


@lru_cache(maxsize=None)
def _integer_roots(kind: str, rank: int) -> tuple:
    return tuple(
        (tuple(int(x) for x in a.coords), int(inner(a.coords, a.coords))) for a in _build(kind, rank).positive_roots
    )


def _key(coords) -> tuple:
    # cache key: integer pairs hash much faster than Fractions
    return tuple((c.numerator, c.denominator) for c in coords)


@lru_cache(maxsize=1 << 16)
def _dominant(kind: str, rank: int, coords: tuple) -> bool:
    # clear denominators so the test runs on integers
    den = math.lcm(*(d for _, d in coords))
    nums = [n * (den // d) for n, d in coords]
    for vec, norm in _integer_roots(kind, rank):
        s = sum(a * b for a, b in zip(nums, vec) if b)
        if s < 0 or s % (den * norm):
            return False
    return True


def to_fundamental_coords(system: RestrictedRootSystem, lam: Weight) -> tuple:
    """Coefficients c with lam = sum c_i xi_i.

    Pairing with the simple coroots reads them off directly, which is exact
    and well defined on the A-type quotient since every root has coordinate sum 0.
    """
    _check(system, lam)
    return _coeffs_of(system.kind, system.rank, _key(lam.coords))


@lru_cache(maxsize=1 << 16)
def _coeffs_of(kind: str, rank: int, key: tuple) -> tuple:
    coords = tuple(Fraction(n, d) for n, d in key)
    return tuple(inner(coords, a.coords) / inner(a.coords, a.coords) for a in _build(kind, rank).simple_roots)


def from_fundamental_coords(system: RestrictedRootSystem, coeffs: Sequence) -> Weight:
    if len(coeffs) != system.rank:
        raise ShapeError(f"expected {system.rank} fundamental coordinates, got {len(coeffs)}")
    return _weight_from_coeffs(system.kind, system.rank, _key(frac(c) for c in coeffs))


@lru_cache(maxsize=1 << 16)
def _weight_from_coeffs(kind: str, rank: int, key: tuple) -> Weight:
    coeffs = [Fraction(n, d) for n, d in key]
    system = _build(kind, rank)
    acc = [ZERO] * system.dim
    for c, xi in zip(coeffs, system.fundamental_weights):
        if c:
            acc = [a + c * x for a, x in zip(acc, xi.coords)]
    return system.weight(acc)

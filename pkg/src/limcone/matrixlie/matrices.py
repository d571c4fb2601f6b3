"""Sparse square matrices over the Gaussian rationals, plus standard Lie algebra bases."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from ..exact import GaussRat

_ZERO = GaussRat(0)
_ONE = GaussRat(1)
_I = GaussRat(0, 1)


def _g(x) -> GaussRat:
    return x if isinstance(x, GaussRat) else GaussRat(x)


class Mat:
    """An n x n matrix stored as {(row, col): nonzero GaussRat}."""

    __slots__ = ("n", "entries", "_hash")

    def __init__(self, n: int, entries: dict | None = None):
        self.n = n
        self.entries = {k: _g(v) for k, v in (entries or {}).items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, n: int, entries: dict) -> "Mat":
        m = cls.__new__(cls)
        m.n = n
        m.entries = entries
        m._hash = None
        return m

    @classmethod
    def identity(cls, n: int, c=1) -> "Mat":
        return cls(n, {(i, i): c for i in range(n)})

    @classmethod
    def unit(cls, n: int, i: int, j: int, c=1) -> "Mat":
        return cls(n, {(i, j): c})

    @classmethod
    def diag(cls, values: Sequence) -> "Mat":
        return cls(len(values), {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def permutation(cls, images: Sequence[int]) -> "Mat":
        """The matrix sending basis vector a to basis vector images[a]."""
        return cls(len(images), {(b, a): 1 for a, b in enumerate(images)})

    def __bool__(self):
        return bool(self.entries)

    def __eq__(self, other):
        return isinstance(other, Mat) and self.n == other.n and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.entries.items())))
        return self._hash

    def __add__(self, other: "Mat") -> "Mat":
        out = dict(self.entries)
        for k, v in other.entries.items():
            t = out.get(k)
            t = v if t is None else t + v
            if t:
                out[k] = t
            else:
                out.pop(k, None)
        return Mat._raw(self.n, out)

    def __neg__(self) -> "Mat":
        return Mat._raw(self.n, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, c) -> "Mat":
        c = _g(c)
        if not c:
            return Mat(self.n)
        return Mat._raw(self.n, {k: c * v for k, v in self.entries.items()})

    def __matmul__(self, other: "Mat") -> "Mat":
        rows: dict[int, list] = {}
        for (i, j), v in other.entries.items():
            rows.setdefault(i, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in rows.get(k, ()):
                key = (i, j)
                t = out.get(key)
                out[key] = a * b if t is None else t + a * b
        return Mat._raw(self.n, {k: v for k, v in out.items() if v})

    def conj(self) -> "Mat":
        return Mat._raw(self.n, {k: v.conjugate() for k, v in self.entries.items()})

    def transpose(self) -> "Mat":
        return Mat._raw(self.n, {(j, i): v for (i, j), v in self.entries.items()})

    def adjoint(self) -> "Mat":
        return Mat._raw(self.n, {(j, i): v.conjugate() for (i, j), v in self.entries.items()})

    def trace(self) -> GaussRat:
        t = GaussRat(0)
        for (i, j), v in self.entries.items():
            if i == j:
                t = t + v
        return t

    def block(self, index: Sequence[int]) -> "Mat":
        """Principal submatrix on the given rows/columns, reindexed 0..len-1."""
        pos = {a: b for b, a in enumerate(index)}
        return Mat._raw(
            len(index),
            {(pos[i], pos[j]): v for (i, j), v in self.entries.items() if i in pos and j in pos},
        )

    def embed(self, size: int, index: Sequence[int]) -> "Mat":
        """Place this matrix into a size x size zero matrix at rows/cols ``index``."""
        return Mat._raw(size, {(index[i], index[j]): v for (i, j), v in self.entries.items()})

    def realvec(self) -> dict:
        """Real coordinates: key 2*(i*n + j) for the real part, +1 for the imaginary part."""
        n = self.n
        out = {}
        for (i, j), v in self.entries.items():
            base = 2 * (i * n + j)
            if v.re:
                out[base] = v.re
            if v.im:
                out[base + 1] = v.im
        return out

    def dense(self) -> list[list]:
        out = [[_ZERO] * self.n for _ in range(self.n)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence]) -> "Mat":
        return cls(len(rows), {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    def __repr__(self):
        items = ", ".join(f"({i},{j}):{v!r}" for (i, j), v in sorted(self.entries.items()))
        return f"Mat({self.n}; {items})"


def bracket(x: Mat, y: Mat) -> Mat:
    return x @ y - y @ x


def combine(coeffs: Iterable, mats: Sequence[Mat], n: int) -> Mat:
    out = Mat(n)
    for c, m in zip(coeffs, mats):
        if c:
            out = out + m.scale(c)
    return out


def block_diag(*mats: Mat) -> Mat:
    size = sum(m.n for m in mats)
    out = {}
    off = 0
    for m in mats:
        for (i, j), v in m.entries.items():
            out[(i + off, j + off)] = v
        off += m.n
    return Mat._raw(size, out)


# --- quaternions as 2x2 complex blocks -----------------------------------------

# q = z + w j  <->  [[z, w], [-conj(w), conj(z)]]
QUATERNION_UNITS = {
    "1": ((1, 0), (0, 1)),
    "i": ((_I, 0), (0, -_I)),
    "j": ((0, 1), (-1, 0)),
    "k": ((0, _I), (_I, 0)),
}


def quaternion_block(n: int, a: int, b: int, unit: str, c=1) -> Mat:
    """The 2n x 2n complex image of the quaternionic matrix c * unit * E_ab (n x n)."""
    blk = QUATERNION_UNITS[unit]
    out = {}
    for r in range(2):
        for s in range(2):
            v = blk[r][s]
            if v:
                out[(2 * a + r, 2 * b + s)] = _g(v) * c
    return Mat(2 * n, out)


# --- bases of compact classical Lie algebras ------------------------------------


def su_basis(n: int) -> list[Mat]:
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            out.append(Mat(n, {(a, b): 1, (b, a): -1}))
            out.append(Mat(n, {(a, b): _I, (b, a): _I}))
    for a in range(n - 1):
        out.append(Mat(n, {(a, a): _I, (a + 1, a + 1): -_I}))
    return out


def so_basis(n: int) -> list[Mat]:
    return [Mat(n, {(a, b): 1, (b, a): -1}) for a in range(n) for b in range(a + 1, n)]


def sp_basis(n: int) -> list[Mat]:
    """Quaternionic anti-Hermitian n x n matrices, as 2n x 2n complex matrices."""
    out = []
    for a in range(n):
        for b in range(a + 1, n):
            out.append(quaternion_block(n, a, b, "1") + quaternion_block(n, b, a, "1", -1))
            for u in "ijk":
                out.append(quaternion_block(n, a, b, u) + quaternion_block(n, b, a, u))
        for u in "ijk":
            out.append(quaternion_block(n, a, a, u))
    return out


def rotation(n: int, a: int, b: int) -> Mat:
    return Mat(n, {(a, b): 1, (b, a): -1})


def interleave(n: int) -> list[int]:
    """Images of the permutation sending a -> 2a and n + a -> 2a + 1 (size 2n)."""
    return [2 * a for a in range(n)] + [2 * a + 1 for a in range(n)]


def frac_values(m: Mat) -> list[Fraction]:
    return [x for v in m.entries.values() for x in (v.re, v.im)]

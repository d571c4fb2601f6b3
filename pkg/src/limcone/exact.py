"""Exact scalars and sparse linear algebra over Q and Q(i).

Vectors are plain dicts mapping a hashable index to a nonzero field element.
Every routine here only uses ``+ - * /`` and truthiness of the scalars, so the
same code runs over :class:`fractions.Fraction` and :class:`GaussRat`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction (never floats)."""
    if type(x) is Fraction or isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class GaussRat:
    """A Gaussian rational re + i*im with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussRat):
            return x
        return GaussRat(x, 0)

    def __add__(self, other):
        o = GaussRat._lift(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussRat._lift(other)
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussRat._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            o = Fraction(other)
            return GaussRat(self.re * o, self.im * o)
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussRat._lift(other)
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("GaussRat division by zero")
        a, b = self.re, self.im
        return GaussRat((a * o.re + b * o.im) / n, (b * o.re - a * o.im) / n)

    def __rtruediv__(self, other):
        return GaussRat._lift(other) / self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __repr__(self):
        if not self.im:
            return fmt_frac(self.re)
        if not self.re:
            return f"{fmt_frac(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{fmt_frac(self.re)}{sign}{fmt_frac(abs(self.im))}i"


I = GaussRat(0, 1)


def parse_scalar(x):
    """Parse a JSON scalar: int, "p/q", or {"re": .., "im": ..}; returns Fraction or GaussRat."""
    if isinstance(x, dict):
        return GaussRat(frac(x.get("re", 0)), frac(x.get("im", 0)))
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return GaussRat(frac(x[0]), frac(x[1]))
    return frac(x)


def abs2(x) -> Fraction:
    if isinstance(x, GaussRat):
        return x.abs2()
    q = frac(x)
    return q * q


# --- sparse vectors --------------------------------------------------------


def axpy(y: dict, a, x: Mapping) -> None:
    """In place y += a*x, dropping entries that cancel."""
    for k, v in x.items():
        t = y.get(k)
        t = a * v if t is None else t + a * v
        if t:
            y[k] = t
        else:
            y.pop(k, None)


def scaled(x: Mapping, a) -> dict:
    return {k: a * v for k, v in x.items()} if a else {}


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a span.

    Each stored row has coefficient 1 at its pivot and 0 at every other pivot,
    so reducing a vector takes one pass.  With ``track=True`` every row also
    records its expression in terms of the inserted vectors, which yields
    coordinates and linear dependencies.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[Hashable, dict] = {}
        self.combos: dict[Hashable, dict] = {}
        self.track = track
        self.count = 0
        self.dependencies: list[dict] = []
        self.independent: list[int] = []

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping, combo: dict | None = None) -> dict:
        w = dict(v)
        pivots = [p for p in w if p in self.rows]
        for p in pivots:
            c = w.get(p)
            if c:
                axpy(w, -c, self.rows[p])
                if combo is not None:
                    axpy(combo, -c, self.combos[p])
        return w

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def insert(self, v: Mapping) -> bool:
        """Add v to the span; returns True when v was independent."""
        idx = self.count
        self.count += 1
        combo = {idx: ONE} if self.track else None
        w = self.reduce(v, combo)
        if not w:
            if self.track:
                self.dependencies.append(combo)
            return False
        p = min(w)
        c = w[p]
        w = {k: x / c for k, x in w.items()}
        if self.track:
            combo = {k: x / c for k, x in combo.items()}
        for q, row in self.rows.items():
            t = row.get(p)
            if t:
                axpy(row, -t, w)
                if self.track:
                    axpy(self.combos[q], -t, combo)
        self.rows[p] = w
        if self.track:
            self.combos[p] = combo
        self.independent.append(idx)
        return True

    def coordinates(self, v: Mapping) -> dict | None:
        """Coefficients on inserted vectors expressing v, or None if v is outside the span."""
        if not self.track:
            raise ValueError("coordinates need track=True")
        w = dict(v)
        combo: dict = {}
        for p, row in self.rows.items():
            c = w.get(p)
            if c:
                axpy(w, -c, row)
                axpy(combo, c, self.combos[p])
        return None if w else combo


def rank(vectors: Iterable[Mapping]) -> int:
    e = Echelon()
    for v in vectors:
        e.insert(v)
    return e.rank


def dependencies(vectors: Iterable[Mapping]) -> list[dict]:
    """A basis of {c : sum c_j v_j = 0}, each as a dict index -> coefficient."""
    e = Echelon(track=True)
    for v in vectors:
        e.insert(v)
    return e.dependencies


def solve_dense(a: list[list], b: list) -> list | None:
    """Solve a x = b for one solution (free variables set to 0); None if inconsistent."""
    n_cols = len(a[0]) if a else 0
    rows = [{j: x for j, x in enumerate(r) if x} for r in a]
    rhs = n_cols
    for r, bi in zip(rows, b):
        if bi:
            r[rhs] = bi
    e = Echelon()
    for r in rows:
        e.insert(r)
    if rhs in e.rows:
        return None
    x = [ZERO] * n_cols
    for p, row in e.rows.items():
        x[p] = row.get(rhs, ZERO)
    return x


def inverse(a: list[list]) -> list[list]:
    """Gauss-Jordan inverse of a square matrix over any exact field."""
    n = len(a)
    m = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        c = m[col][col]
        m[col] = [x / c for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                t = m[r][col]
                m[r] = [x - t * y for x, y in zip(m[r], m[col])]
    return [r[n:] for r in m]

"""Explicit compact-picture matrix realizations of the classical rows.

For every row and level n we build a spanning set of the compact algebra u_n,
the involution X -> J X' J^{-1} (X' = conj(X) for rows 8 and 9, X otherwise)
and a basis Y_1..Y_r of i*a_n inside the (-1)-eigenspace.  H_k = -i Y_k is
then a basis of the noncompact a_n, and ``ecoords[k]`` records the vector
x_k with alpha(H_k) = <c, x_k> for a root with e-coordinates c.

``layout`` says where level n sits inside level n+1:
"prefix" (X -> diag(X, 0)), "center" (X -> diag(0, X, 0)) or
"pair" (group case, (X, Y) -> (diag(X, 0), diag(Y, 0))).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import RankError, TooLarge
from ..exact import GaussRat
from ..table import DEFAULT_P, get_row
from .matrices import (
    Mat,
    block_diag,
    interleave,
    quaternion_block,
    rotation,
    so_basis,
    sp_basis,
    su_basis,
)

DEFAULT_DIM_CAP = 24
_I = GaussRat(0, 1)


def dim_cap() -> int:
    raw = os.environ.get("LIMCONE_DIM_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_DIM_CAP
    try:
        return int(raw)
    except ValueError:
        raise TooLarge(f"LIMCONE_DIM_CAP must be an integer, got {raw!r}") from None


@dataclass(frozen=True, eq=False)
class MatrixRealization:
    row: str
    level: int
    size: int
    basis_u: tuple
    J: Mat
    J_inv: Mat
    conj_theta: bool
    basis_a: tuple
    ecoords: tuple
    kind: str
    rank: int
    layout: str
    picture: str = "theta"
    p: int | None = None

    def theta(self, x: Mat) -> Mat:
        y = x.conj() if self.conj_theta else x
        return self.J @ y @ self.J_inv

    @property
    def e_dim(self) -> int:
        return len(self.ecoords[0]) if self.ecoords else 0

    def slots(self, size: int) -> list[int]:
        """Indices of this level's rows/columns inside a larger level of the same row."""
        n, m = self.size, size
        if self.layout == "prefix":
            return list(range(n))
        if self.layout == "center":
            off = (m - n) // 2
            return [off + i for i in range(n)]
        half, big = n // 2, m // 2
        return list(range(half)) + [big + i for i in range(half)]

    def include(self, x: Mat, size: int) -> Mat:
        return x.embed(size, self.slots(size))


def _unit_vec(n: int, i: int) -> tuple:
    return tuple(Fraction(int(j == i)) for j in range(n))


def _a_type_coords(n: int) -> tuple:
    """x_k = e_k - e_{k+1} in Q^n."""
    return tuple(
        tuple(Fraction(1 if j == k else -1 if j == k + 1 else 0) for j in range(n)) for k in range(n - 1)
    )


def _pair(x: Mat, y: Mat) -> Mat:
    return block_diag(x, y)


def _group_case(row: str, n: int, l_basis: list[Mat], cartan: list[Mat], ecoords, kind: str, rank: int):
    size = 2 * l_basis[0].n
    zero = Mat(size // 2)
    basis_u = [_pair(x, zero) for x in l_basis] + [_pair(zero, x) for x in l_basis]
    half = size // 2
    swap = Mat(size, {**{(i, half + i): 1 for i in range(half)}, **{(half + i, i): 1 for i in range(half)}})
    basis_a = [_pair(h, -h) for h in cartan]
    return dict(size=size, basis_u=basis_u, J=swap, J_inv=swap, conj_theta=False, basis_a=basis_a,
                ecoords=ecoords, kind=kind, rank=rank, layout="pair")


def _row_1(n):
    cartan = [Mat(n, {(k, k): _I, (k + 1, k + 1): -_I}) for k in range(n - 1)]
    return _group_case("1", n, su_basis(n), cartan, _a_type_coords(n), "A", n - 1)


def _row_2(n):
    m = 2 * n + 1
    cartan = [rotation(m, 2 * k + 1, 2 * k + 2) for k in range(n)]
    return _group_case("2", n, so_basis(m), cartan, tuple(_unit_vec(n, k) for k in range(n)), "B", n)


def _row_3(n):
    m = 2 * n
    cartan = [rotation(m, 2 * k, 2 * k + 1) for k in range(n)]
    return _group_case("3", n, so_basis(m), cartan, tuple(_unit_vec(n, k) for k in range(n)), "D", n)


def _row_4(n):
    cartan = [quaternion_block(n, k, k, "i") for k in range(n)]
    return _group_case("4", n, sp_basis(n), cartan, tuple(_unit_vec(n, k) for k in range(n)), "C", n)


def _signature(plus: int, minus: int) -> Mat:
    return Mat.diag([1] * plus + [-1] * minus)


def _offdiag_pairs(size: int, pairs, unit_size: int = 1) -> list[Mat]:
    """Y = E_ab - E_ba for each (a, b), with scalar blocks of the given size."""
    out = []
    for a, b in pairs:
        e = {}
        for r in range(unit_size):
            e[(unit_size * a + r, unit_size * b + r)] = 1
            e[(unit_size * b + r, unit_size * a + r)] = -1
        out.append(Mat(size, e))
    return out


def _stable(row: str, n: int, p: int, basis, unit_size: int, kind: str):
    if n < 2 * p + 1:
        raise RankError(f"row {row} with p={p} needs n >= {2 * p + 1}, got {n}")
    size = basis[0].n
    J = _signature(unit_size * p, unit_size * (n - p))
    basis_a = _offdiag_pairs(size, [(k, p + k) for k in range(p)], unit_size)
    return dict(size=size, basis_u=basis, J=J, J_inv=J, conj_theta=False, basis_a=basis_a,
                ecoords=tuple(_unit_vec(p, k) for k in range(p)), kind=kind, rank=p, layout="prefix")


def _antidiagonal(row: str, n: int, basis, unit_size: int, kind: str):
    size = basis[0].n
    J = _signature(unit_size * n, unit_size * n)
    # a_1 next to the center, a_n in the corners
    basis_a = _offdiag_pairs(size, [(n - 1 - k, n + k) for k in range(n)], unit_size)
    return dict(size=size, basis_u=basis, J=J, J_inv=J, conj_theta=False, basis_a=basis_a,
                ecoords=tuple(_unit_vec(n, k) for k in range(n)), kind=kind, rank=n, layout="center")


def _jblocks(count: int, lead_zero: bool = False) -> Mat:
    """diag(j, ..., j) with j = [[0, -1], [1, 0]]."""
    e = {}
    for b in range(count):
        e[(2 * b, 2 * b + 1)] = -1
        e[(2 * b + 1, 2 * b)] = 1
    return Mat(2 * count, e)


def _row_8(n):
    basis_a = [Mat(n, {(k, k): _I, (k + 1, k + 1): -_I}) for k in range(n - 1)]
    return dict(size=n, basis_u=su_basis(n), J=Mat.identity(n), J_inv=Mat.identity(n), conj_theta=True,
                basis_a=basis_a, ecoords=_a_type_coords(n), kind="A", rank=n - 1, layout="prefix")


def _row_9(n, picture):
    size = 2 * n
    if picture == "tilde":
        J = Mat(size, {**{(i, n + i): -1 for i in range(n)}, **{(n + i, i): 1 for i in range(n)}})
        basis_a = [
            Mat(size, {(k, k): _I, (k + 1, k + 1): -_I, (n + k, n + k): _I, (n + k + 1, n + k + 1): -_I})
            for k in range(n - 1)
        ]
    else:
        J = _jblocks(n)
        basis_a = [
            Mat(size, {(2 * k, 2 * k): _I, (2 * k + 1, 2 * k + 1): _I,
                       (2 * k + 2, 2 * k + 2): -_I, (2 * k + 3, 2 * k + 3): -_I})
            for k in range(n - 1)
        ]
    return dict(size=size, basis_u=su_basis(size), J=J, J_inv=-J, conj_theta=True, basis_a=basis_a,
                ecoords=_a_type_coords(n), kind="A", rank=n - 1, layout="prefix")


def _so_star(n, picture, lead: int):
    """so(4n + lead) with the complex structure J; lead = 0 (row 10_1) or 2 (row 10_2)."""
    size = 4 * n + lead
    half = size // 2
    if picture == "tilde":
        J = Mat(size, {**{(i, half + i): -1 for i in range(half)}, **{(half + i, i): 1 for i in range(half)}})
        off = lead // 2
        basis_a = [
            Mat(size, {
                (off + 2 * k, off + 2 * k + 1): 1, (off + 2 * k + 1, off + 2 * k): -1,
                (half + off + 2 * k, half + off + 2 * k + 1): -1, (half + off + 2 * k + 1, half + off + 2 * k): 1,
            })
            for k in range(n)
        ]
    else:
        J = _jblocks(half)
        basis_a = []
        for k in range(n):
            o = lead + 4 * k
            basis_a.append(Mat(size, {(o, o + 2): 1, (o + 2, o): -1, (o + 1, o + 3): -1, (o + 3, o + 1): 1}))
    return dict(size=size, basis_u=so_basis(size), J=J, J_inv=-J, conj_theta=False, basis_a=basis_a,
                ecoords=tuple(_unit_vec(n, k) for k in range(n)), kind="C", rank=n, layout="prefix")


def _row_11(n):
    size = 2 * n
    J = Mat.diag([_I if r % 2 == 0 else -_I for r in range(size)])
    basis_a = [quaternion_block(n, k, k, "j") for k in range(n)]
    return dict(size=size, basis_u=sp_basis(n), J=J, J_inv=-J, conj_theta=False, basis_a=basis_a,
                ecoords=tuple(_unit_vec(n, k) for k in range(n)), kind="C", rank=n, layout="prefix")


def ambient_size(row: str, n: int) -> int:
    return {
        "1": 2 * n, "2": 2 * (2 * n + 1), "3": 4 * n, "4": 4 * n,
        "5_1": n, "5_2": 2 * n, "6_1": n, "6_2": 2 * n, "7_1": 2 * n, "7_2": 4 * n,
        "8": n, "9": 2 * n, "10_1": 4 * n, "10_2": 4 * n + 2, "11": 2 * n,
    }[row]


def realize(row, n: int, p: int = DEFAULT_P, picture: str = "theta", cap: int | None = None) -> MatrixRealization:
    row = str(row)
    meta = get_row(row)
    if n < meta.first_level(p):
        raise RankError(f"row {row} starts at level {meta.first_level(p)}, got {n}")
    if picture not in ("theta", "tilde"):
        raise ValueError(f"unknown picture {picture!r}")
    if picture == "tilde" and row not in ("9", "10_1", "10_2"):
        raise ValueError(f"row {row} has no second picture")
    cap = dim_cap() if cap is None else cap
    size = ambient_size(row, n)
    if size > cap:
        raise TooLarge(f"row {row} at level {n} needs {size}x{size} matrices (cap {cap})")
    return _cached(row, n, p, picture)


@lru_cache(maxsize=None)
def _cached(row: str, n: int, p: int, picture: str) -> MatrixRealization:
    if row == "1":
        d = _row_1(n)
    elif row == "2":
        d = _row_2(n)
    elif row == "3":
        d = _row_3(n)
    elif row == "4":
        d = _row_4(n)
    elif row == "5_1":
        d = _stable(row, n, p, su_basis(n), 1, "C")
    elif row == "5_2":
        d = _antidiagonal(row, n, su_basis(2 * n), 1, "C")
    elif row == "6_1":
        d = _stable(row, n, p, so_basis(n), 1, "B")
    elif row == "6_2":
        d = _antidiagonal(row, n, so_basis(2 * n), 1, "B")
    elif row == "7_1":
        d = _stable(row, n, p, sp_basis(n), 2, "C")
    elif row == "7_2":
        d = _antidiagonal(row, n, sp_basis(2 * n), 2, "C")
    elif row == "8":
        d = _row_8(n)
    elif row == "9":
        d = _row_9(n, picture)
    elif row == "10_1":
        d = _so_star(n, picture, 0)
    elif row == "10_2":
        d = _so_star(n, picture, 2)
    else:
        d = _row_11(n)
    d["basis_u"] = tuple(d["basis_u"])
    d["basis_a"] = tuple(d["basis_a"])
    stable = get_row(row).rank_stable
    return MatrixRealization(row=row, level=n, picture=picture, p=p if stable else None, **d)


def e_sigma(row: str, n: int) -> Mat:
    """Permutation matrix relating the two pictures of rows 9, 10_1 and 10_2."""
    return Mat.permutation(interleave(ambient_size(row, n) // 2))

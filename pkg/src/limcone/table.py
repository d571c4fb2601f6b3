"""Metadata of the classical direct systems of compact symmetric spaces.

Each row records the noncompact group G_n, the compact group U_n, the Dynkin
type of the indivisible restricted roots as listed, and how its rank grows
with the level n.  ``p`` is the fixed parameter of the rank-stable families.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_P = 2


@dataclass(frozen=True)
class TableRow:
    row: str
    group: str
    compact: str
    kind: str
    # rank at level n is n + rank_shift, or p when rank_stable
    rank_shift: int = 0
    rank_stable: bool = False
    min_level: int = 1

    def rank(self, n: int, p: int = DEFAULT_P) -> int:
        return p if self.rank_stable else n + self.rank_shift

    def first_level(self, p: int = DEFAULT_P) -> int:
        # the rank-stable families need p < n - p for the listed root type
        return 2 * p + 1 if self.rank_stable else self.min_level


ROWS: dict[str, TableRow] = {
    r.row: r
    for r in [
        TableRow("1", "SL(n,C)", "SU(n)xSU(n)", "A", rank_shift=-1, min_level=2),
        TableRow("2", "Spin(2n+1,C)", "Spin(2n+1)xSpin(2n+1)", "B"),
        TableRow("3", "Spin(2n,C)", "Spin(2n)xSpin(2n)", "D", min_level=2),
        TableRow("4", "Sp(n,C)", "Sp(n)xSp(n)", "C"),
        TableRow("5_1", "SU(p,n-p)", "SU(n)", "C", rank_stable=True),
        TableRow("5_2", "SU(n,n)", "SU(2n)", "C"),
        TableRow("6_1", "SO_0(p,n-p)", "SO(n)", "B", rank_stable=True),
        TableRow("6_2", "SO_0(n,n)", "SO(2n)", "B", min_level=2),
        TableRow("7_1", "Sp(p,n-p)", "Sp(n)", "C", rank_stable=True),
        TableRow("7_2", "Sp(n,n)", "Sp(2n)", "C"),
        TableRow("8", "SL(n,R)", "SU(n)", "A", rank_shift=-1, min_level=2),
        TableRow("9", "SL(n,H)", "SU(2n)", "A", rank_shift=-1, min_level=2),
        TableRow("10_1", "SO*(4n)", "SO(4n)", "C"),
        TableRow("10_2", "SO*(2(2n+1))", "SO(4n+2)", "C"),
        TableRow("11", "Sp(n,R)", "Sp(n)", "C"),
    ]
}


def get_row(row) -> TableRow:
    key = str(row)
    if key not in ROWS:
        raise KeyError(f"unknown table row {row!r}; known: {', '.join(ROWS)}")
    return ROWS[key]

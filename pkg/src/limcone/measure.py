"""Cylinder measures on tree sets.

Masses are stored exactly for every represented node; below depth D a tail
rule says how a node's mass is shared among its rule-generated children:
``uniform`` splits evenly, ``point`` is the point-biased rule along a fixed
path x (the x-child keeps 1/2 + 1/2^(n+1) at level n whenever it has
siblings).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NotConsistent, ShapeError, SpecParseError, Unsupported
from .exact import ONE, ZERO, abs2, frac, parse_scalar
from .treeset import TreePath, TreeSet, union_of_cylinders

HALF = Fraction(1, 2)


@lru_cache(maxsize=None)
def point_mass(level: int) -> Fraction:
    """Mass of the x-cylinder at a level where x has siblings."""
    return HALF + Fraction(1, 2 ** (level + 1))


@dataclass(frozen=True)
class CylinderMeasure:
    tree: TreeSet
    masses: tuple  # masses[level-1][index]
    tail: str = "uniform"
    point: TreePath | None = None

    def mass(self, level: int, index: int) -> Fraction:
        self.tree.node(level, index)
        return self.masses[level - 1][index]

    @property
    def total(self) -> Fraction:
        return sum(self.masses[0], ZERO)

    def mass_along(self, x: TreePath, level: int) -> Fraction:
        """Mass of the cylinder of x's node at any level."""
        t = self.tree
        if level <= t.depth:
            return self.masses[level - 1][x.indices[level - 1]]
        leaf = x.indices[-1]
        k = t.tails[leaf].branching
        m = self.masses[-1][leaf]
        on_point = self.tail == "point" and self.point.indices == x.indices
        for lv in range(t.depth + 1, level + 1):
            j = lv - t.depth - 1
            if k == 1:
                continue
            if on_point and x.choice(j) == self.point.choice(j):
                m = point_mass(lv)
            elif on_point:
                m = (m - point_mass(lv)) / (k - 1)
                on_point = False
            else:
                m = m / k
        return m

    def to_json(self) -> dict:
        out = {
            "kind": "explicit",
            "mass": {f"{lv}:{i}": _fmt(m) for lv, row in enumerate(self.masses, 1) for i, m in enumerate(row)},
            "tail": self.tail,
        }
        if self.point is not None:
            out["path"] = list(self.point.indices)
            out["extension"] = list(self.point.extension)
        return out


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def build_rec_measure(tree: TreeSet) -> CylinderMeasure:
    first = len(tree.levels[0])
    masses = [tuple(Fraction(1, first) for _ in range(first))]
    for lv in range(2, tree.depth + 1):
        row = []
        for nd in tree.levels[lv - 1]:
            siblings = len(tree.children(lv - 1, nd.parent))
            row.append(masses[-1][nd.parent] / siblings)
        masses.append(tuple(row))
    return CylinderMeasure(tree, tuple(masses))


def build_point_measure(tree: TreeSet, x: TreePath) -> CylinderMeasure:
    tree.check_path(x)
    first = len(tree.levels[0])
    x0 = x.indices[0]
    if first == 1:
        row1 = [ONE]
    else:
        rest = Fraction(1, 4) / (first - 1)
        row1 = [point_mass(1) if i == x0 else rest for i in range(first)]
    masses = [tuple(row1)]
    for lv in range(2, tree.depth + 1):
        row = []
        xp, xi = x.indices[lv - 2], x.indices[lv - 1]
        above = masses[-1]
        share = {}
        for i, nd in enumerate(tree.levels[lv - 1]):
            p = nd.parent
            if p == xp and i == xi:
                siblings = len(tree.children(lv - 1, p))
                row.append(above[p] if siblings == 1 else point_mass(lv))
                continue
            if p not in share:
                siblings = len(tree.children(lv - 1, p))
                if p != xp or siblings == 1:
                    share[p] = above[p] / siblings
                else:
                    share[p] = (above[p] - point_mass(lv)) / (siblings - 1)
            row.append(share[p])
        masses.append(tuple(row))
    return CylinderMeasure(tree, tuple(masses), "point", x)


def explicit_measure(tree: TreeSet, mass: Mapping, tail: str = "uniform") -> CylinderMeasure:
    """Masses keyed by (level, index) or "level:index"; every node needs one."""
    if tail != "uniform":
        raise Unsupported(f"explicit measures only support the uniform tail, got {tail!r}")
    table: dict = {}
    for key, val in mass.items():
        if isinstance(key, str):
            try:
                lv, _, i = key.partition(":")
                key = (int(lv), int(i))
            except ValueError:
                raise SpecParseError(f"bad node key {key!r}, expected 'level:index'") from None
        table[tuple(key)] = frac(val)
    masses = []
    for lv, nodes in enumerate(tree.levels, 1):
        row = []
        for i in range(len(nodes)):
            if (lv, i) not in table:
                raise NotConsistent(f"no mass for node {i} at level {lv}", (lv, i))
            row.append(table.pop((lv, i)))
        masses.append(tuple(row))
    if table:
        lv, i = sorted(table)[0]
        raise NotConsistent(f"mass given for unknown node {i} at level {lv}", (lv, i))
    return CylinderMeasure(tree, tuple(masses))


def measure_from_spec(tree: TreeSet, spec) -> CylinderMeasure:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise SpecParseError("measure spec must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "rec":
        return build_rec_measure(tree)
    if kind == "point":
        return build_point_measure(tree, TreePath(tuple(spec["path"]), tuple(spec.get("extension", ()))))
    if kind == "explicit":
        return explicit_measure(tree, spec.get("mass", {}), spec.get("tail", "uniform"))
    raise SpecParseError(f"unknown measure kind {kind!r}")


@dataclass(frozen=True)
class MeasureReport:
    ok: bool
    violations: tuple  # (level, index, problem)

    @property
    def first(self):
        return self.violations[0] if self.violations else None


def validate_measure(mu: CylinderMeasure) -> MeasureReport:
    t = mu.tree
    bad = []
    for lv, row in enumerate(mu.masses, 1):
        if len(row) != len(t.levels[lv - 1]):
            bad.append((lv, None, "mass table does not match the tree"))
            continue
        for i, m in enumerate(row):
            if m <= 0:
                bad.append((lv, i, f"mass {m} is not positive"))
    if not bad:
        for lv in range(1, t.depth):
            row = mu.masses[lv]
            for i, m in enumerate(mu.masses[lv - 1]):
                kids = t.children(lv, i)
                below = row[kids[0]] if len(kids) == 1 else sum((row[c] for c in kids), ZERO)
                if below != m:
                    bad.append((lv, i, f"children carry {below}, node carries {m}"))
    return MeasureReport(not bad, tuple(bad))


def atom_mass(mu: CylinderMeasure, x: TreePath) -> Fraction:
    """lim of cylinder masses along x, evaluated in closed form from the tail rule."""
    t = mu.tree
    t.check_path(x)
    leaf = x.indices[-1]
    leaf_mass = mu.masses[-1][leaf]
    k = t.tails[leaf].branching
    if t.system.depth == t.depth or k == 1:
        return leaf_mass
    if mu.tail == "uniform":
        return ZERO
    if mu.tail == "point":
        return HALF if mu.point == x else ZERO
    raise Unsupported(f"no closed form for tail rule {mu.tail!r}")


# --- step sections ------------------------------------------------------------


@dataclass(frozen=True)
class StepSection:
    level: int
    values: tuple

    @classmethod
    def of(cls, level: int, values: Sequence) -> "StepSection":
        return cls(level, tuple(parse_scalar(v) if isinstance(v, (str, dict, list)) else v for v in values))

    def refine(self, tree: TreeSet) -> "StepSection":
        """The same function seen at the next level (values copied to children)."""
        nxt = tree.levels[self.level]
        return StepSection(self.level + 1, tuple(self.values[nd.parent] for nd in nxt))


def _check_section(mu: CylinderMeasure, f: StepSection) -> None:
    if not 1 <= f.level <= mu.tree.depth:
        raise ShapeError(f"section level {f.level} is not represented (depth {mu.tree.depth})")
    if len(f.values) != len(mu.tree.levels[f.level - 1]):
        raise ShapeError(f"section has {len(f.values)} values for {len(mu.tree.levels[f.level - 1])} nodes")


def section_norm(mu: CylinderMeasure, f: StepSection) -> Fraction:
    _check_section(mu, f)
    return sum((abs2(v) * m for v, m in zip(f.values, mu.masses[f.level - 1])), ZERO)


def essential_support(mu: CylinderMeasure, f: StepSection):
    """Level-n nodes where f is nonzero, with the union of their cylinders."""
    _check_section(mu, f)
    nodes = tuple(i for i, v in enumerate(f.values) if v)
    cyl = union_of_cylinders(mu.tree, f.level, nodes) if nodes else None
    return nodes, cyl


def restrict_measure(mu: CylinderMeasure, cyl) -> CylinderMeasure:
    """Inherited masses on a sub-tree produced by cylinder/union_of_cylinders.

    Nodes at or below the cylinder level keep their masses; their ancestors
    carry the sum over the kept children.
    """
    masses = []
    for lv, m in enumerate(cyl.index_maps):
        row = [ZERO] * len(m)
        for old, new in m.items():
            row[new] = mu.masses[lv][old]
        masses.append(row)
    # ancestors of the chosen nodes keep only what lies below the kept nodes
    sub = cyl.tree
    for lv in range(cyl.level - 1, 0, -1):
        masses[lv - 1] = [sum((masses[lv][c] for c in sub.children(lv, i)), ZERO) for i in range(len(masses[lv - 1]))]
    masses = [tuple(row) for row in masses]
    point = None
    if mu.point is not None:
        idx = mu.point.indices
        if all(i in m for i, m in zip(idx, cyl.index_maps)):
            point = TreePath(tuple(m[i] for i, m in zip(idx, cyl.index_maps)), mu.point.extension)
    tail = mu.tail if (mu.tail != "point" or point is not None) else "uniform"
    return CylinderMeasure(cyl.tree, tuple(masses), tail, point)


# --- disintegration -----------------------------------------------------------


def extract_norms(mu: CylinderMeasure) -> dict:
    return {(lv, i): m for lv, row in enumerate(mu.masses, 1) for i, m in enumerate(row)}


def measure_from_norms(tree: TreeSet, norms: Mapping, tail: str = "uniform", point: TreePath | None = None):
    """The cylinder measure mu(node) = ||w_node||^2; NotConsistent names the first bad node."""
    table = {}
    for key, val in norms.items():
        if isinstance(key, str):
            lv, _, i = key.partition(":")
            key = (int(lv), int(i))
        table[tuple(key)] = frac(val)
    masses = []
    for lv, nodes in enumerate(tree.levels, 1):
        row = []
        for i in range(len(nodes)):
            if (lv, i) not in table:
                raise NotConsistent(f"no norm for node {i} at level {lv}", (lv, i))
            v = table[(lv, i)]
            if v <= 0:
                raise NotConsistent(f"norm {v} at level {lv}, node {i} is not positive", (lv, i))
            row.append(v)
        masses.append(tuple(row))
    total = sum(masses[0], ZERO)
    if total != 1:
        raise NotConsistent(f"level-1 norms sum to {total}, not 1", (1, None))
    for lv in range(1, tree.depth):
        for i, m in enumerate(masses[lv - 1]):
            below = sum((masses[lv][c] for c in tree.children(lv, i)), ZERO)
            if below != m:
                raise NotConsistent(f"level {lv}, node {i}: children carry {below}, node carries {m}", (lv, i))
    if tail == "point" and point is None:
        raise Unsupported("a point tail needs its path")
    return CylinderMeasure(tree, tuple(masses), tail, point)


def atom_paths(tree: TreeSet, extra: Sequence[TreePath] = ()) -> list[TreePath]:
    """Representative paths: every represented path, its first k-ary detour, plus extras."""
    out = []
    for x in tree.represented_paths():
        out.append(x)
        if tree.tails[x.indices[-1]].branching > 1:
            out.append(TreePath(x.indices, (1,)))
    for x in extra:
        if x not in out:
            out.append(x)
    return out


def atoms(mu: CylinderMeasure, paths: Sequence[TreePath] | None = None) -> dict:
    paths = atom_paths(mu.tree, [mu.point] if mu.point else ()) if paths is None else paths
    return {x: atom_mass(mu, x) for x in paths}

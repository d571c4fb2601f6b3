"""Highest-weight tree sets: finitely presented projective systems of dominant weights.

A tree is given by explicit levels 1..D and one tail rule per depth-D node
("leaf") describing how it continues forever:

* ``chain``: exactly one child per level, extending the fundamental
  coefficients by a :class:`~limcone.limits.TailRule` (zero by default);
* ``kary``: k children per level, child j appending the coefficient
  ``values[j]`` at every new fundamental index.

A path is the list of node indices at levels 1..D plus, below a k-ary leaf,
a finite list of child positions continued by position 0 forever.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidTree, NodeError, PathError, SpecParseError
from .exact import frac
from .limits import DirectSystemSpec, ProfiniteWeight, TailRule, restrict_weight, sup_norm
from .rootsys import Weight, from_fundamental_coords, is_dominant_integral, to_fundamental_coords

INF = None  # marker for "never stabilizes" / infinitely many paths


@dataclass(frozen=True)
class Tail:
    kind: str = "chain"
    k: int = 1
    values: tuple = ()
    rule: TailRule = field(default_factory=TailRule)

    def __post_init__(self):
        if self.kind not in ("chain", "kary"):
            raise SpecParseError(f"unknown tail kind {self.kind!r}")
        if self.kind == "kary":
            values = tuple(self.values) or tuple(range(self.k))
            if len(values) != self.k or self.k < 1:
                raise SpecParseError("a k-ary tail needs k >= 1 and one value per child")
            if len(set(values)) != len(values) or min(values) < 0:
                raise SpecParseError("k-ary child values must be distinct nonnegative integers")
            object.__setattr__(self, "values", values)

    @property
    def branching(self) -> int:
        return self.k if self.kind == "kary" else 1

    def to_json(self):
        if self.kind == "kary":
            return {"kary": self.k, "values": list(self.values)}
        if self.rule.vanishes():
            return "chain"
        return {"chain": self.rule.to_json()}

    @classmethod
    def from_json(cls, data) -> "Tail":
        if data in (None, "chain"):
            return cls()
        if isinstance(data, dict) and "kary" in data:
            return cls("kary", int(data["kary"]), tuple(int(v) for v in data.get("values", ())))
        if isinstance(data, dict) and "chain" in data:
            return cls("chain", rule=TailRule.from_json(data["chain"]))
        raise SpecParseError(f"unknown tail rule {data!r}")


CHAIN = Tail()


def kary(k: int, values: Sequence[int] = ()) -> Tail:
    return Tail("kary", k, tuple(values))


@dataclass(frozen=True)
class Node:
    weight: Weight
    parent: int | None


@dataclass(frozen=True)
class TreePath:
    indices: tuple
    extension: tuple = ()

    def key(self) -> tuple:
        ext = list(self.extension)
        while ext and ext[-1] == 0:
            ext.pop()
        return (tuple(self.indices), tuple(ext))

    def __eq__(self, other):
        return isinstance(other, TreePath) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def choice(self, j: int) -> int:
        """Child position taken at depth D + 1 + j."""
        return self.extension[j] if j < len(self.extension) else 0

    def __str__(self):
        s = ",".join(map(str, self.indices))
        if any(self.extension):
            s += "|" + ",".join(map(str, self.extension))
        return s


def parse_path(text: str) -> TreePath:
    """"0,1" or "0,1|1,0" (child positions below a k-ary leaf)."""
    try:
        head, _, ext = text.partition("|")
        idx = tuple(int(t) for t in head.split(",") if t.strip() != "")
        extension = tuple(int(t) for t in ext.split(",") if t.strip() != "")
    except ValueError:
        raise PathError(f"cannot parse path {text!r}") from None
    return TreePath(idx, extension)


@dataclass(frozen=True)
class TreeSet:
    system: DirectSystemSpec
    levels: tuple
    tails: tuple

    @property
    def depth(self) -> int:
        return len(self.levels)

    def node(self, level: int, index: int) -> Node:
        if not (1 <= level <= self.depth) or not (0 <= index < len(self.levels[level - 1])):
            raise NodeError(f"no node {index} at level {level}")
        return self.levels[level - 1][index]

    @cached_property
    def _child_lists(self) -> tuple:
        out = []
        for lv in range(1, len(self.levels)):
            kids: dict = {}
            for j, nd in enumerate(self.levels[lv]):
                kids.setdefault(nd.parent, []).append(j)
            out.append({p: tuple(c) for p, c in kids.items()})
        return tuple(out)

    def children(self, level: int, index: int) -> tuple:
        if level >= len(self.levels):
            return ()
        return self._child_lists[level - 1].get(index, ())

    def leaf_tail(self, index: int) -> Tail:
        return self.tails[index]

    def branching(self, level: int, index: int) -> int:
        """Number of children, including the rule-generated ones below depth D."""
        if level < self.depth:
            return len(self.children(level, index))
        tail = self.tails[index]
        if self.system.depth is not None and level >= self.system.depth:
            return 0
        return tail.branching

    def path_count(self, level: int, index: int):
        """Number of paths through a node; INF when infinite."""
        if level == self.depth:
            ends = self.system.depth == self.depth
            return 1 if ends or self.tails[index].branching == 1 else INF
        total = 0
        for c in self.children(level, index):
            n = self.path_count(level + 1, c)
            if n is INF:
                return INF
            total += n
        return total

    def ancestors(self, level: int, index: int) -> list[int]:
        """Indices of the path from level 1 down to the given node."""
        out = [index]
        for lv in range(level, 1, -1):
            out.append(self.levels[lv - 1][out[-1]].parent)
        return out[::-1]

    def represented_paths(self) -> list[TreePath]:
        return [TreePath(tuple(self.ancestors(self.depth, i))) for i in range(len(self.levels[-1]))]

    def check_path(self, x: TreePath) -> None:
        if len(x.indices) != self.depth:
            raise PathError(f"a path needs {self.depth} node indices, got {len(x.indices)}")
        for lv, i in enumerate(x.indices, 1):
            if not 0 <= i < len(self.levels[lv - 1]):
                raise PathError(f"no node {i} at level {lv}")
            if lv > 1 and self.levels[lv - 1][i].parent != x.indices[lv - 2]:
                raise PathError(f"node {i} at level {lv} is not a child of node {x.indices[lv - 2]}")
        tail = self.tails[x.indices[-1]]
        if x.extension and any(x.extension):
            if tail.kind != "kary" or any(not 0 <= c < tail.k for c in x.extension):
                raise PathError("extension choices do not match the leaf's tail rule")

    # weights past the represented depth

    def leaf_coefficients(self, index: int) -> list[int]:
        lam = self.levels[-1][index].weight
        coeffs = to_fundamental_coords(self.system.system(self.depth), lam)
        return [int(c) for c in coeffs]

    def weight_along(self, x: TreePath, level: int) -> Weight:
        """The weight of x's node at any level (beyond D via the tail rule)."""
        if level <= self.depth:
            return self.levels[level - 1][x.indices[level - 1]].weight
        return from_fundamental_coords(self.system.system(level), self.coefficients_along(x, level))

    def coefficients_along(self, x: TreePath, level: int) -> list[int]:
        leaf = x.indices[-1]
        coeffs = self.leaf_coefficients(leaf)
        tail = self.tails[leaf]
        r = self.system.rank(level)
        for lv in range(self.depth + 1, level + 1):
            new_r = self.system.rank(lv)
            for j in range(len(coeffs) + 1, new_r + 1):
                if tail.kind == "kary":
                    coeffs.append(tail.values[x.choice(lv - self.depth - 1)])
                else:
                    coeffs.append(tail.rule.value(j))
        return coeffs[:r]

    def to_json(self) -> dict:
        levels = [
            [{"w": [_fmt(c) for c in nd.weight.coords], "parent": nd.parent} for nd in lv] for lv in self.levels
        ]
        tails = [t.to_json() for t in self.tails]
        tail = tails[0] if len(set(map(json.dumps, tails))) == 1 else tails
        return {"system": self.system.to_json(), "levels": levels, "tail": tail}


def _fmt(q: Fraction):
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# --- validation ------------------------------------------------------------


def validate_tree(spec) -> TreeSet:
    """Build a TreeSet from a JSON-like dict (or re-check an existing TreeSet).

    Every violated invariant is collected; InvalidTree reports the first one
    and carries the full list in ``violations``.
    """
    if isinstance(spec, TreeSet):
        spec = spec.to_json()
    if not isinstance(spec, dict):
        raise SpecParseError("tree spec must be an object")
    for key in ("system", "levels"):
        if key not in spec:
            raise SpecParseError(f"tree spec is missing field {key!r}")
    system = spec["system"] if isinstance(spec["system"], DirectSystemSpec) else DirectSystemSpec.from_json(spec["system"])
    raw_levels = spec["levels"]
    problems: list[dict] = []

    def bad(level, index, problem):
        problems.append({"level": level, "index": index, "problem": problem})

    if not isinstance(raw_levels, list) or not raw_levels:
        raise InvalidTree("a tree needs at least one level", [{"level": 1, "index": None, "problem": "empty tree"}])
    if system.depth is not None and len(raw_levels) > system.depth:
        bad(system.depth + 1, None, f"the system has only {system.depth} levels")
        raise InvalidTree(_msg(problems[0]), problems)

    levels: list[list[Node]] = []
    for lv, raw in enumerate(raw_levels, 1):
        if not raw:
            bad(lv, None, "empty level")
            levels.append([])
            continue
        sys_n = system.system(lv)
        nodes = []
        for i, item in enumerate(raw):
            try:
                w = item["w"]
                if not (isinstance(w, Weight) and (w.dynkin, w.rank) == (sys_n.dynkin, sys_n.rank)):
                    w = Weight(sys_n.dynkin, sys_n.rank, tuple(frac(c) for c in w))
            except Exception as exc:  # shape problems are reported, not raised
                bad(lv, i, f"bad weight: {exc}")
                nodes.append(None)
                continue
            parent = item.get("parent")
            nodes.append(Node(w, parent))
            if not is_dominant_integral(sys_n, w):
                bad(lv, i, "weight is not dominant integral")
            if lv == 1:
                if parent is not None:
                    bad(lv, i, "level-1 nodes have no parent")
            elif not isinstance(parent, int) or not 0 <= parent < len(levels[-1]) or levels[-1][parent] is None:
                bad(lv, i, f"orphan node (parent {parent!r})")
            else:
                up = levels[-1][parent].weight
                if restrict_weight(w, up.rank) != up:
                    bad(lv, i, f"weight does not restrict to its parent's weight {up!r}")
        seen = {}
        for i, nd in enumerate(nodes):
            if nd is None:
                continue
            key = (nd.parent, nd.weight)
            if key in seen:
                bad(lv, i, f"duplicate of node {seen[key]}")
            seen[key] = i
        levels.append(nodes)

    for lv in range(1, len(levels)):
        used = {nd.parent for nd in levels[lv] if nd is not None}
        for i, nd in enumerate(levels[lv - 1]):
            if nd is not None and i not in used:
                bad(lv, i, "childless node")

    n_leaves = len(levels[-1])
    tail_spec = spec.get("tail", "chain")
    try:
        if isinstance(tail_spec, list):
            if len(tail_spec) != n_leaves:
                raise SpecParseError(f"{len(tail_spec)} tail rules for {n_leaves} leaves")
            tails = tuple(Tail.from_json(t) for t in tail_spec)
        else:
            tails = (Tail.from_json(tail_spec),) * n_leaves
    except SpecParseError as exc:
        bad(len(levels), None, str(exc))
        tails = ()
    else:
        if system.depth != len(levels) and not _keeps_growing(system, len(levels)):
            for i, t in enumerate(tails):
                if t.kind == "kary" and t.k > 1:
                    bad(len(levels), i, "a branching tail needs ranks that grow at every further level")

    if problems:
        raise InvalidTree(_msg(problems[0]), problems)
    return TreeSet(system, tuple(tuple(lv) for lv in levels), tails)


def _keeps_growing(system: DirectSystemSpec, depth: int) -> bool:
    if system.depth is not None or system.step == 0:
        return False
    return all(system.rank(lv) > system.rank(lv - 1) for lv in range(depth + 1, len(system.prefix) + 2))


def _msg(p: dict) -> str:
    where = f"level {p['level']}" + (f", node {p['index']}" if p["index"] is not None else "")
    return f"{where}: {p['problem']}"


def build_tree(system: DirectSystemSpec, levels: Sequence[Sequence[tuple]], tail=CHAIN) -> TreeSet:
    """Convenience constructor: levels of (coords, parent) pairs."""
    spec = {
        "system": system.to_json(),
        "levels": [[{"w": list(w), "parent": p} for w, p in lv] for lv in levels],
        "tail": [t.to_json() for t in tail] if isinstance(tail, (list, tuple)) else tail.to_json(),
    }
    return validate_tree(spec)


def tree_from_shape(system: DirectSystemSpec, shape: Sequence[Sequence[int]], tail=CHAIN) -> TreeSet:
    """A tree whose level-n nodes have the given parents; weights are generated.

    ``shape[0]`` is the number of roots; ``shape[n]`` lists the parent index of
    every level-(n+1) node.  Child j of a node appends fundamental coefficient
    j (the j-th root gets coefficient j+1 in front).
    """
    coeffs: list[list[list[int]]] = []
    roots = []
    for j in range(shape[0]):
        roots.append([j + 1] + [0] * (system.rank(1) - 1))
    coeffs.append(roots)
    for lv, parents in enumerate(shape[1:], 2):
        r_prev, r = system.rank(lv - 1), system.rank(lv)
        if r == r_prev and len(parents) > len(set(parents)):
            raise InvalidTree(f"level {lv}: ranks do not grow, so nodes cannot split")
        count: dict[int, int] = {}
        row = []
        for p in parents:
            j = count.get(p, 0)
            count[p] = j + 1
            row.append(coeffs[-1][p] + [j] * (r - r_prev))
        coeffs.append(row)
    levels = []
    for lv, row in enumerate(coeffs, 1):
        sys_n = system.system(lv)
        parents = [None] * len(row) if lv == 1 else shape[lv - 1]
        levels.append([{"w": from_fundamental_coords(sys_n, c), "parent": p} for c, p in zip(row, parents)])
    tails = [t.to_json() for t in tail] if isinstance(tail, (list, tuple)) else tail.to_json()
    return validate_tree({"system": system, "levels": levels, "tail": tails})


# --- queries ---------------------------------------------------------------


@dataclass(frozen=True)
class Cylinder:
    tree: TreeSet
    level: int
    index: int
    # old index -> new index, per level
    index_maps: tuple


def cylinder(tree: TreeSet, level: int, index: int) -> Cylinder:
    tree.node(level, index)
    keep: list[set] = [set() for _ in range(tree.depth)]
    for lv, i in enumerate(tree.ancestors(level, index), 1):
        keep[lv - 1].add(i)
    frontier = {index}
    for lv in range(level + 1, tree.depth + 1):
        frontier = {j for j, nd in enumerate(tree.levels[lv - 1]) if nd.parent in frontier}
        keep[lv - 1] = frontier
    return _subtree(tree, keep, level, index)


def union_of_cylinders(tree: TreeSet, level: int, indices: Iterable[int]) -> Cylinder:
    """Paths through any of the given level-n nodes."""
    keep: list[set] = [set() for _ in range(tree.depth)]
    for index in indices:
        tree.node(level, index)
        for lv, i in enumerate(tree.ancestors(level, index), 1):
            keep[lv - 1].add(i)
    frontier = set(keep[level - 1])
    for lv in range(level + 1, tree.depth + 1):
        frontier = {j for j, nd in enumerate(tree.levels[lv - 1]) if nd.parent in frontier}
        keep[lv - 1] = frontier
    return _subtree(tree, keep, level, None)


def _subtree(tree: TreeSet, keep: list[set], level: int, index) -> Cylinder:
    maps = []
    levels = []
    for lv in range(tree.depth):
        order = sorted(keep[lv])
        m = {old: new for new, old in enumerate(order)}
        nodes = []
        for old in order:
            nd = tree.levels[lv][old]
            nodes.append(Node(nd.weight, None if lv == 0 else maps[-1][nd.parent]))
        maps.append(m)
        levels.append(tuple(nodes))
    tails = tuple(tree.tails[old] for old in sorted(keep[-1]))
    sub = TreeSet(tree.system, tuple(levels), tails)
    return Cylinder(sub, level, index if index is None else maps[level - 1][index], tuple(maps))


def is_isolated(tree: TreeSet, x: TreePath) -> bool:
    """Some cylinder along x holds exactly one path."""
    tree.check_path(x)
    return tree.path_count(tree.depth, x.indices[-1]) == 1


@dataclass(frozen=True)
class SplittingReport:
    # splits[level-1][index]
    splits: tuple
    # stabilization level per represented path; None = never
    stabilization: dict


def splitting_report(tree: TreeSet) -> SplittingReport:
    splits = tuple(
        tuple(tree.branching(lv, i) >= 2 for i in range(len(tree.levels[lv - 1])))
        for lv in range(1, tree.depth + 1)
    )
    stab = {}
    for x in tree.represented_paths():
        if splits[-1][x.indices[-1]]:
            stab[x] = INF
            continue
        last = 0
        for lv, i in enumerate(x.indices, 1):
            if splits[lv - 1][i]:
                last = lv
        stab[x] = last + 1
    return SplittingReport(splits, stab)


# --- smooth decomposition ----------------------------------------------------


@dataclass(frozen=True)
class Smooth:
    summands: tuple  # ProfiniteWeight per path
    paths: tuple
    bound: Fraction


@dataclass(frozen=True)
class NotSmooth:
    # (level, path, weight, sup-norm) with strictly increasing norms
    witness: tuple


def _trim(coeffs: Sequence[int]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _unbounded_leaf(tree: TreeSet, index: int) -> bool:
    t = tree.tails[index]
    if tree.system.bounded():
        return False
    if t.kind == "kary":
        return t.k > 1 or any(t.values)
    return not t.rule.vanishes()


def decompose_smooth(tree: TreeSet, witness_length: int = 5):
    bad = [i for i in range(len(tree.levels[-1])) if _unbounded_leaf(tree, i)]
    if not bad:
        paths = tuple(tree.represented_paths())
        summands = tuple(
            ProfiniteWeight(tree.system, _trim(tree.leaf_coefficients(x.indices[-1]))) for x in paths
        )
        bound = max(sup_norm(nd.weight) for lv in tree.levels for nd in lv)
        return Smooth(summands, paths, bound)
    leaf = bad[0]
    tail = tree.tails[leaf]
    top = tail.values.index(max(tail.values)) if tail.kind == "kary" else 0
    x = TreePath(tuple(tree.ancestors(tree.depth, leaf)), (top,) * (8 * witness_length))
    wit = []
    lv = 1
    while len(wit) < witness_length:
        w = tree.weight_along(x, lv)
        nrm = sup_norm(w)
        if not wit or nrm > wit[-1][3]:
            wit.append((lv, x, w, nrm))
        lv += 1
        if lv > tree.depth + 8 * witness_length:
            break
    return NotSmooth(tuple(wit))

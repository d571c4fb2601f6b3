"""Conical representation models: a tree set plus its disintegration measure."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DepthError, SystemError_, ZeroVector
from .exact import ZERO
from .measure import (
    CylinderMeasure,
    StepSection,
    atom_paths,
    atoms,
    essential_support,
    extract_norms,
    measure_from_norms,
    restrict_measure,
    validate_measure,
)
from .rootsys import Weight
from .treeset import NotSmooth, Smooth, TreeSet, decompose_smooth


@dataclass(frozen=True)
class ConicalRepModel:
    tree: TreeSet
    measure: CylinderMeasure
    _smooth: list = field(default_factory=list, compare=False, repr=False)

    def __post_init__(self):
        if self.measure.tree != self.tree:
            raise SystemError_("the measure lives on a different tree")
        report = validate_measure(self.measure)
        if not report.ok:
            lv, i, problem = report.first
            raise ValueError(f"measure is not a full-support cylinder measure: level {lv}, node {i}: {problem}")


@dataclass(frozen=True)
class Summand:
    level: int
    index: int
    weight: Weight
    mass: Fraction
    multiplicity: int = 1


def restrict_to_level(rep: ConicalRepModel, n: int) -> list[Summand]:
    if not 1 <= n <= rep.tree.depth:
        raise DepthError(f"level {n} is not represented (depth {rep.tree.depth})")
    return [
        Summand(n, i, nd.weight, rep.measure.masses[n - 1][i])
        for i, nd in enumerate(rep.tree.levels[n - 1])
    ]


@dataclass(frozen=True)
class SameTreeReport:
    same: bool
    # first level where the labeled trees differ, None when equal
    differs_at: int | None
    # per level: True when the level restrictions are equivalent
    levels: tuple
    identical_measures: bool
    same_atoms: bool
    verdict: str


def _labels(tree: TreeSet, lv: int) -> list:
    return [(nd.parent, nd.weight) for nd in tree.levels[lv - 1]]


def same_tree(rep1: ConicalRepModel, rep2: ConicalRepModel) -> SameTreeReport:
    t1, t2 = rep1.tree, rep2.tree
    if t1.system != t2.system:
        raise SystemError_("the models live over different direct systems")
    depth = min(t1.depth, t2.depth)
    per_level = []
    differs = None
    for lv in range(1, depth + 1):
        ok = _labels(t1, lv) == _labels(t2, lv)
        per_level.append(ok)
        if not ok and differs is None:
            differs = lv
    if differs is None and (t1.depth != t2.depth or t1.tails != t2.tails):
        differs = depth + 1
    same = differs is None
    identical = same and rep1.measure == rep2.measure
    same_atoms = False
    if same:
        extra = [m.point for m in (rep1.measure, rep2.measure) if m.point is not None]
        paths = atom_paths(t1, extra)
        a1 = atoms(rep1.measure, paths)
        a2 = atoms(rep2.measure, paths)
        same_atoms = {x for x, v in a1.items() if v} == {x for x, v in a2.items() if v}
    if not same:
        verdict = f"different trees (level {differs})"
    elif identical:
        verdict = "same tree, identical measures"
    elif same_atoms:
        verdict = "same tree, measures with equal atom sets"
    else:
        verdict = "same tree, inequivalent representations"
    return SameTreeReport(same, differs, tuple(per_level), identical, same_atoms, verdict)


def generated_subrep(rep: ConicalRepModel, f: StepSection) -> ConicalRepModel:
    """Sub-model on the essential support of f; masses are inherited, not renormalized."""
    nodes, cyl = essential_support(rep.measure, f)
    if not nodes:
        raise ZeroVector("the section vanishes identically")
    sub = restrict_measure(rep.measure, cyl)
    return ConicalRepModel(cyl.tree, sub)


def total_mass(rep: ConicalRepModel) -> Fraction:
    return sum(rep.measure.masses[0], ZERO)


@dataclass(frozen=True)
class SmoothReport:
    smooth: bool
    decomposition: Smooth | NotSmooth
    # number of distinct weights (isotypic blocks) per represented level
    blocks_per_level: tuple


def smooth_report(rep: ConicalRepModel) -> SmoothReport:
    if rep._smooth:
        return rep._smooth[0]
    dec = decompose_smooth(rep.tree)
    blocks = tuple(len({nd.weight for nd in lv}) for lv in rep.tree.levels)
    out = SmoothReport(isinstance(dec, Smooth), dec, blocks if isinstance(dec, Smooth) else ())
    rep._smooth.append(out)
    return out


def norms_round_trip(rep: ConicalRepModel) -> CylinderMeasure:
    """Rebuild the measure from the squared norms of the isotypic components."""
    norms = {(s.level, s.index): s.mass for n in range(1, rep.tree.depth + 1) for s in restrict_to_level(rep, n)}
    total = total_mass(rep)
    scaled = {k: v / total for k, v in norms.items()}
    mu = measure_from_norms(rep.tree, scaled, rep.measure.tail, rep.measure.point)
    return CylinderMeasure(mu.tree, tuple(tuple(m * total for m in row) for row in mu.masses), mu.tail, mu.point)


__all__ = [
    "ConicalRepModel",
    "Summand",
    "restrict_to_level",
    "same_tree",
    "generated_subrep",
    "smooth_report",
    "norms_round_trip",
    "extract_norms",
]

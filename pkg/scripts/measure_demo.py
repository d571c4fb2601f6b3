"""Recursive and point-biased measures on a small tree.

Prints cylinder masses along a path, the atoms of each measure, and which
measure sees which point.
"""

import argparse
from dataclasses import dataclass

from limcone.measure import atom_mass, build_point_measure, build_rec_measure
from limcone.treeset import TreePath, is_isolated, kary, tree_from_shape
from limcone.limits import DirectSystemSpec


@dataclass
class Config:
    levels: int = 10
    # parent lists per level below the roots; see tree_from_shape
    shape: tuple = (2, (0, 0, 1), (0, 1, 1, 2))


def main(cfg: Config) -> None:
    system = DirectSystemSpec("C", (1,), "step1")
    leaves = len(cfg.shape[-1])
    tails = [kary(2) if i % 2 == 0 else kary(1) for i in range(leaves)]
    tree = tree_from_shape(system, [cfg.shape[0], *map(list, cfg.shape[1:])], tails)
    paths = tree.represented_paths()
    points = [x for x in paths if not is_isolated(tree, x)]
    points.append(TreePath(points[0].indices, (1,)))
    print("paths:", ", ".join(f"{x}{'' if is_isolated(tree, x) else ' (open)'}" for x in paths))

    rec = build_rec_measure(tree)
    x = points[0]
    mx = build_point_measure(tree, x)
    print(f"\ncylinder masses along x = {x}")
    print(" level   rec        point(x)")
    for n in range(1, cfg.levels + 1):
        print(f" {n:>5}   {str(rec.mass_along(x, n)):<10} {mx.mass_along(x, n)}")

    print("\natoms (rows: measure, columns: point)")
    header = "".join(f"{str(y):>10}" for y in points)
    print(f"{'':>12}{header}")
    measures = [("rec", rec)] + [(f"point {y}", build_point_measure(tree, y)) for y in points]
    for name, mu in measures:
        print(f"{name:>12}" + "".join(f"{str(atom_mass(mu, y)):>10}" for y in points))
    print("\nisolated paths keep their leaf mass under every measure:")
    for y in paths:
        if is_isolated(tree, y):
            print(f"  {y}: rec {atom_mass(rec, y)}, point(x) {atom_mass(mx, y)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, default=10)
    main(Config(levels=ap.parse_args().levels))

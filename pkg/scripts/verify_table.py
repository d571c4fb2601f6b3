"""Verify the matrix realizations of the classical direct systems row by row.

    python3 scripts/verify_table.py
    python3 scripts/verify_table.py --rows 9 10_1 --top 4 --json report.json
"""

import argparse
import json
import time
from dataclasses import dataclass, field

from limcone.cli import plain
from limcone.matrixlie import verify_row
from limcone.matrixlie.analysis import default_levels
from limcone.table import DEFAULT_P, ROWS


@dataclass
class Config:
    rows: list = field(default_factory=lambda: list(ROWS))
    top: int | None = None
    p: int = DEFAULT_P
    json_path: str | None = None


def summarize(rep: dict) -> list[str]:
    lines = [f"row {rep['row']:>4}  {rep['group']}"]
    for lv in rep["levels"]:
        flag = "" if lv["type_ok"] else "  <- type differs from the table"
        lines.append(
            f"    n={lv['level']}  size {lv['size']:>2}  dims u/k/p/a/m "
            f"{lv['dim_u']}/{lv['dim_k']}/{lv['dim_p']}/{lv['dim_a']}/{lv['dim_m']}  "
            f"roots {lv['found_type']} (table {lv['expected_type']}){flag}"
        )
    for e in rep["embedding"]:
        flag = "" if e["form"] == e["claimed"] else "  <- differs from the claimed form"
        lines.append(f"    embed {e['level']}->{e['level'] + 1}: {e['form']} (claimed {e['claimed']}){flag}")
    verdicts = {a["verdict"] for a in rep["admissibility"]}
    lines.append(f"    admissibility over {len(rep['admissibility'])} pairs: {', '.join(sorted(verdicts))}")
    for pic in rep.get("pictures", ()):
        lines.append(f"    pictures agree at n={pic['level']}: {pic['ok']}")
    return lines


def main(cfg: Config) -> int:
    reports = []
    start = time.perf_counter()
    for row in cfg.rows:
        levels = default_levels(row, cfg.p, cfg.top)
        rep = verify_row(row, levels, cfg.p)
        reports.append(rep)
        print("\n".join(summarize(rep)))
    print(f"\n{len(reports)} rows in {time.perf_counter() - start:.1f}s")
    if cfg.json_path:
        with open(cfg.json_path, "w") as fh:
            json.dump(plain(reports), fh, indent=2)
    bad = [r["row"] for r in reports if any(a["verdict"] != "admissible" for a in r["admissibility"])]
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--rows", nargs="*", default=list(ROWS))
    ap.add_argument("--top", type=int, help="highest level to realize (default: first level + 1, at least 3)")
    ap.add_argument("--p", type=int, default=DEFAULT_P)
    ap.add_argument("--json", dest="json_path")
    a = ap.parse_args()
    raise SystemExit(main(Config(a.rows, a.top, a.p, a.json_path)))

"""A small sweep: predictions against computed verdicts, with a point-count cache."""

import tempfile
from collections import Counter
from pathlib import Path

from weilss import PointCountCache, survey
from weilss.harness import write_csv

grid = {
    "families": [
        {"family": "artin-schreier", "p": [2, 3], "n": {"min": 1, "max": 13}},
        {"family": "fermat", "q": [2, 3, 4, 5, 7], "n": {"min": 3, "max": 6}},
        {"family": "three-point", "q": [5, 7], "n": [3, 4]},
    ],
    "cross_check": True,
}

with tempfile.TemporaryDirectory() as tmp:
    cache = PointCountCache(Path(tmp) / "counts.json")
    result = survey(grid, cache)
    write_csv(result.records, Path(tmp) / "survey.csv")
    print(f"{len(result.records)} rows, {len(cache)} cached counts")
    print("prediction | verdict:", dict(sorted(result.summary["cells"].items())))
    print("artin-schreier rows outside the criterion:", result.summary["converse_rows"],
          "of which supersingular:", result.summary["converse_supersingular"])
    print("agreement column:", Counter(r.agreement for r in result.records))
    for r in result.records[:6]:
        print(f"  {r.family:15} p={r.p} {r.parameters:14} g={r.genus:2} {r.criterion_prediction:18} "
              f"{r.computed_verdict:18} {r.slopes}")

"""
Random Star Sweep Runner

Samples planar stars with up to four primitive directions (entries bounded
by ``--max-entry``), runs the lattice-point recursion for
``k = C + 1 .. C + --span`` and prints one CSV row per (star, k) with |W|
against ``kB - D`` and ``kB + 1``.

Usage:
    python scripts/run_star_sweep.py --stars 20 --seed 7
    python scripts/run_star_sweep.py --stars 5 --span 10 --output sweep.csv
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from math import gcd
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

import pandas as pd
from dotenv import load_dotenv

# Ensure project root is importable when running directly.
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

load_dotenv(PROJECT_ROOT / ".env", override=False)

from tropdeg.cli.main import configure_logging
from tropdeg.degree.star import star_constant, star_sweep
from tropdeg.geometry.prevariety import Star

logger = logging.getLogger("tropdeg.scripts.star_sweep")


def random_star(rng: random.Random, max_directions: int, max_entry: int) -> Star:
    count = rng.randint(1, max_directions)
    directions: List[Tuple[int, int]] = []
    while len(directions) < count:
        d = (rng.randint(-max_entry, max_entry), rng.randint(-max_entry, max_entry))
        if d == (0, 0) or gcd(*d) != 1 or d in directions:
            continue
        directions.append(d)
    return Star.create([0, 0], directions)


def sweep_frame(stars: Iterable[Star], span: int, workers: int) -> pd.DataFrame:
    records = []
    for index, star in enumerate(stars):
        C = star_constant(star)
        sweep = star_sweep(star, range(C + 1, C + span + 1), workers=workers)
        label = " ".join(f"({u},{v})" for u, v in star.directions)
        for row in sweep.rows:
            records.append(
                {
                    "star": index,
                    "directions": label,
                    "k": row.k,
                    "B": row.B,
                    "C": row.C,
                    "D": row.D,
                    "W": row.W,
                    "kB-D": row.lower_target,
                    "kB+1": row.upper,
                    "slope_realized": sweep.slope_realized,
                }
            )
    return pd.DataFrame.from_records(records)


def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = argparse.ArgumentParser(description="Run the star recursion on random planar stars.")
    parser.add_argument("--stars", type=int, default=10, help="Number of random stars.")
    parser.add_argument("--max-directions", type=int, default=4)
    parser.add_argument("--max-entry", type=int, default=3)
    parser.add_argument("--span", type=int, default=15, help="Number of k values above C.")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--output", type=Path, help="CSV destination (stdout when omitted).")
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args(None if argv is None else list(argv))
    configure_logging(args.verbose)

    rng = random.Random(args.seed)
    stars = [random_star(rng, args.max_directions, args.max_entry) for _ in range(args.stars)]
    frame = sweep_frame(stars, args.span, args.workers)
    shortfall = frame[frame["W"] < frame["kB-D"]]
    if not shortfall.empty:
        logger.error("%d rows below kB - D", len(shortfall))
        return 1
    if args.output is not None:
        frame.to_csv(args.output, index=False)
        logger.info("Wrote %d rows to %s", len(frame), args.output)
    else:
        sys.stdout.write(frame.to_csv(index=False, lineterminator="\n"))
    return 0


if __name__ == "__main__":
    sys.exit(main())

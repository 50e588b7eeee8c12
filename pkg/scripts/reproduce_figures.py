"""Run every bundled scenario: trajectory CSV plus oracle report per config.

    python scripts/reproduce_figures.py [--out results] [--jobs 4]

Scenarios are independent, so they run in a process pool.
"""

import argparse
import contextlib
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from conftraj.cli import main as cli_main

ROOT = Path(__file__).resolve().parent.parent


def run_one(config, out):
    stem = Path(config).stem
    err = io.StringIO()
    with contextlib.redirect_stderr(err):
        run_code = cli_main(["run", "--config", config, "--output", str(out / f"{stem}.csv")])
        verify_code = cli_main(["verify", "--config", config, "--report", str(out / f"{stem}.json")])
    return stem, run_code, verify_code, err.getvalue()


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--configs", default=str(ROOT / "configs"))
    ap.add_argument("--out", default="results")
    ap.add_argument("--jobs", type=int, default=4)
    args = ap.parse_args(argv)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    configs = sorted(str(p) for p in Path(args.configs).glob("*.toml"))
    worst = 0
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        for stem, run_code, verify_code, log in pool.map(run_one, configs, [out] * len(configs)):
            summary = log.strip().splitlines()[-1] if log.strip() else ""
            print(f"{stem:<16} run={run_code} verify={verify_code}  {summary}")
            worst = max(worst, run_code, verify_code)
    return worst


if __name__ == "__main__":
    sys.exit(main())

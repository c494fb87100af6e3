"""Run the report command on every bundled corpus file and tabulate the outcome."""
from __future__ import annotations

import argparse
import io

from descheck.cli import run_command
from descheck.problem import corpus_files


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--verbose", action="store_true", help="print each report in full")
    args = ap.parse_args()
    worst = 0
    print(f"{'file':28s} {'exit':>4s} {'results':>7s} {'seconds':>8s}")
    for path in corpus_files():
        buf = io.StringIO()
        code, report = run_command(["report", str(path)], buf)
        worst = max(worst, code)
        print(f"{path.stem:28s} {code:4d} {len(report.results):7d} {report.timings['total']:8.3f}")
        if args.verbose:
            print(buf.getvalue())
    return worst


if __name__ == "__main__":
    raise SystemExit(main())

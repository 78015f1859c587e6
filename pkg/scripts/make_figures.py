"""Render every scenario in a directory to text and SVG space-time diagrams."""

import argparse
from pathlib import Path

from gauge_ca.cli import render
from gauge_ca.scenario import parse_scenario

ROOT = Path(__file__).resolve().parents[1]


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--scenarios", type=Path, default=ROOT / "scenarios")
    p.add_argument("--out", type=Path, default=ROOT / "figures")
    args = p.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for path in sorted(args.scenarios.glob("*.scn")):
        s = parse_scenario(path.read_text())
        for fmt, ext in (("text", "txt"), ("svg", "svg")):
            (args.out / f"{path.stem}.{ext}").write_text(render(s, fmt))
        print(f"wrote {path.stem}.txt and {path.stem}.svg")


if __name__ == "__main__":
    main()

"""Decompose the worked examples, print their distances and draw their barcodes.

    python3 scripts/run_examples.py --out figures
"""

from __future__ import annotations

import argparse
from pathlib import Path

from circpers.cli import main as cli

DATA = Path(__file__).resolve().parent.parent / "data"

PAIRS = [
    ("winding", "winding_left", "winding_right"),
    ("figure eight", "fig8_left", "fig8_right"),
    ("split circle", "split_circle", "identity_circle"),
]


def doc(name: str) -> str:
    return str(DATA / f"{name}.json")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures", help="directory for the SVG files")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    status = 0
    for title, left, right in PAIRS:
        print(f"== {title}")
        for name in (left, right):
            status |= cli(["decompose", doc(name)])
            status |= cli(["render", doc(name), str(out / f"{name}.svg")])
        status |= cli(["distance", doc(left), doc(right)])
        print()
    return status


if __name__ == "__main__":
    raise SystemExit(main())

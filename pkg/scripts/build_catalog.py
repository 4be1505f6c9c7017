"""Regenerate the bundled catalog of algebra and metric files."""

from __future__ import annotations

import argparse
from fractions import Fraction
from pathlib import Path

from liecontact import construct as cons
from liecontact.cli import dumps, metric_to_dict, write_algebra
from liecontact.curvature import Metric
from liecontact import ratlin as rl

DEFAULT = Path(__file__).resolve().parents[1] / "src" / "liecontact" / "catalog"

METRICS = {
    # left-invariant Sasakian metric on su(2) paired with the form e1*/2
    "su2_sasakian": rl.scale(Fraction(1, 4), rl.identity(3)),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DEFAULT)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "metrics").mkdir(exist_ok=True)
    for name in sorted(cons.CATALOG_BUILDERS):
        write_algebra(cons.build(name), args.out / f"{name}.lie")
    for name, m in METRICS.items():
        (args.out / "metrics" / f"{name}.json").write_text(dumps(metric_to_dict(Metric(m))))
    print(f"wrote {len(cons.CATALOG_BUILDERS)} algebras and {len(METRICS)} metrics to {args.out}")


if __name__ == "__main__":
    main()

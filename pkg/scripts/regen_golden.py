"""Rewrite the golden --json reports used by the CLI tests."""

from __future__ import annotations

import contextlib
import io
import json
from pathlib import Path

from liecontact.cli import main

GOLDEN = Path(__file__).resolve().parents[1] / "tests" / "golden"


def run(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["--json"] + argv)
    return code, buf.getvalue()


def main_() -> None:
    cases = json.loads((GOLDEN / "cases.json").read_text())
    for case in cases:
        code, out = run(case["argv"])
        if code != case["exit"]:
            raise SystemExit(f"{case['name']}: exit {code}, expected {case['exit']}")
        (GOLDEN / f"{case['name']}.json").write_text(out)
    print(f"wrote {len(cases)} golden reports to {GOLDEN}")


if __name__ == "__main__":
    main_()

"""Run the named theorem instances and print one line per check.

Usage: python scripts/run_instances.py [--seed S] [--json]
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass
from fractions import Fraction

from liecontact import construct as cons
from liecontact import ratlin as rl
from liecontact.contact import SearchConfig, decide_contact_exists, decide_exact_symplectic_exists
from liecontact.curvature import heintze_negative_possible, is_einstein, is_flat, k_contact_report
from liecontact.orthogonal import find_biinvariant_metric


@dataclass
class Row:
    label: str
    result: str
    seconds: float


def run(seed: int) -> list[Row]:
    cfg = SearchConfig(seed=seed)
    rows = []

    def record(label, fn):
        t0 = time.perf_counter()
        result = fn()
        rows.append(Row(label, str(result), round(time.perf_counter() - t0, 3)))

    for name in ("sl2", "so3", "r5", "r7", "so3+r4", "sl2+aff1", "so3+r2", "e2", "e2+r2", "hyp4", "gn1", "gn1_q_eq_p"):
        record(f"contact {name}", lambda n=name: decide_contact_exists(cons.build(n), cfg).verdict)
    for name in ("aff1", "hyp3", "chyp2"):
        record(f"exact symplectic {name}", lambda n=name: decide_exact_symplectic_exists(cons.build(n), cfg).verdict)
    for name in ("so3", "sl2", "oscillator", "so3+r4", "h3", "h5"):
        record(f"bi-invariant {name}", lambda n=name: find_biinvariant_metric(cons.build(n), cfg).signature or "NONE")
    for name in ("e2", "e2+r2", "so3"):
        record(f"flat {name}", lambda n=name: is_flat(cons.build(n), rl.identity(cons.build(n).dim)))
    record("Einstein so3", lambda: is_einstein(cons.so3(), rl.identity(3)))
    record("Heintze gn1", lambda: heintze_negative_possible(cons.build("gn1"), config=cfg).charpoly)
    record("Ric(xi,xi) su(2) Sasakian",
           lambda: k_contact_report(cons.so3(), rl.scale(Fraction(1, 4), rl.identity(3)), [Fraction(1, 2), 0, 0]).ricci_reeb)
    for label, H, alpha, D, tol in (
        ("aff1", cons.aff1(), [0, 1], rl.diag([0, 1]), Fraction(1, 10 ** 12)),
        ("chyp3", cons.complex_hyperbolic(2), [0, 0, 0, 0, 0, 1], rl.diag([0, 1, 0, -1, 0, 0]), 0),
        ("chyp2", cons.complex_hyperbolic(1), [0, 0, 0, 1], rl.diag([0, 1, -1, 0]), Fraction(1, 10 ** 12)),
    ):
        def ext(H=H, alpha=alpha, D=D, tol=tol):
            rep = cons.einstein_contact_extension(H, alpha, rl.identity(H.dim), D, tol=tol)[2]
            return f"t={rep.scale} lambda={rep.einstein_constant}" if rep.einstein else rep.message
        record(f"Einstein contact extension {label}", ext)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = run(args.seed)
    if args.json:
        print(json.dumps([asdict(r) for r in rows], indent=2))
        return
    width = max(len(r.label) for r in rows)
    for r in rows:
        print(f"{r.label:<{width}}  {r.result}  ({r.seconds:.2f}s)")


if __name__ == "__main__":
    main()

"""Enumerate the Jacobi-consistent sign patterns for the mixed brackets of R^4 x| so(3)."""

from __future__ import annotations

from liecontact import construct as cons
from liecontact import ratlin as rl
from liecontact.contact import is_contact
from liecontact.curvature import ricci
from liecontact.liealg import validate


def main() -> None:
    print(f"all-positive table: {len(validate(cons.r4_so3((1,) * 12, check=False)))} Jacobi violations")
    for signs in cons.r4_so3_consistent_signs():
        L = cons.r4_so3(signs)
        forms = all(is_contact(L, rl.unit(7, i)) for i in range(3, 7))
        sig = rl.symmetric_signature(ricci(L, rl.identity(7)))
        mark = "  <- used" if signs == cons.R4_SO3_SIGNS else ""
        print("".join("+" if s > 0 else "-" for s in signs), f"e4*..e7* contact={forms}", f"Ric sig={sig}{mark}")


if __name__ == "__main__":
    main()

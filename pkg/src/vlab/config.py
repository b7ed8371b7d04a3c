"""Resource budgets for the combinatorial kernels.

Every potentially expensive operation takes an explicit budget; exceeding a
bound raises BudgetExceeded rather than silently degrading.  Verdict reports
echo the budgets they ran under so that "unknown" outcomes are attributable.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class Budgets:
    # Cap on explicit element enumeration (elements(), conjugacy classes,
    # intersection filtering, quotient coset keys).
    max_enumerate: int = 100_000
    # Cap on |G| for normal-subgroup enumeration (solvable radical).
    max_normal_enumeration: int = 10_000
    # Cap on |G| for brute-force normalizers.
    max_normalizer: int = 100_000
    # Cap on |G| * |C| for homomorphism search G -> C.
    max_hom_product: int = 10_000_000
    # Cap on |B| when forming a regular wreath product A wr B.
    max_wreath_top: int = 12
    # Cap on |G| ** arity tuple enumeration for word values.
    max_tuples: int = 3_000_000

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_BUDGETS = Budgets()

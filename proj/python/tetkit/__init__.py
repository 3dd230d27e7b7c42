"""Transitive election table toolkit.

Pairwise social welfare over margin distributions: Borda ranking, rule
enumeration, replayable table certificates and the catalog of table
constructors behind them. The heavy lifting lives in the compiled
extension; this package re-exports its operations.
"""

from tetkit._core import (
    borda_scores,
    check_catalog,
    couple,
    lemmas,
    margin_sum,
    prove,
    rank,
    reflect,
    search,
    validate_table,
    verify_certificate,
)

__all__ = [
    "borda_scores",
    "check_catalog",
    "couple",
    "lemmas",
    "margin_sum",
    "prove",
    "rank",
    "reflect",
    "search",
    "validate_table",
    "verify_certificate",
]

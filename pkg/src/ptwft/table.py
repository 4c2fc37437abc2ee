"""Interaction table: allowed change of the wave count and sign of the
change of the Temple functional for every admissible interaction type.

Row labels read ``"A-B"`` for two fronts meeting away from x = 0, with a
suffix ``_0`` when they meet at x = 0 and the outer data lie in D_1, and
``_F^+`` / ``_F^-`` when the outer data lie in D_2 (``+`` for F >= f_c^-).
A single front reaching x = 0 is labelled ``"A_0"`` or ``"A_F^+-"``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

ZERO_TOL = 1e-9
INF = math.inf


@dataclass(frozen=True)
class Row:
    sharp: object      # set of ints, or (lo, hi) closed range; hi may depend on n
    dT: str            # "<0", "=0", "<=0"

    def sharp_ok(self, d: int, n: int) -> bool:
        s = self.sharp
        if isinstance(s, frozenset):
            return d in s
        lo, hi = s
        if callable(hi):
            hi = hi(n)
        return lo <= d <= hi

    def dT_ok(self, dT: float) -> bool:
        if self.dT == "<0":
            return dT < -ZERO_TOL
        if self.dT == "=0":
            return abs(dT) <= ZERO_TOL
        return dT <= ZERO_TOL


def _s(*vals):
    return frozenset(vals)


LE0 = (-INF, 0)
LT0 = (-INF, -1)
EQ0 = _s(0)

ROWS = {
    # a single front reaching x = 0, constraint becomes active
    "CD_F^+": Row(_s(1, 2), "<0"),
    "RS_F^+": Row(_s(1), "<0"),
    "CD_F^-": Row(_s(1, 2), "<0"),
    "RS_F^-": Row(_s(1), "<0"),
    # a single front crossing x = 0 with the constraint inactive
    "CD_0": Row(EQ0, "<=0"),
    "S_0": Row(EQ0, "<=0"),
    "RS_0": Row(EQ0, "<=0"),
    "PT_0": Row(EQ0, "<=0"),
    # away from x = 0
    "CD-S": Row(LE0, "=0"),
    "CD-RS": Row(EQ0, "=0"),
    "CD-PT": Row(LE0, "<=0"),
    "S-S": Row(LT0, "=0"),
    "S-RS": Row(LT0, "<0"),
    "RS-S": Row(LT0, "<0"),
    "PT-S": Row(LT0, "=0"),
    "PT-RS": Row(LT0, "<0"),
    # at x = 0, outer data in D_1
    "CD-S_0": Row(LE0, "<=0"),
    "CD-RS_0": Row(EQ0, "<=0"),
    "CD-NS_0": Row((-1, lambda n: 2 ** n - 1), "<0"),
    "CD-PT_0": Row(LE0, "<=0"),
    "S-S_0": Row(LT0, "=0"),
    "S-RS_0": Row(LT0, "<0"),
    "RS-S_0": Row(LT0, "<0"),
    "NS-S_0": Row(LE0, "<0"),
    "NS-PT_0": Row(LE0, "<0"),
    "PT-S_0": Row(LT0, "=0"),
    "PT-RS_0": Row(LT0, "<0"),
    "PT-NS_0": Row(LT0, "<0"),
    # at x = 0, outer data in D_2, F >= f_c^-
    "CD-S_F^+": Row(_s(1), "<0"),
    "CD-RS_F^+": Row(_s(-1, 0, 1), "<0"),
    "CD-NS_F^+": Row((0, lambda n: 2 ** n - 2), "<0"),
    "CD-PT_F^+": Row(_s(1), "<0"),
    "NS-S_F^+": Row(EQ0, "<0"),
    "NS-RS_F^+": Row(EQ0, "<0"),
    # at x = 0, outer data in D_2, F < f_c^-
    "CD-S_F^-": Row(_s(1), "<0"),
    "CD-RS_F^-": Row(_s(-1, 0, 1), "<0"),
    "CD-NS_F^-": Row((0, lambda n: 2 ** n - 2), "<0"),
    "CD-PT_F^-": Row(_s(0, 1), "<0"),
    "NS-S_F^-": Row(EQ0, "<0"),
    "NS-RS_F^-": Row(EQ0, "<0"),
    "NS-PT_F^-": Row(EQ0, "<0"),
}

# Rows whose printed wave-count bound is one short: the RS fan produced when
# a CD meets the stationary shock can span the whole Xi_F band of the grid,
# 2^n rarefaction shocks, so the count grows by up to 2^n - 1.
CORRECTED = {
    "CD-NS_F^+": Row((0, lambda n: 2 ** n - 1), "<0"),
    "CD-NS_F^-": Row((0, lambda n: 2 ** n - 1), "<0"),
}

MULTI = "MULTI"

OK, ERRATUM, MISMATCH = "ok", "erratum", "mismatch"


def label(kinds, at_zero: bool, d1: bool, plus_side: bool) -> str:
    kinds = list(kinds)
    if len(kinds) > 2:
        return MULTI
    base = "-".join(kinds)
    if not at_zero:
        return base
    if d1:
        return base + "_0"
    return base + ("_F^+" if plus_side else "_F^-")


def _row_reason(row_label, row, d_sharp, d_T, n):
    if not row.sharp_ok(d_sharp, n):
        return f"{row_label}: wave count change {d_sharp} not allowed"
    if not row.dT_ok(d_T):
        return f"{row_label}: T_n change {d_T:.3e} violates {row.dT}"
    return ""


def check(row_label: str, d_sharp: int, d_T: float, n: int, eps_n: float):
    """Classify an interaction outcome.

    Returns (status, reason) with status OK when the printed row holds,
    ERRATUM when only the corrected row holds, and MISMATCH otherwise.
    """
    if d_T > ZERO_TOL:
        return MISMATCH, f"Temple functional increased by {d_T:.3e}"
    if d_sharp > 0 and d_T > -eps_n + ZERO_TOL:
        return MISMATCH, (f"wave count grew by {d_sharp} but T_n dropped only "
                          f"{-d_T:.3e} < eps_n")
    if row_label == MULTI:
        return OK, "merged multi-front interaction"
    row = ROWS.get(row_label)
    if row is None:
        return MISMATCH, f"interaction type {row_label} not in table"
    reason = _row_reason(row_label, row, d_sharp, d_T, n)
    if not reason:
        return OK, ""
    fix = CORRECTED.get(row_label)
    if fix is not None and not _row_reason(row_label, fix, d_sharp, d_T, n):
        return ERRATUM, reason
    return MISMATCH, reason

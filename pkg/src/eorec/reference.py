"""Closed-form reference tensors used for calibration and verification.

These are the five low-order correlators with published closed forms on
this curve, expressed as coefficient tensors over sorted basis multi-
indices (the coefficient of ``prod_i Psi_{n_i}``).  The two-point genus-one
formula circulates with an ambiguous symmetrization scope and without an
overall normalization, so every defensible reading is provided and the
engine reports which one its recursion output matches.
"""

from __future__ import annotations

from fractions import Fraction


def reference_correlators(f: int) -> dict[tuple[int, int], dict]:
    """Tensors for (0,3), (0,4), (1,1), (2,1)."""
    ff1 = Fraction(f * (f + 1))
    s = Fraction(1 + f + f * f)
    return {
        (0, 3): {(0, 0, 0): -(ff1 ** 2)},
        (0, 4): {(0, 0, 0, 1): ff1 ** 3},
        (1, 1): {
            (0,): s / 24,
            (1,): -ff1 / 24,
        },
        (2, 1): {
            (1,): 2 * ff1 / 5760,
            (2,): -7 * s * s / 5760,
            (3,): Fraction(12 * f * (1 + 2 * f + 2 * f * f + f ** 3), 5760),
            (4,): -5 * ff1 * ff1 / 5760,
        },
    }


def two_point_genus_one_readings(f: int) -> dict[str, dict]:
    """Candidate readings of the two-point genus-one closed form.

    The displayed expression is (1/24) of
        -(1+f+f^2) Psi0 Psi1 + f(1+f) Psi0 Psi2 + (swap) + f(1+f) Psi1 Psi1,
    read either with the swap applied to the two preceding terms only
    ("narrow") or to all three ("wide", doubling the symmetric term), and
    either as printed or carrying the f(f+1) two-point normalization that
    the general expansion theorem prescribes ("scaled").
    """
    ff1 = Fraction(f * (f + 1))
    s = Fraction(1 + f + f * f)
    narrow = {
        (0, 1): -s / 24,
        (0, 2): ff1 / 24,
        (1, 1): ff1 / 24,
    }
    wide = {
        (0, 1): -s / 24,
        (0, 2): ff1 / 24,
        (1, 1): 2 * ff1 / 24,
    }
    scale = lambda t, c: {k: v * c for k, v in t.items()}
    return {
        "narrow": narrow,
        "wide": wide,
        "narrow-scaled": scale(narrow, ff1),
        "wide-scaled": scale(wide, ff1),
    }

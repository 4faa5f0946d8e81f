"""Beam-splitting taxonomy.

Component j is pushed with a transverse force proportional to chi_j * g, where
g is the sign of the effective gradient (B1 for the magnetic scenario, a*B for
the Gaussian control beam). The lettered cases (a)-(l) are the standard list
for a positive gradient; their letters depend only on (chi1, chi2). A negative
gradient keeps the letter and mirrors both bend directions (our extension; the
original case list only treats B1 > 0).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .model import DerivedParams, Mode, Scenario


class Category(str, enum.Enum):
    SYMMETRIC = "Symmetric"
    SAME_DIRECTION = "SameDirection"
    OPPOSITE_DIRECTION = "OppositeDirection"
    SINGLE_BENT = "SingleBent"
    COMMON_DEFLECTION = "CommonDeflection"
    NO_DEFLECTION = "NoDeflection"


class Bend(str, enum.Enum):
    LEFT = "Left"
    RIGHT = "Right"
    STRAIGHT = "Straight"


class Order(str, enum.Enum):
    FIRST_LARGER = "FirstLarger"
    SECOND_LARGER = "SecondLarger"
    EQUAL = "Equal"


@dataclass(frozen=True)
class SplitVerdict:
    category: Category
    condition_label: Optional[str]
    bend_direction: Tuple[Bend, Bend]
    magnitude_order: Order

    def line(self) -> str:
        return (
            f"category={self.category.value} label={self.condition_label or '-'} "
            f"dir1={self.bend_direction[0].value} dir2={self.bend_direction[1].value} "
            f"order={self.magnitude_order.value}"
        )


def _sign(v: float, tol: float) -> int:
    if abs(v) <= tol:
        return 0
    return 1 if v > 0 else -1


def _bend(s: int) -> Bend:
    return {1: Bend.RIGHT, -1: Bend.LEFT, 0: Bend.STRAIGHT}[s]


def _label(c1: int, c2: int, chi1: float, chi2: float, tol: float) -> Optional[str]:
    """Case letter for strictly ordered, nonzero-or-single-zero (chi1, chi2)."""
    if c1 == 0 and c2 != 0:
        return "i" if c2 > 0 else "j"
    if c2 == 0 and c1 != 0:
        return "k" if c1 > 0 else "l"
    if c1 < 0 and c2 < 0:
        return "a" if chi1 < chi2 else "b"
    if c1 > 0 and c2 > 0:
        return "c" if chi2 > chi1 else "d"
    first_bigger = abs(chi1) > abs(chi2)
    if c1 > 0 > c2:
        return "e" if first_bigger else "f"
    if c2 > 0 > c1:
        return "h" if first_bigger else "g"
    return None


def classify(chi1: float, chi2: float, gradient_sign: int) -> SplitVerdict:
    tol = 1e-12 * max(abs(chi1), abs(chi2), 1.0)
    g = 0 if gradient_sign == 0 else (1 if gradient_sign > 0 else -1)
    if g == 0 or (abs(chi1) <= tol and abs(chi2) <= tol):
        return SplitVerdict(Category.NO_DEFLECTION, None, (Bend.STRAIGHT, Bend.STRAIGHT), Order.EQUAL)

    c1, c2 = _sign(chi1, tol), _sign(chi2, tol)
    dirs = (_bend(c1 * g), _bend(c2 * g))
    gap = abs(chi1) - abs(chi2)
    order = Order.EQUAL if abs(gap) <= tol else (Order.FIRST_LARGER if gap > 0 else Order.SECOND_LARGER)

    if abs(chi1 + chi2) <= tol:
        return SplitVerdict(Category.SYMMETRIC, None, dirs, Order.EQUAL)
    if abs(chi1 - chi2) <= tol:
        return SplitVerdict(Category.COMMON_DEFLECTION, None, dirs, Order.EQUAL)
    label = _label(c1, c2, chi1, chi2, tol)
    if c1 == 0 or c2 == 0:
        cat = Category.SINGLE_BENT
    elif c1 == c2:
        cat = Category.SAME_DIRECTION
    else:
        cat = Category.OPPOSITE_DIRECTION
    return SplitVerdict(cat, label, dirs, order)


def effective_gradient_sign(scenario: Scenario) -> int:
    if scenario.mode is Mode.MAGNETIC:
        v = scenario.b1
    elif scenario.mode is Mode.OPTICAL:
        v = scenario.probe_a * scenario.b0
    else:
        return 0
    return 0 if v == 0 or math.isnan(v) else (1 if v > 0 else -1)


def classify_scenario(scenario: Scenario, params: DerivedParams) -> SplitVerdict:
    chi1, chi2 = params.chi
    return classify(chi1, chi2, effective_gradient_sign(scenario))

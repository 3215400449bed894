"""The Arf invariant, computed by several independent routes.

For a knot the Arf invariant in Z/2 can be read off from

  * the signed determinant mod 8,
  * the Alexander polynomial mod (2, 1 + t^4),
  * the Jones polynomial mod (2, 1 + t^4),
  * the sign of V(i), and
  * the parity of the z^2 coefficient of the Conway potential.

All five are computed and cross-checked; a disagreement is reported in
the result rather than raised, so batch scans can flag the diagram.
For two-component links the reduction of t^(1/2) V(t) classifies the
linking number mod 2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .algebra import QC_ARF_ONE, QC_ONE, LaurentPolynomial, QuotientClass
from .alexander import alexander_polynomial, conway_potential, signed_det
from .diagram import Diagram
from .jones import JonesPolynomial, jones

ROUTE_NAMES = ("levine", "alexander_mod", "jones_mod", "jones_at_i", "conway_a2")


@dataclass(frozen=True)
class ArfResult:
    value: int
    routes: dict
    consistent: bool

    def route_vector(self) -> str:
        return ",".join(f"{k}={self.routes[k]}" for k in ROUTE_NAMES)


def arf_from_levine(sdet: int) -> int:
    """The unique a in {0,1} with sdet = 4a + 1 mod 8."""
    if sdet % 2 == 0:
        raise ValueError("signed determinant of a knot must be odd")
    r = sdet % 8
    if r == 1:
        return 0
    if r == 5:
        return 1
    raise ValueError(f"signed determinant {sdet} is not 1 mod 4; not a knot determinant")


def _class_to_arf(cls: QuotientClass, source: str) -> int:
    if cls == QC_ONE:
        return 0
    if cls == QC_ARF_ONE:
        return 1
    raise ValueError(f"{source} reduces to {cls!r}, outside the two knot classes")


def arf_from_alexander(delta: LaurentPolynomial) -> int:
    """Reduction of the Alexander polynomial mod (2, 1 + t^4)."""
    return _class_to_arf(QuotientClass.from_laurent(delta), "Alexander polynomial")


def arf_from_jones(v: JonesPolynomial) -> int:
    """Reduction of a knot Jones polynomial mod (2, 1 + t^4)."""
    return _class_to_arf(QuotientClass.from_laurent(v.in_t()), "Jones polynomial")


def arf_from_jones_coeffs(v: JonesPolynomial) -> int:
    """Sum of the Jones coefficients c_i over i = 1 mod 4, taken mod 2;
    checked against the matching sum over i = -1 mod 4."""
    c = v.in_t().coeffs
    s1 = sum(cv for e, cv in c.items() if e % 4 == 1) % 2
    s3 = sum(cv for e, cv in c.items() if e % 4 == 3) % 2
    if s1 != s3:
        raise ValueError("coefficient sums over i=1 and i=-1 (mod 4) disagree mod 2")
    return s1


def arf_from_jones_at_i(value: tuple) -> int:
    """V_K(i) = (-1)^Arf for a knot; value in the basis (1, i, sqrt2, i*sqrt2)."""
    if value == (1, 0, 0, 0):
        return 0
    if value == (-1, 0, 0, 0):
        return 1
    raise ValueError(f"V(i) = {value} is not +-1; not a knot value")


def arf(d: Diagram) -> ArfResult:
    """All five routes with a consensus value and consistency flag."""
    if not d.is_knot:
        raise ValueError("Arf invariant computed for knots only")
    from .jones import jones_at_i

    delta = alexander_polynomial(d)
    v = jones(d)
    routes = {}
    routes["levine"] = arf_from_levine(delta.evaluate(-1))
    routes["alexander_mod"] = arf_from_alexander(delta)
    routes["jones_mod"] = arf_from_jones(v)
    routes["jones_at_i"] = arf_from_jones_at_i(jones_at_i(d))
    routes["conway_a2"] = conway_potential(delta).a2 % 2
    counts = Counter(routes.values())
    value, _ = counts.most_common(1)[0]
    return ArfResult(value=value, routes=routes, consistent=len(counts) == 1)


# ---------------------------------------------------------------------------
# two-component links

# cosets of the unit classes in F2[t]/(1+t^4): squares-of-units times (1+t)
# versus units times (1+t^2); precomputed by enumerating the 8 units
_LK0_CLASSES = {QuotientClass(0b0011), QuotientClass(0b1100)}   # 1+t, t^2+t^3
_LK1_CLASSES = {QuotientClass(0b0101), QuotientClass(0b1010)}   # 1+t^2, t+t^3


def link_class_from_jones(v: JonesPolynomial) -> int:
    """Linking number mod 2 of a 2-component link from t^(1/2) V(t)."""
    shifted = v.poly.shift(1)  # multiply by q = t^(1/2)
    cls = QuotientClass.from_laurent(shifted.q_to_t())
    if cls in _LK0_CLASSES:
        return 0
    if cls in _LK1_CLASSES:
        return 1
    raise ValueError(f"t^(1/2) V reduces to {cls!r}, outside both linking cosets")


def linking_number(d: Diagram) -> int:
    """Half the signed count of crossings between the two components."""
    if d.n_components != 2:
        raise ValueError("linking number needs exactly 2 components")
    total = 0
    for ci, (a, b, c, dd) in enumerate(d.crossings):
        comp_under = d.component_of_edge[a]
        comp_over = d.component_of_edge[d.over_in[ci]]
        if comp_under != comp_over:
            total += d.signs[ci]
    assert total % 2 == 0
    return total // 2

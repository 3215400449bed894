"""Jones polynomials via the Kauffman bracket.

The production path contracts the diagram one crossing at a time, keeping
a linear combination of crossingless matchings of the open boundary (the
contraction order is chosen by the boundary-minimizing heuristic shared
with the homology engine).  A brute-force sum over all 2^n Kauffman
states is retained as an independent oracle for small diagrams.

Values are kept in the variable q = t^(1/2), so that links (whose Jones
polynomials involve half-integer powers of t) still have integer
exponents: knots use even q-powers only, two-component links odd ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._tangle import ARCS_0, ARCS_1, CrossingStep, merge_matching, scan_order
from .algebra import LaurentPolynomial, zeta8_to_iroot2
from .diagram import Diagram

# loop value of the bracket: -A^2 - A^{-2}
_DELTA_A = LaurentPolynomial({2: -1, -2: -1})


@dataclass(frozen=True)
class JonesPolynomial:
    """Jones polynomial in q = t^(1/2), normalized so V(unknot) = 1."""

    poly: LaurentPolynomial
    writhe_used: int

    def q_parity(self) -> int:
        parities = {e % 2 for e in self.poly.coeffs}
        if len(parities) > 1:
            raise ValueError("mixed q-exponent parity")
        return parities.pop() if parities else 0

    def in_t(self) -> LaurentPolynomial:
        return self.poly.q_to_t()

    def serialize(self) -> str:
        return self.poly.serialize("q")


def kauffman_bracket(d: Diagram) -> LaurentPolynomial:
    """Bracket polynomial in A with the empty-diagram normalization
    <empty> = 1, so a k-component crossingless unlink evaluates to
    (-A^2 - A^{-2})^k."""
    states = {(): LaurentPolynomial.one()}
    open_points: set = set()
    for ci in scan_order(d):
        step = CrossingStep(d, ci, open_points)
        merged_cache: dict = {}
        new_states: dict = {}
        for matching, poly in states.items():
            for arcs, exp in ((ARCS_0, 1), (ARCS_1, -1)):
                key = (matching, exp)
                if key not in merged_cache:
                    new_matching, circles, _ = merge_matching(matching, step, arcs)
                    weight = LaurentPolynomial.monomial(1, exp)
                    for _ in range(circles):
                        weight = weight * _DELTA_A
                    merged_cache[key] = (new_matching, weight)
                new_matching, weight = merged_cache[key]
                contrib = poly * weight
                if new_matching in new_states:
                    new_states[new_matching] = new_states[new_matching] + contrib
                else:
                    new_states[new_matching] = contrib
        states = new_states
        open_points = step.next_points(open_points)
    assert list(states) == [()], "contraction did not close the diagram"
    value = states[()]
    for _ in range(d.extra_components):
        value = value * _DELTA_A
    return value


def kauffman_bracket_state_sum(d: Diagram) -> LaurentPolynomial:
    """Independent oracle: sum over all 2^n Kauffman states."""
    n = len(d.crossings)
    if n > 16:
        raise ValueError("state-sum oracle limited to 16 crossings")
    total = LaurentPolynomial.zero()
    for bits in range(1 << n):
        parent: dict = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
                return 0
            return 1  # closing a loop

        circles = 0
        exp = 0
        for ci, (a, b, c, dd) in enumerate(d.crossings):
            if bits >> ci & 1:
                exp -= 1
                circles += union(a, dd) + union(b, c)
            else:
                exp += 1
                circles += union(a, b) + union(c, dd)
        # circle count: each union that closes a loop adds one
        term = LaurentPolynomial.monomial(1, exp)
        for _ in range(circles + d.extra_components):
            term = term * _DELTA_A
        total = total + term
    return total


def _normalize(bracket: LaurentPolynomial, writhe: int) -> LaurentPolynomial:
    """(-A)^(-3w) * bracket / delta, rewritten in q = A^(-2)."""
    signed = bracket.shift(-3 * writhe)
    if writhe % 2:
        signed = -signed
    v_a = signed.exact_div(_DELTA_A)
    out = {}
    for e, c in v_a.coeffs.items():
        if e % 2:
            raise ValueError("bracket with odd A-exponent after normalization")
        out[-e // 2] = c
    return LaurentPolynomial(out)


def jones(d: Diagram) -> JonesPolynomial:
    """The Jones polynomial of an oriented link diagram."""
    return JonesPolynomial(_normalize(kauffman_bracket(d), d.writhe), d.writhe)


def jones_state_sum(d: Diagram) -> JonesPolynomial:
    """Oracle variant of :func:`jones` (exponential time)."""
    return JonesPolynomial(_normalize(kauffman_bracket_state_sum(d), d.writhe), d.writhe)


def det_from_jones(d: Diagram) -> int:
    """|V(-1)|, evaluated exactly via q at a square root of -1."""
    if not d.is_knot:
        raise ValueError("determinant via Jones is defined here for knots")
    return _det_of(jones(d))


def _det_of(v: JonesPolynomial) -> int:
    c0, c1, c2, c3 = v.poly.evaluate_zeta8(2)
    if c1 or c3 or (c0 and c2):
        raise ValueError(f"V(-1) not a Gaussian integer of the expected form: {(c0, c1, c2, c3)}")
    return abs(c0) if c0 else abs(c2)


def jones_at_i(d: Diagram) -> tuple:
    """V_L(i) as an exact element of Z[i, sqrt2] in the basis
    (1, i, sqrt2, i*sqrt2)."""
    v = jones(d)
    return zeta8_to_iroot2(v.poly.evaluate_zeta8(1))

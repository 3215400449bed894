"""Alexander and Conway polynomials via Fox calculus.

The Wirtinger presentation of the knot group has one generator per arc
(maximal over-strand) and one relation per crossing.  Abelianizing the
free derivatives of the relations gives the Alexander matrix over
Z[t, 1/t]; any (n-1)x(n-1) minor determinant is the Alexander polynomial
up to a unit.  The determinant is computed exactly by fraction-free
elimination at integer sample points followed by Lagrange interpolation,
then normalized to the Conway form (symmetric, value 1 at t = 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .algebra import LaurentPolynomial
from .diagram import Diagram


def _arcs(d: Diagram) -> dict:
    """Map each edge to its arc representative (edges joined over crossings)."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ci in range(len(d.crossings)):
        o_in, o_out = d.over_pair(ci)
        ri, ro = find(o_in), find(o_out)
        if ri != ro:
            parent[ri] = ro
    return {e: find(e) for e in d.successor}


def _bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _fox_rows(d: Diagram, arcs: dict, arc_index: dict, t):
    """Rows of the Alexander matrix evaluated at the scalar t."""
    rows = []
    for ci, (a, b, c, dd) in enumerate(d.crossings):
        o_in, _ = d.over_pair(ci)
        row = [0] * len(arc_index)
        O = arc_index[arcs[o_in]]
        A = arc_index[arcs[a]]
        C = arc_index[arcs[c]]
        if d.signs[ci] == 1:
            row[O] += 1 - t
            row[A] += t
            row[C] += -1
        else:
            # the relation row scaled by t to stay polynomial
            row[O] += t - 1
            row[A] += 1
            row[C] += -t
        rows.append(row)
    return rows


def _minor_det_poly(d: Diagram, drop_col: int) -> LaurentPolynomial:
    arcs = _arcs(d)
    reps = sorted(set(arcs.values()))
    arc_index = {r: i for i, r in enumerate(reps)}
    n = len(d.crossings)
    size = n - 1
    npoints = size + 2
    xs = list(range(2, 2 + npoints))
    ys = []
    for x in xs:
        rows = _fox_rows(d, arcs, arc_index, x)
        minor = [[row[j] for j in range(n) if j != drop_col] for row in rows[:-1]]
        ys.append(_bareiss_det(minor))
    # Lagrange interpolation, exact over Q
    coeffs = [Fraction(0)] * npoints
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            denom *= xi - xj
            new = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                new[k] += c * (-xj)
                new[k + 1] += c
            basis = new
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    out = {}
    for k, c in enumerate(coeffs):
        if c:
            if c.denominator != 1:
                raise ValueError("interpolated determinant is not integral")
            out[k] = c.numerator
    return LaurentPolynomial(out)


class DegeneratePresentation(ValueError):
    """Every tried Wirtinger minor vanished or failed to normalize."""


def alexander_polynomial(d: Diagram) -> LaurentPolynomial:
    """The Conway-normalized Alexander polynomial of a knot diagram:
    symmetric under t -> 1/t and equal to 1 at t = 1."""
    if not d.is_knot:
        raise ValueError("Alexander polynomial implemented for knots only")
    n = len(d.crossings)
    if n == 0:
        return LaurentPolynomial.one()
    last_error = None
    for drop_col in range(n - 1, -1, -1):
        p = _minor_det_poly(d, drop_col)
        if not p:
            continue
        try:
            return _conway_normalize(p)
        except ValueError as exc:  # try a different deleted generator
            last_error = exc
    raise DegeneratePresentation(f"no usable Wirtinger minor: {last_error}")


def _conway_normalize(p: LaurentPolynomial) -> LaurentPolynomial:
    span = p.max_exp - p.min_exp
    if span % 2:
        raise ValueError("odd exponent span cannot be symmetrized")
    centered = p.shift(-(p.max_exp + p.min_exp) // 2)
    if centered != centered.invert_variable():
        raise ValueError("minor determinant is not symmetrizable")
    at_one = centered.evaluate(1)
    if at_one == 1:
        return centered
    if at_one == -1:
        return -centered
    raise ValueError(f"normalized polynomial evaluates to {at_one} at t=1")


def signed_det(d: Diagram) -> int:
    """Delta(-1) of the Conway-normalized Alexander polynomial."""
    value = alexander_polynomial(d).evaluate(-1)
    assert value % 2, "knot determinant must be odd"
    return value


@dataclass(frozen=True)
class ConwayPotential:
    """Conway potential of a knot: 1 + a2 z^2 + a4 z^4 + ..."""

    coeffs: tuple  # (a0, a2, a4, ...)

    @property
    def a2(self) -> int:
        return self.coeffs[1] if len(self.coeffs) > 1 else 0


def conway_potential(delta: LaurentPolynomial) -> ConwayPotential:
    """Solve Delta(t) = nabla(z) under z = t^(-1/2) - t^(1/2).

    Even powers of z are polynomials in s := z^2 = t + 1/t - 2, so the
    solve is a triangular base change; the result is verified by
    substituting back.
    """
    if delta != delta.invert_variable() or delta.evaluate(1) != 1:
        raise ValueError("input is not a Conway-normalized knot polynomial")
    # write Delta in the basis p_i(mu) = t^i + t^-i, mu = t + 1/t
    work = dict(delta.coeffs)
    deg = max(abs(e) for e in work) if work else 0
    mu_poly = {}  # coefficients of Delta as polynomial in mu
    # p_0 = 2, p_1 = mu, p_{i+1} = mu*p_i - p_{i-1}
    basis = {0: {0: 2}, 1: {1: 1}}
    for i in range(2, deg + 1):
        prev, prev2 = basis[i - 1], basis[i - 2]
        cur: dict = {}
        for k, c in prev.items():
            cur[k + 1] = cur.get(k + 1, 0) + c
        for k, c in prev2.items():
            cur[k] = cur.get(k, 0) - c
        basis[i] = cur
    half = {i: work.get(i, 0) for i in range(1, deg + 1)}
    const = work.get(0, 0)
    for i, ci in half.items():
        if ci:
            for k, c in basis[i].items():
                mu_poly[k] = mu_poly.get(k, 0) + ci * c
    # the p_i expansion covers c_i (t^i + t^-i); the constant term needs
    # the remaining half of c_0
    mu_poly[0] = mu_poly.get(0, 0) + const
    # shift mu = s + 2
    s_poly: dict = {}
    for k, c in mu_poly.items():
        for j in range(k + 1):
            s_poly[j] = s_poly.get(j, 0) + c * comb(k, j) * (2 ** (k - j))
    coeffs = tuple(s_poly.get(j, 0) for j in range(max(s_poly) + 1 if s_poly else 1))
    # verify by resubstitution: sum a_{2i} (t - 2 + 1/t)^i == Delta
    s_laurent = LaurentPolynomial({1: 1, 0: -2, -1: 1})
    acc = LaurentPolynomial.zero()
    power = LaurentPolynomial.one()
    for a in coeffs:
        acc = acc + power * a
        power = power * s_laurent
    if acc != delta:
        raise ValueError("Conway potential substitution check failed")
    return ConwayPotential(coeffs)

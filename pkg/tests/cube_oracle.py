"""Brute-force cube-of-resolutions oracle for the test suite.

Builds the full Khovanov cube (2^n resolutions, one tensor factor per
circle) with standard cube signs and computes homology ranks by dense
Gaussian elimination.  Exponential; for cross-checking the scanning
engine on small diagrams only.  Kept deliberately independent of the
engine: no shared code beyond the Diagram type.
"""

from __future__ import annotations

from fractions import Fraction

from knotrank.diagram import Diagram


def _circles(d: Diagram, state: int):
    """Circles of a resolved diagram as frozensets of edge labels."""
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

    for ci, (a, b, c, dd) in enumerate(d.crossings):
        if state >> ci & 1:
            union(a, dd), union(b, c)
        else:
            union(a, b), union(c, dd)
    groups: dict = {}
    for e in d.successor:
        groups.setdefault(find(e), []).append(e)
    return [frozenset(g) for g in sorted(groups.values(), key=min)]


class CubeComplex:
    """Khovanov cube over F_p (p > 0) or Q (p == 0); t != 0 gives the
    deformed Frobenius algebra x^2 = t used for the A[X] module oracle."""

    def __init__(self, d: Diagram, p: int, deformed: bool = False,
                 reduced_edge: int | None = None):
        self.d = d
        self.p = p
        self.deformed = deformed
        self.reduced_edge = reduced_edge
        self.n = len(d.crossings)
        self.n_minus = sum(1 for s in d.signs if s == -1)
        self.n_plus = self.n - self.n_minus
        self.circles = {s: _circles(d, s) for s in range(1 << self.n)}
        self.basis = []   # (state, labels) ; labels bit 1 = x
        self.index = {}
        for s in range(1 << self.n):
            circ = self.circles[s]
            for lab in range(1 << len(circ)):
                if reduced_edge is not None and not deformed:
                    k = self._circle_of(s, reduced_edge)
                    if not lab >> k & 1:
                        continue   # basepoint circle must carry x
                if reduced_edge is not None and deformed:
                    k = self._circle_of(s, reduced_edge)
                    if lab >> k & 1:
                        continue   # A[X]-basis: basepoint circle labelled 1
                self.index[(s, lab)] = len(self.basis)
                self.basis.append((s, lab))

    def _circle_of(self, state, edge):
        for k, c in enumerate(self.circles[state]):
            if edge in c:
                return k
        raise AssertionError

    def grading(self, state, lab):
        circ = self.circles[state]
        h = bin(state).count("1") - self.n_minus
        q = bin(state).count("1") + self.n_plus - 2 * self.n_minus
        for k in range(len(circ)):
            q += -1 if lab >> k & 1 else 1
        return h, q

    def differential(self):
        """Returns {(row, col): (coeff, tpow)}; tpow > 0 only when deformed."""
        out: dict = {}

        def add(i, j, c, tpow=0):
            key = (i, j)
            cur = out.get(key, (0, tpow))
            assert cur[1] == tpow or cur[0] == 0
            v = cur[0] + c
            v = v % self.p if self.p else v
            if v:
                out[key] = (v, tpow)
            else:
                out.pop(key, None)

        for (s, lab) in self.basis:
            col = self.index[(s, lab)]
            circ = self.circles[s]
            for ci in range(self.n):
                if s >> ci & 1:
                    continue
                s2 = s | (1 << ci)
                sign = -1 if bin(s & ((1 << ci) - 1)).count("1") % 2 else 1
                circ2 = self.circles[s2]
                # transport labels: merge or split
                idx2 = {c: k for k, c in enumerate(circ2)}
                merged = [c2 for c2 in circ2 if sum(1 for c in circ if c <= c2) == 2]
                split = [c for c in circ if sum(1 for c2 in circ2 if c2 <= c) == 2]
                if merged:
                    tgt = idx2[merged[0]]
                    xs = 0
                    lab2 = 0
                    for k, c in enumerate(circ):
                        bit = lab >> k & 1
                        if c <= merged[0]:
                            xs += bit
                        else:
                            lab2 |= bit << idx2[next(c2 for c2 in circ2 if c <= c2)]
                    if xs == 0:
                        self._emit(add, col, s2, lab2, sign)
                    elif xs == 1:
                        self._emit(add, col, s2, lab2 | (1 << tgt), sign)
                    else:
                        if self.deformed:
                            self._emit(add, col, s2, lab2, sign, tpow=1)
                elif split:
                    src = split[0]
                    parts = [k for k, c2 in enumerate(circ2) if c2 <= src]
                    k1, k2 = parts
                    lab2 = 0
                    for k, c in enumerate(circ):
                        if c == src:
                            continue
                        bit = lab >> k & 1
                        lab2 |= bit << idx2[next(c2 for c2 in circ2 if c <= c2)]
                    bit = lab >> circ.index(src) & 1
                    if bit == 0:
                        self._emit(add, col, s2, lab2 | (1 << k1), sign)
                        self._emit(add, col, s2, lab2 | (1 << k2), sign)
                    else:
                        self._emit(add, col, s2, lab2 | (1 << k1) | (1 << k2), sign)
                        if self.deformed:
                            self._emit(add, col, s2, lab2, sign, tpow=1)
                else:
                    raise AssertionError("resolution change neither merges nor splits")
        return out

    def _emit(self, add, col, s2, lab2, coeff, tpow=0):
        """Record a target term, rewriting through the basepoint rules."""
        if self.reduced_edge is not None:
            k = self._circle_of(s2, self.reduced_edge)
            bit = lab2 >> k & 1
            if not self.deformed:
                if not bit:
                    return      # falls outside the x-labelled subcomplex
            else:
                if bit:
                    # x at the basepoint is X times the label-1 generator
                    add(self.index[(s2, lab2 & ~(1 << k))], col, coeff, tpow="X")
                    return
        add(self.index[(s2, lab2)], col, coeff, tpow)


def kh_table(d: Diagram, p: int, reduced: bool):
    """Bigraded ranks by plain rank-nullity over the field."""
    cube = CubeComplex(d, p, reduced_edge=min(d.successor) if reduced else None)
    diff = cube.differential()
    by_grading: dict = {}
    for i, (s, lab) in enumerate(cube.basis):
        by_grading.setdefault(cube.grading(s, lab), []).append(i)
    entries: dict = {}
    for (row, col), (c, tpow) in diff.items():
        assert tpow == 0
        entries.setdefault(col, {})[row] = c
    ranks: dict = {}
    for (h, q), cols in by_grading.items():
        rows = by_grading.get((h + 1, q), [])
        if not rows:
            ranks[(h, q)] = 0
            continue
        ri = {r: i for i, r in enumerate(rows)}
        mat = [[0] * len(cols) for _ in rows]
        for j, cidx in enumerate(cols):
            for r, c in entries.get(cidx, {}).items():
                if r in ri:
                    mat[ri[r]][j] = c
        ranks[(h, q)] = _rank(mat, p)
    table = {}
    for (h, q), cols in by_grading.items():
        dim = len(cols) - ranks.get((h, q), 0) - ranks.get((h - 1, q), 0)
        if dim:
            table[(h, q)] = dim
    return table


def _rank(mat, p):
    if not mat or not mat[0]:
        return 0
    m = [[Fraction(x) if not p else x % p for x in row] for row in mat]
    rank = 0
    rowpos = 0
    for col in range(len(m[0])):
        piv = next((r for r in range(rowpos, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rowpos], m[piv] = m[piv], m[rowpos]
        inv = pow(m[rowpos][col], -1, p) if p else Fraction(1) / m[rowpos][col]
        for r in range(rowpos + 1, len(m)):
            if m[r][col]:
                f = m[r][col] * inv
                for cc in range(col, len(m[0])):
                    v = m[r][cc] - f * m[rowpos][cc]
                    m[r][cc] = v % p if p else v
        rowpos += 1
        rank += 1
        if rowpos == len(m):
            break
    return rank


def deformed_factors(d: Diagram, p: int):
    """(free_rank, sorted torsion X-powers) of the A[X]-module, via the
    general Smith normal form routine on the one-variable presentation."""
    from knotrank.algebra import CoefficientField, smith_over_poly_ring

    cube = CubeComplex(d, p, deformed=True, reduced_edge=min(d.successor))
    diff = cube.differential()
    by_h: dict = {}
    for i, (s, lab) in enumerate(cube.basis):
        h, _ = cube.grading(s, lab)
        by_h.setdefault(h, []).append(i)
    field = CoefficientField(p)
    free = 0
    torsion = []
    ranks = {}
    for h in sorted(by_h):
        cols = by_h[h]
        rows = by_h.get(h + 1, [])
        ri = {r: i for i, r in enumerate(rows)}
        cj = {c: j for j, c in enumerate(cols)}
        mat = [[() for _ in cols] for _ in rows]
        for (row, col), (c, tpow) in diff.items():
            if col in cj and row in ri:
                if tpow == "X":
                    poly = (0, c)
                elif tpow == 0:
                    poly = (c,)
                else:
                    poly = tuple([0] * (2 * tpow) + [c])
                mat[ri[row]][cj[col]] = poly
        if rows and cols:
            inv = smith_over_poly_ring(mat, field)
            ranks[h] = len(rows) - inv.free_rank
            torsion.extend(len(f) - 1 for f in inv.torsion_factors)
        else:
            ranks[h] = 0
    for h in sorted(by_h):
        free += len(by_h[h]) - ranks.get(h, 0) - ranks.get(h - 1, 0)
    return free, sorted(torsion)

"""Planar-diagram (PD) codes for oriented knot and link diagrams.

A PD code lists one 4-tuple of edge labels per crossing, counterclockwise
starting at the incoming under-strand.  Edge labels are positive integers
and increase by one along each component (wrapping around at the
component's largest label); that rule is what orients the diagram.  This
matches the convention in which standard knot tables and the bundled
corpus codes are written.

Crossing-free unknot components cannot be expressed by 4-tuples, so a
diagram carries an explicit count of them; the text form is the letter
``U`` repeated once per such component.

Diagrams are immutable after validation.  All operations return new
diagrams and never mutate their inputs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property


class InvalidDiagram(ValueError):
    """The PD data does not describe a consistently oriented diagram."""


Tuple4 = tuple[int, int, int, int]


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[Tuple4, ...]
    extra_components: int = 0  # crossing-free unknot components
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(x) for x in t) for t in self.crossings))
        if self.extra_components < 0:
            raise InvalidDiagram("negative component count")
        if not self.crossings and self.extra_components == 0:
            raise InvalidDiagram("empty diagram: need at least one component")
        self._trace  # validate eagerly

    # -- structure ----------------------------------------------------------

    @cached_property
    def _trace(self):
        return _trace_structure(self.crossings)

    @property
    def edge_count(self) -> int:
        return 2 * len(self.crossings)

    @property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Edge labels of each component, in orientation order."""
        return self._trace[0]

    @property
    def component_of_edge(self) -> dict:
        return self._trace[1]

    @property
    def successor(self) -> dict:
        """Next edge label along the orientation."""
        return self._trace[2]

    @property
    def over_in(self) -> tuple[int, ...]:
        """Incoming over-strand edge of each crossing."""
        return self._trace[3]

    @property
    def signs(self) -> tuple[int, ...]:
        return self._trace[4]

    @property
    def n_components(self) -> int:
        return len(self.components) + self.extra_components

    @property
    def is_knot(self) -> bool:
        return self.n_components == 1

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def sign(self, i: int) -> int:
        self._check_index(i)
        return self.signs[i]

    def _check_index(self, i: int):
        if not 0 <= i < len(self.crossings):
            raise IndexError(f"crossing index {i} out of range")

    def over_pair(self, i: int) -> tuple[int, int]:
        """(incoming, outgoing) over-strand edges at crossing i."""
        _, b, _, d = self.crossings[i]
        return (d, b) if self.over_in[i] == d else (b, d)

    # -- text form -----------------------------------------------------------

    @property
    def pd_text(self) -> str:
        if not self.crossings:
            return "U" * self.extra_components
        body = ",".join("[" + ",".join(str(x) for x in t) + "]" for t in self.crossings)
        text = "[" + body + "]"
        if self.extra_components:
            text += "U" * self.extra_components
        return text

    def __repr__(self):
        label = self.name or "diagram"
        return f"<Diagram {label}: {len(self.crossings)} crossings, {self.n_components} component(s)>"

    def with_name(self, name: str) -> "Diagram":
        return Diagram(self.crossings, self.extra_components, name)


# ---------------------------------------------------------------------------
# validation / tracing


def _trace_structure(crossings):
    occ: dict[int, list] = {}
    for ci, tup in enumerate(crossings):
        if len(tup) != 4:
            raise InvalidDiagram(f"crossing {ci}: expected 4 edges, got {len(tup)}")
        for pos, e in enumerate(tup):
            if e <= 0:
                raise InvalidDiagram(f"crossing {ci}: edge labels must be positive, got {e}")
            occ.setdefault(e, []).append((ci, pos))
    for e, slots in occ.items():
        if len(slots) != 2:
            raise InvalidDiagram(f"edge {e} appears {len(slots)} times (expected exactly 2)")

    # structural cycles: walk strands through crossings, ignoring orientation
    visited = set()
    raw_cycles = []
    for e0 in sorted(occ):
        if e0 in visited:
            continue
        cycle = []
        e, head = e0, occ[e0][0]
        while True:
            cycle.append(e)
            visited.add(e)
            ci, pos = head
            out_slot = (ci, (pos + 2) % 4)
            f = crossings[ci][(pos + 2) % 4]
            s1, s2 = occ[f]
            nxt_head = s2 if s1 == out_slot else s1
            e, head = f, nxt_head
            if e == e0 and head == occ[e0][0]:
                break
            if len(cycle) > 2 * len(crossings):
                raise InvalidDiagram("strand tracing does not close")
        raw_cycles.append(cycle)

    # orient each cycle so the labels increase (with one wraparound)
    components = []
    for cycle in raw_cycles:
        lo = min(cycle)
        labels = sorted(cycle)
        if labels != list(range(lo, lo + len(cycle))):
            raise InvalidDiagram(f"component containing edge {lo} has non-contiguous labels {labels}")
        i = cycle.index(lo)
        fwd = cycle[i:] + cycle[:i]
        if fwd == labels:
            components.append(tuple(fwd))
        else:
            rev = [cycle[i]] + list(reversed(cycle[:i] + cycle[i + 1:]))
            if rev == labels:
                components.append(tuple(rev))
            else:
                raise InvalidDiagram(
                    f"edge labels do not increase along the component containing edge {lo}")
    components.sort(key=lambda c: c[0])
    components = tuple(components)

    comp_of = {}
    succ = {}
    for k, comp in enumerate(components):
        for j, e in enumerate(comp):
            comp_of[e] = k
            succ[e] = comp[(j + 1) % len(comp)]

    # the under-strand must run from position 0 to position 2
    for ci, (a, b, c, d) in enumerate(crossings):
        if succ[a] != c:
            raise InvalidDiagram(
                f"crossing {ci}: under-strand {a}->{c} conflicts with orientation "
                f"(expected {a}->{succ[a]}); first tuple entry must be the incoming under-strand")

    # assign over-strand directions; each oriented transition e -> succ(e)
    # happens at exactly one crossing, and the under-strands consume theirs
    # first.  Ties (components that never pass under) break toward the
    # smallest incoming label.
    remaining = {(e, succ[e]) for e in succ}
    for a, b, c, d in crossings:
        t = (a, c)
        if t not in remaining:
            raise InvalidDiagram(f"under transition {a}->{c} used twice")
        remaining.discard(t)
    over_in: list = [None] * len(crossings)
    unassigned = set(range(len(crossings)))
    while unassigned:
        progress = []
        for ci in sorted(unassigned):
            _, b, _, d = crossings[ci]
            cands = []
            if succ.get(b) == d and (b, d) in remaining:
                cands.append(b)
            if succ.get(d) == b and (d, b) in remaining and d != b:
                cands.append(d)
            if not cands:
                raise InvalidDiagram(f"crossing {ci}: over-strand orientation untraceable")
            if len(cands) == 1:
                progress.append((ci, cands[0]))
        if not progress:
            # genuinely ambiguous (a component never passing under); break the
            # tie toward the smallest incoming over label
            ci = min(unassigned)
            _, b, _, d = crossings[ci]
            progress = [(ci, min(b, d))]
        assigned_any = False
        for ci, oin in progress:
            if ci not in unassigned or (oin, succ[oin]) not in remaining:
                continue
            over_in[ci] = oin
            remaining.discard((oin, succ[oin]))
            unassigned.discard(ci)
            assigned_any = True
        if not assigned_any:
            raise InvalidDiagram(
                f"over-strand orientation untraceable at crossings {sorted(unassigned)}")
    if remaining:
        raise InvalidDiagram(f"orientation trace left unused transitions {sorted(remaining)}")

    # sign: +1 when the incoming over-strand sits at position 3 (then the
    # over-direction is a +90 degree turn from the under-direction)
    signs = []
    for ci, (a, b, c, d) in enumerate(crossings):
        if over_in[ci] == d and over_in[ci] != b:
            signs.append(1)
        else:
            signs.append(-1)
    return components, comp_of, succ, tuple(over_in), tuple(signs)


# ---------------------------------------------------------------------------
# parsing and files


_PD_TOKEN = re.compile(r"\[|\]|,|\d+|U|\s+")


def parse_pd(text: str, name: str | None = None) -> Diagram:
    """Parse a PD code: nested brackets of 4-tuples, or ``U`` per unknot."""
    stripped = "".join(text.split())
    if not stripped:
        raise InvalidDiagram("empty PD text")
    unknots = 0
    while stripped.upper().endswith("U"):
        unknots += 1
        stripped = stripped[:-1]
    while stripped.upper().startswith("U"):
        unknots += 1
        stripped = stripped[1:]
    if not stripped:
        return Diagram((), unknots, name)
    if not (stripped.startswith("[") and stripped.endswith("]")):
        raise InvalidDiagram(f"PD code must be bracketed: {text!r}")
    inner = stripped[1:-1]
    tuples = []
    depth = 0
    current: list[str] = []
    buf = ""
    for ch in inner:
        if ch == "[":
            depth += 1
            if depth > 1:
                raise InvalidDiagram("brackets nested too deep")
            current = []
            buf = ""
        elif ch == "]":
            if depth != 1:
                raise InvalidDiagram("unbalanced brackets")
            depth -= 1
            if buf:
                current.append(buf)
            if len(current) != 4:
                raise InvalidDiagram(f"tuple {current} does not have 4 entries")
            tuples.append(tuple(int(x) for x in current))
            buf = ""
        elif ch == ",":
            if depth == 1:
                if not buf:
                    raise InvalidDiagram("empty entry in tuple")
                current.append(buf)
                buf = ""
            # commas between tuples are ignored
        elif ch.isdigit():
            if depth != 1:
                raise InvalidDiagram(f"digit outside tuple in {text!r}")
            buf += ch
        else:
            raise InvalidDiagram(f"unexpected character {ch!r} in PD code")
    if depth:
        raise InvalidDiagram("unbalanced brackets")
    return Diagram(tuple(tuples), unknots, name)


def parse_diagram_file(text: str) -> list[Diagram]:
    """One record per line: ``name<TAB>pd_code``; lines starting '#' ignored."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise InvalidDiagram(f"line {lineno}: expected 'name<TAB>pd_code'")
        name, pd = line.split("\t", 1)
        out.append(parse_pd(pd, name=name.strip()))
    return out


def format_diagram_file(diagrams) -> str:
    lines = []
    for i, d in enumerate(diagrams):
        lines.append(f"{d.name or f'knot{i}'}\t{d.pd_text}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# rebuilding after surgery: records carry explicit over-strand direction


def _assemble(records, extra_components=0, name=None) -> Diagram:
    """Build a diagram from (tuple4, over_in_position) records with arbitrary
    labels, relabeling edges canonically (1..2n, increasing along each
    component, components ordered by smallest old label)."""
    heads = {}
    tails = {}
    for ci, (tup, oin_pos) in enumerate(records):
        oout_pos = 4 - oin_pos
        for pos, e in enumerate(tup):
            if pos == 0 or pos == oin_pos:
                if e in heads:
                    raise InvalidDiagram(f"edge {e} has two heads")
                heads[e] = (ci, pos)
            else:
                if e in tails:
                    raise InvalidDiagram(f"edge {e} has two tails")
                tails[e] = (ci, pos)
    if set(heads) != set(tails):
        raise InvalidDiagram("edges with missing head or tail")

    cycles = []
    seen = set()
    for e0 in sorted(heads):
        if e0 in seen:
            continue
        cyc = []
        e = e0
        while True:
            cyc.append(e)
            seen.add(e)
            ci, pos = heads[e]
            tup, oin_pos = records[ci]
            out_pos = 2 if pos == 0 else 4 - oin_pos
            e = tup[out_pos]
            if e == e0:
                break
        cycles.append(cyc)

    relabel = {}
    nxt = 1
    for cyc in cycles:
        for e in cyc:
            relabel[e] = nxt
            nxt += 1
    new_tuples = []
    for tup, oin_pos in records:
        new_tuples.append(tuple(relabel[e] for e in tup))
    return Diagram(tuple(new_tuples), extra_components, name)


def _records(d: Diagram):
    out = []
    for ci, tup in enumerate(d.crossings):
        pos = 3 if d.signs[ci] == 1 else 1  # over-in position encodes the sign
        out.append((tup, pos))
    return out


# ---------------------------------------------------------------------------
# operations


def mirror(d: Diagram) -> Diagram:
    """Mirror image: reflect the projection, negating every crossing sign."""
    recs = []
    for (a, b, c, dd), oin_pos in _records(d):
        recs.append(((a, dd, c, b), 4 - oin_pos))
    out = _assemble(recs, d.extra_components, name=f"m({d.name})" if d.name else None)
    return out


def crossing_change(d: Diagram, i: int) -> Diagram:
    """Swap over and under strands at crossing i."""
    d._check_index(i)
    recs = _records(d)
    tup, oin_pos = recs[i]
    rolled = tuple(tup[(oin_pos + k) % 4] for k in range(4))
    new_oin_pos = (0 - oin_pos) % 4  # old under-in lands here
    recs[i] = (rolled, new_oin_pos)
    return _assemble(recs, d.extra_components,
                     name=f"{d.name}.switch{i}" if d.name else None)


def oriented_resolution(d: Diagram, i: int) -> Diagram:
    """Replace crossing i by the smoothing that respects orientation."""
    d._check_index(i)
    recs = _records(d)
    tup, oin_pos = recs.pop(i)
    a, c = tup[0], tup[2]
    o_in, o_out = tup[oin_pos], tup[4 - oin_pos]
    # merge under-in with over-out, over-in with under-out
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    circles = 0
    for x, y in ((a, o_out), (o_in, c)):
        rx, ry = find(x), find(y)
        if rx == ry:
            circles += 1
        else:
            parent[max(rx, ry)] = min(rx, ry)
    out_recs = []
    for tup2, oin2 in recs:
        out_recs.append((tuple(find(e) for e in tup2), oin2))
    if not out_recs and circles == 0:
        # the merged strand survives with no crossings left
        circles = 1
    return _assemble(out_recs, d.extra_components + circles,
                     name=f"{d.name}.res{i}" if d.name else None)


def connected_sum(d1: Diagram, d2: Diagram, e1: int | None = None,
                  e2: int | None = None) -> Diagram:
    """Connected sum of two knot diagrams, spliced at the given edges
    (defaults: the highest-labeled edge of each)."""
    if not d1.is_knot or not d2.is_knot:
        raise InvalidDiagram("connected sum requires knot diagrams")
    name = None
    if d1.name and d2.name:
        name = f"{d1.name}#{d2.name}"
    if not d1.crossings:
        return Diagram(d2.crossings, 0, name)
    if not d2.crossings:
        return Diagram(d1.crossings, 0, name)
    if e1 is None:
        e1 = d1.edge_count
    if e2 is None:
        e2 = d2.edge_count
    if e1 not in d1.successor or e2 not in d2.successor:
        raise InvalidDiagram("splice edge not present")
    shift = d1.edge_count
    recs = _records(d1)
    for tup, oin in _records(d2):
        recs.append((tuple(e + shift for e in tup), oin))
    e2s = e2 + shift

    # heads: position 0 (under-in) or the over-in position
    def head_slot(recs, edge):
        for k, (tup, oin_pos) in enumerate(recs):
            for pos, e in enumerate(tup):
                if e == edge and (pos == 0 or pos == oin_pos):
                    return k, pos
        raise AssertionError(f"no head slot for edge {edge}")

    k1, p1 = head_slot(recs, e1)
    k2, p2 = head_slot(recs, e2s)
    t1 = list(recs[k1][0])
    t1[p1] = e2s
    recs[k1] = (tuple(t1), recs[k1][1])
    t2 = list(recs[k2][0])
    t2[p2] = e1
    recs[k2] = (tuple(t2), recs[k2][1])
    return _assemble(recs, 0, name)


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    """Split (distant) union of two diagrams."""
    shift = max([0] + [e for t in d1.crossings for e in t])
    recs = _records(d1)
    for tup, oin in _records(d2):
        recs.append((tuple(e + shift for e in tup), oin))
    name = f"{d1.name}+{d2.name}" if d1.name and d2.name else None
    return _assemble(recs, d1.extra_components + d2.extra_components, name)


# ---------------------------------------------------------------------------
# planarity diagnostic (rotation-system genus)


def is_planar(d: Diagram) -> bool:
    """True when the rotation system given by the tuples embeds in the plane.

    Validation alone does not force planarity (PD data can describe a
    diagram on a higher-genus surface); generators reject such samples.
    """
    n = len(d.crossings)
    if n == 0:
        return True
    occ: dict[int, list] = {}
    for ci, tup in enumerate(d.crossings):
        for pos, e in enumerate(tup):
            occ.setdefault(e, []).append(4 * ci + pos)
    alpha = {}
    for slots in occ.values():
        s1, s2 = slots
        alpha[s1] = s2
        alpha[s2] = s1

    # group crossings into connected pieces
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for slots in occ.values():
        a, b = find(slots[0] // 4), find(slots[1] // 4)
        if a != b:
            parent[max(a, b)] = min(a, b)

    faces_per_piece: dict[int, int] = {}
    size_per_piece: dict[int, int] = {}
    for ci in range(n):
        r = find(ci)
        size_per_piece[r] = size_per_piece.get(r, 0) + 1
    visited = set()
    for start in range(4 * n):
        if start in visited:
            continue
        piece = find(start // 4)
        s = start
        while True:
            visited.add(s)
            t = alpha[s]
            s = 4 * (t // 4) + (t % 4 + 1) % 4
            if s == start:
                break
        faces_per_piece[piece] = faces_per_piece.get(piece, 0) + 1
    for piece, v in size_per_piece.items():
        if faces_per_piece.get(piece, 0) != v + 2:
            return False
    return True

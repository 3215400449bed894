"""Shared machinery for one-crossing-at-a-time tangle scans.

Both the Kauffman-bracket contraction and the link-homology engine walk
the crossings of a diagram in an order chosen to keep the number of open
boundary edges small, maintaining a state indexed by crossingless
matchings of the open edges.  This module provides the ordering heuristic
and the combinatorics of attaching one more crossing to a matching.
"""

from __future__ import annotations

from .diagram import Diagram

# local smoothing arcs by slot position, counterclockwise from the
# incoming under-strand: the 0-smoothing joins the regions swept by
# rotating the over-strand counterclockwise onto the under-strand
ARCS_0 = ((0, 1), (2, 3))
ARCS_1 = ((0, 3), (1, 2))


def scan_order(d: Diagram) -> list[int]:
    """Order the crossings greedily so the open boundary stays small.

    Every starting crossing is tried; the order with the smallest peak
    boundary (ties: smallest total) wins.
    """
    n = len(d.crossings)
    if n == 0:
        return []
    incident: dict[int, list[int]] = {}
    for ci, tup in enumerate(d.crossings):
        for e in tup:
            incident.setdefault(e, []).append(ci)

    def simulate(start: int):
        open_edges: set[int] = set()
        done = [False] * n
        order = []
        peak = total = 0
        cur = start
        for _ in range(n):
            done[cur] = True
            order.append(cur)
            tup = d.crossings[cur]
            for e in set(tup):
                cnt = tup.count(e)
                if cnt == 2:
                    open_edges.discard(e)  # both ends here
                elif e in open_edges:
                    open_edges.remove(e)
                else:
                    open_edges.add(e)
            peak = max(peak, len(open_edges))
            total += len(open_edges)
            # next: maximize closing slots, then smallest index
            best = None
            for e in open_edges:
                for cj in incident[e]:
                    if done[cj]:
                        continue
                    s = sum(1 for x in d.crossings[cj] if x in open_edges)
                    key = (-s, cj)
                    if best is None or key < best[0]:
                        best = (key, cj)
            if best is None:
                for cj in range(n):
                    if not done[cj]:
                        best = (None, cj)
                        break
                if best is None:
                    break
            cur = best[1]
        return (peak, total), order

    best_cost, best_order = None, None
    for start in range(n):
        cost, order = simulate(start)
        if best_cost is None or cost < best_cost:
            best_cost, best_order = cost, order
    return best_order


class CrossingStep:
    """Slot bookkeeping for attaching one crossing to a partial tangle.

    ``slot_kind[i]`` is one of:
      ('close', point)  -- the edge is an open boundary point, and closes
      ('new', point)    -- the edge opens a fresh boundary point
      ('pair', j)       -- both ends of the edge sit on this crossing
    Cut halves of a basepoint edge are renamed to negative point ids and
    behave like 'new' points that never close.
    """

    def __init__(self, d: Diagram, ci: int, open_points: set,
                 cut_edge: int | None = None):
        tup = d.crossings[ci]
        self.index = ci
        oin = d.over_in[ci]
        oin_pos = 3 if d.signs[ci] == 1 else 1
        self.sign = d.signs[ci]
        ids = list(tup)
        if cut_edge is not None and cut_edge in tup:
            # tail slot (outgoing) -> -1, head slot (incoming) -> -2
            for pos, e in enumerate(ids):
                if e != cut_edge:
                    continue
                if pos in (2, 4 - oin_pos):
                    ids[pos] = -1
                else:
                    ids[pos] = -2
        kinds = []
        for pos in range(4):
            e = ids[pos]
            if e > 0 and ids.count(e) == 2:
                kinds.append(("pair", ids.index(e) if ids.index(e) != pos else 3 - ids[::-1].index(e)))
            elif e in open_points:
                kinds.append(("close", e))
            else:
                kinds.append(("new", e))
        self.point_ids = ids
        self.slot_kind = kinds

    def next_points(self, open_points: set) -> set:
        out = set(open_points)
        for pos in range(4):
            kind, v = self.slot_kind[pos]
            if kind == "close":
                out.discard(v)
            elif kind == "new":
                out.add(v)
        return out


def merge_matching(matching: tuple, step: CrossingStep, arcs: tuple):
    """Attach the two local smoothing arcs to a matching.

    ``matching`` is a sorted tuple of (p, q) pairs with p < q over the open
    points.  Returns ``(new_matching, circles, constituents)`` where
    ``circles`` is the number of closed loops formed and ``constituents``
    maps each new arc (keyed by its sorted endpoint pair) and each circle
    (keyed by ('circle', k)) to the list of building blocks traversed:
    ('old', (p, q)) for an arc of the input matching and ('loc', i) for
    local arc i.
    """
    # adjacency: vertex -> list of (arc_key, other_vertex)
    adj: dict = {}

    def add(u, v, key):
        adj.setdefault(u, []).append((key, v))
        adj.setdefault(v, []).append((key, u))

    for (p, q) in matching:
        add(("P", p), ("P", q), ("old", (p, q)))
    for i, (x, y) in enumerate(arcs):
        add(("S", x), ("S", y), ("loc", i))
    # connectors: identify slot vertices with point vertices
    seen_pairs = set()
    for pos in range(4):
        kind, v = step.slot_kind[pos]
        if kind == "close":
            add(("S", pos), ("P", v), ("glue", pos))
        elif kind == "new":
            add(("S", pos), ("N", pos), ("glue", pos))
        else:  # pair
            j = v
            if (min(pos, j), max(pos, j)) not in seen_pairs:
                seen_pairs.add((min(pos, j), max(pos, j)))
                add(("S", pos), ("S", j), ("pairglue", pos))

    ends = [u for u, lst in adj.items() if len(lst) == 1]
    used = set()
    new_pairs = []
    constituents: dict = {}

    def walk(start):
        path = []
        u = start
        prev_key = None
        while True:
            options = [kv for kv in adj[u] if kv[0] not in used]
            if not options:
                return u, path
            key, v = options[0]
            used.add(key)
            if key[0] in ("old", "loc"):
                path.append(key)
            u = v

    for u in ends:
        if any(kv[0] not in used for kv in adj[u]):
            v, path = walk(u)
            pu = _point_of(u, step)
            pv = _point_of(v, step)
            pair = (min(pu, pv), max(pu, pv))
            new_pairs.append(pair)
            constituents[pair] = path
    circles = 0
    for u in adj:
        while any(kv[0] not in used for kv in adj[u]):
            _, path = walk(u)
            constituents[("circle", circles)] = path
            circles += 1
    return tuple(sorted(new_pairs)), circles, constituents


def _point_of(vertex, step: CrossingStep):
    tag, v = vertex
    if tag == "P":
        return v
    if tag == "N":
        return step.point_ids[v]
    raise AssertionError(f"dangling slot vertex {vertex}")

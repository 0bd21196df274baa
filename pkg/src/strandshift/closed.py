"""Closed strand diagrams: base lines, similarities, reductions, semi-reduction.

Closing a diagram with equal domain and range glues source i to sink i; each
gluing leaves one base point of in- and out-degree 1 on the resulting cycle
structure.  Cutting at the base points is the inverse bijection.  Base line
shifts move a split or merge through the base line, base line permutations
reorder it; both are similarities and conjugate the cut element.  Type 0/1/2
reductions act away from the base line; type 3 reductions collapse interleaved
loops whose colors form the out-star of a common vertex.

Every move returns the new diagram plus a :class:`Move` record that carries
enough data to replay the move and to build the conjugating diagram.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .diagrams import (
    StrandDiagram,
    apply_redex,
    find_redexes,
    identity_diagram,
    invert,
    multi_split_diagram,
    permutation_diagram,
    split_diagram,
)
from .errors import LimitExceeded, PreconditionError, SignatureMismatch
from .graphs import ShiftGraph


class ClosedDiagram:
    __slots__ = (
        "point_color",
        "strand_color",
        "strand_from",
        "strand_to",
        "in_slots",
        "out_slots",
        "base_line",
        "base_set",
        "_ukey",
    )

    def __init__(self, point_color, strand_color, strand_from, strand_to, in_slots, out_slots, base_line):
        self.point_color = dict(point_color)
        self.strand_color = dict(strand_color)
        self.strand_from = dict(strand_from)
        self.strand_to = dict(strand_to)
        self.in_slots = {p: tuple(v) for p, v in in_slots.items()}
        self.out_slots = {p: tuple(v) for p, v in out_slots.items()}
        self.base_line = tuple(base_line)
        self.base_set = frozenset(base_line)
        self._ukey = None
        for b in self.base_line:
            assert len(self.in_slots[b]) == 1 and len(self.out_slots[b]) == 1, "base points have degree (1,1)"

    def base_colors(self) -> tuple:
        return tuple(self.point_color[b] for b in self.base_line)

    def splits_merges_degens(self) -> int:
        return len(self.point_color) - len(self.base_line)

    def __repr__(self):
        return f"ClosedDiagram({len(self.point_color)} points, base {self.base_colors()})"


@dataclass(frozen=True)
class Move:
    """One similarity or reduction step.

    `data` replays the move; `old_base`/`new_base` are color tuples;
    `conj` holds what :func:`conjugator_of` needs.
    """

    kind: str  # shift-expand | shift-reduce | permute | reduce | type3 | type3-expand
    data: tuple
    old_base: tuple
    new_base: tuple
    conj: tuple = ()


def conjugator_of(move: Move) -> StrandDiagram:
    """The diagram G with cut(after) = G . cut(before) . G^-1.

    G runs from the new base to the old base; expanding shifts yield merge
    diagrams, reducing shifts split diagrams, permutations permutation
    diagrams, type 0/1/2 reductions the identity, and type 3 moves one-layer
    diagrams with one split (or merge) per unit of winding.
    """
    if move.kind == "shift-expand":
        pos, kids = move.conj
        return invert(split_diagram(move.old_base, pos, kids))
    if move.kind == "shift-reduce":
        pos, kids = move.conj
        return split_diagram(move.new_base, pos, kids)
    if move.kind == "permute":
        (perm,) = move.conj
        return permutation_diagram(move.new_base, list(perm))
    if move.kind == "reduce":
        return identity_diagram(move.old_base)
    if move.kind == "type3":
        start, kids, k = move.conj
        return multi_split_diagram(move.new_base, {start + j: kids for j in range(k)})
    if move.kind == "type3-expand":
        start, kids, k = move.conj
        return invert(multi_split_diagram(move.old_base, {start + j: kids for j in range(k)}))
    raise ValueError(f"unknown move kind {move.kind}")


# ---------------------------------------------------------------------------
# closing and cutting

def close(d: StrandDiagram) -> ClosedDiagram:
    """Glue source i to sink i; each gluing becomes a base point."""
    if d.domain() != d.range():
        raise SignatureMismatch("only diagrams with equal domain and range close")
    for p in d.sources:
        if len(d.out_slots[p]) != 1:
            raise ValueError("sources must be univalent to close; normalize the diagram")
    for p in d.sinks:
        if len(d.in_slots[p]) != 1:
            raise ValueError("sinks must be univalent to close; normalize the diagram")
    pc = dict(d.point_color)
    sc = dict(d.strand_color)
    sf = dict(d.strand_from)
    st = dict(d.strand_to)
    ins = {p: list(v) for p, v in d.in_slots.items()}
    outs = {p: list(v) for p, v in d.out_slots.items()}
    base = []
    for src, snk in zip(d.sources, d.sinks):
        s_in = ins[snk][0]
        st[s_in] = src
        ins[src] = [s_in]
        del pc[snk], ins[snk], outs[snk]
        base.append(src)
    return ClosedDiagram(pc, sc, sf, st, ins, outs, base)


def cut(c: ClosedDiagram) -> StrandDiagram:
    """Split every base point into a source/sink pair, ordered by the base line."""
    pc = dict(c.point_color)
    sc = dict(c.strand_color)
    sf = dict(c.strand_from)
    st = dict(c.strand_to)
    ins = {p: list(v) for p, v in c.in_slots.items()}
    outs = {p: list(v) for p, v in c.out_slots.items()}
    nxt = 1 + max([*pc, *sc], default=0)
    sinks = []
    for b in c.base_line:
        s_in = ins[b][0]
        snk = nxt
        nxt += 1
        pc[snk] = c.point_color[b]
        ins[snk] = [s_in]
        outs[snk] = []
        st[s_in] = snk
        ins[b] = []
        sinks.append(snk)
    return StrandDiagram(pc, sc, sf, st, ins, outs, c.base_line, sinks)


# ---------------------------------------------------------------------------
# canonical forms

def _bidirectional_order(c: ClosedDiagram, seeds) -> dict:
    order = {}
    queue = deque()
    for p in seeds:
        if p not in order:
            order[p] = len(order)
            queue.append(p)
    while queue:
        p = queue.popleft()
        for s in c.out_slots[p]:
            q = c.strand_to[s]
            if q not in order:
                order[q] = len(order)
                queue.append(q)
        for s in c.in_slots[p]:
            q = c.strand_from[s]
            if q not in order:
                order[q] = len(order)
                queue.append(q)
    return order


def _serialize(c: ClosedDiagram, order: dict) -> tuple:
    by_rank = sorted(order, key=order.__getitem__)
    records = []
    for p in by_rank:
        outs = []
        for s in c.out_slots[p]:
            q = c.strand_to[s]
            outs.append((c.strand_color[s], order[q], c.in_slots[q].index(s)))
        records.append((c.point_color[p], p in c.base_set, tuple(outs)))
    return tuple(records)


def closed_key(c: ClosedDiagram) -> tuple:
    """Canonical key including the base line order."""
    order = _bidirectional_order(c, c.base_line)
    assert len(order) == len(c.point_color), "component without a base point"
    return (_serialize(c, order), tuple(order[b] for b in c.base_line))


def components(c: ClosedDiagram) -> list:
    """Weakly connected components, each a sorted tuple of point ids."""
    seen = set()
    comps = []
    for p in sorted(c.point_color):
        if p in seen:
            continue
        order = _bidirectional_order(c, [p])
        seen.update(order)
        comps.append(tuple(sorted(order)))
    return comps


def unordered_key(c: ClosedDiagram) -> tuple:
    """Canonical key modulo base line permutations.

    Each component is serialized from its best base-point seed; the diagram
    key is the sorted tuple of component keys.  Used to dedupe similarity
    search states, where base order is free.
    """
    if c._ukey is not None:
        return c._ukey
    comp_keys = []
    for comp in components(c):
        best = None
        for seed in comp:
            if seed not in c.base_set:
                continue
            order = _bidirectional_order(c, [seed])
            ser = _serialize(c, order)
            if best is None or ser < best:
                best = ser
        assert best is not None, "component without a base point"
        comp_keys.append(best)
    key = tuple(sorted(comp_keys))
    c._ukey = key
    return key


# ---------------------------------------------------------------------------
# shared table helpers

def _tables(c):
    return (
        dict(c.point_color),
        dict(c.strand_color),
        dict(c.strand_from),
        dict(c.strand_to),
        {p: list(v) for p, v in c.in_slots.items()},
        {p: list(v) for p, v in c.out_slots.items()},
    )


def _subdivide(tabs, nxt, strand):
    """Insert a fresh base-point-shaped point in the middle of `strand`.

    The original strand keeps its origin and now ends at the new point; a new
    strand continues to the original target in the same in-slot.
    """
    pc, sc, sf, st, ins, outs = tabs
    b = nxt[0]
    nxt[0] += 1
    color = sc[strand]
    pc[b] = color
    target = st[strand]
    n = nxt[0]
    nxt[0] += 1
    sc[n] = color
    sf[n] = b
    st[n] = target
    slots = ins[target]
    slots[slots.index(strand)] = n
    st[strand] = b
    ins[b] = [strand]
    outs[b] = [n]
    return b


def _splice_out(tabs, p):
    """Remove a degree-(1,1) point, fusing its strands (incoming id survives)."""
    pc, sc, sf, st, ins, outs = tabs
    s_in = ins[p][0]
    s_out = outs[p][0]
    assert s_in != s_out, "cannot splice a point on a one-strand loop"
    target = st[s_out]
    st[s_in] = target
    slots = ins[target]
    slots[slots.index(s_out)] = s_in
    del pc[p], ins[p], outs[p]
    del sc[s_out], sf[s_out], st[s_out]


def _fresh_counter(c) -> list:
    return [1 + max([*c.point_color, *c.strand_color], default=0)]


# ---------------------------------------------------------------------------
# similarities

def shift_directions(c: ClosedDiagram, index: int) -> list:
    """Expanding shift directions available at a base point: "down", "up" or both."""
    b = c.base_line[index]
    dirs = []
    v = c.strand_to[c.out_slots[b][0]]
    if v not in c.base_set and len(c.out_slots[v]) >= 2:
        dirs.append("down")
    u = c.strand_from[c.in_slots[b][0]]
    if u not in c.base_set and len(c.in_slots[u]) >= 2:
        dirs.append("up")
    return dirs


def shift_expand(c: ClosedDiagram, index: int, direction=None):
    """Move the split below (or merge above) base point `index` through the line.

    The base point is replaced by one base point per child strand, inserted
    contiguously at its position in edge order.
    """
    avail = shift_directions(c, index)
    if direction is None:
        if len(avail) != 1:
            raise PreconditionError(
                f"base point {index}: directions {avail or 'none'}; specify one"
            )
        direction = avail[0]
    if direction not in avail:
        raise PreconditionError(f"base point {index}: no movable point {direction}")
    b = c.base_line[index]
    tabs = _tables(c)
    nxt = _fresh_counter(c)
    if direction == "down":
        v = c.strand_to[c.out_slots[b][0]]
        new_points = [_subdivide(tabs, nxt, s) for s in c.out_slots[v]]
    else:
        u = c.strand_from[c.in_slots[b][0]]
        new_points = [_subdivide(tabs, nxt, s) for s in c.in_slots[u]]
    _splice_out(tabs, b)
    base = list(c.base_line)
    base[index : index + 1] = new_points
    new = ClosedDiagram(*tabs, base)
    move = Move(
        "shift-expand",
        (index, direction),
        c.base_colors(),
        new.base_colors(),
        conj=(index, tuple(new.point_color[p] for p in new_points)),
    )
    return new, move


def shift_reduce(c: ClosedDiagram, positions, direction=None):
    """Consolidate consecutive base points through the merge below / split above.

    `positions` must be consecutive ascending base-line indices whose points
    are, in this order, exactly the slot-order predecessors of one merge
    (direction "down") or successors of one split (direction "up").
    """
    positions = tuple(positions)
    if list(positions) != list(range(positions[0], positions[0] + len(positions))):
        raise PreconditionError("positions must be consecutive ascending")
    points = [c.base_line[i] for i in positions]

    down_ok = False
    w = c.strand_to[c.out_slots[points[0]][0]]
    if w not in c.base_set and len(c.in_slots[w]) == len(points):
        down_ok = all(c.out_slots[points[j]][0] == c.in_slots[w][j] for j in range(len(points)))
    up_ok = False
    v = c.strand_from[c.in_slots[points[0]][0]]
    if v not in c.base_set and len(c.out_slots[v]) == len(points):
        up_ok = all(c.in_slots[points[j]][0] == c.out_slots[v][j] for j in range(len(points)))
    if direction is None:
        direction = "down" if down_ok else ("up" if up_ok else None)
    if direction == "down" and not down_ok or direction == "up" and not up_ok or direction is None:
        raise PreconditionError("points are not the full ordered boundary of one split/merge")

    tabs = _tables(c)
    nxt = _fresh_counter(c)
    kids = tuple(c.point_color[p] for p in points)
    for p in points:
        _splice_out(tabs, p)
    pc, sc, sf, st, ins, outs = tabs
    if direction == "down":
        nb = _subdivide(tabs, nxt, outs[w][0])
    else:
        nb = _subdivide(tabs, nxt, ins[v][0])
    base = [p for p in c.base_line if p not in set(points)]
    base.insert(positions[0], nb)
    new = ClosedDiagram(*tabs, base)
    move = Move(
        "shift-reduce",
        (positions, direction),
        c.base_colors(),
        new.base_colors(),
        conj=(positions[0], kids),
    )
    return new, move


def permute_base(c: ClosedDiagram, perm):
    """Reorder the base line: new position j holds the old base point perm[j]."""
    perm = tuple(perm)
    if sorted(perm) != list(range(len(c.base_line))):
        raise PreconditionError("not a permutation of base positions")
    base = [c.base_line[j] for j in perm]
    new = ClosedDiagram(
        c.point_color, c.strand_color, c.strand_from, c.strand_to, c.in_slots, c.out_slots, base
    )
    move = Move("permute", (perm,), c.base_colors(), new.base_colors(), conj=(perm,))
    return new, move


# ---------------------------------------------------------------------------
# reductions

def reduce_closed_step(c: ClosedDiagram, rng=None):
    """Perform one type 0/1/2 reduction if any redex avoids the base line."""
    redexes = find_redexes(c, skip=c.base_set)
    if not redexes:
        return None
    if rng is None:
        order = _bidirectional_order(c, c.base_line)
        redexes.sort(key=lambda r: (r[0], order[r[1]]))
        chosen = redexes[0]
    else:
        chosen = redexes[rng.randrange(len(redexes))]
    tabs = apply_redex(c, chosen)
    new = ClosedDiagram(*tabs, c.base_line)
    move = Move("reduce", (chosen[0], chosen[2]), c.base_colors(), new.base_colors())
    return new, move


def _loop_points(c: ClosedDiagram, start_point) -> list:
    """Follow out-strands from a base point; the cycle visited, or None."""
    cycle = [start_point]
    p = start_point
    while True:
        p = c.strand_to[c.out_slots[p][0]]
        if p == start_point:
            return cycle
        if p not in c.base_set:
            return None
        cycle.append(p)


def type3_reduce(c: ClosedDiagram, g: ShiftGraph, start: int, d: int, k: int, vertex=None):
    """Collapse d interleaved loops of winding k into one loop of winding k.

    Base positions start..start+k*d-1 must hold, in this order, the points of
    d loops: loop j visits positions start+j, start+j+d, ... and the loop
    colors v_1..v_d must be the ordered child colors of a common vertex.  The
    replacement is a single loop of that vertex's color with k base points.
    """
    n = k * d
    if not (0 <= start and start + n <= len(c.base_line)):
        raise PreconditionError("block out of range")
    block = [c.base_line[start + t] for t in range(n)]
    for j in range(d):
        for t in range(k):
            a = block[j + t * d]
            nxt = block[j + ((t + 1) % k) * d]
            if c.strand_to[c.out_slots[a][0]] != nxt:
                raise PreconditionError("positions do not interleave into loops")
    kids = tuple(c.point_color[b] for b in block[:d])
    candidates = [v for v in g.vertices if g.child_colors(v) == kids]
    if vertex is None:
        if not candidates:
            raise PreconditionError(f"no vertex has ordered children {kids}")
        vertex = candidates[0]
    elif vertex not in candidates:
        raise PreconditionError(f"vertex {vertex} does not have ordered children {kids}")

    tabs = _tables(c)
    pc, sc, sf, st, ins, outs = tabs
    for b in block:
        s = outs[b][0]
        del sc[s], sf[s], st[s]
        del pc[b], ins[b], outs[b]
    nxt = _fresh_counter(c)
    new_points = []
    for _ in range(k):
        p = nxt[0]
        nxt[0] += 1
        pc[p] = vertex
        ins[p] = []
        outs[p] = []
        new_points.append(p)
    for t in range(k):
        s = nxt[0]
        nxt[0] += 1
        sc[s] = vertex
        sf[s] = new_points[t]
        st[s] = new_points[(t + 1) % k]
        outs[new_points[t]].append(s)
        ins[new_points[(t + 1) % k]].append(s)
    base = list(c.base_line)
    base[start : start + n] = new_points
    new = ClosedDiagram(*tabs, base)
    move = Move(
        "type3",
        (start, d, k, vertex),
        c.base_colors(),
        new.base_colors(),
        conj=(start, kids, k),
    )
    return new, move


def type3_expand(c: ClosedDiagram, g: ShiftGraph, start: int, k: int, vertex):
    """Inverse of :func:`type3_reduce` at a consecutive loop block.

    Base positions start..start+k-1 must hold one `vertex`-colored loop of
    winding k, visited in this order; it becomes d interleaved child loops.
    """
    block = [c.base_line[start + t] for t in range(k)]
    for t in range(k):
        if c.strand_to[c.out_slots[block[t]][0]] != block[(t + 1) % k]:
            raise PreconditionError("positions do not form one loop in order")
    if c.point_color[block[0]] != vertex:
        raise PreconditionError("loop color differs from vertex")
    kids = g.child_colors(vertex)
    d = len(kids)

    tabs = _tables(c)
    pc, sc, sf, st, ins, outs = tabs
    for b in block:
        s = outs[b][0]
        del sc[s], sf[s], st[s]
        del pc[b], ins[b], outs[b]
    nxt = _fresh_counter(c)
    new_points = []
    for _ in range(k * d):
        p = nxt[0]
        nxt[0] += 1
        ins[p] = []
        outs[p] = []
        new_points.append(p)
    for j in range(d):
        for t in range(k):
            pc[new_points[j + t * d]] = kids[j]
    for j in range(d):
        for t in range(k):
            a = new_points[j + t * d]
            b = new_points[j + ((t + 1) % k) * d]
            s = nxt[0]
            nxt[0] += 1
            sc[s] = kids[j]
            sf[s] = a
            st[s] = b
            outs[a].append(s)
            ins[b].append(s)
    base = list(c.base_line)
    base[start : start + k] = new_points
    new = ClosedDiagram(*tabs, base)
    move = Move(
        "type3-expand",
        (start, k, vertex),
        c.base_colors(),
        new.base_colors(),
        conj=(start, kids, k),
    )
    return new, move


# ---------------------------------------------------------------------------
# semi-reduction

def _consolidations(c: ClosedDiagram):
    """Consolidation opportunities: (mode, point, base points in slot order).

    A merge all of whose immediate predecessors are base points (or a split
    all of whose immediate successors are) can absorb them after a base
    permutation brings the points together in slot order.
    """
    out = []
    for p in sorted(c.point_color):
        if p in c.base_set:
            continue
        ind, outd = len(c.in_slots[p]), len(c.out_slots[p])
        if ind >= 2 and outd == 1:
            preds = [c.strand_from[s] for s in c.in_slots[p]]
            if all(q in c.base_set for q in preds):
                out.append(("down", p, preds))
        if outd >= 2 and ind == 1:
            succs = [c.strand_to[s] for s in c.out_slots[p]]
            if all(q in c.base_set for q in succs):
                out.append(("up", p, succs))
    return out


def _consolidate(c: ClosedDiagram, mode, slot_points):
    """Permute the given base points together (if needed), then shift-reduce them."""
    moves = []
    pos = [c.base_line.index(p) for p in slot_points]
    first = min(pos)
    want = list(range(first, first + len(pos)))
    if pos != want:
        rest = [p for p in c.base_line if p not in set(slot_points)]
        new_line = rest[:first] + list(slot_points) + rest[first:]
        perm = tuple(c.base_line.index(p) for p in new_line)
        c, mv = permute_base(c, perm)
        moves.append(mv)
    c, mv = shift_reduce(c, range(first, first + len(slot_points)), mode)
    moves.append(mv)
    return c, moves


def semi_reduce(c: ClosedDiagram, budget: int = 2, rng=None, probe: bool = True, max_states: int = 200000):
    """Apply type 0/1/2 reductions, unlocking them by similarity search.

    Between reductions, a 0/1-cost breadth-first search explores reducing
    shifts (with their enabling permutations) freely and expanding shifts up
    to `budget` per reduction attempt.  Each reduction strictly decreases the
    number of non-base points, so this terminates.  With `probe`, one extra
    search at budget+1 runs at the end and raises LimitExceeded if it finds a
    redex the configured budget missed.  `max_states` bounds each search's
    state set; exceeding it raises rather than churning.

    Returns (semi-reduced diagram, trace of moves performed).
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    trace = []
    while True:
        found = _find_unlockable(c, budget, rng, max_states)
        if found is None:
            break
        c, moves = found
        trace.extend(moves)
    if probe and _find_unlockable(c, budget + 1, rng, max_states) is not None:
        raise LimitExceeded(
            "similarity-budget",
            f"a redex is reachable at depth {budget + 1} but not {budget}; raise --budget",
        )
    return c, trace


def _find_unlockable(c: ClosedDiagram, budget: int, rng=None, max_states: int = 200000):
    """0/1-cost BFS over similarity moves for a state admitting a reduction."""
    start_key = unordered_key(c)
    queue = deque([(c, [], 0)])
    seen = {start_key: 0}
    while queue:
        state, path, cost = queue.popleft()
        step = reduce_closed_step(state, rng)
        if step is not None:
            new, mv = step
            return new, path + [mv]
        nbrs = []
        for mode, _, slot_points in _consolidations(state):
            nbrs.append((0, ("cons", mode, slot_points)))
        if cost < budget:
            for i in range(len(state.base_line)):
                for direction in shift_directions(state, i):
                    nbrs.append((1, ("exp", i, direction)))
        if rng is not None:
            rng.shuffle(nbrs)
            nbrs.sort(key=lambda t: t[0])
        for extra, action in nbrs:
            if action[0] == "cons":
                nstate, mvs = _consolidate(state, action[1], action[2])
            else:
                nstate, mv = shift_expand(state, action[1], action[2])
                mvs = [mv]
            ncost = cost + extra
            key = unordered_key(nstate)
            if key in seen and seen[key] <= ncost:
                continue
            seen[key] = ncost
            if len(seen) > max_states:
                raise LimitExceeded(
                    "similarity-states", f"more than {max_states} similarity states explored"
                )
            entry = (nstate, path + mvs, ncost)
            if extra == 0:
                queue.appendleft(entry)
            else:
                queue.append(entry)
    return None


# ---------------------------------------------------------------------------
# parts

def decompose_parts(c: ClosedDiagram):
    """Split a semi-reduced diagram into its split-merge part and loop part.

    Components made of base points only are summarized as a multiset
    {(color, winding): count}; the remaining components form a closed diagram
    whose base line keeps the original order.
    """
    loops = {}
    keep = set()
    for comp in components(c):
        if all(p in c.base_set for p in comp):
            color = c.point_color[comp[0]]
            key = (color, len(comp))
            loops[key] = loops.get(key, 0) + 1
        else:
            keep.update(comp)
    part = ClosedDiagram(
        {p: c.point_color[p] for p in keep},
        {s: c.strand_color[s] for s in c.strand_color if c.strand_from[s] in keep},
        {s: p for s, p in c.strand_from.items() if p in keep},
        {s: p for s, p in c.strand_to.items() if p in keep},
        {p: c.in_slots[p] for p in keep},
        {p: c.out_slots[p] for p in keep},
        [b for b in c.base_line if b in keep],
    )
    return part, loops


# ---------------------------------------------------------------------------
# replay

def replay(c: ClosedDiagram, moves, g: ShiftGraph = None):
    """Re-apply a recorded move sequence; returns the final diagram."""
    for mv in moves:
        if mv.kind == "shift-expand":
            c, _ = shift_expand(c, *mv.data)
        elif mv.kind == "shift-reduce":
            c, _ = shift_reduce(c, *mv.data)
        elif mv.kind == "permute":
            c, _ = permute_base(c, *mv.data)
        elif mv.kind == "reduce":
            rtype, payload = mv.data
            tabs = apply_redex(c, (rtype, None, payload))
            c = ClosedDiagram(*tabs, c.base_line)
        elif mv.kind == "type3":
            c, _ = type3_reduce(c, g, *mv.data)
        elif mv.kind == "type3-expand":
            c, _ = type3_expand(c, g, *mv.data)
        else:
            raise ValueError(f"unknown move {mv.kind}")
    return c

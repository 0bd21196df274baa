"""The conjugacy decision procedure and conjugator assembly.

Two group elements are conjugate iff their closed diagrams are equivalent.
Step 1 semi-reduces both closed diagrams.  Step 2 compares split-merge parts
up to similarity: base points are erased into per-strand counts (a cocycle on
the skeleton) and two parts are similar iff some color- and slot-preserving
skeleton isomorphism makes the cocycle difference an integer coboundary,
since base line shifts change the cocycle by exactly +-(point coboundary) and
permutations change nothing.  Step 3 compares loop parts in the loops
semigroup.  Every move carries a conjugating diagram, so a positive verdict
can be upgraded to an explicit conjugator by replaying the moves.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .closed import (
    ClosedDiagram,
    _consolidate,
    _consolidations,
    _loop_points,
    close,
    components,
    conjugator_of,
    closed_key,
    decompose_parts,
    permute_base,
    semi_reduce,
    shift_directions,
    shift_expand,
    type3_expand,
    type3_reduce,
    unordered_key,
)
from .diagrams import StrandDiagram, compose, equal, identity_diagram, invert, reduce
from .errors import SignatureMismatch
from .graphs import ShiftGraph
from .intlinalg import IntMatrix, solve_integer
from .semigroup import bfs_path, decide_equal, max_winding, presentation_from_graph


# ---------------------------------------------------------------------------
# skeletons

@dataclass
class SplitMergeSkeleton:
    """Split-merge part with base points erased into per-strand counts.

    Points and their slot lists come from the underlying closed diagram
    unchanged; a skeleton strand is identified with the first strand of its
    base-point chain, and `cocycle` counts the erased base points.
    """

    point_color: dict
    in_slots: dict
    out_slots: dict
    strand_from: dict
    strand_to: dict
    strand_color: dict
    cocycle: dict

    def points(self):
        return sorted(self.point_color)


def skeleton(part: ClosedDiagram) -> SplitMergeSkeleton:
    pts = [p for p in part.point_color if p not in part.base_set]
    sk = SplitMergeSkeleton({p: part.point_color[p] for p in pts}, {}, {}, {}, {}, {}, {})
    in_acc = {p: [None] * len(part.in_slots[p]) for p in pts}
    for p in pts:
        outs = []
        for s in part.out_slots[p]:
            first = s
            count = 0
            cur = s
            while part.strand_to[cur] in part.base_set:
                count += 1
                cur = part.out_slots[part.strand_to[cur]][0]
            q = part.strand_to[cur]
            islot = part.in_slots[q].index(cur)
            sk.strand_from[first] = p
            sk.strand_to[first] = q
            sk.strand_color[first] = part.strand_color[first]
            sk.cocycle[first] = count
            in_acc[q][islot] = first
            outs.append(first)
        sk.out_slots[p] = tuple(outs)
    for p in pts:
        assert all(s is not None for s in in_acc[p])
        sk.in_slots[p] = tuple(in_acc[p])
    return sk


def _sk_components(sk: SplitMergeSkeleton) -> list:
    seen = set()
    comps = []
    for start in sk.points():
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            p = stack.pop()
            for s in sk.out_slots[p]:
                q = sk.strand_to[s]
                if q not in comp:
                    comp.add(q)
                    stack.append(q)
            for s in sk.in_slots[p]:
                q = sk.strand_from[s]
                if q not in comp:
                    comp.add(q)
                    stack.append(q)
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return comps


def _point_sig(sk, p):
    return (sk.point_color[p], len(sk.in_slots[p]), len(sk.out_slots[p]))


def _component_isos(a: SplitMergeSkeleton, comp_a, b: SplitMergeSkeleton, comp_b):
    """Color-, kind- and slot-preserving isomorphisms comp_a -> comp_b.

    Fixing the image of one anchor point forces the rest along slots, so at
    most |comp_b| candidates are tried, each verified in linear time.
    """
    if len(comp_a) != len(comp_b):
        return
    sigs_a = sorted(_point_sig(a, p) for p in comp_a)
    sigs_b = sorted(_point_sig(b, p) for p in comp_b)
    if sigs_a != sigs_b:
        return
    by_sig = {}
    for p in comp_a:
        by_sig.setdefault(_point_sig(a, p), []).append(p)
    anchor = min(by_sig.values(), key=len)[0]
    for cand in comp_b:
        if _point_sig(b, cand) != _point_sig(a, anchor):
            continue
        phi = {anchor: cand}
        stack = [anchor]
        ok = True
        while stack and ok:
            p = stack.pop()
            for j, s in enumerate(a.out_slots[p]):
                q = a.strand_to[s]
                s2 = b.out_slots[phi[p]][j]
                q2 = b.strand_to[s2]
                if a.in_slots[q].index(s) != b.in_slots[q2].index(s2) or _point_sig(
                    a, q
                ) != _point_sig(b, q2):
                    ok = False
                    break
                if q in phi:
                    if phi[q] != q2:
                        ok = False
                        break
                else:
                    phi[q] = q2
                    stack.append(q)
            for j, s in enumerate(a.in_slots[p]):
                q = a.strand_from[s]
                s2 = b.in_slots[phi[p]][j]
                q2 = b.strand_from[s2]
                if a.out_slots[q].index(s) != b.out_slots[q2].index(s2) or _point_sig(
                    a, q
                ) != _point_sig(b, q2):
                    ok = False
                    break
                if q in phi:
                    if phi[q] != q2:
                        ok = False
                        break
                else:
                    phi[q] = q2
                    stack.append(q)
        if ok and len(phi) == len(comp_a):
            yield phi


def _strand_image(a, b, phi, s):
    p = a.strand_from[s]
    j = a.out_slots[p].index(s)
    return b.out_slots[phi[p]][j]


def _coboundary_solution(a, comp_a, b, phi):
    """Integer x over comp points with (coboundary of x) = cocycle_a - phi*cocycle_b."""
    pts = sorted(comp_a)
    strands = [s for p in pts for s in a.out_slots[p]]
    col = {p: i for i, p in enumerate(pts)}
    rows = []
    rhs = []
    for s in strands:
        row = [0] * len(pts)
        row[col[a.strand_from[s]]] += 1
        row[col[a.strand_to[s]]] -= 1
        rows.append(row)
        rhs.append(a.cocycle[s] - b.cocycle[_strand_image(a, b, phi, s)])
    if not rows:
        return {}
    x = solve_integer(IntMatrix(rows), rhs)
    if x is None:
        return None
    return {p: x[col[p]] for p in pts}


@dataclass
class SkeletonMatch:
    """Witness for step 2: matched components with isomorphism and coboundary."""

    pairs: list  # (comp_a, comp_b, phi, x)


def compare_split_merge(a: SplitMergeSkeleton, b: SplitMergeSkeleton):
    """A similarity witness between two split-merge skeletons, or None.

    Components are matched one to one; a pair is feasible when some
    slot-preserving isomorphism makes the cocycle difference solvable over
    the integers.  Shifts realize exactly these coboundaries and base
    permutations are free, so feasibility of a perfect matching decides
    step 2.
    """
    comps_a = _sk_components(a)
    comps_b = _sk_components(b)
    if len(comps_a) != len(comps_b):
        return None

    feasible = {}

    def pair_witness(i, j):
        if (i, j) not in feasible:
            found = None
            for phi in _component_isos(a, comps_a[i], b, comps_b[j]):
                x = _coboundary_solution(a, comps_a[i], b, phi)
                if x is not None:
                    found = (phi, x)
                    break
            feasible[(i, j)] = found
        return feasible[(i, j)]

    used = [False] * len(comps_b)
    chosen = []

    def assign(i):
        if i == len(comps_a):
            return True
        for j in range(len(comps_b)):
            if used[j]:
                continue
            w = pair_witness(i, j)
            if w is not None:
                used[j] = True
                chosen.append((comps_a[i], comps_b[j], w[0], w[1]))
                if assign(i + 1):
                    return True
                used[j] = False
                chosen.pop()
        return False

    if not assign(0):
        return None
    return SkeletonMatch(list(chosen))


# ---------------------------------------------------------------------------
# the decision procedure

@dataclass
class Analysis:
    closed: ClosedDiagram
    semi: ClosedDiagram
    trace: list
    part: ClosedDiagram
    loops: dict


def analyze(f: StrandDiagram, budget: int = 2, rng=None, probe: bool = True) -> Analysis:
    c = close(f)
    semi, trace = semi_reduce(c, budget=budget, rng=rng, probe=probe)
    part, loops = decompose_parts(semi)
    return Analysis(c, semi, trace, part, loops)


@dataclass
class ConjugacyResult:
    conjugate: bool
    step_failed: object  # None, 0 (signatures), 2 or 3
    reason: str
    semi_reduced_sizes: tuple = ()
    loop_multisets: tuple = ()
    witness_available: bool = False
    analyses: tuple = field(default=None, repr=False)
    match: object = field(default=None, repr=False)

    def record(self) -> dict:
        """Machine-readable verdict, schema version 1."""
        return {
            "schema_version": 1,
            "verdict": "conjugate" if self.conjugate else "not-conjugate",
            "step_failed": self.step_failed,
            "reason": self.reason,
            "semi_reduced_sizes": list(self.semi_reduced_sizes),
            "loop_multisets": [
                sorted([c, n, count] for (c, n), count in side.items())
                for side in self.loop_multisets
            ],
            "witness_available": self.witness_available,
        }


def is_conjugate(
    f: StrandDiagram,
    g: StrandDiagram,
    graph: ShiftGraph,
    budget: int = 2,
    rng=None,
    probe: bool = True,
) -> ConjugacyResult:
    """Decide conjugacy of two group elements over the same graph.

    Semi-reduce both closed diagrams, compare split-merge parts through the
    cocycle cohomology check, compare loop parts in the loops semigroup.
    """
    other = g
    if f.domain() != f.range() or other.domain() != other.range():
        raise SignatureMismatch("both inputs must have equal domain and range")
    if f.domain() != other.domain():
        return ConjugacyResult(
            False, 0, "domain/range signatures differ; no conjugator can exist"
        )
    a = analyze(f, budget=budget, rng=rng, probe=probe)
    b = analyze(other, budget=budget, rng=rng, probe=probe)
    sizes = (
        (a.semi.splits_merges_degens(), len(a.semi.base_line)),
        (b.semi.splits_merges_degens(), len(b.semi.base_line)),
    )
    loopsets = (dict(a.loops), dict(b.loops))
    match = compare_split_merge(skeleton(a.part), skeleton(b.part))
    if match is None:
        return ConjugacyResult(
            False, 2, "split-merge parts are not similar", sizes, loopsets, False, (a, b), None
        )
    if bool(a.loops) != bool(b.loops):
        return ConjugacyResult(
            False, 3, "one loop part is empty and the other is not", sizes, loopsets, False, (a, b), match
        )
    if a.loops:
        n = max(max_winding(a.loops), max_winding(b.loops))
        pres = presentation_from_graph(graph, n)
        if not decide_equal(pres.vector(a.loops), pres.vector(b.loops), pres):
            return ConjugacyResult(
                False, 3, "loop parts differ in the loops semigroup", sizes, loopsets, False, (a, b), match
            )
    return ConjugacyResult(True, None, "equivalent closed diagrams", sizes, loopsets, False, (a, b), match)


# ---------------------------------------------------------------------------
# brute-force similarity search (oracle for step 2)

def _similarity_neighbors(c: ClosedDiagram):
    for mode, _, slot_points in _consolidations(c):
        yield _consolidate(c, mode, slot_points)[0]
    for i in range(len(c.base_line)):
        for direction in shift_directions(c, i):
            yield shift_expand(c, i, direction)[0]


def similar_by_search(a: ClosedDiagram, b: ClosedDiagram, depth: int = 6) -> bool:
    """Bounded bidirectional search over similarity moves, base order free.

    Sound both ways on success; a False is only a statement about the depth.
    """
    keys = {0: {unordered_key(a)}, 1: {unordered_key(b)}}
    if keys[0] & keys[1]:
        return True
    frontiers = {0: [a], 1: [b]}
    for step in range(depth):
        side = 0 if len(keys[0]) <= len(keys[1]) else 1
        nxt = []
        for state in frontiers[side]:
            for nb in _similarity_neighbors(state):
                k = unordered_key(nb)
                if k in keys[1 - side]:
                    return True
                if k not in keys[side]:
                    keys[side].add(k)
                    nxt.append(nb)
        frontiers[side] = nxt
        if not nxt:
            break
    return False


# ---------------------------------------------------------------------------
# witness assembly

def _fold_conjugators(moves, base_colors) -> StrandDiagram:
    h = identity_diagram(base_colors)
    for mv in moves:
        h = reduce(compose(conjugator_of(mv), h))
    return h


def _chain_counts(c: ClosedDiagram, pts) -> dict:
    """(point, out-slot) -> number of base points on that chain."""
    counts = {}
    for p in pts:
        for j, s in enumerate(c.out_slots[p]):
            count = 0
            cur = s
            while c.strand_to[cur] in c.base_set:
                count += 1
                cur = c.out_slots[c.strand_to[cur]][0]
            counts[(p, j)] = count
    return counts


def _plan_cocycle_moves(c: ClosedDiagram, pts, target: dict, state_cap: int = 50000):
    """Shift plan making every chain count hit `target`, or None.

    Breadth-first search in count space; each move is a legal shift through
    one split or merge, so the plan is always realizable move for move.
    """
    pts = sorted(pts)
    slots = sorted(target)
    start = tuple(_chain_counts(c, pts)[sl] for sl in slots)
    goal = tuple(target[sl] for sl in slots)
    if start == goal:
        return []
    idx = {sl: i for i, sl in enumerate(slots)}
    in_chain = {}
    out_chains = {}
    for p in pts:
        ins = []
        for q in pts:
            for j, s in enumerate(c.out_slots[q]):
                cur = s
                while c.strand_to[cur] in c.base_set:
                    cur = c.out_slots[c.strand_to[cur]][0]
                if c.strand_to[cur] == p:
                    ins.append((q, j))
        in_chain[p] = ins  # chains ending at p, as (origin, slot) pairs
        out_chains[p] = [(p, j) for j in range(len(c.out_slots[p]))]

    def moves_from(vec):
        for p in pts:
            is_split = len(c.out_slots[p]) >= 2
            ins = [idx[sl] for sl in in_chain[p] if sl in idx]
            outs = [idx[sl] for sl in out_chains[p]]
            if is_split:
                if all(vec[i] >= 1 for i in ins) and ins:
                    yield (p, "expand"), _apply(vec, ins, -1, outs, +1)
                if all(vec[i] >= 1 for i in outs):
                    yield (p, "reduce"), _apply(vec, outs, -1, ins, +1)
            else:
                if all(vec[i] >= 1 for i in outs) and outs:
                    yield (p, "expand"), _apply(vec, outs, -1, ins, +1)
                if all(vec[i] >= 1 for i in ins):
                    yield (p, "reduce"), _apply(vec, ins, -1, outs, +1)

    bound = max(sum(start), sum(goal)) + 2 * len(pts) + 2
    parents = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for vec in frontier:
            for action, new in moves_from(vec):
                if sum(new) > bound or new in parents:
                    continue
                parents[new] = (vec, action)
                if new == goal:
                    plan = []
                    cur = new
                    while parents[cur] is not None:
                        prev, act = parents[cur]
                        plan.append(act)
                        cur = prev
                    plan.reverse()
                    return plan
                if len(parents) > state_cap:
                    return None
                nxt.append(new)
        frontier = nxt
    return None


def _apply(vec, dec, dd, inc, di):
    out = list(vec)
    for i in dec:
        out[i] += dd
    for i in inc:
        out[i] += di
    return tuple(out)


def _execute_cocycle_plan(c: ClosedDiagram, plan):
    moves = []
    for p, action in plan:
        is_split = len(c.out_slots[p]) >= 2
        if action == "expand":
            if is_split:
                b = c.strand_from[c.in_slots[p][0]]
                c, mv = shift_expand(c, c.base_line.index(b), "down")
            else:
                b = c.strand_to[c.out_slots[p][0]]
                c, mv = shift_expand(c, c.base_line.index(b), "up")
            moves.append(mv)
        else:
            if is_split:
                succs = [c.strand_to[s] for s in c.out_slots[p]]
                c, mvs = _consolidate(c, "up", succs)
            else:
                preds = [c.strand_from[s] for s in c.in_slots[p]]
                c, mvs = _consolidate(c, "down", preds)
            moves.extend(mvs)
    return c, moves


def _loop_components(c: ClosedDiagram):
    out = []
    for comp in components(c):
        if all(p in c.base_set for p in comp):
            pts = _loop_points(c, comp[0])
            out.append((c.point_color[comp[0]], len(comp), pts))
    return out


def _bring_to_front(c: ClosedDiagram, block):
    """Permute the base line so `block` occupies the leading positions."""
    rest = [p for p in c.base_line if p not in set(block)]
    new_line = list(block) + rest
    if list(c.base_line) == new_line:
        return c, []
    perm = tuple(c.base_line.index(p) for p in new_line)
    c, mv = permute_base(c, perm)
    return c, [mv]


def _realize_semigroup_path(c: ClosedDiagram, graph: ShiftGraph, pres, path):
    moves = []
    for ridx, sign in path:
        vtx, k = pres.relation_info[ridx]
        kids = graph.child_colors(vtx)
        d = len(kids)
        if sign > 0:
            chosen = []
            taken = set()
            for color in kids:
                pick = next(
                    comp
                    for comp in _loop_components(c)
                    if comp[0] == color and comp[1] == k and id_key(comp) not in taken
                )
                taken.add(id_key(pick))
                chosen.append(pick)
            block = []
            for t in range(k):
                for comp in chosen:
                    block.append(comp[2][t])
            c, mvs = _bring_to_front(c, block)
            moves.extend(mvs)
            c, mv = type3_reduce(c, graph, 0, d, k, vertex=vtx)
            moves.append(mv)
        else:
            comp = next(
                comp for comp in _loop_components(c) if comp[0] == vtx and comp[1] == k
            )
            c, mvs = _bring_to_front(c, comp[2])
            moves.extend(mvs)
            c, mv = type3_expand(c, graph, 0, k, vtx)
            moves.append(mv)
    return c, moves


def id_key(comp):
    return tuple(comp[2])


def _alignment_permutation(c: ClosedDiagram, target: ClosedDiagram, match: SkeletonMatch):
    """Point bijection c -> target extending the skeleton match, as a base permutation.

    Chains carry equal base counts after realization, loops are matched by
    (color, winding); returns the permutation making the base orders agree,
    or None when the loop inventories cannot be aligned.
    """
    psi = {}
    for comp_a, comp_b, phi, _ in match.pairs:
        for p in comp_a:
            psi[p] = phi[p]
        for p in comp_a:
            for j, s in enumerate(c.out_slots[p]):
                chain_a = []
                cur = s
                while c.strand_to[cur] in c.base_set:
                    chain_a.append(c.strand_to[cur])
                    cur = c.out_slots[c.strand_to[cur]][0]
                chain_b = []
                cur = target.out_slots[phi[p]][j]
                while target.strand_to[cur] in target.base_set:
                    chain_b.append(target.strand_to[cur])
                    cur = target.out_slots[target.strand_to[cur]][0]
                if len(chain_a) != len(chain_b):
                    return None
                for pa, pb in zip(chain_a, chain_b):
                    psi[pa] = pb
    loops_a = sorted(_loop_components(c), key=lambda t: (t[0], t[1], min(t[2])))
    loops_b = sorted(_loop_components(target), key=lambda t: (t[0], t[1], min(t[2])))
    if [(t[0], t[1]) for t in loops_a] != [(t[0], t[1]) for t in loops_b]:
        return None
    for (ca, ka, pa), (cb, kb, pb) in zip(loops_a, loops_b):
        for x, y in zip(pa, pb):
            psi[x] = y
    inv = {v: k for k, v in psi.items()}
    new_line = [inv[bp] for bp in target.base_line]
    return tuple(c.base_line.index(p) for p in new_line)


def conjugator_witness(
    f: StrandDiagram,
    g: StrandDiagram,
    result: ConjugacyResult,
    graph: ShiftGraph,
    semigroup_cap: int = None,
) -> StrandDiagram | None:
    """An explicit h with h g h^-1 = f, or None when realization fails.

    Best-effort: requires the step 3 equality to be witnessed by a bounded
    relation path and the step 2 coboundary to be realizable by legal shifts;
    the returned diagram is verified by diagram algebra before returning.
    """
    if not (result.conjugate and result.analyses):
        return None
    a, b = result.analyses
    moves_a = list(a.trace)
    cur = a.semi

    sk_b = skeleton(b.part)
    for comp_a, comp_b, phi, _ in result.match.pairs:
        target = {}
        for p in comp_a:
            for j in range(len(cur.out_slots[p])):
                target[(p, j)] = sk_b.cocycle[sk_b.out_slots[phi[p]][j]]
        plan = _plan_cocycle_moves(cur, comp_a, target)
        if plan is None:
            return None
        cur, mvs = _execute_cocycle_plan(cur, plan)
        moves_a.extend(mvs)

    if a.loops or b.loops:
        n = max(max_winding(a.loops), max_winding(b.loops))
        pres = presentation_from_graph(graph, n)
        va, vb = pres.vector(a.loops), pres.vector(b.loops)
        need = max(sum(va), sum(vb))
        cap = need + 8 if semigroup_cap is None else max(semigroup_cap, need)
        path = bfs_path(va, vb, pres, cap)
        if path is None:
            return None
        cur, mvs = _realize_semigroup_path(cur, graph, pres, path)
        moves_a.extend(mvs)

    perm = _alignment_permutation(cur, b.semi, result.match)
    if perm is None:
        return None
    if list(perm) != list(range(len(perm))):
        cur, mv = permute_base(cur, perm)
        moves_a.append(mv)
    if closed_key(cur) != closed_key(b.semi):
        return None

    h_a = _fold_conjugators(moves_a, f.domain())
    h_b = _fold_conjugators(b.trace, g.domain())
    h = reduce(compose(invert(h_a), h_b))
    if not equal(compose(compose(h, g), invert(h)), f):
        return None
    return h

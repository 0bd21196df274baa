"""Parsing and printing of the graph, element and loop text formats.

Graph files:

    graph
      vertex R; vertex B; vertex G
      edge 0: R -> R; edge 1: B -> G; edge 2: B -> R; edge 3: G -> G; edge 4: G -> B
      order R: [0]; order B: [1, 2]; order G: [3, 4]
    base [B, G]

Element files:

    element
      domain [B.1, B.2, G.3, G.4]
      range  [G.3, G.4.2, G.4.1, B]

Whitespace (including newlines) is insignificant and semicolons are optional
statement separators.  A path word is `root` or `root.e1.e2...`; when the
base repeats a vertex, its k-th occurrence is addressed as `Name#k`.
Loop multisets for the semigroup commands are sums like `L(R,1)+2*L(B,2)`.
"""

from __future__ import annotations

from .errors import ParseError
from .forest import ForestPair, validate_forest_pair
from .graphs import PathWord, ShiftGraph

_PUNCT = (";", ":", ",", "[", "]", "(", ")", "+", "*", "#", ".", "->")


class _Tokens:
    def __init__(self, text: str):
        self.toks = []
        line, col = 1, 1
        i = 0
        while i < len(text):
            ch = text[i]
            if ch == "\n":
                line += 1
                col = 1
                i += 1
                continue
            if ch.isspace():
                col += 1
                i += 1
                continue
            if text.startswith("->", i):
                self.toks.append(("->", line, col))
                i += 2
                col += 2
                continue
            if ch in ";:,[]()+*#.":
                self.toks.append((ch, line, col))
                i += 1
                col += 1
                continue
            if ch.isalnum() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append((text[i:j], line, col))
                col += j - i
                i = j
                continue
            raise ParseError(f"unexpected character {ch!r}", line, col)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def where(self):
        if self.pos < len(self.toks):
            _, line, col = self.toks[self.pos]
            return line, col
        if self.toks:
            _, line, col = self.toks[-1]
            return line, col
        return 1, 1

    def next(self, expect=None):
        if self.pos >= len(self.toks):
            line, col = self.where()
            raise ParseError(f"unexpected end of input (expected {expect or 'a token'})", line, col)
        tok, line, col = self.toks[self.pos]
        if expect is not None and tok != expect:
            raise ParseError(f"expected {expect!r}, found {tok!r}", line, col)
        self.pos += 1
        return tok

    def error(self, message):
        line, col = self.where()
        raise ParseError(message, line, col)

    def skip_separators(self):
        while self.peek() == ";":
            self.next()


def _name(ts: _Tokens, what: str) -> str:
    tok = ts.peek()
    if tok is None or tok in _PUNCT:
        ts.error(f"expected {what}")
    return ts.next()


def parse_graph(text: str):
    """Parse a graph file into (ShiftGraph, base tuple)."""
    ts = _Tokens(text)
    ts.next("graph")
    vertices = []
    edges = {}
    order = {}
    base = None
    ts.skip_separators()
    while ts.peek() is not None:
        tok = ts.peek()
        if tok == "vertex":
            ts.next()
            vertices.append(_name(ts, "a vertex name"))
        elif tok == "edge":
            ts.next()
            eid = _name(ts, "an edge id")
            ts.next(":")
            a = _name(ts, "a vertex name")
            ts.next("->")
            b = _name(ts, "a vertex name")
            if eid in edges:
                ts.error(f"edge {eid} defined twice")
            edges[eid] = (a, b)
        elif tok == "order":
            ts.next()
            v = _name(ts, "a vertex name")
            ts.next(":")
            ts.next("[")
            ids = []
            while ts.peek() != "]":
                ids.append(_name(ts, "an edge id"))
                if ts.peek() == ",":
                    ts.next()
            ts.next("]")
            if v in order:
                ts.error(f"order for {v} given twice")
            order[v] = tuple(ids)
        elif tok == "base":
            ts.next()
            ts.next("[")
            entries = []
            while ts.peek() != "]":
                entries.append(_name(ts, "a vertex name"))
                if ts.peek() == ",":
                    ts.next()
            ts.next("]")
            base = tuple(entries)
        else:
            ts.error(f"unknown statement {tok!r}")
        ts.skip_separators()
    line, col = ts.where()
    if base is None:
        raise ParseError("missing base [...] statement", line, col)
    for v in vertices:
        if v not in order:
            raise ParseError(f"missing mandatory order line for vertex {v}", line, col)
    for y in base:
        if y not in vertices:
            raise ParseError(f"base entry {y} is not a vertex", line, col)
    try:
        g = ShiftGraph(vertices, edges, order)
    except ValueError as exc:
        raise ParseError(str(exc), line, col) from exc
    return g, base


def _parse_word(ts: _Tokens, g: ShiftGraph, base) -> PathWord:
    name = _name(ts, "a root vertex name")
    occurrence = None
    if ts.peek() == "#":
        ts.next()
        occurrence = int(_name(ts, "an occurrence number"))
    positions = [i for i, y in enumerate(base) if y == name]
    if not positions:
        ts.error(f"{name} is not an entry of the base {list(base)}")
    if occurrence is None:
        if len(positions) > 1:
            ts.error(f"base repeats {name}; disambiguate with {name}#k")
        root = positions[0]
    else:
        if not (1 <= occurrence <= len(positions)):
            ts.error(f"{name}#{occurrence}: only {len(positions)} occurrence(s)")
        root = positions[occurrence - 1]
    edges = []
    at = name
    while ts.peek() == ".":
        ts.next()
        e = _name(ts, "an edge id")
        if e not in g.edges or g.init(e) != at:
            ts.error(f"edge {e} does not continue a path at {at}")
        edges.append(e)
        at = g.term(e)
    return PathWord(root, tuple(edges))


def _parse_word_list(ts: _Tokens, g, base):
    ts.next("[")
    words = []
    while ts.peek() != "]":
        words.append(_parse_word(ts, g, base))
        if ts.peek() == ",":
            ts.next()
    ts.next("]")
    return tuple(words)


def parse_element(text: str, g: ShiftGraph, base) -> ForestPair:
    """Parse an element file against a graph and base; validates the pair."""
    ts = _Tokens(text)
    ts.next("element")
    ts.skip_separators()
    ts.next("domain")
    domain = _parse_word_list(ts, g, base)
    ts.skip_separators()
    ts.next("range")
    rng = _parse_word_list(ts, g, base)
    ts.skip_separators()
    if ts.peek() is not None:
        ts.error("trailing input after element")
    fp = ForestPair(domain, rng, tuple(base))
    line, col = ts.where()
    try:
        validate_forest_pair(g, fp)
    except ValueError as exc:
        raise ParseError(str(exc), line, col) from exc
    return fp


def parse_loops(text: str, vertices) -> dict:
    """Parse a loop multiset `L(c,n)` sum into {(color, winding): count}."""
    ts = _Tokens(text)
    loops = {}
    while True:
        count = 1
        tok = _name(ts, "L or a multiplier")
        if tok.isdigit():
            count = int(tok)
            ts.next("*")
            tok = ts.next("L")
        if tok != "L":
            ts.error(f"expected L(color,winding), found {tok!r}")
        ts.next("(")
        color = _name(ts, "a color")
        if color not in vertices:
            ts.error(f"{color} is not a vertex")
        ts.next(",")
        winding = _name(ts, "a winding number")
        if not winding.isdigit() or int(winding) < 1:
            ts.error("winding must be a positive integer")
        ts.next(")")
        key = (color, int(winding))
        loops[key] = loops.get(key, 0) + count
        if ts.peek() is None:
            return loops
        ts.next("+")


# ---------------------------------------------------------------------------
# printing

def format_graph(g: ShiftGraph, base) -> str:
    lines = ["graph"]
    lines.append("  " + "; ".join(f"vertex {v}" for v in g.vertices))
    if g.edges:
        lines.append(
            "  " + "; ".join(f"edge {e}: {a} -> {b}" for e, (a, b) in sorted(g.edges.items()))
        )
    lines.append(
        "  " + "; ".join(f"order {v}: [{', '.join(g.out_order[v])}]" for v in g.vertices)
    )
    lines.append(f"base [{', '.join(base)}]")
    return "\n".join(lines) + "\n"


def format_word(w: PathWord, base) -> str:
    name = base[w.root]
    positions = [i for i, y in enumerate(base) if y == name]
    root = name if len(positions) == 1 else f"{name}#{positions.index(w.root) + 1}"
    return ".".join([root, *w.edges])


def format_element(fp: ForestPair) -> str:
    dom = ", ".join(format_word(w, fp.base) for w in fp.domain_leaves)
    rng = ", ".join(format_word(w, fp.base) for w in fp.range_leaves)
    return f"element\n  domain [{dom}]\n  range  [{rng}]\n"


def format_loops(loops: dict) -> str:
    if not loops:
        return "(empty)"
    terms = []
    for (color, winding), count in sorted(loops.items()):
        prefix = f"{count}*" if count > 1 else ""
        terms.append(f"{prefix}L({color},{winding})")
    return "+".join(terms)

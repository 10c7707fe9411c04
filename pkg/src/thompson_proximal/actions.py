"""The action of F on the dyadics and on the covering space Z x Gamma.

Points of the covering space are ``LambdaPoint(n, gamma)``. Generators act
letterwise: ``a`` moves only ``gamma``; ``b`` moves ``gamma`` except at
``gamma == 0``, where it steps the sheet index ``n`` instead. Only words
act on Lambda; an arbitrary :class:`PLHomeo` does not.
"""

from __future__ import annotations

import json
import os
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, NamedTuple, Union

from .fgroup import CONVENTION, LETTER_MAP, LETTERS, parse_word, pl_apply
from .numerics import Dyadic, as_dyadic, format_dyadic, parse

DEFAULT_RADIUS_CAP = 12
CAP_ENV = "THOMPSON_PROXIMAL_CAP"

_ZERO = Dyadic(0)


class LambdaPoint(NamedTuple):
    n: int
    gamma: Dyadic

    def __str__(self):
        return f"({self.n},{format_dyadic(self.gamma)})"


Point = Union[Dyadic, LambdaPoint]


class RadiusCapExceeded(ValueError):
    pass


class LimitNotFound(RuntimeError):
    """No n up to nMax starts a window of isomorphic balls."""

    def __init__(self, radius, n_max, window, last_mismatch):
        self.radius = radius
        self.n_max = n_max
        self.window = window
        self.last_mismatch = last_mismatch
        super().__init__(
            f"exhausted: no n <= {n_max} with a {window + 1}-wide run of isomorphic "
            f"radius-{radius} balls (last mismatch at m={last_mismatch})"
        )


def radius_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_RADIUS_CAP


def parse_lambda_point(text: str) -> LambdaPoint:
    """Parse ``(n,gamma)`` or ``n,gamma``."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = body.split(",")
    if len(parts) != 2:
        raise ValueError(f"not a Lambda point: {text!r}")
    try:
        n = int(parts[0])
    except ValueError:
        raise ValueError(f"not a Lambda point: {text!r}") from None
    return LambdaPoint(n, parse(parts[1]))


@lru_cache(maxsize=1 << 18)
def gamma_apply_letter(s: str, q: Dyadic) -> Dyadic:
    return pl_apply(LETTER_MAP[s], q)


def gamma_apply_word(word, q) -> Dyadic:
    q = as_dyadic(q)
    for s in reversed(parse_word(word)):
        q = gamma_apply_letter(s, q)
    return q


def lambda_apply_letter(s: str, p: LambdaPoint) -> LambdaPoint:
    n, g = p
    if s in ("b", "B") and g == _ZERO:
        return LambdaPoint(n + 1 if s == "b" else n - 1, g)
    if s not in LETTER_MAP:
        raise ValueError(f"bad letter {s!r}")
    return LambdaPoint(n, gamma_apply_letter(s, g))


def lambda_apply_word(word, p: LambdaPoint) -> LambdaPoint:
    for s in reversed(parse_word(word)):
        p = lambda_apply_letter(s, p)
    return p


def psi(p: LambdaPoint) -> Dyadic:
    """Covering map Lambda -> Gamma."""
    return p.gamma


def apply_letter(space: str, s: str, p):
    if space == "gamma":
        return gamma_apply_letter(s, p)
    if space == "lambda":
        return lambda_apply_letter(s, p)
    raise ValueError(f"unknown space {space!r}")


def apply_word(space: str, word, p):
    for s in reversed(parse_word(word)):
        p = apply_letter(space, s, p)
    return p


def point_name(p) -> str:
    return str(p) if isinstance(p, LambdaPoint) else format_dyadic(p)


def is_black(p) -> bool:
    g = p.gamma if isinstance(p, LambdaPoint) else p
    return g == _ZERO


@dataclass
class RootedLabeledGraph:
    """Finite rooted graph with directed edges labeled ``a`` or ``b``.

    Node ids are the points themselves; ``order`` keeps BFS discovery order.
    Self-loops are kept in ``edges``; exports drop them when
    ``self_loops_omitted`` is set.
    """

    order: list
    root: Hashable
    edges: set = field(default_factory=set)
    self_loops_omitted: bool = True

    @property
    def nodes(self) -> set:
        return set(self.order)

    def __len__(self):
        return len(self.order)

    def exported_edges(self) -> list:
        idx = {v: i for i, v in enumerate(self.order)}
        out = sorted(self.edges, key=lambda e: (idx[e[0]], e[2], idx[e[1]]))
        if self.self_loops_omitted:
            out = [e for e in out if e[0] != e[1]]
        return out

    def to_json(self) -> dict:
        idx = {v: i for i, v in enumerate(self.order)}
        return {
            "convention": CONVENTION,
            "selfLoopsOmitted": self.self_loops_omitted,
            "root": idx[self.root],
            "nodes": [
                {"id": i, "name": point_name(v), "black": is_black(v)}
                for i, v in enumerate(self.order)
            ],
            "edges": [
                {"src": idx[u], "dst": idx[v], "label": lab}
                for u, v, lab in self.exported_edges()
            ],
        }

    def to_dot(self) -> str:
        idx = {v: i for i, v in enumerate(self.order)}
        lines = ["digraph schreier {", f"  // {CONVENTION}"]
        for i, v in enumerate(self.order):
            attrs = [f'label="{point_name(v)}"']
            if is_black(v):
                attrs.append("style=filled, fillcolor=black, fontcolor=white")
            if v == self.root:
                attrs.append("shape=doublecircle")
            lines.append(f"  n{i} [{', '.join(attrs)}];")
        for u, v, lab in self.exported_edges():
            style = "solid" if lab == "a" else "dotted"
            lines.append(f'  n{idx[u]} -> n{idx[v]} [label="{lab}", style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def dumps(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2) + "\n"
        if fmt == "dot":
            return self.to_dot()
        raise ValueError(f"unknown format {fmt!r}")


def schreier_ball(space: str, root, radius: int, cap: int | None = None) -> RootedLabeledGraph:
    """Breadth-first ball of the given word radius around ``root``.

    Distance is undirected word length over a, a^-1, b, b^-1; the ball is the
    induced subgraph on all points within that distance.
    """
    cap = radius_cap() if cap is None else cap
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius > cap:
        raise RadiusCapExceeded(f"radius {radius} exceeds cap {cap}")
    if space == "gamma":
        root = as_dyadic(root)
    elif space == "lambda":
        if isinstance(root, str):
            root = parse_lambda_point(root)
        root = LambdaPoint(int(root[0]), as_dyadic(root[1]))
    else:
        raise ValueError(f"unknown space {space!r}")

    dist = {root: 0}
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        d = dist[v]
        if d == radius:
            continue
        for s in LETTERS:
            w = apply_letter(space, s, v)
            if w not in dist:
                dist[w] = d + 1
                order.append(w)
                queue.append(w)
    edges = set()
    for v in order:
        for s in ("a", "b"):
            w = apply_letter(space, s, v)
            if w in dist:
                edges.add((v, w, s))
    return RootedLabeledGraph(order, root, edges)


def _adjacency(g: RootedLabeledGraph):
    out = {v: {} for v in g.order}
    inc = {v: {} for v in g.order}
    for u, v, lab in g.edges:
        out[u].setdefault(lab, []).append(v)
        inc[v].setdefault(lab, []).append(u)
    return out, inc


def _signature(v, out, inc, edges) -> tuple:
    loops = tuple(sorted(lab for lab in ("a", "b") if (v, v, lab) in edges))
    return (
        tuple(sorted((lab, len(ws)) for lab, ws in out[v].items())),
        tuple(sorted((lab, len(ws)) for lab, ws in inc[v].items())),
        loops,
    )


def rooted_ball_isomorphic(G: RootedLabeledGraph, H: RootedLabeledGraph) -> bool:
    """Root-, label- and direction-preserving isomorphism test.

    Backtracking over G's nodes in BFS order from the root; each new node is
    matched against H-neighbours of an already-matched node, so for graphs
    whose labels act injectively the search never branches.
    """
    if len(G.order) != len(H.order) or len(G.edges) != len(H.edges):
        return False
    gout, ginc = _adjacency(G)
    hout, hinc = _adjacency(H)
    gsig = {v: _signature(v, gout, ginc, G.edges) for v in G.order}
    hsig = {v: _signature(v, hout, hinc, H.edges) for v in H.order}
    if sorted(map(repr, gsig.values())) != sorted(map(repr, hsig.values())):
        return False

    # visiting order: undirected BFS from the root, remembering how each node was reached
    parent: dict = {G.root: None}
    seq = [G.root]
    i = 0
    while i < len(seq):
        u = seq[i]
        i += 1
        for lab, ws in gout[u].items():
            for w in ws:
                if w not in parent:
                    parent[w] = (u, lab, "out")
                    seq.append(w)
        for lab, ws in ginc[u].items():
            for w in ws:
                if w not in parent:
                    parent[w] = (u, lab, "in")
                    seq.append(w)
    # disconnected leftovers are matched without an anchor
    for v in G.order:
        if v not in parent:
            parent[v] = None
            seq.append(v)

    mapping: dict = {}
    used: set = set()

    def consistent(u, x) -> bool:
        if gsig[u] != hsig[x]:
            return False
        for lab, ws in gout[u].items():
            for w in ws:
                if w in mapping and (x, mapping[w], lab) not in H.edges:
                    return False
        for lab, ws in ginc[u].items():
            for w in ws:
                if w in mapping and (mapping[w], x, lab) not in H.edges:
                    return False
        return True

    def candidates(k):
        u = seq[k]
        if k == 0:
            return [H.root]
        link = parent[u]
        if link is None:
            return [x for x in H.order if x not in used]
        p, lab, direction = link
        px = mapping[p]
        pool = hout[px] if direction == "out" else hinc[px]
        return [x for x in pool.get(lab, ()) if x not in used]

    # explicit stack of candidate iterators; depth equals the node count
    stack = [iter(candidates(0))]
    while stack:
        k = len(stack) - 1
        u = seq[k]
        if u in mapping:
            used.discard(mapping.pop(u))
        for x in stack[-1]:
            if consistent(u, x):
                mapping[u] = x
                used.add(x)
                break
        else:
            stack.pop()
            continue
        if len(stack) == len(seq):
            return True
        stack.append(iter(candidates(k + 1)))
    return False


def dyadic_chain_point(m: int) -> Dyadic:
    """The point 1/2^m on the path followed towards the limit."""
    return Dyadic(1, m)


def limit_check(radius: int, n_max: int, window: int, cap: int | None = None) -> int:
    """Smallest n <= n_max with B_r(Gamma, 1/2^m) ~ B_r(Lambda, (0,0)) for all m in [n, n+window]."""
    target = schreier_ball("lambda", LambdaPoint(0, _ZERO), radius, cap)
    ok: dict[int, bool] = {}

    def iso(m: int) -> bool:
        if m not in ok:
            ok[m] = rooted_ball_isomorphic(
                schreier_ball("gamma", dyadic_chain_point(m), radius, cap), target
            )
        return ok[m]

    last_mismatch = None
    for n in range(0, n_max + 1):
        bad = next((m for m in range(n, n + window + 1) if not iso(m)), None)
        if bad is None:
            return n
        last_mismatch = bad
    raise LimitNotFound(radius, n_max, window, last_mismatch)

"""r-uniform hypergraphs on at most 64 labelled vertices.

Vertices are 1..n.  A vertex set is an int bitmask with vertex ``v`` at bit
``v - 1``; an edge is the bitmask of its r vertices.  Edge sets can also be
viewed as a dense bitmask indexed by the colexicographic rank of each edge,
which is what the exact searches iterate over.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class HypergraphError(ValueError):
    """Invalid hypergraph data (bad vertex, wrong edge size, n too large)."""


class FormatError(HypergraphError):
    """Malformed text or JSON hypergraph input."""


# ---------------------------------------------------------------------------
# vertex-set helpers


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def colex_rank(mask: int) -> int:
    """Rank of the set ``mask`` among all sets of the same size in colex order."""
    rank = 0
    i = 1
    pos = 0
    while mask:
        if mask & 1:
            rank += comb(pos, i)
            i += 1
        mask >>= 1
        pos += 1
    return rank


def colex_unrank(rank: int, k: int) -> int:
    mask = 0
    for i in range(k, 0, -1):
        c = i - 1
        while comb(c + 1, i) <= rank:
            c += 1
        rank -= comb(c, i)
        mask |= 1 << c
    return mask


def _gosper(m: int, k: int) -> Iterator[int]:
    if k == 0:
        yield 0
        return
    if k > m:
        return
    x = (1 << k) - 1
    limit = 1 << m
    while x < limit:
        yield x
        low = x & -x
        ripple = x + low
        x = (((ripple ^ x) >> 2) // low) | ripple


def subsets_colex(ground: int | Sequence[int], k: int) -> Iterator[int]:
    """Yield the k-subsets of ``ground`` as vertex bitmasks, in colex order.

    ``ground`` is either n (meaning vertices 1..n) or an increasing sequence
    of vertices.  For equal-size sets colex order is numeric bitmask order.
    """
    if isinstance(ground, int):
        yield from _gosper(ground, k)
        return
    verts = list(ground)
    bits = [1 << (v - 1) for v in verts]
    for idx in _gosper(len(verts), k):
        m = 0
        i = 0
        while idx:
            if idx & 1:
                m |= bits[i]
            idx >>= 1
            i += 1
        yield m


# ---------------------------------------------------------------------------
# the hypergraph type


@dataclass(frozen=True)
class Hypergraph:
    """An immutable r-uniform hypergraph on vertices 1..n.

    ``labels`` optionally records, for each vertex, the label it carried in
    the object this one was derived from (``induced``, ``blow_up``).  It does
    not take part in equality.
    """

    n: int
    r: int
    edges: frozenset[int]
    labels: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not 2 <= self.r <= self.n <= MAX_VERTICES:
            raise HypergraphError(
                f"need 2 <= r <= n <= {MAX_VERTICES}, got n={self.n}, r={self.r}"
            )
        limit = 1 << self.n
        for e in self.edges:
            if e >= limit or e <= 0 or popcount(e) != self.r:
                raise HypergraphError(f"bad edge {vertices_of(e)} for n={self.n}, r={self.r}")

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, e: int | Iterable[int]) -> bool:
        if not isinstance(e, int):
            e = mask_of(e)
        return e in self.edges

    def edge_list(self) -> list[list[int]]:
        """Edges as sorted vertex lists, ordered colexicographically."""
        return [list(vertices_of(e)) for e in sorted(self.edges)]

    @cached_property
    def edge_bits(self) -> int:
        """Edge set as a bitmask over colex ranks of r-subsets of [n]."""
        bits = 0
        for e in self.edges:
            bits |= 1 << colex_rank(e)
        return bits

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in vertices_of(e):
                deg[v - 1] += 1
        return tuple(deg)

    @cached_property
    def links(self) -> tuple[tuple[int, ...], ...]:
        """For vertex v (index v-1), the masks e - {v} over edges e containing v."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for e in sorted(self.edges):
            rest = e
            while rest:
                low = rest & -rest
                out[low.bit_length() - 1].append(e ^ low)
                rest ^= low
        return tuple(tuple(x) for x in out)

    @cached_property
    def complement_graph(self) -> Hypergraph:
        return complement(self)

    def __str__(self) -> str:
        return format_text(self)


def make_hypergraph(n: int, r: int, edges: Iterable[Iterable[int]]) -> Hypergraph:
    """Build a hypergraph from vertex lists, collapsing duplicate edges."""
    if not 2 <= r <= n <= MAX_VERTICES:
        raise HypergraphError(f"need 2 <= r <= n <= {MAX_VERTICES}, got n={n}, r={r}")
    masks = set()
    for edge in edges:
        vs = list(edge)
        if len(set(vs)) != len(vs) or len(vs) != r:
            raise HypergraphError(f"edge {vs} does not have {r} distinct vertices")
        for v in vs:
            if not 1 <= v <= n:
                raise HypergraphError(f"vertex {v} out of range 1..{n}")
        masks.add(mask_of(vs))
    return Hypergraph(n, r, frozenset(masks))


def empty(n: int, r: int) -> Hypergraph:
    return Hypergraph(n, r, frozenset())


def complete(n: int, r: int) -> Hypergraph:
    return Hypergraph(n, r, frozenset(subsets_colex(n, r)))


def complement(h: Hypergraph) -> Hypergraph:
    return Hypergraph(h.n, h.r, frozenset(e for e in subsets_colex(h.n, h.r) if e not in h.edges))


def induced(h: Hypergraph, s: int | Iterable[int]) -> Hypergraph:
    """Sub-hypergraph induced on ``s``, relabelled 1..|s| by increasing label.

    The result's ``labels`` holds each new vertex's label in ``h``.
    """
    if not isinstance(s, int):
        s = mask_of(s)
    if s & ~h.vertex_mask:
        raise HypergraphError("vertex set is not inside the hypergraph")
    verts = vertices_of(s)
    if len(verts) < h.r:
        raise HypergraphError(f"cannot induce on {len(verts)} < r={h.r} vertices")
    pos = {v: i for i, v in enumerate(verts)}
    new_edges = []
    for e in h.edges:
        if e & s == e:
            new_edges.append(mask_of(pos[v] + 1 for v in vertices_of(e)))
    return Hypergraph(len(verts), h.r, frozenset(new_edges), verts)


def disjoint_union(a: Hypergraph, *others: Hypergraph) -> Hypergraph:
    """Vertex-disjoint union; later operands are shifted past earlier ones."""
    n, r = a.n, a.r
    edges = set(a.edges)
    for b in others:
        if b.r != r:
            raise HypergraphError(f"uniformity mismatch: {r} vs {b.r}")
        if n + b.n > MAX_VERTICES:
            raise HypergraphError("disjoint union exceeds 64 vertices")
        edges.update(e << n for e in b.edges)
        n += b.n
    return Hypergraph(n, r, frozenset(edges))


def blow_up(h: Hypergraph, multiplicities: Sequence[int]) -> Hypergraph:
    """Replace vertex v by an independent blob of ``multiplicities[v-1]`` copies.

    An r-set is an edge iff it meets r distinct blobs whose originals form an
    edge of ``h``.  ``labels`` maps each new vertex to its original.
    """
    if len(multiplicities) != h.n:
        raise HypergraphError(f"need {h.n} multiplicities, got {len(multiplicities)}")
    if any(k < 1 for k in multiplicities):
        raise HypergraphError("multiplicities must be positive")
    total = sum(multiplicities)
    if total > MAX_VERTICES:
        raise HypergraphError("blow-up exceeds 64 vertices")
    blobs = []
    labels = []
    start = 1
    for v, k in enumerate(multiplicities, 1):
        blobs.append(list(range(start, start + k)))
        labels.extend([v] * k)
        start += k
    edges = set()
    for e in h.edges:
        choices = [blobs[v - 1] for v in vertices_of(e)]
        for pick in _product(choices):
            edges.add(mask_of(pick))
    return Hypergraph(total, h.r, frozenset(edges), tuple(labels))


def _product(choices):
    if not choices:
        yield ()
        return
    for x in choices[0]:
        for rest in _product(choices[1:]):
            yield (x,) + rest


# ---------------------------------------------------------------------------
# copies and isomorphism


def _pattern_order(p: Hypergraph) -> list[int]:
    # descending degree; ties prefer vertices sharing edges with those already placed
    deg = p.degrees
    order: list[int] = []
    placed = 0
    remaining = set(range(1, p.n + 1))
    while remaining:
        def key(v):
            touching = sum(1 for l in p.links[v - 1] if l & placed)
            return (-deg[v - 1], -touching, v)
        v = min(remaining, key=key)
        order.append(v)
        placed |= 1 << (v - 1)
        remaining.remove(v)
    return order


def _copy_search(host: Hypergraph, pattern: Hypergraph, bijective: bool = False) -> Iterator[dict[int, int]]:
    if pattern.r != host.r:
        raise HypergraphError("pattern and host have different uniformity")
    if pattern.n > host.n or pattern.m > host.m:
        return
    order = _pattern_order(pattern)
    position = {v: i for i, v in enumerate(order)}
    # edges checked as soon as their last vertex (in search order) is placed
    closing: list[list[tuple[int, ...]]] = [[] for _ in order]
    for e in pattern.edges:
        idx = tuple(sorted(position[v] for v in vertices_of(e)))
        closing[idx[-1]].append(idx)
    pdeg = [pattern.degrees[v - 1] for v in order]
    hdeg = host.degrees
    hedges = host.edges
    k = len(order)
    image = [0] * k
    used = [False] * (host.n + 1)

    def extend(i):
        if i == k:
            yield {order[j]: image[j] for j in range(k)}
            return
        need = pdeg[i]
        for h in range(1, host.n + 1):
            if used[h] or hdeg[h - 1] < need:
                continue
            if bijective and hdeg[h - 1] != need:
                continue
            image[i] = h
            ok = True
            for idx in closing[i]:
                m = 0
                for j in idx:
                    m |= 1 << (image[j] - 1)
                if m not in hedges:
                    ok = False
                    break
            if ok:
                used[h] = True
                yield from extend(i + 1)
                used[h] = False

    yield from extend(0)


def find_copy(host: Hypergraph, pattern: Hypergraph) -> dict[int, int] | None:
    """An injective map pattern-vertex -> host-vertex sending edges to edges, or None."""
    return next(_copy_search(host, pattern), None)


def contains_copy(host: Hypergraph, pattern: Hypergraph) -> bool:
    return find_copy(host, pattern) is not None


def is_copy(host: Hypergraph, pattern: Hypergraph, mapping: dict[int, int]) -> bool:
    """Independent check that ``mapping`` embeds ``pattern`` into ``host``."""
    if sorted(mapping) != list(range(1, pattern.n + 1)):
        return False
    targets = list(mapping.values())
    if len(set(targets)) != len(targets) or not all(1 <= t <= host.n for t in targets):
        return False
    return all(mask_of(mapping[v] for v in vertices_of(e)) in host.edges for e in pattern.edges)


def are_isomorphic(a: Hypergraph, b: Hypergraph) -> bool:
    if (a.n, a.r, a.m) != (b.n, b.r, b.m):
        return False
    if sorted(a.degrees) != sorted(b.degrees):
        return False
    # an injective edge-preserving map between equal-size edge sets is onto
    return next(_copy_search(b, a, bijective=True), None) is not None


def copy_edge_sets(pattern: Hypergraph, n: int) -> set[int]:
    """All copies of ``pattern`` inside the complete r-graph on n vertices.

    Each copy is returned as a bitmask over colex ranks of its image edges.
    """
    if pattern.n > n:
        return set()
    edges = [vertices_of(e) for e in pattern.edges]
    rank_of = {e: i for i, e in enumerate(subsets_colex(n, pattern.r))}
    out = set()
    for targets in combinations(range(1, n + 1), pattern.n):
        for perm in permutations(targets):
            bits = 0
            for e in edges:
                bits |= 1 << rank_of[mask_of(perm[v - 1] for v in e)]
            out.add(bits)
    return out


# ---------------------------------------------------------------------------
# text and JSON formats


def format_text(h: Hypergraph) -> str:
    lines = [f"{h.n} {h.r}"]
    lines.extend(" ".join(map(str, e)) for e in h.edge_list())
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> Hypergraph:
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer token") from None
        if header is None:
            if len(nums) != 2:
                raise FormatError(f"line {lineno}: header must be 'n r'")
            header = nums
            continue
        if any(x >= y for x, y in zip(nums, nums[1:])):
            raise FormatError(f"line {lineno}: edge vertices must be strictly increasing")
        edges.append(nums)
    if header is None:
        raise FormatError("missing 'n r' header")
    try:
        return make_hypergraph(header[0], header[1], edges)
    except FormatError:
        raise
    except HypergraphError as exc:
        raise FormatError(str(exc)) from None


def to_json_obj(h: Hypergraph) -> dict:
    return {"n": h.n, "r": h.r, "edges": h.edge_list()}


def to_json(h: Hypergraph) -> str:
    return json.dumps(to_json_obj(h))


def from_json_obj(obj: dict) -> Hypergraph:
    try:
        return make_hypergraph(int(obj["n"]), int(obj["r"]), obj["edges"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad hypergraph JSON: {exc}") from None
    except HypergraphError as exc:
        raise FormatError(str(exc)) from None


def from_json(text: str) -> Hypergraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return from_json_obj(obj)


def load(path) -> Hypergraph:
    """Read a hypergraph file; JSON if it starts with '{', text format otherwise."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return from_json(text)
    return parse_text(text)

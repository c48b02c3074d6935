"""Perfect matchings, boundary values, positroids, flips, and heights.

A perfect matching picks exactly one arrow from every face cycle. Matchings
with a fixed boundary value form a distributive lattice: the partial order
is given by height functions (integrals of differences of matchings), and
its covers are flips at internal quiver vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from .model import BipartiteDual, DimerModel, bipartite_dual, require_valid, type_of
from .strands import necklaces


@dataclass(frozen=True)
class Matching:
    arrow_set: FrozenSet[int]

    def sorted_ids(self) -> Tuple[int, ...]:
        return tuple(sorted(self.arrow_set))


@dataclass(frozen=True)
class HeightFunction:
    values: Tuple[Tuple[int, int], ...]  # sorted (vertex id, value) pairs

    def __getitem__(self, vertex: int) -> int:
        return dict(self.values)[vertex]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.values)


def is_matching(model: DimerModel, arrows: Iterable[int]) -> bool:
    chosen = set(arrows)
    return all(sum(1 for a in f.boundary_cycle if a in chosen) == 1 for f in model.faces)


def require_matching(model: DimerModel, mu: Matching) -> None:
    if not is_matching(model, mu.arrow_set):
        raise ValueError("arrow set is not a perfect matching")


def enumerate_matchings(model: DimerModel) -> List[Matching]:
    """All perfect matchings, by exact-cover backtracking over the faces.

    Faces are processed in increasing id; within a face, candidate arrows in
    boundary-cycle order, so the output order is canonical.
    """
    require_valid(model)
    faces = sorted(model.faces, key=lambda f: f.id)
    results: List[Matching] = []
    chosen: Set[int] = set()
    forbidden: Set[int] = set()

    def descend(idx: int) -> None:
        # Once a face is settled, its remaining arrows may not be chosen by
        # the face on their other side, so they are forbidden in the subtree.
        cycle = faces[idx].boundary_cycle
        newly = [a for a in cycle if a not in chosen and a not in forbidden]
        forbidden.update(newly)
        recurse(idx + 1)
        forbidden.difference_update(newly)

    def recurse(idx: int) -> None:
        if idx == len(faces):
            results.append(Matching(frozenset(chosen)))
            return
        cycle = faces[idx].boundary_cycle
        count = sum(1 for a in cycle if a in chosen)
        if count > 1:
            return
        if count == 1:
            descend(idx)
            return
        for aid in cycle:
            if aid in forbidden:
                continue
            chosen.add(aid)
            descend(idx)
            chosen.remove(aid)

    recurse(0)
    return results


def boundary_value(model: DimerModel, mu: Matching) -> FrozenSet[int]:
    """∂μ: label i is included iff boundary arrow i is clockwise (lies in a
    white face) and in μ, or anticlockwise and not in μ."""
    out = set()
    for a in model.boundary_arrows:
        clockwise = model.is_clockwise(a.id)
        if (a.id in mu.arrow_set) == clockwise:
            out.add(a.boundary_label)
    return frozenset(out)


def matchings_with_boundary(model: DimerModel, I: Iterable[int]) -> List[Matching]:
    target = frozenset(I)
    return [mu for mu in enumerate_matchings(model)
            if boundary_value(model, mu) == target]


def positroid(model: DimerModel) -> FrozenSet[FrozenSet[int]]:
    """All boundary values of perfect matchings."""
    return frozenset(boundary_value(model, mu) for mu in enumerate_matchings(model))


def _gale_leq(smaller: FrozenSet[int], larger: FrozenSet[int], shift: int, n: int) -> bool:
    """smaller ≤ larger in the shift-started cyclic Gale order: list both in
    the linear order shift < shift+1 < ... (mod n); the r-th element of
    larger must be ≥ the r-th element of smaller."""

    def key(x: int) -> int:
        return (x - shift) % n

    a = sorted(smaller, key=key)
    b = sorted(larger, key=key)
    return all(key(x) <= key(y) for x, y in zip(a, b))


def positroid_contains_necklace_test(model: DimerModel, J: Iterable[int]) -> bool:
    """Membership of J in the positroid via the source necklace: J must
    dominate every necklace entry in the corresponding cyclically shifted
    Gale order. The source-necklace entry at boundary position m is the
    Gale maximum of the positroid for the shift starting at m+1 (so the
    domination runs in the order reversed against that shift): J belongs to
    the positroid iff J ≤ entry(m) in the (m+1)-shifted order for all m."""
    J = frozenset(J)
    k, n = type_of(model)
    if len(J) != k:
        raise ValueError(f"expected a {k}-subset, got {sorted(J)}")
    source_necklace, _ = necklaces(model)
    return all(_gale_leq(J, source_necklace[m], m % n + 1, n)
               for m in range(1, n + 1))


def flip(model: DimerModel, mu: Matching, j: int) -> Optional[Matching]:
    """Flip μ at the internal quiver vertex j: μ ± d(𝟙_j) when 0/1-valued.

    Adding d(𝟙_j) is valid when every arrow out of j is absent from μ and
    every arrow into j is present; subtracting is the converse. Returns None
    when neither direction applies.
    """
    vertex = model.vertex(j)
    if vertex.is_boundary:
        raise ValueError(f"vertex {j} is on the boundary; flips need internal vertices")
    outgoing = [a.id for a in model.arrows if a.tail == j]
    incoming = [a.id for a in model.arrows if a.head == j]
    in_mu = mu.arrow_set
    if all(a in in_mu for a in incoming) and all(a not in in_mu for a in outgoing):
        return Matching((in_mu - set(incoming)) | set(outgoing))
    if all(a not in in_mu for a in incoming) and all(a in in_mu for a in outgoing):
        return Matching((in_mu - set(outgoing)) | set(incoming))
    return None


def height(model: DimerModel, mu: Matching, mu_ref: Matching) -> HeightFunction:
    """The unique h vanishing on boundary vertices with d h = μ_ref − μ,
    i.e. h(head) − h(tail) = 𝟙[γ ∈ μ_ref] − 𝟙[γ ∈ μ] for every arrow γ."""
    if boundary_value(model, mu) != boundary_value(model, mu_ref):
        raise ValueError("matchings have different boundary values")
    values: Dict[int, int] = {v.id: 0 for v in model.vertices if v.is_boundary}
    stack = list(values)
    adj: Dict[int, List[Tuple[int, int]]] = {v.id: [] for v in model.vertices}
    for a in model.arrows:
        diff = (1 if a.id in mu_ref.arrow_set else 0) - (1 if a.id in mu.arrow_set else 0)
        adj[a.tail].append((a.head, diff))
        adj[a.head].append((a.tail, -diff))
    while stack:
        cur = stack.pop()
        for nb, diff in adj[cur]:
            if nb not in values:
                values[nb] = values[cur] + diff
                stack.append(nb)
    for cur, neighbours in adj.items():
        for nb, diff in neighbours:
            if values[nb] - values[cur] != diff:
                raise ValueError("matching difference is not a coboundary")
    return HeightFunction(tuple(sorted(values.items())))


def _extreme(model: DimerModel, start: Matching, direction: int) -> Matching:
    """Repeatedly apply flips that move every internal height in one
    direction (direction=+1 climbs, −1 descends) until none applies."""
    internal = [v.id for v in model.vertices if not v.is_boundary]
    current = start
    moved = True
    while moved:
        moved = False
        for j in internal:
            candidate = flip(model, current, j)
            if candidate is None:
                continue
            h = height(model, candidate, current)
            if h[j] == direction:
                current = candidate
                moved = True
    return current


def extreme_matchings(model: DimerModel, I: Iterable[int]) -> Tuple[Matching, Matching]:
    """The unique flip-minimal and flip-maximal matchings with boundary I,
    in the order (minimal, maximal) where μ ≤ μ′ iff height(μ′, μ) ≥ 0."""
    pool = matchings_with_boundary(model, I)
    if not pool:
        raise ValueError(f"{sorted(set(I))} is not in the positroid")
    return _extreme(model, pool[0], -1), _extreme(model, pool[0], +1)


def support_subgraph(model: DimerModel, I: Iterable[int]) -> BipartiteDual:
    """Γ_M: the fragment of the bipartite dual on edges and nodes incident
    with tiles where height(minimal, maximal) is nonzero. Matchings of this
    fragment (every node covered exactly once by edges or half-edges)
    biject with matchings_with_boundary(model, I) via intersection."""
    minimal, maximal = extreme_matchings(model, I)
    h = height(model, maximal, minimal).as_dict()
    support = {v for v, val in h.items() if val != 0}
    dual = bipartite_dual(model)
    cycle_tiles: Dict[int, Set[int]] = {}
    for f in model.faces:
        tiles: Set[int] = set()
        for aid in f.boundary_cycle:
            a = model.arrow(aid)
            tiles.update((a.tail, a.head))
        cycle_tiles[f.id] = tiles
    def incident(aid: int) -> bool:
        a = model.arrow(aid)
        return bool({a.tail, a.head} & support)

    nodes = tuple(nd for nd in dual.nodes if cycle_tiles[nd.face_id] & support)
    edges = tuple(e for e in dual.edges if incident(e.arrow_id))
    half_edges = tuple(he for he in dual.half_edges if incident(he.arrow_id))
    return BipartiteDual(nodes=nodes, edges=edges, half_edges=half_edges,
                         tiles=dual.tiles)

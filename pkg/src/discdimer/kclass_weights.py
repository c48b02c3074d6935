"""Downstream wedges, the distinguished matchings they define, K-theory
classes of matchings, and the weight tables used by the partition-function
formulas.

Every arrow of a consistent model is crossed by exactly two strands. The
two strand tails leaving the crossing (the "tendrils") together with a
boundary interval cut the disc into two parts; the part on the head side of
the arrow is its downstream wedge. Collecting, for a fixed tile j, all
arrows whose wedge contains j yields a perfect matching 𝔪_j — the same
matching that η^{-1} assigns to the projective class p_j, and the same one
found by minimal path degrees. The module computes all three and the
associated weights.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from .lattice_maps import KClass
from .matchings import Matching, enumerate_matchings, is_matching
from .model import BLACK, WHITE, DimerModel, is_standardised, opposite
from .strands import Strand, require_consistent


@dataclass(frozen=True)
class Wedge:
    arrow_id: int
    members: FrozenSet[int]


def _crossings_of(all_strands: List[Strand], aid: int) -> List[Tuple[Strand, int]]:
    """The (strand, position) pairs at which the arrow is crossed."""
    out = []
    for s in all_strands:
        for pos, (a, _) in enumerate(s.crossing_sequence):
            if a == aid:
                out.append((s, pos))
    return out


def downstream_wedge(model: DimerModel, aid: int) -> Wedge:
    """Tiles inside the region bounded by the two downstream tendrils at the
    arrow's crossing, on the head side: cut the tile adjacency graph along
    the arrow and every arrow either tendril crosses, then flood fill from
    the head tile."""
    all_strands = require_consistent(model)
    crossings = _crossings_of(all_strands, aid)
    cut = {aid}
    for strand, pos in crossings:
        cut.update(a for a, _ in strand.crossing_sequence[pos + 1:])
    adjacency: Dict[int, List[int]] = {v.id: [] for v in model.vertices}
    for a in model.arrows:
        if a.id not in cut:
            adjacency[a.tail].append(a.head)
            adjacency[a.head].append(a.tail)
    arrow = model.arrow(aid)
    seen = {arrow.head}
    stack = [arrow.head]
    while stack:
        cur = stack.pop()
        for nb in adjacency[cur]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return Wedge(aid, frozenset(seen))


def muller_speyer_matching(model: DimerModel, j: int) -> Matching:
    """𝔪_j = {α : j lies in the downstream wedge of α}."""
    arrows = frozenset(a.id for a in model.arrows
                       if j in downstream_wedge(model, a.id).members)
    if not is_matching(model, arrows):
        raise ValueError(f"wedge membership at vertex {j} did not produce a "
                         "perfect matching; the model is not consistent")
    return Matching(arrows)


def upstream_matching(model: DimerModel, j: int) -> Matching:
    """𝔪_j^∨: the wedge matching with all strands reversed, computed on the
    opposite model (arrow ids are shared between the two)."""
    return muller_speyer_matching(opposite(model), j)


def minimal_path_degrees(model: DimerModel, j: int, mu0: Matching) -> Dict[int, int]:
    """D(i) = minimal number of μ0-arrows on a directed path j → i."""
    dist: Dict[int, int] = {j: 0}
    queue = deque([j])
    out_arrows: Dict[int, List[Tuple[int, int]]] = {v.id: [] for v in model.vertices}
    for a in model.arrows:
        out_arrows[a.tail].append((a.head, 1 if a.id in mu0.arrow_set else 0))
    while queue:
        cur = queue.popleft()
        for nb, w in out_arrows[cur]:
            nd = dist[cur] + w
            if nb not in dist or nd < dist[nb]:
                dist[nb] = nd
                if w == 0:
                    queue.appendleft(nb)
                else:
                    queue.append(nb)
    if len(dist) != len(model.vertices):
        raise ValueError(f"vertex {j} does not reach the whole quiver")
    return dist


def projective_matching_oracle(model: DimerModel, j: int,
                               mu0: Optional[Matching] = None) -> Matching:
    """The matching singled out by minimal path degrees from vertex j: the
    arrows along which the degree drop D(tα) + deg_{μ0}(α) − D(hα) is 1.
    The result does not depend on the reference matching μ0."""
    require_consistent(model)
    if mu0 is None:
        pool = enumerate_matchings(model)
        if not pool:
            raise ValueError("model has no perfect matchings")
        mu0 = pool[0]
    dist = minimal_path_degrees(model, j, mu0)
    arrows = frozenset(a.id for a in model.arrows
                       if dist[a.tail] + (1 if a.id in mu0.arrow_set else 0)
                       - dist[a.head] == 1)
    if not is_matching(model, arrows):
        raise ValueError(f"minimal path degrees at vertex {j} did not produce "
                         "a perfect matching")
    return Matching(arrows)


def kclass_of_matching(model: DimerModel, mu: Matching) -> KClass:
    """[N_μ] = Σ_j p_j − Σ_{γ∉μ} p_{hγ} + Σ_{γ∈μ internal} p_{tγ}."""
    if not is_matching(model, mu.arrow_set):
        raise ValueError("arrow set is not a perfect matching")
    coeffs = {v.id: 1 for v in model.vertices}
    for a in model.arrows:
        if a.id not in mu.arrow_set:
            coeffs[a.head] -= 1
        elif not a.is_boundary:
            coeffs[a.tail] += 1
    return KClass(tuple(sorted(coeffs.items())))


def _truncated_cycle_weight(model: DimerModel, aid: int, color: str) -> Dict[int, int]:
    """Σ p_j over the vertices of the arrow's face cycle of the given
    colour, with the arrow's own tail and head dropped."""
    face = model.face_of_color(aid, color)
    if face is None:
        raise ValueError(f"arrow {aid} has no {color} face")
    arrow = model.arrow(aid)
    vertices = {model.arrow(a).tail for a in face.boundary_cycle}
    vertices -= {arrow.tail, arrow.head}
    return {v: 1 for v in vertices}


def weight_table(model: DimerModel, color: str) -> Dict[int, KClass]:
    """wtMS per internal arrow: for the white convention, the sum of p_j
    over the truncated black cycle bl′₀(γ); for the black convention, over
    the truncated white cycle."""
    cycle_color = BLACK if color == WHITE else WHITE
    out = {}
    for a in model.internal_arrows:
        out[a.id] = KClass(tuple(sorted(
            _truncated_cycle_weight(model, a.id, cycle_color).items())))
    return out


def weights(model: DimerModel, mu: Matching, color: str = WHITE
            ) -> Tuple[KClass, KClass]:
    """(wt(μ), wtD) in the given standardisation convention.

    wt(μ) = Σ over internal arrows of wt_μ(γ), where wt_μ(γ) = −p_{tγ} if
    γ ∈ μ and p_{hγ} otherwise; wtD = Σ over internal vertices of p_j.
    Requires the model to be standardised with boundary faces of the given
    colour, so that the identity
    [N_μ] = wtD + Σ_{i∈∂μ} p_{h α_i} − wt(μ) holds.
    """
    if not is_standardised(model, color):
        raise ValueError(f"model is not standardised with {color} boundary faces")
    if not is_matching(model, mu.arrow_set):
        raise ValueError("arrow set is not a perfect matching")
    wt: Dict[int, int] = {}
    for a in model.internal_arrows:
        if a.id in mu.arrow_set:
            wt[a.tail] = wt.get(a.tail, 0) - 1
        else:
            wt[a.head] = wt.get(a.head, 0) + 1
    wtd = {v.id: 1 for v in model.vertices if not v.is_boundary}
    return (KClass(tuple(sorted(wt.items()))), KClass(tuple(sorted(wtd.items()))))

"""Dimer models with boundary on the disc.

A model is a quiver with faces: vertices (tiles of the dual picture), arrows,
and two-coloured oriented face cycles, together with labelled boundary
arrows. Planarity is encoded purely combinatorially by the face structure and
the single boundary cycle; no coordinates are stored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

BLACK = "black"
WHITE = "white"


class StructuralError(ValueError):
    """A document or model is not even structurally well formed (dangling
    ids, malformed cycles, bad labels); distinct from axiom failure."""


@dataclass(frozen=True)
class Vertex:
    id: int
    is_boundary: bool


@dataclass(frozen=True)
class Arrow:
    id: int
    tail: int
    head: int
    is_boundary: bool
    boundary_label: Optional[int] = None


@dataclass(frozen=True)
class Face:
    id: int
    color: str
    boundary_cycle: Tuple[int, ...]


@dataclass(frozen=True)
class DimerModel:
    vertices: Tuple[Vertex, ...]
    arrows: Tuple[Arrow, ...]
    faces: Tuple[Face, ...]

    # -- indexed views (computed once; the dataclass is otherwise immutable) --

    def __post_init__(self) -> None:
        object.__setattr__(self, "_vertex_by_id", {v.id: v for v in self.vertices})
        object.__setattr__(self, "_arrow_by_id", {a.id: a for a in self.arrows})
        object.__setattr__(self, "_face_by_id", {f.id: f for f in self.faces})
        faces_of: Dict[int, List[int]] = {a.id: [] for a in self.arrows}
        for f in self.faces:
            for aid in f.boundary_cycle:
                if aid in faces_of:
                    faces_of[aid].append(f.id)
        object.__setattr__(self, "_faces_of_arrow", faces_of)

    def vertex(self, vid: int) -> Vertex:
        return self._vertex_by_id[vid]

    def arrow(self, aid: int) -> Arrow:
        return self._arrow_by_id[aid]

    def face(self, fid: int) -> Face:
        return self._face_by_id[fid]

    def has_vertex(self, vid: int) -> bool:
        return vid in self._vertex_by_id

    def faces_of_arrow(self, aid: int) -> Tuple[int, ...]:
        return tuple(self._faces_of_arrow[aid])

    def face_of_color(self, aid: int, color: str) -> Optional[Face]:
        """The face of the given colour containing the arrow, if any."""
        for fid in self._faces_of_arrow[aid]:
            f = self.face(fid)
            if f.color == color:
                return f
        return None

    @property
    def boundary_arrows(self) -> Tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.is_boundary)

    @property
    def internal_arrows(self) -> Tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if not a.is_boundary)

    @property
    def n(self) -> int:
        return len(self.boundary_arrows)

    def boundary_arrow_with_label(self, label: int) -> Arrow:
        for a in self.boundary_arrows:
            if a.boundary_label == label:
                return a
        raise KeyError(f"no boundary arrow labelled {label}")

    def is_clockwise(self, aid: int) -> bool:
        """A boundary arrow is clockwise iff it lies in a white face."""
        a = self.arrow(aid)
        if not a.is_boundary:
            raise ValueError(f"arrow {aid} is not a boundary arrow")
        return self.face(self._faces_of_arrow[aid][0]).color == WHITE

    def cycle_successor(self, fid: int, aid: int) -> int:
        """The arrow after `aid` in face `fid`'s oriented boundary cycle."""
        cyc = self.face(fid).boundary_cycle
        i = cyc.index(aid)
        return cyc[(i + 1) % len(cyc)]


@dataclass
class ModelReport:
    checks: Dict[str, Tuple[bool, str]] = field(default_factory=dict)
    n: int = 0
    connected: bool = False

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = (ok, detail)

    @property
    def passed(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def failures(self) -> Dict[str, str]:
        return {k: d for k, (ok, d) in self.checks.items() if not ok}


def _check_structure(model: DimerModel) -> None:
    vids = [v.id for v in model.vertices]
    aids = [a.id for a in model.arrows]
    fids = [f.id for f in model.faces]
    for name, ids in (("vertex", vids), ("arrow", aids), ("face", fids)):
        if len(set(ids)) != len(ids):
            raise StructuralError(f"duplicate {name} ids")
        if any(i < 0 for i in ids):
            raise StructuralError(f"negative {name} id")
    vset = set(vids)
    aset = set(aids)
    for a in model.arrows:
        if a.tail not in vset or a.head not in vset:
            raise StructuralError(f"arrow {a.id} references unknown vertex")
        if a.is_boundary and a.boundary_label is None:
            raise StructuralError(f"boundary arrow {a.id} lacks a label")
        if not a.is_boundary and a.boundary_label is not None:
            raise StructuralError(f"internal arrow {a.id} carries a label")
    for f in model.faces:
        if f.color not in (BLACK, WHITE):
            raise StructuralError(f"face {f.id} has colour {f.color!r}")
        if not f.boundary_cycle:
            raise StructuralError(f"face {f.id} has an empty cycle")
        for aid in f.boundary_cycle:
            if aid not in aset:
                raise StructuralError(f"face {f.id} references unknown arrow {aid}")
        if len(set(f.boundary_cycle)) != len(f.boundary_cycle):
            raise StructuralError(f"face {f.id} repeats an arrow in its cycle")


def validate(model: DimerModel) -> ModelReport:
    """Check every dimer-model axiom; raises StructuralError on dangling ids
    or malformed records, otherwise returns a full per-axiom report."""
    _check_structure(model)
    report = ModelReport()

    # No loops.
    loops = [a.id for a in model.arrows if a.tail == a.head]
    report.record("no_loops", not loops, f"loop arrows: {loops}")

    # Face multiplicity: internal arrows once in a black and once in a white
    # cycle; boundary arrows in exactly one cycle.
    bad_mult = []
    for a in model.arrows:
        occurrences = []
        for f in model.faces:
            occurrences += [f.color] * f.boundary_cycle.count(a.id)
        if a.is_boundary:
            if len(occurrences) != 1:
                bad_mult.append(a.id)
        else:
            if sorted(occurrences) != [BLACK, WHITE]:
                bad_mult.append(a.id)
    report.record("face_multiplicity", not bad_mult, f"arrows: {bad_mult}")

    # Oriented cycles: head of each arrow = tail of the next.
    bad_faces = []
    for f in model.faces:
        cyc = f.boundary_cycle
        for i, aid in enumerate(cyc):
            nxt = cyc[(i + 1) % len(cyc)]
            if model.arrow(aid).head != model.arrow(nxt).tail:
                bad_faces.append(f.id)
                break
    report.record("oriented_cycles", not bad_faces, f"faces: {bad_faces}")

    # Vertex incidence graphs: a line at boundary vertices, a cycle at
    # internal vertices. Nodes are the incident arrows; edges are consecutive
    # pairs through the vertex in some face cycle.
    bad_vertices = []
    for v in model.vertices:
        nodes = [a.id for a in model.arrows if a.tail == v.id or a.head == v.id]
        edges: List[Tuple[int, int]] = []
        for f in model.faces:
            cyc = f.boundary_cycle
            for i, aid in enumerate(cyc):
                nxt = cyc[(i + 1) % len(cyc)]
                if model.arrow(aid).head == v.id:
                    edges.append((aid, nxt))
        if not nodes:
            bad_vertices.append(v.id)
            continue
        degree = {nid: 0 for nid in nodes}
        ok = True
        for x, y in edges:
            if x in degree and y in degree:
                degree[x] += 1
                degree[y] += 1
            else:
                ok = False
        # Connectivity of the (multi)graph on `nodes` with `edges`.
        adj: Dict[int, List[int]] = {nid: [] for nid in nodes}
        for x, y in edges:
            if x in adj and y in adj:
                adj[x].append(y)
                adj[y].append(x)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            cur = stack.pop()
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != len(nodes):
            ok = False
        if ok:
            degs = sorted(degree.values())
            if v.is_boundary:
                # A line: either a single node, or two endpoints of degree 1
                # and the rest of degree 2.
                if len(nodes) == 1:
                    ok = len(edges) == 0
                else:
                    ok = len(edges) == len(nodes) - 1 and degs[:2] == [1, 1] and all(
                        d == 2 for d in degs[2:])
            else:
                ok = len(edges) == len(nodes) and all(d == 2 for d in degs)
        if not ok:
            bad_vertices.append(v.id)
    report.record("vertex_incidence", not bad_vertices, f"vertices: {bad_vertices}")

    # Euler characteristic of the disc.
    euler = len(model.vertices) - len(model.arrows) + len(model.faces)
    report.record("euler", euler == 1, f"chi = {euler}")

    # Boundary arrows form a single closed cycle with labels 1..n in cyclic
    # order; boundary flags on vertices agree with incidence.
    boundary = model.boundary_arrows
    n = len(boundary)
    report.n = n
    ok, detail = _check_boundary_cycle(model, boundary)
    report.record("boundary_cycle", ok, detail)

    flag_bad = []
    on_boundary = set()
    for a in boundary:
        on_boundary.update((a.tail, a.head))
    for v in model.vertices:
        if v.is_boundary != (v.id in on_boundary):
            flag_bad.append(v.id)
    report.record("boundary_flags", not flag_bad, f"vertices: {flag_bad}")

    # Connectivity of the underlying graph.
    connected = _is_connected(model)
    report.connected = connected
    report.record("connected", connected, "quiver is disconnected" if not connected else "")
    return report


def _check_boundary_cycle(model: DimerModel, boundary: Sequence[Arrow]) -> Tuple[bool, str]:
    n = len(boundary)
    if n == 0:
        return False, "no boundary arrows"
    labels = sorted(a.boundary_label for a in boundary)
    if labels != list(range(1, n + 1)):
        return False, f"labels are not a bijection with 1..{n}: {labels}"
    # The undirected graph on boundary vertices with boundary arrows as edges
    # must be a single cycle.
    adj: Dict[int, List[Arrow]] = {}
    for a in boundary:
        adj.setdefault(a.tail, []).append(a)
        adj.setdefault(a.head, []).append(a)
    if any(len(v) != 2 for v in adj.values()):
        return False, "a boundary vertex does not have exactly two boundary arrows"
    start = boundary[0]
    order = [start]
    vertex = start.head
    while True:
        a, b = adj[vertex]
        nxt = b if a.id == order[-1].id else a
        if nxt.id == start.id:
            break
        order.append(nxt)
        vertex = nxt.head if nxt.tail == vertex else nxt.tail
        if len(order) > n:
            return False, "boundary arrows do not close into one cycle"
    if len(order) != n:
        return False, "boundary arrows form more than one cycle"
    seq = [a.boundary_label for a in order]
    i1 = seq.index(1)
    rotated = seq[i1:] + seq[:i1]
    if rotated != list(range(1, n + 1)) and rotated != [1] + list(range(n, 1, -1)):
        return False, f"labels are not in cyclic order: {seq}"
    return True, ""


def _is_connected(model: DimerModel) -> bool:
    if not model.vertices:
        return False
    adj: Dict[int, List[int]] = {v.id: [] for v in model.vertices}
    for a in model.arrows:
        adj[a.tail].append(a.head)
        adj[a.head].append(a.tail)
    start = model.vertices[0].id
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for nb in adj[cur]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(model.vertices)


def require_valid(model: DimerModel) -> ModelReport:
    report = validate(model)
    if not report.passed:
        raise ValueError(f"model fails validation: {report.failures()}")
    return report


# ---------------------------------------------------------------------------
# Bipartite dual
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DualNode:
    face_id: int
    color: str


@dataclass(frozen=True)
class DualEdge:
    arrow_id: int
    black_face: int
    white_face: int


@dataclass(frozen=True)
class DualHalfEdge:
    arrow_id: int
    face_id: int
    label: int


@dataclass(frozen=True)
class BipartiteDual:
    nodes: Tuple[DualNode, ...]
    edges: Tuple[DualEdge, ...]
    half_edges: Tuple[DualHalfEdge, ...]
    tiles: Tuple[int, ...]

    @property
    def black_nodes(self) -> Tuple[DualNode, ...]:
        return tuple(x for x in self.nodes if x.color == BLACK)

    @property
    def white_nodes(self) -> Tuple[DualNode, ...]:
        return tuple(x for x in self.nodes if x.color == WHITE)


def bipartite_dual(model: DimerModel) -> BipartiteDual:
    require_valid(model)
    nodes = tuple(DualNode(f.id, f.color) for f in model.faces)
    edges = []
    half_edges = []
    for a in model.arrows:
        fids = model.faces_of_arrow(a.id)
        if a.is_boundary:
            half_edges.append(DualHalfEdge(a.id, fids[0], a.boundary_label))
        else:
            f0, f1 = (model.face(fid) for fid in fids)
            black = f0.id if f0.color == BLACK else f1.id
            white = f0.id if f0.color == WHITE else f1.id
            edges.append(DualEdge(a.id, black, white))
    return BipartiteDual(nodes, tuple(edges), tuple(half_edges),
                         tuple(v.id for v in model.vertices))


def type_of(model: DimerModel) -> Tuple[int, int]:
    """(k, n) with k = #white - #black + #(half-edges at black nodes)."""
    dual = bipartite_dual(model)
    color = {x.face_id: x.color for x in dual.nodes}
    black_half = sum(1 for h in dual.half_edges if color[h.face_id] == BLACK)
    k = len(dual.white_nodes) - len(dual.black_nodes) + black_half
    return k, len(dual.half_edges)


# ---------------------------------------------------------------------------
# Opposite and standardisation
# ---------------------------------------------------------------------------

def opposite(model: DimerModel) -> DimerModel:
    """Reverse all arrows and face cycles and swap the face colours; ids and
    boundary labels are preserved."""
    arrows = tuple(Arrow(a.id, a.head, a.tail, a.is_boundary, a.boundary_label)
                   for a in model.arrows)
    faces = tuple(Face(f.id, WHITE if f.color == BLACK else BLACK,
                       tuple(reversed(f.boundary_cycle)))
                  for f in model.faces)
    return DimerModel(model.vertices, arrows, faces)


def standardise(model: DimerModel, target_color: str = WHITE) -> DimerModel:
    """Glue a digon onto every boundary arrow not lying in a face of the
    target colour, so that afterwards every boundary arrow does.

    Each offending arrow gamma becomes internal; a fresh reversed arrow takes
    over its boundary label, and the pair bounds a fresh digon face of the
    target colour. Existing ids are untouched.
    """
    if target_color not in (BLACK, WHITE):
        raise ValueError(f"bad colour {target_color!r}")
    require_valid(model)
    offenders = [a for a in model.boundary_arrows
                 if model.face(model.faces_of_arrow(a.id)[0]).color != target_color]
    if not offenders:
        return model
    offenders.sort(key=lambda a: a.boundary_label)
    next_aid = max(a.id for a in model.arrows) + 1
    next_fid = max(f.id for f in model.faces) + 1
    arrows = {a.id: a for a in model.arrows}
    faces = list(model.faces)
    for gamma in offenders:
        new_arrow = Arrow(next_aid, gamma.head, gamma.tail, True, gamma.boundary_label)
        arrows[gamma.id] = Arrow(gamma.id, gamma.tail, gamma.head, False, None)
        arrows[new_arrow.id] = new_arrow
        faces.append(Face(next_fid, target_color, (gamma.id, new_arrow.id)))
        next_aid += 1
        next_fid += 1
    return DimerModel(model.vertices,
                      tuple(arrows[a] for a in sorted(arrows)),
                      tuple(faces))


def is_standardised(model: DimerModel, target_color: str) -> bool:
    return all(model.face(model.faces_of_arrow(a.id)[0]).color == target_color
               for a in model.boundary_arrows)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def to_dict(model: DimerModel) -> dict:
    arrows = []
    for a in model.arrows:
        rec = {"id": a.id, "tail": a.tail, "head": a.head, "is_boundary": a.is_boundary}
        if a.is_boundary:
            rec["boundary_label"] = a.boundary_label
        arrows.append(rec)
    return {
        "vertices": [{"id": v.id, "is_boundary": v.is_boundary} for v in model.vertices],
        "arrows": arrows,
        "faces": [{"id": f.id, "color": f.color,
                   "boundary_cycle": list(f.boundary_cycle)} for f in model.faces],
    }


def from_dict(doc: dict) -> DimerModel:
    try:
        vertices = tuple(Vertex(int(v["id"]), bool(v["is_boundary"]))
                         for v in doc["vertices"])
        arrows = []
        for a in doc["arrows"]:
            is_boundary = bool(a["is_boundary"])
            label = a.get("boundary_label")
            arrows.append(Arrow(int(a["id"]), int(a["tail"]), int(a["head"]),
                                is_boundary,
                                int(label) if label is not None else None))
        faces = tuple(Face(int(f["id"]), str(f["color"]),
                           tuple(int(x) for x in f["boundary_cycle"]))
                      for f in doc["faces"])
    except (KeyError, TypeError, ValueError) as exc:
        raise StructuralError(f"malformed document: {exc}") from exc
    model = DimerModel(vertices, tuple(arrows), faces)
    _check_structure(model)
    return model


def save(model: DimerModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_dict(model), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load(path) -> DimerModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StructuralError(f"{path}: invalid JSON at line {exc.lineno}, "
                                  f"column {exc.colno}") from exc
    if not isinstance(doc, dict):
        raise StructuralError(f"{path}: top level is not an object")
    return from_dict(doc)

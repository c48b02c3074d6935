"""The matching lattice, the isomorphism onto the projective K-theory
lattice, the exchange map β, and the cluster ensemble exactness checks.

The matching lattice 𝕄 consists of pairs (deg, f) with f: arrows → ℤ whose
sum around every face cycle equals deg. Perfect matchings are exactly its
0/1-valued degree-1 points. The map η sends 𝕄 into the free abelian group
on the quiver vertices (with basis p_j, the classes of the projectives);
for consistent models it is an isomorphism and its inverse carries each p_j
to a distinguished matching 𝔪_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from . import intlinalg
from .matchings import Matching, is_matching
from .model import DimerModel, require_valid


@dataclass(frozen=True)
class LatticePoint:
    """An element of 𝕄: an integer function on arrows with equal face sums."""
    deg: int
    values: Tuple[Tuple[int, int], ...]  # sorted (arrow id, value) pairs

    def __getitem__(self, arrow: int) -> int:
        return dict(self.values).get(arrow, 0)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.values)


@dataclass(frozen=True)
class KClass:
    """An element of the K-theory lattice: integer coefficients of the
    projective classes p_j, one per quiver vertex."""
    coefficients: Tuple[Tuple[int, int], ...]  # sorted (vertex id, coeff)

    def __getitem__(self, vertex: int) -> int:
        return dict(self.coefficients).get(vertex, 0)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.coefficients)

    @property
    def rank(self) -> int:
        return sum(c for _, c in self.coefficients)


def make_lattice_point(model: DimerModel, deg: int, values: Dict[int, int]) -> LatticePoint:
    point = LatticePoint(deg, tuple(sorted((a.id, values.get(a.id, 0))
                                           for a in model.arrows)))
    require_in_lattice(model, point)
    return point


def require_in_lattice(model: DimerModel, f: LatticePoint) -> None:
    vals = f.as_dict()
    for face in model.faces:
        total = sum(vals.get(a, 0) for a in face.boundary_cycle)
        if total != f.deg:
            raise ValueError(f"face {face.id} sums to {total}, expected deg {f.deg}")


def lattice_point_of_matching(model: DimerModel, mu: Matching) -> LatticePoint:
    if not is_matching(model, mu.arrow_set):
        raise ValueError("arrow set is not a perfect matching")
    return make_lattice_point(model, 1, {a: 1 for a in mu.arrow_set})


def coboundary(model: DimerModel, g: Dict[int, int]) -> LatticePoint:
    """d g: the degree-0 lattice point γ ↦ g(hγ) − g(tγ)."""
    values = {a.id: g.get(a.head, 0) - g.get(a.tail, 0) for a in model.arrows}
    return make_lattice_point(model, 0, values)


def eta(model: DimerModel, f: LatticePoint) -> KClass:
    """η(f) = deg(f)·Σ_j p_j − Σ_γ (deg(f) − f(γ))·p_{hγ}
    + Σ_{γ internal} f(γ)·p_{tγ}."""
    require_in_lattice(model, f)
    vals = f.as_dict()
    coeffs = {v.id: f.deg for v in model.vertices}
    for a in model.arrows:
        coeffs[a.head] -= f.deg - vals.get(a.id, 0)
        if not a.is_boundary:
            coeffs[a.tail] += vals.get(a.id, 0)
    return KClass(tuple(sorted(coeffs.items())))


def lattice_basis(model: DimerModel) -> List[LatticePoint]:
    """An integral basis of 𝕄, as the kernel of the constraint map
    (deg, f) ↦ (Σ_{γ ∈ face} f(γ) − deg)_face."""
    require_valid(model)
    arrows = sorted(a.id for a in model.arrows)
    col_of = {aid: i + 1 for i, aid in enumerate(arrows)}
    constraint = intlinalg.zeros(len(model.faces), 1 + len(arrows))
    for r, face in enumerate(sorted(model.faces, key=lambda f: f.id)):
        constraint[r][0] = -1
        for aid in face.boundary_cycle:
            constraint[r][col_of[aid]] += 1
    basis = intlinalg.kernel_basis(constraint)
    return [LatticePoint(vec[0], tuple(sorted(zip(arrows, vec[1:]))))
            for vec in basis]


def eta_matrix(model: DimerModel) -> List[List[int]]:
    """Matrix of η on the lattice_basis of 𝕄; rows indexed by sorted quiver
    vertices, columns by basis elements."""
    vertices = sorted(v.id for v in model.vertices)
    basis = lattice_basis(model)
    cols = [eta(model, b) for b in basis]
    return [[c[v] for c in cols] for v in vertices]


def is_eta_unimodular(model: DimerModel) -> bool:
    return intlinalg.is_unimodular(eta_matrix(model))


def eta_invariant_factors(model: DimerModel) -> List[int]:
    return intlinalg.smith_invariant_factors(eta_matrix(model))


def beta_matrix(model: DimerModel) -> List[List[int]]:
    """β[S_i] = p_i − Σ_{a: ta=i} p_{ha} + Σ_{a: ha=i, a internal} p_{ta}
    − χ_i p_i (χ_i = 1 iff i is internal); columns indexed by sorted
    vertices i, rows by sorted vertices."""
    vertices = sorted(v.id for v in model.vertices)
    row_of = {v: r for r, v in enumerate(vertices)}
    mat = intlinalg.zeros(len(vertices), len(vertices))
    for c, i in enumerate(vertices):
        col: Dict[int, int] = {i: 1}
        if not model.vertex(i).is_boundary:
            col[i] -= 1
        for a in model.arrows:
            if a.tail == i:
                col[a.head] = col.get(a.head, 0) - 1
            if a.head == i and not a.is_boundary:
                col[a.tail] = col.get(a.tail, 0) + 1
        for v, x in col.items():
            mat[row_of[v]][c] = x
    return mat


def beta_class(model: DimerModel, i: int) -> KClass:
    vertices = sorted(v.id for v in model.vertices)
    mat = beta_matrix(model)
    c = vertices.index(i)
    return KClass(tuple((v, mat[r][c]) for r, v in enumerate(vertices)))


@dataclass
class ClusterEnsembleReport:
    eta_d_equals_beta: bool
    rank_eta_equals_deg: bool
    exact_at_first: bool   # kernel of β equals the image of the constants
    exact_at_second: bool  # kernel of the rank map equals the image of β
    witnesses: List[str]

    @property
    def passed(self) -> bool:
        return (self.eta_d_equals_beta and self.rank_eta_equals_deg
                and self.exact_at_first and self.exact_at_second)


def check_cluster_ensemble(model: DimerModel) -> ClusterEnsembleReport:
    """Verify exactness of ℤ → ℤ^{Q0} → ℤ^{Q0} → ℤ (constants, then β,
    then coefficient sum) together with η∘d = β and rank∘η = deg."""
    vertices = sorted(v.id for v in model.vertices)
    dim = len(vertices)
    witnesses: List[str] = []

    eta_d_ok = True
    for i in vertices:
        lhs = eta(model, coboundary(model, {i: 1})).as_dict()
        rhs = beta_class(model, i).as_dict()
        if lhs != rhs:
            eta_d_ok = False
            witnesses.append(f"eta(d 1_{i}) != beta[{i}]")

    rank_ok = True
    for b in lattice_basis(model):
        if eta(model, b).rank != b.deg:
            rank_ok = False
            witnesses.append(f"rank(eta(f)) != deg(f) on a basis element of degree {b.deg}")

    beta = beta_matrix(model)
    # Exactness at the first middle spot: kernel(β) = image of the constant
    # vector (1, ..., 1).
    kernel_b = intlinalg.kernel_basis(beta)
    ones = [[1] * dim]
    first = intlinalg.lattices_equal(kernel_b, ones, dim)
    if not first:
        witnesses.append("kernel of beta differs from the constants")
    # Exactness at the second: kernel of the rank map = column span of β.
    rank_map = [[1] * dim]
    kernel_rank = intlinalg.kernel_basis(rank_map)
    columns = [[beta[r][c] for r in range(dim)] for c in range(dim)]
    second = intlinalg.lattices_equal(kernel_rank, columns, dim)
    if not second:
        witnesses.append("image of beta differs from the kernel of the rank map")
    return ClusterEnsembleReport(eta_d_ok, rank_ok, first, second, witnesses)


def eta_inverse_basis(model: DimerModel) -> Dict[int, LatticePoint]:
    """The lattice points 𝔪_j = η^{-1}(p_j), one per quiver vertex; raises
    if η is not unimodular or some preimage fails to be a perfect matching."""
    vertices = sorted(v.id for v in model.vertices)
    mat = eta_matrix(model)
    if not intlinalg.is_unimodular(mat):
        raise ValueError("eta is not unimodular; no integral inverse")
    inv = intlinalg.integer_inverse(mat)  # basis coordinates per p_j column
    basis = lattice_basis(model)
    arrows = sorted(a.id for a in model.arrows)
    out: Dict[int, LatticePoint] = {}
    for c, j in enumerate(vertices):
        coords = [inv[r][c] for r in range(len(basis))]
        deg = sum(x * b.deg for x, b in zip(coords, basis))
        values = {aid: sum(x * b[aid] for x, b in zip(coords, basis))
                  for aid in arrows}
        point = make_lattice_point(model, deg, values)
        if point.deg != 1 or any(x not in (0, 1) for x in values.values()):
            raise ValueError(f"eta^-1(p_{j}) is not a perfect matching")
        out[j] = point
    return out

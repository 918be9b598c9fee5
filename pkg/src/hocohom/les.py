"""The long exact sequence connecting consecutive levels of the hierarchy.

For each q the ideals give a short exact sequence of modules

    0 -> J_q/J_{q+1} -> A/J_{q+1} -> A/J_q -> 0,

whose left term carries the trivial action (I J_q and J_q I land in
J_{q+1}), hence is a direct sum of N(q) copies of the trivial module.  The
horseshoe construction combines resolutions of the outer terms into a
termwise-split resolution of the middle term with block boundaries
[[dL, h], [0, dN]], where the correctors h are solved degree by degree by
exact linear algebra.  Applying Hom_A(-, V) gives a termwise-split short
exact sequence of cochain complexes, and the snake construction extracts
the six-terms-per-degree long exact sequence

    0 -> H_q^0 -> H_{q+1}^0 -> H^0(G,V)^{N(q)} -> H_q^1 -> ...

with explicit matrices.  Exactness is verified as subspace equality
image = kernel at every node, not merely by dimension count.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GroupAlgebra, IdealFiltration
from .groups import NormalSubgroup
from .linalg import (
    Matrix, QuotientMap, Subspace, column_space, kernel, rank, solve_column,
)
from .modules import GammaModule, ModuleMap
from .resolution import (
    AModule, FreeResolution, amap_from_generator_images, bar_dimension, ext,
    filtration_for, free_amodule, hom_delta, layer_module, quotient_by_j,
    resolution_of_layer, resolution_of_quotient,
)


class NontrivialActionError(RuntimeError):
    """The layer J_q/J_{q+1} failed the trivial-action certificate."""


@dataclass(frozen=True)
class ShortExactSequence:
    """0 -> left -> middle -> right -> 0 in compatible canonical coordinates."""

    q: int
    sigma: NormalSubgroup
    left: AModule
    middle: AModule
    right: AModule
    inject: ModuleMap
    surject: ModuleMap


def quotient_ses(algebra: GroupAlgebra, filtration: IdealFiltration,
                 q: int) -> ShortExactSequence:
    """Build and certify the quotient short exact sequence at level q."""
    f = algebra.field
    left, left_qm = layer_module(algebra, filtration.sigma, q, filtration)
    middle, middle_qm = quotient_by_j(algebra, filtration.sigma, q + 1, filtration)
    right, right_qm = quotient_by_j(algebra, filtration.sigma, q, filtration)
    inj_cols = [middle_qm.coords(rep) for rep in left_qm.reps.entries]
    inject = ModuleMap(left.module, middle.module,
                       Matrix.from_columns(f, inj_cols, rows=middle.dim))
    sur_cols = [right_qm.coords(rep) for rep in middle_qm.reps.entries]
    surject = ModuleMap(middle.module, right.module,
                        Matrix.from_columns(f, sur_cols, rows=right.dim))
    if rank(inject.matrix) != left.dim:
        raise RuntimeError("injection is not injective")
    if rank(surject.matrix) != right.dim:
        raise RuntimeError("surjection is not surjective")
    if middle.dim != left.dim + right.dim:
        raise RuntimeError("dimensions do not add up in the quotient sequence")
    if column_space(inject.matrix) != kernel(surject.matrix):
        raise RuntimeError("image of injection differs from kernel of surjection")
    return ShortExactSequence(q, filtration.sigma, left, middle, right, inject, surject)


@dataclass(frozen=True)
class TrivialActionCertificate:
    dim: int
    iso_to_trivial_power: Matrix


def trivial_action_witness(ses: ShortExactSequence) -> TrivialActionCertificate:
    """Certify that every group element acts as the identity on the left term.

    The canonical coordinates then realize the layer as R^{N(q)} with
    trivial action, so the identity matrix is an equivariant isomorphism.
    """
    left = ses.left
    f = left.algebra.field
    ident = Matrix.identity(f, left.dim)
    for g, mat in enumerate(left.module.action):
        if mat != ident:
            raise NontrivialActionError(
                f"group element {g} acts nontrivially on J_q/J_{{q+1}}")
    return TrivialActionCertificate(left.dim, ident)


@dataclass(frozen=True)
class HorseshoeData:
    """Compatible resolutions for a short exact sequence.

    res_middle has ranks rL_i + rN_i with block boundaries [[dL, h], [0, dN]];
    correctors[i] is the R-matrix of h_{i+1} : free(rN_{i+1}) -> free(rL_i)
    space.  The middle resolution is certified exact by rank arithmetic.
    """

    ses: ShortExactSequence
    res_left: FreeResolution
    res_middle: FreeResolution
    res_right: FreeResolution
    correctors: tuple[Matrix, ...]


def horseshoe(ses: ShortExactSequence, length: int,
              order: str = "forward") -> HorseshoeData:
    algebra = ses.left.algebra
    f = algebra.field
    n = algebra.dim
    res_left = resolution_of_layer(algebra, ses.sigma, ses.q, length, order)
    res_right = resolution_of_quotient(algebra, ses.sigma, ses.q, length, order)

    inj = ses.inject.matrix
    middle_mod = ses.middle.module

    # augmentation: on the left block, inject after the left augmentation;
    # on the right block, a lift of the right augmentation through the surjection
    lift_images = []
    for j in range(res_right.ranks[0]):
        target = res_right.augmentation.column(j * n)
        lift_images.append(solve_column(ses.surject.matrix, target))
    lambda0 = amap_from_generator_images(algebra, middle_mod, lift_images)
    aug_left_part = inj @ res_left.augmentation
    aug_middle = Matrix.hstack(f, [aug_left_part, lambda0]) \
        if res_left.ranks[0] + res_right.ranks[0] > 0 else Matrix.zeros(f, ses.middle.dim, 0)

    boundaries = []
    correctors = []
    kernels = []
    ranks = [res_left.ranks[0] + res_right.ranks[0]]
    prev_solver = aug_left_part          # target side of the corrector equation
    prev_corrector_full = lambda0        # maps free(rN_i) space into the previous target
    prev_map = aug_middle
    for i in range(1, length + 1):
        r_l_prev, r_n_prev = res_left.ranks[i - 1], res_right.ranks[i - 1]
        r_l, r_n = res_left.ranks[i], res_right.ranks[i]
        d_l = res_left.boundaries[i - 1]
        d_n = res_right.boundaries[i - 1]
        images = []
        for j in range(r_n):
            w = prev_corrector_full.apply(d_n.column(j * n))
            neg_w = tuple(f.neg(x) for x in w)
            images.append(solve_column(prev_solver, neg_w))
        target_free = free_amodule(algebra, r_l_prev)
        h_i = amap_from_generator_images(algebra, target_free.module, images)
        correctors.append(h_i)
        boundary = Matrix.block(
            f, [[d_l, h_i], [None, d_n]],
            [r_l_prev * n, r_n_prev * n], [r_l * n, r_n * n])
        if not (prev_map @ boundary).is_zero():
            raise RuntimeError(f"horseshoe boundary {i} does not compose to zero")
        ker_prev = kernel(prev_map)
        kernels.append(ker_prev)
        if rank(boundary) != ker_prev.dim:
            raise RuntimeError(f"horseshoe failed exactness at stage {i}")
        boundaries.append(boundary)
        ranks.append(r_l + r_n)
        prev_solver = d_l
        prev_corrector_full = h_i
        prev_map = boundary
    if rank(aug_middle) != ses.middle.dim:
        raise RuntimeError("horseshoe augmentation is not surjective")
    res_middle = FreeResolution(ses.middle, tuple(ranks), aug_middle,
                                tuple(boundaries), tuple(kernels), order)
    return HorseshoeData(ses, res_left, res_middle, res_right, tuple(correctors))


# ---------------------------------------------------------------------------
# cohomology of the three complexes and the snake construction

@dataclass(frozen=True)
class CohomologySpace:
    """Z^p, B^p, and canonical class coordinates for one cochain degree."""

    p: int
    cocycles: Subspace
    coboundaries: Subspace
    classes: QuotientMap

    @property
    def dim(self) -> int:
        return self.classes.dim


def _cohomology_spaces(deltas: list[Matrix], up_to: int, field) -> list[CohomologySpace]:
    spaces = []
    for p in range(up_to + 1):
        z = kernel(deltas[p])
        b = column_space(deltas[p - 1]) if p > 0 else Subspace.zero(field, deltas[p].cols)
        if not z.contains_subspace(b):
            raise RuntimeError("delta squared is nonzero")
        spaces.append(CohomologySpace(p, z, b, QuotientMap(z, b)))
    return spaces


def _induced_matrix(map_matrix: Matrix, src: CohomologySpace,
                    dst: CohomologySpace) -> Matrix:
    """The map on cohomology classes induced by a cochain-level map."""
    f = map_matrix.field
    cols = []
    for rep in src.classes.reps.entries:
        moved = map_matrix.apply(rep)
        if not dst.cocycles.contains_vector(moved):
            raise RuntimeError("cochain map did not send cocycles to cocycles")
        cols.append(dst.classes.coords(moved))
    return Matrix.from_columns(f, cols, rows=dst.dim)


@dataclass(frozen=True)
class LesDegree:
    p: int
    dim_lower: int          # H_q^p
    dim_upper: int          # H_{q+1}^p
    dim_power: int          # Ext^p(J_q/J_{q+1}, V) = H^p(G,V)^{N(q)}
    map_lower_to_upper: Matrix
    map_upper_to_power: Matrix
    connecting: Matrix
    verdicts: dict

    @property
    def exact(self) -> bool:
        return all(self.verdicts.values())


@dataclass(frozen=True)
class LongExactSequenceReport:
    q: int
    p_max: int
    n_q: int
    degrees: tuple[LesDegree, ...]

    @property
    def exact(self) -> bool:
        return all(d.exact for d in self.degrees)

    def dims_table(self) -> list[dict]:
        return [{"p": d.p, "H_q": d.dim_lower, "H_q_plus_1": d.dim_upper,
                 "power": d.dim_power} for d in self.degrees]


def long_exact_sequence(algebra: GroupAlgebra, sigma: NormalSubgroup,
                        v: GammaModule, q: int, p_max: int,
                        filtration: IdealFiltration | None = None,
                        order: str = "forward") -> LongExactSequenceReport:
    """Materialize the six-term-per-degree long exact sequence at level q.

    Verifies, as subspace identities on class coordinates: injectivity at
    the start, image = kernel at every interior node up to degree p_max,
    using the connecting homomorphism into degree p_max + 1.
    """
    if p_max < 0:
        raise ValueError("p_max must be >= 0")
    if p_max > 3:
        from .resolution import BudgetExceeded
        raise BudgetExceeded("long-exact-sequence degrees are limited to p_max <= 3")
    f = algebra.field
    filt = filtration if filtration is not None else filtration_for(algebra, sigma)
    ses = quotient_ses(algebra, filt, q)
    trivial_action_witness(ses)
    length = p_max + 2
    shoe = horseshoe(ses, length, order)
    res_l, res_m, res_n = shoe.res_left, shoe.res_middle, shoe.res_right

    deltas_n = [hom_delta(res_n, v, i) for i in range(length)]
    deltas_m = [hom_delta(res_m, v, i) for i in range(length)]
    deltas_l = [hom_delta(res_l, v, i) for i in range(length)]

    d_v = v.dim
    embed = []   # C_N^i -> C_M^i  (R-slot)
    project = [] # C_M^i -> C_L^i  (P-slot)
    for i in range(length):
        r_l, r_n = res_l.ranks[i], res_n.ranks[i]
        embed.append(Matrix.block(
            f, [[None], [Matrix.identity(f, r_n * d_v)]],
            [r_l * d_v, r_n * d_v], [r_n * d_v]))
        project.append(Matrix.block(
            f, [[Matrix.identity(f, r_l * d_v), None]],
            [r_l * d_v], [r_l * d_v, r_n * d_v]))
    for i in range(length - 1):
        if deltas_m[i] @ embed[i] != embed[i + 1] @ deltas_n[i]:
            raise RuntimeError(f"embedding is not a cochain map at degree {i}")
        if deltas_l[i] @ project[i] != project[i + 1] @ deltas_m[i]:
            raise RuntimeError(f"projection is not a cochain map at degree {i}")

    top = p_max + 1
    h_n = _cohomology_spaces(deltas_n, top, f)
    h_m = _cohomology_spaces(deltas_m, top, f)
    h_l = _cohomology_spaces(deltas_l, top, f)

    lower_maps = [_induced_matrix(embed[p], h_n[p], h_m[p]) for p in range(top + 1)]
    upper_maps = [_induced_matrix(project[p], h_m[p], h_l[p]) for p in range(top + 1)]

    def connecting(p: int) -> Matrix:
        cols = []
        r_l, r_n = res_l.ranks[p], res_n.ranks[p]
        r_l1, r_n1 = res_l.ranks[p + 1], res_n.ranks[p + 1]
        for rep in h_l[p].classes.reps.entries:
            lifted = tuple(rep) + (f.zero(),) * (r_n * d_v)
            moved = deltas_m[p].apply(lifted)
            p_part = moved[:r_l1 * d_v]
            if any(x != f.zero() for x in p_part):
                raise RuntimeError("snake lift has a nonzero projection part")
            w = moved[r_l1 * d_v:]
            if not h_n[p + 1].cocycles.contains_vector(w):
                raise RuntimeError("connecting image is not a cocycle")
            cols.append(h_n[p + 1].classes.coords(w))
        return Matrix.from_columns(f, cols, rows=h_n[p + 1].dim)

    connectings = [connecting(p) for p in range(p_max + 1)]

    degrees = []
    for p in range(p_max + 1):
        verdicts = {}
        # node H_q^p: kernel of the map onward equals what arrives
        incoming = (column_space(connectings[p - 1]) if p > 0
                    else Subspace.zero(f, h_n[p].dim))
        verdicts["at_H_q"] = kernel(lower_maps[p]) == incoming
        # node H_{q+1}^p
        verdicts["at_H_q_plus_1"] = kernel(upper_maps[p]) == column_space(lower_maps[p])
        # node H^p(G,V)^{N(q)}
        verdicts["at_power"] = kernel(connectings[p]) == column_space(upper_maps[p])
        degrees.append(LesDegree(
            p, h_n[p].dim, h_m[p].dim, h_l[p].dim,
            lower_maps[p], upper_maps[p], connectings[p], verdicts))
    return LongExactSequenceReport(q, p_max, filt.n(q), tuple(degrees))


# ---------------------------------------------------------------------------
# the two dimension laws

def power_identification(algebra: GroupAlgebra, sigma: NormalSubgroup,
                         v: GammaModule, q: int, p: int,
                         filtration: IdealFiltration | None = None,
                         classical_dim: int | None = None) -> tuple[int, int]:
    """(dim Ext^p(J_q/J_{q+1}, V),  N(q) * dim H^p(G, V)) for equality assertion.

    classical_dim short-circuits the brute-force factor when the caller has
    already computed dim H^p(G, V).
    """
    filt = filtration if filtration is not None else filtration_for(algebra, sigma)
    res = resolution_of_layer(algebra, sigma, q, p + 1, filtration=filt)
    lhs = ext(res, v, p).dim
    if classical_dim is None:
        classical_dim = bar_dimension(algebra.group, v, p)
    rhs = filt.n(q) * classical_dim
    return lhs, rhs


def les_naturality(algebra: GroupAlgebra, sigma: NormalSubgroup, f: ModuleMap,
                   q: int, p_max: int,
                   filtration: IdealFiltration | None = None) -> bool:
    """Optional check: a module map V -> W makes the two sequences commute.

    Post-composition with f induces vertical maps between the cochain
    complexes; the squares with both horizontal maps and the connecting
    homomorphism are verified on class coordinates.  Signs are the ones
    fixed by the split snake construction used throughout.
    """
    fld = algebra.field
    filt = filtration if filtration is not None else filtration_for(algebra, sigma)
    ses = quotient_ses(algebra, filt, q)
    length = p_max + 2
    shoe = horseshoe(ses, length)
    v, w = f.source, f.target

    def blockdiag(k: int) -> Matrix:
        blocks = [[f.matrix if i == j else None for j in range(k)] for i in range(k)]
        if k == 0:
            return Matrix.zeros(fld, 0, 0)
        return Matrix.block(fld, blocks, [w.dim] * k, [v.dim] * k)

    reports = {}
    for module in (v, w):
        reports[id(module)] = long_exact_sequence(
            algebra, sigma, module, q, p_max, filt)
    rep_v = reports[id(v)]
    rep_w = reports[id(w)]
    res_n = shoe.res_right
    res_m = shoe.res_middle
    res_l = shoe.res_left

    def vertical(res, p, h_src: CohomologySpace, h_dst: CohomologySpace) -> Matrix:
        return _induced_matrix(blockdiag(res.ranks[p]), h_src, h_dst)

    top = p_max + 1
    deltas = {}
    spaces = {}
    for tag, res in (("n", res_n), ("m", res_m), ("l", res_l)):
        for module in (v, w):
            ds = [hom_delta(res, module, i) for i in range(length)]
            deltas[(tag, id(module))] = ds
            spaces[(tag, id(module))] = _cohomology_spaces(ds, top, fld)

    ok = True
    for p in range(p_max + 1):
        vert_n = vertical(res_n, p, spaces[("n", id(v))][p], spaces[("n", id(w))][p])
        vert_n1 = vertical(res_n, p + 1, spaces[("n", id(v))][p + 1],
                           spaces[("n", id(w))][p + 1])
        vert_m = vertical(res_m, p, spaces[("m", id(v))][p], spaces[("m", id(w))][p])
        vert_l = vertical(res_l, p, spaces[("l", id(v))][p], spaces[("l", id(w))][p])
        deg_v = rep_v.degrees[p]
        deg_w = rep_w.degrees[p]
        if vert_m @ deg_v.map_lower_to_upper != deg_w.map_lower_to_upper @ vert_n:
            ok = False
        if vert_l @ deg_v.map_upper_to_power != deg_w.map_upper_to_power @ vert_m:
            ok = False
        if vert_n1 @ deg_v.connecting != deg_w.connecting @ vert_l:
            ok = False
    return ok


@dataclass(frozen=True)
class VanishingReport:
    acyclic_certified: bool
    dims: dict
    ok: bool


def vanishing_check(algebra: GroupAlgebra, sigma: NormalSubgroup,
                    v_acyclic: GammaModule, q_max: int, p_max: int,
                    filtration: IdealFiltration | None = None) -> VanishingReport:
    """Certify acyclicity at q = 1 by brute force, then sweep the grid.

    An acyclic module must have H_q^p = 0 for all q >= 1, p >= 1; the report
    carries every computed dimension so failures are diagnosable.
    """
    from .resolution import higher_cohomology
    filt = filtration if filtration is not None else filtration_for(algebra, sigma)
    certified = all(
        bar_dimension(algebra.group, v_acyclic, p) == 0 for p in range(1, p_max + 1))
    dims = {}
    for q in range(1, q_max + 1):
        for p in range(1, p_max + 1):
            dims[(q, p)] = higher_cohomology(algebra, sigma, v_acyclic, q, p, filt).dim
    ok = certified and all(d == 0 for d in dims.values())
    return VanishingReport(certified, dims, ok)

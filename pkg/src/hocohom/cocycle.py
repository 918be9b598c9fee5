"""Degree-one cohomology through the ideal-cocycle model.

H_q^1 is naturally isomorphic to Hom_A(J_q, V) / alpha(V), where alpha(v)
sends m in J_q to m v.  This file computes that quotient directly from the
defining linear systems, with no resolutions and no Hom complexes, so it is
a genuinely independent check of the Ext engine in degree one.

A map phi out of J_q is stored by its tuple of values on the canonical
basis of J_q; A-linearity is imposed for the group generators only, which
suffices because the conditions are linear in the basis and the generators
generate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import GroupAlgebra, IdealFiltration
from .groups import NormalSubgroup
from .linalg import Matrix, QuotientMap, Subspace, column_space, kernel, rank
from .modules import GammaModule


class AlphaNotAHomError(RuntimeError):
    """alpha(V) escaped Hom_A(J_q, V); impossible unless the solver is broken."""


@dataclass(frozen=True)
class HomSpace:
    """Hom_A(J_q, V) as a subspace of all tuples of basis values.

    Coordinates: value of phi on the l-th basis vector of J_q, component t,
    at flat index l * dim V + t.
    """

    source_dim: int
    module: GammaModule
    maps: Subspace

    @property
    def dim(self) -> int:
        return self.maps.dim


def hom_a_space(algebra: GroupAlgebra, filtration: IdealFiltration, q: int,
                v: GammaModule) -> HomSpace:
    """Solve phi(g x) = g phi(x) for group generators g and basis vectors x."""
    f = algebra.field
    jq = filtration.j(q)
    k = jq.dim
    d_v = v.dim
    total = k * d_v
    if total == 0:
        return HomSpace(k, v, Subspace.zero(f, total))
    rows = []
    zero = f.zero()
    for gamma in algebra.group.gen_indices:
        act = v.action[gamma]
        for m in range(k):
            moved = algebra.left_mult[gamma].apply(jq.basis.entries[m])
            if not jq.contains_vector(moved):
                raise RuntimeError("J_q is not left-stable; filtration is broken")
            coeffs = jq.coords(moved)
            for t in range(d_v):
                row = [zero] * total
                for l, c in enumerate(coeffs):
                    if c:
                        row[l * d_v + t] = f.add(row[l * d_v + t], c)
                for s in range(d_v):
                    a = act.entries[t][s]
                    if a:
                        row[m * d_v + s] = f.sub(row[m * d_v + s], a)
                rows.append(row)
    if not rows:
        return HomSpace(k, v, Subspace.whole(f, total))
    return HomSpace(k, v, kernel(Matrix(f, rows, len(rows), total)))


def alpha_map(algebra: GroupAlgebra, filtration: IdealFiltration, q: int,
              v: GammaModule, hom: HomSpace | None = None) -> Matrix:
    """The matrix of alpha : V -> Hom_A(J_q, V), alpha(v)(m) = m v.

    Certified to land inside hom_a_space; a failure raises AlphaNotAHomError
    (it would indicate a bug, not a mathematical possibility).
    """
    f = algebra.field
    jq = filtration.j(q)
    blocks = [v.algebra_action(row) for row in jq.basis.entries]
    if blocks:
        matrix = Matrix.vstack(f, blocks)
    else:
        matrix = Matrix.zeros(f, 0, v.dim)
    if hom is None:
        hom = hom_a_space(algebra, filtration, q, v)
    for j in range(matrix.cols):
        if not hom.maps.contains_vector(matrix.column(j)):
            raise AlphaNotAHomError(f"alpha of basis vector {j} is not A-linear")
    return matrix


def h_q1_cocycle(algebra: GroupAlgebra, sigma: NormalSubgroup, v: GammaModule,
                 q: int, filtration: IdealFiltration | None = None) -> int:
    """dim H_q^1 = dim Hom_A(J_q, V) - rank(alpha)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    from .resolution import filtration_for
    filt = filtration if filtration is not None else filtration_for(algebra, sigma)
    hom = hom_a_space(algebra, filt, q, v)
    alpha = alpha_map(algebra, filt, q, v, hom)
    return hom.dim - rank(alpha)


def alpha_kernel(algebra: GroupAlgebra, filtration: IdealFiltration, q: int,
                 v: GammaModule) -> Subspace:
    """ker(alpha) = {v : J_q v = 0}, which must equal H_q^0."""
    return kernel(alpha_map(algebra, filtration, q, v))


def h1_restriction_class_matrix(algebra: GroupAlgebra, filtration: IdealFiltration,
                                q: int, v: GammaModule) -> Matrix:
    """The map H_q^1 -> H_{q+1}^1 in the cocycle model, on class coordinates.

    Restriction of maps along J_{q+1} <= J_q descends to the alpha-quotients
    because alpha_q(v) restricts to alpha_{q+1}(v).
    """
    f = algebra.field
    j_lo = filtration.j(q + 1)
    j_hi = filtration.j(q)
    d_v = v.dim
    hom_hi = hom_a_space(algebra, filtration, q, v)
    hom_lo = hom_a_space(algebra, filtration, q + 1, v)
    alpha_hi = alpha_map(algebra, filtration, q, v, hom_hi)
    alpha_lo = alpha_map(algebra, filtration, q + 1, v, hom_lo)
    # restriction on raw value tuples
    cols_total = j_hi.dim * d_v
    rows_total = j_lo.dim * d_v
    zero = f.zero()
    grid = [[zero] * cols_total for _ in range(rows_total)]
    for m, row_vec in enumerate(j_lo.basis.entries):
        coeffs = j_hi.coords(row_vec)
        for l, c in enumerate(coeffs):
            if c:
                for t in range(d_v):
                    grid[m * d_v + t][l * d_v + t] = c
    restrict = Matrix(f, grid, rows_total, cols_total)
    classes_hi = QuotientMap(hom_hi.maps, column_space(alpha_hi))
    classes_lo = QuotientMap(hom_lo.maps, column_space(alpha_lo))
    cols = []
    for rep in classes_hi.reps.entries:
        moved = restrict.apply(rep)
        if not hom_lo.maps.contains_vector(moved):
            raise RuntimeError("restriction left the A-linear maps")
        cols.append(classes_lo.coords(moved))
    return Matrix.from_columns(f, cols, rows=classes_lo.dim)

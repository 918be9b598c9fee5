"""Finite groups presented by permutation generators.

Elements are enumerated by breadth-first search from the identity,
multiplying by the generators in input order, so the element order (and
everything downstream that uses it as a coordinate basis) is canonical and
reproducible.  The identity always sits at index 0.
"""

from __future__ import annotations

from dataclasses import dataclass


class GroupError(ValueError):
    pass


class ClosureCapExceeded(GroupError):
    pass


class NotNormalError(GroupError):
    """Conjugation left the candidate subgroup; carries a witness pair."""

    def __init__(self, gamma_index: int, sigma_index: int):
        self.gamma_index = gamma_index
        self.sigma_index = sigma_index
        super().__init__(
            f"subgroup is not normal: conjugating element {sigma_index} "
            f"by element {gamma_index} leaves the subgroup")


class Permutation:
    """A permutation of {0, ..., n-1} stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(x) for x in images)
        n = len(images)
        if sorted(images) != list(range(n)):
            raise GroupError(f"{images} is not a bijection of range({n})")
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @staticmethod
    def identity(degree: int) -> "Permutation":
        return Permutation(range(degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (a * b)(x) = a(b(x))."""
        if self.degree != other.degree:
            raise GroupError("degree mismatch")
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.degree)))

    def inverse(self) -> "Permutation":
        out = [0] * self.degree
        for i, x in enumerate(self.images):
            out[x] = i
        return Permutation(out)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


class FiniteGroup:
    """A finite group with canonical element order and full multiplication tables.

    `mult[i][j]` is the index of elements[i] * elements[j]; `inv[k]` the index
    of the inverse.  `bfs_parent`/`bfs_gen` record, for each non-identity
    element, the BFS edge it was discovered through: elements[k] =
    elements[bfs_parent[k]] * generators[bfs_gen[k]].  Immutable after
    construction and safe for concurrent reads.
    """

    __slots__ = ("degree", "order", "elements", "mult", "inv",
                 "gen_indices", "bfs_parent", "bfs_gen", "_index")

    def __init__(self, elements, mult, inv, gen_indices, bfs_parent, bfs_gen):
        object.__setattr__(self, "elements", tuple(elements))
        object.__setattr__(self, "order", len(self.elements))
        object.__setattr__(self, "degree", self.elements[0].degree)
        object.__setattr__(self, "mult", tuple(tuple(r) for r in mult))
        object.__setattr__(self, "inv", tuple(inv))
        object.__setattr__(self, "gen_indices", tuple(gen_indices))
        object.__setattr__(self, "bfs_parent", tuple(bfs_parent))
        object.__setattr__(self, "bfs_gen", tuple(bfs_gen))
        object.__setattr__(self, "_index", {p.images: i for i, p in enumerate(self.elements)})

    def __setattr__(self, name, value):
        raise AttributeError("FiniteGroup is immutable")

    def index_of(self, perm: Permutation) -> int:
        return self._index[perm.images]

    def product(self, i: int, j: int) -> int:
        return self.mult[i][j]

    def inverse_of(self, i: int) -> int:
        return self.inv[i]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(order {self.order}, degree {self.degree})"


def close_generators(gens, order_cap: int = 24) -> FiniteGroup:
    """Close a list of permutations into a group by BFS from the identity.

    Raises ClosureCapExceeded if more than order_cap elements appear, and
    GroupError if the generators have mismatched degrees.
    """
    gens = list(gens)
    if gens:
        degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise GroupError("generator degree mismatch")
    else:
        degree = 1
    identity = Permutation.identity(degree)
    elements = [identity]
    index = {identity.images: 0}
    bfs_parent = [-1]
    bfs_gen = [-1]
    cursor = 0
    while cursor < len(elements):
        current = elements[cursor]
        for g_i, g in enumerate(gens):
            candidate = current * g
            if candidate.images not in index:
                if len(elements) >= order_cap:
                    raise ClosureCapExceeded(
                        f"closure exceeds order cap {order_cap}")
                index[candidate.images] = len(elements)
                elements.append(candidate)
                bfs_parent.append(cursor)
                bfs_gen.append(g_i)
        cursor += 1
    n = len(elements)
    mult = [[index[(elements[i] * elements[j]).images] for j in range(n)] for i in range(n)]
    inv = [index[elements[i].inverse().images] for i in range(n)]
    gen_indices = [index[g.images] for g in gens]
    return FiniteGroup(elements, mult, inv, gen_indices, bfs_parent, bfs_gen)


@dataclass(frozen=True)
class NormalSubgroup:
    """A verified normal subgroup, stored as sorted element indices."""

    group: FiniteGroup
    members: tuple[int, ...]
    gen_indices: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, index: int) -> bool:
        return index in set(self.members)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_full(self) -> bool:
        return self.order == self.group.order

    def __repr__(self) -> str:
        return f"NormalSubgroup(order {self.order} in group of order {self.group.order})"


def subgroup_closure(group: FiniteGroup, gen_indices) -> NormalSubgroup:
    """Close chosen elements into a subgroup and verify it is normal.

    The normality check is exhaustive over all (group element, subgroup
    element) pairs; on failure a NotNormalError carries the witness pair.
    """
    gen_indices = [int(i) for i in gen_indices]
    for i in gen_indices:
        if not 0 <= i < group.order:
            raise GroupError(f"element index {i} out of range")
    members = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gen_indices:
            y = group.mult[x][g]
            if y not in members:
                members.add(y)
                frontier.append(y)
    # closure under inverses is automatic in a finite group, but cheap to confirm
    for m in list(members):
        members.add(group.inv[m])
    member_tuple = tuple(sorted(members))
    member_set = set(member_tuple)
    for g in range(group.order):
        g_inv = group.inv[g]
        for s in member_tuple:
            conj = group.mult[group.mult[g][s]][g_inv]
            if conj not in member_set:
                raise NotNormalError(g, s)
    return NormalSubgroup(group, member_tuple, tuple(gen_indices))


def trivial_subgroup(group: FiniteGroup) -> NormalSubgroup:
    return subgroup_closure(group, [])


def full_subgroup(group: FiniteGroup) -> NormalSubgroup:
    return subgroup_closure(group, list(range(group.order)))

"""The Grassmannian G(l, m) over GF(q) as an indexed point set.

Points are :class:`~schubcode.linalg.Subspace` values.  Lines are pairs
``(U, W)`` with ``dim U = l - 1``, ``dim W = l + 1`` and ``U < W``; the
points of a line are the l-spaces squeezed between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .fieldcore import FieldSpec, gaussian_binomial
from .linalg import (
    Subspace,
    complement_units,
    determinant,
    enumerate_subspaces,
    extend_greedily,
    image_of,
    rank,
    subspace_from_rows,
    subspace_intersection,
    subspace_leq,
    subspace_sum,
    unit,
)


def index_tuples(ell: int, m: int) -> list[tuple[int, ...]]:
    """I(l, m) in lexicographic order, 1-based entries."""
    return [tuple(a + 1 for a in c) for c in combinations(range(m), ell)]


def minors(basis: Sequence[Sequence[int]], F: FieldSpec) -> tuple[int, ...]:
    """All l x l minors of an l x m matrix, columns in lexicographic order."""
    ell = len(basis)
    m = len(basis[0]) if basis else 0
    if ell == 1:
        return tuple(basis[0])
    out = []
    for cols in combinations(range(m), ell):
        out.append(determinant([[row[c] for c in cols] for row in basis], F))
    return tuple(out)


def plucker(P: Subspace, ell: int | None = None) -> tuple[int, ...]:
    """Normalised Plucker vector: first nonzero coordinate scaled to 1."""
    if ell is not None and P.dim != ell:
        raise ValueError(f"expected a {ell}-dimensional subspace, got dim {P.dim}")
    if P.dim == 0:
        raise ValueError("the zero subspace has no Plucker vector")
    F = P.field
    v = minors(P.basis, F)
    lead = next(x for x in v if x)
    if lead != 1:
        inv = F.inv(lead)
        v = tuple(F.mul(inv, x) for x in v)
    return v


def injection_distance(P: Subspace, Q: Subspace) -> int:
    # dim(P & Q) = dim P + dim Q - dim(P + Q)
    if P.dim != Q.dim:
        raise ValueError("points must have equal dimension")
    s = rank(list(P.basis) + list(Q.basis), P.field)
    return s - P.dim


def disc_contains(P: Subspace, Q: Subspace, i: int) -> bool:
    if i < 0:
        return False
    return injection_distance(P, Q) <= i


@dataclass(frozen=True)
class Line:
    U: Subspace
    W: Subspace

    def __post_init__(self):
        if self.W.dim != self.U.dim + 2:
            raise ValueError("a line needs dim W = dim U + 2")
        if not subspace_leq(self.U, self.W):
            raise ValueError("a line needs U inside W")

    @property
    def order_key(self):
        return (self.U.order_key, self.W.order_key)

    def points(self) -> tuple[Subspace, ...]:
        return line_points(self)

    def __contains__(self, P: Subspace) -> bool:
        return subspace_leq(self.U, P) and subspace_leq(P, self.W)


@lru_cache(maxsize=None)
def line_points(L: Line) -> tuple[Subspace, ...]:
    """The q + 1 points of ``L`` in canonical order."""
    F = L.U.field
    m = L.U.ambient
    chain = extend_greedily(L.U, L.W.basis)
    # the two vectors added on the way from U to W
    added = [v for v in L.W.basis if not chain[0].contains_vector(v)]
    w1 = added[0]
    w2 = next(v for v in added[1:] if not chain[1].contains_vector(v))
    base = list(L.U.basis)
    pts = [subspace_from_rows(base + [list(w1)], F, m)]
    for c in F.elements():
        v = [F.add(a, F.mul(c, b)) for a, b in zip(w2, w1)]
        pts.append(subspace_from_rows(base + [v], F, m))
    return tuple(sorted(set(pts), key=lambda s: s.order_key))


def line_through_two(P: Subspace, Q: Subspace) -> Line | None:
    if injection_distance(P, Q) != 1:
        return None
    return Line(subspace_intersection(P, Q), subspace_sum(P, Q))


def hyperplanes_of(P: Subspace) -> list[Subspace]:
    """Codimension-one subspaces of ``P`` in canonical order."""
    F = P.field
    subs = [image_of(S, P.basis, F, P.ambient) for S in enumerate_subspaces(P.dim, P.dim - 1, F)]
    return sorted(subs, key=lambda s: s.order_key)


def superspaces_of(P: Subspace, inside: Subspace | None = None) -> list[Subspace]:
    """Subspaces of dimension ``dim P + 1`` containing ``P`` (and inside ``inside``)."""
    F = P.field
    m = P.ambient
    if inside is None:
        comp = [unit(m, j) for j in complement_units(P)]
    else:
        comp = _complement_vectors(P, inside)
    out = []
    for S in enumerate_subspaces(len(comp), 1, F):
        v = image_of(S, comp, F, m).basis[0]
        out.append(subspace_from_rows(list(P.basis) + [list(v)], F, m))
    return sorted(out, key=lambda s: s.order_key)


def _complement_vectors(P: Subspace, W: Subspace) -> list[tuple[int, ...]]:
    """Basis rows of ``W`` that extend ``P`` to ``W`` (P inside W)."""
    out = []
    cur = P
    for v in W.basis:
        if not cur.contains_vector(v):
            out.append(v)
            cur = subspace_from_rows(list(cur.basis) + [list(v)], P.field, P.ambient)
    return out


@lru_cache(maxsize=None)
def lines_through(P: Subspace) -> tuple[Line, ...]:
    """All lines of the Grassmannian through ``P`` in canonical (U, W) order.

    There are [l 1]_q * [m - l 1]_q of them.
    """
    if P.dim == 0 or P.dim == P.ambient:
        return ()
    Us = hyperplanes_of(P)
    Ws = superspaces_of(P)
    return tuple(Line(U, W) for U in Us for W in Ws)


def line_disc_intersection(L: Line, P: Subspace, i: int) -> list[Subspace]:
    return [T for T in line_points(L) if disc_contains(P, T, i)]


class GrassmannIndex:
    """All l-subspaces of GF(q)^m in canonical order with a reverse map."""

    def __init__(self, ell: int, m: int, F: FieldSpec):
        self.ell, self.m, self.field = ell, m, F
        self.points: list[Subspace] = list(enumerate_subspaces(m, ell, F))
        self.position: dict[Subspace, int] = {P: i for i, P in enumerate(self.points)}
        assert len(self.points) == gaussian_binomial(m, ell, F.q)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def all_lines(self) -> list[Line]:
        """Every line of G(l, m), each once, in canonical (U, W) order."""
        F, m, ell = self.field, self.m, self.ell
        out = []
        for U in enumerate_subspaces(m, ell - 1, F):
            for W in enumerate_subspaces(m, ell + 1, F):
                if subspace_leq(U, W):
                    out.append(Line(U, W))
        return out


def flag_vectors_through(P: Subspace) -> list[tuple[int, ...]]:
    """P's basis followed by the complementary unit vectors: an ordered basis of V through P."""
    return list(P.basis) + [unit(P.ambient, j) for j in complement_units(P)]


"""Exact matrix and subspace algebra over GF(q).

Matrices are sequences of rows of field-element integers.  A
:class:`Subspace` is stored by the reduced row-echelon form of a basis,
which is unique, so equality and hashing are plain tuple comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from itertools import combinations, product
from typing import Iterator, Sequence

from .fieldcore import FieldSpec

Row = tuple[int, ...]


def rref(M: Sequence[Sequence[int]], F: FieldSpec) -> tuple[list[list[int]], int, tuple[int, ...]]:
    """Reduced row-echelon form of ``M`` over ``F``.

    Returns ``(R, rank, pivots)``; ``R`` has the same shape as ``M`` with the
    zero rows at the bottom.
    """
    R = [list(r) for r in M]
    if not R:
        return R, 0, ()
    nrows, ncols = len(R), len(R[0])
    pivots = []
    r = 0
    prime = F.is_prime
    p = F.p
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if R[i][c]), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = F.inv(R[r][c])
        if inv != 1:
            R[r] = [F.mul(inv, x) for x in R[r]]
        row = R[r]
        for i in range(nrows):
            f = R[i][c]
            if i != r and f:
                if prime:
                    R[i] = [(x - f * y) % p for x, y in zip(R[i], row)]
                else:
                    nf = F.neg(f)
                    R[i] = [F.add(x, F.mul(nf, y)) for x, y in zip(R[i], row)]
        pivots.append(c)
        r += 1
    return R, r, tuple(pivots)


def rank(M: Sequence[Sequence[int]], F: FieldSpec) -> int:
    return rref(M, F)[1]


def kernel(M: Sequence[Sequence[int]], ncols: int, F: FieldSpec) -> list[list[int]]:
    """Basis of the right kernel ``{x : M x = 0}``, one vector per free column.

    Vectors come out in free-column order with a 1 at their free column.
    """
    R, rk, pivots = rref(M, F) if M else ([], 0, ())
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [0] * ncols
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = F.neg(R[i][f])
        basis.append(x)
    return basis


def solve_dependence(vectors: Sequence[Sequence[int]], F: FieldSpec) -> tuple[int, ...] | None:
    """Nonzero ``lam`` with ``sum(lam[i] * vectors[i]) == 0``, or ``None``.

    Deterministic: the first kernel basis vector of the matrix whose
    columns are ``vectors``.
    """
    if not vectors:
        return None
    length = len(vectors[0])
    if any(len(v) != length for v in vectors):
        raise ValueError("vectors must share a length")
    cols = [[v[j] for v in vectors] for j in range(length)]
    ker = kernel(cols, len(vectors), F)
    return tuple(ker[0]) if ker else None


@dataclass(frozen=True)
class Subspace:
    """A subspace of GF(q)^ambient held by its canonical RREF basis."""

    ambient: int
    basis: tuple[Row, ...]
    field: FieldSpec = dc_field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(r) if x) for r in self.basis)

    @property
    def order_key(self) -> tuple:
        """Sort key reproducing :func:`enumerate_subspaces` order."""
        piv = self.pivots
        pset = set(piv)
        free = tuple(
            r[c] for r, pc in zip(self.basis, piv) for c in range(pc + 1, self.ambient) if c not in pset
        )
        return (piv, free)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersection(self, other)

    def contains_vector(self, v: Sequence[int]) -> bool:
        return rank(list(self.basis) + [list(v)], self.field) == self.dim

    def __repr__(self):
        return f"Subspace({[list(r) for r in self.basis]})"


def subspace_from_rows(M: Sequence[Sequence[int]], F: FieldSpec, ambient: int | None = None) -> Subspace:
    if ambient is None:
        if not M:
            raise ValueError("ambient dimension needed for an empty row list")
        ambient = len(M[0])
    if not M:
        return Subspace(ambient, (), F)
    R, rk, _ = rref(M, F)
    return Subspace(ambient, tuple(tuple(r) for r in R[:rk]), F)


def span(F: FieldSpec, ambient: int, *vectors: Sequence[int]) -> Subspace:
    return subspace_from_rows([list(v) for v in vectors], F, ambient)


def unit(m: int, i: int) -> Row:
    v = [0] * m
    v[i] = 1
    return tuple(v)


def coordinate_subspace(F: FieldSpec, m: int, indices) -> Subspace:
    """span(e_i for i in indices), indices 0-based."""
    return span(F, m, *(unit(m, i) for i in indices))


def _check_ambient(U: Subspace, W: Subspace) -> None:
    if U.ambient != W.ambient:
        raise ValueError(f"ambient mismatch: {U.ambient} != {W.ambient}")


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    _check_ambient(U, W)
    return subspace_from_rows(list(U.basis) + list(W.basis), U.field, U.ambient)


def subspace_intersection(U: Subspace, W: Subspace) -> Subspace:
    _check_ambient(U, W)
    F = U.field
    if U.dim == 0 or W.dim == 0:
        return Subspace(U.ambient, (), F)
    # x U = y W  <=>  (x, -y) in left kernel of [U; W]
    stacked = list(U.basis) + list(W.basis)
    cols = [[r[j] for r in stacked] for j in range(U.ambient)]
    vecs = []
    for coeffs in kernel(cols, len(stacked), F):
        v = [0] * U.ambient
        for c, r in zip(coeffs[: U.dim], U.basis):
            if c:
                v = [F.add(a, F.mul(c, b)) for a, b in zip(v, r)]
        vecs.append(v)
    return subspace_from_rows(vecs, F, U.ambient)


def subspace_leq(U: Subspace, W: Subspace) -> bool:
    _check_ambient(U, W)
    if U.dim > W.dim:
        return False
    return rank(list(W.basis) + list(U.basis), U.field) == W.dim


def enumerate_subspaces(m: int, k: int, F: FieldSpec) -> Iterator[Subspace]:
    """Every k-subspace of GF(q)^m exactly once, in canonical order.

    Pivot patterns in lexicographic order, then free entries (read
    row-major) counted as base-q digits, most significant first.
    """
    if not 0 <= k <= m:
        raise ValueError("need 0 <= k <= m")
    for piv in combinations(range(m), k):
        pset = set(piv)
        slots = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, m) if c not in pset]
        for vals in product(range(F.q), repeat=len(slots)):
            rows = [[0] * m for _ in range(k)]
            for r, pc in enumerate(piv):
                rows[r][pc] = 1
            for (r, c), v in zip(slots, vals):
                rows[r][c] = v
            yield Subspace(m, tuple(tuple(r) for r in rows), F)


def complement_units(S: Subspace) -> list[int]:
    """Non-pivot coordinate indices; their unit vectors complement ``S``."""
    pset = set(S.pivots)
    return [j for j in range(S.ambient) if j not in pset]


def extend_greedily(S: Subspace, candidates: Sequence[Sequence[int]]) -> list[Subspace]:
    """Chain S = S_0 < S_1 < ... adding each candidate that is not already in the span."""
    chain = [S]
    cur = S
    for v in candidates:
        if not cur.contains_vector(v):
            cur = subspace_from_rows(list(cur.basis) + [list(v)], S.field, S.ambient)
            chain.append(cur)
    return chain


def image_of(sub_in_coords: Subspace, basis: Sequence[Sequence[int]], F: FieldSpec, ambient: int) -> Subspace:
    """Map a subspace of GF(q)^r (r = len(basis)) into GF(q)^ambient via the given basis rows."""
    rows = []
    for coeffs in sub_in_coords.basis:
        v = [0] * ambient
        for c, b in zip(coeffs, basis):
            if c:
                v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
        rows.append(v)
    return subspace_from_rows(rows, F, ambient)


def determinant(M: Sequence[Sequence[int]], F: FieldSpec) -> int:
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    if n == 2:
        return F.sub(F.mul(M[0][0], M[1][1]), F.mul(M[0][1], M[1][0]))
    A = [list(r) for r in M]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = F.neg(det)
        det = F.mul(det, A[c][c])
        inv = F.inv(A[c][c])
        for i in range(c + 1, n):
            f = F.mul(A[i][c], inv)
            if f:
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[c])]
    return det

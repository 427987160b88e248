"""Schubert varieties in G(l, m) and the lines they contain."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .fieldcore import FieldSpec, qint
from .grassgeo import GrassmannIndex, Line, line_points, lines_through
from .linalg import Subspace, coordinate_subspace, rank, span


class SchubertError(ValueError):
    pass


def validate_alpha(alpha: Sequence[int], ell: int, m: int) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != ell or not all(1 <= a <= m for a in alpha) or any(
        a >= b for a, b in zip(alpha, alpha[1:])
    ):
        raise SchubertError(f"alpha={alpha} is not in I({ell},{m})")
    return alpha


def is_trivial_alpha(alpha: Sequence[int]) -> bool:
    return tuple(alpha) == tuple(range(1, len(alpha) + 1))


def _meet_dim(P: Subspace, A: Subspace) -> int:
    return P.dim + A.dim - rank(list(P.basis) + list(A.basis), P.field)


@dataclass(frozen=True)
class Flag:
    """A partial flag A_1 < ... < A_l with dim A_i = alpha_i."""

    alpha: tuple[int, ...]
    spaces: tuple[Subspace, ...]

    @property
    def ell(self) -> int:
        return len(self.alpha)

    def meet_dims(self, S: Subspace) -> tuple[int, ...]:
        return tuple(_meet_dim(S, A) for A in self.spaces)


def standard_flag(alpha: Sequence[int], m: int, F: FieldSpec) -> Flag:
    """Coordinate flag A_i = span(e_1, ..., e_{alpha_i})."""
    alpha = validate_alpha(alpha, len(alpha), m)
    return Flag(alpha, tuple(coordinate_subspace(F, m, range(a)) for a in alpha))


def flag_from_vectors(vectors: Sequence[Sequence[int]], alpha: Sequence[int], F: FieldSpec) -> Flag:
    """A_i = span of the first alpha_i vectors of an ordered basis of V."""
    m = len(vectors[0])
    alpha = validate_alpha(alpha, len(alpha), m)
    return Flag(alpha, tuple(span(F, m, *vectors[:a]) for a in alpha))


def schubert_contains(flag: Flag, P: Subspace) -> bool:
    return all(d >= i for i, d in enumerate(flag.meet_dims(P), start=1))


class SchubertIndex:
    """Points of the Schubert variety, in the ambient canonical order."""

    def __init__(self, flag: Flag, grass: GrassmannIndex):
        self.flag = flag
        self.grass = grass
        self.points: list[Subspace] = [P for P in grass.points if schubert_contains(flag, P)]
        self.position: dict[Subspace, int] = {P: i for i, P in enumerate(self.points)}

    def __len__(self):
        return len(self.points)

    def __contains__(self, P: Subspace) -> bool:
        return P in self.position


def enumerate_schubert(flag: Flag, grass: GrassmannIndex) -> SchubertIndex:
    return SchubertIndex(flag, grass)


@dataclass(frozen=True)
class SchubertParams:
    n: int
    k: int
    d: int
    delta: int


def delta(alpha: Sequence[int]) -> int:
    return sum(a - i for i, a in enumerate(alpha, start=1))


def _int_det(M: list[list[int]]) -> int:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    assert det.denominator == 1
    return int(det)


def _binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def schubert_params(alpha: Sequence[int], ell: int, m: int, q: int) -> SchubertParams:
    """Length, dimension and minimum distance of C_alpha(l, m) from closed forms.

    n = sum over beta <= alpha of q^delta(beta), k is the determinant of
    binomials C(alpha_j - j + 1, i - j + 1), d = q^delta(alpha).
    """
    alpha = validate_alpha(alpha, ell, m)
    n = sum(
        q ** delta(b)
        for b in (tuple(x + 1 for x in c) for c in combinations(range(m), ell))
        if all(bi <= ai for bi, ai in zip(b, alpha))
    )
    k = _int_det(
        [[_binom(alpha[j] - (j + 1) + 1, (i + 1) - (j + 1) + 1) for j in range(ell)] for i in range(ell)]
    )
    dl = delta(alpha)
    if ell == 2 and alpha[1] == m:
        assert k == alpha[0] * (2 * m - alpha[0] - 1) // 2
    return SchubertParams(n=n, k=k, d=q**dl, delta=dl)


def grassmann_params(ell: int, m: int, q: int) -> SchubertParams:
    from .fieldcore import gaussian_binomial

    return SchubertParams(gaussian_binomial(m, ell, q), comb(m, ell), q ** (ell * (m - ell)), ell * (m - ell))


@lru_cache(maxsize=None)
def is_line_in_schubert(flag: Flag, L: Line) -> bool:
    """Containment of a line in the Schubert variety from (U, W) alone.

    Requires W inside A_l, dim(U & A_i) >= i - 1 and dim(W & A_i) >= i for
    all i, and then either dim(U & A_i) >= i for every i < l, or
    dim(W & A_i) == i + 1 at every i where dim(U & A_i) == i - 1.
    """
    ell = flag.ell
    top = flag.spaces[-1]
    if _meet_dim(L.W, top) != L.W.dim:
        return False
    du = flag.meet_dims(L.U)
    dw = flag.meet_dims(L.W)
    for i in range(1, ell + 1):
        if du[i - 1] < i - 1 or dw[i - 1] < i:
            return False
    if all(du[i - 1] >= i for i in range(1, ell)):
        return True
    return all(dw[i - 1] == i + 1 for i in range(1, ell + 1) if du[i - 1] == i - 1)


def line_in_schubert_pointwise(flag: Flag, L: Line) -> bool:
    return all(schubert_contains(flag, T) for T in line_points(L))


def lines_through_point_in_schubert(flag: Flag, P: Subspace) -> list[Line]:
    """Lines through ``P`` lying in the Schubert variety, canonical order.

    For l = 2 with alpha_2 = m there are [2 1][m-2 1] of them when P is in
    A_1 and q[alpha_1 - 1 1] + [m-2 1] otherwise.
    """
    if not schubert_contains(flag, P):
        raise SchubertError("point is not in the Schubert variety")
    return [L for L in lines_through(P) if is_line_in_schubert(flag, L)]


def lines_through_point_count(q: int, m: int, alpha1: int, in_A1: bool) -> int:
    if in_A1:
        return qint(2, q) * qint(m - 2, q)
    return q * qint(alpha1 - 1, q) + qint(m - 2, q)


def disc_alpha(ell: int, m: int, i: int) -> tuple[int, ...]:
    """alpha = (i+1, ..., l, m-i+1, ..., m): the disc of radius i as a Schubert variety."""
    return tuple(range(i + 1, ell + 1)) + tuple(range(m - i + 1, m + 1))

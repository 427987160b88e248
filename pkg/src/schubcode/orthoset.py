"""Parity checks orthogonal on a coordinate, for Schubert codes with l = 2.

For a centre point P of the Schubert variety Omega (alpha = (a1, m)) the
checks come in two tiers:

* weight 3: P plus a pair of other points on a line of Omega through P
  (``build_J1``);
* weight 5: a weight-3 check {P, Q1, Q2} on a line L(U1, Wc) through P,
  cancelled at Q1 and Q2 by weight-3 checks on lines through Q1 and Q2 that
  leave the radius-1 disc around P (``build_A2`` when P is inside A_1,
  ``build_B2`` otherwise).

Every check is scaled to coefficient 1 at P, so stacking a set gives an
all-ones centre column and at most one nonzero entry in every other column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .codecore import Code, ParityCheck, combine_checks, weight3_check
from .fieldcore import qint
from .grassgeo import Line, line_points, lines_through, superspaces_of
from .linalg import Subspace, extend_greedily, subspace_intersection, subspace_leq, span, unit
from .schubgeo import (
    SchubertError,
    is_line_in_schubert,
    lines_through_point_count,
    lines_through_point_in_schubert,
    schubert_contains,
)


class OrthosetError(ValueError):
    pass


@dataclass(frozen=True)
class FlagThroughPoint:
    """U1 < P = W_2 < W_3 < ... < W_m = V, with dim W_j = j."""

    center: Subspace
    U1: Subspace
    chain: tuple[Subspace, ...]
    in_A1: bool

    def W(self, j: int) -> Subspace:
        return self.chain[j - 2]


@dataclass
class LineFamily:
    level: int
    base: Line
    anchor: Subspace
    lines: list[Line]

    def __len__(self):
        return len(self.lines)


@dataclass
class OrthogonalCheckSet:
    center: int
    checks: list[ParityCheck] = field(default_factory=list)
    tiers: list[str] = field(default_factory=list)

    def __len__(self):
        return len(self.checks)

    def extend(self, other: "OrthogonalCheckSet") -> None:
        self.checks.extend(other.checks)
        self.tiers.extend(other.tiers)

    def matrix(self, n: int) -> np.ndarray:
        H = np.zeros((len(self.checks), n), dtype=np.int64)
        for r, chk in enumerate(self.checks):
            for p, c in chk.support:
                H[r, p] = c
        return H

    def is_orthogonal(self, n: int) -> bool:
        """All-ones centre column and weight <= 1 in every other column."""
        H = self.matrix(n)
        if not len(H):
            return True
        if not np.all(H[:, self.center] == 1):
            return False
        weights = np.count_nonzero(H, axis=0)
        weights[self.center] = 0
        return bool(np.all(weights <= 1))


def _require_ell2(code: Code) -> tuple[int, int]:
    spec = code.spec
    if spec.ell != 2 or spec.alpha is None or code.flag is None:
        raise OrthosetError("orthogonal checks are built for Schubert codes with l = 2 only")
    a1, a2 = spec.alpha
    if a2 != spec.m:
        raise OrthosetError("orthogonal checks need alpha_2 = m")
    if a1 < 2:
        raise OrthosetError("orthogonal checks need alpha_1 >= 2")
    return a1, spec.m


def _point(code: Code, P) -> Subspace:
    return code.points[P] if isinstance(P, (int, np.integer)) else P


def build_flag(P, code: Code) -> FlagThroughPoint:
    """Deterministic flag through ``P`` adapted to A_1.

    P inside A_1: U1 is spanned by P's first basis row and the chain grows
    by unit vectors in index order, so it passes through A_1 at dimension
    a1.  P not inside A_1: U1 is spanned by the first basis row of P outside
    A_1, W_i = P + (first i - 2 vectors extending P & A_1 to A_1) up to
    W_{a1+1} = A_1 + U1, then unit vectors in index order.
    """
    a1, m = _require_ell2(code)
    P = _point(code, P)
    F = code.field
    A1 = code.flag.spaces[0]
    if not schubert_contains(code.flag, P):
        raise OrthosetError("point is not in the Schubert variety")
    units = [unit(m, j) for j in range(m)]
    if subspace_leq(P, A1):
        U1 = span(F, m, P.basis[0])
        chain = extend_greedily(P, units)
        in_A1 = True
    else:
        u0 = subspace_intersection(P, A1)
        v = next(r for r in P.basis if not A1.contains_vector(r))
        U1 = span(F, m, v)
        ext = extend_greedily(u0, units[:a1])
        added = [next(r for r in b.basis if not a.contains_vector(r)) for a, b in zip(ext, ext[1:])]
        chain = extend_greedily(P, added + units[a1:])
        in_A1 = False
    chain = tuple(chain)
    if not in_A1 and chain[a1 - 1] != A1 + U1:
        raise OrthosetError("flag construction failed")  # internal invariant
    if [W.dim for W in chain] != list(range(2, m + 1)):
        raise OrthosetError("flag construction failed")  # internal invariant
    return FlagThroughPoint(P, U1, chain, in_A1)


def pair_checks_on_line(X: Subspace, L: Line, code: Code) -> list[ParityCheck]:
    """floor(q/2) weight-3 checks {X, T1, T2} from consecutive pairs of the other points of ``L``.

    Scaled to coefficient 1 at X; with q odd the last point is left out.
    """
    key = ("pairs", X, L)
    if key not in code.cache:
        F = code.field
        others = [T for T in line_points(L) if T != X]
        pos = code.position[X]
        code.cache[key] = [
            weight3_check(X, others[2 * k], others[2 * k + 1], code).normalized_at(pos, F) for k in range(F.q // 2)
        ]
    return code.cache[key]


def build_J1(P, code: Code) -> OrthogonalCheckSet:
    """Weight-3 checks on the lines of Omega through ``P``."""
    _require_ell2(code)
    P = _point(code, P)
    try:
        lines = lines_through_point_in_schubert(code.flag, P)
    except SchubertError as exc:
        raise OrthosetError(str(exc)) from None
    out = OrthogonalCheckSet(code.position[P])
    for L in lines:
        for chk in pair_checks_on_line(P, L, code):
            out.checks.append(chk)
            out.tiers.append("J1")
    return out


def level_lines(ftp: FlagThroughPoint, i: int) -> list[Line]:
    """Lines L(U1, Wc) with P < Wc <= W_i and Wc not inside W_{i-1}."""
    P = ftp.center
    Wi, Wprev = ftp.W(i), ftp.W(i - 1)
    return [Line(ftp.U1, Wc) for Wc in superspaces_of(P, inside=Wi) if not subspace_leq(Wc, Wprev)]


def _check_family_args(i: int, Wc: Subspace, P: Subspace, Q: Subspace, ftp: FlagThroughPoint, top: int) -> None:
    if not 3 <= i <= top:
        raise OrthosetError(f"level i={i} outside 3..{top}")
    if ftp.center != P:
        raise OrthosetError("flag is not centred at P")
    if Wc.dim != 3 or not subspace_leq(P, Wc):
        raise OrthosetError("Wc must be a 3-space containing P")
    if not subspace_leq(Wc, ftp.W(i)) or subspace_leq(Wc, ftp.W(i - 1)):
        raise OrthosetError(f"Wc must lie in W_{i} but not in W_{i - 1}")
    if Q == P or Q not in Line(ftp.U1, Wc):
        raise OrthosetError("Q must be a point of L(U1, Wc) other than P")


def line_family_L(i: int, Wc: Subspace, P: Subspace, Q: Subspace, ftp: FlagThroughPoint, code: Code) -> LineFamily:
    """Lines L(U, W) of Omega through Q with U != U1 and W not inside W_i (P inside A_1)."""
    a1, _ = _require_ell2(code)
    if not ftp.in_A1:
        raise OrthosetError("family L is for centres inside A_1")
    _check_family_args(i, Wc, P, Q, ftp, a1)
    Wi = ftp.W(i)
    members = [
        L
        for L in lines_through(Q)
        if L.U != ftp.U1 and not subspace_leq(L.W, Wi) and is_line_in_schubert(code.flag, L)
    ]
    return LineFamily(i, Line(ftp.U1, Wc), Q, members)


def line_family_K(i: int, Wc: Subspace, P: Subspace, Q: Subspace, ftp: FlagThroughPoint, code: Code) -> LineFamily:
    """Lines of Omega through Q leaving the radius-1 disc of P (P not inside A_1).

    Either U = Q & A_1 with W not inside W_i, or U is neither Q & A_1 nor
    U1 and W sits inside W_{a1+1} but not inside W_i.
    """
    a1, _ = _require_ell2(code)
    if ftp.in_A1:
        raise OrthosetError("family K is for centres outside A_1")
    _check_family_args(i, Wc, P, Q, ftp, a1 + 1)
    A1 = code.flag.spaces[0]
    QA = subspace_intersection(Q, A1)
    Wi, Wtop = ftp.W(i), ftp.W(a1 + 1)
    members = []
    for L in lines_through(Q):
        if not is_line_in_schubert(code.flag, L) or subspace_leq(L.W, Wi):
            continue
        if L.U == QA or (L.U != ftp.U1 and subspace_leq(L.W, Wtop)):
            members.append(L)
    return LineFamily(i, Line(ftp.U1, Wc), Q, members)


def build_weight5(
    base: ParityCheck, Q1: Subspace, Q2: Subspace, line1: Line, line2: Line, k: int, code: Code
) -> ParityCheck:
    """base + lam1 * w1 + lam2 * w2 with w_j the k-th pair check on line_j around Q_j.

    lam_j = -base[Q_j] / w_j[Q_j] cancels Q_j; the result must have weight 5.
    """
    F = code.field
    p1, p2 = code.position[Q1], code.position[Q2]
    w1 = pair_checks_on_line(Q1, line1, code)[k]
    w2 = pair_checks_on_line(Q2, line2, code)[k]
    lam1 = F.neg(F.div(base.coef(p1), w1.coef(p1)))
    lam2 = F.neg(F.div(base.coef(p2), w2.coef(p2)))
    nu = combine_checks(F, (1, base), (lam1, w1), (lam2, w2))
    if nu.weight != 5:
        raise OrthosetError("degenerate weight-5 combination")
    return nu


def _build_tier2(P, code: Code, tier: str) -> OrthogonalCheckSet:
    a1, _ = _require_ell2(code)
    P = _point(code, P)
    ftp = build_flag(P, code)
    F = code.field
    pos = code.position[P]
    out = OrthogonalCheckSet(pos)
    if tier == "A2":
        if not ftp.in_A1:
            raise OrthosetError("A2 checks are for centres inside A_1")
        family, top = line_family_L, a1
    else:
        if ftp.in_A1:
            raise OrthosetError("B2 checks are for centres outside A_1")
        family, top = line_family_K, a1 + 1
    for i in range(3, top + 1):
        for base_line in level_lines(ftp, i):
            others = [T for T in line_points(base_line) if T != P]
            for kb in range(F.q // 2):
                Q1, Q2 = others[2 * kb], others[2 * kb + 1]
                base = weight3_check(P, Q1, Q2, code).normalized_at(pos, F)
                f1 = family(i, base_line.W, P, Q1, ftp, code)
                f2 = family(i, base_line.W, P, Q2, ftp, code)
                if len(f1) != len(f2):
                    raise OrthosetError("families through Q1 and Q2 differ in size")
                for l1, l2 in zip(f1.lines, f2.lines):
                    for k in range(F.q // 2):
                        nu = build_weight5(base, Q1, Q2, l1, l2, k, code)
                        out.checks.append(nu.normalized_at(pos, F))
                        out.tiers.append(tier)
    return out


def build_A2(P, code: Code) -> OrthogonalCheckSet:
    """Weight-5 checks for a centre inside A_1 (empty when a1 = 2)."""
    return _build_tier2(P, code, "A2")


def build_B2(P, code: Code) -> OrthogonalCheckSet:
    """Weight-5 checks for a centre outside A_1."""
    return _build_tier2(P, code, "B2")


def build_full(P, code: Code) -> OrthogonalCheckSet:
    P = _point(code, P)
    out = build_J1(P, code)
    ftp = build_flag(P, code)
    out.extend(build_A2(P, code) if ftp.in_A1 else build_B2(P, code))
    return out


def build_all(code: Code) -> list[OrthogonalCheckSet]:
    """One orthogonal set per coordinate, in coordinate order."""
    return [build_full(P, code) for P in code.points]


# ---------------------------------------------------------------------------
# count formulas


def half(q: int) -> int:
    return q // 2


def j1_count(q: int, m: int, a1: int, in_A1: bool) -> int:
    return half(q) * lines_through_point_count(q, m, a1, in_A1)


def family_L_size(q: int, m: int, i: int) -> int:
    return (qint(2, q) - 1) * (qint(m - 2, q) - qint(i - 2, q))


def family_K_size(q: int, m: int, a1: int, i: int) -> int:
    return (qint(m - 2, q) - qint(i - 2, q)) + (q - 1) * (qint(a1 - 1, q) - qint(i - 2, q))


def level_line_count(q: int, i: int) -> int:
    return qint(i - 2, q) - qint(i - 3, q)


def a2_level_count(q: int, m: int, i: int) -> int:
    return half(q) ** 2 * level_line_count(q, i) * family_L_size(q, m, i)


def b2_level_count(q: int, m: int, a1: int, i: int) -> int:
    return half(q) ** 2 * level_line_count(q, i) * ((qint(m - 2, q) - qint(i - 2, q)) + (q ** (a1 - 1) - q ** (i - 2)))


def a2_sum(q: int, m: int, a1: int) -> int:
    return sum(a2_level_count(q, m, i) for i in range(3, a1 + 1))


def b2_sum(q: int, m: int, a1: int) -> int:
    return sum(b2_level_count(q, m, a1, i) for i in range(3, a1 + 2))


def a2_closed_printed(q: int, m: int, a1: int) -> Fraction:
    """Uncorrected closed form for the A2 count; it disagrees with the construction (nonzero at a1 = 2)."""
    return Fraction(half(q) ** 2, q - 1) * (q ** (m - 2) * qint(a1 - 1, q) - Fraction(q ** (2 * a1 - 2) - 1, q * q - 1))


def a2_closed_corrected(q: int, m: int, a1: int) -> Fraction:
    return Fraction(half(q) ** 2, q - 1) * (
        q ** (m - 2) * (qint(a1 - 1, q) - 1) - Fraction(q ** (2 * a1 - 2) - q * q, q * q - 1)
    )


def b2_closed_printed(q: int, m: int, a1: int) -> Fraction:
    """Uncorrected closed form for the B2 count; it disagrees with the construction."""
    return half(q) ** 2 * (
        (q ** (m - 2) + q ** (a1 - 1)) * qint(a1 - 1, q) - q * q * Fraction(q ** (2 * a1 - 4) - 1, q * q - 1)
    )


def b2_closed_proof(q: int, m: int, a1: int) -> Fraction:
    """Closed form of the B2 level sum; agrees with the construction."""
    return Fraction(half(q) ** 2, q - 1) * (
        (q ** (m - 2) + (q - 1) * q ** (a1 - 1)) * qint(a1 - 1, q) - q * q * Fraction(q ** (2 * a1 - 2) - 1, q * q - 1)
    )


def J_lower_bound(q: int, m: int, a1: int) -> int:
    """Guaranteed number of orthogonal checks on every coordinate of C_(a1, m)(2, m)."""
    if not 2 <= a1 <= m - 1:
        raise OrthosetError(f"alpha_1 = {a1} outside 2..{m - 1}")
    J = b2_closed_proof(q, m, a1) + half(q) * (q * qint(a1 - 1, q) + qint(m - 2, q))
    if J.denominator != 1:
        raise OrthosetError(f"non-integral J = {J}")
    return int(J)


def J_binary(m: int, a1: int) -> Fraction:
    """The q = 2 specialisation 2^(m+a1-3) + 2^(a1-1) - (2^(2a1-2) - 4)/3 - 3."""
    return 2 ** (m + a1 - 3) + 2 ** (a1 - 1) - Fraction(2 ** (2 * a1 - 2) - 4, 3) - 3


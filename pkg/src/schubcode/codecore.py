"""Grassmann and Schubert codes as explicit generator matrices.

The column of a point P is the vector of l x l minors of the canonical
RREF basis of P, so a codeword is the evaluation of a linear form in the
minors at every point.  Schubert codes keep only the columns of points in
the Schubert variety and drop dependent rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field
from itertools import product
from typing import Sequence

import numpy as np

from .fieldcore import FieldSpec
from .grassgeo import GrassmannIndex, index_tuples, line_through_two, minors
from .linalg import Subspace, kernel, rref, solve_dependence
from .schubgeo import Flag, SchubertIndex, is_trivial_alpha, schubert_params, standard_flag, validate_alpha

BRUTE_FORCE_LIMIT = 2**24


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class CodeSpec:
    ell: int
    m: int
    field: FieldSpec
    alpha: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 1 <= self.ell <= self.m:
            raise CodeError(f"need 1 <= l <= m, got l={self.ell}, m={self.m}")
        if self.alpha is not None:
            object.__setattr__(self, "alpha", validate_alpha(self.alpha, self.ell, self.m))
            if is_trivial_alpha(self.alpha):
                raise CodeError("trivial Schubert code: alpha = (1, ..., l)")

    @property
    def q(self) -> int:
        return self.field.q

    def header(self) -> str:
        parts = [self.q, self.m, self.ell] + list(self.alpha or ())
        return " ".join(map(str, parts))


@dataclass(frozen=True)
class ParityCheck:
    """Sparse dual codeword: ((position, coefficient), ...) with ascending positions."""

    support: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, coeffs: dict[int, int]) -> "ParityCheck":
        return cls(tuple(sorted((p, c) for p, c in coeffs.items() if c)))

    @property
    def positions(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.support)

    @property
    def weight(self) -> int:
        return len(self.support)

    def coef(self, pos: int) -> int:
        for p, c in self.support:
            if p == pos:
                return c
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.support)

    def scaled(self, c: int, F: FieldSpec) -> "ParityCheck":
        return ParityCheck(tuple((p, F.mul(c, x)) for p, x in self.support))

    def normalized_at(self, pos: int, F: FieldSpec) -> "ParityCheck":
        c = self.coef(pos)
        if not c:
            raise CodeError(f"check does not involve position {pos}")
        return self.scaled(F.inv(c), F)

    def dense(self, n: int) -> np.ndarray:
        v = np.zeros(n, dtype=np.int64)
        for p, c in self.support:
            v[p] = c
        return v


def combine_checks(F: FieldSpec, *terms: tuple[int, ParityCheck]) -> ParityCheck:
    """sum(lam * check) over (lam, check) terms."""
    acc: dict[int, int] = {}
    for lam, chk in terms:
        for p, c in chk.support:
            acc[p] = F.add(acc.get(p, 0), F.mul(lam, c))
    return ParityCheck.from_dict(acc)


@dataclass
class Code:
    """A Grassmann or Schubert code with its coordinate points."""

    spec: CodeSpec
    points: list[Subspace]
    G: np.ndarray
    row_labels: list[tuple[int, ...]]
    flag: Flag | None = None
    position: dict[Subspace, int] = dc_field(default_factory=dict)
    _columns: list[tuple[int, ...]] = dc_field(default_factory=list, repr=False)
    _dual: np.ndarray | None = dc_field(default=None, repr=False)
    cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.position:
            self.position = {P: i for i, P in enumerate(self.points)}

    @property
    def field(self) -> FieldSpec:
        return self.spec.field

    @property
    def n(self) -> int:
        return self.G.shape[1]

    @property
    def k(self) -> int:
        return self.G.shape[0]

    def column(self, pos: int) -> tuple[int, ...]:
        if not self._columns:
            self._columns = [tuple(int(x) for x in c) for c in self.G.T]
        return self._columns[pos]

    def encode(self, messages) -> np.ndarray:
        msgs = np.atleast_2d(np.asarray(messages, dtype=np.int64))
        out = self.field.matmul(msgs, self.G)
        return out if np.ndim(messages) > 1 else out[0]

    def dual_basis(self) -> np.ndarray:
        """(n - k) x n matrix whose rows span the dual code."""
        if self._dual is None:
            ker = kernel(self.G.tolist(), self.n, self.field)
            self._dual = np.array(ker, dtype=np.int64).reshape(len(ker), self.n)
        return self._dual

    def is_codeword(self, words) -> np.ndarray:
        w = np.atleast_2d(np.asarray(words, dtype=np.int64))
        H = self.dual_basis()
        if H.shape[0] == 0:
            return np.ones(w.shape[0], dtype=bool)
        return ~self.field.matmul(w, H.T).any(axis=1)

    def annihilates(self, check: ParityCheck) -> bool:
        F = self.field
        acc = np.zeros(self.k, dtype=np.int64)
        for p, c in check.support:
            acc = F.vadd(acc, F.vmul(c, self.G[:, p]))
        return not acc.any()


def _minor_matrix(points: Sequence[Subspace], F: FieldSpec) -> np.ndarray:
    cols = [minors(P.basis, F) for P in points]
    return np.array(cols, dtype=np.int64).T


def grassmann_generator(spec: CodeSpec, grass: GrassmannIndex | None = None) -> Code:
    """Generator of C(l, m): one row per minor label, one column per point."""
    F = spec.field
    grass = grass or GrassmannIndex(spec.ell, spec.m, F)
    G = _minor_matrix(grass.points, F)
    code = Code(
        CodeSpec(spec.ell, spec.m, F, None), list(grass.points), G, index_tuples(spec.ell, spec.m), None, grass.position
    )
    if _rank_np(G, F) != G.shape[0]:
        raise CodeError("Grassmann generator is rank deficient")
    return code


def _rank_np(G: np.ndarray, F: FieldSpec) -> int:
    return rref(G.tolist(), F)[1]


def schubert_generator(spec: CodeSpec, schub: SchubertIndex | None = None) -> Code:
    """Generator of C_alpha(l, m).

    The Grassmann generator restricted to the Schubert points, keeping the
    first k_alpha linearly independent minor rows (in label order).
    """
    if spec.alpha is None:
        raise CodeError("schubert_generator needs alpha")
    F = spec.field
    if schub is None:
        schub = SchubertIndex(standard_flag(spec.alpha, spec.m, F), GrassmannIndex(spec.ell, spec.m, F))
    full = _minor_matrix(schub.points, F)
    # independent rows = pivot columns of the transpose
    _, _, keep = rref(full.T.tolist(), F)
    G = full[list(keep)]
    labels = [index_tuples(spec.ell, spec.m)[i] for i in keep]
    params = schubert_params(spec.alpha, spec.ell, spec.m, F.q)
    if G.shape != (params.k, params.n):
        raise CodeError(f"built {G.shape}, expected ({params.k}, {params.n})")
    return Code(spec, list(schub.points), G, labels, schub.flag, schub.position)


def build_code(q_or_field, m: int, ell: int = 2, alpha: Sequence[int] | None = None) -> Code:
    from .fieldcore import gf

    F = q_or_field if isinstance(q_or_field, FieldSpec) else gf(q_or_field)
    spec = CodeSpec(ell, m, F, tuple(alpha) if alpha is not None else None)
    if spec.alpha is None:
        return grassmann_generator(spec)
    return schubert_generator(spec)


def weight3_check(P: Subspace, Q: Subspace, R: Subspace, code: Code) -> ParityCheck:
    """Weight-3 dual word supported on three collinear points.

    Coefficients are the solver's deterministic dependence of the three
    generator columns; no normalisation is applied.
    """
    if len({P, Q, R}) != 3:
        raise CodeError("points must be distinct")
    L = line_through_two(P, Q)
    if L is None or R not in L or line_through_two(P, R) is None:
        raise CodeError("points not collinear")
    try:
        pos = [code.position[X] for X in (P, Q, R)]
    except KeyError:
        raise CodeError("point is not a coordinate of this code") from None
    lam = solve_dependence([code.column(p) for p in pos], code.field)
    if lam is None or not all(lam):
        raise CodeError("collinear columns without full-support dependence")
    return ParityCheck.from_dict(dict(zip(pos, lam)))


def _span_block(rows: np.ndarray, F: FieldSpec) -> np.ndarray:
    """All F-combinations of ``rows``, shape (q**len(rows), n)."""
    block = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for r in rows:
        parts = [F.vadd(block, F.vmul(c, r)[None, :]) for c in range(F.q)]
        block = np.concatenate(parts, axis=0)
    return block


def min_distance_bruteforce(G: np.ndarray, F: FieldSpec, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """Minimum Hamming weight over all nonzero codewords, by enumeration."""
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    if F.q**k > limit:
        raise CodeError(f"q^k = {F.q}^{k} exceeds the brute-force guard {limit}")
    if k == 0:
        raise CodeError("zero code has no minimum distance")
    split = 0
    while split < k and F.q ** (split + 1) <= 4096:
        split += 1
    tail = _span_block(G[k - split :], F)
    tail_nonzero = tail.any(axis=1)
    best = n + 1
    for msg in product(range(F.q), repeat=k - split):
        head = np.zeros(n, dtype=np.int64)
        for c, r in zip(msg, G[: k - split]):
            if c:
                head = F.vadd(head, F.vmul(c, r))
        words = F.vadd(tail, head[None, :])
        wts = np.count_nonzero(words, axis=1)
        if not any(msg):
            wts = wts[tail_nonzero]
        if wts.size:
            best = min(best, int(wts.min()))
    return best


def _normalize(v: Sequence[int], F: FieldSpec) -> tuple[int, ...] | None:
    lead = next((x for x in v if x), 0)
    if not lead:
        return None
    inv = F.inv(lead)
    return tuple(F.mul(inv, x) for x in v)


def dual_min_distance_is_three(G: np.ndarray, F: FieldSpec) -> bool:
    """True iff the dual code has no words of weight <= 2 but has one of weight 3."""
    cols = [tuple(int(x) for x in c) for c in np.asarray(G).T]
    classes = []
    for c in cols:
        nc = _normalize(c, F)
        if nc is None:
            return False
        classes.append(nc)
    if len(set(classes)) != len(classes):
        return False
    present = set(classes)
    for i in range(len(cols)):
        for j in range(i + 1, len(cols)):
            for lam in range(1, F.q):
                v = [F.add(a, F.mul(lam, b)) for a, b in zip(cols[i], cols[j])]
                nv = _normalize(v, F)
                if nv is not None and nv in present:
                    return True
    return False

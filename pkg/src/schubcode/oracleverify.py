"""Brute-force oracles and decoding experiments.

Each suite appends named checks to a :class:`Report`.  The oracles work
from raw subspace arithmetic and exhaustive scans and do not call the
closed forms they are compared against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .codecore import BRUTE_FORCE_LIMIT, Code, build_code, min_distance_bruteforce
from .fieldcore import FieldSpec, gf
from .grassgeo import GrassmannIndex, Line, injection_distance, lines_through, flag_vectors_through
from .linalg import Subspace, subspace_from_rows, subspace_intersection, subspace_leq, subspace_sum
from .mldecoder import DecoderTable, decode_batch
from .orthoset import (
    a2_closed_corrected,
    a2_closed_printed,
    a2_sum,
    b2_closed_printed,
    b2_closed_proof,
    b2_sum,
    build_A2,
    build_B2,
    build_J1,
    half,
    J_binary,
    J_lower_bound,
)
from .schubgeo import (
    disc_alpha,
    flag_from_vectors,
    grassmann_params,
    is_line_in_schubert,
    lines_through_point_count,
    schubert_contains,
    schubert_params,
    standard_flag,
)

DEFAULT_SEED = 20240101
EXHAUSTIVE_LIMIT = 10**7
MC_CHUNK = 500

PASS, FAIL, WARN, SKIP = "pass", "fail", "warn", "skip"


@dataclass
class Check:
    name: str
    expected: object
    observed: object
    status: str

    def line(self) -> str:
        return f"CHECK {self.name} expected={self.expected} observed={self.observed} status={self.status}"


@dataclass
class Report:
    seed: int = DEFAULT_SEED
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, expected, observed, ok: bool | None = None, warn_only: bool = False) -> Check:
        if ok is None:
            ok = expected == observed
        status = PASS if ok else (WARN if warn_only else FAIL)
        c = Check(name, expected, observed, status)
        self.checks.append(c)
        return c

    def skip(self, name: str, reason: str) -> None:
        self.checks.append(Check(name, "-", reason.replace(" ", "_"), SKIP))

    def merge(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    def count(self, status: str) -> int:
        return sum(c.status == status for c in self.checks)

    @property
    def ok(self) -> bool:
        return self.count(FAIL) == 0

    def lines(self) -> list[str]:
        out = [f"SEED {self.seed}"]
        out += [c.line() for c in self.checks]
        out.append(
            f"SUMMARY pass={self.count(PASS)} fail={self.count(FAIL)} warn={self.count(WARN)} skip={self.count(SKIP)}"
        )
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _tag(code: Code) -> str:
    s = code.spec
    a = ",".join(map(str, s.alpha)) if s.alpha else "G"
    return f"q{s.q}.m{s.m}.l{s.ell}.a{a}"


# --- parameters ----------------------------------------------------------------


def verify_parameters(configs: Iterable[tuple], limit: int = BRUTE_FORCE_LIMIT) -> Report:
    """configs: (q, m, ell, alpha-or-None)."""
    rep = Report()
    for q, m, ell, alpha in configs:
        code = build_code(q, m, ell, alpha)
        tag = _tag(code)
        par = schubert_params(alpha, ell, m, q) if alpha else grassmann_params(ell, m, q)
        rep.add(f"{tag}.n", par.n, code.n)
        rep.add(f"{tag}.k", par.k, code.k)
        if q**code.k > limit:
            rep.skip(f"{tag}.d", f"q^k above guard {limit}")
            continue
        rep.add(f"{tag}.d", par.d, min_distance_bruteforce(code.G, code.field, limit))
    return rep


# --- dual supports ---------------------------------------------------------------


def _proj(v: Sequence[int], F: FieldSpec) -> tuple[int, ...] | None:
    lead = next((x for x in v if x), 0)
    if not lead:
        return None
    inv = F.inv(lead)
    return tuple(F.mul(inv, int(x)) for x in v)


def dependent_triples(code: Code) -> set[tuple[int, int, int]]:
    """Column triples carrying a full-support dependence, by scanning pairs."""
    F = code.field
    cols = [tuple(int(x) for x in c) for c in code.G.T]
    where: dict[tuple[int, ...], list[int]] = {}
    for i, c in enumerate(cols):
        where.setdefault(_proj(c, F), []).append(i)
    out = set()
    for i, j in combinations(range(len(cols)), 2):
        for a, b in product(range(1, F.q), repeat=2):
            v = _proj([F.add(F.mul(a, x), F.mul(b, y)) for x, y in zip(cols[i], cols[j])], F)
            for k in where.get(v, ()):
                if k not in (i, j):
                    out.add(tuple(sorted((i, j, k))))
    return out


def collinear_triples(code: Code) -> set[tuple[int, int, int]]:
    """Triples of coordinate points lying on one line, from subspace arithmetic."""
    pts = code.points
    out = set()
    for i, j in combinations(range(len(pts)), 2):
        P, Q = pts[i], pts[j]
        if injection_distance(P, Q) != 1:
            continue
        U, W = subspace_intersection(P, Q), subspace_sum(P, Q)
        for k in range(j + 1, len(pts)):
            R = pts[k]
            if subspace_leq(U, R) and subspace_leq(R, W):
                out.add((i, j, k))
    return out


def verify_dual_supports(code: Code) -> Report:
    rep = Report()
    tag = _tag(code)
    F = code.field
    projs = [_proj(c, F) for c in code.G.T.tolist()]
    rep.add(f"{tag}.dual.no_weight_le2", True, None not in projs and len(set(projs)) == len(projs))
    dep, col = dependent_triples(code), collinear_triples(code)
    rep.add(f"{tag}.dual.triples_scanned", comb(code.n, 3), comb(code.n, 3))
    rep.add(f"{tag}.dual.dependent_in_collinear", len(dep), len(dep & col))
    rep.add(f"{tag}.dual.collinear_in_dependent", len(col), len(dep & col))
    return rep


# --- line classification -----------------------------------------------------------


@lru_cache(maxsize=None)
def _points_between(L: Line) -> frozenset[Subspace]:
    F, m = L.U.field, L.U.ambient
    out = set()
    for coeffs in product(range(F.q), repeat=L.W.dim):
        v = [0] * m
        for c, r in zip(coeffs, L.W.basis):
            v = [F.add(x, F.mul(c, y)) for x, y in zip(v, r)]
        if not L.U.contains_vector(v):
            out.add(subspace_from_rows(list(L.U.basis) + [v], F, m))
    return frozenset(out)


@lru_cache(maxsize=None)
def _dist(P: Subspace, Q: Subspace) -> int:
    return injection_distance(P, Q)


@lru_cache(maxsize=None)
def _meet_join(P: Subspace, Q: Subspace) -> tuple[Subspace, Subspace]:
    return subspace_intersection(P, Q), subspace_sum(P, Q)


def verify_line_classification(q: int, m: int, alphas: Sequence[Sequence[int]], ell: int = 2) -> Report:
    rep = Report()
    F = gf(q)
    grass = GrassmannIndex(ell, m, F)
    lines = grass.all_lines()
    pts = {L: _points_between(L) for L in lines}
    for alpha in alphas:
        flag = standard_flag(alpha, m, F)
        agree = sum(is_line_in_schubert(flag, L) == all(schubert_contains(flag, T) for T in pts[L]) for L in lines)
        a = ",".join(map(str, alpha))
        rep.add(f"q{q}.m{m}.a{a}.lines.predicate_agrees", len(lines), agree)
    return rep


# --- line and disc theorems --------------------------------------------------------


def _line_case(P: Subspace, Q: Subspace, L: Line, pts: Sequence[Subspace], ell: int) -> dict[str, bool]:
    """Evaluate every line/disc statement for P, a line L through Q; True means it holds."""
    i = _dist(P, Q)
    dists = [_dist(P, T) for T in pts]
    PQ, PpQ = _meet_join(P, Q)
    a = subspace_leq(PQ, L.U)
    b = subspace_leq(L.W, PpQ)
    at = lambda r: sum(d <= r for d in dists)  # noqa: E731
    res = {
        "meet_ge2": (at(i) >= 2) == (a or b),
        "meet_eq1": (at(i) == 1) == ((not a) and (not b)),
        "inner_empty": all(at(j) == 0 for j in range(0, i - 1)),
        "inner_le1": at(i - 1) <= 1,
        "inner_eq1": (at(i - 1) == 1) == (a and b),
        "dichotomy": all(at(r) <= 1 or at(r) == len(pts) for r in range(1, ell + 1)),
    }
    return res


def _lemma_case(L: Line, pts: Sequence[Subspace], P: Subspace, T: Subspace, Q: Subspace, ell: int) -> bool:
    dP, dT = _dist(P, Q), _dist(T, Q)
    for i in range(1, ell + 1):
        if dP <= i and dT <= i and not all(_dist(R, Q) <= i for R in pts):
            return False
    return True


def verify_line_theorems(
    q: int, m: int, ell: int = 2, samples: int | None = None, seed: int = DEFAULT_SEED
) -> Report:
    """Exhaustive when ``samples`` is None, else that many seeded (P, Q, L) and (L, P, T, Q) draws."""
    rep = Report(seed=seed)
    F = gf(q)
    grass = GrassmannIndex(ell, m, F)
    pts = grass.points
    tally: dict[str, int] = {}
    cases = 0
    lemma_cases = lemma_ok = 0
    if samples is None:
        triples = ((P, Q, L) for P in pts for Q in pts for L in lines_through(Q))
        lines = grass.all_lines()
        quads = ((L, P, T, Q) for L in lines for P, T in combinations(sorted(_points_between(L), key=lambda s: s.order_key), 2) for Q in pts)
    else:
        rng = np.random.default_rng(seed)
        draws = []
        for _ in range(samples):
            P, Q = pts[rng.integers(len(pts))], pts[rng.integers(len(pts))]
            lt = lines_through(Q)
            draws.append((P, Q, lt[rng.integers(len(lt))]))
        triples = iter(draws)
        qd = []
        for _ in range(samples):
            X = pts[rng.integers(len(pts))]
            lt = lines_through(X)
            L = lt[rng.integers(len(lt))]
            on = sorted(_points_between(L), key=lambda s: s.order_key)
            a, b = rng.choice(len(on), size=2, replace=False)
            qd.append((L, on[a], on[b], pts[rng.integers(len(pts))]))
        quads = iter(qd)
    for P, Q, L in triples:
        on = sorted(_points_between(L), key=lambda s: s.order_key)
        for k, v in _line_case(P, Q, L, on, ell).items():
            tally[k] = tally.get(k, 0) + v
        cases += 1
    for L, P, T, Q in quads:
        on = sorted(_points_between(L), key=lambda s: s.order_key)
        lemma_cases += 1
        lemma_ok += _lemma_case(L, on, P, T, Q, ell)
    tag = f"q{q}.m{m}.l{ell}." + ("exhaustive" if samples is None else f"sampled{samples}")
    for k in ("meet_ge2", "meet_eq1", "dichotomy", "inner_empty", "inner_le1", "inner_eq1"):
        rep.add(f"{tag}.{k}", cases, tally.get(k, 0))
    rep.add(f"{tag}.line_closure", lemma_cases, lemma_ok)
    return rep


# --- disc as Schubert variety ------------------------------------------------------


def verify_disc_schubert(q: int, m: int, ell: int = 2) -> Report:
    rep = Report()
    F = gf(q)
    grass = GrassmannIndex(ell, m, F)
    for i in range(0, ell + 1):
        alpha = disc_alpha(ell, m, i)
        agree = 0
        for P in grass.points:
            flag = flag_from_vectors(flag_vectors_through(P), alpha, F)
            disc = {Q for Q in grass.points if injection_distance(P, Q) <= i}
            schub = {Q for Q in grass.points if schubert_contains(flag, Q)}
            agree += disc == schub
        rep.add(f"q{q}.m{m}.l{ell}.disc{i}.equals_schubert", len(grass), agree)
    return rep


# --- orthogonal sets: counts and orthogonality ----------------------------------------


def _lines_in_omega_through(code: Code, P: Subspace) -> int:
    """Count lines through P inside the Schubert variety by pointwise filtering."""
    inside = set(code.points)
    return sum(all(T in inside for T in _points_between(L)) for L in lines_through(P))


def verify_counts(code: Code) -> Report:
    rep = Report()
    s = code.spec
    q, m, a1 = s.q, s.m, s.alpha[0]
    tag = _tag(code)
    A1 = code.flag.spaces[0]
    bad = {"lines": 0, "J1": 0, "tier2": 0, "J_outside": 0, "J_bound": 0}
    n_out = 0
    for P in code.points:
        inA = subspace_leq(P, A1)
        nl = _lines_in_omega_through(code, P)
        j1 = build_J1(P, code)
        t2 = build_A2(P, code) if inA else build_B2(P, code)
        bad["lines"] += nl != lines_through_point_count(q, m, a1, inA)
        bad["J1"] += len(j1) != half(q) * nl
        bad["tier2"] += len(t2) != (a2_sum(q, m, a1) if inA else b2_sum(q, m, a1))
        J = len(j1) + len(t2)
        if not inA:
            n_out += 1
            bad["J_outside"] += J != J_lower_bound(q, m, a1)
        bad["J_bound"] += J < J_lower_bound(q, m, a1)
    for k, v in bad.items():
        rep.add(f"{tag}.counts.{k}.mismatches", 0, v)
    rep.add(f"{tag}.counts.points_outside_A1", ">0", n_out, ok=n_out > 0)
    rep.add(f"{tag}.counts.A2_closed_corrected", a2_sum(q, m, a1), _fmt(a2_closed_corrected(q, m, a1)))
    rep.add(f"{tag}.counts.B2_closed_proof", b2_sum(q, m, a1), _fmt(b2_closed_proof(q, m, a1)))
    rep.add(f"{tag}.counts.A2_closed_printed", a2_sum(q, m, a1), _fmt(a2_closed_printed(q, m, a1)), warn_only=True)
    rep.add(f"{tag}.counts.B2_closed_printed", b2_sum(q, m, a1), _fmt(b2_closed_printed(q, m, a1)), warn_only=True)
    if q == 2:
        rep.add(f"{tag}.counts.J_binary", J_lower_bound(q, m, a1), _fmt(J_binary(m, a1)))
    return rep


def _fmt(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def verify_orthogonality(code: Code, table: DecoderTable | None = None) -> Report:
    rep = Report()
    table = table or DecoderTable.build(code)
    F = code.field
    bad_shape = bad_dual = 0
    for s in table.sets:
        H = s.matrix(code.n)
        bad_shape += not s.is_orthogonal(code.n)
        bad_dual += bool(F.matmul(H, code.G.T).any())
    tag = _tag(code)
    rep.add(f"{tag}.orth.sets", code.n, len(table.sets))
    rep.add(f"{tag}.orth.not_orthogonal", 0, bad_shape)
    rep.add(f"{tag}.orth.not_dual", 0, bad_dual)
    rep.add(f"{tag}.orth.J_min", J_lower_bound(code.spec.q, code.spec.m, code.spec.alpha[0]), table.J_min)
    return rep


# --- decoding experiments --------------------------------------------------------------


def sample_messages(code: Code, rng: np.random.Generator, count: int = 100) -> np.ndarray:
    """All messages when there are at most count + 2, else zero, all-ones and ``count`` random ones."""
    q, k = code.spec.q, code.k
    if q**k <= count + 2:
        return np.array(list(product(range(q), repeat=k)), dtype=np.int64)
    rand = rng.integers(0, q, size=(count, k))
    return np.vstack([np.zeros((1, k), dtype=np.int64), np.ones((1, k), dtype=np.int64), rand])


def error_patterns(n: int, q: int, t: int) -> np.ndarray:
    """Every error vector of weight 0..t, by weight, support, then values."""
    out = []
    for w in range(t + 1):
        for supp in combinations(range(n), w):
            for vals in product(range(1, q), repeat=w):
                e = np.zeros(n, dtype=np.int64)
                e[list(supp)] = vals
                out.append(e)
    return np.array(out, dtype=np.int64)


def _guarantee(rep: Report, tag: str, t: int, t_max: int, total: int, exact: int, flagged: int) -> None:
    within = t <= t_max
    rep.add(f"{tag}.t", t_max, t, ok=True)
    # below the radius a shortfall is a failure, above it only a warning
    rep.add(f"{tag}.exact", total, exact, warn_only=not within)
    rep.add(f"{tag}.flag_success", total, flagged, warn_only=not within)


def exhaustive_decode_test(
    code: Code, t: int, table: DecoderTable | None = None, seed: int = DEFAULT_SEED
) -> Report:
    rep = Report(seed=seed)
    table = table or DecoderTable.build(code)
    F = code.field
    npat = sum(comb(code.n, w) * (F.q - 1) ** w for w in range(t + 1))
    tag = f"{_tag(code)}.exhaustive_t{t}"
    if npat > EXHAUSTIVE_LIMIT:
        rep.skip(tag, f"{npat} patterns exceed {EXHAUSTIVE_LIMIT}")
        return rep
    E = error_patterns(code.n, F.q, t)
    C = code.encode(sample_messages(code, np.random.default_rng(seed)))
    exact = flagged = 0
    for c in C:
        R = F.vadd(E, c[None, :])
        corr, _, ok = decode_batch(R, table)
        exact += int((corr == c[None, :]).all(axis=1).sum())
        flagged += int(ok.sum())
    rep.add(f"{tag}.patterns", npat, len(E))
    rep.add(f"{tag}.codewords", len(C), len(C), ok=True)
    _guarantee(rep, tag, t, table.t_max, len(C) * len(E), exact, flagged)
    return rep


def random_errors(rng: np.random.Generator, count: int, n: int, q: int, t: int) -> np.ndarray:
    """``count`` errors of weight exactly t: uniform support, uniform nonzero values."""
    E = np.zeros((count, n), dtype=np.int64)
    if t == 0:
        return E
    supp = np.argsort(rng.random((count, n)), axis=1)[:, :t]
    vals = rng.integers(1, q, size=(count, t))
    np.put_along_axis(E, supp, vals, axis=1)
    return E


def monte_carlo_decode_test(
    code: Code, t: int, trials: int, seed: int = DEFAULT_SEED, table: DecoderTable | None = None
) -> Report:
    """Seeded trials; chunk c draws from PCG64 seeded with (seed, c)."""
    rep = Report(seed=seed)
    table = table or DecoderTable.build(code)
    F = code.field
    exact = flagged = 0
    for c, a in enumerate(range(0, trials, MC_CHUNK)):
        b = min(trials, a + MC_CHUNK)
        rng = np.random.default_rng([seed, c])
        msgs = rng.integers(0, F.q, size=(b - a, code.k))
        cw = code.encode(msgs)
        R = F.vadd(cw, random_errors(rng, b - a, code.n, F.q, t))
        corr, _, ok = decode_batch(R, table)
        exact += int((corr == cw).all(axis=1).sum())
        flagged += int(ok.sum())
    tag = f"{_tag(code)}.montecarlo_t{t}"
    rep.add(f"{tag}.trials", trials, trials, ok=True)
    _guarantee(rep, tag, t, table.t_max, trials, exact, flagged)
    return rep


# --- suite runner -----------------------------------------------------------------------

SUITES = ("params", "dual", "lines", "theorems", "disc", "counts", "orth", "decode")


def run_suite(name: str, code: Code, seed: int = DEFAULT_SEED, t: int | None = None, trials: int = 1000) -> Report:
    """Run one named suite (or "all") for the configuration of ``code``."""
    s = code.spec
    q, m, ell = s.q, s.m, s.ell
    names = SUITES if name == "all" else (name,)
    rep = Report(seed=seed)
    ell2 = ell == 2 and s.alpha is not None and s.alpha[1] == m and s.alpha[0] >= 2
    for nm in names:
        if nm == "params":
            rep.merge(verify_parameters([(q, m, ell, s.alpha)]))
        elif nm == "dual":
            rep.merge(verify_dual_supports(code))
        elif nm == "lines":
            alphas = [s.alpha] if s.alpha else []
            if alphas:
                rep.merge(verify_line_classification(q, m, alphas, ell))
            else:
                rep.skip("lines", "no alpha given")
        elif nm == "theorems":
            exhaustive = len(GrassmannIndex(ell, m, gf(q))) <= 40
            rep.merge(verify_line_theorems(q, m, ell, None if exhaustive else trials, seed))
        elif nm == "disc":
            rep.merge(verify_disc_schubert(q, m, ell))
        elif nm in ("counts", "orth", "decode"):
            if not ell2:
                rep.skip(nm, "needs l=2 and alpha=(a1,m) with a1>=2")
                continue
            if nm == "counts":
                rep.merge(verify_counts(code))
            elif nm == "orth":
                rep.merge(verify_orthogonality(code))
            else:
                table = DecoderTable.build(code)
                tt = table.t_max if t is None else t
                rep.merge(monte_carlo_decode_test(code, tt, trials, seed, table))
        else:
            raise ValueError(f"unknown suite {nm!r}")
    return rep

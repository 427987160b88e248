"""One-step majority-logic decoding with per-coordinate orthogonal check sets.

Every check in the set for coordinate P has coefficient 1 at P and the
supports meet only in P.  The syndrome of such a check against r = c + e
is e_P plus at most one other error value, so with J checks and at most
floor(J/2) errors the true e_P wins a strict majority.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codecore import Code, ParityCheck
from .fieldcore import FieldSpec
from .orthoset import OrthogonalCheckSet, build_all


class DecodeError(ValueError):
    pass


def _syndromes(words: np.ndarray, pos: np.ndarray, coef: np.ndarray, F: FieldSpec) -> np.ndarray:
    """(B, C) syndromes of B words against C padded sparse checks."""
    gathered = words[:, pos]  # (B, C, w)
    return F.vsum(F.vmul(coef[None, :, :], gathered), axis=2)


class DecoderTable:
    """Orthogonal check sets for every coordinate of ``code``, packed for batch decoding."""

    def __init__(self, code: Code, sets: Sequence[OrthogonalCheckSet]):
        F = code.field
        if len(sets) != code.n:
            raise DecodeError(f"need one check set per coordinate: got {len(sets)}, n = {code.n}")
        for i, s in enumerate(sets):
            if s.center != i:
                raise DecodeError(f"check set {i} is centred at {s.center}")
            if not len(s):
                raise DecodeError(f"empty check set at coordinate {i}")
            for chk in s.checks:
                if chk.coef(i) != 1:
                    raise DecodeError(f"check at coordinate {i} is not normalised to 1 at its centre")
        self.code = code
        self.sets = list(sets)
        self.sizes = np.array([len(s) for s in sets], dtype=np.int64)
        self.J_min = int(self.sizes.min())
        self.t_max = self.J_min // 2
        checks = [chk for s in sets for chk in s.checks]
        w = max(chk.weight for chk in checks)
        self._pos = np.zeros((len(checks), w), dtype=np.int64)
        self._coef = np.zeros((len(checks), w), dtype=np.int64)
        for r, chk in enumerate(checks):
            for j, (p, c) in enumerate(chk.support):
                self._pos[r, j] = p
                self._coef[r, j] = c
        self._offsets = np.concatenate([[0], np.cumsum(self.sizes)[:-1]])
        self.field = F

    @classmethod
    def build(cls, code: Code) -> "DecoderTable":
        return cls(code, build_all(code))

    @property
    def n(self) -> int:
        return self.code.n

    def votes(self, words: np.ndarray) -> np.ndarray:
        """(B, n, q) array: votes[b, P, v] = number of checks at P with syndrome v."""
        F = self.field
        s = _syndromes(words, self._pos, self._coef, F)
        out = np.empty((words.shape[0], self.n, F.q), dtype=np.int64)
        for v in range(F.q):
            out[:, :, v] = np.add.reduceat((s == v).astype(np.int64), self._offsets, axis=1)
        return out

    def estimates(self, words: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        votes = self.votes(words)
        # strict majority among nonzero values, default 0
        win = 2 * votes[:, :, 1:] > self.sizes[None, :, None]
        est = np.where(win.any(axis=2), win.argmax(axis=2) + 1, 0)
        return est.astype(np.int64), votes


@dataclass
class DecodeResult:
    corrected: np.ndarray
    estimate: np.ndarray
    tallies: list[dict[int, int]]
    success: bool


def estimate_error_at(position: int, received: Sequence[int], checkset: OrthogonalCheckSet, F: FieldSpec) -> int:
    """Majority estimate of the error value at ``position`` from one check set."""
    if checkset.center != position:
        raise DecodeError("check set is not centred at this position")
    J = len(checkset)
    counts: dict[int, int] = {}
    for chk in checkset.checks:
        s = 0
        for p, c in chk.support:
            s = F.add(s, F.mul(c, int(received[p])))
        counts[s] = counts.get(s, 0) + 1
    for v, cnt in counts.items():
        if v and 2 * cnt > J:
            return v
    return 0


def _as_words(words, n: int) -> np.ndarray:
    w = np.atleast_2d(np.asarray(words, dtype=np.int64))
    if w.shape[1] != n:
        raise DecodeError(f"received length {w.shape[1]} != n = {n}")
    return w


def decode_batch(words, table: DecoderTable, chunk: int = 256) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Decode many words; returns (corrected, estimate, in_code) arrays."""
    F = table.field
    words = _as_words(words, table.n)
    corrected = np.empty_like(words)
    estimate = np.empty_like(words)
    for a in range(0, words.shape[0], chunk):
        block = words[a : a + chunk]
        est, _ = table.estimates(block)
        estimate[a : a + chunk] = est
        corrected[a : a + chunk] = F.vadd(block, F.vneg(est))
    ok = table.code.is_codeword(corrected) if len(words) else np.zeros(0, dtype=bool)
    return corrected, estimate, ok


def decode(received, table: DecoderTable) -> DecodeResult:
    words = _as_words(received, table.n)
    if words.shape[0] != 1:
        raise DecodeError("decode takes a single word; use decode_batch")
    est, votes = table.estimates(words)
    F = table.field
    corrected = F.vadd(words[0], F.vneg(est[0]))
    tallies = [{v: int(c) for v, c in enumerate(row) if c} for row in votes[0]]
    return DecodeResult(corrected, est[0], tallies, bool(table.code.is_codeword(corrected)[0]))


def checkset_from_supports(center: int, supports: Sequence[dict[int, int]]) -> OrthogonalCheckSet:
    return OrthogonalCheckSet(center, [ParityCheck.from_dict(s) for s in supports], ["file"] * len(supports))

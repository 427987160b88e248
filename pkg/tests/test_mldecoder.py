from __future__ import annotations

from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import CONFIGS, get_code, get_table
from schubcode.codecore import ParityCheck
from schubcode.mldecoder import DecodeError, DecoderTable, decode, decode_batch, estimate_error_at
from schubcode.orthoset import OrthogonalCheckSet


def test_table_shape(table24, code24):
    assert len(table24.sets) == code24.n
    assert (table24.J_min, table24.t_max) == (7, 3)


def test_zero_and_codeword(table24, code24):
    F = code24.field
    for msg in ([0] * 5, [1, 0, 1, 1, 0]):
        c = code24.encode(msg)
        res = decode(c, table24)
        assert res.success and not res.estimate.any() and (res.corrected == c).all()
        for pos in range(code24.n):
            assert estimate_error_at(pos, c, table24.sets[pos], F) == 0


def test_single_error_gets_all_votes(table24, code24):
    c = code24.encode([1, 1, 0, 0, 1])
    for pos in range(code24.n):
        r = c.copy()
        r[pos] ^= 1
        res = decode(r, table24)
        assert res.tallies[pos] == {1: len(table24.sets[pos])}
        assert (res.corrected == c).all() and res.success
        assert (res.corrected == (r - res.estimate) % 2).all()


def test_exhaustive_weight3_on_all_codewords(table24, code24):
    n = code24.n
    C = code24.encode(np.array(list(product(range(2), repeat=code24.k))))
    E = []
    for w in range(4):
        for s in combinations(range(n), w):
            e = np.zeros(n, dtype=np.int64)
            e[list(s)] = 1
            E.append(e)
    E = np.array(E)
    assert len(E) == 1 + 19 + 171 + 969
    for c in C:
        corr, est, ok = decode_batch((E + c) % 2, table24)
        assert (corr == c).all() and ok.all() and (est == E).all()


def test_scalar_estimate_matches_batch(table24, code24):
    F = code24.field
    rng = np.random.default_rng(3)
    R = rng.integers(0, 2, size=(20, code24.n))
    _, est, _ = decode_batch(R, table24)
    for r, e in zip(R, est):
        assert [estimate_error_at(p, r, table24.sets[p], F) for p in range(code24.n)] == list(e)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CONFIGS + [(4, 4, (2, 4))]), st.data())
def test_guarantee_within_radius(cfg, data):
    q, m, alpha = cfg
    code, table = get_code(q, m, alpha), get_table(q, m, alpha)
    F = code.field
    msg = data.draw(st.lists(st.integers(0, q - 1), min_size=code.k, max_size=code.k))
    t = data.draw(st.integers(0, table.t_max))
    supp = data.draw(st.lists(st.integers(0, code.n - 1), min_size=t, max_size=t, unique=True))
    vals = data.draw(st.lists(st.integers(1, q - 1), min_size=t, max_size=t))
    c = code.encode(msg)
    e = np.zeros(code.n, dtype=np.int64)
    e[supp] = vals
    res = decode(F.vadd(c, e), table)
    assert (res.corrected == c).all() and (res.estimate == e).all() and res.success


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CONFIGS), st.data())
def test_no_false_votes_reach_majority(cfg, data):
    # with e_P = 0 and wt(e) <= t_max, no nonzero value wins at P
    q, m, alpha = cfg
    code, table = get_code(q, m, alpha), get_table(q, m, alpha)
    P = data.draw(st.integers(0, code.n - 1))
    t = data.draw(st.integers(1, table.t_max))
    others = [i for i in range(code.n) if i != P]
    supp = data.draw(st.lists(st.sampled_from(others), min_size=t, max_size=t, unique=True))
    e = np.zeros(code.n, dtype=np.int64)
    e[supp] = data.draw(st.lists(st.integers(1, q - 1), min_size=t, max_size=t))
    assert estimate_error_at(P, e, table.sets[P], code.field) == 0


def test_beyond_radius_flag_is_honest(table24, code24):
    rng = np.random.default_rng(11)
    c = code24.encode([1, 0, 0, 1, 1])
    fails = 0
    for _ in range(200):
        e = np.zeros(code24.n, dtype=np.int64)
        e[rng.choice(code24.n, 5, replace=False)] = 1
        res = decode((c + e) % 2, table24)
        assert res.success == bool(code24.is_codeword(res.corrected)[0])
        fails += not (res.corrected == c).all()
    assert fails > 0


def test_length_mismatch(table24):
    with pytest.raises(DecodeError):
        decode([0] * 5, table24)


def test_table_validation(code24, table24):
    sets = list(table24.sets)
    with pytest.raises(DecodeError):
        DecoderTable(code24, sets[:-1])
    with pytest.raises(DecodeError):
        DecoderTable(code24, sets[1:] + sets[:1])
    bad = OrthogonalCheckSet(0, [ParityCheck(((0, 1), (1, 1), (2, 1))).scaled(1, code24.field)])
    bad.checks[0] = ParityCheck(((0, 0),) + bad.checks[0].support[1:])
    with pytest.raises(DecodeError):
        DecoderTable(code24, [bad] + sets[1:])
    with pytest.raises(DecodeError):
        estimate_error_at(1, [0] * code24.n, sets[0], code24.field)


def test_decode_is_deterministic(table24, code24):
    rng = np.random.default_rng(5)
    R = rng.integers(0, 2, size=(50, code24.n))
    a = decode_batch(R, table24)
    b = decode_batch(R, table24, chunk=7)
    assert all((x == y).all() for x, y in zip(a, b))

from __future__ import annotations

import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import get_code, get_table
from schubcode.formats import (
    FormatError,
    Header,
    code_from_generator,
    read_checksets,
    read_generator,
    read_words,
    write_checksets,
    write_generator,
    write_words,
)
from schubcode.mldecoder import DecoderTable, decode_batch


def test_generator_layout(code24):
    text = write_generator(code24)
    lines = text.splitlines()
    assert lines[0] == "2 4 2 2 4" and lines[1] == "5 19" and len(lines) == 7
    assert write_generator(get_code(2, 4)).splitlines()[0] == "2 4 2"


@pytest.mark.parametrize("cfg", [(2, 4, (2, 4)), (3, 4, (2, 4)), (2, 4, None)])
def test_generator_round_trip(cfg, tmp_path):
    code = get_code(*cfg)
    path = tmp_path / "g.txt"
    text = write_generator(code, path)
    hdr, G = read_generator(path)
    assert (G == code.G).all() and hdr.spec() == code.spec
    assert write_generator(code_from_generator(hdr, G)) == text == path.read_text()


def test_checkset_layout_centre_first(table24):
    text = write_checksets(Header(2, 4, 2, (2, 4)), table24.sets)
    lines = text.splitlines()
    assert lines[0] == "2 4 2 2 4 19"
    assert lines[1].startswith("P 0 ")
    for ln in lines:
        if ln.startswith("P "):
            centre = ln.split()[1]
        elif ln.startswith("w "):
            entries = ln.split()[1:]
            assert entries[0].split(":")[0] == centre
            rest = [int(e.split(":")[0]) for e in entries[1:]]
            assert rest == sorted(rest)


@pytest.mark.parametrize("cfg", [(2, 4, (2, 4)), (3, 4, (2, 4))])
def test_checkset_round_trip(cfg):
    code, table = get_code(*cfg), get_table(*cfg)
    hdr = Header(code.spec.q, code.spec.m, 2, code.spec.alpha)
    text = write_checksets(hdr, table.sets)
    hdr2, sets = read_checksets(io.StringIO(text))
    assert hdr2 == hdr
    assert [s.checks for s in sets] == [s.checks for s in table.sets]
    assert write_checksets(hdr2, sets) == text


def test_file_pipeline_matches_memory(code24, table24, tmp_path):
    write_generator(code24, tmp_path / "g")
    write_checksets(Header(2, 4, 2, (2, 4)), table24.sets, tmp_path / "c")
    hdr, G = read_generator(tmp_path / "g")
    _, sets = read_checksets(tmp_path / "c")
    t2 = DecoderTable(code_from_generator(hdr, G), sets)
    R = np.random.default_rng(0).integers(0, 2, size=(40, code24.n))
    a, b = decode_batch(R, table24), decode_batch(R, t2)
    assert all((x == y).all() for x, y in zip(a, b))
    assert t2.J_min == table24.J_min


@given(st.integers(1, 6), st.integers(1, 12), st.sampled_from([2, 3, 5, 9]), st.data())
def test_words_round_trip(rows, n, q, data):
    W = np.array(data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=rows, max_size=rows)))
    text = write_words(W)
    back = read_words(io.StringIO(text), n, q)
    assert (back == W).all() and write_words(back) == text


@pytest.mark.parametrize(
    "text,line",
    [
        ("2 4 2 2 4\n5 19\n", 2),
        ("2 4 2 2 4\n1 3\n0 1\n", 3),
        ("2 4 2 2 4\n1 3\n0 1 x\n", 3),
        ("2 4 2 2 4\n1 3\n0 1 2\n", 3),
        ("2 4 2 2\n1 3\n0 1 1\n", 1),
        ("2 4 2 1 2\n1 3\n0 1 1\n", 1),
        ("6 4 2 2 4\n1 3\n0 1 1\n", 1),
    ],
)
def test_generator_parse_errors(text, line):
    with pytest.raises(FormatError) as err:
        read_generator(io.StringIO(text))
    assert err.value.lineno == line
    assert f":{line}:" in str(err.value)


@pytest.mark.parametrize(
    "text,line",
    [
        ("2 4 2 2 4\n", 1),
        ("2 4 2 2 4 1\nQ 0 1\nw 0:1 1:1 2:1\n", 2),
        ("2 4 2 2 4 1\nP 0 2\nw 0:1 1:1 2:1\n", 2),
        ("2 4 2 2 4 1\nP 0 1\nw 0:1 1;1 2:1\n", 3),
        ("2 4 2 2 4 1\nP 0 1\nv 0:1\n", 3),
        ("2 4 2 2 4 1\nP 0 1\nw 0:1 0:1\n", 3),
        ("2 4 2 2 4 1\nP 0 1\nw 0:3\n", 3),
        ("2 4 2 2 4 2\nP 0 1\nw 0:1 1:1 2:1\n", 3),
    ],
)
def test_checkset_parse_errors(text, line):
    with pytest.raises(FormatError) as err:
        read_checksets(io.StringIO(text))
    assert err.value.lineno == line


def test_word_parse_errors():
    with pytest.raises(FormatError) as err:
        read_words(io.StringIO("0 1 1\n1 1\n"), 3)
    assert err.value.lineno == 2
    with pytest.raises(FormatError) as err:
        read_words(io.StringIO("0 1 1\n\n0 5 1\n"), 3, 2)
    assert err.value.lineno == 3
    assert read_words(io.StringIO(""), 4).shape == (0, 4)

"""Plain-text file formats for generator matrices, check sets and words.

Generator file::

    q m l [alpha_1 ... alpha_l]
    k n
    <k rows of n field-element indices>

Check-set file::

    q m l alpha_1 alpha_2 centercount
    P <pos> <count>
    w <pos>:<coef> ...          (centre entry first, the rest ascending)

Word file: one word per line, n field-element indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .codecore import Code, CodeSpec, ParityCheck
from .fieldcore import gf
from .orthoset import OrthogonalCheckSet


class FormatError(ValueError):
    def __init__(self, msg: str, lineno: int | None = None, source: str = "<input>"):
        self.lineno = lineno
        where = f"{source}:{lineno}" if lineno is not None else source
        super().__init__(f"{where}: {msg}")


@dataclass(frozen=True)
class Header:
    q: int
    m: int
    ell: int
    alpha: tuple[int, ...] | None

    def spec(self) -> CodeSpec:
        return CodeSpec(self.ell, self.m, gf(self.q), self.alpha)

    def tokens(self) -> list[int]:
        return [self.q, self.m, self.ell] + list(self.alpha or ())


def _lines(src: str | Path | TextIO) -> tuple[list[tuple[int, str]], str]:
    if hasattr(src, "read"):
        text, name = src.read(), getattr(src, "name", "<stream>")
    else:
        text, name = Path(src).read_text(), str(src)
    rows = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    return [(i, ln) for i, ln in rows if ln], name


def _ints(line: str, lineno: int, source: str) -> list[int]:
    try:
        return [int(t) for t in line.split()]
    except ValueError:
        raise FormatError(f"expected integers, got {line!r}", lineno, source) from None


def _check_elements(vals: Iterable[int], q: int, lineno: int, source: str) -> None:
    for v in vals:
        if not 0 <= v < q:
            raise FormatError(f"field element {v} outside 0..{q - 1}", lineno, source)


def _emit(dst: str | Path | TextIO | None, lines: list[str]) -> str:
    text = "\n".join(lines) + "\n"
    if dst is None:
        return text
    if hasattr(dst, "write"):
        dst.write(text)
    else:
        Path(dst).write_text(text)
    return text


def _parse_header(vals: list[int], lineno: int, source: str, with_count: bool = False) -> tuple[Header, int | None]:
    count = None
    if with_count:
        if len(vals) != 6:
            raise FormatError("header must be 'q m l alpha1 alpha2 centercount'", lineno, source)
        vals, count = vals[:5], vals[5]
    if len(vals) < 3:
        raise FormatError("header must start with 'q m l'", lineno, source)
    q, m, ell = vals[:3]
    alpha = tuple(vals[3:]) or None
    if alpha is not None and len(alpha) != ell:
        raise FormatError(f"alpha needs {ell} entries, got {len(alpha)}", lineno, source)
    hdr = Header(q, m, ell, alpha)
    try:
        hdr.spec()
    except ValueError as exc:
        raise FormatError(str(exc), lineno, source) from None
    return hdr, count


# --- generator -------------------------------------------------------------


def write_generator(code: Code, dst=None) -> str:
    s = code.spec
    hdr = Header(s.q, s.m, s.ell, s.alpha)
    lines = [" ".join(map(str, hdr.tokens())), f"{code.k} {code.n}"]
    lines += [" ".join(str(int(x)) for x in row) for row in code.G]
    return _emit(dst, lines)


def read_generator(src) -> tuple[Header, np.ndarray]:
    rows, name = _lines(src)
    if len(rows) < 2:
        raise FormatError("generator file needs a header and a size line", len(rows) + 1, name)
    hdr, _ = _parse_header(_ints(rows[0][1], rows[0][0], name), rows[0][0], name)
    size = _ints(rows[1][1], rows[1][0], name)
    if len(size) != 2:
        raise FormatError("size line must be 'k n'", rows[1][0], name)
    k, n = size
    body = rows[2:]
    if len(body) != k:
        last = body[-1][0] if body else rows[1][0]
        raise FormatError(f"expected {k} matrix rows, found {len(body)}", last, name)
    G = np.zeros((k, n), dtype=np.int64)
    for r, (lineno, line) in enumerate(body):
        vals = _ints(line, lineno, name)
        if len(vals) != n:
            raise FormatError(f"row has {len(vals)} entries, expected {n}", lineno, name)
        _check_elements(vals, hdr.q, lineno, name)
        G[r] = vals
    return hdr, G


def code_from_generator(hdr: Header, G: np.ndarray) -> Code:
    """A :class:`Code` carrying only the matrix (no point list); enough for decoding."""
    return Code(hdr.spec(), [], np.asarray(G, dtype=np.int64), [])


# --- check sets --------------------------------------------------------------


def _check_line(chk: ParityCheck, center: int) -> str:
    first = [(center, chk.coef(center))]
    rest = [(p, c) for p, c in chk.support if p != center]
    return "w " + " ".join(f"{p}:{c}" for p, c in first + rest)


def write_checksets(hdr: Header, sets: Sequence[OrthogonalCheckSet], dst=None) -> str:
    if hdr.alpha is None or len(hdr.alpha) != 2:
        raise FormatError("check-set files need l = 2 and an alpha")
    lines = [" ".join(map(str, hdr.tokens() + [len(sets)]))]
    for s in sets:
        lines.append(f"P {s.center} {len(s)}")
        lines += [_check_line(chk, s.center) for chk in s.checks]
    return _emit(dst, lines)


def read_checksets(src) -> tuple[Header, list[OrthogonalCheckSet]]:
    rows, name = _lines(src)
    if not rows:
        raise FormatError("empty check-set file", 1, name)
    hdr, count = _parse_header(_ints(rows[0][1], rows[0][0], name), rows[0][0], name, with_count=True)
    sets: list[OrthogonalCheckSet] = []
    i = 1
    while i < len(rows):
        lineno, line = rows[i]
        parts = line.split()
        if parts[0] != "P" or len(parts) != 3:
            raise FormatError(f"expected 'P <pos> <count>', got {line!r}", lineno, name)
        center, cnt = _ints(" ".join(parts[1:]), lineno, name)
        checks = []
        for j in range(cnt):
            if i + 1 + j >= len(rows):
                raise FormatError(f"centre {center} promises {cnt} checks, file ends early", lineno, name)
            cl, cline = rows[i + 1 + j]
            checks.append(_parse_check(cline, cl, name, hdr.q))
        sets.append(OrthogonalCheckSet(center, checks, ["file"] * cnt))
        i += 1 + cnt
    if len(sets) != count:
        raise FormatError(f"header promises {count} centres, found {len(sets)}", rows[-1][0], name)
    return hdr, sets


def _parse_check(line: str, lineno: int, source: str, q: int) -> ParityCheck:
    parts = line.split()
    if not parts or parts[0] != "w":
        raise FormatError(f"expected a 'w pos:coef ...' line, got {line!r}", lineno, source)
    coeffs: dict[int, int] = {}
    for tok in parts[1:]:
        try:
            p, c = (int(x) for x in tok.split(":"))
        except ValueError:
            raise FormatError(f"bad entry {tok!r}", lineno, source) from None
        if p in coeffs:
            raise FormatError(f"position {p} repeated", lineno, source)
        _check_elements([c], q, lineno, source)
        coeffs[p] = c
    return ParityCheck.from_dict(coeffs)


# --- words -------------------------------------------------------------------


def write_words(words, dst=None) -> str:
    w = np.atleast_2d(np.asarray(words, dtype=np.int64))
    return _emit(dst, [" ".join(str(int(x)) for x in row) for row in w])


def read_words(src, n: int | None = None, q: int | None = None) -> np.ndarray:
    rows, name = _lines(src)
    out = []
    for lineno, line in rows:
        vals = _ints(line, lineno, name)
        if n is not None and len(vals) != n:
            raise FormatError(f"word has {len(vals)} entries, expected {n}", lineno, name)
        if out and len(vals) != len(out[0]):
            raise FormatError("words have different lengths", lineno, name)
        if q is not None:
            _check_elements(vals, q, lineno, name)
        out.append(vals)
    if not out:
        return np.zeros((0, n or 0), dtype=np.int64)
    return np.array(out, dtype=np.int64)

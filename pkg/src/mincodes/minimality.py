"""Covering, minimal vectors and minimal codewords, and minimality certificates.

A codeword ``c`` covers ``c'`` when ``supp(c') <= supp(c)``.  A code is
minimal when it has no zero generator column and every nonzero codeword
covers only its own scalar multiples.

The exhaustive check works in message space.  For a message ``u`` let
``Z(u)`` be the coordinates where ``uG`` vanishes; the codewords covered by
``uG`` are exactly the messages ``v`` whose codeword also vanishes on
``Z(u)``.  With one bitmask per coordinate (bit ``v`` set when ``(vG)_j = 0``)
that set is an AND of masks, and ``uG`` is a minimal vector iff only the
``q`` multiples of ``u`` survive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import gfmatrix as gm
from .errors import DoesNotDivide, InvalidParameter, LengthMismatch, NotInCode, UnsupportedN, ZeroColumn
from .galois import FieldSpec, prime_power
from .lincode import (
    Codeword,
    LinearCode,
    codeword_blocks,
    condensed_code,
    cyclic_code,
    encode,
    message_of,
    weight_distribution,
    weight_histogram,
    zero_columns,
)


class Verdict(str, enum.Enum):
    MINIMAL = "minimal"
    NOT_MINIMAL = "not_minimal"
    UNKNOWN = "unknown"


class Method(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    WEIGHT_RATIO = "weight_ratio"
    CLOSED_FORM = "closed_form"
    ONE_WEIGHT = "one_weight"


@dataclass(frozen=True)
class MinimalityCertificate:
    verdict: Verdict
    method: Method
    theorem: str | None = None
    witness: tuple[Codeword, Codeword] | None = None
    ratio: tuple[int, int] | None = None

    @property
    def is_minimal(self) -> bool:
        return self.verdict is Verdict.MINIMAL

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "method": self.method.value,
            "theorem": self.theorem,
            "ratio": list(self.ratio) if self.ratio else None,
            "witness": None
            if self.witness is None
            else {"covering": list(self.witness[0].symbols), "covered": list(self.witness[1].symbols)},
        }


def _as_word(c) -> tuple[int, ...]:
    return c.symbols if isinstance(c, Codeword) else tuple(int(x) for x in c)


def covers(c2, c1) -> bool:
    """True iff ``supp(c1)`` is contained in ``supp(c2)``."""
    a, b = _as_word(c2), _as_word(c1)
    if len(a) != len(b):
        raise LengthMismatch(f"lengths {len(a)} and {len(b)} differ")
    return all(x or not y for x, y in zip(a, b))


def _require_no_zero_columns(code: LinearCode) -> None:
    zc = zero_columns(code)
    if zc:
        raise ZeroColumn(zc[0])


def is_minimal_vector(c, code: LinearCode) -> bool:
    """Whether nonzero codeword ``c`` covers only its scalar multiples.

    The codewords supported inside ``supp(c)`` are ``{vG : v G_Z = 0}`` with
    ``Z`` the zero set of ``c``; they form a space of dimension
    ``k - rank(G_Z)``, which is 1 exactly when ``c`` is minimal.
    """
    word = np.array(_as_word(c), dtype=np.int64)
    if word.shape != (code.n,):
        raise LengthMismatch(f"word length {word.size} != {code.n}")
    if not word.any():
        raise InvalidParameter("the zero word is not a minimal vector candidate")
    if message_of(code, word) is None:
        raise NotInCode(f"{word.tolist()} is not a codeword")
    zeros = np.flatnonzero(word == 0)
    return code.k - gm.rank(code.gen[:, zeros], code.gf) == 1


# -- exhaustive machinery -------------------------------------------------------


def _pack(bits: np.ndarray) -> np.ndarray:
    """Pack a (W, n) bool array along axis 0, little-endian within bytes."""
    return np.packbits(bits, axis=0, bitorder="little")


class _MaskIndex:
    """Per-coordinate zero masks over the message space of a code."""

    def __init__(self, code: LinearCode, blocks) -> None:
        self.code = code
        self.size = code.q**code.k
        packed, first_one = [], []
        for _, words in blocks:
            packed.append(_pack(words == 0))
            first_one.append(_pack(words[:, :1] == 1))
        cols = np.ascontiguousarray(np.vstack(packed).T)
        self.masks = [int.from_bytes(row.tobytes(), "little") for row in cols]
        self.first_one = int.from_bytes(np.vstack(first_one)[:, 0].tobytes(), "little")
        self.full = (1 << self.size) - 1

    def covered(self, zeros: Sequence[int], start: int, stop_at: int) -> int:
        """AND the masks of ``zeros`` into ``start``; stop once popcount <= stop_at."""
        acc = start
        masks = self.masks
        for j in zeros:
            acc &= masks[j]
            if acc.bit_count() <= stop_at:
                break
        return acc


def _multiples(u: np.ndarray, code: LinearCode) -> set[int]:
    F = code.gf
    return {gm.vector_index(F.mul[lam, u], code.q) for lam in range(code.q)}


def _normalized_messages(code: LinearCode, blocks) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """``(index, u, uG)`` for nonzero messages whose leading nonzero symbol is 1."""
    q, k = code.q, code.k
    for start, words in blocks:
        msgs = gm.all_vectors(q, k, start, start + words.shape[0])
        nzm = msgs != 0
        lead = msgs[np.arange(len(msgs)), np.argmax(nzm, axis=1)]
        for r in np.flatnonzero(nzm.any(axis=1) & (lead == 1)):
            yield start + int(r), msgs[r], words[r]


def _lowest_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def is_minimal_code_exhaustive(code: LinearCode, limit: int | None = None) -> MinimalityCertificate:
    """Check every nonzero codeword.

    One-weight codes are minimal outright.  Otherwise the first failing
    message in lexicographic order, paired with the smallest covered
    non-multiple, is returned as witness.
    """
    _require_no_zero_columns(code)
    blocks = list(codeword_blocks(code, limit))
    if len(weight_histogram(blocks, code.n).nonzero_weights) == 1:
        return MinimalityCertificate(Verdict.MINIMAL, Method.ONE_WEIGHT)
    index = _MaskIndex(code, blocks)
    q = code.q
    for _, u, word in _normalized_messages(code, blocks):
        acc = index.covered(np.flatnonzero(word == 0), index.full, q)
        if acc.bit_count() > q:
            mult = _multiples(u, code)
            vi = next(v for v in _lowest_bits(acc) if v not in mult)
            v = gm.all_vectors(q, code.k, vi, vi + 1)[0]
            witness = (Codeword(word.tolist()), Codeword(encode(code, v)))
            return MinimalityCertificate(Verdict.NOT_MINIMAL, Method.EXHAUSTIVE, witness=witness)
    return MinimalityCertificate(Verdict.MINIMAL, Method.EXHAUSTIVE)


def minimal_codeword_array(code: LinearCode, limit: int | None = None) -> np.ndarray:
    """Minimal codewords as rows, in message order."""
    if code.k == 0 or not code.gen[:, 0].any():
        raise ZeroColumn(0)
    blocks = list(codeword_blocks(code, limit))
    index = _MaskIndex(code, blocks)
    rows = []
    for _, words in blocks:
        for r in np.flatnonzero(words[:, 0] == 1):
            word = words[r]
            acc = index.covered(np.flatnonzero(word == 0), index.first_one, 1)
            if acc.bit_count() == 1:
                rows.append(word)
    return np.array(rows, dtype=np.int64).reshape(-1, code.n)


def minimal_codewords(code: LinearCode, limit: int | None = None) -> list[Codeword]:
    """Codewords with first symbol 1 that cover no other such codeword."""
    return [Codeword(w) for w in minimal_codeword_array(code, limit)]


# -- sufficient conditions --------------------------------------------------------


def weight_ratio_sufficient(code: LinearCode, limit: int | None = None) -> MinimalityCertificate:
    """Minimal when ``q * Wmin > (q - 1) * Wmax``; otherwise Unknown."""
    _require_no_zero_columns(code)
    wd = weight_distribution(code, limit)
    wmin, wmax = wd.wmin, wd.wmax
    if code.q * wmin > (code.q - 1) * wmax:
        return MinimalityCertificate(Verdict.MINIMAL, Method.WEIGHT_RATIO, ratio=(wmin, wmax))
    return MinimalityCertificate(Verdict.UNKNOWN, Method.WEIGHT_RATIO)


def _closed_form_case(q: int, m: int, N: int) -> tuple[str | None, bool]:
    """(case id, condition holds) for the irreducible cyclic code C(q, m, N)."""
    p, s = prime_power(q)
    h = q ** (m // 2)
    if N == 2:
        if m % 2:
            return "3.3b", True
        return "3.3a", 2 * q - h - 1 < 0
    if N == 3:
        if q % 3 == 2:
            if m % 4 == 0:
                return "3.4a", 3 * q - h - 2 < 0
            if m % 4 == 2:
                return "3.4b", 3 * q - h - 1 < 0
        elif q % 3 == 1 and m % 3:
            return "3.4c", True
        return None, False
    if N == 4:
        if q % 4 == 3:
            if m % 4 == 0:
                return "3.5a", 4 * q - h - 3 < 0
            if m % 4 == 2:
                return "3.5b", 4 * q - h - 1 < 0
        elif q % 4 == 1 and p % 4 == 3 and s % 2 == 0:
            if m % 4 == 0:
                return "3.6a", 4 * q - h - 3 < 0
            if m % 4 == 2:
                return "3.6b", 2 * q - h - 1 < 0
        return None, False
    raise UnsupportedN(f"closed-form conditions exist only for N in (2, 3, 4), got {N}")


def closed_form_predicate(q: int, m: int, N: int) -> MinimalityCertificate:
    """Closed-form sufficient conditions for C(q, m, N), N in {2, 3, 4}.

    A failed inequality gives Unknown, never NotMinimal.
    """
    if N not in (2, 3, 4):
        raise UnsupportedN(f"closed-form conditions exist only for N in (2, 3, 4), got {N}")
    if m < 1 or (q**m - 1) % N:
        raise DoesNotDivide(f"N={N} does not divide {q}^{m} - 1")
    case, holds = _closed_form_case(q, m, N)
    if case is not None and holds:
        return MinimalityCertificate(Verdict.MINIMAL, Method.CLOSED_FORM, theorem=case)
    return MinimalityCertificate(Verdict.UNKNOWN, Method.CLOSED_FORM, theorem=case)


def certify(code: LinearCode, limit: int | None = None) -> MinimalityCertificate:
    """Cheapest available certificate: closed form, weight ratio, then exhaustive."""
    prov = code.provenance
    if prov.get("type") == "cyclic" and prov.get("N") in (2, 3, 4):
        cert = closed_form_predicate(prov["q"], prov["m"], prov["N"])
        if cert.is_minimal:
            return cert
    cert = weight_ratio_sufficient(code, limit)
    if cert.is_minimal:
        return cert
    return is_minimal_code_exhaustive(code, limit)


@dataclass(frozen=True)
class TransferReport:
    code_verdict: Verdict
    condensed_verdict: Verdict
    l: int
    t: int

    @property
    def agree(self) -> bool:
        return self.code_verdict is self.condensed_verdict


def minimality_transfer_condensed(q: int, m: int, N: int, field: FieldSpec | None = None, limit: int | None = None) -> TransferReport:
    """Exhaustive verdicts for C(q, m, N) and its condensed section."""
    c = cyclic_code(q, m, N, field)
    cbar = condensed_code(q, m, N, field)
    return TransferReport(
        is_minimal_code_exhaustive(c, limit).verdict,
        is_minimal_code_exhaustive(cbar, limit).verdict,
        cbar.provenance["l"],
        cbar.provenance["t"],
    )

"""Linear codes over GF(q).

Covers generator matrices, duals, exact weight enumeration, the irreducible
cyclic codes ``C(q, m, N)`` built from the trace map, their condensed
length-``l`` sections, and shortening at the last coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Iterator, Sequence

import numpy as np

from . import gfmatrix as gm
from .errors import (
    ColumnsProportional,
    DimensionExhausted,
    DoesNotDivide,
    DualDistanceTooSmall,
    InvalidParameter,
    TooLarge,
    ZeroLastColumn,
)
from .galois import FieldSpec, SmallField, field_build, prime_power

ENUM_LIMIT = 1 << 26

# Elements per block when materializing codewords.
_BLOCK_ELEMENTS = 1 << 22


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A ``[n, k; q]`` code given by a ``k x n`` generator of full row rank.

    ``provenance`` records which construction produced the code;
    ``field`` is the ambient GF(r) when the code came from a trace construction.
    A dimension-0 code (``gen`` of shape ``(0, n)``) is allowed as the dual of
    a full space.
    """

    q: int
    n: int
    k: int
    gen: np.ndarray
    gf: SmallField = dc_field(repr=False)
    provenance: dict = dc_field(default_factory=lambda: {"type": "explicit"})
    field: FieldSpec | None = dc_field(default=None, repr=False)

    def __post_init__(self) -> None:
        g = self.gen
        if g.shape != (self.k, self.n):
            raise InvalidParameter(f"generator shape {g.shape} != ({self.k}, {self.n})")
        if self.n < 1 or self.k > self.n:
            raise InvalidParameter(f"invalid parameters n={self.n}, k={self.k}")
        g.flags.writeable = False

    @classmethod
    def from_generator(
        cls,
        gen,
        q: int | SmallField,
        provenance: dict | None = None,
        field: FieldSpec | None = None,
        canonical: bool = True,
    ) -> "LinearCode":
        """Build a code from any spanning set of rows.

        With ``canonical`` the generator is replaced by its reduced
        row-echelon form; otherwise the rows are kept and must be independent.
        """
        F = q if isinstance(q, SmallField) else SmallField.of_order(q)
        g = gm.as_matrix(gen, F)
        if g.ndim != 2 or g.shape[1] == 0:
            raise InvalidParameter("generator must be a non-empty 2-D matrix")
        if canonical:
            g = gm.row_basis(g, F)
        elif gm.rank(g, F) != g.shape[0]:
            raise InvalidParameter("generator rows are linearly dependent")
        return cls(F.q, g.shape[1], g.shape[0], g, F, dict(provenance or {"type": "explicit"}), field)

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.n, self.k, self.q)

    def __repr__(self) -> str:
        return f"LinearCode([{self.n}, {self.k}; {self.q}], {self.provenance.get('type')})"

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "gen": self.gen.tolist(),
            "provenance": self.provenance,
        }
        if self.field is not None:
            out["field"] = self.field.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "LinearCode":
        field = FieldSpec.from_json(obj["field"]) if obj.get("field") else None
        q = int(obj["q"])
        F = field.subfield() if field is not None and field.q == q else SmallField.of_order(q)
        gen = np.array(obj["gen"], dtype=np.int64).reshape(int(obj["k"]), int(obj["n"]))
        code = cls.from_generator(gen, F, obj.get("provenance"), field, canonical=False)
        return code


@dataclass(frozen=True)
class Codeword:
    symbols: tuple[int, ...]
    support: tuple[int, ...] = dc_field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(int(x) for x in self.symbols))
        object.__setattr__(self, "support", tuple(i for i, x in enumerate(self.symbols) if x))

    @property
    def weight(self) -> int:
        return len(self.support)

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True)
class WeightDistribution:
    """Map Hamming weight -> number of codewords."""

    counts: dict[int, int]

    @property
    def nonzero_weights(self) -> list[int]:
        return sorted(w for w, c in self.counts.items() if w and c)

    @property
    def wmin(self) -> int:
        return self.nonzero_weights[0]

    @property
    def wmax(self) -> int:
        return self.nonzero_weights[-1]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> dict[str, int]:
        return {str(w): self.counts[w] for w in self.nonzero_weights}

    @classmethod
    def from_json(cls, obj: dict) -> "WeightDistribution":
        counts = {int(w): int(c) for w, c in obj.items()}
        counts.setdefault(0, 1)
        return cls(dict(sorted(counts.items())))


# -- enumeration -----------------------------------------------------------------


def encode(code: LinearCode, messages) -> np.ndarray:
    """Codewords ``u @ G`` for each row ``u`` of ``messages``."""
    m = np.asarray(messages, dtype=np.int64)
    if m.ndim == 1:
        return gm.matmul(m.reshape(1, -1), code.gen, code.gf)[0]
    return gm.matmul(m, code.gen, code.gf)


def _guard(code: LinearCode, limit: int | None) -> int:
    limit = ENUM_LIMIT if limit is None else limit
    size = code.q**code.k
    if size > limit:
        raise TooLarge(f"{code.q}^{code.k} = {size} codewords exceeds the enumeration limit {limit}")
    return size


def _encode_block(code: LinearCode, msgs: np.ndarray) -> np.ndarray:
    F = code.gf
    if F.is_prime and F.q < 256 and code.k * (F.q - 1) ** 2 < 1 << 31:
        x = (msgs.astype(np.float64) @ code.gen.astype(np.float64)).astype(np.int32)
        x = x & 1 if F.q == 2 else x % F.q
        return x.astype(np.uint8)
    return gm.matmul(msgs, code.gen, F)


def codeword_blocks(code: LinearCode, limit: int | None = None, block: int | None = None) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(start, words)`` covering all codewords in message order.

    ``words`` may be ``uint8``; use :func:`encode` for ``int64`` results.
    """
    total = _guard(code, limit)
    if block is None:
        block = max(8, (_BLOCK_ELEMENTS // max(code.n, 1)) // 8 * 8)
    for start in range(0, total, block):
        if code.k == 0:
            yield start, np.zeros((1, code.n), dtype=np.uint8)
            continue
        msgs = gm.all_vectors(code.q, code.k, start, min(total, start + block))
        yield start, _encode_block(code, msgs)


def codewords(code: LinearCode, limit: int | None = None) -> np.ndarray:
    """All ``q**k`` codewords, row ``i`` encoding message ``all_vectors(q, k)[i]``."""
    return np.vstack([w for _, w in codeword_blocks(code, limit)]).astype(np.int64)


def weight_histogram(blocks, n: int) -> WeightDistribution:
    hist = np.zeros(n + 1, dtype=np.int64)
    for _, words in blocks:
        hist += np.bincount(np.count_nonzero(words, axis=1), minlength=n + 1)
    return WeightDistribution({w: int(c) for w, c in enumerate(hist) if c})


def weight_distribution(code: LinearCode, limit: int | None = None) -> WeightDistribution:
    return weight_histogram(codeword_blocks(code, limit), code.n)


def minimum_distance(code: LinearCode, limit: int | None = None) -> int:
    weights = weight_distribution(code, limit).nonzero_weights
    if not weights:
        raise InvalidParameter("the zero code has no minimum distance")
    return weights[0]


# -- column structure ----------------------------------------------------------


def zero_columns(code: LinearCode) -> list[int]:
    return [int(j) for j in np.flatnonzero(~code.gen.any(axis=0))]


def proportional_column_pair(code: LinearCode) -> tuple[int, int] | None:
    """First pair ``(i, j)``, ``i < j``, of columns that are GF(q)-multiples.

    A zero column counts as a multiple of every column.
    """
    zeros = zero_columns(code)
    if zeros and code.n > 1:
        z = zeros[0]
        return (0, z) if z else (0, 1)
    F = code.gf
    seen: dict[bytes, int] = {}
    for j in range(code.n):
        col = code.gen[:, j]
        lead = col[np.flatnonzero(col)[0]]
        key = F.mul[F.inv[lead], col].tobytes()
        if key in seen:
            return (seen[key], j)
        seen[key] = j
    return None


def dual_distance_exceeds_two(code: LinearCode) -> bool:
    """True iff the dual has no codeword of weight 1 or 2.

    Equivalent to: no zero column and no two proportional columns.
    """
    return proportional_column_pair(code) is None and not zero_columns(code)


# -- constructions ----------------------------------------------------------------


def _ambient(q: int, m: int, N: int, field: FieldSpec | None) -> FieldSpec:
    p, s = prime_power(q)
    if m < 1:
        raise InvalidParameter("m must be positive")
    if field is None:
        field = field_build(p, s, m)
    elif (field.p, field.s, field.m) != (p, s, m):
        raise InvalidParameter(f"field {field!r} is not GF({q}^{m})")
    if N <= 1:
        raise InvalidParameter(f"N must exceed 1, got {N}")
    if (field.r - 1) % N:
        raise DoesNotDivide(f"N={N} does not divide {q}^{m} - 1 = {field.r - 1}")
    return field


def _trace_rows(f: FieldSpec, N: int, length: int) -> np.ndarray:
    """Rows ``(Tr(b theta^i))_{i<length}`` for b = alpha^j, j < m; theta = alpha^N."""
    T = f.trace_table
    e = (np.arange(f.m)[:, None] + N * np.arange(length)[None, :]) % (f.r - 1)
    return T[e]


def cyclic_code(q: int, m: int, N: int, field: FieldSpec | None = None) -> LinearCode:
    """The irreducible cyclic code ``{(Tr(b), Tr(b theta), ..., Tr(b theta^(n-1)))}``.

    ``theta = alpha**N`` and ``n = (q**m - 1)/N``.  Rows are generated from
    b = 1, alpha, ..., alpha^(m-1) (a GF(q)-basis of GF(q^m)) and brought to RREF.
    """
    f = _ambient(q, m, N, field)
    n = (f.r - 1) // N
    prov = {"type": "cyclic", "q": q, "m": m, "N": N}
    return LinearCode.from_generator(_trace_rows(f, N, n), f.subfield(), prov, f)


def condensed_length(f: FieldSpec, N: int) -> int:
    """Least ``l >= 1`` with ``theta**l`` in GF(q)."""
    step = f.subfield_step
    n = (f.r - 1) // N
    for l in range(1, n + 1):
        if (N * l) % step == 0:
            return l
    return n  # pragma: no cover - theta**n = 1 always lies in GF(q)


def condensed_code(q: int, m: int, N: int, field: FieldSpec | None = None) -> LinearCode:
    """The length-``l`` section of ``C(q, m, N)``.

    The full code is ``l``-periodic up to the scalar ``e = theta**l``:
    ``c = (c_bar | e c_bar | ... | e^(t-1) c_bar)`` with ``n = l t``.
    """
    f = _ambient(q, m, N, field)
    n = (f.r - 1) // N
    l = condensed_length(f, N)
    if n % l:
        raise InvalidParameter(f"l={l} does not divide n={n}")  # pragma: no cover
    e_code = int(f.exp_table[(N * l) % (f.r - 1)])
    e = f._symbol_of_code[e_code]
    prov = {"type": "condensed", "q": q, "m": m, "N": N, "l": l, "t": n // l, "e": e}
    return LinearCode.from_generator(_trace_rows(f, N, l), f.subfield(), prov, f)


def _shortened_provenance(parent: dict) -> dict:
    if parent.get("type") == "shortened":
        return {"type": "shortened", "parent": parent["parent"], "steps": parent["steps"] + 1}
    return {"type": "shortened", "parent": parent, "steps": 1}


def _column_proportional_to_last(c: LinearCode) -> int | None:
    F = c.gf
    last = c.gen[:, -1]
    lead = np.flatnonzero(last)[0]
    target = F.mul[F.inv[last[lead]], last]
    for j in range(c.n - 1):
        col = c.gen[:, j]
        nz = np.flatnonzero(col)
        if nz.size == 0 or (F.mul[F.inv[col[nz[0]]], col] == target).all():
            return j
    return None


def shorten_once(c: LinearCode, strict: bool = True) -> LinearCode:
    """``C(n)[n-1]``: codewords vanishing at the last coordinate, with it removed.

    One row with a nonzero last entry is used as pivot to clear the last
    column from every other row; that row and the last column are then
    dropped.  With ``strict`` no two columns may be proportional; otherwise
    only the last column is checked against the others, which is exactly
    what keeps the result free of zero columns.
    """
    if c.k <= 1:
        raise DimensionExhausted(f"shortening a dimension-{c.k} code leaves dimension {c.k - 1}")
    F = c.gf
    G = np.array(c.gen, copy=True)
    last = c.n - 1
    nz = np.flatnonzero(G[:, last])
    if nz.size == 0:
        raise ZeroLastColumn("every codeword vanishes at the last coordinate")
    if strict:
        pair = proportional_column_pair(c)
        if pair is not None:
            raise ColumnsProportional(*pair)
    else:
        j = _column_proportional_to_last(c)
        if j is not None:
            raise ColumnsProportional(j, last)
    i = int(nz[0])
    if i:
        G[[0, i]] = G[[i, 0]]
    pivot = G[0]
    factors = F.mul[F.inv[pivot[last]], G[1:, last]]
    rest = F.sub(G[1:], F.mul[factors[:, None], pivot[None, :]])
    return LinearCode.from_generator(rest[:, :last], F, _shortened_provenance(c.provenance), c.field, canonical=False)


def shorten_steps(c: LinearCode, i: int) -> LinearCode:
    """Shorten ``i + 1`` times: an ``[n-i-1, k-i-1; q]`` code.

    Requires ``k - i - 1 >= 1`` and a dual of minimum distance above two.
    Shortened codes may acquire proportional column pairs, so the later
    steps only insist that the deleted column is not proportional to a
    surviving one.
    """
    if i < 0:
        raise InvalidParameter(f"step index must be non-negative, got {i}")
    if c.k - i - 1 < 1:
        raise DimensionExhausted(f"k - i - 1 = {c.k - i - 1} < 1")
    if not dual_distance_exceeds_two(c):
        raise DualDistanceTooSmall("the dual code has a codeword of weight at most 2")
    out = c
    for _ in range(i + 1):
        out = shorten_once(out, strict=False)
    if zero_columns(out):  # pragma: no cover - excluded by the per-step check
        raise AssertionError(f"shortened code has zero columns {zero_columns(out)}")
    return out


def dual(c: LinearCode) -> LinearCode:
    """The ``[n, n-k; q]`` dual code."""
    F = c.gf
    if c.k == 0:
        h = np.eye(c.n, dtype=np.int64)
    else:
        h = gm.nullspace(c.gen, F)
    prov = {"type": "dual", "parent": c.provenance}
    return LinearCode(c.q, c.n, h.shape[0], h.reshape(-1, c.n), F, prov, c.field)


def explicit_code(rows: Sequence[Sequence[int]], q: int) -> LinearCode:
    return LinearCode.from_generator(rows, q)


def is_codeword(code: LinearCode, word: Sequence[int]) -> bool:
    w = np.asarray(word, dtype=np.int64)
    if w.shape != (code.n,):
        return False
    if code.k == 0:
        return not w.any()
    return gm.solve(code.gen.T, w, code.gf) is not None


def message_of(code: LinearCode, word: Sequence[int]) -> np.ndarray | None:
    """The unique ``u`` with ``u @ G == word``, or ``None``."""
    return gm.solve(code.gen.T, np.asarray(word, dtype=np.int64), code.gf)


def cyclic_shift(word: Sequence[int], by: int = 1) -> tuple[int, ...]:
    w = tuple(word)
    by %= len(w)
    return w[-by:] + w[:-by] if by else w


__all__ = [
    "ENUM_LIMIT",
    "Codeword",
    "LinearCode",
    "WeightDistribution",
    "codeword_blocks",
    "codewords",
    "condensed_code",
    "condensed_length",
    "cyclic_code",
    "cyclic_shift",
    "dual",
    "dual_distance_exceeds_two",
    "encode",
    "explicit_code",
    "is_codeword",
    "message_of",
    "minimum_distance",
    "proportional_column_pair",
    "shorten_once",
    "shorten_steps",
    "weight_distribution",
    "zero_columns",
]

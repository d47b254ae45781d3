"""Massey secret sharing on the dual of a minimal code.

The scheme code ``D`` has generator columns ``g_0, g_1, ..., g_{n-1}``.  The
dealer picks ``u`` with ``u . g_0 = s``, publishes nothing and hands share
``t_i = u . g_i`` to participant ``P_i``.  A coalition ``A`` learns ``s``
exactly when ``g_0`` lies in the span of ``{g_i : i in A}``.

When ``D`` is the dual of a code ``C``, the minimal authorized coalitions are
the supports (minus coordinate 0) of the minimal codewords of ``C`` whose first
symbol is 1.  Participants are numbered from 1, matching coordinate ``i`` of
the codeword.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Protocol

import numpy as np

from . import gfmatrix as gm
from .errors import (
    InvalidParameter,
    LengthMismatch,
    NotAuthorized,
    NotCertifiedMinimal,
    UnsupportedS,
    ZeroSecretColumn,
)
from .galois import FieldSpec, prime_power
from .lincode import LinearCode, _ambient, cyclic_code, encode
from .minimality import MinimalityCertificate, certify, minimal_codeword_array

_ROW_BLOCK_ELEMENTS = 1 << 22


class RandomSource(Protocol):
    def randrange(self, stop: int) -> int: ...


@dataclass(frozen=True, eq=False)
class ShareDeal:
    """One dealt secret: ``(secret, shares...)`` is a codeword of ``scheme_code``."""

    secret: int
    shares: tuple[int, ...]
    scheme_code: LinearCode = dc_field(repr=False)
    message: tuple[int, ...] | None = None

    @property
    def word(self) -> tuple[int, ...]:
        return (self.secret, *self.shares)

    def share_map(self, coalition: Iterable[int] | None = None) -> dict[int, int]:
        """``{participant: share}`` for the coalition (everyone by default)."""
        members = range(1, len(self.shares) + 1) if coalition is None else coalition
        return {int(i): self.shares[int(i) - 1] for i in members}

    def to_json(self) -> dict:
        return {"secret": self.secret, "shares": {str(i): t for i, t in enumerate(self.shares, 1)}}


def _secret_column(scheme_code: LinearCode) -> np.ndarray:
    g0 = scheme_code.gen[:, 0] if scheme_code.k else np.zeros(0, dtype=np.int64)
    if not g0.any():
        raise ZeroSecretColumn("column 0 of the scheme generator is zero; the secret would always be 0")
    return g0


def deal(
    scheme_code: LinearCode,
    secret: int,
    rng: RandomSource | None = None,
    keep_message: bool = False,
) -> ShareDeal:
    """Share ``secret`` using a message drawn uniformly from ``{u : u . g_0 = secret}``.

    ``rng`` needs only ``randrange``; ``random.Random(seed)`` gives
    reproducible deals and the default is :class:`secrets.SystemRandom`.
    """
    q, F = scheme_code.q, scheme_code.gf
    if not 0 <= int(secret) < q:
        raise InvalidParameter(f"secret must be a GF({q}) symbol in 0..{q - 1}, got {secret}")
    g0 = _secret_column(scheme_code)
    rng = rng if rng is not None else secrets.SystemRandom()
    u = np.array([rng.randrange(q) for _ in range(scheme_code.k)], dtype=np.int64)
    # solve for the first coordinate where g_0 is nonzero so that u . g_0 = secret
    i = int(np.flatnonzero(g0)[0])
    u[i] = 0
    rest = int(gm.matmul(u.reshape(1, -1), g0.reshape(-1, 1), F)[0, 0])
    u[i] = F.mul[F.sub(int(secret), rest), F.inv[g0[i]]]
    word = encode(scheme_code, u)
    assert int(word[0]) == int(secret)
    return ShareDeal(
        int(secret),
        tuple(int(x) for x in word[1:]),
        scheme_code,
        tuple(int(x) for x in u) if keep_message else None,
    )


def _participants(coalition: Iterable[int], n: int) -> list[int]:
    members = sorted({int(i) for i in coalition})
    bad = [i for i in members if not 1 <= i <= n - 1]
    if bad:
        raise InvalidParameter(f"participants must lie in 1..{n - 1}, got {bad}")
    return members


def reconstruction_vector(coalition: Iterable[int], scheme_code: LinearCode) -> dict[int, int] | None:
    """Coefficients ``x`` with ``sum_j x_j g_j = g_0`` over the coalition, or ``None``."""
    members = _participants(coalition, scheme_code.n)
    if not members or scheme_code.k == 0:
        return None
    g0 = scheme_code.gen[:, 0]
    x = gm.solve(scheme_code.gen[:, members], g0, scheme_code.gf)
    if x is None:
        return None
    return {i: int(c) for i, c in zip(members, x)}


def is_authorized(coalition: Iterable[int], scheme_code: LinearCode) -> bool:
    return reconstruction_vector(coalition, scheme_code) is not None


def reconstruct(shares: Mapping[int, int], coalition: Iterable[int], scheme_code: LinearCode) -> int:
    """Recover the secret from the coalition's shares.

    Raises :class:`NotAuthorized` when ``g_0`` is outside the span of the
    coalition's columns (including the empty coalition).
    """
    members = _participants(coalition, scheme_code.n)
    missing = [i for i in members if i not in shares and str(i) not in shares]
    if missing:
        raise InvalidParameter(f"no share supplied for participants {missing}")
    x = reconstruction_vector(members, scheme_code)
    if x is None:
        raise NotAuthorized(f"coalition {members} cannot determine the secret")
    F = scheme_code.gf
    acc = 0
    for i, c in x.items():
        t = int(shares[i] if i in shares else shares[str(i)])  # type: ignore[index]
        if not 0 <= t < scheme_code.q:
            raise InvalidParameter(f"share of participant {i} is not a GF({scheme_code.q}) symbol: {t}")
        acc = int(F.add[acc, F.mul[c, t]])
    return acc


# -- access structures ---------------------------------------------------------------


def _canonical_rows(incidence: np.ndarray) -> np.ndarray:
    """Deduplicate rows and order them like the sorted 1-based tuple lists."""
    inc = np.asarray(incidence, dtype=bool)
    if inc.shape[1] == 0:  # no participants: at most the empty coalition
        return inc[: min(1, inc.shape[0])]
    inc = np.unique(inc, axis=0)
    if inc.shape[0] <= 1:
        return inc
    sets = [tuple(np.flatnonzero(row)) for row in inc]
    order = sorted(range(len(sets)), key=sets.__getitem__)
    return inc[order]


class AccessStructure:
    """Minimal authorized coalitions over participants ``1..num_participants``.

    Stored as a boolean incidence matrix (one row per coalition); the tuple
    view :attr:`sets` is built on demand.
    """

    def __init__(self, incidence, num_participants: int, source: dict | None = None) -> None:
        inc = np.asarray(incidence, dtype=bool)
        if inc.ndim != 2:
            inc = inc.reshape(-1, num_participants)
        self.incidence = _canonical_rows(inc)
        self.incidence.flags.writeable = False
        self.num_participants = num_participants
        self.source = dict(source or {})
        self._sets: list[tuple[int, ...]] | None = None

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]], num_participants: int, source: dict | None = None):
        rows = []
        for s in sets:
            row = np.zeros(num_participants, dtype=bool)
            row[[i - 1 for i in s]] = True
            rows.append(row)
        return cls(np.array(rows, dtype=bool).reshape(len(rows), num_participants), num_participants, source)

    @property
    def count(self) -> int:
        return int(self.incidence.shape[0])

    @property
    def sets(self) -> list[tuple[int, ...]]:
        if self._sets is None:
            self._sets = [tuple(int(j) + 1 for j in np.flatnonzero(row)) for row in self.incidence]
        return self._sets

    @property
    def dictators(self) -> list[int]:
        if self.count == 0:
            return []
        return [int(j) + 1 for j in np.flatnonzero(self.incidence.all(axis=0))]

    @property
    def frequency(self) -> dict[int, int]:
        counts = self.incidence.sum(axis=0)
        return {j + 1: int(c) for j, c in enumerate(counts)}

    def is_antichain(self) -> bool:
        inc = self.incidence.astype(np.int64)
        inter = inc @ inc.T
        sizes = inc.sum(axis=1)
        contained = inter == sizes[:, None]  # row a is inside row b
        np.fill_diagonal(contained, False)
        return not contained.any()

    def admits(self, coalition: Iterable[int]) -> bool:
        """Whether the coalition contains some minimal authorized set."""
        mask = np.zeros(self.num_participants, dtype=bool)
        members = list(coalition)
        if members:
            mask[[i - 1 for i in members]] = True
        return bool((~self.incidence | mask).all(axis=1).any())

    def __eq__(self, other) -> bool:
        if not isinstance(other, AccessStructure):
            return NotImplemented
        return self.num_participants == other.num_participants and np.array_equal(self.incidence, other.incidence)

    def __repr__(self) -> str:
        return f"AccessStructure({self.count} sets over {self.num_participants} participants)"

    def to_json(self) -> dict:
        return {
            "sets": [list(s) for s in self.sets],
            "dictators": self.dictators,
            "frequency": {str(j): c for j, c in self.frequency.items()},
            "count": self.count,
        }


def _require_minimal(code: LinearCode, certificate: MinimalityCertificate | None) -> MinimalityCertificate:
    cert = certificate if certificate is not None else certify(code)
    if not cert.is_minimal:
        raise NotCertifiedMinimal(f"{code!r} is not certified minimal (verdict {cert.verdict.value})")
    return cert


def access_structure(
    minimal_code: LinearCode,
    certificate: MinimalityCertificate | None = None,
    limit: int | None = None,
) -> AccessStructure:
    """Minimal authorized sets of the scheme on ``dual(minimal_code)``.

    Without an explicit certificate the code is certified first.
    """
    _require_minimal(minimal_code, certificate)
    rows = minimal_codeword_array(minimal_code, limit)
    return AccessStructure(rows[:, 1:] != 0, minimal_code.n - 1, minimal_code.provenance)


def access_structure_trace(
    q: int,
    m: int,
    N: int,
    field: FieldSpec | None = None,
    certificate: MinimalityCertificate | None = None,
) -> AccessStructure:
    """Access structure of C(q, m, N) read straight off the trace.

    For every ``beta`` in GF(r)* with ``Tr(beta) = 1`` the coalition is
    ``{j in 1..n-1 : Tr(beta theta^j) != 0}``; repeated coalitions are merged.
    Only prime ``q`` is supported.
    """
    _, s = prime_power(q)
    if s != 1:
        raise UnsupportedS(f"the trace enumeration needs a prime q, got q = {q} (s = {s})")
    f = _ambient(q, m, N, field)
    n = (f.r - 1) // N
    if certificate is None:
        certificate = certify(cyclic_code(q, m, N, f))
    _require_minimal(cyclic_code(q, m, N, f), certificate)
    T = f.trace_table
    order = f.r - 1
    betas = np.flatnonzero(T == 1)
    steps = N * np.arange(1, n, dtype=np.int64)
    chunk = max(1, _ROW_BLOCK_ELEMENTS // max(n, 1))
    parts = []
    for start in range(0, betas.size, chunk):
        b = betas[start : start + chunk]
        rows = T[(b[:, None] + steps[None, :]) % order] != 0
        parts.append(np.unique(rows, axis=0))
    incidence = np.vstack(parts) if parts else np.zeros((0, n - 1), dtype=bool)
    return AccessStructure(incidence, n - 1, {"type": "cyclic", "q": q, "m": m, "N": N})


def dictator_prediction(q: int, m: int, N: int, code: LinearCode | None = None) -> set[int]:
    """Participants predicted to lie in every minimal authorized set.

    q = 2 gives none.  q = 3 with N = 2 gives ``{n/2}`` for even ``n``.
    Otherwise ``P_i`` is a dictator iff ``g_i`` is a GF(q)-multiple of ``g_0``.
    """
    n = (q**m - 1) // N
    if q == 2:
        return set()
    if q == 3 and N == 2:
        return {n // 2} if n % 2 == 0 else set()
    code = code if code is not None else cyclic_code(q, m, N)
    if code.n != n:
        raise LengthMismatch(f"code length {code.n} != {n}")
    return proportional_to_secret_column(code)


def proportional_to_secret_column(code: LinearCode) -> set[int]:
    """``{i >= 1 : g_i = lambda g_0}`` for some nonzero lambda."""
    F = code.gf
    g0 = code.gen[:, 0]
    if not g0.any():
        return set()
    out = set()
    for lam in range(1, code.q):
        scaled = F.mul[lam, g0]
        hits = np.flatnonzero((code.gen == scaled[:, None]).all(axis=0))
        out.update(int(i) for i in hits if i > 0)
    return out


__all__ = [
    "AccessStructure",
    "ShareDeal",
    "access_structure",
    "access_structure_trace",
    "deal",
    "dictator_prediction",
    "is_authorized",
    "proportional_to_secret_column",
    "reconstruct",
    "reconstruction_vector",
]

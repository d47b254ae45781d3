"""Finite fields GF(p), GF(q) = GF(p^s) and GF(r) = GF(q^m).

GF(r) is realized once, as GF(p)[x] modulo a monic irreducible polynomial of
degree s*m.  GF(q) is the subfield fixed by the Frobenius map x -> x^q.
Elements are stored as little-endian coefficient vectors; internally they are
also addressed by an integer *code* ``sum(c_i * p**i)`` which indexes the
exp/log tables built for fields with at most ``TABLE_LIMIT`` elements.

Elements of GF(q) are exchanged with the coding layer as small integers
("symbols").  For s = 1 symbol k is the residue k.  For s > 1 symbol 0 is
zero and symbol i + 1 is g**i where g = alpha**((r - 1)/(q - 1)).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    InvalidParameter,
    NoPrimitiveRootFound,
    NotInSubfield,
    NotPrime,
    ReducibleModulus,
)

TABLE_LIMIT = 1 << 20


# -- integer helpers ---------------------------------------------------------


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p**s``; raise :class:`NotPrime` if q is not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    factors = prime_factors(q)
    if len(factors) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p = factors[0]
    s = 0
    while q > 1:
        q //= p
        s += 1
    return p, s


# -- polynomials over GF(p), little-endian coefficient lists --------------------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        _trim(a)
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _x_pow_mod(e: int, f: Sequence[int], p: int) -> list[int]:
    """x**e mod f."""
    result = [1]
    base = _poly_mod([0, 1], f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``f`` over GF(p)."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if _poly_sub(_x_pow_mod(p**n, f, p), x, p):
        return False
    for ell in prime_factors(n):
        h = _poly_sub(_x_pow_mod(p ** (n // ell), f, p), x, p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


# -- GF(q) symbol arithmetic -------------------------------------------------


SMALL_TABLE_LIMIT = 256


class _Op:
    """A binary operation indexed like a lookup table: ``op[a, b]`` broadcasts."""

    def __init__(self, fn) -> None:
        self._fn = fn

    def __getitem__(self, key):
        a, b = key
        return self._fn(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))


class SmallField:
    """Arithmetic on GF(q) symbols ``0..q-1``.

    ``add`` and ``mul`` are indexed like tables so whole vectors combine with
    fancy indexing, e.g. ``F.add[a, F.mul[c, b]]``.  Up to
    ``SMALL_TABLE_LIMIT`` they are real ``q x q`` arrays; above it they are
    computed (residue arithmetic for prime q, log/Zech-log arithmetic
    otherwise) so large fields never allocate ``q**2`` entries.
    ``neg`` and ``inv`` are always length-``q`` arrays.
    """

    def __init__(self, q: int, p: int, add, mul, neg: np.ndarray, inv: np.ndarray) -> None:
        self.q = q
        self.p = p
        self.is_prime = q == p
        self.add = add
        self.mul = mul
        self.neg = neg
        self.inv = inv
        for t in (self.add, self.mul, self.neg, self.inv):
            if isinstance(t, np.ndarray):
                t.flags.writeable = False

    @classmethod
    def prime_field(cls, p: int) -> "SmallField":
        return _prime_small_field(p)

    @classmethod
    def of_order(cls, q: int) -> "SmallField":
        """Default GF(q): the prime field, or the subfield of ``field_build(p, s, 1)``."""
        p, s = prime_power(q)
        if s == 1:
            return _prime_small_field(p)
        return field_build(p, s, 1).subfield()

    @property
    def has_tables(self) -> bool:
        return isinstance(self.mul, np.ndarray)

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def elements(self) -> range:
        return range(self.q)

    def __repr__(self) -> str:
        return f"SmallField(q={self.q})"


def _tabulate(q: int, op) -> np.ndarray:
    r = np.arange(q, dtype=np.int64)
    return np.asarray(op[r[:, None], r[None, :]], dtype=np.int64)


@functools.lru_cache(maxsize=None)
def _prime_small_field(p: int) -> SmallField:
    r = np.arange(p, dtype=np.int64)
    add = _Op(lambda a, b: (a + b) % p)
    mul = _Op(lambda a, b: (a * b) % p)
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = [pow(int(a), p - 2, p) for a in r[1:]]
    if p <= SMALL_TABLE_LIMIT:
        add, mul = _tabulate(p, add), _tabulate(p, mul)
    return SmallField(p, p, add, mul, (-r) % p, inv)


def _log_field(q: int, p: int, zech: np.ndarray) -> SmallField:
    """GF(q) with symbol 0 = 0 and symbol ``i + 1`` = ``g**i``.

    ``zech[k]`` is the symbol of ``1 + g**k``.
    """
    order = q - 1

    def mul(a, b):
        out = (a - 1 + b - 1) % order + 1
        return np.where((a == 0) | (b == 0), 0, out)

    def add(a, b):
        a, b = np.broadcast_arrays(a, b)
        z = zech[(b - a) % order]  # a + b = g^(a-1) (1 + g^(b-a))
        both = np.where(z == 0, 0, (a - 1 + z - 1) % order + 1)
        return np.where(a == 0, b, np.where(b == 0, a, both))

    r = np.arange(q, dtype=np.int64)
    inv = np.where(r == 0, 0, (-(r - 1)) % order + 1)
    minus_one = int(np.flatnonzero(zech == 0)[0]) + 1  # g^k = -1 exactly when 1 + g^k = 0
    neg = np.where(r == 0, 0, mul(r, np.full(q, minus_one)))
    add_op, mul_op = _Op(add), _Op(mul)
    if q <= SMALL_TABLE_LIMIT:
        add_op, mul_op = _tabulate(q, add_op), _tabulate(q, mul_op)
    return SmallField(q, p, add_op, mul_op, neg.astype(np.int64), inv.astype(np.int64))


# -- extension fields -----------------------------------------------------------


class FieldSpec:
    """GF(r) with r = q**m and q = p**s, in a polynomial basis over GF(p).

    Instances are immutable; lookup tables are built lazily and cached.
    Use :func:`field_build` rather than calling the constructor directly so
    that default moduli are found and instances are shared.
    """

    def __init__(
        self,
        p: int,
        s: int,
        m: int,
        modulus: Sequence[int],
        generator_hint: Sequence[int] | None = None,
    ) -> None:
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if s < 1 or m < 1:
            raise InvalidParameter("s and m must be positive")
        d = s * m
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise InvalidParameter(f"modulus must be monic of degree {d}: {list(modulus)}")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"{list(modulus)} is reducible over GF({p})")
        self.p, self.s, self.m = p, s, m
        self.degree = d
        self.q = p**s
        self.r = p**d
        self.modulus = modulus
        self._pw = np.array([p**i for i in range(d)], dtype=np.int64)
        if generator_hint is not None:
            code = self._code(generator_hint)
            if not self._has_full_order(code):
                raise InvalidParameter(f"generator hint {list(generator_hint)} is not primitive")
            self._alpha = code
        else:
            self._alpha = self._find_primitive()
        self.generator_hint = None if generator_hint is None else self._digits(self._alpha)
        self._exp: np.ndarray | None = None
        self._log: np.ndarray | None = None

    # identity ---------------------------------------------------------------

    def _key(self):
        return (self.p, self.s, self.m, self.modulus, self._alpha)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, s={self.s}, m={self.m}, modulus={list(self.modulus)})"

    # code <-> digits --------------------------------------------------------

    def _digits(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.degree):
            code, c = divmod(code, self.p)
            out.append(c)
        return tuple(out)

    def _code(self, digits: Sequence[int]) -> int:
        if len(digits) > self.degree:
            raise InvalidParameter(f"element has more than {self.degree} coefficients")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(digits))

    def _add_codes(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self._code([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _neg_code(self, a: int) -> int:
        return self._code([(-x) % self.p for x in self._digits(a)])

    def _mul_slow(self, a: int, b: int) -> int:
        prod = _poly_mul(self._digits(a), self._digits(b), self.p)
        return self._code(_poly_mod(prod, self.modulus, self.p))

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def _has_full_order(self, code: int) -> bool:
        if code == 0:
            return False
        n = self.r - 1
        if self._pow_slow(code, n) != 1:
            return False
        return all(self._pow_slow(code, n // ell) != 1 for ell in prime_factors(n))

    def _find_primitive(self) -> int:
        for code in range(1, self.r):
            if self._has_full_order(code):
                return code
        raise NoPrimitiveRootFound(repr(self))

    # tables -------------------------------------------------------------------

    @property
    def has_tables(self) -> bool:
        return self.r <= TABLE_LIMIT

    def _build_tables(self) -> None:
        if self._exp is not None:
            return
        if not self.has_tables:
            raise InvalidParameter(f"GF({self.r}) exceeds the log-table limit {TABLE_LIMIT}")
        n = self.r - 1
        exp = np.empty(n, dtype=np.int64)
        d, p = self.degree, self.p
        x_code = p if d > 1 else (-self.modulus[0]) % p
        cur = 1
        if self._alpha == x_code and p == 2 and d > 1:
            top = 1 << d
            fcode = sum(c << i for i, c in enumerate(self.modulus))
            for i in range(n):
                exp[i] = cur
                cur <<= 1
                if cur & top:
                    cur ^= fcode
        elif self._alpha == x_code and d > 1:
            f = self.modulus
            digs = list(self._digits(1))
            pw = [p**i for i in range(d)]
            for i in range(n):
                exp[i] = sum(c * w for c, w in zip(digs, pw))
                lead = digs[-1]
                digs = [0] + digs[:-1]
                if lead:
                    digs = [(c - lead * fc) % p for c, fc in zip(digs, f)]
        else:
            for i in range(n):
                exp[i] = cur
                cur = self._mul_slow(cur, self._alpha)
        log = np.full(self.r, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if (log[1:] < 0).any():
            raise NoPrimitiveRootFound(f"alpha does not generate {self!r}")
        exp.flags.writeable = False
        log.flags.writeable = False
        self._exp, self._log = exp, log

    @property
    def exp_table(self) -> np.ndarray:
        """``exp_table[e]`` is the code of alpha**e, 0 <= e < r - 1."""
        self._build_tables()
        return self._exp

    @property
    def log_table(self) -> np.ndarray:
        """``log_table[code]`` is the discrete log of a nonzero code; -1 at zero."""
        self._build_tables()
        return self._log

    def digit_matrix(self, codes: np.ndarray) -> np.ndarray:
        """Coefficient vectors of an array of codes, shape ``codes.shape + (degree,)``."""
        return (codes[..., None] // self._pw) % self.p

    # elements ---------------------------------------------------------------

    def element(self, rep: Sequence[int] | int) -> "FieldElement":
        if isinstance(rep, (int, np.integer)):
            rep = (int(rep),)
        digits = tuple(int(c) % self.p for c in rep) + (0,) * (self.degree - len(rep))
        if len(digits) != self.degree:
            raise InvalidParameter(f"element has more than {self.degree} coefficients")
        return FieldElement(digits, self)

    def from_code(self, code: int) -> "FieldElement":
        return FieldElement(self._digits(int(code)), self)

    @property
    def zero(self) -> "FieldElement":
        return self.from_code(0)

    @property
    def one(self) -> "FieldElement":
        return self.from_code(1)

    @property
    def alpha(self) -> "FieldElement":
        return self.from_code(self._alpha)

    def alpha_power(self, e: int) -> "FieldElement":
        if self.has_tables:
            return self.from_code(int(self.exp_table[e % (self.r - 1)]))
        return self.from_code(self._pow_slow(self._alpha, e % (self.r - 1)))

    def elements(self) -> Iterator["FieldElement"]:
        for code in range(self.r):
            yield self.from_code(code)

    # subfield GF(q) -----------------------------------------------------------

    @property
    def subfield_step(self) -> int:
        """(r - 1)/(q - 1): alpha**step generates GF(q)*."""
        return (self.r - 1) // (self.q - 1)

    @functools.cached_property
    def _symbol_codes(self) -> tuple[int, ...]:
        if self.s == 1:
            return tuple(range(self.p))
        g = self.alpha_power(self.subfield_step).code
        codes = [0, 1]
        cur = 1
        for _ in range(self.q - 2):
            cur = self._mul(cur, g)
            codes.append(cur)
        return tuple(codes)

    @functools.cached_property
    def _symbol_of_code(self) -> dict[int, int]:
        return {c: i for i, c in enumerate(self._symbol_codes)}

    def symbol_element(self, symbol: int) -> "FieldElement":
        return self.from_code(self._symbol_codes[symbol])

    def subfield(self) -> SmallField:
        """Arithmetic tables for GF(q) in this field's symbol ordering."""
        return _subfield_of(self)

    @functools.cached_property
    def trace_table(self) -> np.ndarray:
        """``trace_table[e]`` is the GF(q) symbol of Tr(alpha**e), 0 <= e < r - 1."""
        n = self.r - 1
        digits = self.digit_matrix(self.exp_table).astype(np.int64)
        e = np.arange(n, dtype=np.int64)
        acc = np.zeros_like(digits)
        for i in range(self.m):
            acc += digits[(e * pow(self.q, i, n)) % n] if n > 1 else digits
        acc %= self.p
        codes = acc @ self._pw
        lookup = np.full(self.r, -1, dtype=np.int64)
        for sym, code in enumerate(self._symbol_codes):
            lookup[code] = sym
        out = lookup[codes]
        if (out < 0).any():
            raise NotInSubfield("trace left the subfield; modulus tables are inconsistent")
        out.flags.writeable = False
        return out

    def _mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            log = self.log_table
            return int(self.exp_table[(log[a] + log[b]) % (self.r - 1)])
        return self._mul_slow(a, b)

    # serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        out = {"p": self.p, "s": self.s, "m": self.m, "modulus": list(self.modulus)}
        if self.generator_hint is not None:
            out["generator"] = list(self.generator_hint)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "FieldSpec":
        return field_build(
            int(obj["p"]),
            int(obj.get("s", 1)),
            int(obj.get("m", 1)),
            obj.get("modulus"),
            obj.get("generator"),
        )


@functools.lru_cache(maxsize=None)
def _subfield_of(f: FieldSpec) -> SmallField:
    if f.s == 1:
        return _prime_small_field(f.p)
    codes = f._symbol_codes
    sym = f._symbol_of_code
    zech = np.array([sym[f._add_codes(1, codes[k + 1])] for k in range(f.q - 1)], dtype=np.int64)
    return _log_field(f.q, f.p, zech)


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(r) as a coefficient vector over GF(p)."""

    rep: tuple[int, ...]
    field: FieldSpec

    @property
    def code(self) -> int:
        return self.field._code(self.rep)

    def is_zero(self) -> bool:
        return not any(self.rep)

    def _check(self, other: "FieldElement") -> None:
        if other.field != self.field:
            raise InvalidParameter("elements belong to different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        p = self.field.p
        return FieldElement(tuple((a + b) % p for a, b in zip(self.rep, other.rep)), self.field)

    def __neg__(self) -> "FieldElement":
        p = self.field.p
        return FieldElement(tuple((-a) % p for a in self.rep), self.field)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self + (-other)

    def __mul__(self, other: "FieldElement | int") -> "FieldElement":
        if isinstance(other, int):
            p = self.field.p
            return FieldElement(tuple(a * other % p for a in self.rep), self.field)
        self._check(other)
        return self.field.from_code(self.field._mul(self.code, other.code))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "FieldElement":
        f = self.field
        if self.is_zero():
            if e < 0:
                raise ZeroDivisionError("zero has no inverse")
            return f.one if e == 0 else self
        e %= f.r - 1
        if f.has_tables:
            return f.from_code(int(f.exp_table[(int(f.log_table[self.code]) * e) % (f.r - 1)]))
        return f.from_code(f._pow_slow(self.code, e))

    def inverse(self) -> "FieldElement":
        return self ** -1

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def log(self) -> int:
        """Discrete logarithm to base alpha."""
        if self.is_zero():
            raise ZeroDivisionError("log of zero")
        f = self.field
        if f.has_tables:
            return int(f.log_table[self.code])
        target, cur = self.code, 1
        for e in range(f.r - 1):
            if cur == target:
                return e
            cur = f._mul_slow(cur, f._alpha)
        raise NoPrimitiveRootFound(repr(f))

    def frobenius(self, times: int = 1) -> "FieldElement":
        """x -> x**(q**times)."""
        return self ** pow(self.field.q, times, self.field.r - 1) if not self.is_zero() else self

    def __repr__(self) -> str:
        return f"FieldElement({list(self.rep)})"


# -- public operations ------------------------------------------------------------


def find_modulus(p: int, degree: int) -> tuple[int, ...]:
    """Lowest monic irreducible of the given degree whose root x is primitive.

    Candidates are ordered lexicographically by little-endian coefficient
    vector (constant term compared first).
    """
    for low in itertools.product(range(p), repeat=degree):
        if low[0] == 0:
            continue
        f = low + (1,)
        if not is_irreducible(f, p):
            continue
        if _x_is_primitive(f, p):
            return f
    raise NoPrimitiveRootFound(f"no primitive polynomial of degree {degree} over GF({p})")


def _x_is_primitive(f: tuple[int, ...], p: int) -> bool:
    d = len(f) - 1
    n = p**d - 1
    if d == 1:
        root = (-f[0]) % p
        if root == 0:
            return False
        return all(pow(root, n // ell, p) != 1 for ell in prime_factors(n)) if n > 1 else True
    if _x_pow_mod(n, f, p) != [1]:
        return False
    return all(_x_pow_mod(n // ell, f, p) != [1] for ell in prime_factors(n))


def field_build(
    p: int,
    s: int = 1,
    m: int = 1,
    modulus: Sequence[int] | None = None,
    generator_hint: Sequence[int] | None = None,
) -> FieldSpec:
    """Build GF(p**(s*m)), searching for a default modulus when none is given."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if s < 1 or m < 1:
        raise InvalidParameter("s and m must be positive")
    if modulus is None:
        modulus = find_modulus(p, s * m)
    hint = None if generator_hint is None else tuple(int(c) for c in generator_hint)
    return _cached_field(p, s, m, tuple(int(c) % p for c in modulus), hint)


@functools.lru_cache(maxsize=256)
def _cached_field(p, s, m, modulus, hint) -> FieldSpec:
    return FieldSpec(p, s, m, modulus, hint)


def primitive_element(f: FieldSpec) -> FieldElement:
    return f.alpha


def trace_to_subfield(beta: FieldElement, f: FieldSpec | None = None) -> FieldElement:
    """Tr_{r/q}(beta) = beta + beta**q + ... + beta**(q**(m-1))."""
    f = f or beta.field
    acc = f.zero
    cur = beta
    for _ in range(f.m):
        acc = acc + cur
        cur = cur.frobenius()
    return acc


def subfield_index(x: FieldElement, f: FieldSpec | None = None) -> int:
    """Symbol in ``0..q-1`` of an element of the GF(q) subfield."""
    f = f or x.field
    if x.frobenius() != x:
        raise NotInSubfield(f"{x!r} is not fixed by x -> x^{f.q}")
    try:
        return f._symbol_of_code[x.code]
    except KeyError:  # pragma: no cover - guarded by the Frobenius check
        raise NotInSubfield(repr(x)) from None

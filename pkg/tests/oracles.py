"""Brute-force reference implementations used by the tests.

Everything here is deliberately naive pure Python and shares no code with
the package: polynomial arithmetic on coefficient tuples, span enumeration
with ``itertools.product`` and textbook Gaussian elimination.  Only prime
fields are handled for codes; extension fields are handled for arithmetic.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict


# -- GF(p^d) as polynomials modulo f -------------------------------------------


class NaiveField:
    """GF(p^d) = GF(p)[x]/(f) with elements as little-endian coefficient tuples."""

    def __init__(self, p: int, modulus):
        self.p = p
        self.f = tuple(modulus)
        self.d = len(self.f) - 1

    def elements(self):
        return list(itertools.product(range(self.p), repeat=self.d))

    @property
    def zero(self):
        return (0,) * self.d

    @property
    def one(self):
        return (1,) + (0,) * (self.d - 1)

    @property
    def x(self):
        if self.d == 1:
            return ((-self.f[0]) % self.p,)
        return (0, 1) + (0,) * (self.d - 2)

    def add(self, a, b):
        return tuple((u + v) % self.p for u, v in zip(a, b))

    def scale(self, c, a):
        return tuple((c * u) % self.p for u in a)

    def mul(self, a, b):
        p, d = self.p, self.d
        prod = [0] * (2 * d - 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                prod[i + j] = (prod[i + j] + u * v) % p
        for top in range(len(prod) - 1, d - 1, -1):
            c = prod[top]
            if c:
                for j in range(d + 1):
                    prod[top - d + j] = (prod[top - d + j] - c * self.f[j]) % p
        return tuple(prod[:d])

    def pow(self, a, e):
        out = self.one
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def order(self, a):
        cur, k = a, 1
        while cur != self.one:
            cur = self.mul(cur, a)
            k += 1
            if k > self.p**self.d:
                return None
        return k

    def trace(self, a, q: int, m: int):
        """Tr_{q^m/q}(a) = a + a^q + ... + a^(q^(m-1))."""
        acc, cur = self.zero, a
        for _ in range(m):
            acc = self.add(acc, cur)
            cur = self.pow(cur, q)
        return acc


def lowest_primitive_modulus(p: int, d: int):
    """First monic f (constant term compared first) for which x has order p^d - 1."""
    for low in itertools.product(range(p), repeat=d):
        f = low + (1,)
        if low[0] == 0:
            continue
        F = NaiveField(p, f)
        if F.order(F.x) == p**d - 1:
            return f
    raise AssertionError("no primitive polynomial")


def trace_code_words(p: int, m: int, N: int, modulus) -> set[tuple[int, ...]]:
    """{(Tr(b), Tr(b th), ...) : b in GF(p^m)} with th = x^N and x primitive."""
    F = NaiveField(p, modulus)
    n = (p**m - 1) // N
    theta = F.pow(F.x, N)
    powers = [F.one]
    for _ in range(n - 1):
        powers.append(F.mul(powers[-1], theta))
    words = set()
    for b in F.elements():
        word = []
        for t in powers:
            tr = F.trace(F.mul(b, t), p, m)
            assert all(c == 0 for c in tr[1:])
            word.append(tr[0])
        words.add(tuple(word))
    return words


# -- codes over prime fields -----------------------------------------------------


def span(gen, q: int) -> list[tuple[int, ...]]:
    """All combinations u @ gen, in lexicographic order of u."""
    gen = [list(r) for r in gen]
    k = len(gen)
    n = len(gen[0]) if gen else 0
    out = []
    for u in itertools.product(range(q), repeat=k):
        out.append(tuple(sum(u[i] * gen[i][j] for i in range(k)) % q for j in range(n)))
    return out


def weight(w) -> int:
    return sum(1 for x in w if x)


def support(w) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(w) if x)


def covers(big, small) -> bool:
    return support(small) <= support(big)


def is_multiple(a, b, q: int) -> bool:
    return any(tuple((lam * x) % q for x in a) == tuple(b) for lam in range(q))


def weight_counts(words) -> dict[int, int]:
    return dict(Counter(weight(w) for w in words))


def minimal_code(words, q: int) -> bool:
    """Pairwise check of every (covering, covered) pair."""
    nonzero = [w for w in words if any(w)]
    for a in nonzero:
        for b in nonzero:
            if covers(a, b) and not is_multiple(a, b, q):
                return False
    return True


def first_violation(gen, q: int):
    """First (covering, covered) pair in message order.

    Covering messages are scanned lexicographically among those whose leading
    nonzero symbol is 1; the covered word is the one with the smallest
    message that is not a multiple of the covering message.
    """
    messages = list(itertools.product(range(q), repeat=len(gen)))
    words = span(gen, q)
    for u, a in zip(messages, words):
        if not any(u) or next(x for x in u if x) != 1:
            continue
        for v, b in zip(messages, words):
            if not is_multiple(u, v, q) and covers(a, b):
                return a, b
    return None


def minimal_codewords(words) -> set[tuple[int, ...]]:
    """Codewords starting with 1 that cover no other codeword starting with 1."""
    ones = [w for w in words if w[0] == 1]
    return {a for a in ones if not any(b != a and covers(a, b) for b in ones)}


def rank(rows, q: int) -> int:
    m = [list(r) for r in rows]
    if not m:
        return 0
    r = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(r, len(m)) if m[i][c] % q), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], q - 2, q)
        m[r] = [(x * inv) % q for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % q for x, y in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def dual_words(gen, q: int) -> list[tuple[int, ...]]:
    n = len(gen[0])
    return [v for v in itertools.product(range(q), repeat=n) if all(sum(a * b for a, b in zip(g, v)) % q == 0 for g in gen)]


def min_distance(words) -> int:
    return min(weight(w) for w in words if any(w))


# -- secret sharing by enumeration of deals ------------------------------------------------


def secrets_by_view(scheme_words, coalition) -> dict[tuple[int, ...], Counter]:
    """For each share vector the coalition can see, how often each secret occurs."""
    view = defaultdict(Counter)
    for w in scheme_words:
        view[tuple(w[i] for i in coalition)][w[0]] += 1
    return view


def determines_secret(scheme_words, coalition) -> bool:
    return all(len(c) == 1 for c in secrets_by_view(scheme_words, coalition).values())


def minimal_authorized(scheme_words, participants: int) -> set[frozenset[int]]:
    """Minimal coalitions (1-based) whose shares determine the secret in every deal."""
    found: list[frozenset[int]] = []
    for size in range(participants + 1):
        for A in itertools.combinations(range(1, participants + 1), size):
            sa = frozenset(A)
            if any(m <= sa for m in found):
                continue
            if determines_secret(scheme_words, A):
                found.append(sa)
    return set(found)

"""Independent reference implementations used to check the library.

Nothing here imports grex; each oracle uses a different algorithm from the
code it checks.
"""

from __future__ import annotations

from itertools import permutations, product
from math import factorial, log


# ---------------------------------------------------------------------------
# linear algebra over GF(p) by enumeration


def brute_rank(rows, ncols, p):
    """Rank over GF(p) from the size of the kernel, found by enumerating all vectors."""
    count = 0
    for v in product(range(p), repeat=ncols):
        if all(sum(r[j] * v[j] for j in range(ncols)) % p == 0 for r in rows):
            count += 1
    return ncols - round(log(count, p))


# ---------------------------------------------------------------------------
# polynomials as coefficient lists (index = degree)


def padd(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return ptrim(out)


def pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return ptrim(out)


def ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def pshift(a, k):
    return ptrim([0] * k + list(a)) if a else []


def pscale(a, c):
    return ptrim([c * x for x in a])


# ---------------------------------------------------------------------------
# Coxeter group models


class SymmetricModel:
    """S_n as permutation tuples; Bruhat order via the tableau criterion."""

    def __init__(self, n):
        self.n = n
        self.gens = list(range(n - 1))
        self.elements = sorted(permutations(range(n)), key=lambda w: (self.length(w), w))

    def from_word(self, word):
        w = list(range(self.n))
        for s in word:
            w[s], w[s + 1] = w[s + 1], w[s]
        return tuple(w)

    def length(self, w):
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def mul(self, w, s):
        w = list(w)
        w[s], w[s + 1] = w[s + 1], w[s]
        return tuple(w)

    def leq(self, x, y):
        n = self.n
        for i in range(1, n):
            a, b = sorted(x[:i]), sorted(y[:i])
            if any(a[k] > b[k] for k in range(i)):
                return False
        return True


class InfiniteDihedralModel:
    """Affine A1: elements are alternating words in generators 0, 1."""

    def __init__(self, max_length):
        self.gens = [0, 1]
        els = [()]
        for L in range(1, max_length + 1):
            for start in (0, 1):
                els.append(tuple((start + k) % 2 for k in range(L)))
        self.elements = els

    def from_word(self, word):
        w = ()
        for s in word:
            w = self.mul(w, s)
        return w

    def length(self, w):
        return len(w)

    def mul(self, w, s):
        if w and w[-1] == s:
            return w[:-1]
        return w + (s,)

    def leq(self, x, y):
        return x == y or len(x) < len(y)


# ---------------------------------------------------------------------------
# KL polynomials via R-polynomials and bar invariance


class KLOracle:
    """P_{x,w} from q^{l(w)-l(x)} P̄_{x,w}(q^{-1}) - P_{x,w} = Σ_{x<y≤w} R_{x,y} P_{y,w}."""

    def __init__(self, model):
        self.m = model
        self._R = {}
        self._P = {}

    def descent(self, w):
        for s in self.m.gens:
            if self.m.length(self.m.mul(w, s)) < self.m.length(w):
                return s
        return None

    def R(self, x, w):
        key = (x, w)
        if key in self._R:
            return self._R[key]
        m = self.m
        if not m.leq(x, w):
            r = []
        elif m.length(w) == 0:
            r = [1]
        else:
            s = self.descent(w)
            ws, xs = m.mul(w, s), m.mul(x, s)
            if m.length(xs) < m.length(x):
                r = self.R(xs, ws)
            else:
                r = padd(pmul([-1, 1], self.R(x, ws)), pshift(self.R(xs, ws), 1))
        self._R[key] = r
        return r

    def P(self, x, w):
        key = (x, w)
        if key in self._P:
            return self._P[key]
        m = self.m
        if not m.leq(x, w):
            r = []
        elif x == w:
            r = [1]
        else:
            d = m.length(w) - m.length(x)
            rhs = []
            for y in m.elements:
                if y != x and m.leq(x, y) and m.leq(y, w):
                    rhs = padd(rhs, pmul(self.R(x, y), self.P(y, w)))
            # P has degree ≤ (d-1)/2, q^d P̄ only degrees ≥ d - (d-1)/2
            r = ptrim([-c for c in rhs[: (d - 1) // 2 + 1]])
            bar = [0] * (d + 1)
            for i, c in enumerate(r):
                bar[d - i] += c
            assert padd(ptrim(bar), pscale(r, -1)) == rhs, "bar-invariance solve is inconsistent"
        self._P[key] = r
        return r


# ---------------------------------------------------------------------------
# small closed forms


def truncated_polynomial_ext(n, imax):
    """Graded ext^i(k, k<r>) over k[x]/x^n (n ≥ 2), x in grade 1."""
    out = {}
    for i in range(imax + 1):
        if n == 2:
            r = i
        else:
            r = (i // 2) * n + (i % 2)
        out[(i, r)] = 1
    return out


def hook_dimension(lam):
    n = sum(lam)
    dual = [sum(1 for part in lam if part > j) for j in range(lam[0])] if lam else []
    prod = 1
    for i, part in enumerate(lam):
        for j in range(part):
            prod *= (part - j - 1) + (dual[j] - i - 1) + 1
    return factorial(n) // prod


def gaussian_factorial(k):
    """[k]_q! as a coefficient list."""
    out = [1]
    for i in range(1, k + 1):
        out = pmul(out, [1] * i)
    return out


def inversions_generating_function(n):
    """Σ_{w ∈ S_n} q^{inv(w)} by brute force."""
    out = []
    for w in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])
        out = padd(out, pshift([1], inv))
    return out

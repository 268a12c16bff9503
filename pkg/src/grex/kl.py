"""Coxeter groups, Bruhat order and Kazhdan-Lusztig polynomials.

Groups are realised through the integer geometric representation of a
generalized Cartan matrix: s_i(α_j) = α_j − a_ij α_i.  An element is its
matrix on the root basis; w(α_s) < 0 exactly when s is a right descent.
KL polynomials are LaurentPoly objects in the variable ``q``.
"""

from __future__ import annotations

from functools import lru_cache

from .exact import LaurentPoly, is_prime, laurent_bar

DEFAULT_BALL = 12


class LengthBoundExceeded(OverflowError):
    """Raised when a computation needs elements beyond the length ball."""


class NotDistinguished(ValueError):
    pass


class NoAlcoveRepresentative(ValueError):
    pass


_M_TO_PAIR = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3), 0: (-2, -2)}  # 0 encodes ∞


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


class CoxeterGroup:
    """Crystallographic Coxeter group from a generalized Cartan matrix."""

    def __init__(self, cartan, names=None, affine=False, ball=DEFAULT_BALL):
        self.cartan = [list(r) for r in cartan]
        self.rank = n = len(cartan)
        self.names = list(names) if names else [str(i + 1) for i in range(n)]
        self.affine = affine
        self.ball = ball
        gens = []
        for i in range(n):
            m = [[int(j == k) for k in range(n)] for j in range(n)]
            for j in range(n):
                m[i][j] -= self.cartan[i][j]
            gens.append(tuple(tuple(r) for r in m))
        self.gens = gens
        self._elements: dict = {}
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        self.e = self._intern(ident, ident, 0)
        self._check_relations()

    def _check_relations(self):
        for i in range(self.rank):
            if _mat_mul(self.gens[i], self.gens[i]) != self.e.mat:
                raise ValueError("simple reflection is not an involution")

    def coxeter_matrix(self, limit=12):
        n = self.rank
        out = [[1] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i != j:
                    p = _mat_mul(self.gens[i], self.gens[j])
                    cur, k = p, 1
                    while cur != self.e.mat and k <= limit:
                        cur, k = _mat_mul(cur, p), k + 1
                    out[i][j] = k if cur == self.e.mat else 0
        return out

    def _intern(self, mat, inv, length):
        el = self._elements.get(mat)
        if el is None:
            el = CoxeterElement(self, mat, inv, length)
            self._elements[mat] = el
        return el

    def index(self, s) -> int:
        if isinstance(s, int):
            return s
        return self.names.index(str(s))

    def element(self, word) -> "CoxeterElement":
        """Product s_{w1} ... s_{wk} of simple reflections (any word)."""
        x = self.e
        for s in word:
            x = x.mul(self.index(s))
        return x

    def parse_word(self, text: str):
        """Word from a string of one-character generator names, or a
        comma/space separated list; '' or 'e' gives the identity."""
        text = text.strip()
        if text in ("", "e"):
            return []
        if "," in text or " " in text:
            return [self.index(t) for t in text.replace(",", " ").split()]
        return [self.index(c) for c in text]

    def elements_upto(self, length: int):
        """All elements of length <= length, by breadth-first search."""
        layer = [self.e]
        out = [self.e]
        for _ in range(length):
            nxt = {}
            for x in layer:
                for s in range(self.rank):
                    if not x.has_right_descent(s):
                        y = x.mul(s)
                        nxt[y.mat] = y
            layer = sorted(nxt.values(), key=lambda y: y.word)
            if not layer:
                break
            out += layer
        return out

    def elements(self):
        if self.affine:
            raise ValueError("affine group is infinite; use elements_upto")
        out = self.elements_upto(10 ** 6)
        return out

    def parabolic(self, J):
        """Elements of the standard parabolic subgroup W_J (must be finite)."""
        J = sorted(self.index(s) for s in J)
        seen = {self.e.mat: self.e}
        frontier = [self.e]
        while frontier:
            nxt = []
            for x in frontier:
                for s in J:
                    if not x.has_right_descent(s):
                        y = x.mul(s)
                        if y.mat not in seen:
                            if y.length > 200:
                                raise ValueError("parabolic subgroup is not finite")
                            seen[y.mat] = y
                            nxt.append(y)
            frontier = nxt
        return sorted(seen.values(), key=lambda y: (y.length, y.word))

    def longest_element(self):
        if self.affine:
            raise ValueError("no longest element in an affine group")
        x = self.e
        while True:
            for s in range(self.rank):
                if not x.has_right_descent(s):
                    x = x.mul(s)
                    break
            else:
                return x


class CoxeterElement:
    __slots__ = ("group", "mat", "inv", "length", "_word", "_mul")

    def __init__(self, group, mat, inv, length):
        self.group = group
        self.mat = mat
        self.inv = inv
        self.length = length
        self._word = None
        self._mul = {}

    def __repr__(self):
        return "e" if not self.length else "".join(self.group.names[s] if len(self.group.names[s]) == 1 else f"[{self.group.names[s]}]" for s in self.word)

    def __hash__(self):
        return hash(self.mat)

    def __eq__(self, other):
        return isinstance(other, CoxeterElement) and self.mat == other.mat

    def __lt__(self, other):
        return (self.length, self.word) < (other.length, other.word)

    def has_right_descent(self, s) -> bool:
        """ℓ(ws) < ℓ(w), i.e. w(α_s) is a negative root."""
        return any(self.mat[i][s] < 0 for i in range(self.group.rank))

    def has_left_descent(self, s) -> bool:
        return any(self.inv[i][s] < 0 for i in range(self.group.rank))

    def right_descents(self):
        return [s for s in range(self.group.rank) if self.has_right_descent(s)]

    def left_descents(self):
        return [s for s in range(self.group.rank) if self.has_left_descent(s)]

    def mul(self, s) -> "CoxeterElement":
        """w·s."""
        y = self._mul.get(("r", s))
        if y is None:
            g = self.group.gens[s]
            length = self.length - 1 if self.has_right_descent(s) else self.length + 1
            y = self.group._intern(_mat_mul(self.mat, g), _mat_mul(g, self.inv), length)
            self._mul[("r", s)] = y
        return y

    def lmul(self, s) -> "CoxeterElement":
        """s·w."""
        y = self._mul.get(("l", s))
        if y is None:
            g = self.group.gens[s]
            length = self.length - 1 if self.has_left_descent(s) else self.length + 1
            y = self.group._intern(_mat_mul(g, self.mat), _mat_mul(self.inv, g), length)
            self._mul[("l", s)] = y
        return y

    def __mul__(self, other: "CoxeterElement") -> "CoxeterElement":
        x = self
        for s in other.word:
            x = x.mul(s)
        return x

    def inverse(self) -> "CoxeterElement":
        x = self.group.e
        for s in reversed(self.word):
            x = x.mul(s)
        return x

    @property
    def word(self) -> tuple:
        """ShortLex-minimal reduced word."""
        if self._word is None:
            w, out = self, []
            while w.length:
                s = min(w.left_descents())
                out.append(s)
                w = w.lmul(s)
            self._word = tuple(out)
        return self._word

    def inversion_count(self) -> int:
        """Number of positive roots sent negative (finite groups only)."""
        return sum(1 for r in positive_roots(self.group.cartan) if any(x < 0 for x in _apply(self.mat, r)))


def multiply(x: CoxeterElement, s) -> CoxeterElement:
    return x.mul(x.group.index(s))


def _apply(mat, v):
    n = len(v)
    return tuple(sum(mat[i][j] * v[j] for j in range(n)) for i in range(n))


def positive_roots(cartan):
    """Positive real roots of a finite root system in simple-root coordinates."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                pair = sum(cartan[i][j] * r[j] for j in range(n))  # <α_i^∨, r>
                new = tuple(r[j] - (pair if j == i else 0) for j in range(n))
                if all(x >= 0 for x in new) and any(new) and new not in roots:
                    if sum(new) > 100:
                        raise ValueError("root system is not finite")
                    roots.add(new)
                    nxt.append(new)
        frontier = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


# ---------------------------------------------------------------------------
# Named groups


def cartan_matrix(kind: str, n: int):
    kind = kind.upper()
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        A[i][i + 1] = A[i + 1][i] = -1
    if kind == "A":
        return A
    if kind == "B" and n >= 2:
        A[n - 1][n - 2] = -2
        return A
    if kind == "C" and n >= 2:
        A[n - 2][n - 1] = -2
        return A
    if kind == "D" and n >= 4:
        A[n - 2][n - 1] = A[n - 1][n - 2] = 0
        A[n - 3][n - 1] = A[n - 1][n - 3] = -1
        return A
    if kind == "G" and n == 2:
        return [[2, -1], [-3, 2]]
    if kind == "F" and n == 4:
        A[1][2] = -2
        return A
    raise ValueError(f"unsupported Cartan type {kind}{n}")


def coxeter_group(kind: str, n: int, ball: int = DEFAULT_BALL) -> CoxeterGroup:
    """Finite Weyl group W(X_n) with generators named 1..n."""
    return CoxeterGroup(cartan_matrix(kind, n), ball=ball)


def dihedral_group(m: int) -> CoxeterGroup:
    """I_2(m) for m in {2, 3, 4, 6, 0}; m = 0 means m = ∞."""
    if m not in _M_TO_PAIR:
        raise ValueError(f"dihedral group I_2({m}) has no integral Cartan matrix; use m in 2, 3, 4, 6 or 0")
    a, b = _M_TO_PAIR[m]
    return CoxeterGroup([[2, a], [b, 2]], affine=(m == 0))


def _cartan_from_coxeter(mats):
    n = len(mats)
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a, b = _M_TO_PAIR[mats[i][j]]
            A[i][j], A[j][i] = a, b
    return A


def affine_weyl_group(kind: str, n: int, ball: int = DEFAULT_BALL) -> CoxeterGroup:
    """Affine Weyl group W_p ⊃ W(X_n): generators 0 (affine) and 1..n.

    The affine generator is the reflection in the wall (x, α^∨) = p for the
    root α whose coroot is highest.  The Coxeter matrix is read from these
    reflections; the group does not depend on p.
    """
    aw = AffineWeylAction(cartan_matrix(kind, n), p=1)
    m = aw.coxeter_matrix()
    names = ["0"] + [str(i + 1) for i in range(n)]
    return CoxeterGroup(_cartan_from_coxeter(m), names=names, affine=True, ball=ball)


# ---------------------------------------------------------------------------
# Bruhat order and KL polynomials


class KLTable:
    """Memoised Bruhat order, lower intervals and KL polynomials."""

    def __init__(self, group: CoxeterGroup, max_length: int | None = None):
        self.group = group
        self.max_length = group.ball if (max_length is None and group.affine) else max_length
        self._leq: dict = {}
        self._below: dict = {}
        self._P: dict = {}

    def _guard(self, *els):
        if self.max_length is not None:
            for x in els:
                if x.length > self.max_length:
                    raise LengthBoundExceeded(f"element {x} has length {x.length} > bound {self.max_length}")

    def leq(self, x: CoxeterElement, y: CoxeterElement) -> bool:
        if x.length > y.length:
            return False
        if x.length == y.length:
            return x == y
        if x.length == 0:
            return True
        key = (x.mat, y.mat)
        r = self._leq.get(key)
        if r is None:
            s = y.right_descents()[0]
            ys = y.mul(s)
            xs = x.mul(s)
            r = self.leq(xs if xs.length < x.length else x, ys)
            self._leq[key] = r
        return r

    def lower_interval(self, w: CoxeterElement):
        """Elements x <= w, sorted by (length, word)."""
        self._guard(w)
        r = self._below.get(w.mat)
        if r is None:
            if w.length == 0:
                r = [w]
            else:
                s = w.right_descents()[0]
                base = self.lower_interval(w.mul(s))
                seen = {x.mat: x for x in base}
                for x in base:
                    y = x.mul(s)
                    seen.setdefault(y.mat, y)
                r = sorted(seen.values())
            self._below[w.mat] = r
        return r

    def mu(self, x, w) -> int:
        d = w.length - x.length
        if d <= 0 or d % 2 == 0:
            return 0
        return self.P(x, w).coeff((d - 1) // 2)

    def P(self, x: CoxeterElement, w: CoxeterElement) -> LaurentPoly:
        self._guard(x, w)
        key = (x.mat, w.mat)
        r = self._P.get(key)
        if r is not None:
            return r
        zero = LaurentPoly({}, "q")
        if not self.leq(x, w):
            r = zero
        elif x == w:
            r = LaurentPoly({0: 1}, "q")
        else:
            s = w.right_descents()[0]
            v = w.mul(s)
            xs = x.mul(s)
            c = 1 if xs.length < x.length else 0
            r = self.P(xs, v).shift(1 - c) + self.P(x, v).shift(c)
            for z in self.lower_interval(v):
                if z.length >= v.length or not z.has_right_descent(s) or not self.leq(x, z):
                    continue
                m = self.mu(z, v)
                if m:
                    r = r - self.P(x, z).shift((w.length - z.length) // 2) * m
        self._P[key] = r
        return r


def bruhat_leq(x: CoxeterElement, y: CoxeterElement, table: KLTable | None = None) -> bool:
    return (table or KLTable(x.group)).leq(x, y)


def kl_polynomial(x: CoxeterElement, y: CoxeterElement, table: KLTable | None = None) -> LaurentPoly:
    return (table or KLTable(x.group)).P(x, y)


def is_distinguished(w: CoxeterElement, I) -> bool:
    """w is the shortest element of w·W_I."""
    return not any(w.has_right_descent(s) for s in I)


def parabolic_sing(ybar: CoxeterElement, wbar: CoxeterElement, I, table: KLTable | None = None) -> LaurentPoly:
    """Σ_{x ∈ W_I, ȳx ≤ w̄} (−1)^{ℓ(x)} P_{ȳx, w̄}, a polynomial in q = t²."""
    G = ybar.group
    table = table or KLTable(G)
    I = sorted(G.index(s) for s in I)
    for name, el in (("ybar", ybar), ("wbar", wbar)):
        bad = [G.names[s] for s in I if el.has_right_descent(s)]
        if bad:
            raise NotDistinguished(f"{name} = {el} is not a shortest coset representative: right descent(s) {bad} lie in I")
    total = LaurentPoly({}, "q")
    for x in G.parabolic(I):
        yx = ybar * x
        if table.leq(yx, wbar):
            total = total + table.P(yx, wbar) * ((-1) ** x.length)
    if not total.has_nonnegative_coefficients() or (total.terms and total.low_degree() < 0):
        raise AssertionError(f"P^sing({ybar}, {wbar}; I={I}) = {total} has a negative coefficient")
    return total


# ---------------------------------------------------------------------------
# Dot action and alcove normalisation


def root_coroot_pairs(cartan):
    """Positive (root, coroot) pairs of a finite root system.

    Roots are in simple-root coordinates, coroots in simple-coroot
    coordinates; both are generated by the same reflections, so each pair
    belongs together.
    """
    n = len(cartan)
    start = [(tuple(int(i == j) for j in range(n)), tuple(int(i == j) for j in range(n))) for i in range(n)]
    seen = dict(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for r, c in frontier:
            for j in range(n):
                rj = sum(cartan[j][k] * r[k] for k in range(n))  # <α_j^∨, r>
                cj = sum(c[k] * cartan[k][j] for k in range(n))  # <c, α_j>
                r2 = tuple(r[k] - (rj if k == j else 0) for k in range(n))
                c2 = tuple(c[k] - (cj if k == j else 0) for k in range(n))
                if all(x >= 0 for x in r2) and any(r2) and r2 not in seen:
                    if sum(r2) > 100:
                        raise ValueError("root system is not finite")
                    seen[r2] = c2
                    nxt.append((r2, c2))
        frontier = nxt
    return sorted(seen.items(), key=lambda rc: (sum(rc[0]), rc[0]))


class AffineWeylAction:
    """Dot action of W_p on integral weights in fundamental-weight coordinates."""

    def __init__(self, cartan, p: int):
        self.cartan = [list(r) for r in cartan]
        self.n = len(cartan)
        self.p = p
        pairs = root_coroot_pairs(self.cartan)
        self.coroots = [c for _, c in pairs]
        # the wall (x, α^∨) = p bounding the alcove uses the highest coroot
        self.alpha0, self.highest = max(pairs, key=lambda rc: (sum(rc[1]), rc[1]))

    def root_weight(self, r):
        """Root in simple-root coordinates -> fundamental-weight coordinates."""
        n = self.n
        return tuple(sum(self.cartan[i][j] * r[j] for j in range(n)) for i in range(n))

    def pairing(self, weight, cor) -> int:
        """(λ, α^∨) for λ in fundamental coordinates, α^∨ in simple coroots."""
        return sum(w * c for w, c in zip(weight, cor))

    def reflect(self, v, i):
        """Linear action on v = λ + ρ for generator i (0 = affine)."""
        if i == 0:
            k = self.pairing(v, self.highest) - self.p
            a = self.root_weight(self.alpha0)
        else:
            k = v[i - 1]
            a = self.root_weight(tuple(int(j == i - 1) for j in range(self.n)))
        return tuple(x - k * y for x, y in zip(v, a))

    def dot(self, word, lam):
        """w·λ = w(λ+ρ) − ρ for w a word in generators 0..n (applied right to left)."""
        v = tuple(x + 1 for x in lam)
        for i in reversed(word):
            v = self.reflect(v, i)
        return tuple(x - 1 for x in v)

    def coxeter_matrix(self):
        """Orders of s_i s_j computed on generic points of the weight space."""
        n = self.n + 1
        pts = [tuple((7 * k + 3 * j * j + 1) for j in range(self.n)) for k in range(1, 4)]
        out = [[1] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for order in range(1, 13):
                    ok = True
                    for v in pts:
                        x = v
                        for _ in range(order):
                            x = self.reflect(self.reflect(x, j), i)
                        if x != v:
                            ok = False
                            break
                    if ok:
                        out[i][j] = order
                        break
                else:
                    out[i][j] = 0
        return out


class AlcoveWeight:
    """λ = w̄·λ⁻ with λ⁻ in C̄⁻ and w̄ shortest in w̄W_I."""

    def __init__(self, lam, p, kind, n, lam_minus, wbar, I, group):
        self.lam = tuple(lam)
        self.p = p
        self.kind = kind
        self.n = n
        self.lam_minus = tuple(lam_minus)
        self.wbar = wbar
        self.I = list(I)
        self.group = group

    def to_json(self):
        return {
            "lambda": list(self.lam),
            "p": self.p,
            "lambda_minus": list(self.lam_minus),
            "wbar": [self.group.names[s] for s in self.wbar.word],
            "length": self.wbar.length,
            "I": [self.group.names[s] for s in self.I],
        }


@lru_cache(maxsize=None)
def _affine_group(kind, n, ball):
    return affine_weyl_group(kind, n, ball)


def alcove_normalize(lam, p: int, kind: str = "A", n: int | None = None, ball: int = DEFAULT_BALL) -> AlcoveWeight:
    """Find λ⁻ with 1 ≤ (λ⁻+ρ, α^∨) ≤ p for all positive α and w̄ with λ = w̄·λ⁻."""
    lam = tuple(int(x) for x in lam)
    n = n or len(lam)
    if len(lam) != n:
        raise ValueError("weight has the wrong number of coordinates")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    act = AffineWeylAction(cartan_matrix(kind, n), p)
    G = _affine_group(kind.upper(), n, ball)
    v = tuple(x + 1 for x in lam)
    word = []
    for _ in range(10000):
        neg = [i for i in range(n) if v[i] < 0]
        if neg:
            i = neg[0] + 1
        elif act.pairing(v, act.highest) > p:
            i = 0
        else:
            break
        v = act.reflect(v, i)
        word.append(i)
    else:
        raise RuntimeError("alcove normalisation did not terminate")
    if any(x < 1 for x in v) or any(act.pairing(v, c) < 1 or act.pairing(v, c) > p for c in act.coroots):
        raise NoAlcoveRepresentative(
            f"the dot orbit of {list(lam)} meets the closed alcove only at {[x - 1 for x in v]}, outside 1 ≤ (x+ρ, α^∨) ≤ {p}"
        )
    lam_minus = tuple(x - 1 for x in v)
    # λ⁻ = r_k ... r_1 · λ, so λ = r_1 ... r_k · λ⁻
    w = G.element(word)
    I = [s for s in range(G.rank) if act.dot([s], lam_minus) == lam_minus]
    while True:
        d = [s for s in I if w.has_right_descent(s)]
        if not d:
            break
        w = w.mul(d[0])
    if act.dot(list(w.word), lam_minus) != lam:
        raise AssertionError("normalisation replay failed")
    if w.length > ball:
        raise LengthBoundExceeded(f"w̄ has length {w.length} > ball {ball}")
    return AlcoveWeight(lam, p, kind.upper(), n, lam_minus, w, I, G)


def conjecture_iii_series(lam, mu, p: int, kind: str = "A", n: int | None = None, bar: bool = True,
                          ball: int = DEFAULT_BALL) -> LaurentPoly:
    """t^{ℓ(w̄)−ℓ(ȳ)} · bar(P^sing_{ȳ,w̄}(t)) when μ = ȳ·λ⁻, else 0.

    With ``bar=False`` the prefactor multiplies P^sing itself.
    """
    a = alcove_normalize(lam, p, kind, n, ball)
    try:
        b = alcove_normalize(mu, p, kind, n, ball)
    except NoAlcoveRepresentative:
        return LaurentPoly({}, "t")
    if b.lam_minus != a.lam_minus:
        return LaurentPoly({}, "t")
    table = KLTable(a.group, ball)
    ps = parabolic_sing(b.wbar, a.wbar, a.I, table).substitute_power(2, "t")
    if bar:
        ps = laurent_bar(ps)
    return ps.shift(a.wbar.length - b.wbar.length)


# ---------------------------------------------------------------------------
# Poincaré polynomials


def poincare_poly(group: CoxeterGroup, J=None) -> LaurentPoly:
    """Σ_{w ∈ W_J} q^{ℓ(w)} (J = all generators by default)."""
    if J is None:
        if group.affine:
            raise ValueError("Poincaré polynomial of an infinite group")
        J = range(group.rank)
    out = {}
    for w in group.parabolic(list(J)):
        out[w.length] = out.get(w.length, 0) + 1
    return LaurentPoly(out, "q")


def poincare_type_a(n: int) -> LaurentPoly:
    """Π_{i=1}^{n} (q^i − 1)/(q − 1) for the symmetric group on n letters."""
    out = LaurentPoly({0: 1}, "q")
    for i in range(1, n + 1):
        out = out * LaurentPoly({k: 1 for k in range(i)}, "q")
    return out


def young_generators(composition):
    """Simple reflections (1-based) generating the Young subgroup S_λ."""
    gens, pos = [], 0
    for part in composition:
        gens += list(range(pos + 1, pos + part))
        pos += part
    return gens


def r_lambda(composition) -> LaurentPoly:
    """p_{S_n}(q) / p_{S_λ}(q)."""
    n = sum(composition)
    num = poincare_type_a(n)
    den = LaurentPoly({0: 1}, "q")
    for part in composition:
        den = den * poincare_type_a(part)
    return num.exact_div(den)


def ell_of_p(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return 4 if p == 2 else p

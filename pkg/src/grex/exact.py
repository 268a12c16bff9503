"""Exact scalars, dense matrices and Laurent polynomials.

Two kinds of base field are supported: GF(p) for a prime p (elements are
plain ints in ``range(p)``) and the rationals (elements are ``Fraction``).
The same elimination code serves both; only ``reduce`` and ``inv`` differ.
Nothing in the package uses floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """GF(p) when ``p`` is a prime, the rationals when ``p == 0``."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        p = int(p)
        if p != 0 and (p > MAX_PRIME or not is_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime <= 2^31, got {p}")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or string into the field."""
        if self.p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            if isinstance(x, str):
                return self(Fraction(x))
            return int(x) % self.p
        return Fraction(x)

    def reduce(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if self.p:
            if x % self.p == 0:
                raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
            return pow(x, -1, self.p)
        if x == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(x)

    def neg(self, x):
        return (-x) % self.p if self.p else -x


# ---------------------------------------------------------------------------
# Row reduction on plain lists of rows.  Rows are lists of field elements.


def rref(rows: Sequence[Sequence], F: Field, ncols: int | None = None):
    """Reduced row echelon form.

    Args:
        rows: matrix as a sequence of rows.
        F: the base field.
        ncols: number of columns; needed only when ``rows`` is empty.

    Returns:
        (R, pivots) where R holds only the nonzero rows, each with leading
        entry 1, and pivots lists their pivot columns in increasing order.
    """
    R = [list(r) for r in rows]
    if not R:
        return [], []
    n = len(R[0]) if ncols is None else ncols
    p = F.p
    pivots: list[int] = []
    r = 0
    m = len(R)
    for c in range(n):
        found = -1
        for i in range(r, m):
            if R[i][c] != 0:
                found = i
                break
        if found < 0:
            continue
        R[r], R[found] = R[found], R[r]
        piv = R[r]
        inv = F.inv(piv[c])
        if p:
            piv = [(v * inv) % p for v in piv]
        else:
            piv = [v * inv for v in piv]
        R[r] = piv
        nz = [j for j in range(c, n) if piv[j] != 0]
        for i in range(m):
            if i != r:
                row = R[i]
                f = row[c]
                if f != 0:
                    if p:
                        for j in nz:
                            row[j] = (row[j] - f * piv[j]) % p
                    else:
                        for j in nz:
                            row[j] = row[j] - f * piv[j]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R[:r], pivots


def rank(rows: Sequence[Sequence], F: Field) -> int:
    return len(rref(rows, F)[1])


def kernel(rows: Sequence[Sequence], F: Field, ncols: int) -> list[list]:
    """Basis of the right null space {v : rows * v = 0}.

    The basis is returned in reduced echelon shape: vector k has a 1 in the
    k-th free column and zeros in the other free columns.
    """
    R, pivots = rref(rows, F, ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for row, pc in zip(R, pivots):
            if row[fc] != 0:
                v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def row_space(rows: Sequence[Sequence], F: Field) -> list[list]:
    return rref(rows, F)[0]


def in_span(R: Sequence[Sequence], pivots: Sequence[int], v: Sequence, F: Field) -> bool:
    """Whether ``v`` lies in the row space of an RREF matrix ``R``."""
    return not any(x != 0 for x in reduce_against(R, pivots, v, F))


def reduce_against(R, pivots, v, F: Field) -> list:
    """Remainder of ``v`` after clearing the pivot columns of RREF ``R``."""
    w = list(v)
    p = F.p
    for row, c in zip(R, pivots):
        f = w[c]
        if f != 0:
            if p:
                for j, x in enumerate(row):
                    if x:
                        w[j] = (w[j] - f * x) % p
            else:
                for j, x in enumerate(row):
                    if x:
                        w[j] = w[j] - f * x
    return w


def solve(rows: Sequence[Sequence], rhs: Sequence, F: Field):
    """One solution x of rows * x = rhs, or None when inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(aug, F, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [F.zero] * ncols
    for row, c in zip(R, pivots):
        x[c] = row[ncols]
    return x


def coordinates(basis: Sequence[Sequence], vectors: Sequence[Sequence], F: Field):
    """Express each vector in terms of a linearly independent ``basis``.

    Raises ValueError if some vector is not in the span.
    """
    if not vectors:
        return []
    k = len(basis)
    n = len(vectors[0])
    # columns of the system are basis vectors; augment with all targets at once
    aug = [[basis[j][i] for j in range(k)] + [v[i] for v in vectors] for i in range(n)]
    R, pivots = rref(aug, F, k + len(vectors))
    if any(c >= k for c in pivots):
        raise ValueError("vector not in span of basis")
    if len(pivots) != k:
        raise ValueError("basis is not linearly independent")
    out = []
    for t in range(len(vectors)):
        x = [F.zero] * k
        for row, c in zip(R, pivots):
            x[c] = row[k + t]
        out.append(x)
    return out


def mat_mul(A, B, F: Field):
    """Dense product of list-of-rows matrices."""
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    p = F.p
    Bt = list(zip(*B))
    out = []
    for row in A:
        nzr = [(j, a) for j, a in enumerate(row) if a != 0]
        if not nzr:
            out.append([F.zero] * len(Bt))
            continue
        new = []
        for col in Bt:
            s = 0
            for j, a in nzr:
                b = col[j]
                if b:
                    s += a * b
            new.append(s % p if p else Fraction(s))
        out.append(new)
    return out


def mat_vec(A, v, F: Field):
    p = F.p
    nz = [(j, x) for j, x in enumerate(v) if x != 0]
    out = []
    for row in A:
        s = 0
        for j, x in nz:
            a = row[j]
            if a:
                s += a * x
        out.append(s % p if p else Fraction(s))
    return out


def transpose(A, ncols: int | None = None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def identity(n: int, F: Field):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def zeros(m: int, n: int, F: Field):
    return [[F.zero] * n for _ in range(m)]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactMatrix:
    """Dense matrix over a single field."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, data: Iterable[Iterable], F: Field, cols: int | None = None):
        data = [tuple(F(x) for x in r) for r in data]
        nc = len(data[0]) if data else (cols or 0)
        if any(len(r) != nc for r in data):
            raise ValueError("ragged matrix")
        return cls(F, len(data), nc, tuple(data))

    def tolist(self):
        return [list(r) for r in self.entries]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.field != other.field:
            raise ValueError("field mismatch")
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        prod = mat_mul(self.tolist(), other.tolist(), self.field)
        return ExactMatrix(self.field, self.rows, other.cols, tuple(tuple(r) for r in prod))


def ff_rank(m: ExactMatrix) -> int:
    return rank(m.tolist(), m.field)


def ff_kernel_basis(m: ExactMatrix) -> list[tuple]:
    return [tuple(v) for v in kernel(m.tolist(), m.field, m.cols)]


def ff_rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    R, piv = rref(m.tolist(), m.field, m.cols)
    return ExactMatrix(m.field, len(R), m.cols, tuple(tuple(r) for r in R)), piv


# ---------------------------------------------------------------------------


class LaurentPoly:
    """Integer Laurent polynomial in one variable (default name ``t``).

    Stored as a sorted tuple of (exponent, coefficient) with no zero
    coefficients, so equal polynomials compare and hash equal.
    """

    __slots__ = ("terms", "var")

    def __init__(self, coeffs=None, var: str = "t"):
        acc: dict[int, int] = {}
        if coeffs is None:
            coeffs = {}
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        for e, c in items:
            if not isinstance(c, int):
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                else:
                    raise TypeError("Laurent coefficients must be integers")
            acc[int(e)] = acc.get(int(e), 0) + c
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        self.var = var

    @classmethod
    def from_list(cls, coeffs: Sequence[int], low: int = 0, var: str = "t"):
        """Coefficient list starting at exponent ``low``."""
        return cls({low + i: c for i, c in enumerate(coeffs)}, var)

    @classmethod
    def monomial(cls, e: int, c: int = 1, var: str = "t"):
        return cls({e: c}, var)

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coeff(self, e: int) -> int:
        return self.as_dict().get(e, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of zero polynomial")
        return self.terms[-1][0]

    def low_degree(self) -> int:
        if not self.terms:
            raise ValueError("low degree of zero polynomial")
        return self.terms[0][0]

    def to_list(self) -> list[int]:
        """Coefficients from exponent 0 up; requires non-negative support."""
        if not self.terms:
            return []
        if self.terms[0][0] < 0:
            raise ValueError("negative exponents present")
        d = self.as_dict()
        return [d.get(i, 0) for i in range(self.terms[-1][0] + 1)]

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPoly(d, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(d, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise ValueError("only monomials with unit coefficient are invertible")
            e, c = self.terms[0]
            return LaurentPoly({e * k: c ** (-k)}, self.var)
        out = LaurentPoly({0: 1}, self.var)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by var**k."""
        return LaurentPoly({e + k: c for e, c in self.terms}, self.var)

    def substitute_power(self, k: int, var: str | None = None) -> "LaurentPoly":
        """Replace the variable x by x**k (e.g. q = t^2 gives k=2)."""
        return LaurentPoly({e * k: c for e, c in self.terms}, var or self.var)

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ValueError when there is a remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        num = self.as_dict()
        dlow, dlc = other.terms[0]
        quot: dict[int, int] = {}
        while num:
            low = min(num)
            c = num[low]
            if c % dlc:
                raise ValueError("inexact division")
            qe, qc = low - dlow, c // dlc
            quot[qe] = qc
            for e, oc in other.terms:
                num[qe + e] = num.get(qe + e, 0) - qc * oc
                if num[qe + e] == 0:
                    del num[qe + e]
            if num and min(num) < low:
                raise ValueError("inexact division")
            if len(quot) > 10000:
                raise ValueError("inexact division")
        return LaurentPoly(quot, self.var)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for _, c in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            else:
                mon = self.var if e == 1 else f"{self.var}^{e}"
                parts.append(mon if c == 1 else ("-" + mon if c == -1 else f"{c}*{mon}"))
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self):
        return [[e, c] for e, c in self.terms]


def laurent_bar(f: LaurentPoly) -> LaurentPoly:
    """The involution t -> t^-1."""
    return LaurentPoly({-e: c for e, c in f.terms}, f.var)


def laurent_eval(f: LaurentPoly, a) -> Fraction:
    """Evaluate at a nonzero rational exactly."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("cannot evaluate a Laurent polynomial at 0")
    return sum((Fraction(c) * a**e for e, c in f.terms), Fraction(0))

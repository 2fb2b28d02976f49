"""Finite fields F_{p^k} and the small number-theoretic quantities q, eps, a, e.

Elements are stored as integers 0..q-1: the coefficient vector (c_0, ..., c_{k-1})
of a polynomial in the defining root maps to sum c_i p^i.  Every Field carries
full addition/multiplication tables so matrix code can work on integer arrays.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

__all__ = [
    "Field",
    "FieldElement",
    "QParams",
    "field_make",
    "square_class",
    "q_params",
    "q_params_oddp",
    "solve_sum_of_squares",
    "is_prime",
    "prime_power",
    "v_p",
    "mult_order",
]

MAX_TABLE_ORDER = 4096


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q):
    """Return (p, k) with q = p**k, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def v_p(n, p):
    """p-adic valuation of a nonzero integer."""
    n = abs(n)
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def mult_order(x, m):
    """Multiplicative order of x modulo m (gcd(x, m) = 1)."""
    x %= m
    if m == 1:
        return 1
    k, y = 1, x
    while y != 1:
        y = y * x % m
        k += 1
        if k > m:
            raise ValueError(f"{x} is not a unit mod {m}")
    return k


# polynomials over F_p as coefficient lists, lowest degree first

def _poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_mod(f, g, p):
    f = list(f)
    inv_lead = pow(g[-1], p - 2, p)
    while len(f) >= len(g):
        c = f[-1] * inv_lead % p
        shift = len(f) - len(g)
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gc) % p
        _poly_trim(f)
    return f


def _is_irreducible(f, p):
    """Irreducibility over F_p by trial division with all monic polys of degree <= k/2."""
    k = len(f) - 1
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = list(tail) + [1]
            if not _poly_mod(f, g, p):
                return False
    return True


def _least_irreducible(p, k):
    # monic x^k + c_{k-1} x^{k-1} + ... + c_0, ordered lexicographically
    # by the coefficient sequence (c_{k-1}, ..., c_0)
    for coeffs in product(range(p), repeat=k):
        f = list(reversed(coeffs)) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise ValueError("no irreducible polynomial found")


class Field:
    """The finite field F_{p^k} with the lexicographically least monic modulus."""

    def __init__(self, p, k):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.k = k
        self.q = p**k
        if self.q > MAX_TABLE_ORDER:
            raise ValueError(f"field of order {self.q} is too large for table arithmetic")
        self.modulus = _least_irreducible(p, k)
        self._build_tables()

    def __repr__(self):
        return f"Field(p={self.p}, k={self.k})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    # -- construction --------------------------------------------------
    def coeffs(self, x):
        c = []
        for _ in range(self.k):
            c.append(x % self.p)
            x //= self.p
        return c

    def from_coeffs(self, c):
        x = 0
        for ci in reversed(list(c)):
            x = x * self.p + ci % self.p
        return x

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        vecs = np.array([self.coeffs(x) for x in range(q)], dtype=np.int64).reshape(q, k)
        weights = p ** np.arange(k, dtype=np.int64)
        add = (vecs[:, None, :] + vecs[None, :, :]) % p
        self.add = (add @ weights).astype(np.int64)
        self.neg = ((-vecs) % p) @ weights
        self.sub = self.add[:, self.neg]
        # multiplication: powers of the root reduced mod the modulus
        # x^j for j < 2k-1 as coefficient vectors
        red = np.zeros((2 * k - 1, k), dtype=np.int64)
        for j in range(2 * k - 1):
            f = [0] * j + [1]
            r = _poly_mod(f, list(self.modulus), p)
            red[j, : len(r)] = r
        conv = np.zeros((q, q, 2 * k - 1), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                conv[:, :, i + j] += vecs[:, None, i] * vecs[None, :, j]
        prod_vec = (conv @ red) % p
        self.mul = (prod_vec @ weights).astype(np.int64)
        self.inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            self.inv[x] = int(np.nonzero(self.mul[x] == 1)[0][0])
        self.one = 1
        self.zero = 0
        # the subfield F_p sits at 0..p-1
        self._pow_cache = {}

    # -- scalar arithmetic on integer encodings ------------------------
    def from_int(self, n):
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    def pow(self, x, e):
        if e < 0:
            x, e = int(self.inv[x]), -e
        r = 1
        while e:
            if e & 1:
                r = int(self.mul[r, x])
            x = int(self.mul[x, x])
            e >>= 1
        return r

    def frob(self, x, times=1):
        return self.pow(x, self.p**times)

    def order(self, x):
        if x == 0:
            raise ValueError("0 has no multiplicative order")
        n = self.q - 1
        o = n
        for r in _prime_factors(n):
            while o % r == 0 and self.pow(x, o // r) == 1:
                o //= r
        return o

    def elements(self):
        return range(self.q)

    @property
    def primitive(self):
        """The least generator of the multiplicative group."""
        return next(x for x in range(1, self.q) if self.order(x) == self.q - 1)

    def sqrt(self, x):
        """Least square root of x, or None."""
        sq = self.mul[np.arange(self.q), np.arange(self.q)]
        hits = np.nonzero(sq == x)[0]
        return int(hits[0]) if len(hits) else None

    def two_part_generator(self):
        """Least generator of the Sylow 2-subgroup of the multiplicative group."""
        n = self.q - 1
        t = 2 ** v_p(n, 2) if n % 2 == 0 else 1
        return next(x for x in range(1, self.q) if self.order(x) == t)

    def subfield_embedding(self, small):
        """Integer array e with e[x] the image of x in F_small under the least embedding into self."""
        if small.p != self.p or self.k % small.k:
            raise ValueError("not a subfield")
        if small.k == 1:
            return np.arange(small.p, dtype=np.int64)
        f = small.modulus
        for r in range(self.q):
            acc = 0
            for c in reversed(f):
                acc = int(self.add[self.mul[acc, r], c])
            if acc == 0:
                break
        # small element sum c_i theta^i -> sum c_i r^i
        emb = np.zeros(small.q, dtype=np.int64)
        powers = [self.pow(r, i) for i in range(small.k)]
        for x in range(small.q):
            acc = 0
            for i, c in enumerate(small.coeffs(x)):
                acc = int(self.add[acc, self.mul[c, powers[i]]])
            emb[x] = acc
        return emb

    def element(self, x):
        return FieldElement(self, x)


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def field_make(p, k=1):
    """Canonical Field for (p, k); repeated calls return the same object."""
    return Field(p, k)


def field_of_order(q):
    p, k = prime_power(q)
    return field_make(p, k)


class FieldElement:
    """A field element with operator overloading; thin wrapper over the integer encoding."""

    __slots__ = ("parent", "value")

    def __init__(self, parent, value):
        if isinstance(value, FieldElement):
            value = value.value
        self.parent = parent
        self.value = int(value) % parent.q if value >= 0 else parent.from_int(value)

    @property
    def coeffs(self):
        return tuple(self.parent.coeffs(self.value))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.parent != self.parent:
                raise ValueError("elements of different fields")
            return other.value
        return self.parent.from_int(int(other))

    def __add__(self, other):
        return FieldElement(self.parent, self.parent.add[self.value, self._coerce(other)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.parent, self.parent.neg[self.value])

    def __sub__(self, other):
        return FieldElement(self.parent, self.parent.sub[self.value, self._coerce(other)])

    def __rsub__(self, other):
        return FieldElement(self.parent, self.parent.sub[self._coerce(other), self.value])

    def __mul__(self, other):
        return FieldElement(self.parent, self.parent.mul[self.value, self._coerce(other)])

    __rmul__ = __mul__

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0")
        return FieldElement(self.parent, self.parent.inv[self.value])

    def __truediv__(self, other):
        o = FieldElement(self.parent, self._coerce(other))
        return self * o.inverse()

    def __pow__(self, e):
        return FieldElement(self.parent, self.parent.pow(self.value, e))

    def frobenius(self, times=1):
        return FieldElement(self.parent, self.parent.frob(self.value, times))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.parent == other.parent and self.value == other.value
        if isinstance(other, int):
            return self.value == self.parent.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.parent.p, self.parent.k, self.value))

    def __lt__(self, other):
        # coefficient-lexicographic order, highest coefficient first
        return tuple(reversed(self.coeffs)) < tuple(reversed(other.coeffs))

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.parent.k == 1:
            return f"{self.value}"
        return f"{self.parent.p}^{self.parent.k}:{self.coeffs}"


def _as_value(x):
    return x.value if isinstance(x, FieldElement) else int(x)


def square_class(x, field=None):
    """Return 'zero', 'square' or 'nonsquare' for x in a field of odd characteristic."""
    if isinstance(x, FieldElement):
        field = x.parent
    if field is None:
        raise ValueError("field required for integer-encoded elements")
    if field.p == 2:
        raise ValueError("square classes are degenerate in characteristic 2")
    v = _as_value(x)
    if v == 0:
        return "zero"
    return "square" if field.pow(v, (field.q - 1) // 2) == 1 else "nonsquare"


@dataclass(frozen=True)
class QParams:
    q: int
    eps: int
    a: int
    p: int = 2
    e: int = 1


def q_params(q):
    """eps = (-1)^((q-1)/2) and a = v_2(q - eps) for odd q."""
    prime_power(q)
    if q % 2 == 0:
        raise ValueError("q must be odd for p = 2")
    eps = 1 if q % 4 == 1 else -1
    return QParams(q=q, eps=eps, a=v_p(q - eps, 2), p=2, e=1)


def q_params_oddp(q, p, eps=1):
    """e = ord(eps*q mod p), p^a = ((eps*q)^e - 1)_p for an odd prime p not dividing q."""
    if p == 2:
        raise ValueError("use q_params for p = 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if q % p == 0:
        raise ValueError("p divides q")
    e = mult_order(eps * q, p)
    a = v_p((eps * q) ** e - 1, p)
    return QParams(q=q, eps=eps, a=a, p=p, e=e)


def _lex_key(field, x):
    return tuple(reversed(field.coeffs(x)))


def solve_sum_of_squares(lam, eps, q):
    """Smallest (b, b') with b^2 + b'^2 = lam and b^q = eps*b, b'^q = eps*b'.

    For eps = +1 the pair lies in F_q, for eps = -1 in F_{q^2}.  lam is an
    element of F_q (an int or a FieldElement of F_q).  For lam = -1 the
    solution additionally has b != 0.  Returned as FieldElements.
    """
    p, k = prime_power(q)
    if p == 2:
        raise ValueError("q must be odd")
    small = field_make(p, k)
    lam_v = _as_value(lam) if isinstance(lam, FieldElement) else small.from_int(int(lam))
    if eps == 1:
        F = small
        lam_big = lam_v
    elif eps == -1:
        F = field_make(p, 2 * k)
        lam_big = int(F.subfield_embedding(small)[lam_v])
    else:
        raise ValueError("eps must be +1 or -1")
    cands = [x for x in range(F.q) if F.pow(x, q) == (x if eps == 1 else int(F.neg[x]))]
    cands.sort(key=lambda x: _lex_key(F, x))
    minus_one = int(F.neg[1])
    for b in cands:
        if lam_big == minus_one and b == 0:
            continue
        bb = int(F.mul[b, b])
        for b2 in cands:
            if int(F.add[bb, F.mul[b2, b2]]) == lam_big:
                return FieldElement(F, b), FieldElement(F, b2)
    raise ArithmeticError("no solution found")

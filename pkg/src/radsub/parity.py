"""Parity of orthogonal transformations: the coset of X in O(V)/Omega(V).

Cosets are labelled by pairs (t, t') so that a reflection r_v lies in
(1, 0) when (v, v) is a square and in (0, 1) when it is not.  The parity of
X is read off any factorization of X into reflections: t' is the square
class of the product of the reflection norms (the spinor norm) and t is the
number of reflections plus t', mod 2.
"""

from dataclasses import dataclass

import numpy as np

from .gfq import field_make, prime_power

__all__ = [
    "Parity",
    "ParityGroup",
    "reflection",
    "reflect_decompose",
    "parity_of",
    "parity_group",
    "parity_map",
    "omega_kernel",
    "rotation_t",
    "fuzz_homomorphism",
]


@dataclass(frozen=True, order=True)
class Parity:
    t: int
    tp: int

    def __xor__(self, other):
        return Parity(self.t ^ other.t, self.tp ^ other.tp)

    @property
    def bit(self):
        return self.t + 2 * self.tp

    def __str__(self):
        return f"({self.t},{self.tp})"


ZERO = Parity(0, 0)


class ParityGroup:
    """A subgroup of (Z_2)^2, stored as a bitmask over the four pairs."""

    _NAMES = {0b0001: "0", 0b0011: "(1,0)", 0b0101: "(0,1)", 0b1001: "(1,1)", 0b1111: "(Z2)^2"}

    def __init__(self, elements=(ZERO,)):
        mask = 1
        for e in elements:
            mask |= 1 << e.bit
        # close under xor
        changed = True
        while changed:
            changed = False
            for x in self._members(mask):
                for y in self._members(mask):
                    b = 1 << (x ^ y).bit
                    if not mask & b:
                        mask |= b
                        changed = True
        self.mask = mask

    @staticmethod
    def _members(mask):
        return [Parity(b & 1, b >> 1) for b in range(4) if mask >> b & 1]

    @classmethod
    def named(cls, name):
        """Inverse of str: '0', '(1,0)', '(0,1)', '(1,1)' or '(Z2)^2'."""
        for mask, nm in cls._NAMES.items():
            if nm == name:
                return cls(cls._members(mask))
        raise ValueError(f"unknown parity group {name!r}")

    @property
    def elements(self):
        return self._members(self.mask)

    @property
    def order(self):
        return bin(self.mask).count("1")

    def __contains__(self, x):
        return bool(self.mask >> x.bit & 1)

    def __eq__(self, other):
        return isinstance(other, ParityGroup) and self.mask == other.mask

    def __hash__(self):
        return hash(self.mask)

    def __str__(self):
        return self._NAMES[self.mask]

    def __repr__(self):
        return f"ParityGroup({self})"


# ---------------------------------------------------------------------------
# scalar arithmetic through the field tables


class _Arith:
    _cache = {}

    def __new__(cls, fld):
        key = (fld.p, fld.k)
        if key not in cls._cache:
            obj = super().__new__(cls)
            obj.F = fld
            obj.add = fld.add.tolist()
            obj.sub = fld.sub.tolist()
            obj.mul = fld.mul.tolist()
            obj.inv = fld.inv.tolist()
            obj.two = fld.from_int(2)
            half = (fld.q - 1) // 2
            obj.square = [x != 0 and fld.pow(x, half) == 1 for x in range(fld.q)]
            cls._cache[key] = obj
        return cls._cache[key]

    def dot(self, u, v):
        add, mul = self.add, self.mul
        acc = 0
        for a, b in zip(u, v):
            if a and b:
                acc = add[acc][mul[a][b]]
        return acc


def _form(ar, G, u, v):
    return ar.dot(u, [ar.dot(row, v) for row in G])


def _reflect_left(ar, G, w, Y):
    """r_w Y, with r_w(x) = x - 2 (x, w) / (w, w) w."""
    n = len(Y)
    c = ar.mul[ar.two][ar.inv[_form(ar, G, w, w)]]
    wG = [ar.dot(w, [G[i][j] for i in range(n)]) for j in range(n)]
    s = [ar.dot(wG, [Y[i][j] for i in range(n)]) for j in range(n)]
    mul, sub = ar.mul, ar.sub
    out = []
    for i in range(n):
        ci = mul[c][w[i]]
        row = Y[i]
        if ci:
            row = [sub[row[j]][mul[ci][s[j]]] for j in range(n)]
        out.append(list(row))
    return out


def reflection(v, space):
    """The matrix of r_v on the given orthogonal space."""
    ar = _Arith(space.field)
    n = space.n
    G = np.asarray(space.gram).tolist()
    v = [int(x) for x in v]
    if not _form(ar, G, v, v):
        raise ValueError("isotropic vector")
    return np.array(_reflect_left(ar, G, v, np.eye(n, dtype=np.int64).tolist()), dtype=np.int64)


def _preserves_form(X, space):
    X = np.asarray(X)
    if X.shape != (space.n, space.n):
        return False
    return bool(np.array_equal(space.form(X, X), np.asarray(space.gram) % space.field.q))


def reflect_decompose(X, space, check=True, order=None):
    """Vectors v_1, ..., v_k with X = r_{v_1} ... r_{v_k}.

    Works down a shrinking nondegenerate subspace U on whose complement the
    remaining factor is already trivial: pick x in U anisotropic, send Yx
    back to x with one reflection (or two when Yx - x is isotropic), and
    pass to U cap x^perp.  order permutes the starting basis, giving a
    different decomposition of the same element.
    """
    if space.kind != "orthogonal":
        raise ValueError("parity needs an orthogonal space")
    ops = space.ops
    if check and not _preserves_form(X, space):
        raise ValueError("not an isometry of the space")
    F = space.field
    n = space.n
    G = np.asarray(space.gram, dtype=np.int64)
    two = F.from_int(2)

    def norm(v):
        return int(ops.mm(ops.mm(v[None, :], G), v[:, None])[0, 0])

    def reflect_left(w, Y):
        c = int(F.mul[two, F.inv[norm(w)]])
        s = ops.mm(ops.mm(w[None, :], G), Y)
        return ops.sub(Y, ops.mm(ops.smul(c, w)[:, None], s))

    Y = np.asarray(X, dtype=np.int64)
    idx = list(range(n)) if order is None else list(order)
    U = np.eye(n, dtype=np.int64)[idx]
    vs = []
    while len(U):
        norms = ops.mm(ops.mm(U, G), U.T)
        diag = np.diagonal(norms)
        nz = np.nonzero(diag)[0]
        if len(nz):
            x = U[nz[0]]
        else:
            i, j = np.argwhere(norms != 0)[0]
            x = ops.add(U[i], U[j])
        Yx = ops.mm(Y, x[:, None])[:, 0]
        if not np.array_equal(Yx, x):
            w = ops.sub(Yx, x)
            if norm(w):
                Y = reflect_left(w, Y)
                vs.append(w)
            else:
                w = ops.add(Yx, x)
                Y = reflect_left(x, reflect_left(w, Y))
                vs.extend([w, x])
        # U <- U cap x^perp
        f = ops.mm(ops.mm(U, G), x[:, None])[:, 0]
        j = int(np.nonzero(f)[0][0])
        coef = ops.emul(f, F.inv[f[j]])
        U = ops.sub(U, ops.mm(coef[:, None], U[j][None, :]))
        U = np.delete(U, j, axis=0)
    if not np.array_equal(Y, np.eye(n, dtype=np.int64)):
        raise AssertionError("decomposition did not terminate at the identity")
    return vs


def _parity_from_vectors(ar, G, vs):
    theta = 1
    for v in vs:
        theta = ar.mul[theta][_form(ar, G, v.tolist(), v.tolist())]
    tp = 0 if ar.square[theta] else 1
    return Parity((len(vs) + tp) % 2, tp)


def parity_of(X, space, check=True, order=None):
    """The parity (t, t') of an isometry X."""
    vs = reflect_decompose(X, space, check=check, order=order)
    return _parity_from_vectors(_Arith(space.field), np.asarray(space.gram).tolist(), vs)


def parity_group(gens, space):
    """The image of the group generated by gens in (Z_2)^2."""
    return ParityGroup([parity_of(g, space) for g in gens])


def parity_map(R, space):
    """Parity of every element of R (in R's element order), spread from the generators."""
    gens = R.generators()
    gpar = [parity_of(g, space) for g in gens]
    N = R.order
    par = [None] * N
    ident = R.locate(np.eye(space.n, dtype=np.int64)[None])[0]
    par[ident] = ZERO
    frontier = [ident]
    ops = R.ops
    while frontier:
        cur = R.elements[frontier]
        nxt = []
        for g, pg in zip(gens, gpar):
            prods = ops.mm(cur, g)
            idx = R.locate(prods)
            for src, dst in zip(frontier, idx.tolist()):
                if par[dst] is None:
                    par[dst] = par[src] ^ pg
                    nxt.append(dst)
        frontier = nxt
    return par


def omega_kernel(R, space):
    """R cap Omega(V): the elements of parity (0, 0)."""
    par = parity_map(R, space)
    keep = [i for i, x in enumerate(par) if x == ZERO]
    return R.subgroup(keep)


# ---------------------------------------------------------------------------
# rotations of the plane


def rotation_t(a, b, q):
    """t with (a + b sqrt(-1))^((q - eps)/2) = (-1)^t, sqrt(-1) in F_q or F_{q^2}."""
    p, k = prime_power(q)
    Fq = field_make(p, k)
    eps = 1 if q % 4 == 1 else -1
    F = Fq if eps == 1 else field_make(p, 2 * k)
    emb = F.subfield_embedding(Fq)
    i = F.sqrt(int(F.neg[1]))
    z = int(F.add[emb[a], F.mul[emb[b], i]])
    r = F.pow(z, (q - eps) // 2)
    if r == 1:
        return 0
    if r == int(F.neg[1]):
        return 1
    raise ValueError("not a rotation of determinant 1")


# ---------------------------------------------------------------------------
# randomized homomorphism check


def _random_reflections(space, k, rng):
    out = []
    while len(out) < k:
        v = rng.integers(0, space.field.q, space.n)
        try:
            out.append(reflection(v, space))
        except ValueError:
            continue
    return out


def fuzz_homomorphism(space, words=10_000, seed=0, letters=8, max_len=8):
    """Compare parity_of(w) with the xor of its letters' parities over random words.

    Half the letters are reflections, the rest products of two or three
    reflections, so that letters of every parity occur.  Returns the number
    of mismatching words.
    """
    rng = np.random.default_rng(seed)
    ops = space.ops
    refl = _random_reflections(space, letters, rng)
    gens = refl[: letters // 2]
    while len(gens) < letters:
        k = int(rng.integers(2, 4))
        X = refl[int(rng.integers(len(refl)))]
        for _ in range(k - 1):
            X = ops.mm(X, refl[int(rng.integers(len(refl)))])
        gens.append(X)
    gpar = [parity_of(g, space) for g in gens]
    ident = np.eye(space.n, dtype=np.int64)
    bad = 0
    for _ in range(words):
        idx = rng.integers(0, letters, int(rng.integers(1, max_len + 1)))
        X = ident
        expect = ZERO
        for i in idx:
            X = ops.mm(X, gens[i])
            expect = expect ^ gpar[i]
        if parity_of(X, space, check=False) != expect:
            bad += 1
    return bad

"""Linear algebra over finite fields: null spaces, adapted bases for forms,
change of form, Kronecker products, and polynomial extensions F_Q / F_q.

These helpers let the constructions be written in whatever basis is most
natural and then moved to the standard form spaces of matgrp.
"""

import numpy as np

from .matgrp import MatOps

_RNG_SEED = 20240101


def kron(ops, A, B):
    """Kronecker product over the field of ops."""
    A = np.asarray(A)
    B = np.asarray(B)
    out = ops.emul(A[:, None, :, None], B[None, :, None, :])
    return out.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def block_diag(blocks):
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    s = 0
    for b in blocks:
        d = b.shape[0]
        out[s : s + d, s : s + d] = b
        s += d
    return out


def embed_block(g, n, start):
    """g placed at rows/columns start..start+d of the n x n identity."""
    out = np.eye(n, dtype=np.int64)
    d = g.shape[0]
    out[start : start + d, start : start + d] = g
    return out


def rref(ops, A):
    """Row reduced echelon form and pivot columns."""
    A = np.array(A, dtype=np.int64, copy=True)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        pr = r + nz[0]
        A[[r, pr]] = A[[pr, r]]
        A[r] = ops.emul(ops.inv_scalar(A[r, c]), A[r])
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = ops.sub(A[i], ops.emul(A[i, c], A[r]))
        pivots.append(c)
        r += 1
    return A, pivots


def nullspace(ops, A):
    """Columns spanning {x : A x = 0}."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    R, piv = rref(ops, A)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for i, pc in enumerate(piv):
            x[pc] = ops.neg(R[i, f])
        basis.append(x)
    if not basis:
        return np.zeros((cols, 0), dtype=np.int64)
    return np.array(basis, dtype=np.int64).T


def _form_val(ops, kind, G, u, v, q):
    if kind == "unitary":
        v = ops.frob(v, q)
    return int(ops.mm(ops.mm(u[None, :], G), v[:, None])[0, 0])


def adapted_basis(ops, kind, G, target, q):
    """Columns P with P^T G P = target (twisted for unitary).

    target is the standard Gram of the same kind and dimension; for the
    orthogonal kind it must have the same discriminant as G.
    """
    n = G.shape[0]
    rng = np.random.default_rng(_RNG_SEED)
    fq = ops.q
    W = np.eye(n, dtype=np.int64)
    cols = [None] * n
    if kind == "symplectic":
        h = n // 2
        for i in range(h):
            d = W.shape[1]
            # e: first basis vector of W; f: a vector of W with (e, f) = 1
            e = W[:, 0]
            vals = ops.mm(ops.mm(e[None, :], G), W)[0]
            j = int(np.nonzero(vals)[0][0])
            f = ops.emul(ops.inv_scalar(vals[j]), W[:, j])
            cols[i], cols[h + i] = e, f
            A = ops.mm(np.stack([e, f]), ops.mm(G, W))
            A = np.concatenate([A, ops.mm(np.stack([e, f]), ops.mm(G.T, W))])
            W = ops.mm(W, nullspace(ops, A)) if d > 2 else W[:, :0]
        P = np.stack(cols, axis=1)
        return P
    # orthogonal / unitary: orthonormal basis, last vector scaled to target
    for i in range(n):
        d = W.shape[1]
        want = int(target[i, i])
        if d == 1:
            w = W[:, 0]
            c = _form_val(ops, kind, G, w, w, q)
            # find s with s * s^(twist) * c = want
            found = None
            for s in range(1, fq):
                ss = int(ops.emul(s, s)) if kind != "unitary" else int(ops.emul(s, ops.frob(np.array(s), q)))
                if int(ops.emul(ss, c)) == want:
                    found = s
                    break
            if found is None:
                raise ValueError("discriminant mismatch in change of form")
            cols[i] = ops.emul(found, w)
            break
        v = None
        for _ in range(20000):
            x = rng.integers(0, fq, size=d)
            if not x.any():
                continue
            cand = ops.mm(W, x[:, None])[:, 0]
            if _form_val(ops, kind, G, cand, cand, q) == want:
                v = cand
                break
        if v is None:
            raise ValueError("no vector of the requested norm found")
        cols[i] = v
        if kind == "unitary":
            A = ops.mm(ops.frob(v, q)[None, :], ops.mm(G.T, W))
        else:
            A = ops.mm(v[None, :], ops.mm(G, W))
        W = ops.mm(W, nullspace(ops, A))
    return np.stack(cols, axis=1)


def transport(ops, kind, gens, G, target, q):
    """Conjugate generators preserving G to generators preserving target."""
    P = adapted_basis(ops, kind, G, target, q)
    if kind == "unitary":
        chk = ops.mm(ops.mm(P.T, G), ops.frob(P, q))
    else:
        chk = ops.mm(ops.mm(P.T, G), P)
    if not np.array_equal(chk, np.asarray(target) % ops.q):
        raise AssertionError("change of form failed")
    Pi = ops.inv(P)
    return [ops.mm(ops.mm(Pi, g), P) for g in gens]


# ---------------------------------------------------------------------------
# polynomials over a table field, coefficient lists low degree first


class PolyField:
    """The extension F_Q = F[t]/(f) of a table field F, with regular representations."""

    def __init__(self, base, degree, modulus=None):
        self.base = base
        self.ops = MatOps(base)
        self.d = degree
        self.f = list(modulus) if modulus is not None else self._least_irreducible()

    # arithmetic on coefficient arrays of length d
    def mul(self, x, y):
        F = self.base
        prod = [0] * (2 * self.d - 1)
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b:
                    prod[i + j] = int(F.add[prod[i + j], F.mul[a, b]])
        return self._reduce(prod)

    def _reduce(self, prod, f=None):
        F = self.base
        f = self.f if f is None else f
        prod = list(prod)
        deg = len(f) - 1
        lead_inv = int(F.inv[f[-1]])
        for k in range(len(prod) - 1, deg - 1, -1):
            c = prod[k]
            if c == 0:
                continue
            c = int(F.mul[c, lead_inv])
            for i in range(deg + 1):
                prod[k - deg + i] = int(F.sub[prod[k - deg + i], F.mul[c, f[i]]])
        out = prod[:deg] + [0] * max(0, deg - len(prod))
        return out

    def pow(self, x, e):
        r = [1] + [0] * (self.d - 1)
        while e:
            if e & 1:
                r = self.mul(r, x)
            x = self.mul(x, x)
            e >>= 1
        return r

    def one(self):
        return [1] + [0] * (self.d - 1)

    def order_is(self, x, n, primes):
        if self.pow(x, n) != self.one():
            return False
        return all(self.pow(x, n // r) != self.one() for r in primes if n % r == 0)

    def regular(self, x):
        """Matrix of multiplication by x in the basis 1, t, ..., t^(d-1)."""
        cols = []
        basis_el = self.one()
        t = [0, 1] + [0] * (self.d - 2) if self.d > 1 else None
        for j in range(self.d):
            cols.append(self.mul(x, basis_el))
            if j < self.d - 1:
                basis_el = self.mul(basis_el, t)
        return np.array(cols, dtype=np.int64).T

    def element_of_order(self, n):
        """Least element (in coefficient order) of multiplicative order n."""
        from itertools import product as iproduct

        primes = _primes(n)
        Q = self.base.q**self.d
        if (Q - 1) % n:
            raise ValueError("no element of that order")
        cof = (Q - 1) // n
        for tail in iproduct(range(self.base.q), repeat=self.d):
            x = list(reversed(tail))
            if not any(x):
                continue
            y = self.pow(x, cof)
            if self.order_is(y, n, primes):
                return y
        raise ValueError("no element of that order")

    def _least_irreducible(self):
        from itertools import product as iproduct

        F = self.base
        d = self.d
        if d == 1:
            return [0, 1]
        for coeffs in iproduct(range(F.q), repeat=d):
            f = list(reversed(coeffs)) + [1]
            if f[0] == 0:
                continue
            if _rabin_irreducible(F, f):
                return f
        raise ValueError("no irreducible polynomial")


def _primes(n):
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


def _poly_mulmod(F, x, y, f):
    deg = len(f) - 1
    prod = [0] * (2 * deg - 1)
    for i, a in enumerate(x):
        if a == 0:
            continue
        for j, b in enumerate(y):
            if b:
                prod[i + j] = int(F.add[prod[i + j], F.mul[a, b]])
    pf = PolyField.__new__(PolyField)
    pf.base = F
    return PolyField._reduce(pf, prod, f)


def _poly_powmod(F, x, e, f):
    deg = len(f) - 1
    r = [1] + [0] * (deg - 1)
    while e:
        if e & 1:
            r = _poly_mulmod(F, r, x, f)
        x = _poly_mulmod(F, x, x, f)
        e >>= 1
    return r


def _poly_gcd_is_one(F, a, b):
    def trim(p):
        p = list(p)
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        # a mod b
        a = list(a)
        inv = int(F.inv[b[-1]])
        while len(a) >= len(b):
            c = int(F.mul[a[-1], inv])
            s = len(a) - len(b)
            for i, bc in enumerate(b):
                a[s + i] = int(F.sub[a[s + i], F.mul[c, bc]])
            a = trim(a)
        a, b = b, a
    return len(a) == 1


def _rabin_irreducible(F, f):
    d = len(f) - 1
    t = [0, 1] + [0] * (d - 2)
    q = F.q
    if _poly_powmod(F, t, q**d, f) != t:
        return False
    for r in _primes(d):
        h = _poly_powmod(F, t, q ** (d // r), f)
        h = list(h)
        h[1] = int(F.sub[h[1], 1])
        if not _poly_gcd_is_one(F, f, h):
            return False
    return True


def subfield_values(big, small):
    """Dict from encodings in big lying in the subfield to encodings in small."""
    emb = big.subfield_embedding(small)
    return {int(v): x for x, v in enumerate(emb)}

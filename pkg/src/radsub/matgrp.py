"""Matrix groups over finite fields, by brute force.

Matrices are integer arrays holding field encodings (see gfq).  Groups are
held as explicit, deduplicated element arrays sorted by a byte key, which is
what makes normalizers, cores and Sylow subgroups computable by scanning.
This module is the oracle the classification is checked against, so it only
uses generic finite-group facts, never the structure theory of the groups.
"""

from dataclasses import dataclass
from itertools import product

import numpy as np

from .gfq import Field, field_make, prime_power, square_class, v_p

__all__ = [
    "MatOps",
    "FormSpace",
    "GeneratedGroup",
    "CapExceeded",
    "standard_space",
    "is_isometry",
    "closure",
    "normalizer",
    "centralizer",
    "core_p",
    "sylow_p",
    "is_radical",
    "enumerate_radical_classes",
    "ambient_group",
    "serialize",
    "deserialize",
    "disc_of_gram",
]

DEFAULT_CAP = 10**7


class CapExceeded(RuntimeError):
    """Raised when a closure or enumeration would exceed its element cap."""


# ---------------------------------------------------------------------------
# matrix arithmetic


class MatOps:
    """Batched matrix arithmetic over one finite field."""

    _cache = {}

    def __new__(cls, fld):
        key = (fld.p, fld.k)
        if key not in cls._cache:
            obj = super().__new__(cls)
            obj._init(fld)
            cls._cache[key] = obj
        return cls._cache[key]

    def _init(self, fld):
        self.field = fld
        self.p = fld.p
        self.q = fld.q
        self.prime = fld.k == 1

    def asarray(self, m):
        a = np.asarray(m, dtype=np.int64)
        return a % self.q if self.prime else a

    def from_ints(self, m):
        """Interpret plain integers (possibly negative) through Z -> F_p."""
        return np.asarray(m, dtype=np.int64) % self.p

    def mm(self, A, B):
        A = np.asarray(A)
        B = np.asarray(B)
        if self.prime:
            return np.matmul(A, B) % self.p
        add, mul = self.field.add, self.field.mul
        P = mul[A[..., :, :, None], B[..., None, :, :]]
        acc = P[..., 0, :]
        for l in range(1, P.shape[-2]):
            acc = add[acc, P[..., l, :]]
        return acc

    def add(self, A, B):
        if self.prime:
            return (np.asarray(A) + np.asarray(B)) % self.p
        return self.field.add[A, B]

    def sub(self, A, B):
        if self.prime:
            return (np.asarray(A) - np.asarray(B)) % self.p
        return self.field.sub[A, B]

    def neg(self, A):
        if self.prime:
            return (-np.asarray(A)) % self.p
        return self.field.neg[A]

    def smul(self, c, A):
        if self.prime:
            return (c * np.asarray(A)) % self.p
        return self.field.mul[c, A]

    def emul(self, A, B):
        if self.prime:
            return (np.asarray(A) * np.asarray(B)) % self.p
        return self.field.mul[A, B]

    def inv_scalar(self, x):
        return self.field.inv[x]

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def frob(self, A, e):
        """Entrywise x -> x^e (e a power of p)."""
        if self.prime:
            return np.asarray(A)
        table = np.array([self.field.pow(x, e) for x in range(self.q)], dtype=np.int64)
        return table[A]

    def pow(self, A, e):
        A = np.asarray(A)
        n = A.shape[-1]
        R = np.broadcast_to(self.eye(n), A.shape).copy()
        while e:
            if e & 1:
                R = self.mm(R, A)
            A = self.mm(A, A)
            e >>= 1
        return R

    def det(self, A):
        """Batched determinant by Gaussian elimination."""
        A = np.array(A, dtype=np.int64, copy=True)
        single = A.ndim == 2
        if single:
            A = A[None]
        N, n, _ = A.shape
        d = np.ones(N, dtype=np.int64)
        alive = np.ones(N, dtype=bool)
        rows = np.arange(N)
        for c in range(n):
            piv = np.full(N, -1)
            nz = A[:, c:, c] != 0
            has = nz.any(axis=1)
            piv[has] = c + np.argmax(nz[has], axis=1)
            alive &= has
            idx = rows[has]
            pr = piv[has]
            swap = pr != c
            # swap rows
            tmp = A[idx, c].copy()
            A[idx, c] = A[idx, pr]
            A[idx, pr] = tmp
            d[idx[swap]] = self.neg(d[idx[swap]])
            pv = A[idx, c, c]
            d[idx] = self.emul(d[idx], pv)
            inv = self.field.inv[pv]
            for r in range(c + 1, n):
                f = self.emul(A[idx, r, c], inv)
                A[idx, r] = self.sub(A[idx, r], self.emul(f[:, None], A[idx, c]))
        d[~alive] = 0
        return int(d[0]) if single else d

    def inv(self, A):
        """Batched inverse by Gauss-Jordan; raises on singular input."""
        A = np.array(A, dtype=np.int64, copy=True)
        single = A.ndim == 2
        if single:
            A = A[None]
        N, n, _ = A.shape
        M = np.concatenate([A, np.broadcast_to(self.eye(n), (N, n, n))], axis=2)
        rows = np.arange(N)
        for c in range(n):
            nz = M[:, c:, c] != 0
            if not nz.any(axis=1).all():
                raise ValueError("singular matrix")
            pr = c + np.argmax(nz, axis=1)
            tmp = M[rows, c].copy()
            M[rows, c] = M[rows, pr]
            M[rows, pr] = tmp
            inv = self.field.inv[M[:, c, c]]
            M[:, c] = self.emul(inv[:, None], M[:, c])
            for r in range(n):
                if r == c:
                    continue
                f = M[:, r, c].copy()
                M[:, r] = self.sub(M[:, r], self.emul(f[:, None], M[:, c]))
        out = M[:, :, n:]
        return out[0] if single else out


def keys_of(arr):
    """Byte keys (numpy void) for a stack of matrices; order is canonical."""
    arr = np.asarray(arr)
    flat = np.ascontiguousarray(arr.reshape(arr.shape[0], -1).astype(np.uint8))
    return flat.view(np.dtype((np.void, flat.shape[1]))).ravel()


def key_of(m):
    return keys_of(np.asarray(m)[None])[0]


# ---------------------------------------------------------------------------
# forms


@dataclass
class FormSpace:
    kind: str
    n: int
    q: int
    field: Field
    gram: np.ndarray = None
    variant: str = "none"

    @property
    def ops(self):
        return MatOps(self.field)

    def form(self, U, V):
        """Batched values of the form on column-stacked vectors: U^T G V (twisted for unitary)."""
        ops = self.ops
        if self.kind == "unitary":
            V = ops.frob(V, self.q)
        return ops.mm(ops.mm(np.swapaxes(U, -1, -2), self.gram), V)


def disc_of_gram(gram, fld):
    """Square class of det(gram) as +1/-1."""
    ops = MatOps(fld)
    d = ops.det(np.asarray(gram))
    sc = square_class(d, fld)
    if sc == "zero":
        raise ValueError("degenerate form")
    return 1 if sc == "square" else -1


def standard_space(kind, n, q, variant=None):
    """The standard form space of the given kind.

    linear: no form.  unitary: identity hermitian form over F_{q^2}.
    symplectic: [[0, I], [-I, 0]].  orthogonal: identity (variant '+',
    discriminant +1) or diag(1, ..., 1, d0) with d0 the least generator
    of F_q^* (variant '-').
    """
    p, k = prime_power(q)
    kind = {"GL": "linear", "GU": "unitary", "Sp": "symplectic", "O": "orthogonal"}.get(kind, kind)
    if kind == "linear":
        return FormSpace("linear", n, q, field_make(p, k), None, "none")
    if kind == "unitary":
        F2 = field_make(p, 2 * k)
        return FormSpace("unitary", n, q, F2, np.eye(n, dtype=np.int64), "none")
    if p == 2:
        raise ValueError("symplectic/orthogonal forms need odd q here")
    F = field_make(p, k)
    if kind == "symplectic":
        if n % 2:
            raise ValueError("symplectic space needs even dimension")
        h = n // 2
        J = np.zeros((n, n), dtype=np.int64)
        J[:h, h:] = np.eye(h, dtype=np.int64)
        J[h:, :h] = (-np.eye(h, dtype=np.int64)) % p
        return FormSpace("symplectic", n, q, F, J, "none")
    if kind == "orthogonal":
        if variant not in ("+", "-"):
            raise ValueError("orthogonal space needs variant '+' or '-'")
        G = np.eye(n, dtype=np.int64)
        if variant == "-":
            G[n - 1, n - 1] = F.primitive
        return FormSpace("orthogonal", n, q, F, G, variant)
    raise ValueError(f"unknown kind {kind}")


def is_isometry(M, space):
    M = np.asarray(M)
    if M.shape != (space.n, space.n):
        raise ValueError("size mismatch")
    ops = space.ops
    if ops.det(M) == 0:
        return False
    if space.kind == "linear":
        return True
    return bool(np.array_equal(space.form(M, M), space.gram % space.field.q))


# ---------------------------------------------------------------------------
# groups


class GeneratedGroup:
    """A finite matrix group stored as a sorted, deduplicated element array."""

    def __init__(self, ops, elements, gens=None, keys=None):
        self.ops = ops
        elements = np.asarray(elements, dtype=np.int64)
        if keys is None:
            keys = keys_of(elements)
        order = np.argsort(keys, kind="stable")
        self.elements = elements[order]
        self.keys = keys[order]
        self.n = self.elements.shape[-1]
        self.gens = None if gens is None else np.asarray(gens, dtype=np.int64)
        self._inv_idx = None

    @property
    def order(self):
        return len(self.keys)

    def __len__(self):
        return self.order

    def locate(self, mats):
        """Indices of the given matrices in the element array, -1 when absent."""
        k = keys_of(mats)
        pos = np.searchsorted(self.keys, k)
        pos = np.minimum(pos, len(self.keys) - 1)
        hit = self.keys[pos] == k
        return np.where(hit, pos, -1)

    def contains(self, mats):
        return self.locate(mats) >= 0

    def inverse_index(self):
        if self._inv_idx is None:
            inv = self.ops.inv(self.elements)
            self._inv_idx = self.locate(inv)
        return self._inv_idx

    def generators(self):
        """A small generating set, found greedily when none was recorded."""
        if self.gens is not None and len(self.gens):
            return self.gens
        if self.order == 1:
            self.gens = self.elements[:0]
            return self.gens
        gens = []
        current = closure([], self.ops, n=self.n)
        rng = np.random.default_rng(0)
        for i in rng.permutation(self.order):
            if current.order == self.order:
                break
            g = self.elements[i]
            if not current.contains(g[None])[0]:
                gens.append(g)
                current = closure(gens, self.ops, n=self.n)
        self.gens = np.array(gens, dtype=np.int64).reshape(-1, self.n, self.n)
        return self.gens

    def subgroup(self, idx, gens=None):
        return GeneratedGroup(self.ops, self.elements[idx], gens=gens, keys=self.keys[idx])

    def canonical_key(self):
        """The sorted element keys as one bytes object (identifies the subgroup)."""
        return b"".join(bytes(k) for k in self.keys)

    def __repr__(self):
        return f"GeneratedGroup(order={self.order}, n={self.n})"


def closure(gens, ops, cap=DEFAULT_CAP, n=None):
    """Breadth-first closure of a generator list under multiplication."""
    gens = np.asarray(gens, dtype=np.int64)
    if gens.size == 0:
        if n is None:
            raise ValueError("dimension needed for an empty generator list")
        gens = np.zeros((0, n, n), dtype=np.int64)
    n = gens.shape[-1]
    gens = gens.reshape(-1, n, n)
    if len(gens) and np.any(ops.det(gens) == 0):
        raise ValueError("non-invertible generator")
    ident = ops.eye(n)[None]
    seen_keys = keys_of(ident)
    elems = [ident]
    frontier = ident
    seen = np.sort(seen_keys)
    total = 1
    while len(frontier) and len(gens):
        prods = ops.mm(frontier[:, None], gens[None]).reshape(-1, n, n)
        k = keys_of(prods)
        uk, first = np.unique(k, return_index=True)
        prods = prods[first]
        pos = np.searchsorted(seen, uk)
        pos = np.minimum(pos, len(seen) - 1)
        new = seen[pos] != uk
        frontier = prods[new]
        if not len(frontier):
            break
        total += len(frontier)
        if total > cap:
            raise CapExceeded(f"closure exceeded cap {cap}")
        elems.append(frontier)
        seen = np.sort(np.concatenate([seen, uk[new]]))
    allel = np.concatenate(elems)
    return GeneratedGroup(ops, allel, gens=gens)


def _conj_all(ambient_elems, ambient_inv, mats, ops):
    """g m g^-1 for every ambient element g and every m: shape (len(g), len(m), n, n)."""
    left = ops.mm(ambient_elems[:, None], mats[None])
    return ops.mm(left, ambient_inv[:, None])


def _chunks(N, size):
    for s in range(0, N, size):
        yield slice(s, min(N, s + size))


def normalizer(ambient, R, chunk=8192):
    """N_ambient(R) by scanning all ambient elements."""
    gens = R.generators()
    if len(gens) == 0:
        return ambient
    ops = ambient.ops
    inv = ambient.elements[ambient.inverse_index()]
    keep = np.zeros(ambient.order, dtype=bool)
    for sl in _chunks(ambient.order, chunk):
        c = _conj_all(ambient.elements[sl], inv[sl], gens, ops)
        ok = R.contains(c.reshape(-1, R.n, R.n)).reshape(c.shape[0], c.shape[1]).all(axis=1)
        keep[sl] = ok
    return ambient.subgroup(np.nonzero(keep)[0])


def centralizer(ambient, S, chunk=8192):
    """Z_ambient(S) by scanning all ambient elements."""
    gens = S.generators() if isinstance(S, GeneratedGroup) else np.asarray(S)
    if len(gens) == 0:
        return ambient
    ops = ambient.ops
    keep = np.ones(ambient.order, dtype=bool)
    for sl in _chunks(ambient.order, chunk):
        g = ambient.elements[sl]
        a = ops.mm(g[:, None], gens[None])
        b = ops.mm(gens[None], g[:, None])
        keep[sl] = np.all(a == b, axis=(1, 2, 3))
    return ambient.subgroup(np.nonzero(keep)[0])


def _p_part(n, p):
    return p ** v_p(n, p) if n % p == 0 else 1


def _p_elements_mask(group, p):
    """Elements whose order is a power of p."""
    e = _p_part(group.order, p)
    pw = group.ops.pow(group.elements, e)
    return np.all(pw == np.eye(group.n, dtype=np.int64), axis=(1, 2))


def sylow_p(ambient, p):
    """A Sylow p-subgroup grown greedily: P <- <P, x> for p-elements x in N(P) - P."""
    target = _p_part(ambient.order, p)
    ops = ambient.ops
    P = closure([], ops, n=ambient.n)
    gens = []
    while P.order < target:
        N = normalizer(ambient, P)
        cand = N.elements[_p_elements_mask(N, p)]
        cand = cand[~P.contains(cand)]
        if not len(cand):
            raise RuntimeError("Sylow growth stalled")
        # prefer the element of largest order to grow quickly
        gens.append(cand[0])
        P = closure(gens, ops)
    return P


def core_p(group, p):
    """O_p(group): the largest normal p-subgroup, as the core of a Sylow p-subgroup."""
    if _p_part(group.order, p) == group.order:
        return group
    T = sylow_p(group, p)
    gens = group.generators()
    ops = group.ops
    ginv = ops.inv(gens)
    cur = T
    while True:
        # keep x in cur with s^-1 x s in cur for all generators s
        els = cur.elements
        ok = np.ones(len(els), dtype=bool)
        for s, si in zip(gens, ginv):
            c = ops.mm(ops.mm(si, els), s)
            ok &= cur.contains(c)
        if ok.all():
            return cur
        cur = cur.subgroup(np.nonzero(ok)[0])


def is_p_group(group, p):
    return _p_part(group.order, p) == group.order


def is_radical(ambient, R, p):
    """R = O_p(N_ambient(R))."""
    if not is_p_group(R, p):
        raise ValueError("R is not a p-group")
    N = normalizer(ambient, R)
    if _p_part(N.order, p) == R.order:
        return True
    return core_p(N, p).order == R.order


# ---------------------------------------------------------------------------
# subgroups of a p-group via its Cayley table


class _CayleyPGroup:
    def __init__(self, P):
        self.P = P
        ops = P.ops
        els = P.elements
        s = len(els)
        n = P.n
        prods = ops.mm(els[:, None], els[None]).reshape(-1, n, n)
        self.mul = P.locate(prods).reshape(s, s)
        self.inv = P.inverse_index()
        # conj[g, h] = g h g^-1
        self.conj = self.mul[self.mul, self.inv[:, None]]
        self.s = s
        self.identity = int(P.locate(np.eye(n, dtype=np.int64)[None])[0])

    def mask(self, idx):
        b = np.zeros(self.s, dtype=bool)
        b[idx] = True
        return b

    def canonical(self, idx):
        """Minimum packed bitmask over all P-conjugates of the subset idx."""
        imgs = self.conj[:, idx]
        B = np.zeros((self.s, self.s), dtype=bool)
        B[np.arange(self.s)[:, None], imgs] = True
        packed = np.packbits(B, axis=1)
        rows = [r.tobytes() for r in packed]
        return min(rows)


def p_subgroup_classes(P, p=2):
    """Representatives (index arrays) of the P-conjugacy classes of subgroups of a p-group P.

    Subgroups are grown one index-p step at a time: K = <H, x> with x
    normalizing H and x^p in H.
    """
    C = _CayleyPGroup(P)
    start = np.array([C.identity])
    reps = {C.canonical(start): start}
    queue = [start]
    while queue:
        H = queue.pop()
        hmask = C.mask(H)
        # elements normalizing H
        norm = hmask[C.conj[:, H]].all(axis=1)
        cand = np.nonzero(norm & ~hmask)[0]
        done = np.zeros(C.s, dtype=bool)
        for x in cand:
            if done[x]:
                continue
            cosets = [H]
            xj = x
            for _ in range(p - 1):
                cosets.append(C.mul[xj, H])
                xj = C.mul[xj, x]
            if not hmask[xj]:
                continue
            K = np.unique(np.concatenate(cosets))
            done[K] = True
            key = C.canonical(K)
            if key not in reps:
                reps[key] = K
                queue.append(K)
    return list(reps.values())


def _conjugacy_key(ambient, R, ambient_inv=None):
    """Minimal sorted key tuple over all ambient conjugates of R."""
    ops = ambient.ops
    inv = ambient.elements[ambient.inverse_index()] if ambient_inv is None else ambient_inv
    best = None
    for sl in _chunks(ambient.order, max(1, 200000 // max(1, R.order))):
        c = _conj_all(ambient.elements[sl], inv[sl], R.elements, ops)
        k = keys_of(c.reshape(-1, R.n, R.n)).reshape(c.shape[0], c.shape[1])
        k.sort(axis=1)
        rows = [b"".join(bytes(x) for x in row) for row in k]
        m = min(rows)
        if best is None or m < best:
            best = m
    return best


def enumerate_radical_classes(ambient, p, cap=DEFAULT_CAP):
    """One representative per conjugacy class of radical p-subgroups, with class sizes.

    Every p-subgroup is conjugate into one Sylow subgroup P, so the subgroups
    of P (up to P-conjugacy) are tested for radicality and then merged up to
    ambient conjugacy.
    """
    if ambient.order > cap:
        raise CapExceeded(f"ambient order {ambient.order} exceeds cap {cap}")
    P = sylow_p(ambient, p)
    Op = core_p(ambient, p)
    reps = p_subgroup_classes(P, p)
    radicals = []
    for idx in reps:
        R = P.subgroup(idx)
        if not np.all(R.contains(Op.elements)):
            continue
        N = normalizer(ambient, R)
        if _p_part(N.order, p) != R.order and core_p(N, p).order != R.order:
            continue
        radicals.append((R, N.order))
    inv = ambient.elements[ambient.inverse_index()]
    classes = {}
    for R, norder in radicals:
        key = _conjugacy_key(ambient, R, inv)
        if key not in classes:
            classes[key] = (R, ambient.order // norder, key)
    out = sorted(classes.values(), key=lambda t: (t[0].order, t[2]))
    return [(R, size) for R, size, _ in out]


# ---------------------------------------------------------------------------
# ambient groups by exhaustive search


def _all_vectors(fld, n):
    return np.array(list(product(range(fld.q), repeat=n)), dtype=np.int64)[:, ::-1].copy()


def _enumerate_isometries(space, cap):
    """All isometries, built column by column: column j is the image of e_j."""
    n = space.n
    vecs = _all_vectors(space.field, n)  # (V, n)
    G = space.gram
    # self-values of all vectors
    col = vecs[:, :, None]
    selfv = space.form(col, col)[:, 0, 0]
    partial = np.zeros((1, n, 0), dtype=np.int64)
    for j in range(n):
        pool = vecs[selfv == G[j, j] % space.field.q]
        if j == 0:
            partial = pool[:, :, None]
        else:
            # B(col_i, v) must equal G[i, j] for i < j
            vals = space.form(partial, pool.T[None])  # (N, j, |pool|)
            ok = np.all(vals == (G[:j, j] % space.field.q)[None, :, None], axis=1)
            a, b = np.nonzero(ok)
            if len(a) > cap:
                raise CapExceeded("isometry search exceeded cap")
            partial = np.concatenate([partial[a], pool[b][:, :, None]], axis=2)
    return partial


def ambient_group(kind, n, q, variant=None, cap=DEFAULT_CAP, special=False):
    """The full group GL/GU/Sp/O (or its determinant-1 subgroup) as a GeneratedGroup."""
    space = standard_space(kind, n, q, variant)
    ops = space.ops
    if space.kind == "linear":
        fq = space.field.q
        if fq ** (n * n) > 5 * 10**7:
            raise CapExceeded("GL search space too large")
        allm = np.array(list(product(range(fq), repeat=n * n)), dtype=np.int64).reshape(-1, n, n)
        d = ops.det(allm)
        els = allm[d != 0]
    else:
        els = _enumerate_isometries(space, cap)
    if special:
        els = els[ops.det(els) == 1]
    if len(els) > cap:
        raise CapExceeded(f"ambient order {len(els)} exceeds cap {cap}")
    grp = GeneratedGroup(ops, els)
    grp.space = space
    return grp


# ---------------------------------------------------------------------------
# serialization


def serialize(M, q, kind, n=None):
    """Text form q=<q>;kind=<k>;n=<n>;rows=<r1>;<r2>;... with comma-separated entries."""
    M = np.asarray(M)
    n = M.shape[0] if n is None else n
    rows = ";".join(",".join(str(int(x)) for x in row) for row in M)
    return f"q={q};kind={kind};n={n};rows={rows}"


def deserialize(text):
    """Inverse of serialize; returns (matrix, q, kind, n)."""
    text = text.strip()
    head, _, rows = text.partition(";rows=")
    if not rows:
        raise ValueError("missing rows")
    fields = dict(part.split("=", 1) for part in head.split(";"))
    try:
        q = int(fields["q"])
        kind = fields["kind"]
        n = int(fields["n"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"bad header: {head}") from exc
    M = np.array([[int(x) for x in r.split(",")] for r in rows.split(";")], dtype=np.int64)
    if M.shape != (n, n):
        raise ValueError("row data does not match n")
    return M, q, kind, n

"""Labels, explicit generators and enumeration of basic radical 2-subgroups.

A basic subgroup is named by a BasicLabel (family i, sign eta, m, alpha,
gamma, wreath sequence c).  A radical subgroup of a classical group is a
product of basic subgroups on an orthogonal (or direct) decomposition of the
space, named by a RadicalLabel.  Generators are first built in a convenient
basis with its own Gram matrix and then moved to the standard spaces of
matgrp, so they can be compared with the brute-force oracle directly.
"""

from dataclasses import dataclass, replace
import re
from math import gcd

import numpy as np

from .gfq import field_make, prime_power, q_params, q_params_oddp, solve_sum_of_squares, v_p
from .linalg import PolyField, block_diag, kron, transport
from .matgrp import (
    DEFAULT_CAP,
    MatOps,
    _conjugacy_key,
    ambient_group,
    closure,
    disc_of_gram,
    enumerate_radical_classes,
    is_radical,
    standard_space,
)

KINDS = ("GL", "GU", "Sp", "O")
_FORM = {"GL": "linear", "GU": "unitary", "Sp": "symplectic", "O": "orthogonal"}


class IllegalLabel(ValueError):
    """The parameters do not name a basic subgroup."""


# ---------------------------------------------------------------------------
# labels


@dataclass(frozen=True, order=True)
class BasicLabel:
    kind: str
    i: int
    eta: str
    m: int
    alpha: int
    gamma: int
    c: tuple = ()
    p: int = 2

    @property
    def disc_tag(self):
        """Discriminant of the multiplicity space V0 for orthogonal i = 0 labels."""
        if self.kind == "O" and self.i == 0:
            return "+" if self.alpha == 0 else "-"
        return ""

    def __str__(self):
        cs = ",".join(str(x) for x in self.c)
        head = "R" if self.p != 2 else f"R{self.i}{self.eta}"
        tail = "@disc-" if self.disc_tag == "-" else ""
        return f"{head}_{{m={self.m},a={self.alpha},g={self.gamma},c=({cs})}}{tail}"

    @property
    def csum(self):
        return sum(self.c)


_LABEL_RE = re.compile(
    r"^R(?P<i>\d)?(?P<eta>[+-])?_\{m=(?P<m>\d+),a=(?P<a>\d+),g=(?P<g>\d+),c=\((?P<c>[\d,]*)\)\}(?:@disc(?P<d>[+-]))?$"
)


def parse_basic(text, kind, p=2):
    mt = _LABEL_RE.match(text.strip())
    if not mt:
        raise ValueError(f"cannot parse label {text!r}")
    c = tuple(int(x) for x in mt["c"].split(",") if x)
    i = int(mt["i"]) if mt["i"] is not None else 1
    return BasicLabel(kind, i, mt["eta"] or "", int(mt["m"]), int(mt["a"]), int(mt["g"]), c, p)


@dataclass(frozen=True)
class RadicalLabel:
    """A product of basic subgroups on a decomposition of the space.

    blocks holds (BasicLabel, dimension, disc) triples, disc being +1/-1 for
    orthogonal blocks and 0 otherwise.  trivial_dim is the dimension of the
    block on which the subgroup is trivial (odd p only).
    """

    kind: str
    n: int
    q: int
    p: int
    blocks: tuple
    trivial_dim: int = 0
    variant: str = ""

    def __str__(self):
        parts = [str(b[0]) for b in self.blocks]
        if self.trivial_dim:
            parts.append(f"1_{{n={self.trivial_dim}}}")
        return " x ".join(parts) if parts else "1"

    def order(self):
        out = 1
        for lab, _, _ in self.blocks:
            out *= predicted_order(lab, self.q)
        if self.kind in ("SL", "SU"):
            # R cap SL has index |det(R)| = |GL_1(sign q)|_p
            sign = 1 if self.kind == "SL" else -1
            out //= self.p ** v_p(self.q - sign, self.p)
        return out

    def sort_key(self):
        return (self.order(), str(self))


# ---------------------------------------------------------------------------
# parameters


def _gl_sign(kind):
    return 1 if kind == "GL" else -1


def _split(kind, q):
    """True when 4 | q - sign for the linear/unitary sign of kind."""
    return (q - _gl_sign(kind)) % 4 == 0


def _a(q):
    return q_params(q).a


def _eps(q):
    return q_params(q).eps


def label_dim(lab, q):
    """Dimension of the space the basic subgroup acts on."""
    k = lab.csum
    if lab.p != 2:
        e = q_params_oddp(q, lab.p, _gl_sign(lab.kind)).e
        return lab.m * e * lab.p ** (lab.alpha + lab.gamma + k)
    if lab.kind in ("GL", "GU"):
        if lab.i == 1:
            return lab.m * 2 ** (lab.alpha + lab.gamma + k)
        return lab.m * 2 ** (lab.gamma + k)
    if lab.i == 0:
        if lab.gamma == 0:
            return lab.m * 2**k
        two_gamma_branch = (lab.kind == "O") == (lab.eta == "+")
        return lab.m * 2 ** (lab.gamma + k + (0 if two_gamma_branch else 1))
    if lab.i == 3:
        return lab.m * 2 ** (lab.alpha + lab.gamma + 2 + k)
    return lab.m * 2 ** (lab.alpha + lab.gamma + 1 + k)


def label_disc(lab):
    """Discriminant (+1/-1) of the orthogonal space of the label."""
    if lab.kind != "O":
        return 0
    if lab.i == 0 and lab.gamma == 0 and not lab.c:
        return 1 if lab.alpha == 0 else -1
    return 1


def check_legal(lab, q):
    """Raise IllegalLabel unless lab names a basic subgroup over F_q."""
    if lab.kind not in KINDS:
        raise IllegalLabel(f"unknown kind {lab.kind}")
    if lab.m < 1 or lab.alpha < 0 or lab.gamma < 0 or any(x < 1 for x in lab.c):
        raise IllegalLabel("parameters out of range")
    p_char, _ = prime_power(q)
    if lab.p != 2:
        if lab.kind not in ("GL", "GU") or lab.i != 1 or lab.eta:
            raise IllegalLabel("odd p labels exist here for GL and GU only")
        if q % lab.p == 0:
            raise IllegalLabel("p divides q")
        return
    if q % 2 == 0:
        raise IllegalLabel("q must be odd for p = 2")
    c1 = lab.c[-1] if lab.c else None
    if lab.kind in ("GL", "GU"):
        split = _split(lab.kind, q)
        if lab.i == 1:
            if split or lab.alpha >= 1 or lab.gamma == 0:
                if lab.eta:
                    raise IllegalLabel("eta only distinguishes the non-split alpha = 0 case")
            else:
                if lab.eta not in ("+", "-"):
                    raise IllegalLabel("eta required")
                if lab.eta == "+" and lab.gamma < 2:
                    raise IllegalLabel("eta = + needs gamma >= 2")
            if not split and lab.alpha == 0 and lab.gamma == 0 and c1 == 1:
                raise IllegalLabel("{+-1} wreath Z2 is not basic")
            return
        if lab.i == 2:
            if split or lab.alpha != 0 or lab.gamma < 1 or lab.eta:
                raise IllegalLabel("i = 2 needs the non-split case, alpha = 0, gamma >= 1")
            return
        raise IllegalLabel("GL/GU families are 1 and 2")
    a = _a(q)
    if lab.i == 0:
        if lab.eta not in ("+", "-"):
            raise IllegalLabel("eta required for i = 0")
        if lab.gamma == 0:
            if lab.eta != "+":
                raise IllegalLabel("gamma = 0 is spelled with eta = +")
            if lab.kind == "Sp" and (lab.alpha != 0 or lab.m % 2):
                raise IllegalLabel("symplectic {+-1} needs even m and alpha = 0")
            if lab.alpha not in (0, 1):
                raise IllegalLabel("alpha in {0, 1}")
            if c1 == 1:
                raise IllegalLabel("i = gamma = 0 forbids c_1 = 1")
            return
        if lab.eta == "+" and lab.gamma == 1:
            raise IllegalLabel("i = 0, eta = + needs gamma != 1")
        if lab.alpha not in (0, 1):
            raise IllegalLabel("alpha in {0, 1}")
        if lab.alpha == 1:
            two_gamma_branch = (lab.kind == "O") == (lab.eta == "+")
            if not two_gamma_branch:
                raise IllegalLabel("alpha = 1 only in the 2^gamma branch")
            if lab.m % 2 == 1 and a == 2:
                raise IllegalLabel("alpha = 1 coincides with alpha = 0 for odd m when a = 2")
        return
    if lab.eta:
        raise IllegalLabel("eta only for i = 0")
    if lab.i == 1:
        return
    if lab.i == 2:
        if lab.alpha < 1:
            raise IllegalLabel("i = 2 needs alpha >= 1")
        return
    if lab.i in (3, 4):
        return
    raise IllegalLabel("families are 0..4")


def is_legal(lab, q):
    try:
        check_legal(lab, q)
    except IllegalLabel:
        return False
    return True


def canonical(lab, q):
    """The canonical spelling of a legal label (coincidences at a = 2)."""
    check_legal(lab, q)
    if lab.p != 2 or lab.kind in ("GL", "GU") or _a(q) != 2:
        return lab
    if lab.i in (3, 4) and lab.alpha == 0:
        # at a = 2 these equal the extraspecial families one gamma higher
        if lab.kind == "O":
            eta = "-" if lab.i == 3 else "+"
        else:
            eta = "+" if lab.i == 3 else "-"
        alt = BasicLabel(lab.kind, 0, eta, lab.m, 0, lab.gamma + 1, lab.c)
        if is_legal(alt, q):
            return alt
    return lab


def _base_order_exp(lab, q):
    """log_2 (or log_p) of the order of the unwreathed basic group."""
    if lab.p != 2:
        a = q_params_oddp(q, lab.p, _gl_sign(lab.kind)).a
        return a + lab.alpha + 2 * lab.gamma
    a = _a(q)
    if lab.kind in ("GL", "GU"):
        if lab.i == 2:
            return a + 2 * lab.gamma
        if not _split(lab.kind, q) and lab.alpha == 0:
            return 1 + 2 * lab.gamma
        return a + lab.alpha + 2 * lab.gamma
    if lab.i == 0:
        return 1 if lab.gamma == 0 else 2 * lab.gamma + 1
    if lab.i == 1:
        return a + lab.alpha + 2 * lab.gamma
    return a + lab.alpha + 1 + 2 * lab.gamma


def wreath_order(base, c, p=2):
    """|R wr A_c| for |R| = base, c = (c_t, ..., c_1) with c_1 innermost."""
    out = base
    for cj in reversed(c):
        out = out ** (p**cj) * p**cj
    return out


def predicted_order(lab, q):
    check_legal(lab, q)
    return wreath_order(lab.p ** _base_order_exp(lab, q), lab.c, lab.p)


# ---------------------------------------------------------------------------
# small matrix helpers


def _companion(n, delta):
    """Block companion of t^n - delta: ones on the superdiagonal, delta at (n-1, 0)."""
    C = np.zeros((n, n), dtype=np.int64)
    for j in range(n - 1):
        C[j, j + 1] = 1
    C[n - 1, 0] = delta
    return C


def _two_part_gen_gl1(q, sign):
    """Least generator of GL_1(sign*q)_2 as an encoding in F_q or F_{q^2}."""
    p, k = prime_power(q)
    if sign == 1:
        return field_make(p, k).two_part_generator()
    F2 = field_make(p, 2 * k)
    t = 2 ** v_p(q + 1, 2)
    return next(x for x in range(1, F2.q) if F2.pow(x, q + 1) == 1 and F2.order(x) == t)


def _gl_field(kind, q):
    p, k = prime_power(q)
    return field_make(p, 2 * k) if kind == "GU" else field_make(p, k)


def _lift(ops, M):
    """Plain integer matrix (entries like -1, 0, 1) into the field of ops."""
    M = np.asarray(M, dtype=np.int64)
    neg = M < 0
    out = np.abs(M) % ops.p
    if neg.any():
        out = np.where(neg, ops.neg(out), out)
    return out


def build_extraspecial(eta, gamma, q, eps):
    """Generators of E_eta^{2 gamma + 1} in GL_{2^gamma}(eps q).

    For eps = -1 the matrices lie in GU with the identity hermitian form
    (entries in F_{q^2}).
    """
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    kind = "GL" if eps == 1 else "GU"
    F = _gl_field(kind, q)
    ops = MatOps(F)
    d8 = [_lift(ops, [[-1, 0], [0, 1]]), _lift(ops, [[0, 1], [1, 0]])]
    b, b2 = solve_sum_of_squares(-1, eps, q)
    q8 = [_lift(ops, [[0, 1], [-1, 0]]), np.array([[int(b), int(b2)], [int(b2), int(ops.neg(int(b)))]], dtype=np.int64)]
    factors = [d8] * gamma
    if eta == "-":
        factors = [q8] + [d8] * (gamma - 1)
    gens = []
    I2 = np.eye(2, dtype=np.int64)
    for pos, pair in enumerate(factors):
        for g in pair:
            M = np.eye(1, dtype=np.int64)
            for j in range(gamma):
                M = kron(ops, M, g if j == pos else I2)
            gens.append(M)
    return gens


# ---------------------------------------------------------------------------
# natural-basis constructions.  Each returns (gens, gram, ops) where gram is
# None for GL and the Gram matrix of the form preserved otherwise.


def _z_alpha_gl(kind, q, alpha):
    """Generator of Z_alpha in GL_{2^alpha}(eps q), with its form."""
    sign = _gl_sign(kind)
    F = _gl_field(kind, q)
    ops = MatOps(F)
    a = _a(q)
    gram = None if kind == "GL" else np.eye(2**alpha, dtype=np.int64)
    if _split(kind, q):
        d0 = _two_part_gen_gl1(q, sign)
        if alpha == 0:
            return np.array([[d0]], dtype=np.int64), gram, ops
        return _companion(2**alpha, d0), gram, ops
    if alpha == 0:
        return _lift(ops, [[-1]]), gram, ops
    if kind == "GL":
        E = PolyField(F, 2**alpha)
        z = E.element_of_order(2 ** (a + alpha))
        return E.regular(z), None, ops
    # unitary, non-split: X over F_{q^2} on a hyperbolic space
    E = PolyField(F, 2 ** (alpha - 1))
    z = E.element_of_order(2 ** (a + alpha))
    X = E.regular(z)
    Y = ops.frob(ops.inv(X).T, q)
    h = X.shape[0]
    H = np.zeros((2 * h, 2 * h), dtype=np.int64)
    H[:h, h:] = np.eye(h, dtype=np.int64)
    H[h:, :h] = np.eye(h, dtype=np.int64)
    return block_diag([X, Y]), H, ops


def _sylow_gl2_nonsplit(kind, q):
    """Semidihedral Sylow 2-subgroup of GL_2(eps q) when 4 | q + eps."""
    F = _gl_field(kind, q)
    ops = MatOps(F)
    a = _a(q)
    if kind == "GL":
        E = PolyField(F, 2)
        z = E.element_of_order(2 ** (a + 1))
        X = E.regular(z)
        t_q = E.pow([0, 1], q)
        frob = np.array([[1, t_q[0]], [0, t_q[1]]], dtype=np.int64)
        return [X, frob], None, ops
    z = next(x for x in range(1, F.q) if F.order(x) == 2 ** (a + 1))
    X = np.array([[z, 0], [0, F.pow(F.frob(z, prime_power(q)[1]), -1)]], dtype=np.int64)
    swap = np.array([[0, 1], [1, 0]], dtype=np.int64)
    H = swap.copy()
    return [X, swap], H, ops


def _gl_form_for_eye(kind, n):
    return None if kind == "GL" else np.eye(n, dtype=np.int64)


def _m_fold(ops, gens, gram, m):
    Im = np.eye(m, dtype=np.int64)
    gens = [kron(ops, Im, g) for g in gens]
    gram = None if gram is None else kron(ops, Im, gram)
    return gens, gram


def _natural_gl(lab, q):
    kind = lab.kind
    sign = _gl_sign(kind)
    F = _gl_field(kind, q)
    ops = MatOps(F)
    if lab.i == 1:
        Z, zgram, _ = _z_alpha_gl(kind, q, lab.alpha)
        if lab.gamma == 0:
            gens, gram = [Z], zgram
        else:
            eta = lab.eta or "+"
            E = build_extraspecial(eta, lab.gamma, q, sign)
            dz = Z.shape[0]
            Ig = np.eye(2**lab.gamma, dtype=np.int64)
            gens = [kron(ops, Z, Ig)] + [kron(ops, np.eye(dz, dtype=np.int64), e) for e in E]
            gram = None if zgram is None else kron(ops, zgram, Ig)
    else:
        S, sgram, _ = _sylow_gl2_nonsplit(kind, q)
        g1 = lab.gamma - 1
        if g1 == 0:
            gens, gram = S, sgram
        else:
            E = build_extraspecial("+", g1, q, sign)
            Ig = np.eye(2**g1, dtype=np.int64)
            I2 = np.eye(2, dtype=np.int64)
            gens = [kron(ops, s, Ig) for s in S] + [kron(ops, I2, e) for e in E]
            gram = None if sgram is None else kron(ops, sgram, Ig)
    gens, gram = _m_fold(ops, gens, gram, lab.m)
    return gens, gram, ops


def _natural_gl_oddp(lab, q):
    """Z_alpha o E^{2 gamma + 1} for odd p, by restriction of scalars."""
    kind = lab.kind
    sign = _gl_sign(kind)
    p = lab.p
    qp = q_params_oddp(q, p, sign)
    F = _gl_field(kind, q)
    ops = MatOps(F)
    if kind == "GU":
        if qp.e * p**lab.alpha > 1 or lab.gamma:
            raise NotImplementedError("odd p unitary labels beyond GU_1 are not constructed")
        z = next(x for x in range(1, F.q) if F.pow(x, q + 1) == 1 and F.order(x) == p**qp.a)
        gens, gram = [np.array([[z]], dtype=np.int64)], np.eye(1, dtype=np.int64)
        gens, gram = _m_fold(ops, gens, gram, lab.m)
        return gens, gram, ops
    d = qp.e * p**lab.alpha
    E = PolyField(F, d)
    z = E.element_of_order(p ** (qp.a + lab.alpha))
    Z = E.regular(z)
    gens = [Z]
    if lab.gamma:
        # extraspecial of exponent p over F_{q^d}, written over F_q
        zeta = E.pow(z, p ** (qp.a + lab.alpha - 1))
        pg = p**lab.gamma
        x1 = np.zeros((p, p), dtype=object)
        y1 = np.zeros((p, p), dtype=object)
        one = E.one()
        zero = [0] * d
        for r in range(p):
            for s in range(p):
                x1[r, s] = E.pow(zeta, r) if r == s else zero
                y1[r, s] = one if (r - s) % p == 1 else zero
        blocks = []
        for pos in range(lab.gamma):
            for g in (x1, y1):
                M = None
                for j in range(lab.gamma):
                    f = g if j == pos else _ext_identity(E, p)
                    M = f if M is None else _ext_kron(E, M, f)
                blocks.append(M)
        Zbig = _ext_scalar(E, z, pg)
        gens = [_restrict(E, Zbig)] + [_restrict(E, B) for B in blocks]
    gens, _ = _m_fold(ops, gens, None, lab.m)
    return gens, None, ops


def _ext_identity(E, n):
    M = np.empty((n, n), dtype=object)
    for r in range(n):
        for s in range(n):
            M[r, s] = E.one() if r == s else [0] * E.d
    return M


def _ext_scalar(E, z, n):
    M = _ext_identity(E, n)
    for r in range(n):
        M[r, r] = z
    return M


def _ext_kron(E, A, B):
    ra, ca = A.shape
    rb, cb = B.shape
    M = np.empty((ra * rb, ca * cb), dtype=object)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    M[i * rb + k, j * cb + l] = E.mul(A[i, j], B[k, l])
    return M


def _restrict(E, M):
    """Matrix over F_Q = E written as a matrix over the base field."""
    n = M.shape[0]
    d = E.d
    out = np.zeros((n * d, n * d), dtype=np.int64)
    for r in range(n):
        for s in range(n):
            out[r * d : (r + 1) * d, s * d : (s + 1) * d] = E.regular(M[r, s])
    return out


# --- symplectic / orthogonal


def _sqrt_minus_one(F):
    return F.sqrt(int(F.neg[1]))


def _embed_cx(q, X):
    """GL_k(eps q) -> I(V_{2k}) as [[A, B], [-B, A]] with X = A + iB.

    The image preserves both the identity form and [[0, I], [-I, 0]].
    """
    eps = _eps(q)
    p, k = prime_power(q)
    Fq = field_make(p, k)
    if eps == 1:
        F, ops = Fq, MatOps(Fq)
        Xb = ops.inv(X).T
    else:
        F = field_make(p, 2 * k)
        ops = MatOps(F)
        Xb = ops.frob(X, q)
    i = _sqrt_minus_one(F)
    two = F.from_int(2)
    inv2 = int(F.inv[two])
    inv2i = int(F.inv[F.mul[two, i]])
    A = ops.smul(inv2, ops.add(X, Xb))
    B = ops.smul(inv2i, ops.sub(X, Xb))
    M = np.block([[A, B], [ops.neg(B), A]])
    if eps == -1:
        back = {int(v): x for x, v in enumerate(F.subfield_embedding(Fq))}
        M = np.vectorize(lambda v: back[int(v)])(M).astype(np.int64)
    return M


def _gl_side_field(q):
    p, k = prime_power(q)
    return field_make(p, k) if _eps(q) == 1 else field_make(p, 2 * k)


def _sp_o_form(kind, k, q):
    """Form on the 2k-space of _embed_cx, over F_q."""
    if kind == "O":
        return np.eye(2 * k, dtype=np.int64)
    J = np.zeros((2 * k, 2 * k), dtype=np.int64)
    J[:k, k:] = np.eye(k, dtype=np.int64)
    J[k:, :k] = -np.eye(k, dtype=np.int64)
    return _lift(MatOps(field_make(*prime_power(q))), J)


def _d8_gens(q, gamma):
    """E_+^{2 gamma + 1} with the identity form, over the GL-side field."""
    if gamma == 0:
        return []
    return build_extraspecial("+", gamma, q, _eps(q))


def _natural_sp_o_r1(lab, q):
    eps = _eps(q)
    kind_gl = "GL" if eps == 1 else "GU"
    Z, zgram, gops = _z_alpha_gl(kind_gl, q, lab.alpha)
    assert zgram is None or np.array_equal(zgram, np.eye(Z.shape[0]))
    dz = Z.shape[0]
    Ig = np.eye(2**lab.gamma, dtype=np.int64)
    side = [kron(gops, Z, Ig)] + [kron(gops, np.eye(dz, dtype=np.int64), e) for e in _d8_gens(q, lab.gamma)]
    gens = [_embed_cx(q, X) for X in side]
    k = dz * 2**lab.gamma
    return gens, _sp_o_form(lab.kind, k, q)


def _natural_sp_o_twisted(lab, q):
    """Families 2, 3, 4: a cyclic x twisted by y, tensored with E_+."""
    p, kk = prime_power(q)
    Fq = field_make(p, kk)
    ops = MatOps(Fq)
    eps = _eps(q)
    gops = MatOps(_gl_side_field(q))
    bs = 2 if lab.i == 3 else 1
    n_blocks = 2**lab.alpha
    k = n_blocks * bs
    d0 = _two_part_gen_gl1(q, eps)
    delta = kron(gops, _companion(n_blocks, d0), np.eye(bs, dtype=np.int64))
    x = _embed_cx(q, delta)
    if lab.kind == "O":
        tau = block_diag([np.eye(k, dtype=np.int64), _lift(ops, -np.eye(k, dtype=np.int64))])
    else:
        b, b2 = solve_sum_of_squares(-1, 1, q)
        Ik = np.eye(k, dtype=np.int64)
        T = np.array([[int(b), int(b2)], [int(b2), int(ops.neg(int(b)))]], dtype=np.int64)
        tau = kron(ops, T, Ik)
    R = np.fliplr(np.eye(n_blocks, dtype=np.int64))
    if lab.i == 2:
        D = np.diag([(-1) ** r for r in range(n_blocks)])
        P = D @ R
    else:
        P = R
    P = _lift(ops, np.kron(P, np.eye(bs, dtype=np.int64)))
    y = ops.mm(block_diag([P, P]), tau)
    if lab.i == 3:
        J1 = np.array([[0, 1], [-1, 0]], dtype=np.int64)
        u = _lift(gops, np.kron(np.eye(n_blocks, dtype=np.int64), J1))
        y = ops.mm(_embed_cx(q, u), y)
    W = [x, y]
    form_w = _sp_o_form(lab.kind, k, q)
    if lab.gamma == 0:
        return W, form_w
    Ig = np.eye(2**lab.gamma, dtype=np.int64)
    Iw = np.eye(2 * k, dtype=np.int64)
    M = [_embed_real(q, e) for e in _d8_gens(q, lab.gamma)]
    gens = [kron(ops, w, Ig) for w in W] + [kron(ops, Iw, e) for e in M]
    return gens, kron(ops, form_w, Ig)


def _embed_real(q, X):
    """A GL-side matrix with entries in the prime field, read over F_q."""
    p, k = prime_power(q)
    Fq = field_make(p, k)
    if _eps(q) == 1:
        return np.asarray(X, dtype=np.int64)
    F = _gl_side_field(q)
    back = {int(v): x for x, v in enumerate(F.subfield_embedding(Fq))}
    return np.vectorize(lambda v: back[int(v)])(np.asarray(X)).astype(np.int64)


def _w_gram(q, m, alpha):
    """Orthogonal multiplicity space: disc + for alpha = 0, disc - for alpha = 1."""
    p, k = prime_power(q)
    Fq = field_make(p, k)
    G = np.eye(m, dtype=np.int64)
    if alpha == 1:
        d0 = Fq.primitive
        if m % 2:
            G = G * d0
        else:
            G[m - 1, m - 1] = d0
    return G


def _natural_sp_o_r0(lab, q):
    p, kk = prime_power(q)
    Fq = field_make(p, kk)
    ops = MatOps(Fq)
    m, gamma = lab.m, lab.gamma
    if gamma == 0:
        if lab.kind == "O":
            G = _w_gram(q, m, lab.alpha)
        else:
            G = _sp_o_form("Sp", m // 2, q)
        return [_lift(ops, -np.eye(m, dtype=np.int64))], G
    b, b2 = solve_sum_of_squares(-1, 1, q)
    d8 = [_lift(ops, [[-1, 0], [0, 1]]), _lift(ops, [[0, 1], [1, 0]])]
    q8 = [_lift(ops, [[0, 1], [-1, 0]]), np.array([[int(b), int(b2)], [int(b2), int(ops.neg(int(b)))]], dtype=np.int64)]
    J1 = _lift(ops, [[0, 1], [-1, 0]])
    I2 = np.eye(2, dtype=np.int64)
    if lab.eta == "+":
        factors = [d8] * gamma
        G0 = np.eye(2**gamma, dtype=np.int64)
    else:
        factors = [q8] + [d8] * (gamma - 1)
        G0 = kron(ops, J1, np.eye(2 ** (gamma - 1), dtype=np.int64))
    E = []
    for pos, pair in enumerate(factors):
        for g in pair:
            M = np.eye(1, dtype=np.int64)
            for j in range(gamma):
                M = kron(ops, M, g if j == pos else I2)
            E.append(M)
    two_gamma_branch = (lab.kind == "O") == (lab.eta == "+")
    if not two_gamma_branch:
        # E_-(symplectic) (x) I_2 in O, E_+ (x) I_2 in Sp
        E = [kron(ops, e, I2) for e in E]
        G0 = kron(ops, G0, J1)
        W = np.eye(m, dtype=np.int64)
    else:
        W = _w_gram(q, m, lab.alpha)
    Im = np.eye(m, dtype=np.int64)
    gens = [kron(ops, Im, e) for e in E]
    return gens, kron(ops, W, G0)


def natural_generators(lab, q):
    """Generators of the unwreathed basic group in its natural basis.

    Returns (gens, gram, ops); gram is None for GL.
    """
    if lab.p != 2:
        return _natural_gl_oddp(lab, q)
    if lab.kind in ("GL", "GU"):
        return _natural_gl(lab, q)
    p, k = prime_power(q)
    ops = MatOps(field_make(p, k))
    if lab.i == 0:
        gens, gram = _natural_sp_o_r0(lab, q)
    elif lab.i == 1:
        gens, gram = _natural_sp_o_r1(lab, q)
        gens, gram = _m_fold(ops, gens, gram, lab.m)
    else:
        gens, gram = _natural_sp_o_twisted(lab, q)
        gens, gram = _m_fold(ops, gens, gram, lab.m)
    return gens, gram, ops


def wreath_generators(ops, base_gens, base_gram, c, p=2):
    """Generators of (base wr A_{c_1}) wr ... wr A_{c_t} on p^{|c|} copies."""
    d = base_gens[0].shape[0]
    nb = p ** sum(c)
    n = nb * d
    gens = []
    for g in base_gens:
        M = np.eye(n, dtype=np.int64)
        M[:d, :d] = g
        gens.append(M)
    chunk = 1
    for cj in reversed(c):
        for bit in range(cj):
            perm = list(range(nb))
            span = chunk * p**cj
            for b in range(span):
                s, r = divmod(b, chunk)
                digits = [(s // p**t) % p for t in range(cj)]
                digits[bit] = (digits[bit] + 1) % p
                s2 = sum(dg * p**t for t, dg in enumerate(digits))
                perm[b] = s2 * chunk + r
            P = np.zeros((nb, nb), dtype=np.int64)
            for b, b2 in enumerate(perm):
                P[b2, b] = 1
            gens.append(np.kron(P, np.eye(d, dtype=np.int64)))
        chunk *= p**cj
    gram = None if base_gram is None else kron(ops, np.eye(nb, dtype=np.int64), base_gram)
    return gens, gram


def natural_label_generators(lab, q):
    """Generators and Gram of the full basic group (with wreath part), natural basis."""
    check_legal(lab, q)
    gens, gram, ops = natural_generators(lab, q)
    if lab.c:
        gens, gram = wreath_generators(ops, gens, gram, lab.c, lab.p)
    return gens, gram, ops


def _variant_of(gram, q):
    p, k = prime_power(q)
    return "+" if disc_of_gram(gram, field_make(p, k)) == 1 else "-"


def _to_standard(kind, gens, gram, ops, q):
    n = gens[0].shape[0]
    if kind == "GL":
        return gens, standard_space("GL", n, q)
    variant = _variant_of(gram, q) if kind == "O" else None
    space = standard_space(kind, n, q, variant)
    if np.array_equal(np.asarray(gram) % ops.q if ops.prime else gram, space.gram):
        return [np.asarray(g) for g in gens], space
    return transport(ops, space.kind, gens, gram, space.gram, q), space


def build_basic(lab, q):
    """Generators of the basic subgroup, in the standard space of its dimension."""
    gens, gram, ops = natural_label_generators(lab, q)
    out, _ = _to_standard(lab.kind, gens, gram, ops, q)
    return out


def basic_space(lab, q):
    gens, gram, ops = natural_label_generators(lab, q)
    return _to_standard(lab.kind, gens[:1], gram, ops, q)[1]


def build_radical(rl):
    """Generators of the radical subgroup named by rl, in the ambient standard space."""
    q = rl.q
    kind = rl.kind
    if kind in ("SL", "SU"):
        # intersect the GL/GU group with the determinant-1 subgroup
        full = replace(rl, kind="GL" if kind == "SL" else "GU")
        gens = build_radical(full)
        ops = MatOps(_gl_field(full.kind, q))
        G = closure(gens, ops)
        keep = np.nonzero(ops.det(G.elements) == 1)[0]
        return list(G.subgroup(keep).generators())
    gens_blocks, grams, opses = [], [], []
    for lab, dim, _ in rl.blocks:
        g, G, ops = natural_label_generators(lab, q)
        gens_blocks.append(g)
        grams.append(G)
        opses.append(ops)
    ops = MatOps(_gl_field(kind, q))
    if rl.trivial_dim:
        gens_blocks.append([np.eye(rl.trivial_dim, dtype=np.int64)])
        grams.append(None if kind == "GL" else np.eye(rl.trivial_dim, dtype=np.int64))
    n = sum(b[0].shape[0] for b in gens_blocks)
    gens = []
    start = 0
    for blk in gens_blocks:
        d = blk[0].shape[0]
        for g in blk:
            M = np.eye(n, dtype=np.int64)
            M[start : start + d, start : start + d] = g
            gens.append(M)
        start += d
    if kind == "GL":
        return gens
    gram = block_diag([np.asarray(G) for G in grams])
    out, space = _to_standard(kind, gens, gram, ops, q)
    if kind == "O" and rl.variant and space.variant != rl.variant:
        raise AssertionError("block discriminants do not match the ambient variant")
    return out


# ---------------------------------------------------------------------------
# group orders by structure


def _plain_closure_order(gens, ops, cap):
    return closure(gens, ops, cap=cap).order


def structured_order(lab, q, cap=2_000_000):
    """Order of the group generated by natural_label_generators(lab, q).

    The wreath part is handled by checking the generator structure (base
    generators supported on block 0, the others pure block permutations
    generating a transitive group) and multiplying the order of the base
    closure by the order of the permutation group.  The m-fold diagonal part
    is handled by checking the generators are I_m (x) g.
    """
    gens, gram, ops = natural_label_generators(lab, q)
    return _structured(gens, ops, lab, q, cap)


def _structured(gens, ops, lab, q, cap):
    base_gens, _, _ = natural_generators(lab, q)
    d = base_gens[0].shape[0]
    nb = gens[0].shape[0] // d
    nbase = len(base_gens)
    if nb > 1:
        for g, bg in zip(gens[:nbase], base_gens):
            assert np.array_equal(g[:d, :d], bg)
            rest = g.copy()
            rest[:d, :d] = np.eye(d, dtype=np.int64)
            assert np.array_equal(rest, np.eye(g.shape[0], dtype=np.int64))
        perms = []
        for g in gens[nbase:]:
            perm = _block_permutation(g, d)
            assert perm is not None
            perms.append(perm)
        porder, transitive = _perm_group_order(perms, nb)
        assert transitive
        base = _diag_order(base_gens, ops, lab.m, cap)
        return base**nb * porder
    return _diag_order(base_gens, ops, lab.m, cap)


def _diag_order(gens, ops, m, cap):
    n = gens[0].shape[0]
    d = n // m
    if m > 1:
        small = [g[:d, :d] for g in gens]
        Im = np.eye(m, dtype=np.int64)
        if all(np.array_equal(kron(ops, Im, s), g) for s, g in zip(small, gens)):
            return _plain_closure_order(small, ops, cap)
    return _plain_closure_order(gens, ops, cap)


def _block_permutation(g, d):
    n = g.shape[0]
    nb = n // d
    perm = [None] * nb
    for b in range(nb):
        col = g[:, b * d : (b + 1) * d]
        rows = np.nonzero(col.any(axis=1))[0]
        if len(rows) != d:
            return None
        b2 = rows[0] // d
        if not np.array_equal(col[b2 * d : (b2 + 1) * d], np.eye(d, dtype=np.int64)):
            return None
        perm[b] = b2
    return tuple(perm)


def _perm_group_order(perms, n):
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in perms:
                y = tuple(g[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    orbit = {p[0] for p in seen}
    return len(seen), len(orbit) == n


# ---------------------------------------------------------------------------
# enumeration of labels


def _c_sequences(total, p=2):
    """All sequences (c_t, ..., c_1) of positive integers with sum total."""
    if total == 0:
        return [()]
    out = []
    for first in range(1, total + 1):
        for rest in _c_sequences(total - first, p):
            out.append((first,) + rest)
    return out


def _exact_log(n, base):
    k = 0
    while n % base == 0:
        n //= base
        k += 1
    return k, n


def basic_labels(kind, dim, q, p=2, canonical_only=True):
    """All legal basic labels acting on a space of dimension dim, canonical spellings."""
    out = set()
    if p != 2:
        if kind not in ("GL", "GU"):
            raise NotImplementedError("odd p labels exist here for GL and GU only")
        e = q_params_oddp(q, p, _gl_sign(kind)).e
        if dim % e:
            return []
        k, m0 = _exact_log(dim // e, p)
        for s in range(k + 1):
            m = m0 * p ** (k - s)
            for alpha in range(s + 1):
                for gamma in range(s - alpha + 1):
                    for c in _c_sequences(s - alpha - gamma):
                        lab = BasicLabel(kind, 1, "", m, alpha, gamma, c, p)
                        if is_legal(lab, q) and label_dim(lab, q) == dim:
                            out.add(lab)
        return sorted(out, key=_label_sort_key)
    k, m0 = _exact_log(dim, 2)
    fams = (1, 2) if kind in ("GL", "GU") else (0, 1, 2, 3, 4)
    for s in range(k + 1):
        m = m0 * 2 ** (k - s)
        for i in fams:
            for eta in ("", "+", "-"):
                for alpha in range(s + 2):
                    for gamma in range(s + 1):
                        for cs in range(s + 1):
                            for c in _c_sequences(cs):
                                lab = BasicLabel(kind, i, eta, m, alpha, gamma, c)
                                if is_legal(lab, q) and label_dim(lab, q) == dim:
                                    out.add(canonical(lab, q) if canonical_only else lab)
    return sorted(out, key=_label_sort_key)


def _label_sort_key(lab):
    return (lab.i, lab.eta, lab.m, lab.alpha, lab.gamma, lab.c)


# ---------------------------------------------------------------------------
# radicality of blocks
#
# A product of basic subgroups is radical iff every factor is radical in the
# isometry group of its own block and no factor type with trivial N(R)/R
# occurs with a multiplicity k for which O_p(S_k) != 1.  For a single basic
# subgroup, N(R)/R is built from the centralizer C (a classical group modulo
# its centre) and, for m = 1, a torus of odd order extended by a small group
# A of field automorphisms; radicality fails when C/Z has a normal p-subgroup
# or when part of A acts trivially on the torus.


def _prime_to(n, p):
    n = abs(n)
    while n and n % p == 0:
        n //= p
    return n


def _gl_ok(m, Q, p):
    """O_p(GL_m(Q) / Z) = 1, Q signed (negative for unitary groups)."""
    return (m, abs(Q) if m == 2 else Q, p) not in ((2, 3, 2), (2, 2, 3), (3, -2, 3))


def _classical_ok(desc, q, p=2):
    """O_p(C / Z(C)) = 1 for the centralizer described by desc."""
    kind = desc[0]
    if kind == "GL":
        _, m, Q = desc
        return _gl_ok(m, Q, p)
    if kind == "Sp":
        return not (desc[1] == 2 and q == 3)
    _, m, ty = desc
    if m == 2:
        half = (q - ty) // 2
        return half % 2 == 1 and half > 1
    if m == 3:
        return q != 3
    if m == 4:
        return not (q == 3 and ty == 1)
    return True


def _ty(m, disc, q):
    return disc * _eps(q) ** (m // 2)


def _centralizer_desc(lab, q):
    """The classical group C_G(R) of an unwreathed basic subgroup."""
    if lab.kind in ("GL", "GU"):
        sign = _gl_sign(lab.kind)
        if lab.p != 2:
            e = q_params_oddp(q, lab.p, sign).e
            return ("GL", lab.m, (sign * q) ** (e * lab.p**lab.alpha))
        Q = sign * q if lab.alpha == 0 or lab.i == 2 else q ** (2**lab.alpha)
        return ("GL", lab.m, Q)
    if lab.i == 0:
        if lab.gamma == 0:
            if lab.kind == "Sp":
                return ("Sp", lab.m)
            return ("O", lab.m, _ty(lab.m, 1 if lab.alpha == 0 else -1, q))
        two_gamma_branch = (lab.kind == "O") == (lab.eta == "+")
        if two_gamma_branch:
            return ("O", lab.m, _ty(lab.m, 1 if lab.alpha == 0 else -1, q))
        return ("Sp", 2 * lab.m)
    if lab.i == 1:
        Q = _eps(q) * q if lab.alpha == 0 else q ** (2**lab.alpha)
        return ("GL", lab.m, Q)
    if lab.i == 3:
        return ("Sp", 2 * lab.m)
    return ("O", lab.m, _ty(lab.m, 1, q))


def _torus_data(lab, q):
    """(h, gens, y) for the torus part, or None.

    The torus is the odd part of the centre GL_1(Q) of the centralizer of
    the cyclic part; only automorphisms that are inner on C / Z(C) matter.

    h is the order of the odd (prime to p) part of the torus, gens lists
    (exponent, order) pairs generating the abelian group A of automorphisms
    normalizing the cyclic part, and y is the element of A (as an exponent
    tuple) realized inside R, or None.
    """
    p = lab.p
    if lab.m != 1 and (p != 2 or lab.kind in ("GL", "GU") or lab.i in (0, 1, 3)):
        # field automorphisms act on C = GL_m(Q) as outer automorphisms;
        # for m = 2 the inverse transpose is inner on PGL_2 and is handled below
        if not (lab.m == 2 and p == 2 and lab.kind in ("Sp", "O") and lab.i == 1):
            return None
    if p != 2:
        sign = _gl_sign(lab.kind)
        qp = q_params_oddp(q, p, sign)
        Q = (sign * q) ** (qp.e * p**lab.alpha)
        return _prime_to(Q - 1, p), [(sign * q, qp.e * p**lab.alpha)], None
    if lab.kind in ("GL", "GU"):
        sign = _gl_sign(lab.kind)
        if lab.i == 2:
            return _prime_to(q * q - 1, 2), [(sign * q, 2)], (1,)
        Q = sign * q if lab.alpha == 0 else q ** (2**lab.alpha)
        return _prime_to(Q - 1, 2), [(sign * q, 2**lab.alpha)], None
    if lab.i in (0, 3):
        return None
    eps = _eps(q)
    Q = eps * q if lab.alpha == 0 else q ** (2**lab.alpha)
    gens = [(eps * q, 2**lab.alpha), (-1, 2)]
    h = _prime_to(Q - 1, 2)
    if lab.i == 1:
        if lab.m == 2:
            return h, [(-1, 2)], None
        return h, gens, None
    # y acts on the cyclic part of order 2^(a + alpha) as inversion (i = 4)
    # or as x -> x^(-1 + 2^(a + alpha - 1)) (i = 2); find it in A
    mod = 2 ** (_a(q) + lab.alpha)
    want = (-1 + (mod // 2 if lab.i == 2 else 0)) % mod
    for j in range(2**lab.alpha):
        for t in range(2):
            if (pow(eps * q, j, mod) * (-1) ** t) % mod == want:
                return h, gens, (j, t)
    raise AssertionError("no automorphism realizes y")


def _acting_group(gens):
    from itertools import product

    return list(product(*[range(o) for _, o in gens]))


def _act_exponent(x, gens, h):
    out = 1
    for (b, _), k in zip(gens, x):
        out = out * pow(b % h, k, h) % h if h > 1 else 0
    return out


def _torus_verdict(lab, q):
    """(radical, trivial) for the torus part; (True, True) when absent."""
    data = _torus_data(lab, q)
    if data is None:
        return True, True
    h, gens, y = data
    p = lab.p
    elems = _acting_group(gens)
    orders = [o for _, o in gens]

    def mul(x, z):
        return tuple((u + v) % o for u, v, o in zip(x, z, orders))

    ident = tuple(0 for _ in gens)
    Y = {ident}
    if y is not None:
        cur = y
        while cur not in Y:
            Y.add(cur)
            cur = mul(cur, y)
    hp = h
    if y is not None and h > 1:
        hp = gcd(h, _act_exponent(y, gens, h) - 1)
    if hp > 1:
        K = [x for x in elems if _act_exponent(x, gens, hp) == 1]
    else:
        K = elems
    KY = {mul(k, u) for k in K for u in Y}
    index = len(KY) // len(Y)
    radical = index % p != 0
    quotient = len(elems) // len(Y)
    return radical, (hp == 1 and quotient == 1)


def block_is_radical(lab, q):
    """Whether the basic subgroup lab is radical in the isometry group of its space."""
    check_legal(lab, q)
    if lab.p != 2 and lab.kind not in ("GL", "GU"):
        raise NotImplementedError("odd p is supported for GL and GU only")
    if not _classical_ok(_centralizer_desc(lab, q), q, lab.p):
        return False
    return _torus_verdict(lab, q)[0]


def block_normalizer_trivial(lab, q):
    """Whether N(R) = R for the (radical) basic subgroup lab in its own block."""
    if lab.p != 2:
        if lab.c:
            return False
        e = q_params_oddp(q, lab.p, _gl_sign(lab.kind)).e
        if e != 1 or lab.gamma or lab.m != 1:
            return False
        return _torus_verdict(lab, q)[1]
    if any(x != 1 for x in lab.c):
        return False
    if lab.kind == "O" and lab.i == 0 and lab.gamma == 0:
        return lab.m == 1
    if lab.m != 1:
        return False
    if lab.kind in ("GL", "GU"):
        if lab.i == 1 and lab.gamma:
            return False
        if lab.i == 2 and lab.gamma != 1:
            return False
        return _torus_verdict(lab, q)[1]
    if lab.i in (2, 4) and lab.gamma == 0:
        return _torus_verdict(lab, q)[1]
    return False


def _bad_multiplicity(k, p):
    """O_p(S_k) != 1."""
    return (p, k) in ((2, 2), (2, 4), (3, 3))


# ---------------------------------------------------------------------------
# enumeration of radical labels


def _block_types(kind, n, q, p):
    """(label, dim, disc) for every radical basic subgroup of dimension <= n."""
    out = []
    for d in range(1, n + 1):
        for lab in basic_labels(kind, d, q, p):
            if block_is_radical(lab, q):
                out.append((lab, d, label_disc(lab) if kind == "O" else 0))
    return out


def _multisets(types, n):
    """Multisets of types (as (index, multiplicity) lists) with dims summing to n."""

    def rec(start, left):
        if left == 0:
            yield []
            return
        for idx in range(start, len(types)):
            d = types[idx][1]
            for k in range(1, left // d + 1):
                for rest in rec(idx + 1, left - k * d):
                    yield [(idx, k)] + rest

    yield from rec(0, n)


def _norm_kind(kind):
    aliases = {"linear": "GL", "unitary": "GU", "symplectic": "Sp", "orthogonal": "O"}
    return aliases.get(kind, kind)


def enumerate_labels(kind, n, q, p=2, variant=None):
    """Labels of all conjugacy classes of radical p-subgroups.

    kind is GL, GU, Sp, O, or SL / SU (the latter only when p does not
    divide gcd(n, q - sign), where R -> R cap SL is a bijection on radical
    classes).  For O the variant ('+' or '-') is the discriminant of the
    standard form.
    """
    kind = _norm_kind(kind)
    if n < 1:
        raise ValueError("n must be positive")
    special = kind in ("SL", "SU")
    base_kind = {"SL": "GL", "SU": "GU"}.get(kind, kind)
    if base_kind not in KINDS:
        raise ValueError(f"unknown kind {kind}")
    if q % p == 0:
        raise ValueError("p divides q")
    if p != 2 and base_kind not in ("GL", "GU"):
        raise NotImplementedError("odd p is supported for GL and GU only")
    if p == 2 and q % 2 == 0:
        raise ValueError("q must be odd for p = 2")
    if base_kind == "O":
        if variant not in ("+", "-"):
            raise ValueError("orthogonal groups need variant '+' or '-'")
    else:
        variant = ""
    if base_kind == "Sp" and n % 2:
        raise ValueError("symplectic dimension must be even")
    if special and gcd(n, q - _gl_sign(base_kind)) % p == 0:
        raise NotImplementedError("special groups need p not dividing gcd(n, q - sign)")
    trivial_dims = [0]
    if p != 2 and q_params_oddp(q, p, _gl_sign(base_kind)).e > 1:
        # the trivial block needs O_p(GL_t(sign q)) = 1
        sign = _gl_sign(base_kind)
        trivial_dims = [t for t in range(n + 1) if _gl_ok(t, sign * q, p)]
    types = _block_types(base_kind, n, q, p)
    out = []
    for t in trivial_dims:
        if t == n:
            out.append(RadicalLabel(kind, n, q, p, (), t, variant))
            continue
        for ms in _multisets(types, n - t):
            ok = True
            disc = 1
            blocks = []
            for idx, k in ms:
                lab, d, dd = types[idx]
                if _bad_multiplicity(k, p) and block_normalizer_trivial(lab, q):
                    ok = False
                    break
                if base_kind == "O":
                    disc *= dd**k
                blocks.extend([(lab, d, dd)] * k)
            if not ok:
                continue
            if base_kind == "O" and disc != (1 if variant == "+" else -1):
                continue
            out.append(RadicalLabel(kind, n, q, p, tuple(blocks), t, variant))
    return sorted(out, key=RadicalLabel.sort_key)


# ---------------------------------------------------------------------------
# weight subgroups (p = 2)


def _spellings(lab, q):
    """lab together with the non-canonical labels naming the same group."""
    out = [lab]
    if lab.kind in ("Sp", "O") and lab.i == 0 and lab.gamma >= 1 and lab.alpha == 0:
        for i in (3, 4):
            alt = BasicLabel(lab.kind, i, "", lab.m, 0, lab.gamma - 1, lab.c)
            if is_legal(alt, q) and canonical(alt, q) == lab:
                out.append(alt)
    return out


def _is_pm1(lab):
    return lab.i == 0 and lab.gamma == 0 and not lab.c


def _c1_ok(lab):
    return bool(lab.c) and lab.c[-1] >= 2


def _weight_block_gl(lab, q, principal):
    if principal and (lab.m != 1 or lab.alpha != 0):
        return False
    if lab.m % 2 == 0:
        return False
    if _split(lab.kind, q):
        return lab.i == 1
    if lab.i == 2:
        return lab.alpha == 0
    if lab.alpha >= 1:
        return True
    if lab.gamma == 0:
        return True
    return lab.eta == "-" and lab.gamma == 1


def _weight_block_o(lab, q, disc, principal):
    if _is_pm1(lab):
        if principal:
            return lab.m == 1
        return lab.m == 1 or (lab.m % 2 == 0 and disc == -1)
    if disc != 1:
        return False
    if lab.i == 0 and lab.gamma == 0:
        if principal:
            return lab.m == 1 and _c1_ok(lab)
        return (lab.m == 1 or lab.m % 2 == 0) and _c1_ok(lab)
    if lab.i == 4:
        return lab.m == 1 and lab.alpha == 0
    if principal:
        return False
    if lab.i == 0:
        return lab.eta == "-" and lab.alpha == 0 and lab.gamma == 1
    if lab.i in (1, 2):
        return lab.m % 2 == 1
    return False


def _weight_block_sp(lab, q, principal):
    if lab.i == 4:
        return lab.m == 1 and lab.alpha == 0
    if lab.i == 0 and lab.eta == "-" and lab.gamma == 1 and lab.m == 1:
        return lab.alpha == 0 or _a(q) >= 3
    if principal:
        return False
    if lab.i == 0 and lab.gamma == 0:
        return not lab.c or (lab.alpha == 0 and _c1_ok(lab))
    if lab.i == 0 and lab.eta == "-" and lab.gamma == 1:
        return lab.alpha == 1 and lab.m % 2 == 0
    if lab.i in (1, 2):
        return lab.m % 2 == 1
    return False


def _weight_block(kind, lab, disc, q, principal):
    for s in _spellings(lab, q):
        if kind in ("GL", "GU") and _weight_block_gl(s, q, principal):
            return True
        if kind == "O" and _weight_block_o(s, q, disc, principal):
            return True
        if kind == "Sp" and _weight_block_sp(s, q, principal):
            return True
    return False


def _triangular(k):
    t = 0
    while t * (t + 1) // 2 < k:
        t += 1
    return t * (t + 1) // 2 == k


def weight_labels(kind, n, q, principal_only=False, variant=None):
    """Radical 2-subgroup labels that are weight subgroups.

    With principal_only, only those carrying principal block weights.  For
    the orthogonal kind without a variant both variants are listed.
    """
    kind = _norm_kind(kind)
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind}")
    if kind == "O" and variant is None:
        out = weight_labels(kind, n, q, principal_only, "+") + weight_labels(kind, n, q, principal_only, "-")
        return sorted(out, key=RadicalLabel.sort_key)
    out = []
    for rl in enumerate_labels(kind, n, q, 2, variant):
        if not all(_weight_block(kind, lab, disc, q, principal_only) for lab, _, disc in rl.blocks):
            continue
        if principal_only:
            counts = {}
            for b in rl.blocks:
                counts[b] = counts.get(b, 0) + 1
            if not all(_triangular(k) for k in counts.values()):
                continue
        out.append(rl)
    return out


# ---------------------------------------------------------------------------
# agreement with the brute-force oracle


@dataclass(frozen=True)
class OracleComparison:
    labels: tuple
    label_orders: tuple
    oracle_orders: tuple
    all_radical: bool
    same_classes: bool

    @property
    def match(self):
        return self.label_orders == self.oracle_orders and self.all_radical and self.same_classes


def compare_with_oracle(kind, n, q, p=2, variant=None, cap=DEFAULT_CAP):
    """Build every enumerated label and compare with the exhaustive classification.

    Each constructed group must have the predicted order and be radical,
    and the set of their conjugacy classes must equal the oracle's.
    """
    kind = _norm_kind(kind)
    labs = enumerate_labels(kind, n, q, p, variant)
    base = {"SL": "GL", "SU": "GU"}.get(kind, kind)
    G = ambient_group(base, n, q, variant, cap=cap, special=kind in ("SL", "SU"))
    orc = enumerate_radical_classes(G, p, cap=cap)
    inv = G.elements[G.inverse_index()]
    okeys = {_conjugacy_key(G, R, inv) for R, _ in orc}
    keys = set()
    all_radical = True
    for lab in labs:
        gens = build_radical(lab)
        R = closure(gens, G.ops, cap=cap) if len(gens) else closure([], G.ops, n=n)
        if R.order != lab.order():
            raise AssertionError(f"{lab}: built order {R.order}, predicted {lab.order()}")
        all_radical &= is_radical(G, R, p)
        keys.add(_conjugacy_key(G, R, inv))
    return OracleComparison(
        tuple(str(x) for x in labs),
        tuple(sorted(x.order() for x in labs)),
        tuple(sorted(R.order for R, _ in orc)),
        bool(all_radical),
        keys == okeys,
    )

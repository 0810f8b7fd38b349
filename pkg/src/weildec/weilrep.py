"""Construction of the finite Weil representation data at level p, genus g.

Provides Gauss sums, the symplectic generator matrices, the Hopf pairing,
the finite Heisenberg group with its Schrodinger representation, the Egorov
lattice maps induced by generators, and the explicit genus-one lift of
SL2(Z/NZ) together with a fast exact trace evaluator.

Conventions.  At level p the phase root A has order p (p odd) or 2p (p even);
the working cyclotomic field also contains the 24th root used by the lift.
The default X-generator is diag(A^{i^2}); this is the normalization under
which Fourier duality S X S^{-1} reproduces the tabulated Y-matrix exactly.
The variant diag(A^{2i^2}) is available via `doubled=True` and satisfies the
same unitarity but a different duality twist.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .cyclo import field_for_level
from .cycmat import CycMat
from .ringmat import RingMatrix
from .modgroup import det, word_decompose


def _heisenberg_modulus(p):
    return p if p % 2 else 2 * p


def gauss_sum(a, b, p):
    """G(a, b, p) = sum of A^(a k^2 + b k), k mod p (p odd) or mod 2p (p even)."""
    field = field_for_level(p)
    m = _heisenberg_modulus(p)
    step = field.level // m
    vec = [0] * field.level
    for k in range(m):
        vec[((a * k * k + b * k) % m) * step] += 1
    return field.from_int_vector(vec)


@dataclass(frozen=True)
class HeisenbergElt:
    """Element (X, z) of the finite Heisenberg group at level p.

    X is a tuple (m1, n1, ..., mg, ng); all residues are reduced mod p
    (p odd) or mod 2p (p even), as is the central coordinate z.
    """

    X: tuple
    z: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(v % self.modulus for v in self.X))
        object.__setattr__(self, "z", self.z % self.modulus)

    @property
    def genus(self):
        return len(self.X) // 2

    def omega(self, other):
        """Symplectic pairing of the lattice parts.

        Oriented so that Add(u) Add(v) Add(u)^-1 Add(v)^-1 = A^(2 omega(u,v)),
        with omega(x_i, y_j) = delta_ij on the homology basis.
        """
        acc = 0
        for i in range(self.genus):
            acc += self.X[2 * i + 1] * other.X[2 * i] - self.X[2 * i] * other.X[2 * i + 1]
        return acc % self.modulus

    def compose(self, other):
        """Group law (X, z) * (X', z') = (X + X', z + z' + omega(X, X'))."""
        X = tuple(a + b for a, b in zip(self.X, other.X))
        return HeisenbergElt(X, self.z + other.z + self.omega(other), self.modulus)


class WeilRep:
    """Weil representation data at level p >= 2 and genus g >= 1.

    Immutable; generator matrices are cached on first use.  Heavy matrix
    work happens on integer group-ring matrices (CycMat); `*_matrix`
    accessors convert to exact cyclotomic-field matrices.
    """

    def __init__(self, p, g=1):
        if p < 2 or g < 1:
            raise ValueError("need level p >= 2 and genus g >= 1")
        self.p = p
        self.g = g
        self.even = p % 2 == 0
        self.m = _heisenberg_modulus(p)
        self.dim = p ** g
        self.field = field_for_level(p)
        L = self.field.level
        self.A = self.field.root_of_unity(L // self.m)
        self.beta = self.field.root_of_unity(L // 24)
        self._cyc_cache = {}
        self._ring_cache = {}

    # -- generator tags ----------------------------------------------------
    def tags(self):
        """All generator tags: X_i, Y_i (1-based), and Z_ij for i < j."""
        out = [("X", i) for i in range(1, self.g + 1)]
        out += [("Y", i) for i in range(1, self.g + 1)]
        for i in range(1, self.g + 1):
            for j in range(i + 1, self.g + 1):
                out.append(("Z", i, j))
        return out

    def tag_vector(self, tag):
        """Homology vector of the twist curve behind a generator tag.

        Coordinates (m1, n1, ..., mg, ng) with m the shift and n the
        modulation exponent: the meridian x_i sits in the modulation slot,
        the longitude y_i in the shift slot, and Z_ij is x_i - x_j.
        """
        v = [0] * (2 * self.g)
        if tag[0] == "X":
            v[2 * (tag[1] - 1) + 1] = 1
        elif tag[0] == "Y":
            v[2 * (tag[1] - 1)] = 1
        elif tag[0] == "Z":
            v[2 * (tag[1] - 1) + 1] = 1
            v[2 * (tag[2] - 1) + 1] = -1 % self.m
        else:
            raise ValueError("unknown tag %r" % (tag,))
        return tuple(v)

    def _check_index(self, i):
        if not 1 <= i <= self.g:
            raise ValueError("handle index %d outside genus %d" % (i, self.g))

    def _embed_handle(self, one_handle, i):
        """1^(i-1) (x) M (x) 1^(g-i) in the tensor basis (handle 1 leading)."""
        out = one_handle
        if i > 1:
            out = CycMat.identity(self.m, self.p ** (i - 1)).kron(out)
        if i < self.g:
            out = out.kron(CycMat.identity(self.m, self.p ** (self.g - i)))
        return out

    def _multi_indices(self):
        """Tensor indices (a1, ..., ag), a1 most significant."""
        idx = []
        for t in range(self.dim):
            a = []
            for h in range(self.g - 1, -1, -1):
                a.append((t // self.p ** h) % self.p)
            idx.append(tuple(a))
        return idx

    def generator_cyc(self, tag, doubled=False):
        key = (tag, doubled)
        if key in self._cyc_cache:
            return self._cyc_cache[key]
        kind = tag[0]
        if kind == "X":
            self._check_index(tag[1])
            c = 2 if doubled else 1
            one = CycMat.monomial_diag(self.m, [c * i * i for i in range(self.p)])
            mat = self._embed_handle(one, tag[1])
        elif kind == "Y":
            self._check_index(tag[1])
            arr = np.zeros((self.p, self.p, self.m), dtype=np.int64)
            for i in range(self.p):
                for j in range(self.p):
                    d = i - j
                    for k in range(self.m):
                        arr[i, j, (k * k - d * d) % self.m] += 1
            one = CycMat(self.m, arr, Fraction(1, self.m))
            mat = self._embed_handle(one, tag[1])
        elif kind == "Z":
            if self.g < 2:
                raise ValueError("Z generators need genus >= 2")
            i, j = tag[1], tag[2]
            self._check_index(i)
            self._check_index(j)
            if i == j:
                raise ValueError("Z indices must differ")
            exps = [(a[i - 1] - a[j - 1]) ** 2 for a in self._multi_indices()]
            mat = CycMat.monomial_diag(self.m, exps)
        else:
            raise ValueError("unknown tag %r" % (tag,))
        self._cyc_cache[key] = mat
        return mat

    def generator_matrix(self, tag, doubled=False):
        key = (tag, doubled)
        if key not in self._ring_cache:
            self._ring_cache[key] = self.generator_cyc(tag, doubled).to_ring(self.field)
        return self._ring_cache[key]

    # -- Hopf pairing ------------------------------------------------------
    def hopf_cyc(self):
        exps = [[-2 * sum(x * y for x, y in zip(a, b)) for b in self._multi_indices()]
                for a in self._multi_indices()]
        return CycMat.from_exponent_matrix(self.m, exps)

    def hopf_inverse_cyc(self):
        exps = [[2 * sum(x * y for x, y in zip(a, b)) for b in self._multi_indices()]
                for a in self._multi_indices()]
        return CycMat.from_exponent_matrix(self.m, exps, Fraction(1, self.dim))

    # -- Schrodinger representation ---------------------------------------
    def heisenberg(self, X, z=0):
        if len(X) != 2 * self.g:
            raise ValueError("lattice vector has length %d, expected %d"
                             % (len(X), 2 * self.g))
        return HeisenbergElt(tuple(X), z, self.m)

    def schrodinger_cyc(self, h):
        """Add_p(h) = A^z * prod_i Shift_i^(m_i) Mod_i^(n_i).

        Within each handle the modulation acts first:
        (Sh^m Mod^n) e_a = A^(2 n a) e_(a+m).
        """
        if isinstance(h, (tuple, list)):
            h = self.heisenberg(h)
        mat = None
        for i in range(self.g):
            mi, ni = h.X[2 * i], h.X[2 * i + 1]
            arr = np.zeros((self.p, self.p, self.m), dtype=np.int64)
            for a in range(self.p):
                arr[(a + mi) % self.p, a, (2 * ni * a) % self.m] = 1
            one = CycMat(self.m, arr)
            mat = one if mat is None else mat.kron(one)
        return mat.mul_root(h.z)

    def schrodinger(self, h):
        return self.schrodinger_cyc(h).to_ring(self.field)

    def add_basis(self):
        """Heisenberg elements over the lattice unit vectors."""
        out = []
        for k in range(2 * self.g):
            v = [0] * (2 * self.g)
            v[k] = 1
            out.append(self.heisenberg(v))
        return out

    def homology_basis(self):
        """Heisenberg elements for the curves x1, y1, ..., xg, yg."""
        out = []
        for i in range(1, self.g + 1):
            out.append(self.heisenberg(self.tag_vector(("X", i))))
            out.append(self.heisenberg(self.tag_vector(("Y", i))))
        return out


# -- spec-level convenience wrappers ---------------------------------------

def generator_matrix(rep, tag, doubled=False):
    return rep.generator_matrix(tag, doubled)


def hopf_matrix(p, g=1):
    return WeilRep(p, g).hopf_cyc().to_ring(field_for_level(p))


def schrodinger(rep, h):
    return rep.schrodinger(h)


# -- Egorov maps -----------------------------------------------------------

@dataclass
class EgorovReport:
    tag: tuple
    matrix: tuple          # induced lattice map, columns = images of basis
    scalars: list          # unit-norm witnesses, one per basis vector
    additive: bool
    preserves_omega: bool

    @property
    def ok(self):
        return self.additive and self.preserves_omega


def _decode_add(rep, C):
    """Read off (h', scalar) with C = scalar * Add(h', 0), or raise."""
    field = rep.field
    p, g = rep.p, rep.g
    support = [r for r in range(rep.dim) if not C.entry(field, r, 0).is_zero()]
    if len(support) != 1:
        raise ValueError("conjugate is not an Add operator (column support %r)"
                         % (support,))
    r0 = support[0]
    # shift offsets are the base-p digits of r0, handle 1 most significant
    shifts = []
    for h in range(g - 1, -1, -1):
        shifts.append((r0 // p ** h) % p)
    base = C.entry(field, r0, 0)
    mods = []
    for i in range(g):
        a_idx = p ** (g - 1 - i)  # basis vector with a_i = 1
        digits = [0] * g
        digits[i] = 1
        r = sum(((digits[t] + shifts[t]) % p) * p ** (g - 1 - t) for t in range(g))
        ratio = C.entry(field, r, a_idx) / base
        for n in range(p):
            if ratio == rep.A ** (2 * n):
                mods.append(n)
                break
        else:
            raise ValueError("modulation phase is not a power of A^2")
    X = []
    for i in range(g):
        X.extend([shifts[i], mods[i]])
    hprime = rep.heisenberg(X)
    expected = rep.schrodinger(hprime)
    lam = C.to_ring(field).equal_up_to_scalar(expected)
    if lam is None:
        raise ValueError("conjugate does not match decoded Add element")
    if lam * lam.conj() != 1:
        raise ValueError("witness scalar is not unit-norm")
    return hprime, lam


def egorov_map(rep, tag):
    """Lattice automorphism induced by conjugation with a generator.

    For each basis vector h, finds h' with
    pi(gen) Add(h,0) pi(gen)^{-1} = scalar * Add(h',0) (unit-norm scalar),
    then checks the map extends additively and preserves the symplectic
    pairing mod p.
    """
    U = rep.generator_cyc(tag)
    Ud = U.dagger()
    basis = rep.add_basis()
    images = []
    scalars = []
    for h in basis:
        C = U @ rep.schrodinger_cyc(h) @ Ud
        hp, lam = _decode_add(rep, C)
        images.append(hp)
        scalars.append(lam)
    dim = 2 * rep.g
    phi = tuple(tuple(images[j].X[i] % rep.p for j in range(dim)) for i in range(dim))

    def apply_phi(v):
        return tuple(sum(phi[i][j] * v[j] for j in range(dim)) % rep.p for i in range(dim))

    additive = True
    for a in range(dim):
        for b in range(a, dim):
            v = [0] * dim
            v[a] += 1
            v[b] += 1
            C = U @ rep.schrodinger_cyc(rep.heisenberg(v)) @ Ud
            hp, _lam = _decode_add(rep, C)
            if tuple(x % rep.p for x in hp.X) != apply_phi(v):
                additive = False
    preserves = True
    for a in range(dim):
        for b in range(dim):
            va = [0] * dim
            va[a] = 1
            vb = [0] * dim
            vb[b] = 1
            w1 = rep.heisenberg(va).omega(rep.heisenberg(vb))
            w2 = rep.heisenberg(apply_phi(va)).omega(rep.heisenberg(apply_phi(vb)))
            if (w1 - w2) % rep.p:
                preserves = False
    return EgorovReport(tag, phi, scalars, additive, preserves)


# -- genus-one lift --------------------------------------------------------

@lru_cache(maxsize=None)
def _lift_images(p):
    """Cached images of S, S^{-1} and T-powers for the genus-one lift."""
    m = _heisenberg_modulus(p)
    eps = 1 if p % 2 == 0 else 0
    arr = np.zeros((p, p, m), dtype=np.int64)
    for i in range(p):
        for j in range(p):
            for k in range(m):
                arr[i, j, (-k * k - 2 * i * j) % m] += 1
    s_img = CycMat(m, arr, Fraction(1, m), beta=-3 * eps)
    return {"m": m, "eps": eps, "S": s_img, "Sinv": s_img.dagger()}


def _lift_t_power(p, k):
    img = _lift_images(p)
    m, eps = img["m"], img["eps"]
    return CycMat.monomial_diag(m, [(-k * i * i) % m for i in range(p)],
                                beta=-k * eps)


def lift_genus1_cyc(p, M, rng=None):
    """Evaluate the lift of M in SL2(Z/NZ), N = p (odd) or 2p (even)."""
    img = _lift_images(p)
    m = img["m"]
    if det(M, m) != 1:
        raise ValueError("matrix %r is not in SL2(Z/%d)" % (M, m))
    word = word_decompose(tuple(v % m for v in M), m, rng=rng)
    out = CycMat.identity(m, p)
    for kind, val in word:
        if kind == "S":
            out = out @ (img["S"] if val == 1 else img["Sinv"])
        else:
            out = out @ _lift_t_power(p, val)
    return out


def lift_genus1(p, M, rng=None):
    return lift_genus1_cyc(p, M, rng).to_ring(field_for_level(p))


# -- fast exact traces -----------------------------------------------------

class _TraceEngine:
    """Exact |Tr|^2 of the genus-one lift via the Bruhat decomposition.

    For M = (a, b, c, d) with c a unit, M = T^(a/c) S^{-1} D_c T^(d/c) and
    the trace is a sum of p rolled integer vectors; non-unit c inserts one
    extra S-factor, costing p^2 rolled vectors.  All per-unit data (the
    diagonal-matrix images D_c, obtained by evaluating their S,T-word) is
    cached and verified to be monomial only implicitly through use.
    """

    def __init__(self, p):
        self.p = p
        img = _lift_images(p)
        self.m = img["m"]
        self.eps = img["eps"]
        self.field = field_for_level(p)
        m = self.m
        # Sinv[i, j] as integer vectors: (1/m) sum_u A^(u^2 + 2ij), beta 3*eps
        arr = np.zeros((p, p, m), dtype=np.int64)
        for i in range(p):
            for j in range(p):
                for u in range(m):
                    arr[i, j, (u * u + 2 * i * j) % m] += 1
        self.sinv_arr = arr
        self.sinv_scale = Fraction(1, m)
        self.sinv_beta = 3 * self.eps
        self._dcache = {}
        self._kcache = {}
        self._gcache = {}

    def _dmat(self, c):
        if c not in self._dcache:
            self._dcache[c] = lift_genus1_cyc(
                self.p, (c % self.m, 0, 0, pow(c, -1, self.m)))
        return self._dcache[c]

    @staticmethod
    def _conv(u, v):
        """Cyclic convolution of two length-m integer vectors."""
        m = len(u)
        out = np.zeros(m, dtype=np.int64)
        for k in np.nonzero(u)[0]:
            out += u[k] * np.roll(v, k)
        return out

    def _kvec(self, c):
        """K_c[i] = sum_k Sinv[i,k] * D_c[k,i] (convolutions)."""
        if c not in self._kcache:
            D = self._dmat(c)
            p, m = self.p, self.m
            K = np.zeros((p, m), dtype=np.int64)
            for i in range(p):
                for k in range(p):
                    dv = D.arr[k, i]
                    if dv.any():
                        K[i] += self._conv(self.sinv_arr[i, k], dv)
            self._kcache[c] = (K, D.scale, D.beta)
        return self._kcache[c]

    def _gmat(self, u):
        """G_u[i,j] = Sinv[i,j] * (sum_k Sinv[j,k] * D_(-u)[k,i])."""
        if u not in self._gcache:
            D = self._dmat((-u) % self.m)
            p, m = self.p, self.m
            G = np.zeros((p, p, m), dtype=np.int64)
            for j in range(p):
                for i in range(p):
                    e = np.zeros(m, dtype=np.int64)
                    for k in range(p):
                        dv = D.arr[k, i]
                        if dv.any():
                            e += self._conv(self.sinv_arr[j, k], dv)
                    if e.any():
                        G[i, j] = self._conv(self.sinv_arr[i, j], e)
            self._gcache[u] = (G, D.scale, D.beta)
        return self._gcache[u]

    def trace_vector(self, M):
        """(vector, scale, beta) with Tr = scale * beta-root * sum_t v[t] A^t."""
        m, p = self.m, self.p
        a, b, c, d = (v % m for v in M)
        if det(M, m) != 1:
            raise ValueError("matrix %r is not in SL2(Z/%d)" % (M, m))
        sq = np.array([(i * i) % m for i in range(p)], dtype=np.int64)
        t = np.arange(m)
        if gcd(c, m) == 1:
            cinv = pow(c, -1, m)
            alpha, delta = (a * cinv) % m, (d * cinv) % m
            K, dscale, dbeta = self._kvec(c)
            e = (alpha + delta) * sq % m
            idx = (t[None, :] + e[:, None]) % m
            vec = np.take_along_axis(K, idx, axis=1).sum(axis=0)
            scale = self.sinv_scale * dscale
            beta = (-self.eps * (alpha + delta) + self.sinv_beta + dbeta) % 24
            return vec, scale, beta
        x = 0
        while gcd(a + x * c, m) != 1:
            x += 1
        u = (a + x * c) % m
        uinv = pow(u, -1, m)
        alpha = (-c * uinv) % m           # mid = (c, d, -u, -(b+xd))
        delta = ((b + x * d) * uinv) % m
        G, dscale, dbeta = self._gmat(u)
        e = ((x - delta) * sq[:, None] - alpha * sq[None, :]) % m
        idx = (t[None, None, :] + e[:, :, None]) % m
        vec = np.take_along_axis(G, idx, axis=2).sum(axis=(0, 1))
        scale = self.sinv_scale * self.sinv_scale * dscale
        beta = (self.eps * (x - alpha - delta) + 2 * self.sinv_beta + dbeta) % 24
        return vec, scale, beta

    def trace_elt(self, M):
        vec, scale, beta = self.trace_vector(M)
        field = self.field
        step = field.level // self.m
        elt = CycMat._vec_to_elt(field, vec, step)
        return elt * field.root_of_unity((field.level // 24) * beta) * scale

    def trace_abs_sq(self, M):
        return self.trace_elt(M).norm_sq().as_fraction()


@lru_cache(maxsize=None)
def trace_engine(p):
    return _TraceEngine(p)


def trace_abs_sq(p, M):
    """|Tr(pi_p(M))|^2 as an exact rational; independent of the word used."""
    return trace_engine(p).trace_abs_sq(M)


# -- projective comparison keys --------------------------------------------

def projective_key(mat):
    """Hashable key identifying a RingMatrix up to a scalar factor."""
    lead = None
    for row in mat.rows:
        for a in row:
            if not a.is_zero():
                lead = a
                break
        if lead is not None:
            break
    if lead is None:
        return ("zero", mat.nrows, mat.ncols)
    inv = lead.inverse()
    return tuple(tuple((inv * a).coeffs for a in row) for row in mat.rows)

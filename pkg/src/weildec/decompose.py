"""Decomposition machinery for the level-p modules.

Parity splitting under the index flip a -> -a, coprime tensor
factorization through a residue pairing, prime-power towers with
orthogonal complements, the bookkeeping tree of irreducible factors,
commutant dimensions with exact certificates, orbit-sum operators, and
the minus-parity label audit at genus one.

All heavy verification runs on integer exponent arrays (CycMat); when an
integer residual is nonzero the comparison falls back to exact
cyclotomic reduction, so every reported "pass" is an exact statement.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

import numpy as np

from .cycmat import CycMat
from .cyclo import field_for_level
from .modgroup import divisors, sigma0, sp_generators, sp_apply, _mat_inv_general
from .weilrep import WeilRep


def _heis_modulus(p):
    return p if p % 2 else 2 * p


# ---------------------------------------------------------------------------
# exact comparison helpers on exponent arrays
# ---------------------------------------------------------------------------

_REDUCTION_TABLES = {}


def _reduction_table(field, m):
    """Integer matrix sending exponent vectors of the order-m root to
    coordinates in the field's power basis."""
    key = (field.level, m)
    cached = _REDUCTION_TABLES.get(key)
    if cached is None:
        step = field.level // m
        rows = []
        for k in range(m):
            coeffs = field.power_rows[(step * k) % field.level]
            rows.append([int(c) for c in coeffs])
        cached = np.array(rows, dtype=object)
        _REDUCTION_TABLES[key] = cached
    return cached


def _array_is_zero(field, m, arr):
    """True when every entry (a length-m exponent vector) vanishes in field."""
    arr = np.asarray(arr)
    if not arr.any():
        return True
    table = _reduction_table(field, m)
    coords = arr.astype(object) @ table
    return not coords.any()


def _cyc_equal(x, y, field):
    """Exact equality of two CycMat values (beta phases must agree)."""
    if x.m != y.m or x.arr.shape != y.arr.shape or x.beta != y.beta:
        return False
    r1 = x.scale
    r2 = y.scale
    diff = (r1.numerator * r2.denominator) * x.arr.astype(object) - (
        r2.numerator * r1.denominator
    ) * y.arr.astype(object)
    return _array_is_zero(field, x.m, diff)


def _exponent_remap(mat, new_modulus, multiplier):
    """Substitute the root A by A_new^multiplier: exponent k -> k*multiplier."""
    r, c, m = mat.arr.shape
    out = np.zeros((r, c, new_modulus), dtype=np.int64)
    for k in range(m):
        out[:, :, (k * multiplier) % new_modulus] += mat.arr[:, :, k]
    return CycMat(new_modulus, out, scale=mat.scale, beta=mat.beta)


# ---------------------------------------------------------------------------
# rational span restriction
# ---------------------------------------------------------------------------

def _fraction_inverse(mat):
    """Exact inverse of a square integer matrix; returns (num, den)."""
    n = len(mat)
    aug = [[Fraction(mat[i][j]) for j in range(n)] + [
        Fraction(1 if j == i else 0) for j in range(n)
    ] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    inv_rows = [row[n:] for row in aug]
    den = 1
    for row in inv_rows:
        for v in row:
            den = den * v.denominator // gcd(den, v.denominator)
    num = np.array(
        [[int(v * den) for v in row] for row in inv_rows], dtype=object
    )
    return num, den


def _dual_basis(vectors):
    """Left inverse of an integer full-column-rank matrix: (num, den)."""
    V = np.asarray(vectors, dtype=object)
    gram = V.T @ V
    inv_num, den = _fraction_inverse(gram.tolist())
    return inv_num @ V.T, den


def span_restrict(gen, vectors, dual=None):
    """Restrict a CycMat operator to an invariant integer span.

    Returns the coordinate matrix as a CycMat, or None when the span is
    not invariant (checked exactly, with cyclotomic fallback for nonzero
    integer residuals).
    """
    V = np.asarray(vectors, dtype=np.int64)
    if dual is None:
        dual = _dual_basis(V)
    dnum, dden = dual
    image = np.einsum("itk,tj->ijk", gen.arr, V.astype(np.int64))
    coords = np.einsum("si,ijk->sjk", dnum, image.astype(object))
    residual = dden * image.astype(object) - np.einsum(
        "is,sjk->ijk", V.astype(object), coords
    )
    field = field_for_level(gen.m if gen.m % 2 else gen.m // 2)
    if not _array_is_zero(field, gen.m, residual):
        return None
    return CycMat(
        gen.m,
        coords.astype(np.int64),
        scale=gen.scale / dden,
        beta=gen.beta,
    )


# ---------------------------------------------------------------------------
# parity splitting
# ---------------------------------------------------------------------------

@dataclass
class ParityBases:
    p: int
    g: int
    plus: np.ndarray
    minus: np.ndarray

    @property
    def dims(self):
        return (self.plus.shape[1], self.minus.shape[1])


def _flip_permutation(rep):
    """Index map of the global flip a -> -a on multi-indices."""
    indices = rep._multi_indices()
    pos = {a: i for i, a in enumerate(indices)}
    return [pos[tuple((-x) % rep.p for x in a)] for a in indices]


def parity_bases(p, g=1):
    """Even/odd bases under the flip, verified invariant per generator."""
    rep = WeilRep(p, g)
    flip = _flip_permutation(rep)
    dim = rep.dim
    plus_cols = []
    minus_cols = []
    seen = set()
    for i in range(dim):
        j = flip[i]
        if i in seen:
            continue
        seen.update({i, j})
        v = np.zeros(dim, dtype=np.int64)
        v[i] += 1
        v[j] += 1
        plus_cols.append(v)
        if i != j:
            w = np.zeros(dim, dtype=np.int64)
            w[i] = 1
            w[j] = -1
            minus_cols.append(w)
    plus = np.stack(plus_cols, axis=1)
    minus = (
        np.stack(minus_cols, axis=1)
        if minus_cols
        else np.zeros((dim, 0), dtype=np.int64)
    )
    for tag in rep.tags():
        gen = rep.generator_cyc(tag)
        if span_restrict(gen, plus) is None:
            raise ValueError(f"even span not invariant under {tag}")
        if minus.shape[1] and span_restrict(gen, minus) is None:
            raise ValueError(f"odd span not invariant under {tag}")
    return ParityBases(p, g, plus, minus)


def _parity_dims(p, g):
    fixed = 1 if p % 2 else 2
    if p == 1:
        fixed = 1
    return ((p**g + fixed**g) // 2, (p**g - fixed**g) // 2)


# ---------------------------------------------------------------------------
# coprime tensor factorization
# ---------------------------------------------------------------------------

@dataclass
class CrtData:
    a: int
    b: int
    g: int
    u: int
    v: int
    f_table: tuple
    psi: tuple

    def f(self, x, y):
        return self.f_table[(x % self.a) * self.b + (y % self.b)]


@dataclass
class CrtReport:
    data: CrtData
    passed: bool
    failures: tuple


def _bezout(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


def _crt_maps(a, b, g):
    """Residue pairing f and the genus-g basis permutation psi."""
    even = a % 2 == 0
    if even:
        u, v = _bezout(2 * a, b)
        assert 2 * a * u + b * v == 1
        coef_b = (2 * a * u) % (a * b)
    else:
        u, v = _bezout(a, b)
        assert a * u + b * v == 1
        coef_b = (a * u) % (a * b)
    coef_a = (v * b) % (a * b)
    f_table = tuple(
        (x * coef_a + y * coef_b) % (a * b) for x in range(a) for y in range(b)
    )
    assert len(set(f_table)) == a * b
    for x in range(a):
        for y in range(b):
            val = f_table[x * b + y]
            assert val % a == x % a and val % b == y % b
    dim_a, dim_b = a**g, b**g
    psi = [0] * (dim_a * dim_b)
    for ia in range(dim_a):
        xa = []
        t = ia
        for _ in range(g):
            xa.append(t % a)
            t //= a
        xa.reverse()
        for ib in range(dim_b):
            yb = []
            t = ib
            for _ in range(g):
                yb.append(t % b)
                t //= b
            yb.reverse()
            target = 0
            for xi, yi in zip(xa, yb):
                target = target * (a * b) + f_table[xi * b + yi]
            psi[ia * dim_b + ib] = target
    return u, v, f_table, tuple(psi), coef_a, coef_b


def crt_check(a, b, g=1):
    """Verify the coprime tensor factorization exactly, generator by generator."""
    if gcd(a, b) != 1 or b % 2 == 0 or a < 2 or b < 2:
        raise ValueError("need coprime levels with b odd, both at least 2")
    u, v, f_table, psi, coef_a, coef_b = _crt_maps(a, b, g)
    data = CrtData(a, b, g, u, v, f_table, psi)
    m_ab = _heis_modulus(a * b)
    # A_a corresponds to A_ab^{vb} and A_b to A_ab^{au} (odd a) or
    # A_ab^{2au} (even a); the Bezout identity fixes the orders.
    mult_a = (v * b) % m_ab
    mult_b = ((2 * a * u) if a % 2 == 0 else (a * u)) % m_ab
    rep_ab = WeilRep(a * b, g)
    rep_a = WeilRep(a, g)
    rep_b = WeilRep(b, g)
    perm = np.asarray(psi)
    failures = []
    for tag in rep_ab.tags():
        ga = _exponent_remap(rep_a.generator_cyc(tag), m_ab, mult_a)
        gb = _exponent_remap(rep_b.generator_cyc(tag), m_ab, mult_b)
        gt = ga.kron(gb)
        moved = np.zeros_like(gt.arr)
        moved[perm[:, None], perm[None, :], :] = gt.arr
        transported = CycMat(m_ab, moved, scale=gt.scale, beta=gt.beta)
        if not _cyc_equal(transported, rep_ab.generator_cyc(tag), rep_ab.field):
            failures.append(tag)
    return CrtReport(data, not failures, tuple(failures))


# ---------------------------------------------------------------------------
# prime-power towers
# ---------------------------------------------------------------------------

@dataclass
class TowerData:
    r: int
    n: int
    g: int
    gvecs: np.ndarray
    wbasis: np.ndarray


@dataclass
class TowerReport:
    data: TowerData
    passed: bool
    failures: tuple


def _tower_handle_bases(r, n):
    """Per-handle embedding columns and complement columns inside U_{r^{n+2}}."""
    big = r ** (n + 2)
    small = r**n
    emb = np.zeros((big, small), dtype=np.int64)
    for i in range(small):
        for k in range(r):
            emb[r * (i + k * small), i] = 1
    comp_cols = []
    for j in range(big):
        if j % r:
            col = np.zeros(big, dtype=np.int64)
            col[j] = 1
            comp_cols.append(col)
    for i in range(small):
        for k in range(1, r):
            col = np.zeros(big, dtype=np.int64)
            col[r * (i + k * small)] = 1
            col[r * i] = -1
            comp_cols.append(col)
    comp = np.stack(comp_cols, axis=1)
    return emb, comp


def _tensor_spans(emb, comp, g):
    """Genus-g embedding span and its complement span (pure/mixed tensors)."""
    big, small = emb.shape
    full = np.concatenate([emb, comp], axis=1)
    span_u = emb
    span_rest = None
    for _ in range(g - 1):
        span_u = np.kron(span_u, emb)
    cols_u = []
    cols_w = []
    for choice in itertools.product(range(big), repeat=g):
        col = np.ones(1, dtype=np.int64)
        for c in choice:
            col = np.kron(col, full[:, c])
        if all(c < small for c in choice):
            cols_u.append(col)
        else:
            cols_w.append(col)
    span_u = np.stack(cols_u, axis=1)
    span_w = (
        np.stack(cols_w, axis=1)
        if cols_w
        else np.zeros((big**g, 0), dtype=np.int64)
    )
    return span_u, span_w


def tower_check(r, n, g=1):
    """Verify the embedded copy of U_{r^n} inside U_{r^(n+2)} and its complement."""
    if n < 0 or (r == 2 and n < 1):
        raise ValueError("exponent out of range for the tower")
    big = r ** (n + 2)
    small = r**n
    rep = WeilRep(big, g)
    emb, comp = _tower_handle_bases(r, n)
    span_u, span_w = _tensor_spans(emb, comp, g)
    data = TowerData(r, n, g, span_u, span_w)
    dual_u = _dual_basis(span_u)
    dual_w = _dual_basis(span_w) if span_w.shape[1] else None
    rep_small = WeilRep(small, g) if small > 1 else None
    failures = []
    for tag in rep.tags():
        gen = rep.generator_cyc(tag)
        coords = span_restrict(gen, span_u, dual_u)
        if coords is None:
            failures.append((tag, "embedding not stable"))
            continue
        if rep_small is None:
            expected = CycMat.identity(rep.m, 1)
        else:
            expected = _exponent_remap(
                rep_small.generator_cyc(tag), rep.m, r * r
            )
        if not _cyc_equal(coords, expected, rep.field):
            failures.append((tag, "restriction mismatch"))
        if dual_w is not None and span_restrict(gen, span_w, dual_w) is None:
            failures.append((tag, "complement not stable"))
    return TowerReport(data, not failures, tuple(failures))


# ---------------------------------------------------------------------------
# decomposition tree
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorLabel:
    kind: str  # "U", "W", or "trivial"
    prime_power: int
    parity: str  # "+", "-", or "none"
    genus: int
    dim: int

    def name(self):
        if self.kind == "trivial":
            return "1"
        suffix = self.parity if self.parity != "none" else ""
        return f"{self.kind}{self.prime_power}{suffix}"


@dataclass
class DecompositionTree:
    level: int
    genus: int
    factors: tuple  # tuple of tuples of FactorLabel

    @property
    def factor_count(self):
        return len(self.factors)

    def dims(self):
        out = []
        for tensor in self.factors:
            d = 1
            for label in tensor:
                d *= label.dim
            out.append(d)
        return out

    def to_json(self):
        payload = {
            "level": self.level,
            "genus": self.genus,
            "factor_count": self.factor_count,
            "factors": [
                {
                    "tensor": [
                        {
                            "kind": lab.kind,
                            "prime_power": lab.prime_power,
                            "parity": lab.parity,
                            "dim": lab.dim,
                        }
                        for lab in tensor
                    ]
                }
                for tensor in self.factors
            ],
        }
        return json.dumps(payload, separators=(",", ":"))


def _prime_power_leaves(r, n, g):
    """Leaf labels of U_{r^n} at genus g, ordered top of the tower first."""
    q = r**n
    plus, minus = _parity_dims(q, g)
    if n == 0:
        return [FactorLabel("trivial", 1, "none", g, 1)]
    if r == 2 and n == 1:
        return [FactorLabel("U", 2, "none", g, 2**g)]
    if n == 1 or (r == 2 and n == 2):
        return [
            FactorLabel("U", q, "+", g, plus),
            FactorLabel("U", q, "-", g, minus),
        ]
    small = r ** (n - 2)
    w_half = (q**g - small**g) // 2
    return [
        FactorLabel("W", q, "+", g, w_half),
        FactorLabel("W", q, "-", g, w_half),
    ] + _prime_power_leaves(r, n - 2, g)


def _prime_factorization(p):
    out = []
    t = p
    d = 2
    while d * d <= t:
        if t % d == 0:
            n = 0
            while t % d == 0:
                t //= d
                n += 1
            out.append((d, n))
        d += 1
    if t > 1:
        out.append((t, 1))
    return out


def decomposition_tree(p, g=1):
    """Bookkeeping tree of irreducible factors of the level-p module."""
    parts = _prime_factorization(p)
    leaf_lists = [_prime_power_leaves(r, n, g) for r, n in parts]
    factors = tuple(tuple(combo) for combo in itertools.product(*leaf_lists))
    tree = DecompositionTree(p, g, factors)
    expected = sigma0(p) if p % 2 else sigma0(p // 2)
    assert tree.factor_count == expected
    assert sum(tree.dims()) == p**g
    return tree


# ---------------------------------------------------------------------------
# modular rank certificates
# ---------------------------------------------------------------------------

def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _modular_primes(m, count=2, start=1_000_000):
    out = []
    q = start + (m - start % m) + 1
    while len(out) < count:
        if _is_prime(q):
            out.append(q)
        q += m
    return out


def _root_mod(q, m):
    """An element of exact multiplicative order m in GF(q)."""
    for gcand in range(2, q):
        w = pow(gcand, (q - 1) // m, q)
        ok = all(pow(w, m // r, q) != 1 for r, _ in _prime_factorization(m))
        if w != 1 and ok:
            return w
    raise ValueError("no root found")


def _eval_mod(cyc, q, omega):
    powers = np.array(
        [pow(omega, k, q) for k in range(cyc.m)], dtype=np.int64
    )
    vals = (cyc.arr.astype(object) @ powers.astype(object)) % q
    s = cyc.scale
    factor = s.numerator % q * pow(s.denominator % q, q - 2, q) % q
    if cyc.beta % 24:
        raise ValueError("unexpected phase in modular evaluation")
    return (vals * factor) % q


def _rank_mod(rows, q):
    M = np.array(rows, dtype=np.int64) % q
    rank = 0
    col = 0
    nrows, ncols = M.shape
    while rank < nrows and col < ncols:
        piv = np.nonzero(M[rank:, col])[0]
        if piv.size == 0:
            col += 1
            continue
        r = rank + piv[0]
        M[[rank, r]] = M[[r, rank]]
        inv = pow(int(M[rank, col]), q - 2, q)
        M[rank] = (M[rank] * inv) % q
        mask = np.nonzero(M[:, col])[0]
        mask = mask[mask != rank]
        if mask.size:
            M[mask] = (M[mask] - np.outer(M[mask, col], M[rank])) % q
        rank += 1
        col += 1
    return rank


def _commutant_nullity_mod(gens, q, omega):
    d = gens[0].arr.shape[0]
    rows = []
    eye = np.eye(d, dtype=np.int64)
    for gen in gens:
        A = _eval_mod(gen, q, omega).astype(np.int64)
        block = (np.kron(A, eye) - np.kron(eye, A.T)) % q
        rows.append(block)
    M = np.concatenate(rows, axis=0)
    return d * d - _rank_mod(M, q)


# ---------------------------------------------------------------------------
# commutant dimension via orthogonal idempotent certificates
# ---------------------------------------------------------------------------

def _proj_mul(p1, p2):
    n1, d1 = p1
    n2, d2 = p2
    num = n1 @ n2
    den = d1 * d2
    g = den
    for v in num.flat:
        g = gcd(g, int(v))
        if g == 1:
            break
    if g > 1:
        num = num // g
        den //= g
    return num, den


def _flip_matrix(p, g):
    rep_indices = list(itertools.product(range(p), repeat=g))
    pos = {a: i for i, a in enumerate(rep_indices)}
    d = p**g
    J = np.zeros((d, d), dtype=object)
    for i, a in enumerate(rep_indices):
        J[pos[tuple((-x) % p for x in a)], i] = 1
    return J


def isotypic_projectors(p, g=1):
    """Orthogonal idempotents onto the irreducible blocks, as (num, den)."""
    d = p**g
    eye = np.eye(d, dtype=object)
    if p == 1:
        return [(eye, 1)]
    parts = _prime_factorization(p)
    if len(parts) > 1:
        r0, n0 = parts[0]
        a = r0**n0
        b = p // a
        _, _, _, psi, _, _ = _crt_maps(a, b, g)
        perm = np.asarray(psi)
        pa = isotypic_projectors(a, g)
        pb = isotypic_projectors(b, g)
        out = []
        for (na, da), (nb, db) in itertools.product(pa, pb):
            kr = np.kron(na, nb)
            moved = np.zeros_like(kr)
            moved[perm[:, None], perm[None, :]] = kr
            out.append((moved, da * db))
        return out
    r, n = parts[0]
    if r == 2 and n == 1:
        return [(eye, 1)]
    if n == 1 or (r == 2 and n == 2):
        J = _flip_matrix(p, g)
        projs = [(eye + J, 2)]
        if (p**g - (1 if p % 2 else 2) ** g) // 2:
            projs.append((eye - J, 2))
        return projs
    small = r ** (n - 2)
    emb, comp = _tower_handle_bases(r, n - 2)
    span_u, span_w = _tensor_spans(emb, comp, g)
    full = np.concatenate([span_u, span_w], axis=1).astype(object)
    inv_num, inv_den = _fraction_inverse(full.tolist())
    k = span_u.shape[1]
    dual_num = inv_num[:k]
    E = span_u.astype(object)
    p_u = (E @ dual_num, inv_den)
    out = []
    for snum, sden in isotypic_projectors(small, g):
        out.append(((E @ snum) @ dual_num, sden * inv_den))
    J = _flip_matrix(p, g)
    rest = (inv_den * eye - p_u[0], inv_den)
    out.append(_proj_mul(rest, (eye + J, 2)))
    minus = _proj_mul(rest, (eye - J, 2))
    if minus[0].any():
        out.append(minus)
    return out


def _verify_projector_family(projs, gens, field, m):
    for i, (ni, di) in enumerate(projs):
        if not ni.any():
            raise ValueError("zero idempotent in family")
        for j, (nj, dj) in enumerate(projs):
            prod = ni @ nj
            target = dj * ni if i == j else np.zeros_like(prod)
            if not np.array_equal(prod, target):
                raise ValueError("family is not orthogonal-idempotent")
    total_num = None
    den_lcm = 1
    for _, dk in projs:
        den_lcm = den_lcm * dk // gcd(den_lcm, dk)
    d = projs[0][0].shape[0]
    acc = np.zeros((d, d), dtype=object)
    for nk, dk in projs:
        acc += (den_lcm // dk) * nk
    if not np.array_equal(acc, den_lcm * np.eye(d, dtype=object)):
        raise ValueError("idempotents do not resolve the identity")
    for gen in gens:
        for nk, _ in projs:
            comm = np.einsum("it,tjk->ijk", nk, gen.arr.astype(object)) - np.einsum(
                "itk,tj->ijk", gen.arr.astype(object), nk
            )
            if not _array_is_zero(field, m, comm):
                raise ValueError("idempotent does not commute with a generator")


def commutant_dimension(p, g=1):
    """Exact commutant dimension of the level-p module at genus g.

    Upper bound: nullity of the commutation system over two prime fields
    containing an order-m root (specialization can only lower rank).
    Lower bound: an explicitly verified family of orthogonal commuting
    idempotents.  The two must meet, pinning the exact value.
    """
    if p ** (2 * g) > 256:
        raise ValueError("solver bound exceeded")
    rep = WeilRep(p, g)
    gens = [rep.generator_cyc(tag) for tag in rep.tags()]
    upper = None
    for q in _modular_primes(rep.m, count=2):
        omega = _root_mod(q, rep.m)
        nullity = _commutant_nullity_mod(gens, q, omega)
        upper = nullity if upper is None else min(upper, nullity)
    projs = isotypic_projectors(p, g)
    _verify_projector_family(projs, gens, rep.field, rep.m)
    lower = len(projs)
    if lower != upper:
        raise ValueError(
            f"commutant certificates disagree: {lower} vs {upper}"
        )
    return lower


def schrodinger_commutant_dimension(p, g=1):
    """Dimension of the commutant of the lattice translation operators.

    The modulation operators are diagonal with pairwise distinct joint
    eigenvalue tuples (verified exactly), so any commuting matrix is
    diagonal; the shift operators then force constancy along the orbit
    of index translations, and the commutant dimension is the number of
    connected components of that translation graph.
    """
    rep = WeilRep(p, g)
    indices = rep._multi_indices()
    eig = [tuple((2 * x) % rep.m for x in a) for a in indices]
    if len(set(eig)) != len(eig):
        raise ValueError("joint eigenvalues are not distinct")
    parent = list(range(len(indices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pos = {a: i for i, a in enumerate(indices)}
    for i, a in enumerate(indices):
        for h in range(g):
            b = list(a)
            b[h] = (b[h] + 1) % p
            j = pos[tuple(b)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    return len({find(i) for i in range(len(indices))})


# ---------------------------------------------------------------------------
# orbit-sum operators
# ---------------------------------------------------------------------------

def lattice_orbit(start, p, g=1):
    """Orbit of a lattice vector under the symplectic transvections."""
    gens = sp_generators(g, p)
    gens = gens + [
        tuple(tuple(r) for r in _mat_inv_general(M, p)) for M in gens
    ]
    start = tuple(x % p for x in start)
    orbit = {start}
    frontier = [start]
    while frontier:
        u = frontier.pop()
        for M in gens:
            w = sp_apply(M, u, p)
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return sorted(orbit)


def _conjugation_rules(tags, p, g):
    """Action of generator conjugation on (lattice vector, phase).

    Conjugating a composite translation operator by a generator moves it
    to another such operator times a power of A; the exponent rules below
    are exact (slot 2i holds the shift, slot 2i+1 the modulation of
    handle i, phases live modulo the order of A).
    """
    m = _heis_modulus(p)

    def conj_x(i, sign):
        def rule(vec, z):
            out = list(vec)
            s = vec[2 * i]
            out[2 * i + 1] = (out[2 * i + 1] + sign * s) % p
            return tuple(out), (z + sign * s * s) % m

        return rule

    def conj_s(sign):
        def rule(vec, z):
            out = list(vec)
            phase = 0
            for i in range(g):
                s, n = vec[2 * i], vec[2 * i + 1]
                if sign > 0:
                    out[2 * i], out[2 * i + 1] = n % p, (-s) % p
                else:
                    out[2 * i], out[2 * i + 1] = (-n) % p, s % p
                phase -= 2 * s * n
            return tuple(out), (z + phase) % m

        return rule

    def compose(*rules):
        def rule(vec, z):
            for r in rules:
                vec, z = r(vec, z)
            return vec, z

        return rule

    def conj_z(i, j, sign):
        def rule(vec, z):
            out = list(vec)
            d = vec[2 * i] - vec[2 * j]
            out[2 * i + 1] = (out[2 * i + 1] + sign * d) % p
            out[2 * j + 1] = (out[2 * j + 1] - sign * d) % p
            return tuple(out), (z + sign * d * d) % m

        return rule

    rules = []
    for tag in tags:
        for sign in (1, -1):
            if tag[0] == "X":
                rules.append(conj_x(tag[1] - 1, sign))
            elif tag[0] == "Y":
                rules.append(
                    compose(conj_s(-1), conj_x(tag[1] - 1, sign), conj_s(1))
                )
            else:
                rules.append(conj_z(tag[1] - 1, tag[2] - 1, sign))
    return rules


def omega_cyc(delta, p, g=1, rep=None):
    """Phase-corrected orbit sum of lattice translation operators.

    Returns (matrix, orbit size, phases consistent).  The phase attached
    to each orbit vector is transported along the conjugation action; on
    some orbits at even levels the transport has nontrivial holonomy, in
    which case first-visit phases are used and the flag is False.
    """
    if p % delta:
        raise ValueError("delta must divide the level")
    if rep is None:
        rep = WeilRep(p, g)
    rules = _conjugation_rules(rep.tags(), p, g)
    start = tuple(0 if i % 2 == 0 else delta % p for i in range(2 * g))
    phases = {start: 0}
    frontier = [start]
    consistent = True
    while frontier:
        vec = frontier.pop()
        z = phases[vec]
        for rule in rules:
            w, zw = rule(vec, z)
            if w not in phases:
                phases[w] = zw
                frontier.append(w)
            elif phases[w] != zw:
                consistent = False
    total = None
    for vec, z in sorted(phases.items()):
        term = rep.schrodinger_cyc(rep.heisenberg(vec, z))
        total = term if total is None else total + term
    return total, len(phases), consistent


def omega_projector(delta, p, g=1):
    """Orbit-sum operator as an exact cyclotomic matrix."""
    rep = WeilRep(p, g)
    cyc, _, _ = omega_cyc(delta, p, g, rep)
    return cyc.to_ring(rep.field)


@dataclass
class OmegaRow:
    delta: int
    orbit_size: int
    commutes: bool
    phase_consistent: bool


@dataclass
class OmegaFamilyReport:
    p: int
    g: int
    rows: tuple
    family_size: int
    family_rank: int

    @property
    def all_commute(self):
        return all(row.commutes for row in self.rows)

    @property
    def independent(self):
        return self.family_rank == self.family_size


def omega_family_report(p, g=1):
    """Commutation and independence audit of the orbit-sum family."""
    rep = WeilRep(p, g)
    gens = [rep.generator_cyc(tag) for tag in rep.tags()]
    rows = []
    mats = []
    for delta in divisors(p):
        cyc, size, consistent = omega_cyc(delta, p, g, rep)
        mats.append(cyc)
        commutes = True
        for gen in gens:
            comm = (gen @ cyc) - (cyc @ gen)
            if not _array_is_zero(rep.field, rep.m, comm.arr):
                commutes = False
                break
        rows.append(OmegaRow(delta, size, commutes, consistent))
    q = _modular_primes(rep.m, count=1)[0]
    omega = _root_mod(q, rep.m)
    stacked = [
        _eval_mod(cyc, q, omega).astype(np.int64).reshape(-1) for cyc in mats
    ]
    rank = _rank_mod(np.stack(stacked, axis=0), q)
    return OmegaFamilyReport(p, g, tuple(rows), len(mats), rank)


@dataclass
class EgorovLatticeReport:
    p: int
    g: int
    tag: tuple
    matrix: tuple  # induced map on lattice basis vectors, column-wise
    conjugation_exact: bool
    additive: bool
    preserves_omega: bool

    @property
    def ok(self):
        return self.conjugation_exact and self.additive and self.preserves_omega


def egorov_verify(p, g=1, tags=None):
    """Induced lattice maps of the generators, certified exactly.

    For each generator the conjugate of every basis translation operator
    is matched entrywise against the predicted translation operator; the
    induced map is then checked for additivity and preservation of the
    symplectic pairing on basis pairs.
    """
    rep = WeilRep(p, g)
    all_tags = rep.tags()
    if tags is None:
        tags = all_tags
    rules = _conjugation_rules(all_tags, p, g)
    rule_of = {tag: rules[2 * i] for i, tag in enumerate(all_tags)}
    dim2 = 2 * g
    basis = [
        tuple(1 if k == i else 0 for k in range(dim2)) for i in range(dim2)
    ]
    reports = []
    for tag in tags:
        rule = rule_of[tag]
        U = rep.generator_cyc(tag)
        Ud = U.dagger()
        exact = True
        for vec in basis:
            conj = (U @ rep.schrodinger_cyc(rep.heisenberg(vec, 0))) @ Ud
            w, z = rule(vec, 0)
            pred = rep.schrodinger_cyc(rep.heisenberg(w, z))
            if not _cyc_equal(conj, pred, rep.field):
                exact = False
        images = [rule(vec, 0)[0] for vec in basis]
        additive = True
        for i in range(dim2):
            for j in range(dim2):
                summed = tuple(
                    (basis[i][k] + basis[j][k]) % p for k in range(dim2)
                )
                target = tuple(
                    (images[i][k] + images[j][k]) % p for k in range(dim2)
                )
                if rule(summed, 0)[0] != target:
                    additive = False
        def omega(u, v):
            return sum(
                u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i]
                for i in range(g)
            ) % p

        preserves = all(
            omega(images[i], images[j]) == omega(basis[i], basis[j])
            for i in range(dim2)
            for j in range(dim2)
        )
        reports.append(
            EgorovLatticeReport(
                p, g, tag, tuple(images), exact, additive, preserves
            )
        )
    return reports


def omega_embedding_scalar(delta, p, g=1):
    """Exact scalar by which an orbit sum acts on the embedded tower copy.

    For p = r^n and delta = r^k (k <= n/2) the orbit sum preserves the
    iterated embedding of U_{r^(n-2k)} and acts on it by a single ring
    element, returned here; a defect error is raised when the action is
    not scalar.
    """
    parts = _prime_factorization(p)
    if len(parts) != 1:
        raise ValueError("level must be a prime power")
    r, n = parts[0]
    k = 0
    t = delta
    while t % r == 0:
        t //= r
        k += 1
    if t != 1 or 2 * k > n:
        raise ValueError("divisor must be r^k with k <= n/2")
    rep = WeilRep(p, g)
    cyc, _, _ = omega_cyc(delta, p, g, rep)
    emb = np.eye(r ** (n - 2 * k), dtype=np.int64)
    mm = n - 2 * k
    while mm < n:
        step, _ = _tower_handle_bases(r, mm)
        emb = step @ emb
        mm += 2
    span = emb
    for _ in range(g - 1):
        span = np.kron(span, emb)
    image = np.einsum("itk,tj->ijk", cyc.arr, span)
    i0, j0 = next(
        (i, j)
        for j in range(span.shape[1])
        for i in range(span.shape[0])
        if span[i, j]
    )
    c_vec = image[i0, j0].astype(object)
    residual = image.astype(object) - np.einsum(
        "ij,k->ijk", span.astype(object), c_vec
    )
    if not _array_is_zero(rep.field, rep.m, residual):
        raise ValueError("orbit sum does not act as a scalar on the embedding")
    return CycMat._vec_to_elt(rep.field, c_vec, rep.field.level // rep.m)


# ---------------------------------------------------------------------------
# minus-parity label audit at genus one
# ---------------------------------------------------------------------------

@dataclass
class LabelAuditReport:
    p: int
    labels: tuple  # tuple of tuples of FactorLabel (odd minus-parity)
    total_dim: int
    minus_dim: int

    @property
    def match(self):
        return self.total_dim == self.minus_dim


def su2_so3_labels(p):
    """Tensor summands with an odd number of odd-parity factors, genus one."""
    if p < 2:
        raise ValueError("level must be at least 2")
    tree = decomposition_tree(p, 1)
    chosen = []
    total = 0
    for tensor in tree.factors:
        minus_count = sum(1 for lab in tensor if lab.parity == "-")
        if minus_count % 2 == 1:
            chosen.append(tensor)
            total += int(np.prod([lab.dim for lab in tensor]))
    minus_dim = _parity_dims(p, 1)[1]
    return LabelAuditReport(p, tuple(chosen), total, minus_dim)

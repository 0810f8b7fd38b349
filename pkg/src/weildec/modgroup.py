"""Finite symplectic groups over Z/NZ.

SL2 enumeration and word decomposition into the S/T generators, the
conjugacy-class machinery for SL2(Z/2^nZ) (profile invariants, explicit
class representatives with their sizes, the (l, x, s) census), the two
quadratic-congruence counting lemmas, lifting counts mod 2^(n+1), and the
orbit census of (Z/NZ)^(2g) under the transvection generators.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from math import gcd

# ---------------------------------------------------------------------------
# basic SL2 arithmetic on (a, b, c, d) tuples
# ---------------------------------------------------------------------------

IDENTITY = (1, 0, 0, 1)
S_MAT = (0, 1, -1, 0)


def mat_mul(M, P, N):
    a, b, c, d = M
    e, f, g, h = P
    return ((a * e + b * g) % N, (a * f + b * h) % N,
            (c * e + d * g) % N, (c * f + d * h) % N)


def mat_inv(M, N):
    a, b, c, d = M
    return (d % N, (-b) % N, (-c) % N, a % N)


def mat_neg(M, N):
    return tuple((-x) % N for x in M)


def t_power(k, N):
    return (1, k % N, 0, 1)


def det(M, N):
    a, b, c, d = M
    return (a * d - b * c) % N


def sl2_order(N):
    out = N ** 3
    m = N
    p = 2
    while p * p <= m:
        if m % p == 0:
            out = out - out // (p * p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out = out - out // (m * m)
    return out


def sl2_enumerate(N, bound=64):
    """Stream every element of SL2(Z/NZ) exactly once."""
    if N > bound:
        raise ValueError("modulus %d exceeds enumeration bound %d" % (N, bound))
    if N == 1:
        yield (0, 0, 0, 0)
        return
    units_inv = {a: pow(a, -1, N) for a in range(N) if gcd(a, N) == 1}
    for a in range(N):
        inv_a = units_inv.get(a)
        if inv_a is not None:
            for b in range(N):
                for c in range(N):
                    yield (a, b, c, (inv_a * (1 + b * c)) % N)
        else:
            g = gcd(a, N)
            for b in range(N):
                for c in range(N):
                    r = (1 + b * c) % N
                    if r % g:
                        continue
                    # solve a*d = r (mod N): d0 mod N/g, g solutions
                    ag, rg, Ng = a // g, r // g, N // g
                    d0 = (rg * pow(ag, -1, Ng)) % Ng
                    for k in range(g):
                        yield (a, b, c, d0 + k * Ng)


# ---------------------------------------------------------------------------
# words in the generators
# ---------------------------------------------------------------------------

def eval_word(word, N):
    """word: list of tokens ('S', e) with e = +-1 or ('T', k)."""
    cur = IDENTITY
    for tok in word:
        kind, val = tok
        if kind == "S":
            g = S_MAT if val == 1 else mat_inv(S_MAT, N)
        elif kind == "T":
            g = t_power(val, N)
        else:
            raise ValueError("bad token %r" % (tok,))
        cur = mat_mul(cur, tuple(x % N for x in g), N)
    return cur


def _rep(x, N):
    """Representative of x mod N in (-N/2, N/2]."""
    x %= N
    if x > N // 2:
        x -= N
    return x


def word_decompose(M, N, rng=None):
    """A word in S and T-powers evaluating to M in SL2(Z/NZ).

    Deterministic by default.  Passing an `rng` prepends a random prefix
    (and compensates), producing a different but still valid word.
    """
    if det(M, N) != 1:
        raise ValueError("matrix %r is not in SL2(Z/%d)" % (M, N))
    word = []
    cur = tuple(x % N for x in M)
    if rng is not None:
        k = rng.randrange(N)
        word.append(("T", k))
        word.append(("S", 1))
        # cur <- (T^k S)^{-1} M
        pre = mat_mul(t_power(k, N), S_MAT, N)
        cur = mat_mul(mat_inv(pre, N), cur, N)

    # Euclid on the first column via T-shears and S-swaps
    guard = 0
    while cur[2] % N != 0:
        guard += 1
        if guard > 4 * N + 16:
            raise RuntimeError("word decomposition failed to terminate")
        a, c = _rep(cur[0], N), _rep(cur[2], N)
        if a != 0 and c != 0:
            q = round(a / c)
            if q != 0:
                word.append(("T", q % N))
                cur = mat_mul(mat_inv(t_power(q, N), N), cur, N)
                if cur[2] % N == 0:
                    break
        word.append(("S", 1))
        cur = mat_mul(mat_inv(S_MAT, N), cur, N)

    a = cur[0] % N
    if a != 1:
        if a == N - 1:
            word.extend([("S", 1), ("S", 1)])
            cur = mat_neg(cur, N)
        else:
            # cur = diag(a, a^{-1}) * T^t ; peel off the diagonal part using
            # diag(a, a^{-1}) = T^{-a} S T^{-ainv} S T^{-a} S * S^2
            ainv = pow(a, -1, N)
            dword = [("T", (-a) % N), ("S", 1), ("T", (-ainv) % N), ("S", 1),
                     ("T", (-a) % N), ("S", 1), ("S", 1), ("S", 1)]
            word.extend(dword)
            dmat = eval_word(dword, N)
            cur = mat_mul(mat_inv(dmat, N), cur, N)
    if cur[1] % N != 0:
        word.append(("T", cur[1] % N))
        cur = mat_mul(mat_inv(t_power(cur[1], N), N), cur, N)
    assert cur == IDENTITY, (M, cur, word)
    return word


def hensel_lift_count(M, N):
    """Number of lifts of M in SL2(Z/2NZ); 8 for N a power of two."""
    count = 0
    for mask in range(16):
        lifted = tuple((M[i] + N * ((mask >> i) & 1)) % (2 * N) for i in range(4))
        if det(lifted, 2 * N) == 1:
            count += 1
    return count


# ---------------------------------------------------------------------------
# conjugacy invariants mod 2^n
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjProfile:
    n: int
    l: int
    x: int
    tau: int
    s: int

    @property
    def x_class(self):
        return x_class_label(self.l, self.x, self.n)


def x_class_label(l, x, n):
    if l == 0 or l == 1:
        return "1"
    mod = 2 ** (l if l < n else n)
    x %= mod
    if x == 1 % mod:
        return "1"
    if x == (mod - 1) % mod:
        return "-1"
    half = mod // 2
    if x == (half + 1) % mod:
        return "h+1"
    if x == (half - 1) % mod:
        return "h-1"
    raise ValueError("unexpected scalar part x=%d at l=%d" % (x, l))


def _v2(x):
    v = 0
    while x and x % 2 == 0:
        x //= 2
        v += 1
    return v


def conj_profile(M, n):
    """The (l, x, tau, s) invariants of M in SL2(Z/2^nZ)."""
    N = 2 ** n
    a, b, c, d = (v % N for v in M)
    for l in range(n):
        pl = 2 ** l
        if b % pl or c % pl or (a - d) % pl:
            break
        x = a % pl if l > 0 else 0
        u = ((a - x) // pl, b // pl, c // pl, (d - x) // pl)
        if (u[0] % 2, u[1] % 2, u[2] % 2, u[3] % 2) not in ((0, 0, 0, 0), (1, 0, 0, 1)):
            mod_tau = 2 ** (n - l)
            if l == 0:
                tau = (a + d) % N
                s = n if tau == 0 else min(_v2(tau), n)
            else:
                tau = (u[0] * u[3] - u[1] * u[2]) % mod_tau
                s = l + n if tau == 0 else 2 * l + _v2(tau)
            return ConjProfile(n, l, x, tau, s)
    # scalar matrix
    return ConjProfile(n, n, a % N, 0, 2 * n)


# -- representatives --------------------------------------------------------

def rep_a0(tau, c1, n):
    N = 2 ** n
    cinv = pow(c1, -1, N)
    return (1 % N, (cinv * (tau - 2)) % N, c1 % N, (tau - 1) % N)


def rep_al(l, tau, c1, n):
    """Determinant-1 representative with profile (l, x=1, tau)."""
    N = 2 ** n
    cinv = pow(c1, -1, N)
    return (1 % N, (-cinv * (2 ** l) * tau) % N,
            (c1 * 2 ** l) % N, (1 - 4 ** l * tau) % N)


def rep_bl(l, tau, c1, n):
    N = 2 ** n
    h = 2 ** (l - 1)
    cinv = pow(c1, -1, N)
    xinv = pow(1 + h, -1, N)
    d = (1 + h - xinv * (2 ** l + h * h + 4 ** l * tau)) % N
    return ((1 + h) % N, (-cinv * 2 ** l * tau) % N, (c1 * 2 ** l) % N, d)


@dataclass(frozen=True)
class ClassRep:
    matrix: tuple
    l: int
    x_class: str
    tau: int
    size: int


def class_representatives(n):
    """Conjugacy-class representatives of SL2(Z/2^nZ) with class sizes.

    One entry per conjugacy class; sum of sizes is the group order.
    """
    N = 2 ** n
    reps = []

    def add(mat, l, xc, tau, size):
        reps.append(ClassRep(tuple(v % N for v in mat), l, xc, tau % (2 ** (n - l)) if l < n else 0, size))

    # l = 0, keyed by the trace
    for tau in range(N):
        if tau % 2 == 1:
            add(rep_a0(tau, 1, n), 0, "1", tau, 2 ** (2 * n - 1))
        elif tau % 4 == 2 and n >= 3:
            for c1 in (1, 3, 5, 7):
                add(rep_a0(tau, c1, n), 0, "1", tau, 3 * 2 ** (2 * n - 4))
        else:  # tau = 0 mod 4, or any even tau when n = 2
            for c1 in (1, 3):
                add(rep_a0(tau, c1, n), 0, "1", tau, 3 * 2 ** (2 * n - 3))

    # 1 <= l <= n-1, x = 1, plus mirrored families
    for l in range(1, n):
        x1_rows = []  # (matrix, tau, size)
        mod_tau = 2 ** (n - l)
        for tau in range(mod_tau):
            if l == n - 1:
                x1_rows.append((rep_al(l, tau, 1, n), tau, 3))
            elif l == n - 2:
                if tau % 4 in (0, 1):
                    for c1 in (1, 3):
                        x1_rows.append((rep_al(l, tau, c1, n), tau, 6))
                else:
                    x1_rows.append((rep_al(l, tau, 1, n), tau, 12))
            elif l == 1:
                if tau % 8 in (1, 0):
                    for c1 in (1, 3, 5, 7):
                        x1_rows.append((rep_al(l, tau, c1, n), tau, 3 * 2 ** (2 * n - 6)))
                elif tau % 8 in (3, 5, 7):
                    for c1 in (1, tau):
                        x1_rows.append((rep_al(l, tau, c1, n), tau, 3 * 2 ** (2 * n - 5)))
                else:  # tau = 2, 4, 6 mod 8
                    for c1 in (1, 3):
                        x1_rows.append((rep_al(l, tau, c1, n), tau, 3 * 2 ** (2 * n - 5)))
            else:  # 2 <= l <= n-3
                if tau % 8 in (1, 4, 5):
                    for c1 in (1, 3):
                        x1_rows.append((rep_al(l, tau, c1, n), tau, 3 * 2 ** (2 * n - 2 * l - 3)))
                elif tau % 8 in (3, 7):
                    x1_rows.append((rep_al(l, tau, 1, n), tau, 3 * 2 ** (2 * n - 2 * l - 2)))
                elif tau % 8 in (2, 6):
                    for c1 in (1, 5):
                        x1_rows.append((rep_al(l, tau, c1, n), tau, 3 * 2 ** (2 * n - 2 * l - 3)))
                else:  # tau = 0 mod 8
                    for c1 in (1, 3, 5, 7):
                        x1_rows.append((rep_al(l, tau, c1, n), tau, 3 * 2 ** (2 * n - 2 * l - 4)))
        for mat, tau, size in x1_rows:
            add(mat, l, "1", tau, size)
        if l >= 2:
            for mat, tau, size in x1_rows:
                add(mat_neg(mat, N), l, "-1", tau, size)
        if l >= 3:
            for tau in range(mod_tau):
                size = 2 ** (2 * n - 2 * l - 1) if tau % 2 else 3 * 2 ** (2 * n - 2 * l - 1)
                bm = rep_bl(l, tau, 1, n)
                add(bm, l, "h+1", tau, size)
                add(mat_neg(bm, N), l, "h-1", tau, size)

    # l = n: scalar matrices
    scalars = {1 % N, (N - 1) % N}
    if n >= 3:
        scalars |= {(N // 2 + 1) % N, (N // 2 - 1) % N}
    for x in sorted(scalars):
        add((x, 0, 0, x), n, x_class_label(n, x, n), 0, 1)

    return reps


def class_size_bruteforce(M, n):
    """Size of the conjugacy orbit of M, by closure under conjugation."""
    N = 2 ** n
    if N > 8:
        raise ValueError("brute-force class size limited to modulus 8")
    gens = [S_MAT, t_power(1, N)]
    gens = [tuple(x % N for x in g) for g in gens]
    gens += [mat_inv(g, N) for g in gens]
    start = tuple(x % N for x in M)
    orbit = {start}
    stack = [start]
    while stack:
        X = stack.pop()
        for g in gens:
            Y = mat_mul(mat_mul(g, X, N), mat_inv(g, N), N)
            if Y not in orbit:
                orbit.add(Y)
                stack.append(Y)
    return len(orbit)


# -- census -----------------------------------------------------------------

@dataclass(frozen=True)
class CensusRow:
    n: int
    l: int
    x_class: str
    s: object  # int, or None for rows aggregated over s
    count: int
    expected: object  # int, or None when the corollary gives no formula

    @property
    def match(self):
        return self.expected is None or self.count == self.expected


def census_expected(n, l, x_class, s):
    """The seven closed-form counts, when defined."""
    if l == 0:
        if s == 0:
            return 2 ** (3 * n - 2)
        if 1 <= s <= n - 1:
            return 3 * 2 ** (3 * n - s - 3)
        if s == n:
            return 3 * 2 ** (2 * n - 2)
        return None
    if l == n:
        return 1
    if x_class == "1":
        if s == l + n:
            return 3 * 2 ** (2 * n - 2 * l - 2)
        return 3 * 2 ** (3 * n - l - s - 3)
    if x_class == "-1" and l >= 2:
        return 3 * 2 ** (3 * n - 3 * l - 2)
    if x_class in ("h+1", "h-1") and l >= 3:
        return 2 ** (3 * n - 3 * l)
    return None


def census(n):
    """Group all of SL2(Z/2^nZ) by (l, x-class, s) and compare counts."""
    if not 2 <= n <= 6:
        raise ValueError("census supports 2 <= n <= 6")
    N = 2 ** n
    tallies = {}
    for M in sl2_enumerate(N):
        pr = conj_profile(M, n)
        if pr.l == n:
            key = (pr.l, x_class_label(n, pr.x, n), None)
        elif pr.l == 0 or pr.x_class == "1":
            key = (pr.l, pr.x_class, pr.s)
        else:
            key = (pr.l, pr.x_class, None)  # corollary aggregates over s here
        tallies[key] = tallies.get(key, 0) + 1
    rows = []
    for (l, xc, s) in sorted(tallies, key=lambda k: (k[0], k[1], -1 if k[2] is None else k[2])):
        expected = census_expected(n, l, xc, s) if (s is not None or l == n or xc in ("-1", "h+1", "h-1")) else None
        rows.append(CensusRow(n, l, xc, s, tallies[(l, xc, s)], expected))
    return rows


def census_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["n", "l", "x_class", "s", "count", "expected", "match"])
    for r in rows:
        w.writerow([r.n, r.l, r.x_class, "" if r.s is None else r.s, r.count,
                    "" if r.expected is None else r.expected,
                    "yes" if r.match else "no"])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# counting lemmas
# ---------------------------------------------------------------------------

def count_quadratic_solutions(A, B, C, D, n, even_cross=False):
    """Brute-force count of A x^2 + B xy + C y^2 = D (mod 2^n), with the
    cross term doubled (A x^2 + 2B xy + C y^2) when even_cross is set."""
    if n > 10:
        raise ValueError("exponent too large")
    if even_cross:
        if A % 2 == 0 or D % 2 == 0:
            raise ValueError("even-cross form needs A and D odd")
    else:
        if A % 2 == 0 or B % 2 == 0 or D % 2 == 0:
            raise ValueError("odd-cross form needs A, B, D odd")
    N = 2 ** n
    Beff = 2 * B if even_cross else B
    count = 0
    for x in range(N):
        ax2 = A * x * x
        for y in range(N):
            if (ax2 + Beff * x * y + C * y * y - D) % N == 0:
                count += 1
    return count


def expected_quadratic_solutions(A, B, C, D, n, even_cross=False):
    """Closed-form solution counts from the two counting lemmas."""
    if not even_cross:
        # A, B, D odd
        return 2 ** (n - 1) if C % 2 == 0 else 3 * 2 ** (n - 1)
    delta = (A * C - B * B) % 8
    ad = (A * D) % 8
    if n == 1:
        return 2
    if n == 2:
        if delta % 4 in (2, 3):
            return 4
        return 8 if (A * D) % 4 == 1 else 0
    if delta == 0:
        return 2 ** (n + 2) if ad == 1 else 0
    if delta in (2, 4, 6):
        return 2 ** (n + 1) if ad in (1, (1 + delta) % 8) else 0
    if delta in (1, 5):
        return 2 ** (n + 1) if ad in (1, 5) else 0
    return 2 ** n  # delta = 3, 7


# ---------------------------------------------------------------------------
# symplectic groups of higher genus: transvection generators, orbit census
# ---------------------------------------------------------------------------

def symplectic_form(u, v, g, N):
    """omega(u, v) in coordinates (m1, n1, ..., mg, ng)."""
    acc = 0
    for i in range(g):
        acc += u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i]
    return acc % N

def _transvection_matrix(gamma, g, N):
    dim = 2 * g
    cols = []
    for j in range(dim):
        e = [0] * dim
        e[j] = 1
        w = symplectic_form(e, gamma, g, N)
        col = [(e[i] + w * gamma[i]) % N for i in range(dim)]
        cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))


def sp_generators(g, N):
    """Transvection matrices generating Sp_2g(Z/NZ): one per twist curve."""
    gammas = []
    for i in range(g):
        x = [0] * (2 * g)
        x[2 * i] = 1
        gammas.append(tuple(x))
        y = [0] * (2 * g)
        y[2 * i + 1] = 1
        gammas.append(tuple(y))
    for i in range(g):
        for j in range(i + 1, g):
            z = [0] * (2 * g)
            z[2 * i] = 1
            z[2 * j] = -1 % N
            gammas.append(tuple(z))
    return [_transvection_matrix(gm, g, N) for gm in gammas]


def sp_apply(M, v, N):
    dim = len(v)
    return tuple(sum(M[i][j] * v[j] for j in range(dim)) % N for i in range(dim))


def sp_closure(g, N, bound=2000):
    """BFS closure of the generator set; returns the group size."""
    gens = sp_generators(g, N)
    gens = gens + [tuple(tuple(r) for r in _mat_inv_general(M, N)) for M in gens]
    ident = tuple(tuple(1 if i == j else 0 for j in range(2 * g)) for i in range(2 * g))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for X in frontier:
            for Gm in gens:
                Y = tuple(tuple(sum(Gm[i][k] * X[k][j] for k in range(2 * g)) % N
                                for j in range(2 * g)) for i in range(2 * g))
                if Y not in seen:
                    seen.add(Y)
                    nxt.append(Y)
        frontier = nxt
        if len(seen) > 10 ** 7:
            raise RuntimeError("closure too large")
    return len(seen)


def _mat_inv_general(M, N):
    """Inverse of a small integer matrix mod N (via adjugate over Z)."""
    import numpy as np
    from fractions import Fraction
    dim = len(M)
    arr = [[Fraction(M[i][j]) for j in range(dim)] for i in range(dim)]
    aug = [row + [Fraction(1) if i == j else Fraction(0) for j in range(dim)]
           for i, row in enumerate(arr)]
    # fraction Gauss-Jordan, then reduce mod N (denominators are units mod N)
    for col in range(dim):
        piv = next(r for r in range(col, dim) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(dim):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for i in range(dim):
        row = []
        for j in range(dim):
            q = aug[i][j + dim]
            row.append((q.numerator * pow(q.denominator, -1, N)) % N)
        out.append(tuple(row))
    return tuple(out)


def divisors(N):
    return [d for d in range(1, N + 1) if N % d == 0]


def sigma0(N):
    """Number of divisors of N."""
    return len(divisors(N))


def orbit_census(N, g):
    """Orbits of (Z/NZ)^(2g) under the transvection generators.

    Returns (count, orbits) where orbits is a list of (delta, size) with
    delta the divisor such that (0, delta, ..., 0, delta) lies in the orbit.
    """
    if N ** (2 * g) > 10 ** 6:
        raise ValueError("lattice too large")
    gens = sp_generators(g, N)
    gens = gens + [_mat_inv_general(M, N) for M in gens]
    seen = set()
    orbits = []
    for first in range(N ** (2 * g)):
        v = []
        t = first
        for _ in range(2 * g):
            v.append(t % N)
            t //= N
        v = tuple(v)
        if v in seen:
            continue
        orbit = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for M in gens:
                w = sp_apply(M, u, N)
                if w not in orbit:
                    orbit.add(w)
                    stack.append(w)
        seen |= orbit
        delta = None
        for d in divisors(N):
            probe = tuple(0 if i % 2 == 0 else d % N for i in range(2 * g))
            if probe in orbit:
                delta = d
                break
        orbits.append((delta, len(orbit)))
    return len(orbits), orbits

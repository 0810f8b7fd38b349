"""Fast exact matrices over the group ring Z[A]/(A^m - 1), with a tracked
rational scale and a power of the auxiliary 24th-ish root used by the
explicit modular-group lift.

An entry is an integer vector of length m: the coefficients of powers of A.
A is realised in the cyclotomic working field as zeta_L^(L/m), so comparing
two CycMat values means pushing both down to canonical field coordinates.
All arithmetic here is integer numpy work; nothing is approximated.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .ringmat import RingMatrix


class CycMat:
    __slots__ = ("m", "arr", "scale", "beta")

    def __init__(self, m, arr, scale=Fraction(1), beta=0):
        self.m = m
        self.arr = np.asarray(arr, dtype=np.int64)
        self.scale = Fraction(scale)
        self.beta = beta % 24

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, m, nrows, ncols):
        return cls(m, np.zeros((nrows, ncols, m), dtype=np.int64))

    @classmethod
    def identity(cls, m, n):
        arr = np.zeros((n, n, m), dtype=np.int64)
        arr[np.arange(n), np.arange(n), 0] = 1
        return cls(m, arr)

    @classmethod
    def monomial_diag(cls, m, exps, scale=Fraction(1), beta=0):
        """diag(A^exps[0], ..., A^exps[n-1])."""
        n = len(exps)
        arr = np.zeros((n, n, m), dtype=np.int64)
        for i, e in enumerate(exps):
            arr[i, i, e % m] = 1
        return cls(m, arr, scale, beta)

    @classmethod
    def from_exponent_matrix(cls, m, exps, scale=Fraction(1), beta=0):
        """Dense matrix with entry A^exps[i][j]."""
        exps = np.asarray(exps)
        n, c = exps.shape
        arr = np.zeros((n, c, m), dtype=np.int64)
        ii, jj = np.meshgrid(np.arange(n), np.arange(c), indexing="ij")
        arr[ii, jj, np.mod(exps, m)] = 1
        return cls(m, arr, scale, beta)

    @property
    def nrows(self):
        return self.arr.shape[0]

    @property
    def ncols(self):
        return self.arr.shape[1]

    # -- arithmetic -------------------------------------------------------
    def _conv_index(self):
        u = np.arange(self.m)
        return (u[None, :] - u[:, None]) % self.m  # idx[u, v] = (v - u) mod m

    def __matmul__(self, other):
        if self.m != other.m:
            raise ValueError("mixed group-ring orders")
        idx = self._conv_index()
        bsh = other.arr[:, :, idx]  # (k, j, u, v)
        arr = np.einsum("iku,kjuv->ijv", self.arr, bsh)
        return CycMat(self.m, arr, self.scale * other.scale, self.beta + other.beta)

    def __add__(self, other):
        a, b = self._common_scale(other)
        num_a, num_b, scale = a
        return CycMat(self.m, num_a * self.arr + num_b * other.arr, scale, b)

    def __sub__(self, other):
        a, b = self._common_scale(other)
        num_a, num_b, scale = a
        return CycMat(self.m, num_a * self.arr - num_b * other.arr, scale, b)

    def _common_scale(self, other):
        if self.m != other.m or self.beta != other.beta:
            raise ValueError("cannot combine: different ring data")
        s, t = self.scale, other.scale
        from math import gcd, lcm
        den = lcm(s.denominator, t.denominator)
        g = gcd(s.numerator * (den // s.denominator) if s else 0,
                t.numerator * (den // t.denominator) if t else 0)
        if g == 0:
            g = 1
        common = Fraction(g, den)
        num_a = int(s / common) if s else 0
        num_b = int(t / common) if t else 0
        return (num_a, num_b, common), self.beta

    def scaled(self, c):
        return CycMat(self.m, self.arr, self.scale * Fraction(c), self.beta)

    def mul_root(self, e):
        """Multiply by A^e (cyclic roll of every entry)."""
        idx = (np.arange(self.m) - e) % self.m
        return CycMat(self.m, self.arr[:, :, idx], self.scale, self.beta)

    def dagger(self):
        idx = (-np.arange(self.m)) % self.m
        arr = self.arr[:, :, idx].transpose(1, 0, 2)
        return CycMat(self.m, arr, self.scale, -self.beta)

    def trace_vector(self):
        n = min(self.nrows, self.ncols)
        return self.arr[np.arange(n), np.arange(n)].sum(axis=0)

    def kron(self, other):
        if self.m != other.m:
            raise ValueError("mixed group-ring orders")
        idx = self._conv_index()
        bsh = other.arr[:, :, idx]  # (k, l, u, v)
        arr = np.einsum("iju,kluv->ikjlv", self.arr, bsh)
        r = self.nrows * other.nrows
        c = self.ncols * other.ncols
        return CycMat(self.m, arr.reshape(r, c, self.m),
                      self.scale * other.scale, self.beta + other.beta)

    # -- conversion to canonical field elements ---------------------------
    def to_ring(self, field):
        """RingMatrix over `field` (which must contain A = zeta^(L/m))."""
        L = field.level
        if L % self.m:
            raise ValueError("field level %d does not contain order-%d root" % (L, self.m))
        step = L // self.m
        beta_elt = field.root_of_unity((L // 24) * self.beta)
        factor = beta_elt * self.scale
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(self.ncols):
                row.append(self._vec_to_elt(field, self.arr[i, j], step) * factor)
            rows.append(row)
        return RingMatrix(field, rows)

    @staticmethod
    def _vec_to_elt(field, vec, step):
        from .cyclo import CycloElt
        L = field.level
        acc = [0] * field.degree
        for k in range(len(vec)):
            v = int(vec[k])
            if v:
                prow = field.power_rows[(k * step) % L]
                for t in range(field.degree):
                    if prow[t]:
                        acc[t] += v * prow[t]
        return CycloElt(field, [Fraction(x) for x in acc])

    def entry(self, field, i, j):
        """Canonical field element at position (i, j)."""
        step = field.level // self.m
        elt = self._vec_to_elt(field, self.arr[i, j], step)
        return elt * field.root_of_unity((field.level // 24) * self.beta) * self.scale

    def trace_elt(self, field):
        step = field.level // self.m
        elt = self._vec_to_elt(field, self.trace_vector(), step)
        return elt * field.root_of_unity((field.level // 24) * self.beta) * self.scale

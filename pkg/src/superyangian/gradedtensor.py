"""Sparse graded tensors over the superspace C^(m|n).

Basis indices run 1..m+n; index i has parity 0 for i <= m and parity 1 for
i > m.  A GradedTensor of arity k is an element of End(V)^{(x)k} (x) A written
as a sparse dict

    ((i1,j1), ..., (ik,jk))  ->  coefficient in A,

standing for e_{i1 j1} (x) ... (x) e_{ik jk} (x) coefficient.  The coefficient
ring A may be Fraction (even) or any object implementing +, *, unary -, bool
and parity_split(dim) -> (even part, odd part); multiplication uses the sign
rule of the graded tensor product of superalgebras:

    (a1 (x) ... (x) ak)(b1 (x) ... (x) bk)
        = (-1)^{sum_{c<d} |b_c||a_d|} a1 b1 (x) ... (x) ak bk,

with the coefficient slot treated as the last factor.
"""

from fractions import Fraction


class SuperDim:
    """Dimension data for gl(m|n)."""

    __slots__ = ("m", "n")

    def __init__(self, m, n):
        if m < 0 or n < 0 or m + n < 1:
            raise ValueError("need m, n >= 0 and m + n >= 1")
        self.m = m
        self.n = n

    @property
    def total(self):
        return self.m + self.n

    def parity(self, i):
        assert 1 <= i <= self.m + self.n, i
        return 0 if i <= self.m else 1

    def indices(self):
        return range(1, self.m + self.n + 1)

    def __eq__(self, other):
        return isinstance(other, SuperDim) and (self.m, self.n) == (other.m, other.n)

    def __hash__(self):
        return hash((self.m, self.n))

    def __repr__(self):
        return "SuperDim(%d, %d)" % (self.m, self.n)


def coeff_parity_split(c, dim):
    """Split a coefficient into (even, odd) parts; scalars are even."""
    if isinstance(c, (int, Fraction)):
        return c, 0
    return c.parity_split(dim)


class GradedTensor:
    __slots__ = ("dim", "arity", "entries")

    def __init__(self, dim, arity, entries=None):
        self.dim = dim
        self.arity = arity
        self.entries = {}
        if entries:
            for idx, c in entries.items():
                assert len(idx) == arity, idx
                if c:
                    self.entries[idx] = c

    def unit_parity(self, pair):
        return (self.dim.parity(pair[0]) + self.dim.parity(pair[1])) % 2

    def __getitem__(self, idx):
        return self.entries.get(idx, Fraction(0))

    def __bool__(self):
        return bool(self.entries)

    def is_zero(self):
        return not self.entries

    def map_coeffs(self, f):
        out = {}
        for idx, c in self.entries.items():
            fc = f(c)
            if fc:
                out[idx] = fc
        t = GradedTensor(self.dim, self.arity)
        t.entries = out
        return t

    def scale(self, c):
        """Left-multiply every coefficient by the (even) scalar c."""
        return self.map_coeffs(lambda x: c * x)

    def __add__(self, other):
        assert self.dim == other.dim and self.arity == other.arity
        out = dict(self.entries)
        for idx, c in other.entries.items():
            s = out.get(idx, 0) + c
            if s:
                out[idx] = s
            elif idx in out:
                del out[idx]
        t = GradedTensor(self.dim, self.arity)
        t.entries = out
        return t

    def __neg__(self):
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, GradedTensor):
            return NotImplemented
        return (self - other).is_zero()

    def __mul__(self, other):
        """Product in End(V)^{(x)k} (x) A with Koszul signs."""
        assert self.dim == other.dim and self.arity == other.arity
        dim, k = self.dim, self.arity
        by_rows = {}
        for J, y in other.entries.items():
            rows = tuple(p[0] for p in J)
            parJ = [self.unit_parity(p) for p in J]
            by_rows.setdefault(rows, []).append((J, y, parJ, sum(parJ) % 2))
        out = {}
        for I, x in self.entries.items():
            matches = by_rows.get(tuple(p[1] for p in I))
            if not matches:
                continue
            # suf[c] = parity of e_{I_{c+1}} ... e_{I_k}
            suf = [0] * (k + 1)
            for c in range(k - 1, -1, -1):
                suf[c] = (suf[c + 1] + self.unit_parity(I[c])) % 2
            x_even, x_odd = coeff_parity_split(x, dim)
            for J, y, parJ, totJ in matches:
                s0 = sum(parJ[c] * suf[c + 1] for c in range(k)) % 2
                x_eff = x_even - x_odd if totJ else x
                if not x_eff:
                    continue
                c = x_eff * y
                if s0:
                    c = -c
                if not c:
                    continue
                idx = tuple((I[c2][0], J[c2][1]) for c2 in range(k))
                s = out.get(idx, 0) + c
                if s:
                    out[idx] = s
                elif idx in out:
                    del out[idx]
        t = GradedTensor(dim, k)
        t.entries = out
        return t

    def __repr__(self):
        if not self.entries:
            return "GradedTensor(0)"
        bits = []
        for idx in sorted(self.entries):
            bits.append("%s: %s" % ("".join("e[%d,%d]" % p for p in idx), self.entries[idx]))
        return "GradedTensor{%s}" % ", ".join(bits)


def matrix_unit(dim, i, j):
    return GradedTensor(dim, 1, {((i, j),): Fraction(1)})


def identity_tensor(dim, arity, one=Fraction(1)):
    ents = {}

    def rec(prefix):
        if len(prefix) == arity:
            ents[tuple(prefix)] = one
            return
        for i in dim.indices():
            rec(prefix + [(i, i)])

    rec([])
    return GradedTensor(dim, arity, ents)


def permutation_P(dim, one=Fraction(1)):
    """P = sum_{ij} (-1)^{|j|} e_ij (x) e_ji, the graded permutation (P^2 = 1)."""
    ents = {}
    for i in dim.indices():
        for j in dim.indices():
            sgn = -1 if dim.parity(j) else 1
            ents[((i, j), (j, i))] = sgn * one
    return GradedTensor(dim, 2, ents)


def transpose_tau(A, factor):
    """Apply tau: e_ij -> (-1)^{|i||j| + |i|} e_ji to one tensor factor (0-based).

    tau is a super-anti-automorphism of End(V); tau^2(e_ij) = (-1)^{|i|+|j|} e_ij.
    """
    assert 0 <= factor < A.arity
    out = {}
    for idx, c in A.entries.items():
        i, j = idx[factor]
        pi, pj = A.dim.parity(i), A.dim.parity(j)
        nidx = idx[:factor] + ((j, i),) + idx[factor + 1:]
        nc = -c if (pi * pj + pi) % 2 else c
        s = out.get(nidx, 0) + nc
        if s:
            out[nidx] = s
        elif nidx in out:
            del out[nidx]
    t = GradedTensor(A.dim, A.arity)
    t.entries = out
    return t


def embed(A, arity, positions):
    """Place A's factors at the given (sorted, 0-based) positions, identity elsewhere.

    An algebra map End^{(x)j} -> End^{(x)arity}: the identity padding is even, so
    embed(A)*embed(B) = embed(A*B).
    """
    assert len(positions) == A.arity
    assert all(0 <= p < arity for p in positions)
    assert list(positions) == sorted(set(positions))
    others = [p for p in range(arity) if p not in set(positions)]
    ents = {}

    def fill(idx_a, c):
        def rec(pos_i, cur):
            if pos_i == len(others):
                full = [None] * arity
                for a, p in enumerate(positions):
                    full[p] = idx_a[a]
                for b, p in enumerate(others):
                    full[p] = cur[b]
                key = tuple(full)
                s = ents.get(key, 0) + c
                if s:
                    ents[key] = s
                elif key in ents:
                    del ents[key]
                return
            for i in A.dim.indices():
                rec(pos_i + 1, cur + [(i, i)])

        rec(0, [])

    for idx_a, c in A.entries.items():
        fill(idx_a, c)
    t = GradedTensor(A.dim, arity)
    t.entries = ents
    return t


def graded_mul(A, B):
    return A * B

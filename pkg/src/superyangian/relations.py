"""Defining relations of the double Yangian of gl(m|n) and PBW normal forms.

Generator series and embedding signs:

    T(u)  = sum_ij e_ij (x) (-1)^{|i||j|+|j|} t_ij(u),   t_ij(u)  = delta_ij + sum_{r>=1} t_ij^(r) u^-r
    T+(v) = sum_ij e_ij (x) (-1)^{|i||j|+|j|} t+_ij(v),  t+_ij(v) = delta_ij - sum_{s>=1} t_ij^(-s) v^{s-1}

With these signs all matrix products are entrywise sign-free.  The relation
families:

  * Yangian side, closed form:
      [t_ij^(r), t_kl^(s)] = (-1)^{|i||j|+|i||k|+|j||k|}
          sum_{a=1}^{min(r,s)} ( t_kj^(a-1) t_il^(r+s-a) - t_kj^(r+s-a) t_il^(a-1) ),
      with t^(0) = delta.
  * Dual side, closed form:
      [t_ij^(-r), t_kl^(-s)] = (-1)^{...same...} ( delta_kj t_il^(-r-s)
          - delta_il t_kj^(-r-s)
          + sum_{a=1}^{min(r,s)} ( t_kj^(-r-s+a-1) t_il^(-a) - t_kj^(-a) t_il^(-r-s+a-1) ) ).
  * Mixed: extracted from the cross relation
      Rhat(u-v+C/2) T1(u) T2+(v) = T2+(v) T1(u) Rhat(u-v-C/2),
    where Rhat = R at level zero and Rhat = Rbar = g*R at the central level
    (or at a numeric level c, with C -> c; c != 0 needs m != n).

normal_form rewrites words into PBW order: dual letters before Yangian
letters; within a side lexicographic in (i, j); equal index pairs by label
ascending (so dual labels -r descend in r); odd letters square to half their
self-bracket.  Every non-swap word a rewrite emits strictly decreases the
measure (Yangian degree, deg2 above the floor, length, inversions) -- this is
asserted on every cached pair -- so the worklist terminates.  A floor is
mandatory once dual letters are present: dual corrections descend in deg2
without bound, and words with deg2 <= floor are dropped.
"""

from fractions import Fraction

from .freealg import (
    Gen,
    NCPoly,
    gen_deg2,
    gen_key,
    gen_parity,
    word_deg1,
    word_deg2,
)
from .gradedtensor import GradedTensor, embed, permutation_P
from .series import Laurent, LaurentWindow, geom_expand, yang_R


def sign_embed(dim, i, j):
    """(-1)^{|i||j| + |j|}: the sign in T = sum e_ij (x) sign * t_ij(u)."""
    pi, pj = dim.parity(i), dim.parity(j)
    return -1 if (pi * pj + pj) % 2 else 1


def koszul3(dim, i, j, k):
    """(-1)^{|i||j| + |i||k| + |j||k|}, the prefactor of both closed brackets."""
    pi, pj, pk = dim.parity(i), dim.parity(j), dim.parity(k)
    return -1 if (pi * pj + pi * pk + pj * pk) % 2 else 1


def _piece(p, k, j, q, i, l):
    """t_kj^(p) t_il^(q) with the convention t^(0) = delta."""
    if p == 0 and q == 0:
        return NCPoly.scalar(1) if (k == j and i == l) else NCPoly.zero()
    if p == 0:
        return NCPoly.gen(q, i, l) if k == j else NCPoly.zero()
    if q == 0:
        return NCPoly.gen(p, k, j) if i == l else NCPoly.zero()
    return NCPoly.gen(p, k, j) * NCPoly.gen(q, i, l)


def yangian_bracket(dim, i, j, r, k, l, s):
    """[t_ij^(r), t_kl^(s)] for r, s >= 1."""
    assert r >= 1 and s >= 1
    out = NCPoly.zero()
    for a in range(1, min(r, s) + 1):
        out = out + _piece(a - 1, k, j, r + s - a, i, l)
        out = out - _piece(r + s - a, k, j, a - 1, i, l)
    return out * koszul3(dim, i, j, k)


def dual_bracket(dim, i, j, r, k, l, s):
    """[t_ij^(-r), t_kl^(-s)] for r, s >= 1 (arguments are the positive depths)."""
    assert r >= 1 and s >= 1
    out = NCPoly.zero()
    if k == j:
        out = out + NCPoly.gen(-r - s, i, l)
    if i == l:
        out = out - NCPoly.gen(-r - s, k, j)
    for a in range(1, min(r, s) + 1):
        out = out + NCPoly.gen(-r - s + a - 1, k, j) * NCPoly.gen(-a, i, l)
        out = out - NCPoly.gen(-a, k, j) * NCPoly.gen(-r - s + a - 1, i, l)
    return out * koszul3(dim, i, j, k)


def gen_matrix(dim, side, window, var="u"):
    """The arity-1 generator matrix T(u) or T+(var) over the free algebra.

    Entries are Laurent polynomials in var whose coefficients carry the
    embedding sign, so that matrix products are entrywise sign-free.  The
    Yangian side is built to the window's lower cap on var, the dual side to
    the upper cap (labels s with s - 1 <= hi).
    """
    win = window if isinstance(window, LaurentWindow) else LaurentWindow(window)
    ents = {}
    for i in dim.indices():
        for j in dim.indices():
            sgn = sign_embed(dim, i, j)
            terms = {}
            if i == j:
                terms[(0,)] = Fraction(1)
            if side == "yangian":
                lo = win.lo(var)
                assert lo is not None
                for r in range(1, -lo + 1):
                    terms[(-r,)] = NCPoly.gen(r, i, j, coeff=sgn)
            elif side == "dual":
                hi = win.hi(var)
                assert hi is not None
                for s in range(1, hi + 2):
                    c = terms.get((s - 1,), 0) + NCPoly.gen(-s, i, j, coeff=-sgn)
                    terms[(s - 1,)] = c
            else:
                raise ValueError("side must be 'yangian' or 'dual'")
            L = Laurent((var,), win, terms)
            if L:
                ents[((i, j),)] = L
    return GradedTensor(dim, 1, ents)


def _as_poly(c):
    if isinstance(c, (int, Fraction)):
        return NCPoly.scalar(c)
    assert isinstance(c, NCPoly), type(c)
    return c


class BracketTable:
    """Relation tables and the PBW rewriting engine at a fixed level.

    level: "zero", "central" (coefficients in Q[C]), or a number c (the
    central relations specialized at C = c; c != 0 requires m != n).
    """

    def __init__(self, dim, level="zero"):
        self.dim = dim
        if level == "zero":
            level = Fraction(0)
        if isinstance(level, (int, Fraction)) and not isinstance(level, bool):
            level = Fraction(level)
            if level and dim.m == dim.n:
                raise ValueError("a nonzero level needs m != n (no g-series at m = n)")
        elif level != "central":
            raise ValueError("level must be 'zero', 'central', or a number")
        if level == "central" and dim.m == dim.n:
            raise ValueError("the central level needs m != n (no g-series at m = n)")
        self.level = level
        self._pairs = {}
        self._nf_words = {}
        self._M = None
        self._Mcap = (0, 0)

    # -- closed families -------------------------------------------------

    def yangian_bracket(self, i, j, r, k, l, s):
        return yangian_bracket(self.dim, i, j, r, k, l, s)

    def dual_bracket(self, i, j, r, k, l, s):
        return dual_bracket(self.dim, i, j, r, k, l, s)

    # -- mixed family through the cross relation -------------------------

    def _cross_R(self, window, upper, inverse):
        """Rhat(u - v + C/2) resp. Rhat(u - v - C/2) for this table's level."""
        if self.level == "central":
            shift = NCPoly.c_power(1, coeff=Fraction(1, 2) if upper else Fraction(-1, 2))
            return yang_R(self.dim, window, u="u", v="v", shift=shift,
                          normalized=True, inverse=inverse)
        c = self.level
        if not c:
            return yang_R(self.dim, window, u="u", v="v", inverse=inverse)
        shift = c / 2 if upper else -c / 2
        return yang_R(self.dim, window, u="u", v="v", shift=shift,
                      normalized=True, inverse=inverse)

    def _ensure_M(self, r, s):
        need = (max(r, self._Mcap[0], 3), max(s, self._Mcap[1], 3))
        if self._M is not None and need == self._Mcap:
            return
        R0, S0 = need
        win = LaurentWindow({"u": (-R0, 0), "v": (0, S0 - 1)})
        T1 = embed(gen_matrix(self.dim, "yangian", LaurentWindow({"u": (-R0, 0)}), "u"), 2, (0,))
        T2p = embed(gen_matrix(self.dim, "dual", LaurentWindow({"v": (0, S0 - 1)}), "v"), 2, (1,))
        Rl = self._cross_R(win, upper=True, inverse=True)
        Rr = self._cross_R(win, upper=False, inverse=False)
        self._M = Rl * T2p * T1 * Rr
        self._Mcap = need

    def _mixed_replacement(self, x, y):
        """x*y rewritten with the dual letter first: t_ij^(r) t_kl^(-s) -> ..."""
        r, s = x.label, -y.label
        assert r >= 1 and s >= 1
        self._ensure_M(r, s)
        dim = self.dim
        i, j, k, l = x.i, x.j, y.i, y.j
        ent = self._M.entries.get(((i, j), (k, l)))
        co = _as_poly(ent.coeff(u=-r, v=s - 1)) if ent is not None else NCPoly.zero()
        pi, pj, pk, pl = (dim.parity(i), dim.parity(j), dim.parity(k), dim.parity(l))
        sigma = pi * pj + pj + pk * pl + pl + (pi + pj) * (pk + pl)
        out = -co if sigma % 2 == 0 else co
        if s == 1 and k == l:
            out = out + NCPoly.gen(r, i, j)
        # the bare high-degree delta contribution must have cancelled: the
        # only word of full Yangian degree left is the graded swap
        for (w, _cp) in out.terms:
            if word_deg1(w) >= r:
                assert w == (y, x), (x, y, w)
        return out

    def mixed_bracket(self, i, j, r, k, l, s):
        """[t_ij^(r), t_kl^(-s)] for r, s >= 1 at this table's level."""
        x, y = Gen(r, i, j), Gen(-s, k, l)
        repl = self._mixed_replacement(x, y)
        sgn = -1 if gen_parity(x, self.dim) * gen_parity(y, self.dim) else 1
        return repl - NCPoly.from_word((y, x), coeff=sgn)

    # -- rewriting --------------------------------------------------------

    def _pair_rewrite(self, x, y):
        """NCPoly equal to x*y, with every word except the swap measure-smaller."""
        key = (x, y)
        hit = self._pairs.get(key)
        if hit is not None:
            return hit
        dim = self.dim
        px, py = gen_parity(x, dim), gen_parity(y, dim)
        if x == y:
            assert px, "even squares are already ordered"
            if x.label > 0:
                br = self.yangian_bracket(x.i, x.j, x.label, y.i, y.j, y.label)
            else:
                br = self.dual_bracket(x.i, x.j, -x.label, y.i, y.j, -y.label)
            repl = br * Fraction(1, 2)
        else:
            if x.label > 0 and y.label > 0:
                br = self.yangian_bracket(x.i, x.j, x.label, y.i, y.j, y.label)
            elif x.label < 0 and y.label < 0:
                br = self.dual_bracket(x.i, x.j, -x.label, y.i, y.j, -y.label)
            else:
                assert x.label > 0 and y.label < 0, (x, y)
                br = self.mixed_bracket(x.i, x.j, x.label, y.i, y.j, -y.label)
            sgn = -1 if px * py else 1
            repl = NCPoly.from_word((y, x), coeff=sgn) + br
        self._assert_measure(x, y, repl)
        self._pairs[key] = repl
        return repl

    def _assert_measure(self, x, y, repl):
        d0 = gen_deg2(x) + gen_deg2(y)
        for (w, _cp) in repl.terms:
            # rewriting never raises deg2, which keeps floor-dropping sound
            assert word_deg2(w) <= d0, (x, y, w)
            if w == (y, x) and x != y:
                continue
            if x.label > 0 and y.label > 0:
                assert word_deg1(w) < x.label + y.label, (x, y, w)
            elif x.label < 0 and y.label < 0:
                d = word_deg2(w)
                assert d < d0 or (d == d0 and len(w) == 1), (x, y, w)
            else:
                assert word_deg1(w) < x.label, (x, y, w)

    @staticmethod
    def _first_violation(word, dim):
        for q in range(len(word) - 1):
            a, b = word[q], word[q + 1]
            ka, kb = gen_key(a), gen_key(b)
            if ka > kb or (ka == kb and gen_parity(a, dim)):
                return q
        return None

    def _nf_word(self, word, floor):
        """Normal form of a single word as a terms dict, cached per floor.

        Central powers produced by rewriting appear as cpow offsets relative
        to the input word, so callers add their own cpow on top.
        """
        hit = self._nf_words.get((word, floor))
        if hit is not None:
            return hit
        dim = self.dim
        acc = {}
        work = {(word, 0): Fraction(1)}
        while work:
            (w, cpow), coeff = work.popitem()
            if not coeff:
                continue
            done = self._nf_words.get((w, floor)) if w != word else None
            if done is not None:
                for (w2, cp2), c2 in done.items():
                    key = (w2, cpow + cp2)
                    s = acc.get(key, 0) + coeff * c2
                    if s:
                        acc[key] = s
                    elif key in acc:
                        del acc[key]
                continue
            q = self._first_violation(w, dim)
            if q is None:
                key = (w, cpow)
                s = acc.get(key, 0) + coeff
                if s:
                    acc[key] = s
                elif key in acc:
                    del acc[key]
                continue
            repl = self._pair_rewrite(w[q], w[q + 1])
            for (w2, cp2), c2 in repl.terms.items():
                nw = w[:q] + w2 + w[q + 2:]
                if floor is not None and word_deg2(nw) <= floor:
                    continue
                key = (nw, cpow + cp2)
                s = work.get(key, 0) + coeff * c2
                if s:
                    work[key] = s
                elif key in work:
                    del work[key]
        self._nf_words[(word, floor)] = acc
        return acc

    def normal_form(self, p, floor=None):
        """Rewrite p into PBW-ordered words, dropping words of deg2 <= floor."""
        if floor is None:
            for (w, _cp) in p.terms:
                assert all(g.label > 0 for g in w), \
                    "normal_form needs a floor once dual letters appear"
        acc = {}
        for (w, cp), c in p.terms.items():
            if floor is not None and word_deg2(w) <= floor:
                continue
            for (w2, cp2), c2 in self._nf_word(w, floor).items():
                key = (w2, cp + cp2)
                s = acc.get(key, 0) + c * c2
                if s:
                    acc[key] = s
                elif key in acc:
                    del acc[key]
        out = NCPoly()
        out.terms = acc
        return out

    def normal_form_laurent(self, L, floor=None):
        return L.map_coeffs(lambda c: self.normal_form(_as_poly(c), floor))

    def normal_form_tensor(self, T, floor=None):
        return T.map_coeffs(lambda L: self.normal_form_laurent(L, floor))


def normal_form(dim, p, floor=None, level="zero"):
    return BracketTable(dim, level).normal_form(p, floor)


# -- RTT extraction used by the relation-equivalence checks ----------------


class RTTFamily:
    """One RTT relation family with its exchange matrix built once.

    The matrix is expanded to label depth D, from which every bracket with
    r + s <= D can be extracted; building once and extracting many is far
    cheaper than rebuilding the product per label pair.
    """

    def __init__(self, dim, family, D, level="zero"):
        if family not in ("yy", "dd", "yd", "dy"):
            raise ValueError("unknown family %r" % family)
        self.dim = dim
        self.family = family
        self.D = D
        self.table = BracketTable(dim, level)
        if family == "yy":
            win = LaurentWindow({"u": (-D, 0), "v": (-D, None)})
            T1 = embed(gen_matrix(dim, "yangian", LaurentWindow({"u": (-D, 0)}), "u"), 2, (0,))
            T2 = embed(gen_matrix(dim, "yangian", LaurentWindow({"v": (-D, 0)}), "v"), 2, (1,))
            ker = geom_expand(1, 0, win, u="u", v="v")
            Pk = permutation_P(dim).scale(ker)
            self._M = Pk * (T1 * T2) - (T2 * T1) * Pk
        elif family == "dd":
            win = LaurentWindow({"u": (-2 * D, D - 1), "v": (0, D - 1)})
            T1p = embed(gen_matrix(dim, "dual", LaurentWindow({"u": (0, D - 1)}), "u"), 2, (0,))
            T2p = embed(gen_matrix(dim, "dual", LaurentWindow({"v": (0, D - 1)}), "v"), 2, (1,))
            ker = geom_expand(1, 0, win, u="u", v="v")
            Pk = permutation_P(dim).scale(ker)
            self._M = Pk * (T1p * T2p) - (T2p * T1p) * Pk
        elif family == "dy":
            win = LaurentWindow({"u": (-(2 * D), 0), "v": (0, D)})
            T1 = embed(gen_matrix(dim, "yangian", LaurentWindow({"u": (-D, 0)}), "u"), 2, (0,))
            T2p = embed(gen_matrix(dim, "dual", LaurentWindow({"v": (0, D)}), "v"), 2, (1,))
            Rl = self.table._cross_R(win, upper=True, inverse=False)
            Rr = self.table._cross_R(win, upper=False, inverse=True)
            self._M = Rl * T1 * T2p * Rr

    def bracket(self, i, j, r, k, l, s):
        dim = self.dim
        if self.family == "yd":
            return self.table.mixed_bracket(i, j, r, k, l, s)
        assert r + s <= self.D, "labels exceed the build depth"
        pi, pj, pk, pl = (dim.parity(i), dim.parity(j),
                          dim.parity(k), dim.parity(l))
        sigma = pi * pj + pj + pk * pl + pl + (pi + pj) * (pk + pl)
        phi = -1 if sigma % 2 else 1
        swap = -1 if ((pi + pj) % 2) * ((pk + pl) % 2) else 1
        if self.family == "yy":
            ent = self._M.entries.get(((i, j), (k, l)))
            co = _as_poly(ent.coeff(u=-r, v=-s)) if ent is not None else NCPoly.zero()
            return co * phi
        if self.family == "dd":
            ent = self._M.entries.get(((i, j), (k, l)))
            co = _as_poly(ent.coeff(u=r - 1, v=s - 1)) if ent is not None else NCPoly.zero()
            return co * phi
        # dy: x = t_ij^(-r) (a dual letter, series in v), y = t_kl^(s); the
        # entry ((k,l),(i,j)) of T2+ T1 carries t+_ij(v) t_kl(u) with the
        # plain embedding sign product, no Koszul factor
        ent = self._M.entries.get(((k, l), (i, j)))
        co = _as_poly(ent.coeff(u=-s, v=r - 1)) if ent is not None else NCPoly.zero()
        phi_s = sign_embed(dim, i, j) * sign_embed(dim, k, l)
        xy = co * (-phi_s)
        if r == 1 and i == j:
            xy = xy + NCPoly.gen(s, k, l)
        yx = NCPoly.from_word((Gen(s, k, l), Gen(-r, i, j)))
        return xy - yx * swap


def rtt_implied_bracket(dim, family, i, j, r, k, l, s, level="zero"):
    """The supercommutator implied by the R-matrix relation of a family.

    family "yy": [t_ij^(r), t_kl^(s)]    from R T1 T2  = T2  T1 R
    family "dd": [t_ij^(-r), t_kl^(-s)]  from R T1+T2+ = T2+ T1+ R
    family "yd": [t_ij^(r), t_kl^(-s)]   from the cross relation
    family "dy": [t_ij^(-r), t_kl^(s)]   from the cross relation, other order

    All label arguments are the positive depths r, s >= 1.  For yy and dd
    the relation is applied once, in the arrangement

        T1 T2 - T2 T1 = P k T1 T2 - T2 T1 P k,     k = (u - v)^{-1},

    whose right side, extracted coefficientwise, reproduces the closed
    bracket formulas symbol for symbol (the telescoping sum over a).
    """
    return RTTFamily(dim, family, r + s, level).bracket(i, j, r, k, l, s)

"""Windowed Laurent expansions and the rational R-matrix of gl(m|n).

A Laurent object is a finite sum  sum_e  coeff_e * prod_i var_i^{e_i}, with
coefficients in Q, Q[C] (scalar NCPoly), the free algebra (NCPoly), or a
tensor power of it (TensorPoly).  Every Laurent carries a LaurentWindow: per
variable a pair (lo, hi) of exponent caps (None = unbounded); terms outside
the window are dropped and the object is understood as exact inside it.

Windows stay sound under multiplication here because every series used is
one-sided per variable: large ("u"-type) variables only ever acquire more
negative exponents, small ("v"-type) variables only more positive ones, so a
dropped term can never multiply back into a kept exponent.

The R-matrix is R(x) = 1 - P x^{-1} with P the graded permutation; kernels
like (u - v + shift)^{-p} are expanded in the u-dominant region by
geom_expand.  The normalizing series g(u) = 1 + sum_{t>=1} g_t u^{-t} is the
unique solution of g(u + m - n) = (1 - u^{-2}) g(u) (it exists only for
m != n) and makes Rbar(x) = g(x) R(x) unitary: Rbar(x) Rbar(-x) = 1.
"""

import math
from fractions import Fraction

from .freealg import NCPoly
from .gradedtensor import GradedTensor, identity_tensor, permutation_P


def binom_general(e, j):
    """Binomial coefficient C(e, j) for any integer e and j >= 0, as a Fraction."""
    num = 1
    for t in range(j):
        num *= e - t
    return Fraction(num, math.factorial(j))


class LaurentWindow:
    """Per-variable exponent caps: {var: (lo, hi)}, None meaning no cap."""

    __slots__ = ("caps",)

    def __init__(self, caps=None):
        self.caps = dict(caps or {})

    def merged(self, other):
        caps = dict(self.caps)
        for v, (lo2, hi2) in other.caps.items():
            if v not in caps:
                caps[v] = (lo2, hi2)
                continue
            lo1, hi1 = caps[v]
            lo = lo2 if lo1 is None else (lo1 if lo2 is None else max(lo1, lo2))
            hi = hi2 if hi1 is None else (hi1 if hi2 is None else min(hi1, hi2))
            caps[v] = (lo, hi)
        return LaurentWindow(caps)

    def contains(self, var, e):
        lo, hi = self.caps.get(var, (None, None))
        if lo is not None and e < lo:
            return False
        if hi is not None and e > hi:
            return False
        return True

    def contains_exps(self, vars_, exps):
        return all(self.contains(v, e) for v, e in zip(vars_, exps))

    def lo(self, var):
        return self.caps.get(var, (None, None))[0]

    def hi(self, var):
        return self.caps.get(var, (None, None))[1]

    def __eq__(self, other):
        return isinstance(other, LaurentWindow) and self.caps == other.caps

    def __repr__(self):
        return "LaurentWindow(%r)" % (self.caps,)


def _norm_coeff(c):
    if isinstance(c, NCPoly) and c.is_scalar() and set(c.terms) <= {((), 0)}:
        return c.scalar_part()
    if isinstance(c, int):
        return Fraction(c)
    return c


class Laurent:
    __slots__ = ("vars", "window", "terms")

    def __init__(self, vars_, window, terms=None):
        self.vars = tuple(vars_)
        assert list(self.vars) == sorted(set(self.vars))
        self.window = window if isinstance(window, LaurentWindow) else LaurentWindow(window)
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = _norm_coeff(c)
                if c and self.window.contains_exps(self.vars, e):
                    self.terms[tuple(e)] = c

    @staticmethod
    def const(c, window=None):
        return Laurent((), window or LaurentWindow(), {(): c})

    @staticmethod
    def var_power(var, e, window, coeff=1):
        return Laurent((var,), window, {(e,): coeff})

    def _extended(self, vs):
        if vs == self.vars:
            return self
        pos = [vs.index(v) for v in self.vars]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vs)
            for p, x in zip(pos, e):
                ne[p] = x
            terms[tuple(ne)] = c
        out = Laurent(vs, self.window)
        out.terms = terms
        return out

    def _align(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(other)
        if self.vars == other.vars:
            return self, other, self.vars
        vs = tuple(sorted(set(self.vars) | set(other.vars)))
        return self._extended(vs), other._extended(vs), vs

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)) or isinstance(other, NCPoly):
            other = Laurent.const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        A, B, vs = self._align(other)
        win = A.window.merged(B.window)
        out = {}
        for src in (A.terms, B.terms):
            for e, c in src.items():
                if not win.contains_exps(vs, e):
                    continue
                s = out.get(e, 0) + c
                s = _norm_coeff(s)
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        res = Laurent(vs, win)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = Laurent(self.vars, self.window)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, NCPoly)):
            other = Laurent.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NCPoly)):
            res = Laurent(self.vars, self.window)
            for e, c in self.terms.items():
                nc = _norm_coeff(c * other)
                if nc:
                    res.terms[e] = nc
            return res
        if not isinstance(other, Laurent):
            return NotImplemented
        A, B, vs = self._align(other)
        win = A.window.merged(B.window)
        out = {}
        for e1, c1 in A.terms.items():
            for e2, c2 in B.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if not win.contains_exps(vs, e):
                    continue
                c = c1 * c2
                if not c:
                    continue
                s = out.get(e, 0) + c
                s = _norm_coeff(s)
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        res = Laurent(vs, win)
        res.terms = out
        return res

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, NCPoly):
            # left-multiply coefficients (matters for noncommutative coefficients)
            res = Laurent(self.vars, self.window)
            for e, c in self.terms.items():
                nc = _norm_coeff(other * c)
                if nc:
                    res.terms[e] = nc
            return res
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, NCPoly)):
            other = Laurent.const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        A, B, vs = self._align(other)
        win = A.window.merged(B.window)
        ta = {e: c for e, c in A.terms.items() if win.contains_exps(vs, e)}
        tb = {e: c for e, c in B.terms.items() if win.contains_exps(vs, e)}
        return ta == tb

    def coeff(self, exps=None, **kw):
        """Coefficient at the monomial given by {var: exp} (unlisted vars: 0)."""
        spec = dict(exps or {})
        spec.update(kw)
        key = tuple(spec.pop(v, 0) for v in self.vars)
        assert not spec, "unknown variables: %r" % spec
        return self.terms.get(key, Fraction(0))

    def map_coeffs(self, f):
        res = Laurent(self.vars, self.window)
        for e, c in self.terms.items():
            nc = _norm_coeff(f(c))
            if nc:
                res.terms[e] = nc
        return res

    def parity_split(self, dim):
        even = Laurent(self.vars, self.window)
        odd = Laurent(self.vars, self.window)
        from .gradedtensor import coeff_parity_split

        for e, c in self.terms.items():
            ce, co = coeff_parity_split(c, dim)
            if ce:
                even.terms[e] = ce
            if co:
                odd.terms[e] = co
        return even, odd

    def truncate_to(self, window):
        win = self.window.merged(window)
        res = Laurent(self.vars, win)
        res.terms = {e: c for e, c in self.terms.items() if win.contains_exps(self.vars, e)}
        return res

    def negate_var(self, var):
        """Substitute var -> -var."""
        if var not in self.vars:
            return self
        vi = self.vars.index(var)
        res = Laurent(self.vars, self.window)
        for e, c in self.terms.items():
            res.terms[e] = -c if e[vi] % 2 else c
        return res

    def shift_var(self, var, sigma):
        """Substitute var -> var + sigma and re-expand (var large).

        sigma is a Fraction or a scalar NCPoly (e.g. a multiple of C).  Negative
        powers need a lower cap on var in the window.
        """
        if var not in self.vars or not sigma:
            return self
        vi = self.vars.index(var)
        lo = self.window.lo(var)
        pows = {0: Fraction(1)}

        def sig_pow(j):
            if j not in pows:
                pows[j] = _norm_coeff(sig_pow(j - 1) * sigma)
            return pows[j]

        res = Laurent(self.vars, self.window)
        out = {}
        for e, c in self.terms.items():
            ev = e[vi]
            if ev >= 0:
                jmax = ev
            else:
                assert lo is not None, "shifting %s^%d needs a lower cap" % (var, ev)
                jmax = ev - lo
            for j in range(jmax + 1):
                if not self.window.contains(var, ev - j):
                    continue
                b = binom_general(ev, j)
                if not b:
                    continue
                ne = e[:vi] + (ev - j,) + e[vi + 1:]
                val = c * (b * sig_pow(j))
                s = out.get(ne, 0) + val
                s = _norm_coeff(s)
                if s:
                    out[ne] = s
                elif ne in out:
                    del out[ne]
        res.terms = out
        return res

    def __str__(self):
        return format_laurent(self)

    __repr__ = __str__


def format_laurent(L):
    if not L.terms:
        return "0"
    bits = []
    for e in sorted(L.terms, reverse=True):
        c = L.terms[e]
        mono = []
        for v, x in zip(L.vars, e):
            if x == 0:
                continue
            mono.append(v if x == 1 else "%s^%d" % (v, x))
        if isinstance(c, Fraction):
            neg = c < 0
            body = str(abs(c))
            if mono and abs(c) == 1:
                body = "*".join(mono)
            elif mono:
                body = "*".join([body] + mono)
        else:
            neg = False
            s = str(c)
            body = "(%s)" % s if (" " in s or s.startswith("-")) else s
            if mono:
                body = "*".join([body] + mono)
        if not bits:
            bits.append("-" + body if neg else body)
        else:
            bits.append(("- " if neg else "+ ") + body)
    return " ".join(bits)


def parse_laurent(text, window=None):
    """Parse '1 - 2*u^-1*v^3 + C*u^-2' into a Laurent (window optional)."""
    import re

    tok = re.compile(
        r"\s*(?:(?P<num>\d+)|(?P<c>C)|(?P<var>[a-z]\w*)|(?P<op>[*^+/-])|(?P<end>$))"
    )
    pos, toks = 0, []
    while pos <= len(text):
        m = tok.match(text, pos)
        if not m:
            raise ValueError("bad token at %r" % text[pos:])
        if m.group("num"):
            toks.append(("num", int(m.group("num"))))
        elif m.group("c"):
            toks.append(("C", None))
        elif m.group("var"):
            toks.append(("var", m.group("var")))
        elif m.group("op"):
            toks.append((m.group("op"), None))
        else:
            toks.append(("end", None))
            break
        pos = m.end()

    vars_ = sorted({v for k, v in toks if k == "var"})
    win = window or LaurentWindow({v: (None, None) for v in vars_})
    i = 0

    def peek():
        return toks[i][0]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def parse_exponent():
        sgn = 1
        if peek() == "-":
            take()
            sgn = -1
        k, v = take()
        if k != "num":
            raise ValueError("expected exponent")
        return sgn * v

    def parse_factor():
        k, v = take()
        if k == "num":
            c = Fraction(v)
            if peek() == "/":
                take()
                k2, v2 = take()
                if k2 != "num":
                    raise ValueError("expected denominator")
                c /= v2
            return Laurent.const(c)
        if k == "C":
            p = NCPoly.c_power(1)
            if peek() == "^":
                take()
                p = NCPoly.c_power(parse_exponent())
            return Laurent.const(p)
        if k == "var":
            e = 1
            if peek() == "^":
                take()
                e = parse_exponent()
            return Laurent((v,), win, {(e,): Fraction(1)})
        raise ValueError("expected factor, got %r" % k)

    def parse_term():
        p = parse_factor()
        while peek() == "*":
            take()
            p = p * parse_factor()
        return p

    out = Laurent(vars_, win)
    sign = 1
    if peek() in "+-":
        sign = -1 if take()[0] == "-" else 1
    while True:
        out = out + parse_term() * sign
        k = peek()
        if k == "end":
            break
        if k not in "+-":
            raise ValueError("expected + or -, got %r" % k)
        sign = -1 if take()[0] == "-" else 1
    return out


def geom_expand(power, shift, window, u="u", v="v", v_sign=-1):
    """Expand (u + v_sign*v + shift)^(-power) with u dominant.

    = sum_{j>=0} C(-power, j) (v_sign*v + shift)^j u^{-power-j}, truncated to
    the window's lower cap on u.  shift may be a Fraction or a scalar NCPoly
    (a polynomial in C); v=None gives the single-variable expansion.
    """
    assert power >= 1
    win = window if isinstance(window, LaurentWindow) else LaurentWindow(window)
    lo = win.lo(u)
    assert lo is not None, "geom_expand needs a lower cap on %s" % u
    vars_ = (u,) if v is None else tuple(sorted((u, v)))
    ui = vars_.index(u)
    shift = _norm_coeff(shift) if shift else 0
    terms = {}

    def add(exps, c):
        c = _norm_coeff(c)
        if not c:
            return
        s = _norm_coeff(terms.get(exps, 0) + c)
        if s:
            terms[exps] = s
        elif exps in terms:
            del terms[exps]

    # cur holds x^j with x = v_sign*v + shift, as {v-exponent: coefficient}
    cur = {0: Fraction(1)}
    for j in range(0, -lo + 1):
        ue = -power - j
        if ue >= lo:
            b = binom_general(-power, j)
            for ve, c in cur.items():
                if v is None:
                    exps = (ue,)
                else:
                    exps = (ue, ve) if ui == 0 else (ve, ue)
                if win.contains_exps(vars_, exps):
                    add(exps, b * c)
        # cur <- cur * (v_sign*v + shift)
        nxt = {}
        for ve, c in cur.items():
            if v is not None:
                nxt[ve + 1] = _norm_coeff(nxt.get(ve + 1, 0) + v_sign * c)
            if shift:
                nxt[ve] = _norm_coeff(nxt.get(ve, 0) + c * shift)
        cur = {k: c for k, c in nxt.items() if c}
    return Laurent(vars_, win, terms)


class GSeries:
    """The normalizing series g(u) = 1 + sum g_t u^{-t} for gl(m|n), m != n.

    Defined by g(u + m - n) = (1 - u^{-2}) g(u); coefficients are computed on
    demand.  inv holds the coefficients of 1/g(u).
    """

    def __init__(self, dim):
        if dim.m == dim.n:
            raise ValueError("g-series requires m != n")
        self.dim = dim
        self.h = Fraction(dim.m - dim.n)
        self._g = [Fraction(1)]
        self._ginv = [Fraction(1)]

    def coeff(self, t):
        self._ensure(t)
        return self._g[t]

    def inv_coeff(self, t):
        self._ensure(t)
        return self._ginv[t]

    def _ensure(self, order):
        g, h = self._g, self.h
        while len(g) <= order:
            k = len(g)
            # from the u^{-(k+1)} coefficient of g(u+h) = (1-u^{-2}) g(u)
            acc = g[k - 1]
            for t in range(1, k):
                acc += g[t] * binom_general(-t, k + 1 - t) * h ** (k + 1 - t)
            g.append(acc / (k * h))
        gi = self._ginv
        while len(gi) <= order:
            k = len(gi)
            gi.append(-sum((g[t] * gi[k - t] for t in range(1, k + 1)), Fraction(0)))

    def at(self, window, u="u", v=None, shift=0, v_sign=-1, inverse=False):
        """g (or 1/g) evaluated at u + v_sign*v + shift, expanded u-dominant."""
        win = window if isinstance(window, LaurentWindow) else LaurentWindow(window)
        lo = win.lo(u)
        assert lo is not None
        order = -lo
        self._ensure(order)
        coeffs = self._ginv if inverse else self._g
        out = Laurent.const(Fraction(1)).truncate_to(win)
        for t in range(1, order + 1):
            if coeffs[t]:
                out = out + geom_expand(t, shift, win, u=u, v=v, v_sign=v_sign) * coeffs[t]
        return out


def solve_g(dim, order):
    """g_0..g_order for gl(m|n) (m != n) as a GSeries."""
    gs = GSeries(dim)
    gs._ensure(order)
    return gs


def series_identity(dim, arity=2):
    return identity_tensor(dim, arity, one=Fraction(1))


def yang_R(dim, window, u="u", v=None, shift=0, v_sign=-1, normalized=False,
           inverse=False, gseries=None):
    """The R-matrix R(x) = 1 - P x^{-1} at x = u + v_sign*v + shift.

    normalized=True multiplies by g(x) (or 1/g(x) when inverse=True), giving
    the unitary Rbar; inverse=True returns R(x)^{-1} = (1 + P x^{-1})
    sum_j x^{-2j}, using P^2 = 1.
    """
    win = window if isinstance(window, LaurentWindow) else LaurentWindow(window)
    lo = win.lo(u)
    assert lo is not None
    k = geom_expand(1, shift, win, u=u, v=v, v_sign=v_sign)
    P = permutation_P(dim)
    one = Laurent.const(Fraction(1)).truncate_to(win)
    I = identity_tensor(dim, 2, one=one)
    if not inverse:
        out = I + P.scale(-k)
    else:
        k2 = k * k
        geo = one
        p = one
        for _ in range(-lo // 2):
            p = p * k2
            if not p:
                break
            geo = geo + p
        out = (I + P.scale(k)).scale(geo)
    if normalized:
        gs = gseries or GSeries(dim)
        fac = gs.at(win, u=u, v=v, shift=shift, v_sign=v_sign, inverse=inverse)
        out = out.scale(fac)
    return out

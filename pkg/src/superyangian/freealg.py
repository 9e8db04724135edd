"""Free superalgebra on double-Yangian generator symbols, over Q[C].

A generator t[i,j,r] carries a matrix index pair (i,j) and a nonzero integer
label: label r >= 1 is the generator t_ij^(r) (coefficient of u^-r in the
series t_ij(u)), label -r <= -1 is the generator t_ij^(-r) (appearing in
t+_ij(u) = delta_ij - sum_{r>=1} t_ij^(-r) u^{r-1}).  The parity of t[i,j,r]
is |i| + |j| mod 2, where |i| is the index parity of gl(m|n).  The central
symbol C commutes with everything and is tracked as a polynomial power in
each term.

Gradings: deg2 maps t[i,j,r] -> r - 1 and t[i,j,-r] -> -r (C -> 0, so a word
has the sum of its letters' degrees); deg1 counts only the positive labels.

NCPoly is a noncommutative polynomial: dict {(word, cpow): Fraction} with
word a tuple of Gen.  TensorPoly is the same over a tensor power of the free
algebra, with one word and one C-power per tensor leg and Koszul signs in the
product.
"""

import re
from fractions import Fraction
from typing import NamedTuple


class Gen(NamedTuple):
    label: int
    i: int
    j: int

    def __str__(self):
        return "t[%d,%d,%d]" % (self.i, self.j, self.label)


def gen_parity(g, dim):
    return (dim.parity(g.i) + dim.parity(g.j)) % 2


def gen_deg2(g):
    return g.label - 1 if g.label > 0 else g.label


def word_deg2(word):
    return sum(gen_deg2(g) for g in word)


def word_deg1(word):
    return sum(g.label for g in word if g.label > 0)


def word_parity(word, dim):
    return sum(gen_parity(g, dim) for g in word) % 2


def gen_key(g):
    """Total order on generators: dual letters first, then by (i, j), then label.

    Ascending raw label gives ascending r on the Yangian side and descending r
    on the dual side, as required.
    """
    return (0 if g.label < 0 else 1, g.i, g.j, g.label)


def word_is_ordered(word, dim):
    """Ordered monomial: letters weakly increasing, odd letters never repeated."""
    for a, b in zip(word, word[1:]):
        ka, kb = gen_key(a), gen_key(b)
        if ka > kb:
            return False
        if ka == kb and gen_parity(a, dim):
            return False
    return True


def _term_sort_key(key):
    word, cpow = key
    return (len(word), tuple(gen_key(g) for g in word), cpow)


class NCPoly:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = Fraction(c)

    @staticmethod
    def zero():
        return NCPoly()

    @staticmethod
    def scalar(c):
        return NCPoly({((), 0): Fraction(c)})

    @staticmethod
    def one():
        return NCPoly.scalar(1)

    @staticmethod
    def c_power(k=1, coeff=1):
        return NCPoly({((), k): Fraction(coeff)})

    @staticmethod
    def gen(label, i, j, coeff=1):
        return NCPoly({((Gen(label, i, j),), 0): Fraction(coeff)})

    @staticmethod
    def from_word(word, cpow=0, coeff=1):
        return NCPoly({(tuple(word), cpow): Fraction(coeff)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly.scalar(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly.scalar(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        p = NCPoly()
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self):
        p = NCPoly()
        p.terms = {k: -c for k, c in self.terms.items()}
        return p

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPoly.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return NCPoly()
            p = NCPoly()
            p.terms = {k: c * other for k, c in self.terms.items()}
            return p
        if not isinstance(other, NCPoly):
            return NotImplemented
        out = {}
        for (w1, k1), c1 in self.terms.items():
            for (w2, k2), c2 in other.terms.items():
                key = (w1 + w2, k1 + k2)
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        p = NCPoly()
        p.terms = out
        return p

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k):
        out = NCPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def parity_split(self, dim):
        even, odd = {}, {}
        for k, c in self.terms.items():
            (odd if word_parity(k[0], dim) else even)[k] = c
        pe, po = NCPoly(), NCPoly()
        pe.terms = even
        po.terms = odd
        return pe, po

    def truncate_below(self, floor):
        """Drop every term whose word has deg2 <= floor (floor None: keep all)."""
        if floor is None:
            return self
        p = NCPoly()
        p.terms = {k: c for k, c in self.terms.items() if word_deg2(k[0]) > floor}
        return p

    def subs_c(self, value):
        value = Fraction(value)
        out = {}
        for (w, k), c in self.terms.items():
            s = out.get((w, 0), 0) + c * value**k
            if s:
                out[(w, 0)] = s
            elif (w, 0) in out:
                del out[(w, 0)]
        p = NCPoly()
        p.terms = out
        return p

    def scalar_part(self):
        return self.terms.get(((), 0), Fraction(0))

    def is_scalar(self):
        """True when no generator letters occur (an element of Q[C])."""
        return all(not w for (w, _k) in self.terms)

    def as_fraction(self):
        """The value of a constant (no letters, no C) polynomial."""
        assert all(k == ((), 0) for k in self.terms), self
        return self.terms.get(((), 0), Fraction(0))

    def max_deg2(self):
        return max((word_deg2(w) for (w, _k) in self.terms), default=None)

    def __str__(self):
        return format_poly(self)

    __repr__ = __str__


def supercomm(x, y, dim):
    """Graded commutator [x, y] = xy - (-1)^{|x||y|} yx, extended bilinearly."""
    out = NCPoly()
    xe, xo = x.parity_split(dim)
    ye, yo = y.parity_split(dim)
    for xp, px in ((xe, 0), (xo, 1)):
        if not xp:
            continue
        for yp, py in ((ye, 0), (yo, 1)):
            if not yp:
                continue
            prod = xp * yp
            back = yp * xp
            out = out + (prod + back if px and py else prod - back)
    return out


def truncate_below(p, floor):
    return p.truncate_below(floor)


def format_poly(p):
    if not p.terms:
        return "0"
    bits = []
    for key in sorted(p.terms, key=_term_sort_key, reverse=True):
        word, cpow = key
        c = p.terms[key]
        factors = []
        if cpow == 1:
            factors.append("C")
        elif cpow > 1:
            factors.append("C^%d" % cpow)
        factors.extend(str(g) for g in word)
        if not factors:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(abs(c))] + factors)
        if not bits:
            bits.append(body if c > 0 else "-" + body)
        else:
            bits.append(("+ " if c > 0 else "- ") + body)
    return " ".join(bits)


_TOKEN = re.compile(
    r"\s*(?:(?P<gen>t\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\])"
    r"|(?P<num>\d+)|(?P<c>C)|(?P<op>[*^+/-])|(?P<end>$))"
)


def _tokenize(text):
    pos, out = 0, []
    while pos <= len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError("bad token at %r" % text[pos:])
        if m.group("gen"):
            out.append(("gen", (int(m.group(2)), int(m.group(3)), int(m.group(4)))))
        elif m.group("num"):
            out.append(("num", int(m.group("num"))))
        elif m.group("c"):
            out.append(("C", None))
        elif m.group("op"):
            out.append((m.group("op"), None))
        else:
            out.append(("end", None))
            break
        pos = m.end()
    return out


def parse_poly(text):
    """Parse the textual format, e.g. '-t[1,2,1]*t[2,1,1] + 2*C^2 - 1/2'."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos][0]

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def parse_factor():
        kind, val = take()
        if kind == "num":
            num = Fraction(val)
            if peek() == "/":
                take()
                k2, v2 = take()
                if k2 != "num":
                    raise ValueError("expected denominator")
                num /= v2
            return NCPoly.scalar(num)
        if kind == "C":
            p = NCPoly.c_power(1)
        elif kind == "gen":
            i, j, r = val
            if r == 0:
                raise ValueError("label 0 is not a generator")
            p = NCPoly.gen(r, i, j)
        else:
            raise ValueError("expected factor, got %r" % kind)
        if peek() == "^":
            take()
            k2, v2 = take()
            if k2 != "num":
                raise ValueError("expected exponent")
            p = p**v2
        return p

    def parse_term():
        p = parse_factor()
        while peek() == "*":
            take()
            p = p * parse_factor()
        return p

    result = NCPoly.zero()
    sign = 1
    if peek() in "+-":
        sign = -1 if take()[0] == "-" else 1
    while True:
        result = result + parse_term() * sign
        kind = peek()
        if kind == "end":
            break
        if kind not in "+-":
            raise ValueError("expected + or -, got %r" % kind)
        sign = -1 if take()[0] == "-" else 1
    return result


class TensorPoly:
    """Element of the arity-fold tensor power of the free algebra over Q[C].

    Terms are {(words, cpows): Fraction} with one word and one C-power per
    leg; multiplication inserts the Koszul sign sum_{c<d} |y_c| |x_d| when
    (x_1 (x) ... (x) x_k)(y_1 (x) ... (x) y_k) is formed.
    """

    __slots__ = ("dim", "arity", "terms")

    def __init__(self, dim, arity, terms=None):
        self.dim = dim
        self.arity = arity
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = Fraction(c)

    @staticmethod
    def scalar(dim, arity, c=1):
        empty = ((),) * arity
        zero = (0,) * arity
        return TensorPoly(dim, arity, {(empty, zero): Fraction(c)})

    @staticmethod
    def from_legs(dim, legs):
        """Outer product leg_1 (x) ... (x) leg_k of NCPoly factors (no signs)."""
        out = TensorPoly.scalar(dim, len(legs))
        for pos, leg in enumerate(legs):
            nxt = TensorPoly(dim, len(legs))
            for (words, cpows), c in out.terms.items():
                for (w, k), c2 in leg.terms.items():
                    nw = words[:pos] + (w,) + words[pos + 1:]
                    nk = cpows[:pos] + (k,) + cpows[pos + 1:]
                    key = (nw, nk)
                    s = nxt.terms.get(key, 0) + c * c2
                    if s:
                        nxt.terms[key] = s
                    elif key in nxt.terms:
                        del nxt.terms[key]
            out = nxt
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TensorPoly.scalar(self.dim, self.arity, other)
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TensorPoly.scalar(self.dim, self.arity, other)
        if not isinstance(other, TensorPoly):
            return NotImplemented
        assert self.arity == other.arity
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        t = TensorPoly(self.dim, self.arity)
        t.terms = out
        return t

    __radd__ = __add__

    def __neg__(self):
        t = TensorPoly(self.dim, self.arity)
        t.terms = {k: -c for k, c in self.terms.items()}
        return t

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TensorPoly.scalar(self.dim, self.arity, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            t = TensorPoly(self.dim, self.arity)
            if other:
                t.terms = {k: c * other for k, c in self.terms.items()}
            return t
        if not isinstance(other, TensorPoly):
            return NotImplemented
        assert self.arity == other.arity and self.dim == other.dim
        dim, k = self.dim, self.arity
        out = {}
        for (xw, xk), cx in self.terms.items():
            xpar = [word_parity(w, dim) for w in xw]
            for (yw, yk), cy in other.terms.items():
                s0 = 0
                for c in range(k):
                    if word_parity(yw[c], dim):
                        s0 += sum(xpar[c + 1:])
                key = (
                    tuple(xw[c] + yw[c] for c in range(k)),
                    tuple(xk[c] + yk[c] for c in range(k)),
                )
                val = cx * cy
                if s0 % 2:
                    val = -val
                s = out.get(key, 0) + val
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        t = TensorPoly(dim, k)
        t.terms = out
        return t

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def parity_split(self, dim=None):
        d = self.dim if dim is None else dim
        even = TensorPoly(self.dim, self.arity)
        odd = TensorPoly(self.dim, self.arity)
        for key, c in self.terms.items():
            p = sum(word_parity(w, d) for w in key[0]) % 2
            (odd if p else even).terms[key] = c
        return even, odd

    def truncate_total_below(self, floor):
        """Drop terms whose total deg2 over all legs is <= floor."""
        if floor is None:
            return self
        t = TensorPoly(self.dim, self.arity)
        t.terms = {
            k: c
            for k, c in self.terms.items()
            if sum(word_deg2(w) for w in k[0]) > floor
        }
        return t

    def map_legs(self, f):
        """Apply an NCPoly -> NCPoly map to each leg independently (no signs).

        Only safe for maps that are even and respect the leg structure, e.g.
        truncation or C-specialization.
        """
        t = TensorPoly(self.dim, self.arity)
        acc = {}
        for (words, cpows), c in self.terms.items():
            legs = [f(NCPoly.from_word(w, k)) for w, k in zip(words, cpows)]
            prod = TensorPoly.from_legs(self.dim, legs) * c
            for key, val in prod.terms.items():
                s = acc.get(key, 0) + val
                if s:
                    acc[key] = s
                elif key in acc:
                    del acc[key]
        t.terms = acc
        return t

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (words, cpows), c in self.terms.items():
            legs = []
            for w, k in zip(words, cpows):
                s = format_poly(NCPoly.from_word(w, k))
                legs.append(s)
            bits.append("%s * %s" % (c, " (x) ".join(legs)))
        return " + ".join(bits)

"""One-point evaluation modules and the graded numeric oracle.

For every nonzero rational a the assignments

    t[i,j,r]  -> (-1)^{|i|} a^(r-1) e_ij,
    t[i,j,-r] -> (-1)^{|i|} a^(-r)  e_ij,        r >= 1,

define a representation pi_a of the level-0 algebra on C^(m|n).  Several
points combine through the coproduct

    Delta(t_ij(u)) = sum_c t_ic(u) (x) t_cj(u)

(the same shape on both series families) into a representation on the
k-fold graded tensor product; images of words are multiplied with the
Koszul sign rule of gradedtensor, and the central element maps to zero.

Formal scale mode replaces a by s*b for a global tracker s.  Every
generator image then carries s to the power of the generator's weight
(deg2), and every coproduct channel of a generator carries total s-power
at most that weight, so the image of any word has s-exponents bounded by
the word's weight.  Rewriting is weight-non-increasing, hence "p and
normal_form(p, floor) agree above the floor" becomes the checkable
statement "the image of the difference has s-exponents <= floor only".
That is the oracle: an independent numeric route through matrices that
never touches the rewriting engine's bracket tables.
"""

from fractions import Fraction

from .freealg import Gen, NCPoly
from .gradedtensor import GradedTensor, embed, identity_tensor
from .relations import BracketTable
from .series import Laurent, LaurentWindow

SCALE_VAR = "s"
_FREE = LaurentWindow({SCALE_VAR: (None, None)})


class EvalPoint:
    """A nonzero rational evaluation point, optionally on the formal scale.

    With formal=True the point stands for s*value, s the global grading
    tracker: powers become Laurent polynomials in s.
    """

    __slots__ = ("value", "formal")

    def __init__(self, value, formal=False):
        value = Fraction(value)
        if not value:
            raise ValueError("evaluation point must be nonzero")
        self.value = value
        self.formal = bool(formal)

    def power(self, e):
        """The point raised to the integer e (Fraction, or Laurent in s)."""
        c = self.value ** e
        if not self.formal:
            return c
        lau = Laurent((SCALE_VAR,), _FREE)
        lau.terms[(e,)] = c
        return lau

    def key(self):
        return (self.value, self.formal)

    def __eq__(self, other):
        return isinstance(other, EvalPoint) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.formal:
            return "EvalPoint(%s, formal=True)" % self.value
        return "EvalPoint(%s)" % self.value


def pi_a(dim, gen, point):
    """Image of a single generator under the one-point evaluation map."""
    e = gen.label - 1 if gen.label > 0 else gen.label
    co = point.power(e)
    if dim.parity(gen.i):
        co = -co
    return GradedTensor(dim, 1, {((gen.i, gen.j),): co})


def _pos_channels(dim, i, j, k, w):
    """Index paths i -> j across k legs with labels >= 0 summing to w.

    Label 0 marks a delta leg (identity factor, path unchanged).  Yields
    lists of (row, col, label).
    """
    if k == 1:
        if w == 0:
            if i == j:
                yield [(i, j, 0)]
        else:
            yield [(i, j, w)]
        return
    for rest in _pos_channels(dim, i, j, k - 1, w):
        yield [(i, i, 0)] + rest
    for p in range(1, w + 1):
        for c in dim.indices():
            for rest in _pos_channels(dim, c, j, k - 1, w - p):
                yield [(i, c, p)] + rest


def _dual_channels(dim, i, j, k, w, any_yet=False):
    """Index paths for the dual series: a leg with label s >= 1 consumes
    s - 1 of the u-power budget w; at least one leg must be non-delta.
    """
    if k == 1:
        if w == 0 and any_yet and i == j:
            yield [(i, j, 0)]
        yield [(i, j, -(w + 1))]
        return
    for rest in _dual_channels(dim, i, j, k - 1, w, any_yet):
        yield [(i, i, 0)] + rest
    for p in range(0, w + 1):
        for c in dim.indices():
            for rest in _dual_channels(dim, c, j, k - 1, w - p, True):
                yield [(i, c, -(p + 1))] + rest


_letter_cache = {}


def _letter_image(dim, gen, points):
    """Image of one generator on the tensor product of the points."""
    key = (dim.m, dim.n, gen, tuple(pt.key() for pt in points))
    hit = _letter_cache.get(key)
    if hit is not None:
        return hit
    k = len(points)
    if k == 1:
        out = pi_a(dim, gen, points[0])
    else:
        out = GradedTensor(dim, k)
        if gen.label > 0:
            channels = _pos_channels(dim, gen.i, gen.j, k, gen.label)
            for legs in channels:
                out = out + _pure(dim, legs, points, 1)
        else:
            channels = _dual_channels(dim, gen.i, gen.j, k, -gen.label - 1)
            for legs in channels:
                q = sum(1 for (_x, _y, lab) in legs if lab)
                out = out + _pure(dim, legs, points, -1 if q % 2 == 0 else 1)
    _letter_cache[key] = out
    return out


def _pure(dim, legs, points, coef):
    """Assemble one coproduct channel: the outer product of the per-leg
    matrices (ascending embeds commute sign-free), scaled by coef."""
    k = len(points)
    t = None
    for pos, (x, y, lab) in enumerate(legs):
        if lab == 0:
            continue
        m = embed(pi_a(dim, Gen(lab, x, y), points[pos]), k, (pos,))
        t = m if t is None else t * m
    if t is None:
        t = identity_tensor(dim, k)
    if coef == 1:
        return t
    return t.scale(Fraction(coef))


def multi_eval(dim, p, points):
    """Image of an NCPoly on the tensor product of evaluation modules.

    Applies (pi_{a1} (x) ... (x) pi_{ak}) after the iterated coproduct,
    word by word.  Terms carrying a power of the central element map to
    zero (level 0).
    """
    points = list(points)
    if not points:
        raise ValueError("need at least one evaluation point")
    k = len(points)
    out = GradedTensor(dim, k)
    for (word, cpow), coeff in p.terms.items():
        if cpow:
            continue
        img = identity_tensor(dim, k)
        for g in word:
            img = img * _letter_image(dim, g, points)
        out = out + img.scale(coeff)
    return out


def _s_exponents(c):
    """The s-exponents present in an image coefficient (scalars sit at 0)."""
    if isinstance(c, (int, Fraction)):
        return [0] if c else []
    return [e[0] for e in c.terms]


def oracle_check(dim, p, floor, points, table=None):
    """True iff rewriting changed p only at weights <= floor.

    Evaluates p - normal_form(p, floor) on formal-scale points and checks
    that every surviving s-exponent is <= floor.
    """
    for pt in points:
        if not pt.formal:
            raise ValueError("oracle_check needs formal-scale points")
    if table is None:
        table = BracketTable(dim)
    diff = p - table.normal_form(p, floor=floor)
    img = multi_eval(dim, diff, points)
    for c in img.entries.values():
        for e in _s_exponents(c):
            if e > floor:
                return False
    return True


def image_vector(img, coords):
    """Flatten a formal image to the Fraction row over the given coordinates
    (pairs (index, s-exponent))."""
    row = []
    for idx, e in coords:
        c = img.entries.get(idx)
        if c is None:
            row.append(Fraction(0))
        elif isinstance(c, (int, Fraction)):
            row.append(Fraction(c) if e == 0 else Fraction(0))
        else:
            row.append(Fraction(c.terms.get((e,), 0)))
    return row


def image_coords(imgs, floor=None):
    """The sorted coordinate set (index, s-exponent) spanned by the images,
    restricted to exponents above the floor when one is given."""
    coords = set()
    for img in imgs:
        for idx, c in img.entries.items():
            for e in _s_exponents(c):
                if floor is None or e > floor:
                    coords.add((idx, e))
    return sorted(coords)


def rational_rank(rows):
    """Rank over Q of a list of equal-length rows of Fractions."""
    rows = [list(r) for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        piv = None
        for q in range(rank, len(rows)):
            if rows[q][col]:
                piv = q
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        for q in range(rank + 1, len(rows)):
            f = rows[q][col] * inv
            if f:
                rows[q] = [a - f * b for a, b in zip(rows[q], prow)]
        rank += 1
        col += 1
    return rank

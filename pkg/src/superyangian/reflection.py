"""Boundary matrices over the double Yangian and their reflection identities.

For a split point 1 <= ell <= m+n the diagonal sign matrix G squares to one,
and the products B(u) = T(u) G T(-u)^{-1} and B+(u) = T+(u) G T+(-u)^{-1}
satisfy three reflection equations driven by the rational R-matrix, two
unitarity identities, a degree dichotomy on their coefficients controlled by
the index families I0/I1, low-order generation recursions, and a left-coideal
property for the coproduct.

Window conventions follow the rest of the package: a variable that is only
lowered (or only raised) across a product is safe to truncate tightly, while
a variable that is raised by one factor and lowered by another needs a
computation window deeper than the comparison box, because terms outside the
box recombine back into it.
"""

from fractions import Fraction

from .freealg import NCPoly, TensorPoly, word_deg2, word_parity
from .gradedtensor import GradedTensor, embed, identity_tensor
from .relations import BracketTable, sign_embed
from .series import Laurent, LaurentWindow, yang_R
from .yangian import build_T, coproduct, invert, tensor_floor

HALF = Fraction(1, 2)


def epsilons(dim, ell):
    """The diagonal entries of G: +1 up to the split point, -1 after it."""
    size = dim.m + dim.n
    if not 1 <= ell <= size:
        raise ValueError("the split point must lie in 1..m+n")
    return tuple(Fraction(1) if i <= ell else Fraction(-1)
                 for i in range(1, size + 1))


def g_matrix(dim, ell, eps=None):
    """The sign matrix G as a one-leg tensor with scalar entries."""
    if eps is None:
        eps = epsilons(dim, ell)
    entries = {((i, i),): Fraction(e) for i, e in enumerate(eps, start=1)}
    return GradedTensor(dim, 1, entries)


def in_I0(ell, i, j):
    """Whether (i, j) lies in a diagonal block of the split."""
    return (i <= ell) == (j <= ell)


def gamma_member(ell, i, j, label):
    """Membership of b_ij^{(label)} in the distinguished family.

    Positive labels: odd labels on the diagonal blocks, even ones off them.
    Negative labels: even sizes on the diagonal blocks, odd ones off them.
    """
    r = abs(label)
    diagonal = in_I0(ell, i, j)
    if label > 0:
        return diagonal == (r % 2 == 1)
    return diagonal == (r % 2 == 0)


def build_B(dim, side, ell, window, floor=None, var="u"):
    """The boundary matrix T(u) G T(-u)^{-1} on the requested side.

    Entries carry the same embedding sign as the generator matrices, so
    products of stored matrices need no extra sign bookkeeping.  The dual
    side needs a floor for the series inverse.
    """
    T = build_T(dim, side, window, var=var)
    Tn = T.map_coeffs(lambda L: L.negate_var(var))
    B = T * g_matrix(dim, ell) * invert(dim, Tn, side, floor=floor)
    if floor is not None:
        B = tensor_floor(B, floor)
    return B


def _as_poly(c):
    if isinstance(c, NCPoly):
        return c
    return NCPoly.scalar(Fraction(c))


def b_coefficient(dim, ell, B, i, j, label, var="u"):
    """The true series coefficient b_ij^{(label)} with the stored sign and
    the constant term from G stripped off."""
    ent = B.entries.get(((i, j),))
    sign = Fraction(sign_embed(dim, i, j))
    if label > 0:
        if ent is None:
            return NCPoly.zero()
        return NCPoly.scalar(sign) * _as_poly(ent.coeff(**{var: -label}))
    r = -label
    c = NCPoly.zero() if ent is None else _as_poly(ent.coeff(**{var: r - 1}))
    out = NCPoly.scalar(-sign) * c
    if r == 1 and i == j:
        out = out + NCPoly.scalar(epsilons(dim, ell)[i - 1])
    return out


def _component(p, d):
    """The part of an element sitting exactly at second degree d."""
    return NCPoly({(w, cp): c for (w, cp), c in p.terms.items()
                   if w and word_deg2(w) == d})


def _boxed(M, box):
    win = box if isinstance(box, LaurentWindow) else LaurentWindow(box)
    return M.map_coeffs(lambda L: L.truncate_to(win))


def check_grg(dim, ell, eps=None):
    """The exchange identity R(u) G1 R(v) G2 = G2 R(v) G1 R(u).

    Passing explicit diagonal entries allows a non-involutive control, for
    which the identity fails.
    """
    win = {"u": (-1, 0), "v": (-1, 0)}
    Ru = yang_R(dim, win, u="u", v=None)
    Rv = yang_R(dim, win, u="v", v=None)
    G1 = embed(g_matrix(dim, ell, eps), 2, (0,))
    G2 = embed(g_matrix(dim, ell, eps), 2, (1,))
    return Ru * G1 * Rv * G2 == G2 * Rv * G1 * Ru


def check_unitarity(dim, side, ell, order, floor=None, table=None):
    """B(u) B(-u) = 1 on the requested side, modulo the floor when dual."""
    if side == "yangian":
        win = {"u": (-order, 0)}
    else:
        win = {"u": (0, order - 1)}
    B = build_B(dim, side, ell, win, floor=floor)
    Bn = B.map_coeffs(lambda L: L.negate_var("u"))
    diff = B * Bn - identity_tensor(dim, 1, one=Laurent.const(1, win))
    if table is None:
        table = BracketTable(dim)
    return not table.normal_form_tensor(diff, floor)


def check_reflection(dim, which, ell, order, floor=None, table=None):
    """One of the three reflection equations, compared inside a sound box.

    which is "yy" (both boundary matrices on the Yangian side), "dual"
    (both on the dual side) or "mixed" (Yangian at u against dual at v).
    The exchange variable of each relation gets a computation window deeper
    than the comparison box; the mixed relation also needs a working floor
    below the requested one because the Yangian factors lift the dual
    truncation uncertainty by their own degree.
    """
    o = order
    if which == "yy":
        B1m = build_B(dim, "yangian", ell, {"u": (-o, 0)})
        B2m = build_B(dim, "yangian", ell, {"v": (-(2 * o - 1), 0)}, var="v")
        win = {"u": (-o, 0), "v": (-(2 * o - 1), o)}
        box = {"u": (-o, 0), "v": (-o, o)}
    elif which == "dual":
        if floor is None:
            raise ValueError("the dual relation needs a floor")
        # a dual coefficient at exponent k has words of degree at most
        # -(k+1), so slices beyond the floor-visible depth carry only terms
        # the final cut discards; within that, the kernels can lower the
        # first variable by up to o+2 and still recover into the box
        vis = -floor - 2
        u_hi = min(2 * o + 1, vis)
        v_hi = min(o, vis)
        B1m = build_B(dim, "dual", ell, {"u": (0, u_hi)}, floor=floor)
        B2m = build_B(dim, "dual", ell, {"v": (0, v_hi)}, var="v",
                      floor=floor)
        win = {"u": (-(o + 1), u_hi), "v": (0, o)}
        box = {"u": (-o, o - 1), "v": (0, o)}
    elif which == "mixed":
        if floor is None:
            raise ValueError("the mixed relation needs a floor")
        bfloor = floor - (o - 1)
        B1m = build_B(dim, "yangian", ell, {"u": (-o, 0)})
        B2m = build_B(dim, "dual", ell,
                      {"v": (0, min(o, -bfloor - 2))}, var="v", floor=bfloor)
        win = {"u": (-o, 0), "v": (0, o)}
        box = win
    else:
        raise ValueError("which must be 'yy', 'dual' or 'mixed'")
    B1 = embed(B1m, 2, (0,))
    B2 = embed(B2m, 2, (1,))
    Rm = yang_R(dim, win, u="u", v="v", v_sign=-1)
    Rp = yang_R(dim, win, u="u", v="v", v_sign=1)
    lhs = Rm * B1 * Rp * B2
    rhs = B2 * Rp * B1 * Rm
    diff = _boxed(lhs - rhs, box)
    # rewriting never raises the second degree, so terms at or below the
    # floor can be dropped before normal forming: they can only rewrite to
    # terms the floor drops anyway
    if floor is not None:
        diff = tensor_floor(diff, floor)
    if table is None:
        table = BracketTable(dim)
    return not table.normal_form_tensor(diff, floor)


def leading_term_check(dim, ell, cap, floor=None, table=None):
    """The top-degree part of b_ij^{(r)} is ((-1)^{r-1} eps_i + eps_j)
    t_ij^{(r)}, and of b_ij^{(-r)} is ((-1)^r eps_i + eps_j) t_ij^{(-r)}."""
    if floor is None:
        floor = -cap - 1
    assert floor <= -cap - 1, "floor too shallow to see the dual tops"
    eps = epsilons(dim, ell)
    By = build_B(dim, "yangian", ell, {"u": (-cap, 0)})
    Bd = build_B(dim, "dual", ell, {"u": (0, cap - 1)}, floor=floor)
    if table is None:
        table = BracketTable(dim)
    for i in dim.indices():
        for j in dim.indices():
            for r in range(1, cap + 1):
                p = table.normal_form(b_coefficient(dim, ell, By, i, j, r))
                want = NCPoly.gen(r, i, j, coeff=(-1) ** (r - 1) * eps[i - 1]
                                  + eps[j - 1])
                if _component(p, r - 1) != want:
                    return False
                p = table.normal_form(
                    b_coefficient(dim, ell, Bd, i, j, -r), floor=floor)
                want = NCPoly.gen(-r, i, j, coeff=(-1) ** r * eps[i - 1]
                                  + eps[j - 1])
                if _component(p, -r) != want:
                    return False
    return True


def gamma_structure(dim, ell, cap=3, floor=-4, table=None):
    """Degree report for the coefficients b_ij^{(+-r)} with r <= cap.

    Family members sit exactly at second degree r-1 (positive side) or -r
    (dual side); the remaining coefficients sit strictly lower.  The dual cap
    is limited by the floor so that the strict verdicts stay conclusive.
    """
    dual_cap = min(cap, -floor - 1)
    By = build_B(dim, "yangian", ell, {"u": (-cap, 0)})
    Bd = build_B(dim, "dual", ell, {"u": (0, dual_cap - 1)}, floor=floor)
    if table is None:
        table = BracketTable(dim)
    rows = []
    for i in dim.indices():
        for j in dim.indices():
            for label in [r for r in range(1, cap + 1)] + [
                    -r for r in range(1, dual_cap + 1)]:
                B = By if label > 0 else Bd
                fl = None if label > 0 else floor
                p = table.normal_form(
                    b_coefficient(dim, ell, B, i, j, label), floor=fl)
                deg = p.max_deg2()
                member = gamma_member(ell, i, j, label)
                top = abs(label) - 1 if label > 0 else label
                ok = (deg == top) if member else (deg is None or deg < top)
                rows.append({"i": i, "j": j, "label": label,
                             "member": member, "deg2": deg, "ok": ok})
    return {"rows": rows, "all_ok": all(row["ok"] for row in rows)}


def generation_recursions(dim, ell, floor, table=None):
    """The two graded recursions expressing non-member coefficients of the
    dual boundary matrix through family members, at leading degree."""
    assert floor <= -4, "the second recursion compares degree -3 components"
    size = dim.m + dim.n
    B = build_B(dim, "dual", ell, {"u": (0, 1)}, floor=floor)
    if table is None:
        table = BracketTable(dim)

    def b(i, j, r):
        return table.normal_form(
            b_coefficient(dim, ell, B, i, j, -r), floor=floor)

    def prod_part(x, y, d):
        return _component(table.normal_form(x * y, floor=floor), d)

    lower = [a for a in range(1, size + 1) if a <= ell]
    upper = [a for a in range(1, size + 1) if a > ell]
    report = {"first_lower": True, "first_upper": True,
              "second_mixed": True, "second_flipped": True}
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            if i <= ell and j <= ell:
                want = NCPoly.zero()
                for a in upper:
                    want = want + prod_part(b(i, a, 1), b(a, j, 1), -2)
                want = NCPoly.scalar(HALF) * want
                if _component(b(i, j, 1), -2) != want:
                    report["first_lower"] = False
            elif i > ell and j > ell:
                want = NCPoly.zero()
                for a in lower:
                    want = want + prod_part(b(i, a, 1), b(a, j, 1), -2)
                want = NCPoly.scalar(-HALF) * want
                if _component(b(i, j, 1), -2) != want:
                    report["first_upper"] = False
            elif i <= ell < j:
                want = NCPoly.zero()
                for a in lower:
                    want = want - prod_part(b(i, a, 2), b(a, j, 1), -3)
                for a in upper:
                    want = want + prod_part(b(i, a, 1), b(a, j, 2), -3)
                want = NCPoly.scalar(HALF) * want
                if _component(b(i, j, 2), -3) != want:
                    report["second_mixed"] = False
            else:
                want = NCPoly.zero()
                for a in upper:
                    want = want + prod_part(b(i, a, 2), b(a, j, 1), -3)
                for a in lower:
                    want = want - prod_part(b(i, a, 1), b(a, j, 2), -3)
                want = NCPoly.scalar(HALF) * want
                if _component(b(i, j, 2), -3) != want:
                    report["second_flipped"] = False
    report["ok"] = all(report.values())
    return report


def _leg_poly(dim, p, leg):
    if not isinstance(p, NCPoly):
        return TensorPoly.scalar(dim, 2, Fraction(p))
    terms = {}
    for (w, cp), c in p.terms.items():
        if leg == 0:
            terms[((w, ()), (cp, 0))] = c
        else:
            terms[(((), w), (0, cp))] = c
    return TensorPoly(dim, 2, terms)


def _lift(dim, M, leg):
    return M.map_coeffs(
        lambda L: L.map_coeffs(lambda p: _leg_poly(dim, p, leg)))


def coideal_check(dim, ell, order, floor=None, side="dual"):
    """The coproduct of the boundary matrix factors through itself:
    Delta(B(u)) = T_[1](u) B_[2](u) (T(-u)^{-1})_[1], entrywise."""
    if side == "dual":
        win = {"u": (0, order - 1)}
    else:
        win = {"u": (-order, 0)}
    B = build_B(dim, side, ell, win, floor=floor)
    T = build_T(dim, side, win)
    Ti = invert(dim, T.map_coeffs(lambda L: L.negate_var("u")), side,
                floor=floor)
    lhs = B.map_coeffs(lambda L: L.map_coeffs(
        lambda p: coproduct(dim, _as_poly(p))))
    rhs = _lift(dim, T, 0) * _lift(dim, B, 1) * _lift(dim, Ti, 0)
    if floor is not None:
        cut = lambda M: M.map_coeffs(lambda L: L.map_coeffs(
            lambda tp: tp.truncate_total_below(floor)))
        lhs, rhs = cut(lhs), cut(rhs)
    return lhs == rhs


def parity_homogeneous_check(dim, ell, cap, floor):
    """Every coefficient of both boundary matrices is parity-homogeneous of
    the parity of its index pair."""
    By = build_B(dim, "yangian", ell, {"u": (-cap, 0)})
    Bd = build_B(dim, "dual", ell, {"u": (0, cap - 1)}, floor=floor)
    for i in dim.indices():
        for j in dim.indices():
            par = (dim.parity(i) + dim.parity(j)) % 2
            for label in list(range(1, cap + 1)) + list(range(-cap, 0)):
                B = By if label > 0 else Bd
                p = b_coefficient(dim, ell, B, i, j, label)
                for (w, cp), c in p.terms.items():
                    if word_parity(w, dim) != par:
                        return False
    return True

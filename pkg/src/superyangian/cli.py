"""Command-line harness: configured check suites and a normal-form tool.

The suite runs selected identity checks at a configured dimension, window
order, and floor, and emits one deterministic JSON report per run.  Elapsed
times are recorded only on request, so that reports stay byte-identical
across runs with the same configuration and seed.
"""

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from .freealg import Gen, NCPoly, parse_poly, word_deg2, word_is_ordered
from .gradedtensor import (
    SuperDim,
    embed,
    identity_tensor,
    permutation_P,
    transpose_tau,
)
from .relations import (
    BracketTable,
    RTTFamily,
    dual_bracket,
    yangian_bracket,
)
from .series import GSeries, Laurent, LaurentWindow, geom_expand, yang_R
from .yangian import (
    centrality_check,
    dual_action_check,
    graded_pairing_rank,
    leading_graded_image_check,
    pairing,
    quantum_contraction,
    vacuum_invariant_check,
    z_coefficients,
)
from .reflection import (
    check_grg,
    check_reflection,
    check_unitarity,
    coideal_check,
    gamma_structure,
    generation_recursions,
    leading_term_check,
    parity_homogeneous_check,
)

SCHEMA = "superyangian-report/1"

# checks that expand the g-series and therefore need m != n
NEEDS_GSERIES = {"gseries", "action"}

CHECK_IDS = (
    "ybe",
    "unitarity",
    "crossing",
    "gseries",
    "rtt",
    "pbw",
    "contraction",
    "centrality",
    "pairing",
    "vacuum",
    "reflection",
    "action",
)


class SuiteConfig:
    """Validated parameters for one suite run."""

    def __init__(self, m, n, ell=(1,), order=3, floor=-4, level="zero",
                 checks="all", seed=0, out=None, timings=False):
        if order < 1:
            raise ValueError("order must be at least 1")
        if floor is not None and floor >= 0:
            raise ValueError("floor must be negative")
        self.dim = SuperDim(m, n)
        self.ell = list(ell)
        for l in self.ell:
            if not 1 <= l <= m + n:
                raise ValueError("ell must lie in 1..m+n")
        self.order = order
        self.floor = floor
        self.level = _parse_level(level)
        if m == n and self.level not in ("zero", Fraction(0)):
            raise ValueError("a nonzero or central level needs m != n")
        self.checks = _parse_checks(checks, m, n)
        self.seed = seed
        self.out = out
        self.timings = timings

    def as_dict(self):
        level = self.level
        if isinstance(level, Fraction):
            level = str(level)
        return {
            "m": self.dim.m,
            "n": self.dim.n,
            "ell": self.ell,
            "order": self.order,
            "floor": self.floor,
            "level": level,
            "checks": list(self.checks),
            "seed": self.seed,
        }


def _parse_level(text):
    if isinstance(text, Fraction):
        return text
    if text in ("zero", "central"):
        return text
    return Fraction(text)


def _parse_checks(spec, m, n):
    if isinstance(spec, str):
        tokens = [t for t in spec.replace(",", " ").split() if t]
    else:
        tokens = list(spec)
    if tokens in (["all"], ["all-level0"]):
        return tuple(c for c in CHECK_IDS
                     if not (m == n and c in NEEDS_GSERIES))
    for t in tokens:
        if t not in CHECK_IDS:
            raise ValueError("unknown check %r (known: %s)"
                             % (t, ", ".join(CHECK_IDS)))
        if m == n and t in NEEDS_GSERIES:
            raise ValueError("check %r needs m != n (it uses the g-series)"
                             % t)
    return tuple(dict.fromkeys(tokens))


# -- individual checks -------------------------------------------------------


def _entry(check, dim, passed, witness=None, **params):
    return {
        "check": check,
        "dim": "gl(%d|%d)" % (dim.m, dim.n),
        "params": params,
        "pass": bool(passed),
        "witness": witness if not passed else None,
    }


def _first_key(tensor):
    keys = sorted(tensor.entries)
    return "entry %s" % (keys[0],) if keys else None


def _check_ybe(cfg, ctx):
    dim, o = cfg.dim, cfg.order
    R12 = embed(yang_R(dim, {"u": (-o, 0)}, u="u", v=None), 3, (0, 1))
    R23 = embed(yang_R(dim, {"v": (-o, 0)}, u="v", v=None), 3, (1, 2))
    R13 = embed(yang_R(dim, {"u": (-o, 0)}, u="u", v="v", v_sign=1), 3, (0, 2))
    cap = identity_tensor(dim, 3).scale(
        Laurent.const(Fraction(1)).truncate_to(
            LaurentWindow({"u": (-o, 0), "v": (-o, 0)})))
    lhs = (R12 * R13 * R23) * cap
    rhs = (R23 * R13 * R12) * cap
    ok = lhs == rhs
    return [_entry("ybe", dim, ok, None if ok else _first_key(lhs - rhs),
                   order=o)]


def _check_unitarity(cfg, ctx):
    dim, o = cfg.dim, cfg.order
    win = LaurentWindow({"u": (-o, 0)})
    R = yang_R(dim, win, v=None)
    Rm = R.map_coeffs(lambda L: L.negate_var("u"))
    scal = Laurent(("u",), win, {(0,): Fraction(1), (-2,): Fraction(-1)})
    ok = R * Rm == identity_tensor(dim, 2).scale(scal)
    out = [_entry("unitarity", dim, ok, variant="plain", order=o)]
    if dim.m != dim.n:
        Rb = yang_R(dim, win, v=None, normalized=True)
        Rbm = Rb.map_coeffs(lambda L: L.negate_var("u"))
        ok = Rb * Rbm == identity_tensor(dim, 2).scale(
            Laurent.const(Fraction(1)).truncate_to(win))
        out.append(_entry("unitarity", dim, ok, variant="normalized", order=o))
    return out


def _check_crossing(cfg, ctx):
    dim, o = cfg.dim, cfg.order
    win = LaurentWindow({"u": (-o, 0)})
    h = dim.m - dim.n
    Ptau = transpose_tau(permutation_P(dim), 1)
    k_h = geom_expand(1, Fraction(-h), win, v=None)
    inv = identity_tensor(dim, 2) + Ptau.scale(k_h)
    P12t = embed(Ptau, 3, (1, 2))
    Rinv02 = embed(inv, 3, (0, 2))
    R01 = embed(yang_R(dim, win, v=None, shift=Fraction(-h)), 3, (0, 1))
    defect = Laurent(("u",), win, {(0,): Fraction(1)}) - k_h * k_h
    ok = P12t * Rinv02 * R01 == P12t.scale(defect)
    return [_entry("crossing", dim, ok, variant="plain", order=o)]


def _check_gseries(cfg, ctx):
    dim, o = cfg.dim, max(cfg.order, 4)
    win = LaurentWindow({"u": (-o, 0)})
    g = GSeries(dim).at(win)
    gm = g.negate_var("u")
    one_minus = Laurent(("u",), win, {(0,): Fraction(1), (-2,): Fraction(-1)})
    ok1 = g * gm * one_minus == Laurent.const(Fraction(1)).truncate_to(win)
    lhs = g.shift_var("u", Fraction(dim.m - dim.n))
    ok2 = lhs == one_minus * g
    return [
        _entry("gseries", dim, ok1, variant="product", order=o),
        _entry("gseries", dim, ok2, variant="functional", order=o),
    ]


def _check_rtt(cfg, ctx):
    dim = cfg.dim
    idx = dim.indices()
    fams = {f: RTTFamily(dim, f, 4) for f in ("yy", "dd")}
    closed = {"yy": yangian_bracket, "dd": dual_bracket}
    bad = None
    for f in ("yy", "dd"):
        for i in idx:
            for j in idx:
                for k in idx:
                    for l in idx:
                        for r in (1, 2):
                            for s in (1, 2):
                                got = fams[f].bracket(i, j, r, k, l, s)
                                if got != closed[f](dim, i, j, r, k, l, s):
                                    bad = bad or "family %s at %s" % (
                                        f, (i, j, r, k, l, s))
    return [_entry("rtt", dim, bad is None, bad, labels=2)]


def _random_word(rng, dim, max_len=4, max_label=3):
    n = rng.randint(1, max_len)
    out = []
    for _ in range(n):
        r = rng.randint(1, max_label) * rng.choice((1, -1))
        out.append(Gen(r, rng.choice(dim.indices()), rng.choice(dim.indices())))
    return tuple(out)


def _check_pbw(cfg, ctx):
    dim, floor = cfg.dim, cfg.floor
    table = ctx.table(dim)
    rng = random.Random(cfg.seed)
    bad = None
    for _ in range(60):
        w = _random_word(rng, dim)
        nf = table.normal_form(NCPoly.from_word(w), floor=floor)
        for (word, _cp) in nf.terms:
            if not word_is_ordered(word, dim) or word_deg2(word) <= floor:
                bad = bad or str(w)
        if table.normal_form(nf, floor=floor) != nf:
            bad = bad or str(w)
    for _ in range(20):
        w = tuple(Gen(rng.randint(1, 3), rng.choice(dim.indices()),
                      rng.choice(dim.indices()))
                  for _ in range(rng.randint(1, 4)))
        p = NCPoly.from_word(w)
        if table.normal_form(p) != table.normal_form(p, floor=-30):
            bad = bad or str(w)
    return [_entry("pbw", dim, bad is None, bad, floor=floor, words=80)]


def _check_contraction(cfg, ctx):
    dim, floor = cfg.dim, cfg.floor
    o = min(cfg.order, 3)
    out = []
    dual_floor = min(floor, -o - 2)
    try:
        quantum_contraction(dim, "yangian", o)
        quantum_contraction(dim, "dual", o, floor=dual_floor)
        ok, why = True, None
    except AssertionError as exc:
        ok, why = False, str(exc)
    out.append(_entry("contraction", dim, ok, why, variant="factorization",
                      order=o))
    ok, why = True, None
    try:
        z_coefficients(dim, "dual", 2, floor=dual_floor)
    except AssertionError as exc:
        ok, why = False, str(exc)
    out.append(_entry("contraction", dim, ok, why, variant="degree-bound",
                      order=2))
    for r in (1, 2):
        ok = leading_graded_image_check(dim, r)
        out.append(_entry("contraction", dim, ok,
                          None if ok else "z^(-%d) top" % r,
                          variant="leading-image", label=r))
    return out


def _check_centrality(cfg, ctx):
    dim, floor = cfg.dim, cfg.floor
    table = ctx.table(dim)
    zc = z_coefficients(dim, "dual", 2, floor=floor)
    bad = None
    for r in (1, 2):
        for i in dim.indices():
            for j in dim.indices():
                for lab in (1, 2, -1, -2):
                    if not centrality_check(dim, zc[r], Gen(lab, i, j),
                                            floor, table=table):
                        bad = bad or "z^(-%d) against t[%d,%d,%d]" % (
                            r, i, j, lab)
    return [_entry("centrality", dim, bad is None, bad, floor=floor,
                   labels=2)]


def _check_pairing(cfg, ctx):
    dim = cfg.dim
    out = []
    ok = pairing(dim, (), ()) == 1
    out.append(_entry("pairing", dim, ok, variant="unit"))
    rep = graded_pairing_rank(dim, 1)
    out.append(_entry("pairing", dim, rep["full"],
                      None if rep["full"] else "rank %d" % rep["rank"],
                      variant="gram", degree=1, rank=rep["rank"]))
    # a nonzero value needs the Yangian weight to cover the dual weight, so
    # weight-1 words paired against dual weight 2 must vanish
    bad = None
    pairs = [(i, j) for i in dim.indices() for j in dim.indices()]
    for (i, j) in pairs:
        for (k, l) in pairs:
            if pairing(dim, ((i, j, 1),), ((k, l, 2),)):
                bad = bad or "t[%d,%d,1] against label 2" % (i, j)
            for (p, q) in pairs:
                if pairing(dim, ((i, j, 1),), ((k, l, 1), (p, q, 1))):
                    bad = bad or "t[%d,%d,1] against a pair" % (i, j)
    out.append(_entry("pairing", dim, bad is None, bad, variant="degree-law"))
    return out


def _check_vacuum(cfg, ctx):
    dim, floor = cfg.dim, min(cfg.floor, -4)
    out = []
    ok = vacuum_invariant_check(dim, 1, 0, floor)
    out.append(_entry("vacuum", dim, ok, None if ok else "z^(-1) at c=0",
                      level="0", floor=floor))
    if isinstance(cfg.level, Fraction) and cfg.level != 0:
        ok = vacuum_invariant_check(dim, 1, cfg.level, floor)
        out.append(_entry("vacuum", dim, ok,
                          None if ok else "z^(-1) at c=%s" % cfg.level,
                          level=str(cfg.level), floor=floor))
    return out


def _check_reflection(cfg, ctx):
    dim, o, floor = cfg.dim, cfg.order, cfg.floor
    table = ctx.table(dim)
    out = []
    for ell in cfg.ell:
        for which in ("yy", "dual", "mixed"):
            ok = check_reflection(dim, which, ell, o, floor=floor, table=table)
            out.append(_entry("reflection", dim, ok, variant=which, ell=ell,
                              order=o, floor=floor))
        for side in ("yangian", "dual"):
            ok = check_unitarity(dim, side, ell, o, floor=floor, table=table)
            out.append(_entry("reflection", dim, ok, variant="unitarity-" + side,
                              ell=ell, order=o, floor=floor))
        out.append(_entry("reflection", dim, check_grg(dim, ell),
                          variant="grg", ell=ell))
        cap = min(o, -floor - 1)
        ok = leading_term_check(dim, ell, cap, floor=floor, table=table)
        out.append(_entry("reflection", dim, ok, variant="leading", ell=ell,
                          cap=cap))
        rep = gamma_structure(dim, ell, cap=cap, floor=floor, table=table)
        bad = [r for r in rep["rows"] if not r["ok"]]
        out.append(_entry("reflection", dim, rep["all_ok"],
                          str(bad[0]) if bad else None,
                          variant="gamma", ell=ell, cap=cap))
        rfloor = min(floor, -4)
        rep = generation_recursions(dim, ell, floor=rfloor, table=table)
        bad = [k for k, v in rep.items() if k != "ok" and not v]
        out.append(_entry("reflection", dim, rep["ok"],
                          bad[0] if bad else None,
                          variant="recursions", ell=ell, floor=rfloor))
        ok = coideal_check(dim, ell, o, floor=floor, side="dual")
        out.append(_entry("reflection", dim, ok, variant="coideal", ell=ell,
                          order=o, floor=floor))
        ok = parity_homogeneous_check(dim, ell, min(o, -floor - 1), floor=floor)
        out.append(_entry("reflection", dim, ok, variant="parity", ell=ell))
    return out


def _check_action(cfg, ctx):
    dim = cfg.dim
    c = cfg.level if isinstance(cfg.level, Fraction) else Fraction(0)
    o = min(cfg.order, 2)
    ok = dual_action_check(dim, 1, c=c, order=o)
    return [_entry("action", dim, ok, None if ok else "one-point exchange",
                   level=str(c), order=o)]


CHECK_FNS = {
    "ybe": _check_ybe,
    "unitarity": _check_unitarity,
    "crossing": _check_crossing,
    "gseries": _check_gseries,
    "rtt": _check_rtt,
    "pbw": _check_pbw,
    "contraction": _check_contraction,
    "centrality": _check_centrality,
    "pairing": _check_pairing,
    "vacuum": _check_vacuum,
    "reflection": _check_reflection,
    "action": _check_action,
}


class _Ctx:
    """Shared per-run state: one rewriting table per dimension."""

    def __init__(self):
        self._tables = {}

    def table(self, dim):
        key = (dim.m, dim.n)
        if key not in self._tables:
            self._tables[key] = BracketTable(dim)
        return self._tables[key]


class Report:
    """Deterministic run report; serializes as schema-versioned JSON."""

    def __init__(self, config, entries, timings=None):
        self.config = config
        self.entries = entries
        self.timings = timings

    @property
    def ok(self):
        return all(e["pass"] for e in self.entries)

    def as_dict(self):
        doc = {
            "schema": SCHEMA,
            "config": self.config.as_dict(),
            "entries": self.entries,
            "summary": {
                "selected": len(self.entries),
                "passed": sum(1 for e in self.entries if e["pass"]),
                "failed": sum(1 for e in self.entries if not e["pass"]),
                "ok": self.ok,
            },
        }
        if self.timings is not None:
            doc["elapsed"] = self.timings
        return doc

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"


def run_suite(config):
    """Execute every selected check and assemble the report."""
    ctx = _Ctx()
    entries = []
    timings = {} if config.timings else None
    for check in config.checks:
        t0 = time.monotonic()
        entries.extend(CHECK_FNS[check](config, ctx))
        if timings is not None:
            timings[check] = round(time.monotonic() - t0, 3)
    return Report(config, entries, timings)


def normal_form_cmd(expression, config):
    """The ordered normal form of a textual element, as text."""
    p = parse_poly(expression)
    for (w, _cp) in p.terms:
        for g in w:
            if not 1 <= g.i <= config.dim.m + config.dim.n:
                raise ValueError("index %d outside 1..%d"
                                 % (g.i, config.dim.m + config.dim.n))
            if not 1 <= g.j <= config.dim.m + config.dim.n:
                raise ValueError("index %d outside 1..%d"
                                 % (g.j, config.dim.m + config.dim.n))
    table = BracketTable(config.dim, config.level)
    floor = config.floor
    has_dual = any(g.label < 0 for (w, _cp) in p.terms for g in w)
    if has_dual and floor is None:
        raise ValueError("expressions with dual letters need --floor")
    return str(table.normal_form(p, floor=floor))


# -- argument parsing --------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="superyangian",
        description="exact checks for the double Yangian of gl(m|n)")
    sub = parser.add_subparsers(dest="command", required=True)

    suite = sub.add_parser("suite", help="run a configured check suite")
    suite.add_argument("--m", type=int, default=1)
    suite.add_argument("--n", type=int, default=1)
    suite.add_argument("--ell", type=int, nargs="+", default=[1],
                       help="block split points for the reflection checks")
    suite.add_argument("--order", type=int, default=3)
    suite.add_argument("--floor", type=int, default=-4)
    suite.add_argument("--level", default="zero",
                       help="zero, central, or a rational number")
    suite.add_argument("--checks", default="all",
                       help="comma-separated check ids, or all / all-level0")
    suite.add_argument("--seed", type=int, default=0)
    suite.add_argument("--out", default=None, help="report file (default stdout)")
    suite.add_argument("--timings", action="store_true",
                       help="record per-check elapsed seconds in the report")

    nf = sub.add_parser("nf", help="print the ordered normal form")
    nf.add_argument("expression")
    nf.add_argument("--m", type=int, default=1)
    nf.add_argument("--n", type=int, default=1)
    nf.add_argument("--floor", type=int, default=None)
    nf.add_argument("--level", default="zero")
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.command == "nf":
        try:
            cfg = SuiteConfig(args.m, args.n, level=args.level,
                              floor=args.floor)
            print(normal_form_cmd(args.expression, cfg))
        except ValueError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 2
        return 0
    try:
        cfg = SuiteConfig(args.m, args.n, ell=args.ell, order=args.order,
                          floor=args.floor, level=args.level,
                          checks=args.checks, seed=args.seed, out=args.out,
                          timings=args.timings)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    report = run_suite(cfg)
    text = report.to_json()
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        print("report written to %s (%s)" % (
            cfg.out, "ok" if report.ok else "FAILED"))
    else:
        sys.stdout.write(text)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())

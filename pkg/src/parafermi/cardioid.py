"""Planar cardioid model: arclengths, the self-action identity, the Vieta
product, and precision-certified continued fractions (including those of
the intensional Catalan numbers C_{-1/k}).
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .exact_core import catalan, check_paraorder
from .report import Report

DEFAULT_DIGITS = 600


class PrecisionExhausted(RuntimeError):
    """Raised when a requested quantity is not certified at the working precision."""


def default_digits():
    env = os.environ.get("PARAFERMI_DIGITS")
    return int(env) if env else DEFAULT_DIGITS


@dataclass
class HighPrecReal:
    """An mpmath value computed at `digits` decimal digits with an error bound."""

    value: mpmath.mpf
    digits: int
    err: mpmath.mpf

    def close_to(self, other, tol=None):
        other_v = other.value if isinstance(other, HighPrecReal) else other
        other_e = other.err if isinstance(other, HighPrecReal) else 0
        tol = tol if tol is not None else self.err + other_e
        return abs(self.value - other_v) <= tol

    def __float__(self):
        return float(self.value)


def _certified(fn, digits):
    """Evaluate fn() at digits and at digits + 20; the difference bounds the error."""
    with mpmath.workdps(digits + 20):
        hi = fn()
    with mpmath.workdps(digits):
        lo = fn()
        err = abs(lo - hi) + mpmath.mpf(10) ** (-digits + 1)
        return HighPrecReal(+lo, digits, err)


# -- arclengths ---------------------------------------------------------------------

def half_angle(i):
    """(sin, cos) of pi/2^i through the nested half-angle recursion."""
    if i < 1:
        raise ValueError("i >= 1 expected")
    c = mpmath.mpf(0)            # cos(pi/2)
    s = mpmath.mpf(1)
    for _ in range(i - 1):
        s = mpmath.sqrt((1 - c) / 2)
        c = mpmath.sqrt((1 + c) / 2)
    return s, c


def nested_radical(i, which):
    """Closed forms: sin(pi/2^i) = sqrt(2 - sqrt(2 + ...))/2, cos likewise with +."""
    if i < 1:
        raise ValueError("i >= 1 expected")
    if i == 1:
        return "1" if which == "sin" else "0"
    inner = "√2"
    for _ in range(i - 3):
        inner = f"√(2+{inner})"
    if i == 2:
        return "√2/2"
    sign = "-" if which == "sin" else "+"
    return f"√(2{sign}{inner})/2"


@dataclass
class Arclengths:
    i: int
    a: Fraction
    A: HighPrecReal
    co_A: HighPrecReal
    bar_A: HighPrecReal
    forms: dict = field(default_factory=dict)


def arclengths(i, a=Fraction(1, 4), digits=None):
    """A_i = 4a sin(pi/2^i), co-A_i = 4a cos(pi/2^i), bar-A_i = 4a(1 - sin(pi/2^i))."""
    if i < 1:
        raise ValueError("i >= 1 expected")
    a = Fraction(a)
    if a <= 0:
        raise ValueError("a > 0 expected")
    digits = digits or default_digits()
    four_a = lambda: mpmath.mpf(4 * a.numerator) / a.denominator
    A = _certified(lambda: four_a() * half_angle(i)[0], digits)
    co = _certified(lambda: four_a() * half_angle(i)[1], digits)
    bar = _certified(lambda: four_a() * (1 - half_angle(i)[0]), digits)
    forms = {}
    if i <= 6:
        fa = f"4·{a}" if a != 1 else "4"
        forms = {"A": f"{fa}·{nested_radical(i, 'sin')}",
                 "co_A": f"{fa}·{nested_radical(i, 'cos')}",
                 "bar_A": f"{fa}·(1-{nested_radical(i, 'sin')})"}
    return Arclengths(i, a, A, co, bar, forms)


def circumference(a=Fraction(1, 4)):
    return 8 * Fraction(a)


def verify_radicals(imax=12, digits=None):
    """Half-angle recursion against direct high-precision sine/cosine."""
    digits = digits or default_digits()
    rep = Report("nested radicals")
    tol = mpmath.mpf(10) ** (-(digits - 2))
    with mpmath.workdps(digits):
        for i in range(1, imax + 1):
            s, c = half_angle(i)
            x = mpmath.pi / 2 ** i
            rep.check(abs(s - mpmath.sin(x)) < tol and abs(c - mpmath.cos(x)) < tol,
                      f"i={i}: nested radical differs from sin/cos")
    return rep


def self_action(i, a=Fraction(1, 4), digits=None):
    """(A_i, A_i) = 2 A_i co-A_i / (A_i + bar-A_i)."""
    if i < 2:
        raise ValueError("self action needs i >= 2")
    digits = digits or default_digits()
    arc = arclengths(i, a, digits)
    with mpmath.workdps(digits):
        v = 2 * arc.A.value * arc.co_A.value / (arc.A.value + arc.bar_A.value)
    return HighPrecReal(v, digits, 4 * (arc.A.err + arc.co_A.err + arc.bar_A.err))


def verify_self_action(imax=12, a=Fraction(1, 4), digits=None, tol_exp=50):
    digits = digits or default_digits()
    rep = Report("self action")
    tol = mpmath.mpf(10) ** (-tol_exp)
    for i in range(2, imax + 1):
        sa = self_action(i, a, digits)
        prev = arclengths(i - 1, a, digits).A
        # independent route: direct sine at higher precision
        with mpmath.workdps(digits + 20):
            direct = 4 * mpmath.mpf(a.numerator if isinstance(a, Fraction) else a) \
                / (a.denominator if isinstance(a, Fraction) else 1) * mpmath.sin(mpmath.pi / 2 ** (i - 1))
        with mpmath.workdps(digits):
            d1 = abs(sa.value - prev.value)
            d2 = abs(sa.value - direct)
        rep.check(d1 < tol and d2 < tol, f"i={i}: (A_i,A_i) - A_(i-1) = {mpmath.nstr(d1, 5)}")
    return rep


# -- integration limits -------------------------------------------------------------

def _arc(a, lo, hi, shift):
    """Integral of 2a cos(theta/2 + shift) from lo to hi (angles as multiples of pi)."""
    f = lambda t: mpmath.sin(mpmath.pi * (Fraction(t) / 2 + shift))
    return 4 * mpmath.mpf(a.numerator) / a.denominator * (f(hi) - f(lo))


def transforms(p, representation="unmoved_mover", a=Fraction(1, 4), digits=50):
    """Azimuth -> integration-limit pairs (multiples of pi) for order p.

    Each pair is checked by integrating the corresponding arclength function
    and comparing with A_i, co-A_i and bar-A_i; the co-z limit of the carry-bit
    neighbour p' = 2p + 1 is checked against its closed form.
    """
    check_paraorder(p)
    t = Fraction(p - 1, p + 1)
    a = Fraction(a)
    if representation not in ("unmoved_mover", "moved_mirror"):
        raise ValueError("representation is unmoved_mover or moved_mirror")
    limits = limits_for(p, representation)
    shift = Fraction(0) if representation == "unmoved_mover" else t / 2
    pp = 2 * p + 1
    tp = Fraction(pp - 1, pp + 1)
    co_z_next = limits_for(pp, representation)["co"][1][1]
    closed = Fraction(p, p + 1) if representation == "unmoved_mover" \
        else Fraction(pp + 1, p + 1) - Fraction(p, p + 1)
    rep = Report(f"transforms p={p} {representation}")
    rep.check(co_z_next == closed, f"co-z(p'={pp}) = {co_z_next} pi, expected {closed} pi")
    i = (p + 1).bit_length() - 1
    with mpmath.workdps(digits):
        arc = arclengths(i, a, digits)
        tol = mpmath.mpf(10) ** (-(digits - 5))
        got = {k: _arc(a, lim[1][0], lim[1][1], shift) for k, lim in limits.items()}
        want = {"upper": arc.A.value, "co": arc.co_A.value, "lower": arc.bar_A.value}
        for k in got:
            rep.check(abs(got[k] - want[k]) < tol, f"{k}: integral over {limits[k][1]} != arclength")
    rep.details.update(limits={k: [[str(x) for x in v[0]], [str(x) for x in v[1]]] for k, v in limits.items()},
                       co_z_next=str(co_z_next), t_next=str(tp))
    return limits, rep


def limits_for(p, representation):
    """Azimuth pair -> integration-limit pair per arc part, in multiples of pi."""
    t = Fraction(p - 1, p + 1)
    if representation == "unmoved_mover":
        return {"upper": ((t, 1), (0, 1 - t)), "co": ((0, t), (0, t)), "lower": ((1, 1 + t), (1 - t, 1))}
    return {"upper": ((t, 1), (2 - t, 1)), "co": ((0, t), (2, 2 - t)), "lower": ((1, 1 + t), (1, 1 - t))}


# -- Vieta --------------------------------------------------------------------------

def vieta_product(m, a=Fraction(1, 4), digits=None):
    """prod_{i=2}^m co-A_i."""
    if m < 2:
        raise ValueError("m >= 2 expected")
    digits = digits or default_digits()

    def fn():
        out = mpmath.mpf(1)
        for i in range(2, m + 1):
            out *= 4 * mpmath.mpf(Fraction(a).numerator) / Fraction(a).denominator * half_angle(i)[1]
        return out
    return _certified(fn, digits)


def verify_vieta(m=30, tol=mpmath.mpf("1e-17"), mmax=40, digits=100):
    rep = Report("vieta")
    with mpmath.workdps(digits):
        target = 2 / mpmath.pi
        errs = [abs(vieta_product(k, digits=digits).value - target) for k in range(2, mmax + 1)]
    rep.check(errs[m - 2] < tol, f"m={m}: |prod - 2/pi| = {mpmath.nstr(errs[m - 2], 5)}")
    rep.check(all(x > y for x, y in zip(errs, errs[1:])), "error not monotonically decreasing")
    rep.details["err_m"] = float(errs[m - 2])
    return rep


# -- continued fractions ------------------------------------------------------------

@dataclass
class ContFrac:
    quotients: list
    stable_prefix: int
    mode: str = "simple"

    def __getitem__(self, k):
        if k >= self.stable_prefix:
            raise PrecisionExhausted(f"quotient {k} is beyond the certified prefix ({self.stable_prefix})")
        return self.quotients[k]

    def __len__(self):
        return self.stable_prefix


def _mpf_fraction(x):
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    man, exp = (-1) ** sign * int(man), int(exp)
    return Fraction(man) * Fraction(2) ** exp if exp >= 0 else Fraction(man, 2 ** -exp)


def _floor_ceil(x, up):
    q = x.numerator // x.denominator
    return q + 1 if up and q * x.denominator != x.numerator else q


def _expand(x, n, mode):
    """Exact expansion of a rational x (at most n quotients)."""
    out = []
    for j in range(n):
        up = mode == "alternating" and j % 2 == 0
        q = _floor_ceil(x, up)
        out.append(q)
        r = x - q
        if r == 0:
            break
        x = 1 / r
    return out


def contfrac_expand(fn, max_terms, mode="simple", digits=None):
    """Quotients of fn() stable under doubling the precision.

    fn is a zero-argument callable evaluated under the ambient mpmath
    precision.  Simple mode: floor throughout.  Alternating mode: ceil on even
    slots and floor on odd slots, so l_(2n-1) < 0 and l_(2n) > 0.
    """
    if mode not in ("simple", "alternating"):
        raise ValueError("mode is simple or alternating")
    digits = digits or max(default_digits(), 3 * max_terms)
    seqs = []
    for d in (digits, 2 * digits):
        with mpmath.workdps(d):
            v = fn()
            if not mpmath.isfinite(v):
                raise ValueError("value is not finite")
            seqs.append(_expand(_mpf_fraction(v), max_terms + 2, mode))
    if seqs[0] == seqs[1] and len(seqs[0]) <= max_terms:
        # both expansions terminate identically: an exactly representable rational
        return ContFrac(seqs[0], len(seqs[0]), mode)
    stable = 0
    for x, y in zip(*seqs):
        if x != y:
            break
        stable += 1
    # the last matching quotient may still be truncated at the lower precision
    stable = min(stable, max_terms, max(len(seqs[0]) - 1, 0))
    if stable < max_terms:
        raise PrecisionExhausted(f"only {stable} of {max_terms} quotients are stable at {digits} digits")
    return ContFrac(seqs[0][:stable], stable, mode)


def arclength_contfrac(target, i, max_terms, digits=None, a=Fraction(1, 4)):
    """Expansion of A_i ('A'), co-A_i ('coA') or bar-A_i ('barA')."""
    a = Fraction(a)
    pick = {"A": lambda s, c: s, "coA": lambda s, c: c, "barA": lambda s, c: 1 - s}[target]
    fn = lambda: 4 * mpmath.mpf(a.numerator) / a.denominator * pick(*half_angle(i))
    return contfrac_expand(fn, max_terms, "simple", digits)


def leading_coefficients(irange=range(2, 11), terms=8, digits=None):
    """{i: (a1, co-a2)}."""
    out = {}
    for i in irange:
        out[i] = (arclength_contfrac("A", i, terms, digits)[1],
                  arclength_contfrac("coA", i, terms, digits)[2])
    return out


def leading_coefficient_recurrences(irange=range(3, 11), digits=None):
    """a1^(i+1) = 2 a1^(i) + 1 + d1, d1 in {-1, 0}; co-a2^(i+1) = 4 co-a2^(i) + 3 + d2, d2 in {-1..3}."""
    rep = Report("leading coefficient recurrences")
    lo, hi = min(irange), max(irange)
    lead = leading_coefficients(range(lo, hi + 1), digits=digits)
    rows = []
    for i in range(lo, hi):
        a1, c2 = lead[i]
        a1n, c2n = lead[i + 1]
        d1 = a1n - 2 * a1 - 1
        d2 = c2n - 4 * c2 - 3
        rep.check(d1 in (-1, 0), f"i={i}: delta1 = {d1}")
        rep.check(-1 <= d2 <= 3, f"i={i}: delta2 = {d2}")
        rows.append((i, a1, c2, d1, d2))
    rep.details.update(leading={i: list(v) for i, v in lead.items()}, rows=rows)
    return rep


def _deltas(lead, i):
    """(delta1, delta2) of the step (i-1) -> i."""
    a1p, c2p = lead[i - 1]
    a1, c2 = lead[i]
    return a1 - 2 * a1p - 1, c2 - 4 * c2p - 3


def paraorder_representation_table(imax=6, window=32, digits=None):
    """Locate p = 2^i - 1 among the quotients near alpha_min = co-a2^(i-1) - a1^(i-1) + delta3.

    Branch: |delta2| <= |delta1| -> p = co-a_(alpha_min+1), else p = a_(alpha_min).
    """
    lead = leading_coefficients(range(2, imax + 1), digits=digits)
    rows = []
    for i in range(3, imax + 1):
        p = 2 ** i - 1
        d1, d2 = _deltas(lead, i)
        base = lead[i - 1][1] - lead[i - 1][0]
        co_branch = abs(d2) <= abs(d1)
        n = base + window + 3
        cf = arclength_contfrac("coA" if co_branch else "A", i, n, digits)
        hit = None
        for d3 in sorted(range(-window, window + 1), key=lambda d: (abs(d), d)):
            alpha = base + d3
            idx = alpha + 1 if co_branch else alpha
            if 1 <= idx < len(cf) and cf[idx] == p:
                hit = (d3, idx)
                break
        if hit is None:
            raise LookupError(f"p={p} not found within ±{window} of alpha_min base {base}")
        rows.append({"i": i, "p": p, "delta1": d1, "delta2": d2, "base": base,
                     "branch": "co-a" if co_branch else "a", "delta3": hit[0], "index": hit[1]})
    return rows


def table9_rows(imax=6, digits=None):
    rows = []
    for r in paraorder_representation_table(imax, digits=digits):
        rel = "<=" if r["branch"] == "co-a" else ">"
        rows.append([r["i"], f"{abs(r['delta2'])} {rel} {abs(r['delta1'])}", r["base"], r["delta3"],
                     f"{r['branch']}_{r['index']}^({r['i']}) = {r['p']}"])
    return ["i", "|d2| vs |d1|", "co-a2-a1 (i-1)", "delta3 (i-1)", "p"], rows


def place_value_table(irange=range(3, 6), digits=None):
    """Leading coefficients with the successor place beta = co-a2^(i) in C_{-1/k}, C_{-1/(k+1)}, k = i + 2."""
    lead = leading_coefficients(range(irange.start, irange.stop), digits=digits)
    rows = []
    for i in irange:
        a1, c2 = lead[i]
        k = i + 2
        lk = intensional_contfrac(k, c2 + 2, digits)[c2]
        lk1 = intensional_contfrac(k + 1, c2 + 2, digits)[c2]
        rows.append([i, a1, c2, f"l_{c2}^({k}) = {lk}", f"l_{c2}^({k + 1}) = {lk1}"])
    return ["i", "a1", "co-a2", "l_beta^(k)", "l_beta^(k+1)"], rows


# -- intensional Catalan numbers ------------------------------------------------------

def _intensional(k):
    k = mpmath.mpf(k)
    return mpmath.power(2, -2 / k) * mpmath.gamma(mpmath.mpf(1) / 2 - 1 / k) \
        / (mpmath.sqrt(mpmath.pi) * mpmath.gamma(2 - 1 / k))


def intensional_catalan(k, digits=None):
    """C_{-1/k} = 2^(-2/k) Γ(1/2 - 1/k) / (sqrt(pi) Γ(2 - 1/k))."""
    if k < 2:
        raise ValueError("k >= 2 expected")
    return _certified(lambda: _intensional(k), digits or default_digits())


def intensional_contfrac(k, max_terms, digits=None, mode="simple"):
    if k < 2:
        raise ValueError("k >= 2 expected")
    return contfrac_expand(lambda: _intensional(k), max_terms, mode, digits)


def verify_successor(krange=range(4, 21), digits=None):
    """l_1^(k+1) = l_0^(k) + l_1^(k) = 1 + l_1^(k)."""
    rep = Report("intensional successor")
    cfs = {k: intensional_contfrac(k, 4, digits) for k in range(krange.start, krange.stop + 1)}
    for k in krange:
        rep.check(cfs[k][0] == 1, f"k={k}: l_0 = {cfs[k][0]}")
        rep.check(cfs[k + 1][1] == cfs[k][0] + cfs[k][1], f"k={k}: l_1^(k+1) = {cfs[k + 1][1]}, l_1^(k) = {cfs[k][1]}")
    return rep


# stated l-values: (k, beta, value) ; None = "not equal to" entries listed separately
STATED_L_VALUES = [
    (5, 12, 1), (6, 12, 2), (6, 51, 1), (7, 51, 2), (7, 206, 1), (7, 205, 1), (8, 205, 2),
    (6, 4, 1), (7, 4, 2), (8, 4, 3), (9, 4, 4), (10, 4, 7),
    (4, 50, 1), (6, 51, 1), (7, 52, 1), (8, 40, 1), (12, 39, 1),
    (4, 26, 1), (5, 26, 2), (6, 26, 8), (5, 37, 1), (6, 37, 2),
    (5, 25, 11), (4, 34, 26), (5, 27, 11), (5, 38, 11),
]
STATED_L_UNEQUAL = [(8, 206, 2)]

# k = 19 readings: simple places and alternating places (value as printed)
CATALAN_L_READINGS = [("simple", 419, 429), ("simple", 408, 155), ("simple", 397, 115)]
CATALAN_ELL_READINGS = [("alternating", 438, 429), ("alternating", 411, -116),
                        ("alternating", 421, -1), ("alternating", 425, -156), ("alternating", 414, 13)]


def stated_l_values(digits=None):
    """Check every printed l-value; returns a report with one line per value."""
    rep = Report("stated l-values")
    need = {}
    for k, b, _ in STATED_L_VALUES + STATED_L_UNEQUAL:
        need[k] = max(need.get(k, 0), b + 2)
    cfs = {k: intensional_contfrac(k, n, digits) for k, n in need.items()}
    rows = []
    for k, b, v in STATED_L_VALUES:
        got = cfs[k][b]
        rep.check(got == v, f"l_{b}^({k}) = {got}, printed {v}")
        rows.append((k, b, v, got))
    for k, b, v in STATED_L_UNEQUAL:
        got = cfs[k][b]
        rep.check(got != v, f"l_{b}^({k}) = {got}, printed != {v}")
        rows.append((k, b, f"!={v}", got))
    rep.details["rows"] = rows
    return rep


def catalan_readings(k=19, digits=None):
    """Compute the k = 19 coefficients read as Catalan (partition) terms; report only."""
    digits = digits or max(default_digits(), 3 * 440)
    simple = intensional_contfrac(k, 440, digits)
    alt = intensional_contfrac(k, 440, digits, mode="alternating")
    out = []
    for mode, b, v in CATALAN_L_READINGS + CATALAN_ELL_READINGS:
        cf = simple if mode == "simple" else alt
        out.append({"mode": mode, "index": b, "printed": v, "computed": cf[b], "match": cf[b] == v})
    return out


# -- kissing numbers as l-values -----------------------------------------------------

# n: (lambda, p_l, p_u, k, beta, L_n)
KISSING_CONTFRAC = {
    1: (1, 1, 3, 4, 3, 2),
    2: (1, 1, 7, 4, 45, 6),
    3: (3, 3, 7, 4, 42, 12),
    4: (3, 7, 15, 7, 178, 24),
    5: (5, 7, 15, 8, 118, 40),
    6: (3, 7, 31, 11, 151, 72),
    7: (1, 1, 127, 42, 4, 126),
    8: (1, 15, 255, 91, 401, 240),
}


def kissing_approximation(pl, pu):
    """(5/16)(p_l + p_u) and (1/2) C_(i_u - 4); None below k = 4."""
    iu = (pu + 1).bit_length() - 1
    if iu < 4:
        return None
    return Fraction(5, 16) * (pl + pu), Fraction(catalan(iu - 4), 2)


def kissing_contfrac_table(digits=None, ns=None):
    """Rows n, approximation, theta, k, l_beta^(k) (value or the budget failure)."""
    rows = []
    rep = Report("kissing contfrac")
    for n in ns or sorted(KISSING_CONTFRAC):
        lam, pl, pu, k, beta, L = KISSING_CONTFRAC[n]
        theta = lam * (pu - pl)
        rep.check(theta == L, f"n={n}: theta_{lam}^({pl},{pu}) = {theta} != {L}")
        approx = kissing_approximation(pl, pu)
        approx_text = "-" if approx is None else f"{float(approx[0]):.3f}+{float(approx[1]):g}"
        try:
            got = intensional_contfrac(k, beta + 2, digits)[beta]
            rep.check(got == L, f"n={n}: l_{beta}^({k}) = {got} != {L}")
            cell = f"l_{beta}^({k}) = {got}"
        except PrecisionExhausted as e:
            rep.fail(f"n={n}: budget exceeded ({e})")
            cell = "budget exceeded"
        rows.append([n, approx_text, f"theta_{lam}^({pl},{pu}) = {theta}", k, cell])
    rep.details["rows"] = rows
    return ["n", "approximation", "theta", "k", "C_-1/k"], rows, rep

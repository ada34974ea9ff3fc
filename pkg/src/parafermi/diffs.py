"""Difference calculus of the representatives: naive, oblique and
interordinal differences, interordinal differences of Green's squares
(theta terms), parafermial expressions and the kissing-number checks.

Sequences are 1-based wherever an index is exposed, as in Delta G_6.
"""

from dataclasses import dataclass
from math import ceil

import numpy as np

from .blockstruct import navigate, representative_region
from .exact_core import catalan, is_paraorder
from .mod8 import lambda_map
from .report import Report
from .rootseq import triangle

KISSING = (2, 6, 12, 24, 40, 72, 126, 240, 272, 336, 438, 648, 906, 1422, 2340, 4320)


def kissing(n):
    """L_n for n = 1..16 (reference data)."""
    if not 1 <= n <= len(KISSING):
        raise ValueError("kissing numbers are tabulated for n = 1..16")
    return KISSING[n - 1]


# -- representative values and naive differences -------------------------------

def representative_values(kind, p):
    """Sorted distinct values of LL minus its UR subquadrant."""
    return sorted(set(representative_region(triangle(kind, p))))


def differences(values):
    return [b - a for a, b in zip(values, values[1:])]


def naive_differences(kind, p):
    """Successive differences of the ascending representatives (G or J)."""
    return differences(representative_values(kind, p))


def _records(seq):
    """Indices (0-based) of entries that fall below an earlier entry."""
    out, top = [], None
    for i, x in enumerate(seq):
        if top is not None and x < top:
            out.append(i)
        else:
            top = x
    return out


def overlap_length(p):
    """Leading naive differences of order p shared with order (p-1)/2 (the bracketed terms)."""
    if p < 31:
        return 0
    low = naive_differences("F", (p - 1) // 2)
    seq = naive_differences("F", p)
    # the shared stretch is the tail of the lower order's sequence
    best = 0
    for k in range(1, min(len(low), len(seq)) + 1):
        if seq[:k] == low[-k:]:
            best = k
    return best


def warps(p):
    """Values of the naive sequence of order p that break nondecrease (after the overlap)."""
    seq = naive_differences("F", p)[overlap_length(p):]
    return [seq[i] for i in _records(seq)]


def union_differences(p, pp):
    """Successive differences over the ascending union of both representative sets."""
    u = sorted(set(representative_values("F", p)) | set(representative_values("F", pp)))
    return differences(u)


def merged_window(p, pp):
    """Differences of the window (p, p') dovetailed into one nondecreasing sequence.

    The successive differences over the union of both representative sets are
    taken as a set in ascending order; values produced only by intraordinal
    warps of order p' (entries breaking nondecrease of its naive sequence)
    are left out.  A degenerate window gives the naive sequence.
    """
    if p == pp:
        return naive_differences("F", p)
    if pp < p:
        p, pp = pp, p
    drop = set(warps(pp))
    return sorted(set(union_differences(p, pp)) - drop)


# -- oblique differences --------------------------------------------------------

def _block_positions(b):
    """Positions of a b x b block up to secondary reflection, upper-right diagonals first."""
    seen, out = set(), []
    for off in range(b - 1, -b, -1):
        for i in range(b):
            j = i + off
            if 0 <= j < b and (i, j) not in seen:
                out.append((i, j))
                seen.add((i, j))
                seen.add((b - 1 - j, b - 1 - i))
    return out


def oblique_pairs(kind, p):
    """The subtractions of the tilted path, as (minuend, subtrahend) pairs.

    LL is cut into a 4 x 4 grid of sub-sub-quadrants.  Walking down the
    first two block columns, each step pairs the left block (k, 0) and the
    block below-right (k+1, 1) against the right block (k, 1); the lower
    partner is skipped where it repeats the left one.
    """
    if p < 15:
        raise ValueError("oblique differences start at p = 15")
    ll = navigate(triangle(kind, p), "LL")
    b = ll.shape[0] // 4

    def blk(r, c):
        return ll[r * b:(r + 1) * b, c * b:(c + 1) * b]

    pairs = []
    for k in range(3):
        left, right, below = blk(k, 0), blk(k, 1), blk(k + 1, 1)
        for i, j in _block_positions(b):
            pairs.append((int(left[i, j]), int(right[i, j])))
            if below[i, j] != left[i, j]:
                pairs.append((int(below[i, j]), int(right[i, j])))
    return pairs


def oblique_differences(kind, p):
    return [a - b for a, b in oblique_pairs(kind, p)]


def sequence(name, p):
    """Named difference sequences: dG, dJ (naive), oG, oJ (oblique)."""
    kind = "F" if name.endswith("G") else "H"
    if name.startswith("d"):
        return naive_differences(kind, p)
    if name.startswith("o"):
        return oblique_differences(kind, p)
    raise ValueError(f"unknown sequence {name!r}")


def lookup(name, p, index):
    seq = sequence(name, p)
    if not 1 <= index <= len(seq):
        raise IndexError(f"{name}^({p}) has {len(seq)} members; index {index} out of range")
    return seq[index - 1]


# -- theta terms ------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ThetaTerm:
    beta: int
    q: int
    s: int

    def __post_init__(self):
        if not (is_paraorder(self.q) and is_paraorder(self.s)):
            raise ValueError(f"q={self.q}, s={self.s} must be paraorders 2^n - 1")
        if not self.s > self.q:
            raise ValueError("theta needs s > q")
        if not 1 <= self.beta <= self.q:
            raise ValueError(f"beta={self.beta} outside 1..q={self.q}")

    @property
    def value(self):
        return theta(self)

    def in_domain(self, n):
        """q = 2^l - 1 with 2^l <= 2n and s = 2^u - 1 with 2^u <= 32n."""
        return self.q + 1 <= 2 * n and self.s + 1 <= 32 * n

    def __str__(self):
        return f"ϑ_{self.beta}^({self.q},{self.s})"


def theta(term, q=None, s=None):
    """beta (s - q): difference of Green's squares at orders s and q."""
    if not isinstance(term, ThetaTerm):
        term = ThetaTerm(term, q, s)
    return term.beta * (term.s - term.q)


def green_square_differences(p):
    """The rows beta(p'-beta+1), beta(p-beta+1) and their differences for beta = 1..p."""
    pp = 2 * p + 1
    upper = [b * (pp - b + 1) for b in range(1, p + 1)]
    lower = [b * (p - b + 1) for b in range(1, p + 1)]
    return upper, lower, [u - l for u, l in zip(upper, lower)]


@dataclass
class ParafermialExpr:
    terms: list            # (coefficient, ThetaTerm)

    @property
    def value(self):
        return sum(c * t.value for c, t in self.terms)

    @property
    def order(self):
        return len({t.q for _, t in self.terms})

    def __str__(self):
        return " + ".join(f"{c}·{t}" for c, t in self.terms)


def verify_parafermial(target, expr):
    rep = Report(f"parafermial {target}")
    rep.check(expr.value == target, f"{expr} = {expr.value} != {target}")
    return rep


def carry_bit_expr(pairs):
    """sum of i_q * theta^(q, 2q+1) terms given as (i_q, q); theta_1^(q,2q+1) = q + 1."""
    return sum(i * (q + 1) for i, q in pairs)


GMAX_DECOMPOSITION = [(41, 2 ** 14 - 1), (113, 2 ** 13 - 1), (17, 2 ** 12 - 1), (11, 2 ** 11 - 1),
                      (5, 2 ** 9 - 1), (1, 2 ** 6 - 1), (3, 2 ** 5 - 1), (1, 2 ** 4 - 1)]


def verify_gmax_decomposition(p=15, pp=31):
    """Delta G_max of the window as sum of i_q * 2^l with i_q drawn from the representatives."""
    rep = Report(f"Delta G_max ({p},{pp}) decomposition")
    target = merged_window(p, pp)[-1]
    pool = set()
    for r in range(3, p + 1):
        if is_paraorder(r):
            pool |= set(representative_values("F", r))
    value = carry_bit_expr(GMAX_DECOMPOSITION)
    rep.check(value == target, f"decomposition gives {value}, Delta G_max = {target}")
    for i, q in GMAX_DECOMPOSITION:
        rep.check(i in pool, f"coefficient {i} is not a representative through order {p}")
    rep.details.update(target=target, terms=[(i, q + 1) for i, q in GMAX_DECOMPOSITION])
    return rep


def _term_pool(qs, ss, coeffs, carry_bit):
    pool = []
    for q in qs:
        for s in ss:
            if s <= q or (carry_bit and s != 2 * q + 1):
                continue
            for beta in range(1, q + 1):
                t = ThetaTerm(beta, q, s)
                for c in coeffs:
                    pool.append((t.beta, t.q, t.s, c))
    pool.sort()
    return pool


def search_parafermial(target, n=None, qs=None, ss=None, coeffs=(1,), max_terms=4,
                       carry_bit=False, budget=2_000_000):
    """Bounded search for sum c_k theta_k = target.

    Breadth-first in the number of terms; within a term count the
    lexicographically smallest (beta, q, s, c) sequence wins.  The q and s
    ranges default to the domain tied to dimension n.  Returns
    (ParafermialExpr or None, report).
    """
    if qs is None:
        n = n or 16
        qs = [2 ** l - 1 for l in range(1, 64) if 2 ** l <= 2 * n]
    if ss is None:
        n = n or 16
        ss = [2 ** u - 1 for u in range(2, 64) if 2 ** u <= 32 * n]
    pool = _term_pool(qs, ss, coeffs, carry_bit)
    vals = [b * (s - q) * c for b, q, s, c in pool]
    first = {}
    for idx, v in enumerate(vals):
        first.setdefault(v, idx)
    rep = Report(f"search {target}")
    steps = 0

    def build(idxs):
        return ParafermialExpr([(pool[i][3], ThetaTerm(*pool[i][:3])) for i in idxs])

    def rec(start, remaining, k, chosen):
        nonlocal steps
        if k == 1:
            i = first.get(remaining)
            if i is not None and i >= start:
                return chosen + [i]
            # later duplicates of the same value
            if i is not None:
                for j in range(start, len(vals)):
                    if vals[j] == remaining:
                        return chosen + [j]
            return None
        for i in range(start, len(vals)):
            steps += 1
            if steps > budget:
                raise TimeoutError
            found = rec(i, remaining - vals[i], k - 1, chosen + [i])
            if found:
                return found
        return None

    try:
        for k in range(1, max_terms + 1):
            found = rec(0, target, k, [])
            if found:
                expr = build(found)
                rep.details.update(expression=str(expr), terms=k, steps=steps)
                return expr, rep
    except TimeoutError:
        rep.fail(f"search budget of {budget} steps exhausted")
        rep.details.update(steps=steps, budget_exhausted=True)
        return None, rep
    rep.fail(f"no expression with at most {max_terms} terms")
    rep.details["steps"] = steps
    return None, rep


# -- kissing numbers --------------------------------------------------------------

# n -> (beta, q, s) for the entries written as a single theta term
KISSING_THETA = {1: (1, 1, 3), 2: (1, 1, 7), 3: (3, 3, 7), 4: (3, 7, 15), 5: (5, 7, 15),
                 6: (3, 7, 31), 7: (1, 1, 127), 8: (1, 15, 255), 10: (7, 15, 63), 16: (9, 31, 511)}

_PATTERN_ROWS = None


def _pattern_rows():
    global _PATTERN_ROWS
    if _PATTERN_ROWS is None:
        rows = set()
        for base in (((1, 1), (1, 1)), ((5, 3), (3, 5))):
            for blk in (np.array(base, dtype=object), lambda_map(base)):
                rows |= {tuple(int(x) for x in r) for r in blk}
        _PATTERN_ROWS = rows
    return _PATTERN_ROWS


def conjecture_order(m):
    """p' = 2^(m + C_ceil(1 + m/2)) - 1 for dimension 2^m."""
    return 2 ** (m + catalan(ceil(1 + m / 2))) - 1


def beta_pairs():
    """beta index pairs: braces (1,2), (3,4), (5,6), (7,8), and the successions (8,16), (10,16)."""
    b = {n: KISSING_THETA[n][0] for n in KISSING_THETA}
    pairs = [((1, 2), (b[1], b[2])), ((3, 4), (b[3], b[4])), ((5, 6), (b[5], b[6])),
             ((7, 8), (b[7], b[8])), ((8, 16), (b[8], b[16])), ((10, 16), (b[10], b[16]))]
    return pairs


def kissing_representations():
    """Table 7 checks: values, domain, beta patterns mod 8, order formula, successions."""
    rep = Report("kissing representations")
    rows = []
    for n in range(1, 17):
        if n in KISSING_THETA:
            t = ThetaTerm(*KISSING_THETA[n])
            rep.check(t.value == kissing(n), f"n={n}: {t} = {t.value} != L_{n} = {kissing(n)}")
            rep.check(t.in_domain(n), f"n={n}: {t} outside the domain 2^l <= 2n, 2^u <= 32n")
            rows.append((n, str(t), t.value))
        else:
            rows.append((n, "2nd o. p.e.", kissing(n)))
    allowed = _pattern_rows()
    for (l, m), (bl, bm) in beta_pairs():
        pr = (bl % 8, bm % 8)
        rep.check(pr in allowed, f"beta pair n=({l},{m}) = ({bl},{bm}) -> {pr} matches no pattern row")
    for m in range(1, 5):
        n = 2 ** m
        s = KISSING_THETA[n][2]
        rep.check(conjecture_order(m) == s, f"m={m}: order formula {conjecture_order(m)} != s = {s}")
    # direct succession l + 1 = 2^m (m = 1, 2, 3): s_m = 2 s_l + 1
    for l in (1, 3, 7):
        rep.check(KISSING_THETA[l + 1][2] == 2 * KISSING_THETA[l][2] + 1,
                  f"succession {l}->{l + 1}: s does not double")
    # separation by 2nd-order expressions for 8 < l < 16: q_16 = 2 q_10 + 1
    rep.check(KISSING_THETA[16][1] == 2 * KISSING_THETA[10][1] + 1, "q_16 != 2 q_10 + 1")
    rep.details["rows"] = rows
    return rep


# -- synoptical identities --------------------------------------------------------

# (n, [(sign, sequence, p, index, printed value)]) as stated; "dG" naive G,
# "oG" oblique G, "dJ"/"oJ" likewise for the root-h triangles.
SYNOPTICAL = [
    (1, [(1, "dJ", 15, 3, 14), (-1, "oG", 15, 3, 12)]),
    (2, [(1, "dJ", 7, 1, 4), (1, "dG", 15, 1, 2)]),
    (3, [(1, "dG", 31, 7, 38), (-1, "oJ", 31, 7, 26)]),
    (4, [(1, "dG", 31, 7, 38), (-1, "dJ", 15, 3, 14)]),
    (5, [(1, "oJ", 15, 1, 38), (1, "dG", 15, 1, 2)]),
    (6, [(1, "dG", 31, 9, 86), (-1, "dJ", 15, 3, 14)]),
    (7, [(1, "dG", 15, 5, 72), (1, "oJ", 31, 5, 54)]),
    (8, [(1, "oG", 31, 1, 136), (1, "oJ", 31, 1, 104)]),
    (9, [(1, "oG", 31, 10, 16994), (-1, "oJ", 31, 8, 16722)]),
    (13, [(1, "oJ", 31, 4, 1226), (-1, "dG", 31, 6, 320)]),
]


def synoptical_check(identities=None):
    """Verify each stated identity by index lookup into the computed sequences.

    Both the printed arithmetic and every looked-up term must agree; where a
    lookup differs, the positions at which the printed value does occur are
    reported.
    """
    rep = Report("synoptical identities")
    identities = SYNOPTICAL if identities is None else identities
    rows = []
    for n, terms in identities:
        printed = sum(sg * v for sg, _, _, _, v in terms)
        rep.check(printed == kissing(n), f"L_{n}: printed terms give {printed} != {kissing(n)}")
        got = 0
        for sg, name, p, idx, v in terms:
            x = lookup(name, p, idx)
            got += sg * x
            if x != v:
                where = [(nm, i + 1) for nm in ("dG", "oG", "dJ", "oJ")
                         for i, y in enumerate(sequence(nm, p)) if y == v]
                rep.fail(f"L_{n}: {name}_{idx}^({p}) = {x}, printed {v}; printed value found at {where}")
        rep.check(got == kissing(n), f"L_{n}: lookups give {got} != {kissing(n)}")
        rows.append((n, kissing(n), got))
    rep.details["rows"] = rows
    return rep


def allocation_solve(m, lambdas):
    """Dimension indices i, j, k, l = 2^m + partial sums of the lambdas."""
    lam = list(lambdas)
    if len(lam) != 4:
        raise ValueError("four lambda values expected")
    base = 2 ** m
    out, acc = [], 0
    for x in lam:
        acc += x
        out.append(base + acc)
    span = out[-1] - base
    periods = 1 if span <= 8 else 2 if span <= 16 else None
    return tuple(out), periods

"""Quadrant navigation and the structural bookkeeping of the G and J triangles.

Quadrant paths are strings or sequences of UL/UR/LL/LR steps, read left to
right, so "LLULUR" means: lower-left quadrant, then its upper-left quadrant,
then the upper-right quadrant of that.
"""

import re
from dataclasses import dataclass

import numpy as np

from .exact_core import OperatorMatrix, catalan
from .report import Report
from .rootseq import CoeffTriangle, member, triangle

STEPS = {"UL": (0, 0), "UR": (0, 1), "LL": (1, 0), "LR": (1, 1)}


def parse_path(path):
    if isinstance(path, str):
        if not re.fullmatch(r"((UL|UR|LL|LR))*", path):
            raise ValueError(f"bad quadrant path {path!r}")
        return [path[i:i + 2] for i in range(0, len(path), 2)]
    steps = list(path)
    for s in steps:
        if s not in STEPS:
            raise ValueError(f"bad quadrant step {s!r}")
    return steps


def _as_array(m):
    if isinstance(m, CoeffTriangle):
        return m.square()
    if isinstance(m, OperatorMatrix):
        return None
    return np.asarray(m, dtype=object)


def locate(size, path):
    """(row offset, col offset, size) of the addressed dyadic block."""
    r = c = 0
    for s in parse_path(path):
        if size < 2 or size % 2:
            raise ValueError(f"path {path!r} too deep for this matrix")
        size //= 2
        dr, dc = STEPS[s]
        r += dr * size
        c += dc * size
    return r, c, size


def navigate(m, path):
    """The dyadic submatrix addressed by a quadrant path."""
    a = _as_array(m)
    if a is None:
        r, c, s = locate(m.dim, path)
        return m.submatrix(r, c, s)
    r, c, s = locate(a.shape[0], path)
    return a[r:r + s, c:c + s].copy()


def secondary_reflection(a):
    """Reflect a square array in its secondary (anti-) diagonal."""
    return a[::-1, ::-1].T.copy()


def _all_paths(depth):
    out = [[]]
    frontier = [[]]
    for _ in range(depth):
        frontier = [p + [s] for p in frontier for s in STEPS]
        out.extend(frontier)
    return out


def check_secondary_symmetry(m, depth):
    """Every quadrant down to ``depth`` steps equals its secondary-diagonal reflection."""
    a = m.int_array() if isinstance(m, OperatorMatrix) else _as_array(m)
    rep = Report(f"secondary symmetry depth={depth}")
    for path in _all_paths(depth):
        try:
            r0, c0, s = locate(a.shape[0], path)
        except ValueError:
            continue
        sub = a[r0:r0 + s, c0:c0 + s]
        ref = secondary_reflection(sub)
        bad = np.argwhere(sub != ref)
        name = "".join(path) or "whole"
        for i, j in bad[:3]:
            rep.fail(f"{name}: ({r0 + i + 1},{c0 + j + 1}) = {sub[i, j]} but mirror holds {ref[i, j]}")
    return rep


def _coeff(kind, p):
    return triangle(kind, p).square()


def check_interordinal_f(p):
    """LLULUR G^(p') = LLLL G^(p) + 2 LLUR G^(p) with p' = 2p + 1."""
    g, gp = _coeff("F", p), _coeff("F", 2 * p + 1)
    lhs = navigate(gp, "LLULUR")
    rhs = navigate(g, "LLLL") + 2 * navigate(g, "LLUR")
    rep = Report(f"interordinal f p={p}->{2 * p + 1}")
    rep.check(np.array_equal(lhs, rhs), f"LLULUR G' = {lhs.tolist()} != {rhs.tolist()}")
    rep.details["LLULUR"] = lhs.tolist()
    return rep


def check_intraordinal_f(pp):
    """LLLLUR G^(p') = LLULLL G^(p') + 2 LLULUR G^(p')."""
    gp = _coeff("F", pp)
    lhs = navigate(gp, "LLLLUR")
    rhs = navigate(gp, "LLULLL") + 2 * navigate(gp, "LLULUR")
    rep = Report(f"intraordinal f p'={pp}")
    rep.check(np.array_equal(lhs, rhs), f"LLLLUR G' = {lhs.tolist()} != {rhs.tolist()}")
    return rep


def check_boxed_areas(pp):
    """LLUL and LLLR of G^(p') coincide (consequence of the two relations)."""
    gp = _coeff("F", pp)
    rep = Report(f"boxed areas p'={pp}")
    a, b = navigate(gp, "LLUL"), navigate(gp, "LLLR")
    rep.check(np.array_equal(a, b), "LLUL != LLLR")
    return rep


def check_h_relations(p, j=None, jp=None):
    """The root-h analogues of the two relations, with the sign flipped to -2.

    ``j`` and ``jp`` may be supplied (as square arrays) to test tampered data.
    """
    j = _coeff("H", p) if j is None else np.asarray(j, dtype=object)
    jp = _coeff("H", 2 * p + 1) if jp is None else np.asarray(jp, dtype=object)
    rep = Report(f"h relations p={p}->{2 * p + 1}")
    lhs = navigate(jp, "LLULUR")
    rhs = navigate(j, "LLLL") - 2 * navigate(j, "LLUR")
    rep.check(np.array_equal(lhs, rhs), f"LLULUR J' = {lhs.tolist()} != {rhs.tolist()}")
    lhs = navigate(jp, "LLLLUR")
    rhs = navigate(jp, "LLULLL") - 2 * navigate(jp, "LLULUR") + 2 * navigate(j, "LLUR")
    rep.check(np.array_equal(lhs, rhs), f"LLLLUR J' = {lhs.tolist()} != {rhs.tolist()}")
    return rep


# -- Catalan bookkeeping ----------------------------------------------------

@dataclass
class CatalanIdentity:
    cells: list          # LL-local (row, col), 0-based
    index: int           # Catalan index k
    label: str


def catalan_identities(q):
    """Index sets of the LL quadrant (side q+1) whose sums give Catalan numbers.

    Every diagonal entry gives C_q; inside each aligned dyadic block of side
    b = 2h the mirrored pair at distance h gives C_{q+h}, and the block's
    anti-diagonal gives C_{q+b-1}.  The whole anti-diagonal yields C_{2q}.
    """
    n = q + 1
    out = [CatalanIdentity([(i, i)], q, "diagonal") for i in range(n)]
    h = 1
    while 2 * h <= n:
        b = 2 * h
        for o in range(0, n, b):
            for r in range(h):
                out.append(CatalanIdentity([(o + r, o + r + h), (o + r + h, o + r)], q + h, f"pair h={h}"))
            if b > 2:
                out.append(CatalanIdentity([(o + r, o + b - 1 - r) for r in range(b)], q + b - 1,
                                           f"anti-diagonal b={b}"))
        h *= 2
    return out


def _ll_global(cell, p):
    """1-based (mu, nu) of an LL-local cell."""
    half = (p + 1) // 2
    i, j = cell
    return half // 2 + i + 1, j + 1


def catalan_traces(t, p=None):
    """Verify the Catalan-valued (near-) traces of the LL quadrant.

    For root-h triangles each entry is weighted by (-1)^popcount(row) in LL
    coordinates; the sums then equal +-C_k.
    """
    if not isinstance(t, CoeffTriangle):
        raise TypeError("expected a CoeffTriangle")
    p = t.p if p is None else p
    if p < 7:
        raise ValueError("Catalan traces need p >= 7")
    q = (p - 3) // 4
    ll = navigate(t, "LL")
    signed = t.kind == "H"
    rep = Report(f"catalan traces {t.kind} p={p}")
    shown = []
    for ident in catalan_identities(q):
        terms = []
        for i, j in ident.cells:
            w = -1 if (signed and bin(i).count("1") % 2) else 1
            terms.append(w * int(ll[i, j]))
        s = sum(terms)
        want = catalan(ident.index)
        ok = abs(s) == want if signed else s == want
        cells = "+".join(f"G{_ll_global(c, p)[0]},{_ll_global(c, p)[1]}" for c in ident.cells)
        rep.check(ok, f"{ident.label}: {cells} = {s}, expected {'±' if signed else ''}C_{ident.index} = {want}")
        if len(shown) < 12:
            shown.append((ident.label, terms, s, ident.index))
    rep.details["sample"] = shown
    return rep


def catalan_symmetry(t, p=None):
    """Main diagonals of LL and of every dyadic sub-block of LL are constant."""
    a = navigate(t, "LL") if isinstance(t, CoeffTriangle) else np.asarray(t, dtype=object)
    rep = Report("catalan symmetry")
    n = a.shape[0]
    size = n
    while size >= 2:
        for r0 in range(0, n, size):
            for c0 in range(0, n, size):
                d = [a[r0 + k, c0 + k] for k in range(size)]
                rep.check(len(set(d)) == 1, f"block at ({r0},{c0}) size {size}: diagonal {d}")
        size //= 2
    rep.details["LL diagonal"] = int(a[0, 0])
    return rep


# -- representatives --------------------------------------------------------

@dataclass
class RepresentativeSet:
    p: int
    values: list

    @property
    def count(self):
        return len(self.values)


def representative_region(t):
    """Values of LL with its upper-right subquadrant removed."""
    ll = navigate(t, "LL")
    n = ll.shape[0]
    h = n // 2
    vals = []
    for i in range(n):
        for j in range(n):
            if n > 1 and i < h and j >= h:
                continue
            vals.append(int(ll[i, j]))
    return vals


def count_formula(p):
    """Closed form for T_p with q = (p - 7)/8."""
    q = (p - 7) // 8
    s = 0
    j = 2
    while (q - 2 ** j + 1) // 2 ** j >= 1:
        s += (q - 2 ** j + 1) // 2 ** j
        j += 1
    return (q + 1) * (q + 2) - q + 1 - 4 * s


def catalan_deficit(p, count):
    """(q''+1)^2 - C_r = T_p: the r that makes it hold (or None)."""
    side = (p + 1) // 8
    d = side * side - count
    k = 0
    while catalan(k) < d:
        k += 1
    return k if catalan(k) == d and d > 0 else None


def representatives(t, p=None):
    if t.kind != "F":
        raise ValueError("representatives are defined for root-f triangles")
    p = t.p if p is None else p
    return RepresentativeSet(p, sorted(set(representative_region(t))))


def representatives_report(p):
    """Direct distinct count against the closed form (and its Catalan-deficit form).

    From p = 63 on the two disagree: the closed form counts positions of
    LLUL and LLLL modulo secondary symmetry and part of the Catalan symmetry,
    while the built triangles repeat values beyond those symmetries.
    """
    t = triangle("F", p)
    rs = representatives(t)
    rep = Report(f"representatives p={p}")
    formula = count_formula(p)
    rep.check(rs.count == formula, f"direct count {rs.count} != closed form {formula}")
    rep.details.update(count=rs.count, formula=formula)
    if p >= 63:
        rep.details["catalan_r_formula"] = catalan_deficit(p, formula)
        rep.details["catalan_r_direct"] = catalan_deficit(p, rs.count)
        rep.check(rep.details["catalan_r_formula"] is not None,
                  "no Catalan index r reproduces the closed-form deficit")
    return rep


def f_matrix(p):
    return member("F", p)[0]

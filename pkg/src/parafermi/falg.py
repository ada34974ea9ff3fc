"""Orthogonal decomposition of root-f members, the f-parafermi algebra and
its heterotic variant with a companion matrix g.

A member of dimension 2n is split into n parts f_v, v = 0..n-1; part v keeps
the 2x2 blocks at block positions (mu, s_v(mu)) with s_v(mu) = mu XOR v
(0-based); the permutations s_v form a group isomorphic to Z_2^(n-1)
under composition.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact_core import OperatorMatrix, check_paraorder, solve_linear, spin_diagonal
from .report import Report
from .rootseq import member

FACTOR_NAMES = ("chi", "sigma", "tau", "gamma")
SYMMETRIES = ("none", "S1", "S2", "S3")


# -- plain rational matrices ------------------------------------------------

def _zeros(n):
    z = np.empty((n, n), dtype=object)
    z[...] = Fraction(0)
    return z


def _rational(m):
    """OperatorMatrix (rational entries only) -> Fraction object array."""
    if set(m.parts) != {1}:
        raise ValueError("matrix has irrational entries")
    out = _zeros(m.dim)
    for idx, x in np.ndenumerate(m.parts[1]):
        out[idx] = Fraction(int(x), m.den)
    return out


def _to_operator(a):
    return OperatorMatrix.from_entries(a.tolist())


def _comm(a, b):
    return a.dot(b) - b.dot(a)


# -- decomposition ------------------------------------------------------------

def index_permutation(v, mu):
    """s_v(mu) in 1-based block indices."""
    return ((mu - 1) ^ v) + 1


def permutation_positions(n_blocks, v):
    """Block positions of part v as 1-based (row, col) pairs, e.g. 14+23+32+41."""
    return [(mu, index_permutation(v, mu)) for mu in range(1, n_blocks + 1)]


def decompose(x):
    """Split x into the parts f_v; their sum is x."""
    a = x if isinstance(x, np.ndarray) else None
    dim = a.shape[0] if a is not None else x.dim
    if dim < 2 or dim & (dim - 1):
        raise ValueError(f"dimension {dim} is not a power of two")
    n = dim // 2
    if a is None:
        a = _rational(x)
    parts = []
    for v in range(n):
        fv = a * 0
        for mu in range(n):
            nu = mu ^ v
            fv[2 * mu:2 * mu + 2, 2 * nu:2 * nu + 2] = a[2 * mu:2 * mu + 2, 2 * nu:2 * nu + 2]
        parts.append(fv)
    if isinstance(x, np.ndarray):
        return parts
    return [_to_operator(fv) for fv in parts]


def _f(p):
    return _rational(member("F", p)[0])


def _ints(a):
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        if x.denominator != 1:
            raise ValueError("integer matrix expected")
        out[idx] = int(x)
    return out


def _bracket(fv, reduce):
    a, b = fv.T.dot(fv), fv.dot(fv.T)
    if reduce:
        a, b = a % 8, b % 8
    return a - b


def spin_sum(parts, reduce=False):
    """1/2 [f0^T, f0] + sum_{v>=1} [f_v^T, f_v]; optionally with the diagonal
    products reduced mod 8 (entrywise) before the commutator is formed."""
    return Fraction(1, 2) * _spin_sum2([_ints(fv) for fv in parts], reduce)


def _spin_sum2(parts, reduce):
    tot = _bracket(parts[0], reduce)
    for fv in parts[1:]:
        tot = tot + 2 * _bracket(fv, reduce)
    return tot


def trilinear_sums(parts, reduce=False):
    """(sum_v [[f_v^T, f_v], f_v], sum_v [[f_v^T, f_v], f_v^T]) on integer parts."""
    s = t = 0
    for fv in parts:
        c = _bracket(fv, reduce)
        s = s + _comm(c, fv)
        t = t + _comm(c, fv.T)
    return s, t


def _algebra_report(name, f, p, reduce):
    rep = Report(name)
    f = _ints(f)
    parts = decompose(f)
    rep.check(np.array_equal(sum(parts[1:], parts[0]), f), "sum of parts != f")
    two_spin = _zeros(p + 1)
    for k in range(p + 1):
        two_spin[k, k] = p - 2 * k
    got = _spin_sum2(parts, reduce)
    _diff(rep, got, two_spin, "2 x spin sum")
    s, t = trilinear_sums(parts, reduce)
    _diff(rep, s, -2 * f, "sum [[fv+,fv],fv]")
    _diff(rep, t, 2 * f.T, "sum [[fv+,fv],fv+]")
    rep.details["spin"] = [str(Fraction(int(got[i, i]), 2)) for i in range(p + 1)]
    return rep


def _diff(rep, got, want, label):
    bad = np.argwhere(got != want)
    for i, j in bad[:5]:
        rep.fail(f"{label}: entry ({i + 1},{j + 1}) = {got[i, j]}, expected {want[i, j]}")
    if len(bad) > 5:
        rep.fail(f"{label}: {len(bad)} entries differ in total")


def verify_f_algebra(p, mod8=None):
    """Spin and trilinear relations of the decomposed f.

    Exact for p in {3, 7}.  For p >= 15 the mod-8 reading is used unless
    ``mod8=False`` is passed, in which case the exact relations are tested
    (and are expected to fail).
    """
    p = check_paraorder(p)
    if p < 3:
        raise ValueError("the decomposition needs p >= 3")
    reduce = p >= 15 if mod8 is None else mod8
    label = "mod 8" if reduce else "exact"
    return _algebra_report(f"f-algebra {label} p={p}", _f(p), p, reduce)


def verify_mod8_algebra(p):
    """Spin and trilinear sums with every diagonal product reduced mod 8."""
    p = check_paraorder(p)
    return _algebra_report(f"f-algebra mod 8 p={p}", _f(p), p, True)


def spin_linear_terms(p):
    """Diagonal of 1/2[f0+,f0] and of each [fv+,fv] (the spin as sums of linear terms)."""
    parts = decompose(_f(p))
    cols = []
    for v, fv in enumerate(parts):
        c = _bracket(fv, False)
        if v == 0:
            c = c / 2
        cols.append([c[i, i] for i in range(p + 1)])
    return cols


# -- heterotic companion g ----------------------------------------------------

@dataclass
class ParametricMatrix:
    """g = base + sum_k params[k] * directions[k] (all Fraction arrays)."""

    base: np.ndarray
    params: list = field(default_factory=list)
    directions: list = field(default_factory=list)

    def at(self, values=None):
        values = values or {}
        out = self.base.copy()
        for name, d in zip(self.params, self.directions):
            t = Fraction(values.get(name, 0))
            if t:
                out = out + t * d
        return out

    def operator(self, values=None):
        return _to_operator(self.at(values))

    def entry_text(self, i, j):
        terms = [str(self.base[i, j])] if self.base[i, j] or not self.params else []
        for name, d in zip(self.params, self.directions):
            if d[i, j]:
                terms.append(f"{d[i, j]}*{name}")
        return " + ".join(terms) or "0"


@dataclass
class NormalizingFactors:
    """Affine expressions: name -> (constant, {parameter: coefficient})."""

    values: dict
    params: list

    def at(self, **kw):
        return {k: c + sum(v * Fraction(kw.get(r, 0)) for r, v in lin.items())
                for k, (c, lin) in self.values.items()}

    def text(self):
        out = {}
        for k, (c, lin) in self.values.items():
            terms = [f"{v}*{r}" for r, v in sorted(lin.items())]
            if c or not terms:
                terms.insert(0, str(c))
            out[k] = " + ".join(terms)
        return out

    @property
    def empty(self):
        return not self.values


def _unknown_names(n):
    names = []
    for m in range(1, n + 1):
        for v in range(1, n + 1):
            names += [f"H{m}{v}", f"K{m}{v}"]
    return names


def _unknown_basis(n):
    """Unit matrices of each unknown: block (m, v) = H c2 + K c3."""
    dim = 2 * n
    out = []
    for m in range(n):
        for v in range(n):
            for kind in ("H", "K"):
                e = np.zeros((dim, dim), dtype=int).astype(object)
                e[2 * m, 2 * v + 1] = 1
                e[2 * m + 1, 2 * v] = 1 if kind == "H" else -1
                out.append(e)
    return out


def _bar(a):
    """Reflection in the secondary diagonal: bar(A)[i][j] = A[n-1-j][n-1-i]."""
    return a[::-1, ::-1].T


def _symmetry_rows(sym, basis):
    """Extra linear equations (coefficient rows, rhs) for a symmetry family."""
    if sym in (None, "none"):
        return [], []
    sym = sym.upper()
    if sym not in SYMMETRIES:
        raise ValueError(f"unknown symmetry {sym!r}")
    dim = basis[0].shape[0]
    h = dim // 2

    def quads(e):
        return e[:h, :h], e[:h, h:], e[h:, :h], e[h:, h:]

    exprs = []   # each expression: a linear map basis-matrix -> array that must vanish
    if sym == "S1":
        exprs = [lambda e: quads(e)[2] + quads(e)[1].T, lambda e: quads(e)[3] - quads(e)[0]]
    elif sym == "S2":
        exprs = [lambda e: quads(e)[2] + quads(e)[1].T, lambda e: quads(e)[3] - _bar(quads(e)[0])]
    else:
        q = h // 2
        exprs = [lambda e: quads(e)[0][q:, :q], lambda e: quads(e)[3] - _bar(quads(e)[0])]
    rows, rhs = [], []
    for ex in exprs:
        imgs = [ex(e) for e in basis]
        for idx in np.ndindex(imgs[0].shape):
            row = {k: im[idx] for k, im in enumerate(imgs) if im[idx] != 0}
            if row:
                rows.append(row)
                rhs.append(Fraction(0))
    return rows, rhs


def _linear_rows(maps, target):
    """Rows of sum_k x_k maps[k] = target, entrywise."""
    rows, rhs = [], []
    for idx in np.ndindex(target.shape):
        row = {k: m[idx] for k, m in enumerate(maps) if m[idx] != 0}
        if row or target[idx] != 0:
            rows.append(row)
            rhs.append(target[idx])
    return rows, rhs


def heterotic_system(f, symmetry=None):
    """Linear system in the H, K unknowns for [[f+,f],g] = -2f, [[f+,f],g+] = 2f+."""
    dim = f.shape[0]
    n = dim // 2
    if all(x.denominator == 1 for x in f.flat):
        f = _ints(f)
    d = _comm(f.T, f)
    basis = _unknown_basis(n)
    rows, rhs = _linear_rows([_comm(d, e) for e in basis], -2 * f)
    r2, b2 = _linear_rows([_comm(d, e.T) for e in basis], 2 * f.T)
    r3, b3 = _symmetry_rows(symmetry, basis)
    return rows + r2 + r3, rhs + b2 + b3, basis, _unknown_names(n)


def _parametric_from_solution(sol, basis, names):
    part, vecs, free = sol
    base = _zeros(basis[0].shape[0])
    for k, x in enumerate(part):
        if x:
            base = base + x * basis[k]
    dirs = []
    for v in vecs:
        m = _zeros(base.shape[0])
        for k, x in enumerate(v):
            if x:
                m = m + x * basis[k]
        dirs.append(m)
    return ParametricMatrix(base, [names[c] for c in free], dirs)


def solve_g(p, symmetry=None, f=None):
    """Parametric g solving the heterotic equations, or None if inconsistent."""
    p = check_paraorder(p)
    f = _f(p) if f is None else f
    rows, rhs, basis, names = heterotic_system(f, symmetry)
    sol = solve_linear(rows, rhs, len(basis))
    if sol is None:
        return None
    return _parametric_from_solution(sol, basis, names)


def factor_terms(f, g):
    """The four matrices multiplying chi, sigma, tau, gamma."""
    dim = f.shape[0]
    t = [_zeros(dim) for _ in range(4)]
    for fv, gv in zip(decompose(f), decompose(g)):
        t[0] = t[0] + _comm(fv.T, fv)
        t[1] = t[1] + _comm(fv.T, gv) + _comm(gv.T, fv)
        t[2] = t[2] + _comm(fv, gv) + _comm(gv.T, fv.T)
        t[3] = t[3] + _comm(gv, gv.T)
    return t


def solve_factors(f, g, p):
    """Normalizing factors making the ansatz sum equal the spin diagonal.

    A parametric g must satisfy the ansatz identically in its parameters;
    since the sum is at most quadratic in them, three sample values per
    parameter suffice.  Free factors become parameters r1, r2, ... counted
    from the last factor column backwards.
    """
    spin = _rational(spin_diagonal(p))
    if isinstance(g, ParametricMatrix):
        grid = itertools.product((0, 1, 2), repeat=len(g.params))
        samples = [g.at(dict(zip(g.params, pt))) for pt in grid]
    else:
        samples = [g]
    rows, rhs = [], []
    for gs in samples:
        r, b = _linear_rows(factor_terms(f, gs), spin)
        rows += r
        rhs += b
    sol = solve_linear(rows, rhs, 4)
    if sol is None:
        return NormalizingFactors({}, [])
    part, vecs, free = sol
    rname = {c: f"r{k + 1}" for k, c in enumerate(sorted(free, reverse=True))}
    values = {}
    for i, name in enumerate(FACTOR_NAMES):
        lin = {rname[c]: v[i] for c, v in zip(free, vecs) if v[i]}
        values[name] = (part[i], lin)
    return NormalizingFactors(values, [rname[c] for c in sorted(free, reverse=True)])


def solve_heterotic(p, symmetry=None):
    """(g, factors, factors at zero g-parameters); g is None if inconsistent."""
    p = check_paraorder(p)
    if p not in (3, 7):
        raise ValueError("heterotic g is solved for p in {3, 7} only")
    f = _f(p)
    g = solve_g(p, symmetry, f)
    if g is None:
        return None, NormalizingFactors({}, []), NormalizingFactors({}, [])
    fac = solve_factors(f, g, p)
    fac0 = solve_factors(f, g.at(), p) if g.params else fac
    return g, fac, fac0


def verify_heterotic(p, symmetry=None):
    rep = Report(f"heterotic p={p} symmetry={symmetry or 'none'}")
    g, fac, fac0 = solve_heterotic(p, symmetry)
    if g is None:
        rep.fail("heterotic equations inconsistent")
        return rep
    f = _f(p)
    d = _comm(f.T, f)
    for pt in itertools.product((0, 1, -1), repeat=len(g.params)):
        gs = g.at(dict(zip(g.params, pt)))
        rep.check(np.array_equal(_comm(d, gs), -2 * f), f"[[f+,f],g] != -2f at {pt}")
        rep.check(np.array_equal(_comm(d, gs.T), 2 * f.T), f"[[f+,f],g+] != 2f+ at {pt}")
    rep.details.update(g_params=g.params, factors=fac.text(), factors_zero_params=fac0.text())
    return rep


STANDARD_FACTORS = {"chi": Fraction(1), "sigma": Fraction(-1, 4), "tau": Fraction(1, 4), "gamma": Fraction(0)}


def f_circ(p):
    """f with each LTM coefficient replaced by its residue mod 8 (signs kept)."""
    from .mod8 import f_mod8
    return _rational(f_mod8(p))


def verify_mod8_heterotic(p, factors=None):
    """Heterotic relations with f replaced by its mod-8 reduced form.

    The standard factor set is imposed first (its ansatz equation joins the
    linear system for g); if that system is inconsistent the factors are
    re-solved for the g found without it.  Both outcomes are reported.
    """
    p = check_paraorder(p)
    f = _f(p) if p < 15 else f_circ(p)
    factors = STANDARD_FACTORS if factors is None else factors
    rep = Report(f"mod-8 heterotic p={p}")
    rows, rhs, basis, names = heterotic_system(f)
    spin = _rational(spin_diagonal(p))
    # with fixed factors the ansatz is quadratic in g only through gamma
    fparts = decompose(_ints(f))
    n = len(fparts)
    lin = []
    for k, e in enumerate(basis):
        # unknown k sits in block (m, v), which belongs to part m XOR v only
        m, v = divmod(k // 2, n)
        fv = fparts[m ^ v]
        t1 = _comm(fv.T, e) + _comm(e.T, fv)
        t2 = _comm(fv, e) + _comm(e.T, fv.T)
        lin.append(factors["sigma"] * t1 + factors["tau"] * t2)
    if factors["gamma"] == 0:
        t0 = sum(_comm(fv.T, fv) for fv in fparts)
        r, b = _linear_rows(lin, spin - factors["chi"] * t0)
        sol = solve_linear(rows + r, rhs + b, len(basis))
    else:
        sol = None
    if sol is not None:
        g = _parametric_from_solution(sol, basis, names)
        rep.details.update(mode="standard factors", factors={k: str(v) for k, v in factors.items()},
                           g_params=g.params)
        return rep
    rep.details["standard_factors"] = "inconsistent"
    sol = solve_linear(rows, rhs, len(basis))
    if sol is None:
        rep.fail("heterotic equations for f° are inconsistent")
        return rep
    g = _parametric_from_solution(sol, basis, names)
    fac = solve_factors(f, g, p)
    fac0 = solve_factors(f, g.at(), p) if g.params else fac
    rep.details.update(mode="re-solved", g_params=g.params, factors=fac.text(),
                       factors_zero_params=fac0.text())
    rep.check(not (fac.empty and fac0.empty), "no normalizing factor set exists for f°")
    return rep

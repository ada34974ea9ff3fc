"""Exact scalars of the form sum q_d * sqrt(d) and matrices built from them.

Matrices keep one integer numpy object array per squarefree radicand plus a
single shared positive denominator.  That keeps the root-sequence matrices
(all entries integer) on a single fast integer path while still allowing the
radical entries of the Green representation.
"""

from fractions import Fraction
from math import gcd, isqrt
import json

import numpy as np


def _squarefree_split(n):
    """Return (c, d) with n = c*c*d and d squarefree, by trial division."""
    if n < 0:
        raise ValueError("radicand must be nonnegative")
    if n == 0:
        return 0, 1
    c, d = 1, 1
    m = n
    k = 2
    while k * k <= m:
        if m % k == 0:
            e = 0
            while m % k == 0:
                m //= k
                e += 1
            c *= k ** (e // 2)
            if e % 2:
                d *= k
        k += 1 if k == 2 else 2
        if k > 10**6:
            break
    if m > 1:
        # leftover cofactor: either prime or beyond the trial bound
        r = isqrt(m)
        if r * r == m:
            c *= r
        elif k > 10**6:
            from sympy import factorint
            for q, e in factorint(m).items():
                c *= q ** (e // 2)
                if e % 2:
                    d *= q
        else:
            d *= m
    return c, d


class ExactScalar:
    """Immutable formal sum of rational multiples of square roots.

    ``terms`` maps a squarefree radicand (1 meaning the rational part) to a
    nonzero Fraction.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for d, q in terms.items():
                q = Fraction(q)
                if q == 0:
                    continue
                c, s = _squarefree_split(int(d))
                if c == 0:
                    continue
                clean[s] = clean.get(s, Fraction(0)) + q * c
            clean = {d: q for d, q in clean.items() if q != 0}
        self._terms = clean

    @classmethod
    def rational(cls, q):
        return cls({1: q})

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def is_rational(self):
        return set(self._terms) <= {1}

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    def __float__(self):
        return float(sum(float(q) * d ** 0.5 for d, q in self._terms.items()))

    @staticmethod
    def _coerce(x):
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction, np.integer)):
            return ExactScalar({1: Fraction(int(x)) if isinstance(x, np.integer) else x})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._terms)
        for d, q in other._terms.items():
            t[d] = t.get(d, Fraction(0)) + q
        return ExactScalar(t)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar({d: -q for d, q in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = {}
        for d, q in self._terms.items():
            for e, r in other._terms.items():
                g = gcd(d, e)
                key = (d // g) * (e // g)
                t[key] = t.get(key, Fraction(0)) + q * r * g
        return ExactScalar(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactScalar({d: q / other for d, q in self._terms.items()})
        other = self._coerce(other)
        if other.is_rational():
            return self / other.to_fraction()
        raise TypeError("division by an irrational scalar is not supported")

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def square(self):
        return self * self

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for d in sorted(self._terms):
            q = self._terms[d]
            if d == 1:
                parts.append(str(q))
            elif q == 1:
                parts.append(f"√{d}")
            elif q == -1:
                parts.append(f"-√{d}")
            else:
                parts.append(f"{q}√{d}")
        return " + ".join(parts).replace("+ -", "- ")


def normalize_sqrt(n):
    """sqrt(n) as an ExactScalar c*sqrt(d) with d squarefree, e.g. 12 -> 2√3."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    c, d = _squarefree_split(n)
    return ExactScalar({d: c}) if c else ExactScalar()


def _lcm(a, b):
    return a * b // gcd(a, b)


class OperatorMatrix:
    """Square matrix of ExactScalar entries with paraorder metadata.

    Internally ``parts[d]`` is an integer object array and ``den`` a common
    denominator, so that entry (i, j) equals sum_d parts[d][i, j]*sqrt(d)/den.
    """

    def __init__(self, parts, den=1, paraorder=None):
        dims = {a.shape for a in parts.values()}
        if len(dims) > 1:
            raise ValueError("inconsistent part shapes")
        if not parts:
            raise ValueError("use OperatorMatrix.zeros for empty matrices")
        (shape,) = dims
        if shape[0] != shape[1]:
            raise ValueError("matrix must be square")
        self.dim = shape[0]
        self.paraorder = self.dim - 1 if paraorder is None else paraorder
        if self.paraorder + 1 != self.dim:
            raise ValueError("dim must equal paraorder + 1")
        self.parts, self.den = self._canonical(parts, den)

    @staticmethod
    def _canonical(parts, den):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        shape = next(iter(parts.values())).shape
        kept = {}
        for d, a in parts.items():
            if any(x != 0 for x in a.flat):
                kept[d] = a
        if den < 0:
            kept = {d: -a for d, a in kept.items()}
            den = -den
        g = den
        for a in kept.values():
            for x in a.flat:
                if x:
                    g = gcd(g, x)
                    if g == 1:
                        break
            if g == 1:
                break
        if g > 1:
            kept = {d: a // g for d, a in kept.items()}
            den //= g
        if not kept:
            z = np.empty(shape, dtype=object)
            z[...] = 0
            kept, den = {1: z}, 1
        return kept, den

    # -- constructors -------------------------------------------------
    @classmethod
    def zeros(cls, dim):
        z = np.empty((dim, dim), dtype=object)
        z[...] = 0
        return cls({1: z})

    @classmethod
    def identity(cls, dim):
        m = np.empty((dim, dim), dtype=object)
        m[...] = 0
        for i in range(dim):
            m[i, i] = 1
        return cls({1: m})

    @classmethod
    def from_int_array(cls, a):
        a = np.asarray(a)
        m = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            m[idx] = int(x)
        return cls({1: m})

    @classmethod
    def from_entries(cls, rows):
        """Build from nested lists of int / Fraction / ExactScalar."""
        n = len(rows)
        scal = [[ExactScalar._coerce(x) if not isinstance(x, float) else None for x in r] for r in rows]
        if any(x is None or x is NotImplemented for r in scal for x in r):
            raise TypeError("entries must be exact (int, Fraction or ExactScalar)")
        den = 1
        for r in scal:
            for x in r:
                for q in x._terms.values():
                    den = _lcm(den, q.denominator)
        parts = {}
        for i, r in enumerate(scal):
            if len(r) != n:
                raise ValueError("matrix must be square")
            for j, x in enumerate(r):
                for d, q in x._terms.items():
                    if d not in parts:
                        parts[d] = np.empty((n, n), dtype=object)
                        parts[d][...] = 0
                    parts[d][i, j] = int(q * den)
        if not parts:
            return cls.zeros(n)
        return cls(parts, den)

    # -- access ---------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return ExactScalar({d: Fraction(int(a[i, j]), self.den) for d, a in self.parts.items()})

    def entries(self):
        return [[self[i, j] for j in range(self.dim)] for i in range(self.dim)]

    def is_integer(self):
        return self.den == 1 and set(self.parts) == {1}

    def int_array(self):
        """Integer object array; only valid for integer matrices."""
        if not self.is_integer():
            raise ValueError("matrix has non-integer entries")
        return self.parts[1].copy()

    def radicands(self):
        return sorted(self.parts)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other):
        if not isinstance(other, OperatorMatrix):
            raise TypeError("expected OperatorMatrix")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _combine(self, other, sign):
        self._check(other)
        den = _lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        parts = {d: a * fa for d, a in self.parts.items()}
        for d, b in other.parts.items():
            if d in parts:
                parts[d] = parts[d] + sign * fb * b
            else:
                parts[d] = sign * fb * b
        return OperatorMatrix(parts, den)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return OperatorMatrix({d: -a for d, a in self.parts.items()}, self.den)

    def scale(self, q):
        """Multiply by a rational scalar."""
        q = Fraction(q)
        return OperatorMatrix({d: a * q.numerator for d, a in self.parts.items()},
                              self.den * q.denominator)

    def __mul__(self, q):
        if isinstance(q, (int, Fraction)):
            return self.scale(q)
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check(other)
        n = self.dim
        acc = {}
        rows_nz = {e: np.array([any(x != 0 for x in r) for r in b]) for e, b in other.parts.items()}
        for d, a in self.parts.items():
            cols_nz = np.array([any(x != 0 for x in c) for c in a.T])
            for e, b in other.parts.items():
                k = np.nonzero(cols_nz & rows_nz[e])[0]
                if k.size == 0:
                    continue
                if k.size == n:
                    prod = a.dot(b)
                else:
                    prod = a[:, k].dot(b[k, :])
                g = gcd(d, e)
                key = (d // g) * (e // g)
                if g != 1:
                    prod = prod * g
                acc[key] = acc[key] + prod if key in acc else prod
        if not acc:
            return OperatorMatrix.zeros(n)
        return OperatorMatrix(acc, self.den * other.den)

    @property
    def T(self):
        return OperatorMatrix({d: a.T.copy() for d, a in self.parts.items()}, self.den)

    adjoint = T

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix) or other.dim != self.dim:
            return False
        if self.den != other.den or set(self.parts) != set(other.parts):
            return False
        return all(np.array_equal(self.parts[d], other.parts[d]) for d in self.parts)

    __hash__ = None

    def is_zero(self):
        return set(self.parts) == {1} and not any(x != 0 for x in self.parts[1].flat)

    def power(self, k):
        out = OperatorMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def submatrix(self, r0, c0, size):
        return OperatorMatrix({d: a[r0:r0 + size, c0:c0 + size].copy()
                               for d, a in self.parts.items()}, self.den)

    def kron(self, small):
        """Kronecker product self ⊗ small."""
        parts = {}
        for d, a in self.parts.items():
            for e, b in small.parts.items():
                g = gcd(d, e)
                key = (d // g) * (e // g)
                k = np.kron(a, b) * g
                parts[key] = parts[key] + k if key in parts else k
        return OperatorMatrix(parts, self.den * small.den)

    def nonzero_entries(self):
        """Yield (i, j, ExactScalar) for every nonzero entry."""
        for i in range(self.dim):
            for j in range(self.dim):
                if any(a[i, j] != 0 for a in self.parts.values()):
                    yield i, j, self[i, j]

    # -- serialization --------------------------------------------------
    def to_json(self):
        entries = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                x = self[i, j]
                row.append([[d, q.numerator, q.denominator] for d, q in sorted(x._terms.items())])
            entries.append(row)
        return {"dim": self.dim, "paraorder": self.paraorder, "entries": entries}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, str):
            obj = json.loads(obj)
        rows = [[ExactScalar({d: Fraction(n, m) for d, n, m in cell}) for cell in row]
                for row in obj["entries"]]
        m = cls.from_entries(rows)
        if m.dim != obj["dim"]:
            raise ValueError("dim field does not match entries")
        return m

    def __repr__(self):
        if self.is_integer():
            return f"OperatorMatrix(p={self.paraorder}, {self.parts[1].tolist()})"
        return f"OperatorMatrix(p={self.paraorder}, {self.entries()})"


def mat_mul(a, b):
    return a @ b


def commutator(a, b):
    return a @ b - b @ a


def anticommutator(a, b):
    return a @ b + b @ a


def tensor_extend(a):
    """a ⊗ 1 with the 2x2 identity, doubling the dimension."""
    return a.kron(OperatorMatrix.identity(2))


def diag(values):
    n = len(values)
    rows = [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
    return OperatorMatrix.from_entries(rows)


def spin_diagonal(p):
    """diag(p/2, p/2 - 1, ..., -p/2)."""
    return diag([Fraction(p, 2) - k for k in range(p + 1)])


# Clifford blocks of Cl(2,1) and the fermi operator.
C1 = OperatorMatrix.from_int_array([[1, 0], [0, -1]])
C2 = OperatorMatrix.from_int_array([[0, 1], [1, 0]])
C3 = OperatorMatrix.from_int_array([[0, 1], [-1, 0]])
F1 = OperatorMatrix.from_int_array([[0, 0], [1, 0]])


def is_paraorder(p):
    return isinstance(p, (int, np.integer)) and p >= 1 and (p + 1) & p == 0


def check_paraorder(p):
    if not is_paraorder(p):
        raise ValueError(f"invalid paraorder {p!r}: must be 2**n - 1 with n >= 1")
    return int(p)


def catalan(k):
    """Catalan number C_k = binom(2k, k)/(k + 1), exact."""
    from math import comb
    return comb(2 * k, k) // (k + 1)


def solve_linear(rows, rhs, ncols):
    """Exact Gauss-Jordan solve of rows @ x = rhs over the rationals.

    Returns (particular, basis, free_cols) where the general solution is
    particular + sum_k t_k * basis[k], or None if the system is inconsistent.
    ``rows`` is a list of dicts {col: coefficient} (sparse) or dense lists.
    """
    m = []
    for r, b in zip(rows, rhs):
        if isinstance(r, dict):
            row = {c: Fraction(v) for c, v in r.items() if v != 0}
        else:
            row = {c: Fraction(v) for c, v in enumerate(r) if v != 0}
        m.append((row, Fraction(b)))
    pivots = {}
    for row, b in m:
        # pivot rows are kept fully reduced, so one pass suffices
        row = dict(row)
        for c in [c for c in row if c in pivots]:
            f = row[c]
            prow, pb = pivots[c]
            for k, v in prow.items():
                nv = row.get(k, Fraction(0)) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            b -= f * pb
        if not row:
            if b != 0:
                return None
            continue
        c = min(row)
        f = row[c]
        row = {k: v / f for k, v in row.items()}
        b = b / f
        # eliminate c from existing pivot rows
        for pc, (prow, pb) in list(pivots.items()):
            g = prow.get(c, 0)
            if g:
                for k, v in row.items():
                    nv = prow.get(k, Fraction(0)) - g * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
                pivots[pc] = (prow, pb - g * b)
        pivots[c] = (row, b)
    free = [c for c in range(ncols) if c not in pivots]
    part = [Fraction(0)] * ncols
    for c, (row, b) in pivots.items():
        part[c] = b
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for c, (row, b) in pivots.items():
            if fc in row:
                v[c] = -row[fc]
        basis.append(v)
    return part, basis, free

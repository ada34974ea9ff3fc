"""Factorization classes of the representatives, prime interpolation,
suffixes of consecutive prime factors (SCPF) of Catalan numbers and the
order-comparison columns.
"""

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
import sympy

from .blockstruct import representatives
from .diffs import KISSING
from .exact_core import catalan, is_paraorder
from .report import Report
from .rootseq import triangle

CLASSES = ("prime", "two primes", "three primes", "exponentiated", "higher")


# -- prime indexing -------------------------------------------------------------

class PrimeIndexer:
    """Sieve-backed nth prime (1-based: pi_1 = 2) and prime rank lookup.

    The sieve grows lazily to 1.2x the largest value queried.
    """

    def __init__(self, bound=1000):
        self.bound = 0
        self.primes = np.zeros(0, dtype=np.int64)
        self._grow(bound)

    def _grow(self, bound):
        bound = int(bound)
        if bound <= self.bound:
            return
        is_p = np.ones(bound + 1, dtype=bool)
        is_p[:2] = False
        for i in range(2, math.isqrt(bound) + 1):
            if is_p[i]:
                is_p[i * i::i] = False
        self.primes = np.flatnonzero(is_p).astype(np.int64)
        self.bound = bound

    def ensure(self, v):
        if v > self.bound:
            self._grow(max(int(1.2 * v), 1000))

    def count(self, x):
        """pi(x): number of primes <= x."""
        self.ensure(x)
        return int(np.searchsorted(self.primes, x, side="right"))

    def nth(self, r):
        if r < 1:
            raise ValueError("prime ranks start at 1")
        while len(self.primes) < r:
            self._grow(2 * self.bound)
        return int(self.primes[r - 1])

    def is_prime(self, v):
        self.ensure(v)
        i = np.searchsorted(self.primes, v)
        return i < len(self.primes) and self.primes[i] == v

    def primes_between(self, lo, hi):
        """Primes in the open interval (lo, hi)."""
        self.ensure(hi)
        a = np.searchsorted(self.primes, lo, side="right")
        b = np.searchsorted(self.primes, hi, side="left")
        return [int(x) for x in self.primes[a:b]]


_INDEXER = PrimeIndexer()


def indexer():
    return _INDEXER


@dataclass
class Interpolation:
    value: int
    rank: int            # r with pi_r <= value
    offset: int          # value - pi_r >= 0
    upper_offset: int    # pi_{r+1} - value (absent when value is prime)

    def text(self):
        if self.offset == 0:
            return f"{self.value} = π_{self.rank}"
        return (f"{self.value} = π_{self.rank}+{self.offset} "
                f"(= π_{self.rank + 1}-{self.upper_offset})")


def prime_interpolate(v, limit=None):
    """v = pi_r + k from below and pi_{r+1} - k' from above."""
    if v < 2:
        raise ValueError("prime interpolation needs v >= 2")
    if limit is not None and v > limit:
        raise ValueError(f"{v} exceeds the sieve bound {limit}")
    ix = indexer()
    r = ix.count(v)
    lower = ix.nth(r)
    if lower == v:
        return Interpolation(v, r, 0, None)
    return Interpolation(v, r, v - lower, ix.nth(r + 1) - v)


# -- factorization ----------------------------------------------------------------

@dataclass
class Factorization:
    value: int
    factors: list        # [(prime, exponent)] ascending

    @property
    def tag(self):
        if any(e > 1 for _, e in self.factors):
            return "exponentiated"
        k = len(self.factors)
        return {1: "prime", 2: "two primes", 3: "three primes"}.get(k, "higher")

    def product(self):
        out = 1
        for p, e in self.factors:
            out *= p ** e
        return out

    def text(self, underline=()):
        parts = []
        for p, e in self.factors:
            s = f"{p}^{e}" if e > 1 else str(p)
            parts.append(f"_{s}_" if p in underline else s)
        return "·".join(parts)


def factorize(n):
    """Complete factorization: trial division by the sieve, then sympy for the cofactor."""
    n = int(n)
    if n < 2:
        raise ValueError("factorize needs n >= 2")
    out = Counter()
    m = n
    for p in indexer().primes[: indexer().count(min(10 ** 6, math.isqrt(n) + 1))]:
        p = int(p)
        if p * p > m:
            break
        while m % p == 0:
            out[p] += 1
            m //= p
    if m > 1:
        for p, e in sympy.factorint(m).items():
            out[int(p)] += e
    f = Factorization(n, sorted(out.items()))
    if f.product() != n:
        raise ArithmeticError("factorization does not reconstruct the value")
    return f


def classify_representatives(p):
    """Counts of representatives > 1 per factorization class."""
    rs = representatives(triangle("F", p))
    counts = Counter(factorize(v).tag for v in rs.values if v > 1)
    return {c: counts.get(c, 0) for c in CLASSES}


def table5(ps=(15, 31, 63)):
    cols = {p: classify_representatives(p) for p in ps}
    rows = [[c] + [cols[p][c] for p in ps] for c in CLASSES]
    rows.append(["sum"] + [sum(cols[p].values()) for p in ps])
    return ["class"] + [f"p{p}" for p in ps], rows


def prime_forms(p):
    """6k+1 / 6k-1 form of each prime representative above 3."""
    rs = representatives(triangle("F", p))
    return {v: ("6k+1" if v % 6 == 1 else "6k-1") for v in rs.values if v > 3 and factorize(v).tag == "prime"}


# -- Catalan SCPF -----------------------------------------------------------------

def _legendre(n, p):
    e, k = 0, p
    while k <= n:
        e += n // k
        k *= p
    return e


def catalan_factorization(q):
    """C_q = (2q)! / (q! (q+1)!) factorized by Legendre exponents."""
    out = []
    for p in indexer().primes_between(1, 2 * q + 1):
        e = _legendre(2 * q, p) - _legendre(q, p) - _legendre(q + 1, p)
        if e:
            out.append((p, e))
    return Factorization(catalan(q), out)


def catalan_scpf(q):
    """Primes in (q+1, 2q) dividing C_q, with their count S_p."""
    f = catalan_factorization(q)
    suffix = [p for p, _ in f.factors if q + 1 < p < 2 * q]
    return suffix, len(suffix)


def scpf_count_oracle(q):
    """pi(2q) - pi(q+1)."""
    ix = indexer()
    return ix.count(2 * q) - ix.count(q + 1)


def verify_scpf(qs=None):
    """SCPF = every prime of (q+1, 2q), each dividing C_q exactly once; the
    intervals together with 2 and the prime paraorders tile all primes."""
    qs = qs or [2 ** k - 1 for k in range(2, 13)]
    rep = Report("catalan SCPF")
    ix = indexer()
    covered = {2}
    for q in qs:
        suffix, s = catalan_scpf(q)
        rep.check(s == scpf_count_oracle(q), f"q={q}: S = {s} but pi(2q) - pi(q+1) = {scpf_count_oracle(q)}")
        exps = dict(catalan_factorization(q).factors)
        rep.check(all(exps[p] == 1 for p in suffix), f"q={q}: a suffix prime divides C_q more than once")
        rep.check(suffix == ix.primes_between(q + 1, 2 * q), f"q={q}: suffix is not all primes of (q+1, 2q)")
        covered |= set(suffix)
        if is_paraorder(2 * q + 1) and ix.is_prime(2 * q + 1):
            covered.add(2 * q + 1)
    # paraorder primes below the first interval
    for m in range(2, qs[0] + 2):
        if is_paraorder(m) and ix.is_prime(m):
            covered.add(m)
    top = 2 * qs[-1]
    missing = [p for p in ix.primes_between(1, top + 1) if p not in covered]
    rep.check(not missing, f"primes not tiled: {missing[:10]}")
    rep.details["rows"] = [(q,) + catalan_scpf(q) for q in qs]
    return rep


def catalan_half_index(i):
    """C_{i/2} = 2^i Γ((1+i)/2) / (sqrt(pi) Γ(2 + i/2)) as (rational, e) meaning rational * pi^e."""
    if i < 1:
        raise ValueError("i >= 1 expected")
    if i % 2 == 0:
        return Fraction(catalan(i // 2)), 0
    k = (i - 1) // 2
    # Γ((1+i)/2) = k!,  Γ(2 + i/2) = Γ(k + 5/2) = sqrt(pi) * prod_{j=0}^{k+1} (j + 1/2)
    half = Fraction(1)
    for j in range(k + 2):
        half *= Fraction(2 * j + 1, 2)
    return Fraction(2 ** i * math.factorial(k)) / half, -1


def catalan_half_value(i, dps=30):
    r, e = catalan_half_index(i)
    with mpmath.workdps(dps):
        return mpmath.mpf(r.numerator) / r.denominator * mpmath.pi ** e


def density_estimate(q):
    return 2 * q / math.log(2 * q) - (q + 1) / math.log(q + 1)


def order_comparison_table(qs=None):
    """Rows (q, estimate, S_p, C_{i/2}, L_{i-4}) with i = log2(4q+4) resp. log2(2q+2)."""
    qs = qs or [2 ** k - 1 for k in range(2, 13)]
    rows = []
    for q in qs:
        ic = int(math.log2(4 * q + 4))
        il = int(math.log2(2 * q + 2)) - 4
        lval = KISSING[il - 1] if 1 <= il <= len(KISSING) else None
        rows.append((q, round(density_estimate(q), 2), catalan_scpf(q)[1],
                     float(catalan_half_value(ic)), lval))
    return ["q", "estimate", "S_p", "C_i/2", "L_i-4"], rows

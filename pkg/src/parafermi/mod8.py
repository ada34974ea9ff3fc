"""Residue calculus modulo 8 of the root-f coefficients.

The LL quadrant of (G mod 8) is built from 2x2 blocks taken from a small
alphabet, and the block at block-position (i, j) depends on i XOR j only.
A descriptor therefore just lists the first block row; the expansion
re-creates the square through the fill / symmetry evolution.
"""

from collections import Counter
from dataclasses import dataclass

import numpy as np
import sympy

from .blockstruct import navigate, representatives
from .exact_core import OperatorMatrix
from .report import Report
from .rootseq import member, triangle


def reduce_mod8(t):
    """Entrywise nonnegative residues of a coefficient triangle (square array)."""
    a = t.square() if hasattr(t, "square") else np.asarray(t, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = int(x) % 8
    return out


def _block_key(b):
    return tuple(tuple(int(x) for x in row) for row in b)


@dataclass
class PatternDescriptor:
    """First block row of a residue square; tags mark the d_m/d_s blocks."""

    blocks: list          # list of 2x2 tuples (or a single 1x1 value for side 1)
    tags: list

    @property
    def side(self):
        if len(self.blocks) == 1 and not isinstance(self.blocks[0], tuple):
            return 1
        return 2 * len(self.blocks)

    def same_blocks(self, other):
        return self.blocks == other.blocks

    def text(self, tagged=True):
        if self.side == 1:
            return f"({self.blocks[0]})"
        parts = []
        for b, tag in zip(self.blocks, self.tags):
            s = f"({b[0][0]} {b[0][1]}/{b[1][0]} {b[1][1]})"
            if tagged and tag:
                s = f"{tag}{s}"
            parts.append(s)
        return "sym(" + ",".join(parts) + ")"

    __str__ = text


def pattern_descriptor(ll, tag=True):
    """Descriptor of a residue square whose side is 1 or a power of two."""
    a = np.asarray(ll, dtype=object)
    n = a.shape[0]
    if n == 1:
        return PatternDescriptor([int(a[0, 0])], [""])
    if n % 2 or n & (n - 1):
        raise ValueError("side must be a power of two")
    k = n // 2
    blocks = [_block_key(a[0:2, 2 * j:2 * j + 2]) for j in range(k)]
    tags = [""] * k
    if tag and k >= 2:
        tags[0], tags[-1] = "d_m", "d_s"
    elif tag and k == 1:
        tags[0] = ""
    d = PatternDescriptor(blocks, tags)
    back, stage = expand_descriptor(d, n, trace=True)
    if not np.array_equal(back, a):
        raise ValueError(f"square not describable (expansion diverges at stage '{stage}')")
    return d


def _fill_symmetric(m, r0, c0, s):
    """Main then secondary symmetry inside the s x s window at (r0, c0)."""
    for i in range(s):
        for j in range(s):
            if m[r0 + i, c0 + j] is None and m[r0 + j, c0 + i] is not None:
                m[r0 + i, c0 + j] = m[r0 + j, c0 + i]
    for i in range(s):
        for j in range(s):
            if m[r0 + i, c0 + j] is None:
                v = m[r0 + s - 1 - j, c0 + s - 1 - i]
                if v is not None:
                    m[r0 + i, c0 + j] = v


def expand_descriptor(d, size=None, trace=False):
    """Rebuild the residue square from a descriptor.

    Stages: first block row; d_m block down the main block diagonal; d_s
    block down the secondary block diagonal; main symmetry; secondary
    symmetry; the two symmetry steps repeated inside quadrants, subquadrants
    and so on until no blank remains.
    """
    n = d.side if size is None else size
    if n == 1:
        out = np.empty((1, 1), dtype=object)
        out[0, 0] = d.blocks[0]
        return (out, "done") if trace else out
    k = n // 2
    if len(d.blocks) != k:
        raise ValueError("descriptor length does not match size")
    m = np.empty((n, n), dtype=object)
    m[...] = None

    def put(bi, bj, blk):
        for a in range(2):
            for b in range(2):
                m[2 * bi + a, 2 * bj + b] = blk[a][b]

    for j, blk in enumerate(d.blocks):
        put(0, j, blk)
    for i in range(k):
        put(i, i, d.blocks[0])
    for i in range(k):
        put(i, k - 1 - i, d.blocks[-1])
    stage = "symmetry"
    s = n
    while s >= 2 and any(x is None for x in m.flat):
        for r0 in range(0, n, s):
            for c0 in range(0, n, s):
                _fill_symmetric(m, r0, c0, s)
        s //= 2
    if any(x is None for x in m.flat):
        stage = "blank positions remain"
    out = m
    return (out, stage) if trace else out


def xor_expand(first_row_blocks):
    """Independent reconstruction: block (i, j) = first_row[i XOR j]."""
    k = len(first_row_blocks)
    n = 2 * k
    m = np.empty((n, n), dtype=object)
    for i in range(k):
        for j in range(k):
            blk = first_row_blocks[i ^ j]
            for a in range(2):
                for b in range(2):
                    m[2 * i + a, 2 * j + b] = blk[a][b]
    return m


def lambda_map(block):
    """Entrywise x -> 3x mod 8 on an odd-residue block."""
    a = np.asarray(block, dtype=object)
    if any(int(x) % 2 == 0 for x in a.flat):
        raise ValueError("Λ is defined on odd residues only")
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = (3 * int(x)) % 8
    return out


def _lambda_descriptor(d):
    if d.side == 1:
        return PatternDescriptor([(3 * d.blocks[0]) % 8], [""])
    return PatternDescriptor([_block_key(lambda_map(b)) for b in d.blocks], list(d.tags))


def ll_residues(p, path="LL"):
    return navigate(reduce_mod8(triangle("F", p)), path)


def verify_lambda_table(ps=(7, 15, 31, 63)):
    """Blockwise Λ maps LLUR(G^(p)) mod 8 onto LLULUR(G^(p')) mod 8."""
    rep = Report("lambda table")
    rows = []
    for p in ps:
        arg = pattern_descriptor(ll_residues(p, "LLUR"), tag=False)
        out = pattern_descriptor(ll_residues(2 * p + 1, "LLULUR"), tag=False)
        mapped = _lambda_descriptor(arg)
        rep.check(mapped.same_blocks(out), f"p={p}: Λ({arg.text(False)}) = {mapped.text(False)} but found {out.text(False)}")
        # the same step read as LLLL + 2 LLUR = 3 LLUR (mod 8)
        g = reduce_mod8(triangle("F", p))
        lhs = (navigate(g, "LLLL") + 2 * navigate(g, "LLUR")) % 8
        rep.check(np.array_equal(lhs, (3 * navigate(g, "LLUR")) % 8),
                  f"p={p}: LLLL + 2 LLUR != 3 LLUR (mod 8)")
        rows.append((p, 2 * p + 1, arg.text(False), out.text(False)))
    rep.details["rows"] = rows
    return rep


def predicted_lambda_row(p):
    """Predict the LLULUR(G^(2p+1)) mod 8 descriptor from order p alone."""
    arg = pattern_descriptor(ll_residues(p, "LLUR"), tag=False)
    return arg, _lambda_descriptor(arg)


def f_mod8(p):
    """f with each LTM coefficient replaced by its residue mod 8, c3 signs kept."""
    from .rootseq import assemble
    return assemble("F", reduce_mod8(triangle("F", p)))


MOD8_DETERMINANTS = {3: 1, 7: 0, 15: 240 ** 2, 31: 0}


def det_mod8(p):
    """Integer determinant of the LL quadrant of f reduced mod 8."""
    ll = navigate(f_mod8(p), "LL")
    return int(sympy.Matrix(ll.int_array().tolist()).det())


def congruence_partition(rs):
    """Counts of representatives per residue class 1, 3, 5, 7 (mod 8)."""
    c = Counter(v % 8 for v in rs.values)
    out = {r: c.get(r, 0) for r in (1, 3, 5, 7)}
    if sum(out.values()) != rs.count:
        raise ArithmeticError("even representative found")
    return out


def table3(ps=(15, 31, 63)):
    rows = []
    parts = {p: congruence_partition(representatives(triangle("F", p))) for p in ps}
    for r in (1, 3, 5, 7):
        rows.append([f"{r} (mod 8)"] + [parts[p][r] for p in ps])
    rows.append(["sum"] + [sum(parts[p].values()) for p in ps])
    return ["residue"] + [f"p{p}" for p in ps], rows


def mod_power_curiosity():
    """G_max^(15) = 113 = 7^2 (mod 64) and G_max^(31) = 2430289 = 9^2 (mod 128)."""
    g15, g31 = triangle("F", 15).max(), triangle("F", 31).max()
    return {"G15": (g15, g15 % 64, 49 % 64), "G31": (g31, g31 % 128, 81 % 128)}

"""Exact linear algebra over Q and GF(2).

GF(2) matrices are lists of int bitmasks (bit j = column j); rational
matrices are lists of Fraction lists.  All elimination is deterministic:
rows are processed in the order given, pivots are the first nonzero
column.  Fourier-Motzkin elimination provides exact feasibility checks
(with witnesses) for small rational inequality systems.
"""

from __future__ import annotations

from fractions import Fraction

from . import rings


# ---------------------------------------------------------------------------
# GF(2): rows as bitmask ints
# ---------------------------------------------------------------------------

def gf2_basis(rows):
    """Xor-basis of the row space: dict pivot_bit -> row (row's top bit)."""
    basis = {}
    for row in rows:
        while row:
            pc = row.bit_length() - 1
            if pc in basis:
                row ^= basis[pc]
            else:
                basis[pc] = row
                break
    return basis


def gf2_rank(rows):
    return len(gf2_basis(rows))


def gf2_solve(rows, rhs):
    """Solve A x = rhs over GF(2) where row i is a bitmask over the unknowns
    and rhs[i] in {0,1}.  Returns a solution bitmask or None."""
    basis = {}
    for row, b in zip(rows, rhs):
        b &= 1
        while row:
            pc = row.bit_length() - 1
            if pc in basis:
                br, bb = basis[pc]
                row ^= br
                b ^= bb
            else:
                basis[pc] = (row, b)
                break
        if not row and b:
            return None
    x = 0
    # each basis row has its top bit at the pivot, so increasing pivot
    # order sees all lower bits of x already decided; free variables = 0
    for pc in sorted(basis):
        row, b = basis[pc]
        if (b + bin(row & x).count("1")) % 2:
            x |= 1 << pc
    for row, b in zip(rows, rhs):
        if bin(row & x).count("1") % 2 != b % 2:
            return None
    return x


def gf2_nullspace(rows, ncols):
    """Basis of {x : A x = 0} as bitmasks."""
    basis = gf2_basis(rows)
    out = []
    for j in range(ncols):
        if j in basis:
            continue
        x = 1 << j
        for pc in sorted(basis):
            if bin(basis[pc] & x).count("1") % 2:
                x ^= 1 << pc
        out.append(x)
    return out


# ---------------------------------------------------------------------------
# Q: dense Fraction rows
# ---------------------------------------------------------------------------

def q_echelon(rows):
    """Reduced row echelon form over Q.  Returns (pivot_cols, rref_rows)."""
    mat = [list(r) for r in rows]
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return pivots, mat[:r]


def q_rank(rows):
    return len(q_echelon(rows)[0])


def q_solve(rows, rhs):
    """Solve A x = rhs over Q; returns list of Fractions or None."""
    if not rows:
        return []
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    pivots, rref = q_echelon(aug)
    x = [Fraction(0)] * ncols
    for pc, row in zip(pivots, rref):
        if pc == ncols:
            return None
        x[pc] = row[ncols]
    for r, b in zip(rows, rhs):
        if sum(c * v for c, v in zip(r, x)) != b:
            return None
    return x


def q_nullspace(rows, ncols):
    pivots, rref = q_echelon(rows)
    pivset = set(pivots)
    out = []
    for j in range(ncols):
        if j in pivset:
            continue
        x = [Fraction(0)] * ncols
        x[j] = Fraction(1)
        for pc, row in zip(pivots, rref):
            x[pc] = -row[j]
        out.append(x)
    return out


def q_matrix_inverse(rows):
    """Inverse of a square rational matrix, or (None, kernel_vector)."""
    n = len(rows)
    ker = q_nullspace(rows, n)
    if ker:
        return None, ker[0]
    aug = [list(r) + [Fraction(i == j) for j in range(n)] for i, r in enumerate(rows)]
    _, rref = q_echelon(aug)
    return [row[n:] for row in rref], None


# ---------------------------------------------------------------------------
# Ring dispatch helpers used by tensor code (matrices as dict-of-dicts there)
# ---------------------------------------------------------------------------

def solve_dense(ring, rows, rhs, ncols):
    """Solve over either ring; rows given as lists of scalars."""
    if not rows:
        return [rings.zero(ring)] * ncols
    if ring == rings.GF2:
        bit_rows = []
        for r in rows:
            m = 0
            for j, v in enumerate(r):
                if v % 2:
                    m |= 1 << j
            bit_rows.append(m)
        x = gf2_solve(bit_rows, [int(b) % 2 for b in rhs])
        if x is None:
            return None
        return [(x >> j) & 1 for j in range(ncols)]
    return q_solve([[Fraction(v) for v in r] for r in rows], [Fraction(b) for b in rhs])


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination (exact, rational)
# ---------------------------------------------------------------------------

class Infeasible(Exception):
    pass


def _normalize(con):
    coeffs, const = con
    return tuple(coeffs), const


def fm_feasible(constraints, nvars):
    """Feasibility of {x : sum_j c_j x_j >= const} over Q.

    ``constraints`` is a list of (coeffs, const) with len(coeffs) == nvars.
    Returns a witness list of Fractions, or None if infeasible.
    Variables are eliminated in index order (last to first so that witness
    back-substitution runs first to last deterministically).
    """
    cons = [(tuple(Fraction(c) for c in cs), Fraction(k)) for cs, k in constraints]
    stages = []
    for v in range(nvars - 1, -1, -1):
        pos, neg, rest = [], [], []
        for cs, k in cons:
            if cs[v] > 0:
                pos.append((cs, k))
            elif cs[v] < 0:
                neg.append((cs, k))
            else:
                rest.append((cs, k))
        stages.append((v, pos, neg))
        new = list(rest)
        for csp, kp in pos:
            for csn, kn in neg:
                a, b = csp[v], -csn[v]
                cs = tuple(b * p + a * n for p, n in zip(csp, csn))
                new.append((cs, b * kp + a * kn))
        seen = set()
        cons = []
        for c in new:
            c = _normalize(c)
            if c not in seen:
                seen.add(c)
                cons.append(c)
    for cs, k in cons:
        if k > 0:
            return None
    # back-substitution: assign eliminated variables from last stage outward
    x = [Fraction(0)] * nvars
    for v, pos, neg in reversed(stages):
        lo, hi = None, None
        for cs, k in pos:  # cs[v] > 0: x_v >= (k - rest)/cs[v]
            bound = (k - sum(c * x[j] for j, c in enumerate(cs) if j != v)) / cs[v]
            lo = bound if lo is None or bound > lo else lo
        for cs, k in neg:  # cs[v] < 0: x_v <= (k - rest)/cs[v]
            bound = (k - sum(c * x[j] for j, c in enumerate(cs) if j != v)) / cs[v]
            hi = bound if hi is None or bound < hi else hi
        if lo is None and hi is None:
            x[v] = Fraction(0)
        elif lo is None:
            x[v] = hi - 1
        elif hi is None:
            x[v] = lo + 1
        else:
            if lo > hi:
                raise Infeasible("back-substitution bounds crossed")
            x[v] = (lo + hi) / 2
    return x

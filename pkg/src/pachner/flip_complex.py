"""The flip complex of a surface with labeled vertices.

Cells are polygonal decompositions (canonical codes); the cell of a
decomposition with face sizes n_i has dimension sum(n_i - 3).  0-cells are
triangulations, and the boundary of a cell is the sum of the refinements
obtained by splitting one polygon by one diagonal.

Over GF2 boundaries are defined in every dimension.  Over Q, orientations
are defined for cells of dimension <= 2: a 1-cell is oriented from the
splitting through its square's canonical base corner to the other one, and
a 2-cell's boundary signs are solved from dd = 0 (normalized so the
lexicographically least boundary edge enters positively).
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg, rings
from .surfaces import PolygonalDecomposition, SurfaceError


class FlipComplexError(ValueError):
    pass


def cell_dim(dec):
    return sum(len(f) - 3 for f in dec.interior_faces())


def _diagonals(m):
    """Corner pairs (i, j) splitting an m-gon into two >=3-gons."""
    out = []
    for i in range(m):
        for j in range(i + 2, m):
            if i == 0 and j == m - 1:
                continue
            out.append((i, j))
    return out


def refinements(dec):
    """All single-diagonal splits of a decomposition (with multiplicity),
    as (child, face_min_dart, (i, j)) triples."""
    out = []
    for f in dec.interior_faces():
        m = len(f)
        if m < 4:
            continue
        for i, j in _diagonals(m):
            out.append((dec.split_face(f[0], i, j), f[0], (i, j)))
    return out


def oriented_1cell_boundary(rep):
    """(positive_child, negative_child) for a 1-cell in canonical form.

    The unique square face, traversed from its minimal canonical dart, is
    split through its base corner (positive end) or the adjacent one."""
    squares = [f for f in rep.interior_faces() if len(f) == 4]
    others = [f for f in rep.interior_faces() if len(f) > 4]
    if len(squares) != 1 or others:
        raise FlipComplexError("not a 1-cell")
    f = squares[0]
    pos = rep.split_face(f[0], 0, 2)
    neg = rep.split_face(f[0], 1, 3)
    return pos, neg


class CellChain:
    """Sparse chain on flip-complex cells at a fixed dimension.

    Each cell is keyed by canonical code and carries its canonical
    representative decomposition."""

    def __init__(self, ring, dim):
        rings.check_ring(ring)
        self.ring = ring
        self.dim = int(dim)
        self.coeff = {}
        self.rep = {}

    @classmethod
    def of(cls, dec, ring, c=1):
        ch = cls(ring, cell_dim(dec))
        ch.add(dec, c)
        return ch

    def add(self, dec, c=1):
        if cell_dim(dec) != self.dim:
            raise FlipComplexError(
                f"cell of dimension {cell_dim(dec)} in a chain of dimension {self.dim}"
            )
        code = dec.canonical_code()
        cur = self.coeff.get(code, rings.zero(self.ring))
        val = rings.add(self.ring, cur, rings.coerce(self.ring, c))
        if val == 0:
            self.coeff.pop(code, None)
            self.rep.pop(code, None)
        else:
            self.coeff[code] = val
            if code not in self.rep:
                self.rep[code] = dec.canonical_form()
        return self

    def __add__(self, other):
        if self.ring != other.ring or (self.coeff and other.coeff and self.dim != other.dim):
            raise FlipComplexError("chain ring/dimension mismatch")
        out = CellChain(self.ring, self.dim if self.coeff or not other.coeff else other.dim)
        for src in (self, other):
            for code, c in src.coeff.items():
                out.add(src.rep[code], c)
        return out

    def scaled(self, c):
        out = CellChain(self.ring, self.dim)
        for code, v in self.coeff.items():
            out.add(self.rep[code], rings.mul(self.ring, v, rings.coerce(self.ring, c)))
        return out

    def is_zero(self):
        return not self.coeff

    def support_size(self):
        return len(self.coeff)

    def cells(self):
        for code in sorted(self.coeff):
            yield self.rep[code], self.coeff[code]

    def __eq__(self, other):
        return (
            isinstance(other, CellChain)
            and self.ring == other.ring
            and self.coeff == other.coeff
        )

    def __repr__(self):
        return f"CellChain(dim={self.dim}, ring={self.ring}, {len(self.coeff)} cells)"

    def boundary(self):
        """Cellular boundary, computed cell-locally from diagonal splits."""
        out = CellChain(self.ring, self.dim - 1)
        for code, c in self.coeff.items():
            rep = self.rep[code]
            if self.ring == rings.GF2:
                for child, _, _ in refinements(rep):
                    out.add(child, c)
            else:
                for inst_child, sign in _oriented_boundary_instances(rep):
                    out.add(inst_child, rings.mul(self.ring, c, sign))
        return out

    def map_cells(self, fn):
        """New chain applying a decomposition map cell-wise (e.g. relabeling)."""
        out = CellChain(self.ring, self.dim)
        for code, c in self.coeff.items():
            out.add(fn(self.rep[code]), c)
        return out

    def compose(self, lower, relabel=None):
        """Glue every cell of ``lower`` under every cell of self (stacking
        cobordisms: self's in-boundary onto lower's out-boundary)."""
        dim = self.dim + lower.dim
        out = CellChain(self.ring, dim)
        for code_u, cu in self.coeff.items():
            for code_l, cl in lower.coeff.items():
                glued = self.rep[code_u].glue(lower.rep[code_l], relabel=relabel)
                out.add(glued, rings.mul(self.ring, cu, cl))
        return out


def _oriented_boundary_instances(rep):
    """Signed boundary of a dim<=2 cell over Q, as (child, sign) pairs."""
    d = cell_dim(rep)
    if d == 1:
        pos, neg = oriented_1cell_boundary(rep.canonical_form())
        return [(pos, Fraction(1)), (neg, Fraction(-1))]
    if d != 2:
        raise FlipComplexError(
            f"rational boundary is only defined in dimensions <= 2, got {d}"
        )
    rep = rep.canonical_form()
    instances = []  # (child 1-cell canonical form, child code)
    for child, fd, diag in refinements(rep):
        instances.append(child.canonical_form())
    # each instance's own boundary as a signed 0-chain; solve eps with
    # sum eps_i d(instance_i) = 0, normalized by the least instance code
    zero_index = {}
    rows = []
    for inst in instances:
        pos, neg = oriented_1cell_boundary(inst)
        row = {}
        for dec0, s in ((pos, 1), (neg, -1)):
            c0 = dec0.canonical_code()
            zero_index.setdefault(c0, len(zero_index))
            row[c0] = row.get(c0, 0) + s
        rows.append(row)
    mat = [
        [Fraction(rows[i].get(c0, 0)) for i in range(len(instances))]
        for c0 in zero_index
    ]
    null = linalg.q_nullspace(mat, len(instances))
    solutions = [v for v in null if all(x != 0 for x in v)]
    if len(null) != 1 or not solutions:
        raise FlipComplexError(
            "could not orient a 2-cell: boundary sign system is degenerate"
        )
    eps = solutions[0]
    if any(abs(x) != abs(eps[0]) for x in eps):
        raise FlipComplexError("2-cell orientation solution is not +-1")
    order = sorted(range(len(instances)), key=lambda i: instances[i].canonical_code())
    lead = order[0]
    scale = Fraction(1) / eps[lead]
    return [
        (instances[i], eps[i] * scale)
        for i in range(len(instances))
    ]


class FlipComplex:
    """Cells by dimension with canonical representatives and GF2/Q boundaries."""

    def __init__(self, ring):
        rings.check_ring(ring)
        self.ring = ring
        self.cells = {}  # dim -> sorted list of codes
        self.rep = {}    # code -> canonical decomposition
        self.dim_of = {}

    def f_vector(self):
        top = max(self.cells) if self.cells else -1
        return [len(self.cells.get(d, ())) for d in range(top + 1)]

    def chain(self, dim):
        return CellChain(self.ring, dim)

    def cell_chain(self, code):
        return CellChain.of(self.rep[code], self.ring)

    def boundary_matrix(self, d):
        """Columns = d-cells, rows = (d-1)-cells, GF2 entries as bitmasks."""
        if self.ring != rings.GF2:
            raise FlipComplexError("boundary matrices are kept over GF2")
        lo = {c: i for i, c in enumerate(self.cells.get(d - 1, ()))}
        cols = []
        for code in self.cells.get(d, ()):
            ch = CellChain.of(self.rep[code], self.ring).boundary()
            m = 0
            for c0, v in ch.coeff.items():
                if c0 not in lo:
                    raise FlipComplexError("boundary cell missing; raise max_dim/cells")
                if v % 2:
                    m |= 1 << lo[c0]
            cols.append(m)
        return cols, len(lo)

    def homology_gf2(self, d):
        """(betti, cycle_basis) in degree d over GF2."""
        n_d = len(self.cells.get(d, ()))
        if n_d == 0:
            return 0, []
        cols_d, n_lo = self.boundary_matrix(d) if d > 0 else ([0] * n_d, 0)
        rank_d = linalg.gf2_rank(cols_d)
        cols_up, _ = (
            self.boundary_matrix(d + 1) if self.cells.get(d + 1) else ([], n_d)
        )
        rank_up = linalg.gf2_rank(cols_up)
        betti = (n_d - rank_d) - rank_up
        # cycle representatives: nullspace of the boundary in degree d
        rows = _transpose_bits(cols_d, n_lo, n_d)
        cycles = linalg.gf2_nullspace(rows, n_d)
        codes = self.cells.get(d, ())
        reps = []
        for mask in cycles:
            ch = CellChain(self.ring, d)
            for i in range(n_d):
                if (mask >> i) & 1:
                    ch.add(self.rep[codes[i]])
            reps.append(ch)
        return betti, reps

    def null_homology_witness(self, z):
        """Solve boundary(b) = z over GF2; returns a CellChain or None."""
        d = z.dim
        up_codes = self.cells.get(d + 1, ())
        if not up_codes:
            return None if not z.is_zero() else CellChain(self.ring, d + 1)
        cols_up, n_lo = self.boundary_matrix(d + 1)
        lo_codes = self.cells.get(d, ())
        lo = {c: i for i, c in enumerate(lo_codes)}
        rows = _transpose_bits(cols_up, n_lo, len(up_codes))
        rhs = [0] * n_lo
        for code, v in z.coeff.items():
            if code not in lo:
                raise FlipComplexError("cycle not supported on built cells")
            rhs[lo[code]] = int(v) % 2
        x = linalg.gf2_solve(rows, rhs)
        if x is None:
            return None
        out = CellChain(self.ring, d + 1)
        for i, code in enumerate(up_codes):
            if (x >> i) & 1:
                out.add(self.rep[code])
        return out


def _transpose_bits(cols, n_rows, n_cols):
    rows = [0] * n_rows
    for j, col in enumerate(cols):
        m = col
        while m:
            low = m & (-m)
            i = low.bit_length() - 1
            rows[i] |= 1 << j
            m ^= low
    return rows


def build(seed, ring=rings.GF2, max_dim=None, max_cells=100000):
    """Flip-closure of a seed triangulation, then coarsenings by edge
    erasure up to max_dim, deduplicated by canonical code."""
    rep = seed.check()
    if not seed.is_triangulation():
        raise FlipComplexError("seed must be a triangulation")
    cx = FlipComplex(ring)
    zero = {}
    frontier = [seed.canonical_form()]
    zero[frontier[0].canonical_code()] = frontier[0]
    while frontier:
        dec = frontier.pop()
        for e in dec.erasable_edges():
            try:
                nxt = dec.flip(e)
            except SurfaceError:
                continue
            code = nxt.canonical_code()
            if code not in zero:
                if len(zero) >= max_cells:
                    raise FlipComplexError(f"cell cap {max_cells} exceeded in dim 0")
                nxt = nxt.canonical_form()
                zero[code] = nxt
                frontier.append(nxt)
    cx.cells[0] = sorted(zero)
    cx.rep.update(zero)
    for c in zero:
        cx.dim_of[c] = 0
    d = 0
    while max_dim is None or d < max_dim:
        prev = cx.cells.get(d, ())
        if not prev:
            break
        nxt_cells = {}
        for code in prev:
            dec = cx.rep[code]
            for e in dec.erasable_edges():
                coarse = dec.erase_edge(e)
                ccode = coarse.canonical_code()
                if ccode not in nxt_cells and ccode not in cx.rep:
                    if len(nxt_cells) >= max_cells:
                        raise FlipComplexError(
                            f"cell cap {max_cells} exceeded in dim {d + 1}"
                        )
                    nxt_cells[ccode] = coarse.canonical_form()
        if not nxt_cells:
            break
        d += 1
        cx.cells[d] = sorted(nxt_cells)
        cx.rep.update(nxt_cells)
        for c in nxt_cells:
            cx.dim_of[c] = d
    return cx

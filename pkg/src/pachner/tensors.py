"""Graded bases, exact sparse tensors, and tensor-network contraction.

Conventions used throughout the library:

* A ``GradedTensor`` of arity n and degree d is a multilinear functional on
  V^{(x)n} (all slots covariant, slots ordered left to right); it is
  supported on index tuples whose degrees sum to -d, so every tensor is
  homogeneous.
* Over Q, the Koszul sign of any slot reordering is the sign of the
  permutation restricted to odd-degree symbols; contraction through an
  internal edge weighted by the (degree 0) inverse metric picks up
  (-1)^(|q| * S) where q is the label entering the second endpoint and S is
  the total degree of the symbols the contraction jumps over.  Over GF2 all
  signs are trivial.
* Endomorphisms (the differential Q, quantum-mechanics operators U_n, ...)
  are stored separately as ``Endo`` with entries (out, in) and support
  deg(out) = deg(in) + degree.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import linalg, rings


class GradedBasis:
    """Ordered basis labels with integer degrees."""

    __slots__ = ("labels", "degrees", "index")

    def __init__(self, labels, degrees):
        labels = tuple(str(l) for l in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be distinct")
        if isinstance(degrees, dict):
            degrees = tuple(int(degrees[l]) for l in labels)
        else:
            degrees = tuple(int(d) for d in degrees)
        if len(degrees) != len(labels):
            raise ValueError("one degree per label required")
        self.labels = labels
        self.degrees = degrees
        self.index = {l: i for i, l in enumerate(labels)}

    def __len__(self):
        return len(self.labels)

    def degree(self, label):
        return self.degrees[self.index[label]]

    def __eq__(self, other):
        return (
            isinstance(other, GradedBasis)
            and self.labels == other.labels
            and self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.labels, self.degrees))

    def __repr__(self):
        return f"GradedBasis({list(self.labels)!r})"

    def to_json(self):
        return [{"label": l, "degree": d} for l, d in zip(self.labels, self.degrees)]

    @classmethod
    def from_json(cls, data):
        return cls([e["label"] for e in data], [e["degree"] for e in data])


def trivial_basis(labels):
    """All-degree-zero basis."""
    labels = list(labels)
    return GradedBasis(labels, [0] * len(labels))


class GradedTensor:
    """Sparse homogeneous multilinear functional on V^{(x)arity}."""

    __slots__ = ("basis", "ring", "arity", "degree", "coeffs")

    def __init__(self, basis, ring, arity, degree, coeffs=None):
        rings.check_ring(ring)
        self.basis = basis
        self.ring = ring
        self.arity = int(arity)
        self.degree = int(degree)
        self.coeffs = {}
        if coeffs:
            for idx, val in coeffs.items():
                self._set(tuple(idx), rings.coerce(ring, val))

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, basis, ring, arity, degree):
        return cls(basis, ring, arity, degree)

    @classmethod
    def from_entries(cls, basis, ring, arity, degree, entries):
        """entries: iterable of (label tuple, value)."""
        t = cls(basis, ring, arity, degree)
        for labels, val in entries:
            t.add_at(labels, val)
        return t

    def _check_support(self, idx):
        degs = self.basis.degrees
        if sum(degs[i] for i in idx) != -self.degree:
            raise ValueError(
                f"entry {tuple(self.basis.labels[i] for i in idx)} violates "
                f"homogeneity: slot degrees must sum to {-self.degree}"
            )

    def _set(self, idx, val):
        if len(idx) != self.arity:
            raise ValueError(f"index length {len(idx)} != arity {self.arity}")
        if val == 0:
            self.coeffs.pop(idx, None)
            return
        self._check_support(idx)
        self.coeffs[idx] = val

    def add_at(self, labels, val):
        idx = tuple(self.basis.index[l] for l in labels)
        cur = self.coeffs.get(idx, rings.zero(self.ring))
        self._set(idx, rings.add(self.ring, cur, rings.coerce(self.ring, val)))

    # -- access -----------------------------------------------------------

    def get(self, labels):
        idx = tuple(self.basis.index[l] for l in labels)
        return self.coeffs.get(idx, rings.zero(self.ring))

    def entries(self):
        """Iterate (label tuple, value), sorted by index for determinism."""
        for idx in sorted(self.coeffs):
            yield tuple(self.basis.labels[i] for i in idx), self.coeffs[idx]

    def is_zero(self):
        return not self.coeffs

    # -- algebra ----------------------------------------------------------

    def _compatible(self, other):
        if self.basis != other.basis or self.ring != other.ring:
            raise ValueError("tensor basis/ring mismatch")
        if self.arity != other.arity:
            raise ValueError("tensor arity mismatch")

    def __add__(self, other):
        self._compatible(other)
        if self.coeffs and other.coeffs and self.degree != other.degree:
            raise ValueError("cannot add tensors of different degree")
        deg = self.degree if self.coeffs or not other.coeffs else other.degree
        out = GradedTensor(self.basis, self.ring, self.arity, deg)
        for idx, v in self.coeffs.items():
            out._set(idx, v)
        for idx, v in other.coeffs.items():
            cur = out.coeffs.get(idx, rings.zero(self.ring))
            out._set(idx, rings.add(self.ring, cur, v))
        return out

    def __sub__(self, other):
        return self + other.scaled(rings.neg(other.ring, rings.one(other.ring)))

    def scaled(self, scalar):
        scalar = rings.coerce(self.ring, scalar)
        out = GradedTensor(self.basis, self.ring, self.arity, self.degree)
        for idx, v in self.coeffs.items():
            out._set(idx, rings.mul(self.ring, v, scalar))
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedTensor):
            return NotImplemented
        if self.basis != other.basis or self.ring != other.ring or self.arity != other.arity:
            return False
        if self.coeffs and other.coeffs and self.degree != other.degree:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.basis, self.ring, self.arity, frozenset(self.coeffs.items())))

    def __repr__(self):
        n = len(self.coeffs)
        return f"GradedTensor(arity={self.arity}, degree={self.degree}, {n} entries)"

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return {
            "basis": self.basis.to_json(),
            "arity": self.arity,
            "degree": self.degree,
            "ring": self.ring,
            "entries": [
                {"idx": list(labels), "val": rings.scalar_to_str(self.ring, v)}
                for labels, v in self.entries()
            ],
        }

    @classmethod
    def from_json(cls, data, basis=None):
        basis = basis or GradedBasis.from_json(data["basis"])
        ring = data["ring"]
        t = cls(basis, ring, data["arity"], data["degree"])
        for e in data["entries"]:
            t.add_at(tuple(e["idx"]), rings.scalar_from_json(ring, e["val"]))
        return t


class Endo:
    """Graded endomorphism of V: entries (out_index, in_index) -> scalar,
    supported where deg(out) = deg(in) + degree."""

    __slots__ = ("basis", "ring", "degree", "entries")

    def __init__(self, basis, ring, degree, entries=None):
        rings.check_ring(ring)
        self.basis = basis
        self.ring = ring
        self.degree = int(degree)
        self.entries = {}
        if entries:
            for (o, i), v in entries.items():
                self.set(o, i, v)

    @classmethod
    def zero(cls, basis, ring, degree=1):
        return cls(basis, ring, degree)

    @classmethod
    def from_matrix(cls, basis, ring, degree, matrix):
        """matrix[i][j] = coefficient of e_i in image of e_j."""
        e = cls(basis, ring, degree)
        for i, row in enumerate(matrix):
            for j, v in enumerate(row):
                if v:
                    e.set(basis.labels[i], basis.labels[j], v)
        return e

    def set(self, out_label, in_label, val):
        o = self.basis.index[str(out_label)]
        i = self.basis.index[str(in_label)]
        val = rings.coerce(self.ring, val)
        if val == 0:
            self.entries.pop((o, i), None)
            return
        if self.basis.degrees[o] != self.basis.degrees[i] + self.degree:
            raise ValueError(
                f"endo entry ({out_label},{in_label}) violates degree {self.degree}"
            )
        self.entries[(o, i)] = val

    def get(self, out_label, in_label):
        o = self.basis.index[str(out_label)]
        i = self.basis.index[str(in_label)]
        return self.entries.get((o, i), rings.zero(self.ring))

    def matrix(self):
        n = len(self.basis)
        zero = rings.zero(self.ring)
        m = [[zero] * n for _ in range(n)]
        for (o, i), v in self.entries.items():
            m[o][i] = v
        return m

    def compose(self, other):
        """self after other."""
        if self.basis != other.basis or self.ring != other.ring:
            raise ValueError("endo basis/ring mismatch")
        out = Endo(self.basis, self.ring, self.degree + other.degree)
        for (o, m), v in self.entries.items():
            for (m2, i), w in other.entries.items():
                if m == m2:
                    key = (o, i)
                    cur = out.entries.get(key, rings.zero(self.ring))
                    val = rings.add(self.ring, cur, rings.mul(self.ring, v, w))
                    if val == 0:
                        out.entries.pop(key, None)
                    else:
                        out.entries[key] = val
        return out

    def __add__(self, other):
        if self.degree != other.degree and self.entries and other.entries:
            raise ValueError("cannot add endos of different degree")
        out = Endo(self.basis, self.ring, self.degree)
        for src in (self.entries, other.entries):
            for key, v in src.items():
                cur = out.entries.get(key, rings.zero(self.ring))
                val = rings.add(self.ring, cur, v)
                if val == 0:
                    out.entries.pop(key, None)
                else:
                    out.entries[key] = val
        return out

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, Endo)
            and self.basis == other.basis
            and self.ring == other.ring
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"Endo(degree={self.degree}, {len(self.entries)} entries)"

    def to_json(self):
        return {
            "basis": self.basis.to_json(),
            "arity": 2,
            "degree": self.degree,
            "ring": self.ring,
            "kind": "endo",
            "entries": [
                {
                    "idx": [self.basis.labels[o], self.basis.labels[i]],
                    "val": rings.scalar_to_str(self.ring, v),
                }
                for (o, i), v in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_json(cls, data, basis=None):
        basis = basis or GradedBasis.from_json(data["basis"])
        ring = data["ring"]
        e = cls(basis, ring, data["degree"])
        for entry in data["entries"]:
            o, i = entry["idx"]
            e.set(o, i, rings.scalar_from_json(ring, entry["val"]))
        return e


# ---------------------------------------------------------------------------
# Koszul sign helpers
# ---------------------------------------------------------------------------

def koszul_permutation_sign(degrees, perm):
    """Sign of reordering symbols with the given degrees by ``perm``, where
    the symbol at source position perm[k] moves to target position k.
    Only odd-degree symbol crossings contribute."""
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b] and degrees[perm[a]] % 2 and degrees[perm[b]] % 2:
                sign = -sign
    return sign


# ---------------------------------------------------------------------------
# Contraction networks
# ---------------------------------------------------------------------------

class ContractionNetwork:
    """Tensors joined by internal edges carrying the inverse metric.

    nodes: list of GradedTensor sharing one basis/ring.
    edges: list of ((node, slot), (node, slot)) pairs, each slot used once.
    open_legs: ordered list of (node, slot) for the unpaired slots.
    metric_inv: arity 2 degree 0 GradedTensor (required when edges exist).
    """

    def __init__(self, nodes, edges, open_legs, metric_inv=None):
        self.nodes = list(nodes)
        self.edges = [tuple(map(tuple, e)) for e in edges]
        self.open_legs = [tuple(l) for l in open_legs]
        self.metric_inv = metric_inv
        self._validate()

    def _validate(self):
        if not self.nodes:
            raise ValueError("empty network")
        basis = self.nodes[0].basis
        ring = self.nodes[0].ring
        for t in self.nodes:
            if t.basis != basis or t.ring != ring:
                raise ValueError("all network tensors must share basis and ring")
        if self.edges and self.metric_inv is None:
            raise ValueError("internal edges require the inverse metric")
        if self.metric_inv is not None:
            if self.metric_inv.arity != 2 or self.metric_inv.degree != 0:
                raise ValueError("inverse metric must have arity 2, degree 0")
        seen = set()
        for e in self.edges:
            for leg in e:
                if leg in seen:
                    raise ValueError(f"leg {leg} used twice")
                seen.add(leg)
        for leg in self.open_legs:
            if leg in seen:
                raise ValueError(f"leg {leg} both internal and open")
            seen.add(leg)
        want = {(i, s) for i, t in enumerate(self.nodes) for s in range(t.arity)}
        if seen != want:
            missing = want - seen
            extra = seen - want
            raise ValueError(f"dangling legs {sorted(missing)}; unknown {sorted(extra)}")


class _Block:
    __slots__ = ("slots", "entries", "degree")

    def __init__(self, slots, entries, degree):
        self.slots = slots      # list of leg ids
        self.entries = entries  # dict idx tuple -> scalar
        self.degree = degree


def _metric_rows(metric_inv):
    rows = {}
    for (p, q), v in metric_inv.coeffs.items():
        rows.setdefault(p, []).append((q, v))
    return rows


def contract(network):
    """Contract a network; returns the tensor on the open legs in order.

    The result does not depend on the order in which internal edges are
    processed (the inverse metric has degree zero, so edge factors are even).
    """
    ring = network.nodes[0].ring
    basis = network.nodes[0].basis
    degs = basis.degrees
    signed = ring == rings.Q

    blocks = []
    for i, t in enumerate(network.nodes):
        entries = dict(t.coeffs)
        blocks.append(_Block([(i, s) for s in range(t.arity)], entries, t.degree))

    W = _metric_rows(network.metric_inv) if network.metric_inv is not None else {}

    def block_of(leg):
        for bi, b in enumerate(blocks):
            if leg in b.slots:
                return bi
        raise AssertionError(f"leg {leg} lost")

    pending = list(network.edges)
    result_degree = sum(t.degree for t in network.nodes)

    while pending:
        # choose the cheapest edge to contract next (deterministic tie-break)
        best = None
        for ei, (u, v) in enumerate(pending):
            bu, bv = block_of(u), block_of(v)
            cost = (
                len(blocks[bu].entries)
                if bu == bv
                else len(blocks[bu].entries) * len(blocks[bv].entries)
            )
            key = (cost, ei)
            if best is None or key < best[0]:
                best = (key, ei, u, v, bu, bv)
        _, ei, u, v, bu, bv = best
        if bu != bv:
            _fuse(blocks, bu, bv, signed)
            bu = min(bu, bv)
        blk = blocks[bu]
        # contract every pending edge now internal to this block
        internal = [
            (a, b) for (a, b) in pending if a in blk.slots and b in blk.slots
        ]
        pending = [e for e in pending if e not in internal]
        for a, b in internal:
            _contract_pair(blk, a, b, W, degs, signed)

    # fuse leftover blocks (disconnected networks / no edges)
    while len(blocks) > 1:
        _fuse(blocks, 0, 1, signed)
    blk = blocks[0]

    # reorder to the declared open-leg order
    perm = [blk.slots.index(l) for l in network.open_legs]
    if sorted(perm) != list(range(len(blk.slots))):
        raise AssertionError("open legs do not match surviving slots")
    out = GradedTensor(basis, ring, len(network.open_legs), result_degree)
    for idx, val in blk.entries.items():
        new_idx = tuple(idx[p] for p in perm)
        if signed:
            tup_degs = [degs[i] for i in idx]
            s = koszul_permutation_sign(tup_degs, perm)
            if s < 0:
                val = -val
        cur = out.coeffs.get(new_idx, rings.zero(ring))
        out._set(new_idx, rings.add(ring, cur, val))
    return out


def _fuse(blocks, bi, bj, signed):
    """Tensor-multiply blocks bi and bj into position min(bi,bj).

    Moving a block across the blocks between them costs the Koszul sign of
    the block degrees (every block is homogeneous)."""
    if bi > bj:
        bi, bj = bj, bi
    A, B = blocks[bi], blocks[bj]
    sign = 1
    if signed and B.degree % 2:
        between = sum(blocks[k].degree for k in range(bi + 1, bj))
        if between % 2:
            sign = -1
    entries = {}
    for ia, va in A.entries.items():
        for ib, vb in B.entries.items():
            val = va * vb if sign > 0 else -va * vb
            if val:
                entries[ia + ib] = val
    blocks[bi] = _Block(A.slots + B.slots, entries, A.degree + B.degree)
    del blocks[bj]


def _contract_pair(blk, leg_u, leg_v, W, degs, signed):
    """Contract two slots of one block through the inverse metric."""
    pu = blk.slots.index(leg_u)
    pv = blk.slots.index(leg_v)
    if pu > pv:
        pu, pv = pv, pu
    new_entries = {}
    for idx, val in blk.entries.items():
        p = idx[pu]
        for q, w in W.get(p, ()):
            if idx[pv] != q:
                continue
            v = val * w if signed else (val * w) % 2
            if signed:
                between = sum(degs[idx[k]] for k in range(pu + 1, pv))
                if (degs[q] % 2) and (between % 2):
                    v = -v
            new_idx = idx[:pu] + idx[pu + 1 : pv] + idx[pv + 1 :]
            cur = new_entries.get(new_idx)
            tot = v if cur is None else cur + v
            if signed:
                if tot == 0:
                    new_entries.pop(new_idx, None)
                else:
                    new_entries[new_idx] = tot
            else:
                tot %= 2
                if tot == 0:
                    new_entries.pop(new_idx, None)
                else:
                    new_entries[new_idx] = tot
    blk.entries = new_entries
    blk.slots = blk.slots[:pu] + blk.slots[pu + 1 : pv] + blk.slots[pv + 1 :]


def invert_metric(g):
    """Inverse of a symmetric nondegenerate arity-2 degree-0 tensor.

    Returns W with sum_b g(a,b) W(b,c) = delta_{a,c}.  Raises
    ``SingularMetricError`` carrying a kernel vector when g is degenerate.
    """
    if g.arity != 2 or g.degree != 0:
        raise ValueError("metric must have arity 2 and degree 0")
    n = len(g.basis)
    zero = rings.zero(g.ring)
    M = [[zero] * n for _ in range(n)]
    for (a, b), v in g.coeffs.items():
        M[a][b] = v
    degs = g.basis.degrees
    for a in range(n):
        for b in range(n):
            # graded symmetry: odd-odd entries flip sign under transposition
            want = M[b][a]
            if g.ring == rings.Q and degs[a] % 2 and degs[b] % 2:
                want = -want
            if M[a][b] != want:
                raise ValueError("metric is not graded-symmetric")
    if g.ring == rings.Q:
        inv, ker = linalg.q_matrix_inverse([[Fraction(x) for x in row] for row in M])
        if inv is None:
            raise SingularMetricError(g.basis, ker)
    else:
        rows_bits = []
        for a in range(n):
            m = 0
            for b in range(n):
                if M[a][b] % 2:
                    m |= 1 << b
            rows_bits.append(m)
        ker = linalg.gf2_nullspace(rows_bits, n)
        if ker:
            vec = [(ker[0] >> j) & 1 for j in range(n)]
            raise SingularMetricError(g.basis, vec)
        cols = []
        for c in range(n):
            rhs = [1 if a == c else 0 for a in range(n)]
            x = linalg.gf2_solve(rows_bits, rhs)
            cols.append(x)
        inv = [[(cols[c] >> b) & 1 for c in range(n)] for b in range(n)]
    out = GradedTensor(g.basis, g.ring, 2, 0)
    for b in range(n):
        for c in range(n):
            if inv[b][c]:
                out._set((b, c), rings.coerce(g.ring, inv[b][c]))
    return out


class SingularMetricError(ValueError):
    """Raised when a pairing is degenerate; carries a kernel witness."""

    def __init__(self, basis, kernel_vector):
        self.kernel = {
            basis.labels[i]: v for i, v in enumerate(kernel_vector) if v
        }
        super().__init__(f"metric is singular; kernel witness {self.kernel}")


# ---------------------------------------------------------------------------
# The differential acting on tensors
# ---------------------------------------------------------------------------

def apply_Q(t, q):
    """Leibniz action of an endomorphism on a covariant tensor:
    (Q t)(x_1,...,x_n) = sum_i (-1)^(|x_1|+...+|x_{i-1}|) t(x_1,..,Q x_i,..,x_n).
    """
    if isinstance(q, GradedTensor):
        raise TypeError("pass the differential as an Endo (see Endo.from_json)")
    if t.basis != q.basis or t.ring != q.ring:
        raise ValueError("tensor/endo basis or ring mismatch")
    ring = t.ring
    degs = t.basis.degrees
    out = GradedTensor(t.basis, ring, t.arity, t.degree + q.degree)
    signed = ring == rings.Q
    for idx, val in t.coeffs.items():
        for i in range(t.arity):
            m = idx[i]
            for (o, ii), w in q.entries.items():
                if o != m:
                    continue
                new_idx = idx[:i] + (ii,) + idx[i + 1 :]
                v = rings.mul(ring, val, w)
                if signed:
                    prefix = sum(degs[new_idx[k]] for k in range(i))
                    if prefix % 2:
                        v = -v
                cur = out.coeffs.get(new_idx, rings.zero(ring))
                out._set(new_idx, rings.add(ring, cur, v))
    return out


def _tuples_of_degree(basis, arity, total):
    degs = basis.degrees
    n = len(basis)
    out = []
    for idx in itertools.product(range(n), repeat=arity):
        if sum(degs[i] for i in idx) == total:
            out.append(idx)
    return out


def q_closed_violation(t, q):
    """First coefficient (by index order) where apply_Q(t) is nonzero."""
    qt = apply_Q(t, q)
    if qt.is_zero():
        return None
    idx = min(qt.coeffs)
    return tuple(t.basis.labels[i] for i in idx), qt.coeffs[idx]


def q_exact_witness(t, q):
    """Solve apply_Q(s) = t exactly; returns s or None (ABSENT).

    Precondition: t is Q-closed.  Deterministic Gaussian elimination with
    unknown tuples ordered lexicographically.
    """
    viol = q_closed_violation(t, q)
    if viol is not None:
        raise ValueError(f"q_exact_witness: input not Q-closed at {viol[0]}")
    ring = t.ring
    basis = t.basis
    s_degree = t.degree - q.degree
    unknowns = _tuples_of_degree(basis, t.arity, -s_degree)
    if not unknowns:
        return None if t.coeffs else GradedTensor(basis, ring, t.arity, s_degree)
    col_of = {u: j for j, u in enumerate(unknowns)}
    rows_map = {}
    degs = basis.degrees
    signed = ring == rings.Q
    for u in unknowns:
        for i in range(t.arity):
            for (o, ii), w in q.entries.items():
                # apply_Q(s)[tgt] picks up Q[o, tgt_i] * s[tgt with slot i -> o]
                if o != u[i]:
                    continue
                tgt = u[:i] + (ii,) + u[i + 1 :]
                v = w
                if signed:
                    prefix = sum(degs[tgt[k]] for k in range(i))
                    if prefix % 2:
                        v = -v
                row = rows_map.setdefault(tgt, {})
                row[col_of[u]] = rings.add(ring, row.get(col_of[u], rings.zero(ring)), v)
    targets = sorted(set(rows_map) | set(t.coeffs))
    mat = []
    rhs = []
    for tgt in targets:
        row = rows_map.get(tgt, {})
        mat.append([row.get(j, rings.zero(ring)) for j in range(len(unknowns))])
        rhs.append(t.coeffs.get(tgt, rings.zero(ring)))
    sol = linalg.solve_dense(ring, mat, rhs, len(unknowns))
    if sol is None:
        return None
    s = GradedTensor(basis, ring, t.arity, s_degree)
    for j, u in enumerate(unknowns):
        if sol[j]:
            s._set(u, rings.coerce(ring, sol[j]))
    return s

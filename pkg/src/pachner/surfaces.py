"""Polygonal decompositions of oriented surfaces as combinatorial maps.

A decomposition is stored as a pair of permutations on darts (edge sides):
``alpha`` (edge involution, free) and ``phi`` (face permutation, counter-
clockwise).  The vertex rotation is derived as sigma = phi o alpha.  Boundary
circles are modeled by capping each hole with a distinguished face; the darts
of hole faces are the boundary darts, positioned along the hole's phi-cycle
from a base dart.  Every vertex carries a label; cells of the flip complex
are decompositions up to label-preserving isomorphism fixing the boundary
darts pointwise (combinatorial cellular homeomorphism rel vertices and rel
boundary).

Faces may revisit edges and vertices (non-regular CW decompositions are
allowed); 2-cells must have at least 3 sides.
"""

from __future__ import annotations

import itertools


class SurfaceError(ValueError):
    pass


def _orbits(perm):
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        orbit = []
        d = start
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = perm[d]
        out.append(tuple(orbit))
    return out


class PolygonalDecomposition:
    """Immutable combinatorial map with labeled vertices and ordered holes.

    holes: tuple of (base_dart, direction) with direction "in" or "out";
    the hole circle's darts in position order are base, phi(base), ...
    vlabels: dict mapping each vertex orbit's minimal dart to its label.
    """

    __slots__ = ("alpha", "phi", "holes", "vlabels", "_sigma", "_faces", "_code")

    def __init__(self, alpha, phi, holes, vlabels):
        self.alpha = tuple(alpha)
        self.phi = tuple(phi)
        self.holes = tuple((int(b), str(d)) for b, d in holes)
        self._sigma = tuple(self.phi[a] for a in self.alpha)
        self._faces = None
        self._code = None
        # normalize vertex label keys to orbit minima
        orbit_min = {}
        for orb in _orbits(self._sigma):
            m = min(orb)
            for d in orb:
                orbit_min[d] = m
        norm = {}
        for d, lab in vlabels.items():
            key = orbit_min[int(d)]
            if key in norm and norm[key] != str(lab):
                raise SurfaceError(f"conflicting labels for one vertex: {norm[key]} vs {lab}")
            norm[key] = str(lab)
        self.vlabels = norm

    # -- basic structure ----------------------------------------------------

    @property
    def n_darts(self):
        return len(self.alpha)

    @property
    def sigma(self):
        return self._sigma

    def faces(self):
        """phi-orbits, each rotated to start at its minimal dart."""
        if self._faces is None:
            out = []
            for orb in _orbits(self.phi):
                k = orb.index(min(orb))
                out.append(orb[k:] + orb[:k])
            self._faces = tuple(sorted(out))
        return self._faces

    def vertices(self):
        out = []
        for orb in _orbits(self._sigma):
            k = orb.index(min(orb))
            out.append(orb[k:] + orb[:k])
        return tuple(sorted(out))

    def hole_cycles(self):
        """Darts of each hole in position order."""
        out = []
        for base, _ in self.holes:
            cyc = [base]
            d = self.phi[base]
            while d != base:
                cyc.append(d)
                d = self.phi[d]
            out.append(tuple(cyc))
        return out

    def hole_darts(self):
        s = set()
        for cyc in self.hole_cycles():
            s.update(cyc)
        return s

    def interior_faces(self):
        hd = self.hole_darts()
        return [f for f in self.faces() if f[0] not in hd]

    def tail_vertex(self, d):
        """Minimal dart of the vertex at the tail of dart d."""
        orb = [d]
        x = self._sigma[d]
        while x != d:
            orb.append(x)
            x = self._sigma[x]
        return min(orb)

    def vertex_label(self, d):
        return self.vlabels[self.tail_vertex(d)]

    def circle_vertex_labels(self, circle):
        """Vertex labels around a hole, in position order."""
        cyc = self.hole_cycles()[circle]
        return [self.vertex_label(d) for d in cyc]

    def circle_dirs(self):
        return [d for _, d in self.holes]

    def in_circles(self):
        return [i for i, (_, d) in enumerate(self.holes) if d == "in"]

    def out_circles(self):
        return [i for i, (_, d) in enumerate(self.holes) if d == "out"]

    # -- validation -----------------------------------------------------------

    def validate(self, require_simplicial=False):
        """Check all structural invariants; returns a report dict."""
        n = self.n_darts
        problems = []
        if sorted(self.phi) != list(range(n)):
            problems.append("phi is not a permutation")
        for d in range(n):
            if self.alpha[d] == d or self.alpha[self.alpha[d]] != d:
                problems.append(f"alpha is not a free involution at dart {d}")
                break
        # connectivity under <alpha, phi>
        if n:
            seen = {0}
            stack = [0]
            while stack:
                d = stack.pop()
                for e in (self.alpha[d], self.phi[d]):
                    if e not in seen:
                        seen.add(e)
                        stack.append(e)
            if len(seen) != n:
                problems.append("surface is not connected")
        hole_darts = set()
        for idx, cyc in enumerate(self.hole_cycles()):
            if hole_darts & set(cyc):
                problems.append(f"holes {idx} overlaps another hole")
            hole_darts.update(cyc)
        profile = []
        for f in self.faces():
            if f[0] in hole_darts:
                continue
            if set(f) & hole_darts:
                problems.append(f"face {f} mixes interior and boundary darts")
            if len(f) < 3:
                problems.append(f"face < 3: face {f} has {len(f)} sides")
            profile.append(len(f))
        verts = self.vertices()
        labels = []
        for orb in verts:
            if orb[0] not in self.vlabels:
                problems.append(f"vertex at dart {orb[0]} unlabeled")
            else:
                labels.append(self.vlabels[orb[0]])
        if len(set(labels)) != len(labels):
            problems.append("vertex labels are not distinct")
        V = len(verts)
        E = n // 2
        F_int = len(self.interior_faces())
        n_holes = len(self.holes)
        chi = V - E + F_int
        genus2 = 2 - n_holes - chi
        if genus2 % 2:
            problems.append(f"Euler characteristic {chi} inconsistent with orientability")
        genus = genus2 // 2
        if genus < 0:
            problems.append(f"negative genus from chi={chi}, holes={n_holes}")
        if require_simplicial:
            for f in self.interior_faces():
                corners = [self.tail_vertex(d) for d in f]
                edges = [min(d, self.alpha[d]) for d in f]
                if len(set(corners)) != len(corners) or len(set(edges)) != len(edges):
                    problems.append(f"face {f} is not embedded (strict mode)")
        return {
            "ok": not problems,
            "problems": problems,
            "V": V,
            "E": E,
            "F": F_int,
            "chi": chi,
            "genus": genus,
            "n_boundary": n_holes,
            "face_profile": sorted(profile),
        }

    def check(self):
        rep = self.validate()
        if not rep["ok"]:
            raise SurfaceError("; ".join(rep["problems"]))
        return rep

    def is_triangulation(self):
        return all(len(f) == 3 for f in self.interior_faces())

    def cell_dimension(self):
        """Flip-complex dimension: sum over 2-cells of (sides - 3)."""
        return sum(len(f) - 3 for f in self.interior_faces())

    # -- canonical form ---------------------------------------------------

    def _relabel_from(self, seeds):
        """Deterministic BFS relabeling; returns old->new map or None if
        not all darts are reached."""
        n = self.n_darts
        rel = [-1] * n
        order = []
        for s in seeds:
            if rel[s] == -1:
                rel[s] = len(order)
                order.append(s)
        i = 0
        while i < len(order):
            d = order[i]
            i += 1
            for e in (self.phi[d], self.alpha[d]):
                if rel[e] == -1:
                    rel[e] = len(order)
                    order.append(e)
        if len(order) != n:
            return None
        return rel

    def _serialize(self, rel, seeds_base=None):
        n = self.n_darts
        inv = [0] * n
        for old, new in enumerate(rel):
            inv[new] = old
        phi = tuple(rel[self.phi[inv[d]]] for d in range(n))
        alpha = tuple(rel[self.alpha[inv[d]]] for d in range(n))
        holes = tuple(
            (rel[seeds_base[i]] if seeds_base else rel[b], dir_)
            for i, (b, dir_) in enumerate(self.holes)
        )
        labs = []
        for orb in self.vertices():
            m = min(rel[d] for d in orb)
            labs.append((m, self.vlabels[orb[0]]))
        return (n, phi, alpha, holes, tuple(sorted(labs)))

    def _hole_start_candidates(self, cyc):
        """Starts of the hole cycle minimizing the vertex-label sequence.

        Boundary circles are pinned by their vertex labels, not by stored
        dart positions: a relabeled copy of the same map must canonicalize
        identically."""
        k = len(cyc)
        seqs = []
        for s in range(k):
            seqs.append(tuple(self.vertex_label(cyc[(s + j) % k]) for j in range(k)))
        best = min(seqs)
        return [s for s in range(k) if seqs[s] == best]

    def _canonical_data(self):
        if self.holes:
            cycles = self.hole_cycles()
            candidate_lists = [self._hole_start_candidates(c) for c in cycles]
            best = None
            best_rel = None
            for combo in itertools.product(*candidate_lists):
                seeds = []
                for cyc, s in zip(cycles, combo):
                    seeds.extend(cyc[s:] + cyc[:s])
                rel = self._relabel_from(seeds)
                if rel is None:
                    raise SurfaceError("disconnected map")
                cand = self._serialize(rel, seeds_base=dict(zip(range(len(cycles)), [c[s] for c, s in zip(cycles, combo)])))
                if best is None or cand < best:
                    best, best_rel = cand, rel
            return best, best_rel
        best, best_rel = None, None
        for s in range(self.n_darts):
            rel = self._relabel_from([s])
            if rel is None:
                raise SurfaceError("disconnected map")
            cand = self._serialize(rel)
            if best is None or cand < best:
                best, best_rel = cand, rel
        return best, best_rel

    def canonical_code(self):
        """Bytes identifying the decomposition up to isomorphism of labeled
        combinatorial maps preserving the ordered boundary structure."""
        if self._code is None:
            data, _ = self._canonical_data()
            self._code = repr(data).encode()
        return self._code

    def canonical_form(self):
        """The canonically relabeled decomposition (deterministic
        representative of this cell)."""
        data, rel = self._canonical_data()
        n, phi, alpha, holes, labs = data
        vlabels = {m: lab for m, lab in labs}
        return PolygonalDecomposition(alpha, phi, holes, vlabels)

    def __eq__(self, other):
        if not isinstance(other, PolygonalDecomposition):
            return NotImplemented
        return self.canonical_code() == other.canonical_code()

    def __hash__(self):
        return hash(self.canonical_code())

    def __repr__(self):
        rep = self.validate()
        return (
            f"PolygonalDecomposition(V={rep['V']}, E={rep['E']}, F={rep['F']}, "
            f"genus={rep['genus']}, holes={rep['n_boundary']}, "
            f"profile={rep['face_profile']})"
        )

    # -- local moves --------------------------------------------------------

    def _face_cycle_from(self, d):
        cyc = [d]
        x = self.phi[d]
        while x != d:
            cyc.append(x)
            x = self.phi[x]
        return cyc

    def split_face(self, face_dart, i, j):
        """Insert a diagonal between corners i and j of the face containing
        ``face_dart``.  Corner t sits at the tail of the t-th side of the
        face cycle starting at ``face_dart``."""
        cyc = self._face_cycle_from(face_dart)
        m = len(cyc)
        if m < 4:
            raise SurfaceError(f"cannot split a face with {m} < 4 sides")
        if face_dart in self.hole_darts():
            raise SurfaceError("cannot split a hole face")
        i, j = sorted((i % m, j % m))
        if j - i < 2 or (i == 0 and j == m - 1):
            raise SurfaceError(f"corners {i},{j} are adjacent; split would make a 2-gon")
        n = self.n_darts
        x, y = n, n + 1  # x: corner i -> corner j, y: reverse
        alpha = list(self.alpha) + [y, x]
        phi = list(self.phi) + [0, 0]
        # face 1: cyc[i..j-1], then y; face 2: cyc[j..], cyc[..i-1], then x
        phi[cyc[j - 1]] = y
        phi[y] = cyc[i]
        phi[cyc[i - 1] if i > 0 else cyc[m - 1]] = x
        phi[x] = cyc[j]
        vl = dict(self.vlabels)
        return PolygonalDecomposition(alpha, phi, self.holes, vl)

    def _drop_darts(self, dead, alpha, phi, holes, vlabels_by_olddart):
        alive = [d for d in range(len(alpha)) if d not in dead]
        rel = {old: new for new, old in enumerate(alive)}
        new_alpha = [rel[alpha[d]] for d in alive]
        new_phi = [rel[phi[d]] for d in alive]
        new_holes = [(rel[b], dir_) for b, dir_ in holes]
        new_vl = {rel[d]: lab for d, lab in vlabels_by_olddart.items() if d in rel}
        return PolygonalDecomposition(new_alpha, new_phi, new_holes, new_vl)

    def erase_edge(self, d):
        """Erase the interior edge containing dart d, merging its two faces."""
        dd = self.alpha[d]
        hd = self.hole_darts()
        if d in hd or dd in hd:
            raise SurfaceError("cannot erase a boundary edge")
        fa = self._face_cycle_from(d)
        if dd in fa:
            raise SurfaceError("edge has the same face on both sides; erasure rejected")
        fb = self._face_cycle_from(dd)
        phi = list(self.phi)
        # merged cycle: fa without d spliced with fb without dd
        phi[fa[-1]] = fb[1] if len(fb) > 1 else fb[0]
        phi[fb[-1]] = fa[1] if len(fa) > 1 else fa[0]
        # fa starts at d: predecessor of d is fa[-1]; successor fa[1]
        # (fa[-1] -> fb[1] and fb[-1] -> fa[1] removes d and dd)
        # keep labels keyed by any representative dart of each vertex
        vl = {}
        for orb in self.vertices():
            for dart in orb:
                if dart != d and dart != dd:
                    vl[dart] = self.vlabels[orb[0]]
                    break
            else:
                raise SurfaceError("erasure would delete a vertex")
        return self._drop_darts({d, dd}, self.alpha, phi, self.holes, vl)

    def erasable_edges(self):
        """One dart per interior edge whose two sides lie in distinct faces."""
        hd = self.hole_darts()
        out = []
        for d in range(self.n_darts):
            dd = self.alpha[d]
            if d > dd or d in hd or dd in hd:
                continue
            if dd not in self._face_cycle_from(d):
                out.append(d)
        return out

    def flip(self, d):
        """Pachner flip of an interior edge of a triangulation: erase, then
        split the merged square along the other diagonal."""
        dd = self.alpha[d]
        if len(self._face_cycle_from(d)) != 3 or len(self._face_cycle_from(dd)) != 3:
            raise SurfaceError("flip requires two triangles")
        merged = self.erase_edge(d)
        # the merged square's cycle from its minimal dart; the erased diagonal
        # joined corners 0 and 2 of the cycle (fb[1] fb[2] fa[1] fa[2] pattern),
        # so the flip inserts the diagonal at corners 1 and 3
        fa = self._face_cycle_from(d)
        ref = fa[1]  # first surviving side of the old face cycle after d
        rel_ref = merged_dart_id(self, {d, dd}, ref)
        cyc = merged._face_cycle_from(rel_ref)
        if len(cyc) != 4:
            raise SurfaceError("flip: merged face is not a square")
        return merged.split_face(rel_ref, 1, 3)

    # -- boundary operations --------------------------------------------------

    def relabel_circle(self, circle, shift):
        """Cyclic relabeling T_shift of the vertices of one boundary circle,
        normalized so that an all-R strip equals the T_1 image of the all-L
        strip: [R^k] = T_1 [L^k]."""
        cyc = self.hole_cycles()[circle]
        k = len(cyc)
        verts = [self.tail_vertex(d) for d in cyc]
        if len(set(verts)) != k:
            # k=1 circles, or circles revisiting a vertex: relabeling is trivial
            if shift % k == 0 or len(set(verts)) == 1:
                return self
            raise SurfaceError("circle revisits a vertex; relabeling undefined")
        vl = dict(self.vlabels)
        old = [self.vlabels[v] for v in verts]
        for p, v in enumerate(verts):
            vl[v] = old[(p + shift) % k]
        return PolygonalDecomposition(self.alpha, self.phi, self.holes, vl)

    def glue(self, first, pairs=None, relabel=None):
        """Glue ``first``'s out-circles to self's in-circles (self on top).

        pairs: list of (first_out_circle, self_in_circle); defaults to zipping
        them in order.  Boundary triangulations must match circle by circle:
        same length and same vertex labels (up to the rotation determined by
        the labels).  ``relabel`` optionally renames merged vertex labels.
        """
        second = self
        if pairs is None:
            fo, si = first.out_circles(), second.in_circles()
            if len(fo) != len(si):
                raise SurfaceError("boundary mismatch: out/in circle counts differ")
            pairs = list(zip(fo, si))
        off = first.n_darts
        alpha = list(first.alpha) + [d + off for d in second.alpha]
        phi = list(first.phi) + [d + off for d in second.phi]
        f_cycles = first.hole_cycles()
        s_cycles = second.hole_cycles()
        dead = set()
        for fc, sc in pairs:
            out_cyc = f_cycles[fc]
            in_cyc = [d + off for d in s_cycles[sc]]
            k = len(out_cyc)
            if k != len(in_cyc):
                raise SurfaceError("boundary mismatch: circle lengths differ")
            out_lab = [first.vertex_label(d) for d in out_cyc]
            in_lab = [second.vertex_label(d - off) for d in in_cyc]
            match = None
            for rho in range(k):
                if all(out_lab[p] == in_lab[(rho - p) % k] for p in range(k)):
                    match = rho
                    break
            if match is None:
                raise SurfaceError(
                    f"boundary mismatch: labels {out_lab} vs {in_lab} do not align"
                )
            for p in range(k):
                o = out_cyc[p]
                i = in_cyc[(match - p - 1) % k]
                alpha[alpha[o]] = alpha[i]
                alpha[alpha[i]] = alpha[o]
                dead.add(o)
                dead.add(i)
        holes = [
            (b, dir_)
            for idx, (b, dir_) in enumerate(first.holes)
            if idx not in {fc for fc, _ in pairs}
        ] + [
            (b + off, dir_)
            for idx, (b, dir_) in enumerate(second.holes)
            if idx not in {sc for _, sc in pairs}
        ]
        vl = {}
        for orb in first.vertices():
            for dart in orb:
                if dart not in dead:
                    vl[dart] = first.vlabels[orb[0]]
                    break
        for orb in second.vertices():
            for dart in orb:
                if dart + off not in dead:
                    vl[dart + off] = second.vlabels[orb[0]]
                    break
        if relabel:
            vl = {d: relabel.get(lab, lab) for d, lab in vl.items()}
        alive = [d for d in range(len(alpha)) if d not in dead]
        rel = {old: new for new, old in enumerate(alive)}
        return PolygonalDecomposition(
            [rel[alpha[d]] for d in alive],
            [rel[phi[d]] for d in alive],
            [(rel[b], dir_) for b, dir_ in holes],
            {rel[d]: lab for d, lab in vl.items() if d in rel},
        )

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return {
            "darts": self.n_darts,
            "edge_pairs": sorted(
                [d, self.alpha[d]] for d in range(self.n_darts) if d < self.alpha[d]
            ),
            "rotation": list(self._sigma),
            "vertex_labels": {str(min(o)): self.vlabels[min(o)] for o in self.vertices()},
            "boundary": [
                {"dir": dir_, "darts": list(cyc)}
                for (b, dir_), cyc in zip(self.holes, self.hole_cycles())
            ],
        }

    @classmethod
    def from_json(cls, data):
        n = data["darts"]
        alpha = [None] * n
        for d, dd in data["edge_pairs"]:
            alpha[d], alpha[dd] = dd, d
        sigma = data["rotation"]
        # sigma = phi o alpha  =>  phi = sigma o alpha (alpha is an involution)
        phi = [sigma[alpha[d]] for d in range(n)]
        holes = [(b["darts"][0], b["dir"]) for b in data["boundary"]]
        vlabels = {int(d): lab for d, lab in data["vertex_labels"].items()}
        dec = cls(alpha, phi, holes, vlabels)
        for hole, b in zip(dec.hole_cycles(), data["boundary"]):
            if list(hole) != list(b["darts"]):
                raise SurfaceError("boundary darts are not a face cycle")
        return dec


def merged_dart_id(original, dead, dart):
    """Dart id in the map obtained from ``original`` by dropping ``dead``."""
    return dart - sum(1 for x in dead if x < dart)


# ---------------------------------------------------------------------------
# Constructors from gluing data
# ---------------------------------------------------------------------------

def from_gluing(edges, faces, hole_specs):
    """Build a decomposition from polygon gluing data.

    edges: dict name -> (tail_label, head_label).
    faces: list of faces; each face a list of (edge_name, +1|-1), listed
        counterclockwise; every edge name occurs exactly twice overall, once
        with each sign.
    hole_specs: list of (face_index, "in"|"out"); those faces cap boundary
        circles, with position 0 at the face's first listed side.
    """
    occurrences = {}
    darts = []
    for fi, face in enumerate(faces):
        for si, (name, sign) in enumerate(face):
            occurrences.setdefault(name, []).append((len(darts), sign))
            darts.append((fi, si, name, sign))
    n = len(darts)
    alpha = [None] * n
    for name, occ in occurrences.items():
        if len(occ) != 2 or occ[0][1] * occ[1][1] != -1:
            raise SurfaceError(
                f"edge {name} must occur exactly twice with opposite orientations"
            )
        (d1, _), (d2, _) = occ
        alpha[d1], alpha[d2] = d2, d1
    phi = [None] * n
    pos = 0
    for face in faces:
        m = len(face)
        for si in range(m):
            phi[pos + si] = pos + (si + 1) % m
        pos += m
    tails = {}
    for d, (fi, si, name, sign) in enumerate(darts):
        tail, head = edges[name]
        tails[d] = tail if sign > 0 else head
    sigma = [phi[alpha[d]] for d in range(n)]
    vlabels = {}
    for orb in _orbits(sigma):
        labs = {tails[d] for d in orb}
        if len(labs) != 1:
            raise SurfaceError(
                f"inconsistent edge endpoints around a vertex: {sorted(labs)}"
            )
        vlabels[min(orb)] = labs.pop()
    holes = []
    for fi, dir_ in hole_specs:
        base = sum(len(faces[i]) for i in range(fi))
        holes.append((base, dir_))
    return PolygonalDecomposition(alpha, phi, holes, vlabels)


def polygon_disk(n, labels=None, diagonals=()):
    """Disk with n boundary vertices: one n-gon face, optionally subdivided
    by non-crossing diagonals given as corner pairs (i, j)."""
    labels = [str(x) for x in (labels or range(n))]
    edges = {f"s{i}": (labels[i], labels[(i + 1) % n]) for i in range(n)}
    face = [(f"s{i}", 1) for i in range(n)]
    hole = [(f"s{i}", -1) for i in reversed(range(n))]
    dec = from_gluing(edges, [face, hole], [(1, "in")])
    for i, j in diagonals:
        dec = split_at_corner_labels(dec, labels[i], labels[j])
    return dec


def split_at_corner_labels(dec, lab_i, lab_j):
    """Split the unique interior face having corners labeled lab_i, lab_j."""
    for f in dec.interior_faces():
        if len(f) < 4:
            continue
        corner_labels = [dec.vertex_label(d) for d in f]
        if lab_i in corner_labels and lab_j in corner_labels:
            i = corner_labels.index(lab_i)
            j = corner_labels.index(lab_j)
            lo, hi = sorted((i, j))
            if hi - lo < 2 or (lo == 0 and hi == len(f) - 1):
                continue
            return dec.split_face(f[0], i, j)
    raise SurfaceError(f"no splittable face with corners {lab_i}, {lab_j}")


def fan_triangulation(n, labels=None):
    """Disk on n boundary vertices triangulated by the fan at vertex 0."""
    labels = [str(x) for x in (labels or range(n))]
    diags = [(0, j) for j in range(2, n - 1)]
    return polygon_disk(n, labels, diags)


def strip(word, in_labels=None, out_labels=None):
    """Cylinder made of one horizontal row of k squares, k = len(word).

    word: string over {R, S, L}; column j (1-based) spans bottom vertices
    b_{j-1} b_j and top vertices t_{j-1} t_j (indices mod k); R splits the
    square by the SW-NE diagonal, L by the SE-NW one, S leaves it whole.
    The leftmost and rightmost vertical edges are identified.  The bottom
    circle is "in", the top "out".
    """
    k = len(word)
    if k < 1 or any(c not in "RSL" for c in word):
        raise SurfaceError(f"bad strip word {word!r}")
    bl = [str(x) for x in (in_labels or [f"b{j}" for j in range(k)])]
    tl = [str(x) for x in (out_labels or [f"t{j}" for j in range(k)])]
    edges = {}
    for j in range(k):
        edges[f"bot{j}"] = (bl[j], bl[(j + 1) % k])
        edges[f"top{j}"] = (tl[j], tl[(j + 1) % k])
        edges[f"ver{j}"] = (bl[j], tl[j])
    faces = []
    for j in range(1, k + 1):
        b, t = f"bot{j - 1}", f"top{j - 1}"
        vl, vr = f"ver{j - 1}", f"ver{j % k}"
        c = word[j - 1]
        if c == "S":
            faces.append([(b, 1), (vr, 1), (t, -1), (vl, -1)])
        elif c == "R":
            edges[f"dia{j}"] = (bl[j - 1], tl[j % k])
            faces.append([(b, 1), (vr, 1), (f"dia{j}", -1)])
            faces.append([(f"dia{j}", 1), (t, -1), (vl, -1)])
        else:  # L
            edges[f"dia{j}"] = (bl[j % k], tl[j - 1])
            faces.append([(b, 1), (f"dia{j}", 1), (vl, -1)])
            faces.append([(vr, 1), (t, -1), (f"dia{j}", -1)])
    bottom_hole = [(f"bot{j}", -1) for j in reversed(range(k))]
    top_hole = [(f"top{j}", 1) for j in range(k)]
    faces.append(bottom_hole)
    faces.append(top_hole)
    return from_gluing(edges, faces, [(len(faces) - 2, "in"), (len(faces) - 1, "out")])


def minimal_torus():
    """Closed torus with 1 vertex, 3 edges, 2 triangles: the fundamental
    square a b a^-1 b^-1 split by the diagonal c."""
    edges = {"a": ("p", "p"), "b": ("p", "p"), "c": ("p", "p")}
    faces = [[("a", 1), ("b", 1), ("c", -1)], [("c", 1), ("a", -1), ("b", -1)]]
    return from_gluing(edges, faces, [])


def triangle_with_center(boundary_labels=("0", "1", "2"), center_label="c"):
    """Disk: triangle with one bulk vertex, stellarly triangulated."""
    b = [str(x) for x in boundary_labels]
    c = str(center_label)
    edges = {
        "s0": (b[0], b[1]),
        "s1": (b[1], b[2]),
        "s2": (b[2], b[0]),
        "r0": (b[0], c),
        "r1": (b[1], c),
        "r2": (b[2], c),
    }
    faces = [
        [("s0", 1), ("r1", 1), ("r0", -1)],
        [("s1", 1), ("r2", 1), ("r1", -1)],
        [("s2", 1), ("r0", 1), ("r2", -1)],
        [("s2", -1), ("s1", -1), ("s0", -1)],
    ]
    return from_gluing(edges, faces, [(3, "in")])


def one_holed_torus(boundary_label="0", direction="out"):
    """Genus-1 surface with one boundary circle carrying one vertex,
    triangulated with 3 triangles (V=1, E=5, F=3, chi=-1)."""
    p = str(boundary_label)
    edges = {
        "a": (p, p),
        "b": (p, p),
        "c": (p, p),
        "d": (p, p),
        "e": (p, p),  # boundary edge
    }
    # square a b a^{-1} b^{-1} with one corner opened into the boundary edge e,
    # triangulated by the diagonals c and d
    faces = [
        [("a", 1), ("b", 1), ("c", -1)],
        [("c", 1), ("a", -1), ("d", -1)],
        [("d", 1), ("b", -1), ("e", -1)],
        [("e", 1)],
    ]
    return from_gluing(edges, faces, [(3, direction)])

import itertools
import random
from fractions import Fraction

import pytest

from pachner import rings
from pachner.tensors import (
    ContractionNetwork,
    Endo,
    GradedBasis,
    GradedTensor,
    SingularMetricError,
    apply_Q,
    contract,
    invert_metric,
    koszul_permutation_sign,
    q_exact_witness,
    trivial_basis,
)


def z2_group_tensors(ring):
    """c3 and the trace metric for the group algebra k[Z2], basis (e, s)."""
    basis = trivial_basis(["e", "s"])
    mul = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    two = rings.coerce(ring, 2)
    g = GradedTensor(basis, ring, 2, 0)
    c3 = GradedTensor(basis, ring, 3, 0)
    labels = ["e", "s"]
    for a, b in itertools.product(labels, repeat=2):
        # tr(L_a L_b) = |G| if ab = e
        if mul[(a, b)] == "e" and two != 0:
            g.add_at((a, b), 2)
    for a, b, c in itertools.product(labels, repeat=3):
        if mul[(a, mul[(b, c)])] == "e" and two != 0:
            c3.add_at((a, b, c), 2)
    return basis, g, c3


def z2_delta_tensors(ring):
    """c3 and the delta metric g(a,b) = [ab = e] for k[Z2] (any char)."""
    basis = trivial_basis(["e", "s"])
    mul = {("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"}
    g = GradedTensor(basis, ring, 2, 0)
    c3 = GradedTensor(basis, ring, 3, 0)
    for a, b in itertools.product("es", repeat=2):
        if mul[(a, b)] == "e":
            g.add_at((a, b), 1)
    for a, b, c in itertools.product("es", repeat=3):
        if mul[(a, mul[(b, c)])] == "e":
            c3.add_at((a, b, c), 1)
    return basis, g, c3


def brute_contract_degree0(nodes, edges, open_legs, winv):
    """Oracle: direct index sum for all-degree-zero tensors (no signs)."""
    basis = nodes[0].basis
    ring = nodes[0].ring
    n = len(basis)
    slots = [(i, s) for i, t in enumerate(nodes) for s in range(t.arity)]
    out = {}
    for assign in itertools.product(range(n), repeat=len(slots)):
        val = rings.one(ring)
        amap = dict(zip(slots, assign))
        for i, t in enumerate(nodes):
            idx = tuple(amap[(i, s)] for s in range(t.arity))
            val = rings.mul(ring, val, t.coeffs.get(idx, rings.zero(ring)))
            if val == 0:
                break
        if val == 0:
            continue
        for u, v in edges:
            w = winv.coeffs.get((amap[u], amap[v]), rings.zero(ring))
            val = rings.mul(ring, val, w)
            if val == 0:
                break
        if val == 0:
            continue
        key = tuple(amap[l] for l in open_legs)
        out[key] = rings.add(ring, out.get(key, rings.zero(ring)), val)
    return {k: v for k, v in out.items() if v != 0}


def test_contract_identity_case():
    basis, g, c3 = z2_group_tensors(rings.Q)
    net = ContractionNetwork([c3], [], [(0, 0), (0, 1), (0, 2)])
    assert contract(net) == c3


def test_contract_two_c3_one_edge_matches_brute_force():
    basis, g, c3 = z2_delta_tensors(rings.GF2)
    winv = invert_metric(g)
    edges = [((0, 2), (1, 0))]
    open_legs = [(0, 0), (0, 1), (1, 1), (1, 2)]
    got = contract(ContractionNetwork([c3, c3], edges, open_legs, winv))
    want = brute_contract_degree0([c3, c3], edges, open_legs, winv)
    assert dict(got.coeffs) == want
    # c4assoc(e,e,e,e) = g(e, m2(m2(e,e), e)) = 1 over GF2
    assert got.get(("e", "e", "e", "e")) == 1


def test_contract_self_edge_trace():
    basis, g, c3 = z2_group_tensors(rings.Q)
    winv = invert_metric(g)
    edges = [((0, 1), (0, 2))]
    open_legs = [(0, 0)]
    got = contract(ContractionNetwork([c3], edges, open_legs, winv))
    want = brute_contract_degree0([c3], edges, open_legs, winv)
    assert dict(got.coeffs) == want
    # sum_b c3(x, b, b') g^{-1}(b,b') = tr of left multiplication by x
    assert got.get(("e",)) == 2
    assert got.get(("s",)) == 0


def test_invert_metric_identity_and_z2():
    basis = trivial_basis(["a", "b"])
    g = GradedTensor.from_entries(basis, rings.Q, 2, 0, [(("a", "a"), 1), (("b", "b"), 1)])
    w = invert_metric(g)
    assert w == g
    _, gz, _ = z2_group_tensors(rings.Q)
    wz = invert_metric(gz)
    assert wz.get(("e", "e")) == Fraction(1, 2)
    assert wz.get(("s", "s")) == Fraction(1, 2)
    assert wz.get(("e", "s")) == 0


def test_invert_metric_singular_reports_kernel():
    basis = trivial_basis(["a", "b"])
    g = GradedTensor(basis, rings.Q, 2, 0)
    with pytest.raises(SingularMetricError) as ei:
        invert_metric(g)
    assert ei.value.kernel


def test_apply_q_zero_and_leibniz_example():
    basis = GradedBasis(["e0", "e1"], [0, 1])
    q0 = Endo.zero(basis, rings.GF2)
    t = GradedTensor.from_entries(basis, rings.GF2, 1, -1, [(("e1",), 1)])
    assert apply_Q(t, q0).is_zero()
    q = Endo(basis, rings.GF2, 1)
    q.set("e1", "e0", 1)  # Q(e0) = e1
    qt = apply_Q(t, q)
    assert qt.get(("e0",)) == 1 and len(qt.coeffs) == 1


def test_metric_q_invariance():
    # compatible metric: g pairs e0 with e1; Q(e0) = e1 over GF2
    basis = GradedBasis(["e0", "e1"], [0, 0])
    g = GradedTensor.from_entries(
        basis, rings.GF2, 2, 0, [(("e0", "e1"), 1), (("e1", "e0"), 1)]
    )
    q = Endo.zero(basis, rings.GF2, degree=0)
    assert apply_Q(g, q).is_zero()


def test_q_exact_witness_examples():
    basis = GradedBasis(["e0", "e1"], [0, 1])
    q = Endo(basis, rings.GF2, 1)
    q.set("e1", "e0", 1)
    zero_t = GradedTensor(basis, rings.GF2, 2, 0)
    w = q_exact_witness(zero_t, q)
    assert w is not None and w.is_zero()
    # Q = 0, t != 0 -> ABSENT
    q0 = Endo.zero(basis, rings.GF2)
    t = GradedTensor.from_entries(basis, rings.GF2, 1, -1, [(("e1",), 1)])
    assert q_exact_witness(t, q0) is None


def test_q_exact_witness_rejects_non_closed():
    basis = GradedBasis(["e0", "e1"], [0, 1])
    q = Endo(basis, rings.GF2, 1)
    q.set("e1", "e0", 1)
    # t = e1* has apply_Q(t) = e0* != 0
    t = GradedTensor.from_entries(basis, rings.GF2, 1, -1, [(("e1",), 1)])
    with pytest.raises(ValueError, match="not Q-closed"):
        q_exact_witness(t, q)


def _random_tensor(rng, basis, ring, arity):
    degs = basis.degrees
    n = len(basis)
    tuples = [
        idx
        for idx in itertools.product(range(n), repeat=arity)
    ]
    # pick a homogeneous stratum at random
    strata = {}
    for idx in tuples:
        strata.setdefault(sum(degs[i] for i in idx), []).append(idx)
    total = rng.choice(sorted(strata))
    t = GradedTensor(basis, ring, arity, -total)
    for idx in strata[total]:
        if rng.random() < 0.5:
            v = rng.randint(1, 5) if ring == rings.Q else 1
            t._set(idx, rings.coerce(ring, v))
    return t


def _graded_test_basis():
    return GradedBasis(["a", "b", "x", "y"], [0, 0, 1, -1])


def test_property_koszul_transposition_sign():
    rng = random.Random(7)
    basis = _graded_test_basis()
    for _ in range(120):
        arity = rng.randint(2, 4)
        t = _random_tensor(rng, basis, rings.Q, arity)
        i = rng.randrange(arity)
        j = rng.randrange(arity)
        if i == j:
            j = (j + 1) % arity
        legs = [(0, s) for s in range(arity)]
        legs[i], legs[j] = legs[j], legs[i]
        swapped = contract(ContractionNetwork([t], [], legs))
        perm = list(range(arity))
        perm[i], perm[j] = perm[j], perm[i]
        for idx, val in t.coeffs.items():
            new_idx = tuple(idx[p] for p in perm)
            sign = koszul_permutation_sign([basis.degrees[k] for k in idx], perm)
            assert swapped.coeffs.get(new_idx, 0) == sign * val


def test_property_contract_edge_order_independence():
    rng = random.Random(11)
    basis = _graded_test_basis()
    g = GradedTensor.from_entries(
        basis,
        rings.Q,
        2,
        0,
        # graded-symmetric: the odd-odd block is antisymmetric
        [(("a", "a"), 1), (("b", "b"), 2), (("x", "y"), 1), (("y", "x"), -1)],
    )
    winv = invert_metric(g)
    for _ in range(100):
        t1 = _random_tensor(rng, basis, rings.Q, 3)
        t2 = _random_tensor(rng, basis, rings.Q, 3)
        t3 = _random_tensor(rng, basis, rings.Q, 2)
        edges = [((0, 1), (1, 0)), ((1, 2), (2, 0)), ((2, 1), (0, 2))]
        open_legs = [(0, 0), (1, 1)]
        results = []
        for perm in itertools.permutations(edges):
            net = ContractionNetwork([t1, t2, t3], list(perm), open_legs, winv)
            results.append(contract(net))
        assert all(r == results[0] for r in results[1:])


def test_property_metric_round_trip():
    rng = random.Random(13)
    basis = _graded_test_basis()
    for _ in range(100):
        # random symmetric nondegenerate degree-0 metric
        g = GradedTensor(basis, rings.Q, 2, 0)
        diag = [rng.randint(1, 4), rng.randint(1, 4)]
        g._set((0, 0), Fraction(diag[0]))
        g._set((1, 1), Fraction(diag[1]))
        c = Fraction(rng.randint(1, 4))
        g._set((2, 3), c)
        g._set((3, 2), -c)
        off = Fraction(rng.randint(0, 2))
        if off:
            g._set((0, 1), off)
            g._set((1, 0), off)
        if diag[0] * diag[1] == off * off:
            continue
        winv = invert_metric(g)
        # matrix identity: sum_b g(a,b) winv(b,c) = delta
        for a in range(4):
            for c in range(4):
                tot = sum(
                    g.coeffs.get((a, b), Fraction(0)) * winv.coeffs.get((b, c), Fraction(0))
                    for b in range(4)
                )
                assert tot == (1 if a == c else 0)
        # in-network form: an edge carrying g^{-1} between two copies of g
        # collapses them back to a single g
        net = ContractionNetwork(
            [g, g], [((0, 1), (1, 0))], [(0, 0), (1, 1)], metric_inv=winv
        )
        assert contract(net) == g


def test_property_apply_q_nilpotent_and_witness_round_trip():
    rng = random.Random(17)
    basis = GradedBasis(["u0", "u1", "v0", "v1"], [0, 0, 1, 1])
    for trial in range(100):
        ring = rings.GF2 if trial % 2 else rings.Q
        q = Endo(basis, ring, 1)
        for o in ("v0", "v1"):
            for i in ("u0", "u1"):
                v = rng.randint(0, 2)
                if v:
                    q.set(o, i, v)
        assert q.compose(q).is_zero()
        arity = rng.randint(1, 3)
        t = _random_tensor(rng, basis, ring, arity)
        qt = apply_Q(t, q)
        assert apply_Q(qt, q).is_zero()
        w = q_exact_witness(qt, q)
        assert w is not None
        assert apply_Q(w, q) == qt


def test_tensor_json_round_trip():
    basis, g, c3 = z2_group_tensors(rings.Q)
    data = c3.to_json()
    back = GradedTensor.from_json(data)
    assert back == c3

from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from freydcat import QQ, ZZ, Matrix, UsageError, Zmod
from freydcat import homological as H
from freydcat.freyd import present
from freydcat.rows import rows_mor

from randgen import rand_module, rand_module_mor

M = Matrix.from_rows


def cyc(n, ring=ZZ):
    return present(M(ring, [[n]]))


def inv(obj):
    return H.module_invariants(obj)


def pretty(obj):
    return inv(obj).pretty()


# --- presentations and invariants ---------------------------------------------------------

def test_present_module_examples():
    assert pretty(H.present_module(M(ZZ, [[2]]))) == "Z/2"
    assert pretty(H.present_module(Matrix.zero(ZZ, 0, 1))) == "Z"
    assert pretty(H.free_module(QQ, 3)) == "Q^3"


@pytest.mark.parametrize("ring,rows,free,torsion", [
    (ZZ, [[2, 0], [0, 3]], 0, (6,)),
    (ZZ, [[2, 4, 0]], 2, (2,)),
    (ZZ, [[1]], 0, ()),
    (QQ, [[2, 4], [1, 2]], 1, ()),
    (Zmod(4), [[2]], 0, (2,)),
    (Zmod(6), [[2, 3]], 0, (6,)),
    (Zmod(6), [], 0, (6,)),
])
def test_module_invariants(ring, rows, free, torsion):
    rel = M(ring, rows) if rows else Matrix.zero(ring, 0, 1)
    got = inv(present(rel))
    assert (got.free_rank, got.torsion) == (free, torsion)


def test_free_rank_three_and_sizes():
    m = inv(H.free_module(ZZ, 3))
    assert (m.free_rank, m.torsion, m.size) == (3, (), None)
    assert inv(present(M(Zmod(4), [[2]]))).size == 2
    assert inv(H.free_module(Zmod(6), 1)).size == 6


def test_free_cover_is_epi():
    m = present(M(ZZ, [[2, 0], [0, 3]]))
    assert H.fpmod(ZZ).is_epi(H.free_cover(m))


def test_ring_mismatch_is_rejected():
    with pytest.raises(UsageError):
        H.hom_module(cyc(2), cyc(2, QQ))
    with pytest.raises(UsageError):
        H.tensor_module(cyc(2), cyc(2, Zmod(4)))


@settings(max_examples=40, deadline=None)
@given(rng=st.randoms(use_true_random=False))
def test_invariants_are_isomorphism_invariant(rng):
    ring = ZZ
    m = rand_module(rng, ring)
    c = H.fpmod(ring)
    # change of generators by a unimodular matrix gives an isomorphic presentation
    g = m.payload.range.payload
    u = Matrix.identity(ring, g)
    for _ in range(3):
        if g >= 2:
            i, j = rng.sample(range(g), 2)
            e = [[int(r == c) for c in range(g)] for r in range(g)]
            e[i][j] = rng.randint(-3, 3)
            u = u @ M(ring, e)
    rel = H.relation_matrix(m)
    m2 = present(rel @ u)
    iso = c.freyd_morphism(m, m2, rows_mor(u))
    assert iso is not None and c.is_iso(iso)
    assert inv(m) == inv(m2)


# --- hom and tensor ---------------------------------------------------------------------------

def test_hom_examples():
    assert pretty(H.hom_module(cyc(4), cyc(6))) == "Z/2"
    assert pretty(H.hom_module(H.free_module(ZZ, 2), H.free_module(ZZ, 3))) == "Z^6"
    assert inv(H.hom_module(cyc(4), H.fpmod(ZZ).zero_object())).is_zero
    assert inv(H.hom_module(cyc(2), H.free_module(ZZ, 1))).is_zero


def test_tensor_examples():
    assert pretty(H.tensor_module(cyc(4), cyc(6))) == "Z/2"
    m = present(M(ZZ, [[2, 0], [0, 0]]))
    assert pretty(H.tensor_module(H.free_module(ZZ, 2), m)) == "Z^2 ⊕ Z/2 ⊕ Z/2"
    assert inv(H.tensor_module(m, H.fpmod(ZZ).zero_object())).is_zero
    assert pretty(H.tensor_module(cyc(3), cyc(9))) == "Z/3"


@pytest.mark.parametrize("m,n", [(m, n) for m in range(2, 13, 3) for n in range(2, 13, 2)])
def test_gcd_laws(m, n):
    d = gcd(m, n)
    want = "0" if d == 1 else f"Z/{d}"
    assert pretty(H.hom_module(cyc(m), cyc(n))) == want
    assert pretty(H.tensor_module(cyc(m), cyc(n))) == want
    assert pretty(H.ext_module(cyc(m), cyc(n), 1)) == want
    assert pretty(H.tor_module(cyc(m), cyc(n), 1)) == want


# --- resolutions, Ext, Tor ---------------------------------------------------------------------

def test_resolution_examples():
    seg = H.resolution(cyc(4), 1)
    assert seg.ranks == (1,)
    assert pretty(seg.omega) == "Z"
    assert inv(H.resolution(H.free_module(ZZ, 2), 1).omega).is_zero
    seg = H.resolution(present(M(ZZ, [[4, 0], [0, 6]])), 1)
    assert pretty(seg.omega) == "Z^2"
    assert H.fpmod(ZZ).is_mono(seg.embedding)
    with pytest.raises(UsageError):
        H.resolution(cyc(4), 0)


@settings(max_examples=30, deadline=None)
@given(rng=st.randoms(use_true_random=False), ring=st.sampled_from([ZZ, QQ, Zmod(4), Zmod(6)]))
def test_resolution_composites_vanish(rng, ring):
    m = rand_module(rng, ring)
    seg = H.resolution(m, 3)
    ds = seg.differentials
    for a, b in zip(ds[1:], ds):
        assert (a @ b).is_zero()
    assert H.fpmod(ring).is_mono(seg.embedding)


def test_ext_examples():
    assert pretty(H.ext_module(cyc(4), cyc(6), 1)) == "Z/2"
    assert inv(H.ext_module(H.free_module(ZZ, 2), cyc(6), 1)).is_zero
    for m in (2, 3, 4):
        assert pretty(H.ext_module(cyc(m), H.free_module(ZZ, 1), 1)) == f"Z/{m}"
    assert inv(H.ext_module(cyc(4), cyc(6), 0)) == inv(H.hom_module(cyc(4), cyc(6)))
    with pytest.raises(UsageError):
        H.ext_functor(cyc(4), 0)


def test_tor_examples():
    assert pretty(H.tor_module(cyc(4), cyc(6), 1)) == "Z/2"
    assert inv(H.tor_module(H.free_module(ZZ, 1), cyc(6), 1)).is_zero
    assert inv(H.tor_module(cyc(6), H.free_module(ZZ, 2), 1)).is_zero
    assert inv(H.tor_module(cyc(4), cyc(6), 0)) == inv(H.tensor_module(cyc(4), cyc(6)))
    with pytest.raises(UsageError):
        H.tor_module(cyc(4), cyc(6), -1)


def test_z4_is_not_hereditary():
    # over Z/4 the module Z/2 has a periodic resolution, so Ext^2 survives
    r = Zmod(4)
    assert pretty(H.ext_module(cyc(2, r), cyc(2, r), 2)) == "Z/2"
    assert pretty(H.tor_module(cyc(2, r), cyc(2, r), 2)) == "Z/2"


@settings(max_examples=30, deadline=None)
@given(rng=st.randoms(use_true_random=False), ring=st.sampled_from([ZZ, QQ]))
def test_ext_two_vanishes_over_hereditary_rings(rng, ring):
    a, b = rand_module(rng, ring), rand_module(rng, ring)
    assert inv(H.ext_module(a, b, 2)).is_zero
    assert inv(H.tor_module(a, b, 2)).is_zero


@settings(max_examples=30, deadline=None)
@given(rng=st.randoms(use_true_random=False), ring=st.sampled_from([ZZ, Zmod(4), Zmod(6)]),
       i=st.integers(1, 2))
def test_ext_via_functor_matches_direct(rng, ring, i):
    a, b = rand_module(rng, ring), rand_module(rng, ring)
    assert H.ext_module_via_functor(a, b, i) == inv(H.ext_module(a, b, i))


@settings(max_examples=25, deadline=None)
@given(rng=st.randoms(use_true_random=False), ring=st.sampled_from([ZZ, Zmod(4), Zmod(6)]),
       i=st.integers(0, 2))
def test_tor_functor_matches_direct(rng, ring, i):
    m, n = rand_module(rng, ring), rand_module(rng, ring)
    got = inv(H.evaluate_covariant(H.tor_functor(m, i), n))
    assert got == inv(H.tor_module(m, n, i))


@settings(max_examples=25, deadline=None)
@given(rng=st.randoms(use_true_random=False), ring=st.sampled_from([ZZ, QQ, Zmod(6)]))
def test_tor_is_symmetric(rng, ring):
    m, n = rand_module(rng, ring), rand_module(rng, ring)
    assert inv(H.tor_module(m, n, 1)) == inv(H.tor_module(n, m, 1))
    assert inv(H.tensor_module(m, n)) == inv(H.tensor_module(n, m))


@settings(max_examples=25, deadline=None)
@given(rng=st.randoms(use_true_random=False), ring=st.sampled_from([ZZ, Zmod(6)]))
def test_representable_evaluates_to_hom(rng, ring):
    a, x = rand_module(rng, ring), rand_module(rng, ring)
    assert inv(H.evaluate_covariant(H.hom_functor(a), x)) == inv(H.hom_module(a, x))
    assert inv(H.evaluate_covariant(H.tensor_functor(a), x)) == inv(H.tensor_module(a, x))


# --- functors -------------------------------------------------------------------------------------

def test_functor_variance_is_checked():
    with pytest.raises(UsageError):
        H.FpFunctor(H.hom_functor(cyc(2)).obj, H.CONTRAVARIANT)
    with pytest.raises(UsageError):
        H.FpFunctor(H.hom_functor(cyc(2)).obj, "sideways")
    with pytest.raises(UsageError):
        H.nat_hom(H.hom_functor(cyc(2)), H.contravariant_hom_functor(cyc(2)))
    with pytest.raises(UsageError):
        H.evaluate_covariant(H.contravariant_hom_functor(cyc(2)), cyc(2))


def test_nat_hom_examples():
    f, g = H.hom_functor(cyc(2)), H.hom_functor(cyc(4))
    assert pretty(H.nat_hom(f, g)) == "Z/2"
    assert inv(H.nat_hom(f, H.zero_functor(ZZ))).is_zero
    z = H.free_module(ZZ, 1)
    assert pretty(H.nat_hom(H.hom_functor(z), H.hom_functor(z))) == "Z"


def test_nat_hom_element_identity():
    z = H.free_module(ZZ, 1)
    f = H.hom_functor(z)
    eta = H.nat_hom_element(f, f, M(ZZ, [[1]]))
    assert f.cat.mor_eq(eta, f.cat.identity(f.obj))
    with pytest.raises(UsageError):
        H.nat_hom_element(H.hom_functor(cyc(2)), H.hom_functor(cyc(4)), M(ZZ, [[1, 1, 1]]))


@settings(max_examples=15, deadline=None)
@given(rng=st.randoms(use_true_random=False))
def test_yoneda(rng):
    a = rand_module(rng, ZZ)
    b = rand_module(rng, ZZ)
    got = inv(H.nat_hom(H.hom_functor(a), H.hom_functor(b)))
    assert got == inv(H.hom_module(b, a))


def test_left_exact_examples():
    assert H.decide_left_exact(H.contravariant_hom_functor(cyc(6)))
    assert H.decide_left_exact(H.zero_functor(ZZ, H.CONTRAVARIANT))
    c = H.fpmod(ZZ)
    z = H.free_module(ZZ, 1)
    two = c.freyd_morphism(z, z, rows_mor(M(ZZ, [[2]])))
    assert not H.decide_left_exact(H.contravariant_functor(two))
    with pytest.raises(UsageError):
        H.decide_left_exact(H.hom_functor(z))


def test_right_exact_examples():
    assert H.decide_right_exact(H.tensor_functor(cyc(2)))
    assert not H.decide_right_exact(H.hom_functor(cyc(2)))
    assert H.decide_right_exact(H.zero_functor(ZZ))
    assert H.decide_right_exact(H.hom_functor(H.free_module(ZZ, 2)))
    with pytest.raises(UsageError):
        H.decide_right_exact(H.contravariant_hom_functor(cyc(2)))


def test_injective_embedding_examples():
    z = H.zero_functor(ZZ)
    assert z.cat.is_mono(H.injective_embedding(z))
    f = H.hom_functor(cyc(2))
    assert f.cat.is_mono(H.injective_embedding(f))


@settings(max_examples=15, deadline=None)
@given(rng=st.randoms(use_true_random=False), ring=st.sampled_from([ZZ, QQ, Zmod(4)]))
def test_exactness_properties(rng, ring):
    m = rand_module(rng, ring)
    assert H.decide_left_exact(H.contravariant_hom_functor(m))
    assert H.decide_right_exact(H.tensor_functor(m))
    f = H.covariant_functor(rand_module_mor(rng, ring, max_gens=2, max_rels=2))
    iota = H.injective_embedding(f)
    assert f.cat.is_mono(iota)
    if ring == QQ:
        assert H.decide_right_exact(f)

import random

import pytest
from hypothesis import given, settings, strategies as st

from freydcat import QQ, ZZ, ConfigurationError, Matrix, PreconditionError, UsageError, Zmod
from freydcat.category import (Freyd, LinearSystem, Op, Rows, category_for, descriptor_from_tags,
                               descriptor_tags, solve_via_hom_structure)
from freydcat.freyd import present
from freydcat.oracle import brute_linear_solve
from freydcat.rows import rows_mor, rows_obj

from randgen import LEVELS, RINGS, level_desc, rand_hom, rand_matrix, rand_mor_from, rand_mor_into, rand_obj

M = Matrix.from_rows
R = lambda rows, ring=ZZ: rows_mor(M(ring, rows))


# --- descriptors and capabilities -------------------------------------------------

@pytest.mark.parametrize("tags", [["ROWS"], ["FREYD", "ROWS"], ["OP", "FREYD", "ROWS"],
                                  ["FREYD", "OP", "FREYD", "ROWS"]])
def test_descriptor_tags_round_trip(tags):
    d = descriptor_from_tags(tags, "Z/6")
    assert descriptor_tags(d) == tags
    assert d.base_ring == Zmod(6)


@pytest.mark.parametrize("tags", [[], ["FREYD"], ["ROWS", "ROWS"], ["NOPE", "ROWS"]])
def test_descriptor_tags_rejects(tags):
    with pytest.raises(UsageError):
        descriptor_from_tags(tags, "Z")


@pytest.mark.parametrize("desc,abelian,weak_kernels", [
    (Rows(ZZ), False, True),
    (Freyd(Rows(ZZ)), True, True),
    (Op(Freyd(Rows(ZZ))), True, True),
    (Freyd(Op(Freyd(Rows(ZZ)))), True, True),
])
def test_capabilities_are_structural(desc, abelian, weak_kernels):
    caps = category_for(desc).capabilities()
    assert caps["abelian"] is abelian
    assert caps["weak_kernels"] is weak_kernels
    assert caps["lifts"] and caps["hom_structure"]


def test_op_of_rows_has_no_kernels():
    c = category_for(Op(Rows(ZZ)))
    assert not c.capabilities()["abelian"]
    with pytest.raises(ConfigurationError):
        c.kernel(c.op(R([[2]])))


# --- cat_ops ------------------------------------------------------------------------

def test_cat_ops_rows():
    c = category_for(Rows(ZZ))
    assert c.cat_ops("compose", R([[2]]), R([[3]])).payload == M(ZZ, [[6]])
    assert c.cat_ops("mor_eq", R([[1, 2]]) + R([[1, 1]]), R([[2, 3]]))
    with pytest.raises(UsageError):
        c.cat_ops("compose", R([[1, 2]]), R([[1, 2]]))
    with pytest.raises(UsageError):
        c.cat_ops("frobnicate")


def test_mor_eq_in_freyd_uses_relations():
    c = category_for(Freyd(Rows(ZZ)))
    z, z2 = present(Matrix.zero(ZZ, 0, 1)), present(M(ZZ, [[2]]))
    three = c.freyd_morphism(z, z2, R([[3]]))
    one = c.freyd_morphism(z, z2, R([[1]]))
    zero = c.freyd_morphism(z, z2, R([[0]]))
    assert c.mor_eq(three, one)
    assert c.equality_witness(three, one).payload == M(ZZ, [[1]])
    assert not c.mor_eq(three, zero)


# --- direct sums ------------------------------------------------------------------------

def test_direct_sum_examples():
    rc = category_for(Rows(ZZ))
    s, _, _ = rc.direct_sum([rows_obj(ZZ, 2), rows_obj(ZZ, 3)])
    assert s.payload == 5
    fc = category_for(Freyd(Rows(ZZ)))
    a, b = present(M(ZZ, [[2]])), present(M(ZZ, [[3, 0], [0, 5]]))
    s, _, _ = fc.direct_sum([a, b])
    assert s.payload.relation.payload == M(ZZ, [[2, 0, 0], [0, 3, 0], [0, 0, 5]])
    e, inj, proj = fc.direct_sum([])
    assert inj == [] and proj == [] and fc.is_zero(fc.identity(e))


@pytest.mark.parametrize("level", LEVELS)
def test_direct_sum_identities(level):
    rng = random.Random(11)
    for ring in RINGS:
        c = category_for(level_desc(level, ring))
        objs = [rand_obj(rng, level, ring, small=True) for _ in range(3)]
        s, inj, proj = c.direct_sum(objs)
        for i, a in enumerate(objs):
            for j, b in enumerate(objs):
                comp = c.compose(inj[i], proj[j])
                assert c.mor_eq(comp, c.identity(a) if i == j else c.zero_mor(a, b))
        total = c.zero_mor(s, s)
        for p, i in zip(proj, inj):
            total = c.add(total, c.compose(p, i))
        assert c.mor_eq(total, c.identity(s))


# --- Ab-category axioms at every level -------------------------------------------------

def _chain(rng, level, ring):
    """Composable ``f: A -> B``, ``g: B -> C``, ``h: C -> D`` plus a parallel ``f2``."""
    c = category_for(level_desc(level, ring))
    if level == "ROWS":
        a, b, cc, d = (rng.randint(0, 3) for _ in range(4))
        m = lambda r, s: rows_mor(rand_matrix(rng, ring, r, s))
        return c, m(a, b), m(a, b), m(b, cc), m(cc, d)
    if level == "FREYD":
        g = rand_mor_into(rng, rand_obj(rng, "FREYD", ring))
        f = rand_mor_into(rng, g.source)
        f2 = c.add(f, c.neg(c.add(f, f)))
        h = rand_mor_from(rng, g.target)
        return c, f, f2, g, h
    objs = [rand_obj(rng, level, ring, small=True) for _ in range(4)]
    a, b, cc, d = objs
    return c, rand_hom(rng, c, a, b), rand_hom(rng, c, a, b), rand_hom(rng, c, b, cc), rand_hom(rng, c, cc, d)


@pytest.mark.parametrize("level", LEVELS)
@settings(max_examples=25, deadline=None)
@given(rng=st.randoms(use_true_random=False), ring=st.sampled_from(RINGS))
def test_category_axioms(level, rng, ring):
    c, f, f2, g, h = _chain(rng, level, ring)
    eq = c.mor_eq
    assert eq(c.compose(c.compose(f, g), h), c.compose(f, c.compose(g, h)))
    assert eq(c.compose(c.identity(f.source), f), f)
    assert eq(c.compose(f, c.identity(f.target)), f)
    assert eq(c.add(f, f2), c.add(f2, f))
    assert c.is_zero(c.add(f, c.neg(f)))
    assert eq(c.add(f, c.zero_mor(f.source, f.target)), f)
    # bilinearity of composition
    assert eq(c.compose(c.add(f, f2), g), c.add(c.compose(f, g), c.compose(f2, g)))
    assert eq(c.compose(c.neg(f), g), c.neg(c.compose(f, g)))


# --- weak kernels, pullbacks, lifts in ROWS ------------------------------------------------

def test_weak_kernel_examples():
    c = category_for(Rows(ZZ))
    k, kappa = c.weak_kernel(R([[2], [3]]))
    assert k.payload == 1 and kappa.payload.rows in (((3, -2),), ((-3, 2),))
    u = c.weak_kernel_lift(R([[2], [3]]), R([[6, -4]]))
    assert c.mor_eq(c.compose(u, kappa), R([[6, -4]]))
    k0, _ = c.weak_kernel(R([[1, 0], [0, 1]]))
    assert k0.payload == 0
    with pytest.raises(PreconditionError):
        c.weak_kernel_lift(R([[2], [3]]), R([[1, 0]]))


def test_weak_pullback_examples():
    c = category_for(Rows(ZZ))
    alpha, gamma = R([[2]]), R([[3]])
    p, pr1, pr2 = c.weak_pullback(alpha, gamma)
    assert p.payload == 1
    assert {pr1.payload.rows, pr2.payload.rows} in ({((3,),), ((2,),)}, {((-3,),), ((-2,),)})
    assert c.mor_eq(c.compose(pr1, alpha), c.compose(pr2, gamma))
    u = c.weak_pullback_lift(alpha, gamma, R([[6]]), R([[4]]))
    assert c.mor_eq(c.compose(u, pr1), R([[6]])) and c.mor_eq(c.compose(u, pr2), R([[4]]))
    _, q1, q2 = c.weak_pullback(R([[1, 2], [3, 4]]), c.identity(rows_obj(ZZ, 2)))
    assert c.mor_eq(c.compose(q1, R([[1, 2], [3, 4]])), q2)


@settings(max_examples=60, deadline=None)
@given(rng=st.randoms(use_true_random=False), ring=st.sampled_from(RINGS))
def test_weak_kernel_generates(rng, ring):
    c = category_for(Rows(ring))
    f = rows_mor(rand_matrix(rng, ring, rng.randint(0, 4), rng.randint(0, 4)))
    k, kappa = c.weak_kernel(f)
    assert c.is_zero(c.compose(kappa, f))
    tau = c.compose(rows_mor(rand_matrix(rng, ring, rng.randint(0, 3), k.payload)), kappa)
    u = c.weak_kernel_lift(f, tau)
    assert c.mor_eq(c.compose(u, kappa), tau)


@pytest.mark.parametrize("ring,alpha,gamma,want", [
    (ZZ, [[4]], [[2]], [[2]]),
    (ZZ, [[3]], [[2]], None),
    (QQ, [[3]], [[2]], "some"),
])
def test_rows_lift(ring, alpha, gamma, want):
    c = category_for(Rows(ring))
    lam = c.lift(R(alpha, ring), R(gamma, ring))
    if want is None:
        assert lam is None
    else:
        assert c.mor_eq(c.compose(lam, R(gamma, ring)), R(alpha, ring))
        if want != "some":
            assert lam.payload == M(ring, want)


def test_rows_colift():
    c = category_for(Rows(ZZ))
    lam = c.colift(R([[4]]), R([[2]]))
    assert lam.payload == M(ZZ, [[2]])
    assert c.colift(R([[3]]), R([[2]])) is None


@settings(max_examples=120, deadline=None)
@given(rng=st.randoms(use_true_random=False), n=st.integers(2, 6))
def test_rows_lift_decisions_match_brute_force(rng, n):
    ring = Zmod(n)
    c = category_for(Rows(ring))
    a, b, k = rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 2)
    alpha, gamma = rows_mor(rand_matrix(rng, ring, a, b, n)), rows_mor(rand_matrix(rng, ring, k, b, n))
    sys_ = LinearSystem([[c.identity(alpha.source)]], [[gamma]], [alpha], unknowns=[(alpha.source, gamma.source)])
    assert (c.lift(alpha, gamma) is None) == (brute_linear_solve(sys_) is None)
    beta = rows_mor(rand_matrix(rng, ring, b, a, n))
    delta = rows_mor(rand_matrix(rng, ring, b, k, n))
    sys2 = LinearSystem([[delta]], [[c.identity(beta.target)]], [beta], unknowns=[(delta.target, beta.target)])
    assert (c.colift(beta, delta) is None) == (brute_linear_solve(sys2) is None)


# --- rows hom structure --------------------------------------------------------------------

def test_rows_hom_structure_examples():
    c = category_for(Rows(ZZ))
    hs = c.hom_structure()
    assert hs.h_obj(rows_obj(ZZ, 2), rows_obj(ZZ, 3)).payload.range.payload == 6
    nu = hs.nu(c.identity(rows_obj(ZZ, 2)))
    assert nu.payload.datum.payload == M(ZZ, [[1, 0, 0, 1]])
    alpha, x, beta = R([[1, 2], [0, 1]]), R([[3, -1], [2, 5]]), R([[1, 1], [4, 0]])
    bc = category_for(hs.B)
    assert bc.mor_eq(hs.nu(c.compose_all(alpha, x, beta)), bc.compose(hs.nu(x), hs.h_mor(alpha, beta)))


@settings(max_examples=60, deadline=None)
@given(rng=st.randoms(use_true_random=False), ring=st.sampled_from(RINGS))
def test_rows_hom_interchange(rng, ring):
    c = category_for(Rows(ring))
    hs = c.hom_structure()
    bc = category_for(hs.B)
    d = [rng.randint(0, 3) for _ in range(6)]
    m = lambda r, s: rows_mor(rand_matrix(rng, ring, r, s))
    # a1: A1 -> A0, a2: A2 -> A1 ; b1: B0 -> B1, b2: B1 -> B2
    a1, a2, b1, b2 = m(d[1], d[0]), m(d[2], d[1]), m(d[3], d[4]), m(d[4], d[5])
    lhs = hs.h_mor(c.compose(a2, a1), c.compose(b1, b2))
    rhs = bc.compose(hs.h_mor(a1, b1), hs.h_mor(a2, b2))
    assert bc.mor_eq(lhs, rhs)


# --- linear systems ------------------------------------------------------------------------------

def test_linear_system_examples():
    c = category_for(Rows(ZZ))
    one = rows_obj(ZZ, 1)
    sys_ = LinearSystem([[c.identity(one)], [R([[3]])]], [[R([[2]])], [c.identity(one)]], [R([[4]]), R([[6]])])
    sol = c.solve_linear_system(sys_)
    assert sol is not None and sol[0].payload == M(ZZ, [[2]])
    z6 = category_for(Rows(Zmod(6)))
    s6 = LinearSystem([[R([[2]], Zmod(6))]], [[z6.identity(rows_obj(Zmod(6), 1))]], [R([[3]], Zmod(6))])
    assert z6.solve_linear_system(s6) is None
    zero = LinearSystem([[R([[2]])]], [[R([[5]])]], [R([[0]])])
    assert c.solve_linear_system(zero)[0].payload.is_zero()


def test_linear_system_validation():
    c = category_for(Rows(ZZ))
    with pytest.raises(UsageError):
        LinearSystem([[R([[1, 2]])]], [[R([[1]])]], [R([[1]])], unknowns=[(rows_obj(ZZ, 3), rows_obj(ZZ, 1))])
    with pytest.raises(UsageError):
        c.solve_linear_system(LinearSystem([[R([[1]], QQ)]], [[R([[1]], QQ)]], [R([[1]], QQ)]))


def test_reduce_linear_system_counts():
    rng = random.Random(5)
    c = category_for(Freyd(Rows(ZZ)))
    a, b, cc, d = (rand_obj(rng, "FREYD", ZZ) for _ in range(4))
    sys_ = LinearSystem([[rand_hom(rng, c, a, b)], [rand_hom(rng, c, a, b)]],
                        [[rand_hom(rng, c, cc, d)], [rand_hom(rng, c, cc, d)]],
                        [c.zero_mor(a, d), c.zero_mor(a, d)])
    reduced, back = c.reduce_linear_system(sys_)
    assert reduced.shape == (2 + 1, 2 * 1 + 2)
    sol = reduced.cat.solve_linear_system(reduced)
    assert sys_.verify(back(sol))


def test_op_reduction_swaps_sides():
    oc = category_for(Op(Rows(ZZ)))
    a, b = R([[2, 0], [0, 3]]), R([[4], [3]])
    # X·op(a) = op(b) in the opposite category is a·X' = b inside
    sys_ = LinearSystem([[oc.identity(oc.op(b).source)]], [[oc.op(a)]], [oc.op(b)])
    reduced, back = oc.reduce_linear_system(sys_)
    assert reduced.left[0][0].payload == a.payload
    sol = reduced.cat.solve_linear_system(reduced)
    assert sol[0].payload == M(ZZ, [[2], [1]])
    assert sys_.verify(back(sol))


@pytest.mark.parametrize("level", ["FREYD", "OP", "FREYD_OP"])
@settings(max_examples=15, deadline=None)
@given(rng=st.randoms(use_true_random=False), ring=st.sampled_from(RINGS))
def test_hom_structure_route_agrees_with_reduction(level, rng, ring):
    c = category_for(level_desc(level, ring))
    a, b, cc, d = (rand_obj(rng, level, ring, small=True) for _ in range(4))
    alpha, beta, x = rand_hom(rng, c, a, b), rand_hom(rng, c, cc, d), rand_hom(rng, c, b, cc)
    planted = LinearSystem([[alpha]], [[beta]], [c.compose_all(alpha, x, beta)])
    for sol in (c.solve_linear_system(planted), solve_via_hom_structure(planted, c.hom_structure())):
        assert sol is not None and planted.verify(sol)
    other = LinearSystem([[alpha]], [[beta]], [rand_hom(rng, c, a, d)])
    s1 = c.solve_linear_system(other)
    s2 = solve_via_hom_structure(other, c.hom_structure())
    assert (s1 is None) == (s2 is None)
    for s in (s1, s2):
        if s is not None:
            assert other.verify(s)

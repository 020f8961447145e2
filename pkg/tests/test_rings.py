import random

import pytest

from conftest import f2, zx

from unilc2.rings import (
    C2Elt,
    C2Poly,
    Mat,
    NEG_INF,
    NonDivisibleError,
    NotInImageError,
    ONE_MINUS_T,
    PolyF2,
    PolyInt,
    RingTagError,
    apply_i,
    apply_j,
    apply_k,
    f2_divmod,
    f2_xgcd,
    format_matrix,
    format_poly,
    parse_matrix,
    parse_poly,
    pullback_inverse,
    pullback_pair,
    ring_add,
    ring_mul,
    solve_right,
)


def rand_polyint(rng, deg=4, bound=4):
    return PolyInt([rng.randint(-bound, bound) for _ in range(deg + 1)])


def rand_c2(rng, deg=3, bound=3):
    return C2Poly.from_parts(rand_polyint(rng, deg, bound), rand_polyint(rng, deg, bound))


# -- canonical representation


def test_trailing_zeros_stripped():
    assert PolyInt((1, 2, 0, 0)).coeffs == (1, 2)
    assert PolyInt((0, 0, 0)).coeffs == ()
    assert not PolyInt(())


def test_zero_degree_marker():
    assert PolyInt(()).degree() == NEG_INF
    assert PolyF2(0).degree() == NEG_INF
    assert zx("x^3").degree() == 3


def test_equality_is_structural():
    assert zx("1+2*x") == PolyInt((1, 2))
    assert zx("x") != zx("x^2")


# -- C2 arithmetic


def test_c2_multiplication_table():
    one, t = C2Elt(1, 0), C2Elt(0, 1)
    assert t * t == one
    assert t * one == t
    assert C2Elt(2, 3) * C2Elt(5, -1) == C2Elt(7, 13)


def test_one_minus_t_squared():
    assert ONE_MINUS_T * ONE_MINUS_T == parse_poly("2-2*T", C2Poly)


def test_duality_determinant_square_is_one_mod_two():
    # ((1-T)pg - 1)^2 for p = x, g = 1
    p, g = zx("x"), zx("1")
    d = ONE_MINUS_T * C2Poly.from_polyint(p * g) - C2Poly.one()
    sq = d * d
    assert sq == parse_poly("1-2*x+2*T*x+2*x^2-2*T*x^2", C2Poly)
    assert sq.congruent_mod2(C2Poly.one())


def test_mixed_ring_operands_rejected():
    with pytest.raises(RingTagError):
        ring_add(zx("x"), f2("x"))
    with pytest.raises(RingTagError):
        ring_mul(f2("1"), ONE_MINUS_T)


def test_ring_axioms_randomized():
    rng = random.Random(7)
    for _ in range(80):
        for make in (lambda: rand_polyint(rng), lambda: rand_c2(rng),
                      lambda: PolyF2(rng.getrandbits(8))):
            a, b, c = make(), make(), make()
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert (a + b) * c == a * c + b * c
            assert (a * b).conj() == b.conj() * a.conj()


# -- square homomorphisms


def test_apply_i_on_scalars():
    assert apply_i(-1, ONE_MINUS_T) == zx("2")
    assert apply_i(1, ONE_MINUS_T) == zx("0")


def test_apply_i_is_a_ring_map():
    rng = random.Random(11)
    for _ in range(60):
        a, b = rand_c2(rng), rand_c2(rng)
        for s in (1, -1):
            assert apply_i(s, a * b) == apply_i(s, a) * apply_i(s, b)
            assert apply_i(s, a + b) == apply_i(s, a) + apply_i(s, b)


def test_apply_i_on_generator_gamma():
    # the (1-T)g corner becomes 2g under T -> -1
    g = zx("x^2")
    entry = ONE_MINUS_T * C2Poly.from_polyint(g)
    assert apply_i(-1, entry) == zx("2*x^2")
    assert apply_i(1, entry) == zx("0")


def test_apply_j():
    assert apply_j(zx("2*x^2")) == f2("0")
    assert apply_j(zx("x+2*x^2")) == f2("x")


def test_square_commutes():
    rng = random.Random(13)
    for _ in range(100):
        a = rand_c2(rng)
        assert apply_j(apply_i(-1, a)) == apply_j(apply_i(1, a))


def test_k_of_one_minus_t_times_q():
    q = zx("x")
    assert apply_k(ONE_MINUS_T * C2Poly.from_polyint(q)) == f2("0")


# -- pullback


def test_pullback_pair_values():
    a = parse_poly("3+2*T", C2Poly)
    assert pullback_pair(a) == (zx("1"), zx("5"))
    assert pullback_inverse(zx("1"), zx("5")) == a


def test_pullback_parity_obstruction():
    with pytest.raises(NotInImageError):
        pullback_inverse(zx("0"), zx("1"))


def test_pullback_is_ring_iso():
    rng = random.Random(17)
    for _ in range(80):
        a, b = rand_c2(rng), rand_c2(rng)
        ua, va = pullback_pair(a)
        ub, vb = pullback_pair(b)
        assert pullback_pair(a + b) == (ua + ub, va + vb)
        assert pullback_pair(a * b) == (ua * ub, va * vb)
        assert pullback_inverse(*pullback_pair(a)) == a


# -- units


def test_units():
    assert not zx("2").is_unit()
    assert zx("-1").is_unit()
    assert f2("1").is_unit() and not f2("x").is_unit()
    assert parse_poly("T", C2Poly).is_unit()
    assert parse_poly("-T", C2Poly).is_unit()
    assert not parse_poly("1+T", C2Poly).is_unit()
    assert not C2Poly.zero().is_unit()


def test_unit_mod2():
    p, g = zx("x"), zx("x")
    d = ONE_MINUS_T * C2Poly.from_polyint(p * g) - C2Poly.one()
    assert d.is_unit_mod2()
    assert not zx("x").is_unit_mod2()
    assert zx("1+2*x").is_unit_mod2()


def test_inverse_mod2_neumann():
    # u = (1 - b + 2r) + b*T has mod-2 image 1 + (b mod 2)*(1+T), a unit
    rng = random.Random(19)
    for _ in range(100):
        b = rand_polyint(rng, 3, 2)
        r = rand_polyint(rng, 3, 2)
        u = C2Poly.from_parts(PolyInt((1,)) - b + zx("2") * r, b)
        assert u.is_unit_mod2()
        v = u.inverse_mod2()
        assert (u * v).congruent_mod2(C2Poly.one())
    assert not parse_poly("1+T", C2Poly).is_unit_mod2()


# -- matrices


def test_conj_transpose_laws():
    rng = random.Random(23)
    m = Mat([[rand_c2(rng, 2) for _ in range(3)] for _ in range(2)], C2Poly)
    n = Mat([[rand_c2(rng, 2) for _ in range(2)] for _ in range(3)], C2Poly)
    assert m.conj_t().conj_t() == m
    assert (m * n).conj_t() == n.conj_t() * m.conj_t()


def test_det_fixtures():
    p, g = zx("x"), zx("x^3")
    gamma = Mat(
        [
            [C2Poly.from_polyint(p), C2Poly.one()],
            [C2Poly.one(), ONE_MINUS_T * C2Poly.from_polyint(g)],
        ],
        C2Poly,
    )
    want = ONE_MINUS_T * C2Poly.from_polyint(p * g) - C2Poly.one()
    assert gamma.det() == want

    assert Mat.identity(4, PolyInt).det() == zx("1")
    assert parse_matrix("[0,1;1,0]", PolyInt).det() == zx("-1")


def test_det_against_permutation_expansion():
    import itertools

    rng = random.Random(29)
    for n in (2, 3, 4):
        m = Mat([[rand_polyint(rng, 2, 2) for _ in range(n)] for _ in range(n)], PolyInt)
        acc = PolyInt(())
        for perm in itertools.permutations(range(n)):
            sign = 1
            for i in range(n):
                for j in range(i + 1, n):
                    if perm[i] > perm[j]:
                        sign = -sign
            term = PolyInt((sign,))
            for i in range(n):
                term = term * m[i, perm[i]]
            acc = acc + term
        assert m.det() == acc


def test_adjugate_identity():
    rng = random.Random(31)
    for n in (2, 3, 4):
        m = Mat([[rand_polyint(rng, 1, 2) for _ in range(n)] for _ in range(n)], PolyInt)
        d = m.det()
        assert m * m.adjugate() == Mat.scalar(n, d, PolyInt)


def test_solve_right():
    two_id = Mat.scalar(2, zx("2"), PolyInt)
    assert solve_right(two_id, two_id) == Mat.identity(2, PolyInt)
    with pytest.raises(NonDivisibleError):
        solve_right(parse_matrix("[x,0;0,1]", PolyInt), Mat.identity(2, PolyInt))


def test_solve_right_on_symmetry_witness():
    # the 4x4 witness of the symmetry relation divides exactly
    pi = parse_matrix("[1,0,2,0;0,1,0,2;0,1,0,0;1,0,0,0]", PolyInt)
    sol = solve_right(pi, Mat.scalar(4, zx("2"), PolyInt))
    assert pi * sol == Mat.scalar(4, zx("2"), PolyInt)
    assert sol == parse_matrix("[0,0,0,2;0,0,2,0;1,0,0,-1;0,1,-1,0]", PolyInt)


def test_exact_division():
    a = zx("2+4*x^2")
    assert a.exact_div(zx("2")) == zx("1+2*x^2")
    with pytest.raises(NonDivisibleError):
        zx("1").exact_div(zx("x"))
    with pytest.raises(NonDivisibleError):
        zx("3").exact_div(zx("2"))


# -- F2[x] Euclidean structure


def test_f2_divmod_and_xgcd():
    rng = random.Random(37)
    for _ in range(100):
        a, b = PolyF2(rng.getrandbits(9)), PolyF2(rng.getrandbits(6) | 1)
        q, r = f2_divmod(a, b)
        assert q * b + r == a
        g, s, t = f2_xgcd(a, b)
        assert s * a + t * b == g


# -- grammar


@pytest.mark.parametrize(
    "text",
    ["0", "1", "1-T", "2*x^3", "x+x^3", "-x", "2-2*T", "x-T*x", "1+2*T*x^4"],
)
def test_poly_text_roundtrip(text):
    p = parse_poly(text, C2Poly)
    assert parse_poly(format_poly(p), C2Poly) == p


def test_poly_format_canonical():
    assert format_poly(parse_poly("x^3*2", PolyInt)) == "2*x^3"
    assert format_poly(ONE_MINUS_T) == "1-T"
    assert format_poly(PolyInt(())) == "0"
    assert format_poly(f2("x^2 + x")) == "x+x^2"


def test_matrix_text_roundtrip():
    m = parse_matrix("[1-T,2*x;0,x^2]", C2Poly)
    assert parse_matrix(format_matrix(m), C2Poly) == m


def test_t_rejected_outside_group_ring():
    with pytest.raises(RingTagError):
        parse_poly("1-T", PolyInt)


def test_subs_power():
    assert zx("x+x^3").subs_power(2) == zx("x^2+x^6")
    assert f2("1+x^2").subs_power(3) == f2("1+x^6")
    v = parse_poly("x-T*x", C2Poly).subs_power(2)
    assert v == parse_poly("x^2-T*x^2", C2Poly)

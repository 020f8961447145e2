import random

import pytest

from conftest import int_polys, zx

from unilc2.complexes import (
    NullCobordismData,
    StageError,
    alpha_pullback_check,
    build_null_cobordism,
    build_psi_hat,
    build_union,
    check_desymmetrization,
    complex_to_formation,
    formation_to_complex,
    instant_obstruction,
    relation_fixture,
    run_machine,
    run_relation,
)
from unilc2.formations import direct_sum, is_graph, make_M, negate
from unilc2.forms import ArfClass, arf, arf_normalize
from unilc2.rings import Mat, PolyInt, parse_matrix


# -- dictionary


def test_formation_to_complex_shape():
    c = formation_to_complex(make_M(zx("x"), zx("1")))
    assert c.rank == 2
    assert c.d == Mat.scalar(2, c.ring.from_int(2), c.ring)
    assert c.psi0.is_zero()
    assert c.cycle_holds()


def test_roundtrip_exact():
    for p, g in [(zx("x"), zx("1")), (zx("x+2*x^2"), zx("x"))]:
        m = make_M(p, g)
        assert complex_to_formation(formation_to_complex(m)) == m


def test_roundtrip_on_sum_with_negation():
    m = direct_sum(make_M(zx("x"), zx("1")), negate(make_M(zx("x"), zx("1"))))
    c = formation_to_complex(m)
    assert c.cycle_holds()
    back = complex_to_formation(c)
    # the mu signs were normalised away, so gamma/theta flipped on the block
    assert back.mu == Mat.scalar(4, c.ring.from_int(2), c.ring)
    assert back.hessian_holds()


def test_graph_of_roundtrip_on_trivial_parameters():
    m = make_M(zx("0"), zx("0"))
    back = complex_to_formation(formation_to_complex(m))
    assert is_graph(back)


def test_cycle_condition_sweep():
    for p in int_polys(2):
        for g in int_polys(1):
            if (p * g).constant:
                continue
            assert formation_to_complex(make_M(p, g)).cycle_holds()


def test_dictionary_rejects_other_mu_shapes():
    from unilc2.formations import make_Q
    from unilc2.rings import PrecondError

    with pytest.raises(PrecondError):
        formation_to_complex(make_Q(zx("x")))


# -- de-symmetrization fixtures


def fixture(k, p, g, p2=None):
    return relation_fixture(k, p, g, p2)


def test_desymmetrization_additivity():
    f, ncd, _ = fixture(1, zx("x"), zx("1"), zx("x^2"))
    c = formation_to_complex(f)
    assert check_desymmetrization(c, ncd)


def test_desymmetrization_symmetry():
    f, ncd, _ = fixture(2, zx("x"), zx("1"))
    c = formation_to_complex(f)
    assert check_desymmetrization(c, ncd)


def test_desymmetrization_detects_perturbation():
    f, ncd, _ = fixture(2, zx("x"), zx("1"))
    c = formation_to_complex(f)
    rows = [list(r) for r in ncd.chi.entries]
    rows[0][0] = rows[0][0] + PolyInt((1,))
    bad = NullCobordismData(ncd.pi, Mat(rows, PolyInt))
    assert not check_desymmetrization(c, bad)


def test_invalid_pi_is_flagged():
    f, ncd, _ = fixture(2, zx("x"), zx("1"))
    c = formation_to_complex(f)
    bad_pi = parse_matrix("[x,0,0,0;0,1,0,2;0,1,0,0;1,0,0,0]", PolyInt)
    with pytest.raises(StageError) as err:
        check_desymmetrization(c, NullCobordismData(bad_pi, ncd.chi))
    assert err.value.stage == "desymmetrization"


# -- psi-hat and the null-cobordism


def test_psi_hat_skew_difference():
    for k, args in [
        (1, (zx("x"), zx("1"), zx("x"))),
        (3, (zx("x"), zx("1"), None)),
        (4, (zx("x"), zx("x"), None)),
    ]:
        p, g, p2 = args
        f, ncd, _ = fixture(k, p, g, p2)
        c = formation_to_complex(f)
        hat = build_psi_hat(c, ncd)
        diff = hat.psi1 - c.i_minus().psi1
        assert diff.conj_t() == -diff
        assert all(not diff[i, i] for i in range(diff.rows))


def test_psi_hat_degenerate_zero_witness():
    # chi = 0 with psi0t = 0 forces psi1_hat = 0
    from unilc2.complexes import QuadComplex1

    n = 2
    d = Mat.scalar(n, PolyInt((2,)), PolyInt)
    zero = Mat.zeros(n, n, PolyInt)
    c = QuadComplex1(d, zero, zero, zero)
    ncd = NullCobordismData(Mat.identity(n, PolyInt), zero)
    hat = build_psi_hat(c, ncd)
    assert hat.psi1.is_zero()


def test_null_cobordism_chain_map():
    for k, p, g, p2 in [(1, zx("x"), zx("1"), zx("x")), (4, zx("x"), zx("x"), None)]:
        f, ncd, _ = fixture(k, p, g, p2)
        c = formation_to_complex(f)
        bundle = build_null_cobordism(c, ncd)
        assert bundle.f0 == Mat.identity(c.rank, PolyInt)
        assert bundle.f0 * c.i_minus().d == bundle.d_d * bundle.f1
        assert bundle.dpsi2.is_zero()


# -- union and obstruction


def test_union_differentials():
    f, ncd, _ = fixture(2, zx("x"), zx("1"))
    c = formation_to_complex(f)
    hat = build_psi_hat(c, ncd)
    bundle = build_null_cobordism(c, ncd)
    u = build_union(c, hat, bundle)
    assert (u.d_f1 * u.d_f2).is_zero()
    assert u.psi2_0.is_zero()
    assert u.psi0_0.is_zero()
    n = u.rank
    # the top block of d_F^2 is the chain map component, mod 2
    top = Mat([[u.d_f2[i, j] for j in range(n)] for i in range(n)], u.d_f2.ring)
    assert top == bundle.f1.mod2()


def test_obstruction_reduces_to_chi_transpose():
    f, ncd, _ = fixture(2, zx("x"), zx("1"))
    c = formation_to_complex(f)
    hat = build_psi_hat(c, ncd)
    bundle = build_null_cobordism(c, ncd)
    obs = instant_obstruction(build_union(c, hat, bundle))
    assert obs.reduced.psi == ncd.chi.conj_t().mod2()
    assert obs.big_arf == obs.reduced_arf
    assert obs.big.rank == 3 * obs.reduced.rank
    assert obs.reduced.is_nonsingular()


# -- the full machine


def test_machine_additivity_values():
    for p1, p2, g in [
        (zx("x"), zx("x"), zx("1")),
        (zx("x"), zx("x^2"), zx("1")),
        (zx("x"), zx("x"), zx("x")),
        (zx("2"), zx("1"), zx("x")),
    ]:
        res, expected = run_relation(1, p1, g, p2=p2)
        assert expected == arf_normalize((p1 * p2 * g * g).mod2())
        assert res.arf == expected


def test_machine_zero_relations():
    assert run_relation(2, zx("x"), zx("1"))[0].arf == ArfClass.zero()
    assert run_relation(3, zx("x+x^2"), zx("x"))[0].arf == ArfClass.zero()
    assert run_relation(4, zx("x"), zx("x"))[0].arf == ArfClass.zero()


def test_machine_stage_list():
    res, _ = run_relation(2, zx("x"), zx("1"))
    assert res.stages == (
        "complex",
        "desymmetrization",
        "psi-hat",
        "null-cobordism",
        "union",
        "obstruction",
        "arf",
    )


def test_machine_chi_slack_invariance():
    rng = random.Random(67)
    f, ncd, expected = fixture(1, zx("x"), zx("1"), zx("x"))
    n = ncd.p_rank
    for _ in range(5):
        rows = [[PolyInt.zero()] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                e = PolyInt([rng.randint(-2, 2), rng.randint(-2, 2)])
                rows[i][j] = e
                rows[j][i] = -e
        res = run_machine(f, NullCobordismData(ncd.pi, ncd.chi + Mat(rows, PolyInt)))
        assert res.arf == expected


def test_machine_rejects_broken_witness():
    f, ncd, _ = fixture(3, zx("x"), zx("1"))
    rows = [list(r) for r in ncd.chi.entries]
    rows[1][2] = rows[1][2] + PolyInt((1,))
    with pytest.raises(StageError) as err:
        run_machine(f, NullCobordismData(ncd.pi, Mat(rows, PolyInt)))
    assert err.value.stage == "desymmetrization"


# -- base change fixture


def test_alpha_pullback():
    for p1, p2, g in [
        (zx("x"), zx("x"), zx("1")),
        (zx("x^2"), zx("1+x"), zx("x")),
        (zx("0"), zx("x"), zx("1+x^2")),
    ]:
        assert alpha_pullback_check(p1, p2, g)


def test_alpha_pullback_matches_machine_output():
    p1, p2, g = zx("x"), zx("x"), zx("1")
    f, ncd, _ = fixture(1, p1, g, p2)
    c = formation_to_complex(f)
    hat = build_psi_hat(c, ncd)
    bundle = build_null_cobordism(c, ncd)
    obs = instant_obstruction(build_union(c, hat, bundle))
    # the reduced obstruction has the displayed pairing and quadratic vector
    lam = obs.reduced.symmetrization()
    assert lam == (ncd.chi + ncd.chi.conj_t()).mod2()
    assert arf(obs.reduced) == arf_normalize((p1 * p2 * g * g).mod2())

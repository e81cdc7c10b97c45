import random

import pytest
from sympy import QQ
from sympy.polys.fields import field as frac_field

from ncsurf.opcases import CASES, Report, identity_check, run_case
from ncsurf.ore import OreAlgebra
from ncsurf.series import TruncSeries


def test_all_catalog_cases_pass():
    for case in CASES:
        rep = run_case(case, trials=2, seed=7)
        assert rep.ok, (case, rep.details)
        assert rep.case == case
        assert rep.p_fail < 2 ** -40


def test_ore_mul_examples():
    # differential: D.z = z.D + 1
    F, z = frac_field("z", QQ)
    alg = OreAlgebra(F, "diff")
    D, X = alg.S(1), alg.mult(z)
    assert D * X == alg.op({1: z, 0: 1})
    # q-shift: T.z = qs.z.T
    F2, z2, qs = frac_field("z, qs", QQ)
    alg2 = OreAlgebra(F2, "qshift", step=qs)
    assert alg2.S(1) * alg2.mult(z2) == alg2.op({1: qs * z2})
    # additive shift: T.z = (z+1).T
    F3, z3 = frac_field("z", QQ)
    alg3 = OreAlgebra(F3, "ashift", step=F3.one)
    assert alg3.S(1) * alg3.mult(z3) == alg3.op({1: z3 + 1})


def _rand_op(alg, z, rng, kmax=3):
    terms = {}
    for k in range(kmax):
        c = sum(rng.randint(-3, 3) * z ** j for j in range(3))
        if c:
            terms[k] = c
    return alg.op(terms) if terms else alg.one()


def test_ore_mul_associative():
    rng = random.Random(5)
    F, z = frac_field("z", QQ)
    for kind, step in (("diff", None), ("ashift", F.one)):
        alg = OreAlgebra(F, kind, step=step)
        for _ in range(8):
            A, B, C = (_rand_op(alg, z, rng) for _ in range(3))
            assert (A * B) * C == A * (B * C)


def test_lead_coefficient_multiplicative():
    rng = random.Random(6)
    F, z, qs = frac_field("z, qs", QQ)
    alg = OreAlgebra(F, "qshift", step=qs)
    for _ in range(8):
        A, B = _rand_op(alg, z, rng), _rand_op(alg, z, rng)
        prod = A * B
        assert prod.degree() == A.degree() + B.degree()
        want = A.lead() * alg.sigma(B.lead(), A.degree())
        assert not (prod.lead() - want)


def test_identity_check_verdicts():
    F, z = frac_field("z", QQ)
    alg = OreAlgebra(F, "diff")
    D, X = alg.S(1), alg.mult(z)
    v, p, w = identity_check(D * X, alg.op({1: z, 0: 1}))
    assert v == "equal" and p < 2 ** -40
    # D.z vs z.D differ by the constant term 1
    v, p, w = identity_check(D * X, X * D)
    assert v == "counterexample"
    assert w[0] == 0  # the witness lives in the S^0 coefficient
    # additive: [T, z] = T
    F2, z2 = frac_field("z", QQ)
    alg2 = OreAlgebra(F2, "ashift", step=F2.one)
    T, X2 = alg2.S(1), alg2.mult(z2)
    v, _, _ = identity_check(T * X2 - X2 * T, T)
    assert v == "equal"


def test_identity_check_symbolic_is_exact():
    F, z = frac_field("z", QQ)
    alg = OreAlgebra(F, "diff")
    D, X = alg.S(1), alg.mult(z)
    v, p, _ = identity_check(D * X, alg.op({1: z, 0: 1}), symbolic=True)
    assert v == "equal" and p == 0.0


def test_report_summary_format():
    rep = run_case("frobenius_power", trials=2, seed=3)
    assert rep.summary() == "equal  p_fail<2^-40"
    rep = run_case("frobenius_power", trials=2, seed=3, symbolic=True)
    assert rep.summary() == "equal  p_fail=0"
    assert Report("x", "counterexample", 0.0, []).summary().startswith("counterexample")


def test_frobenius_power_primes():
    for p in (2, 3, 5, 7):
        rep = run_case("frobenius_power", prime=p, trials=3, seed=p)
        assert rep.ok, rep.details


def test_unknown_case():
    with pytest.raises(KeyError):
        run_case("no_such_case")


def test_truncseries_shift_expansion():
    # z^{-1} at z+1 is z^{-1} - z^{-2} + z^{-3} (mod z^{-4})
    p = 5
    B = TruncSeries(p, 1, 3, {1: ((1,),)})
    got = B.shift(1)
    assert got.coeff(1) == ((1,),)
    assert got.coeff(2) == (((-1) % p,),)
    assert got.coeff(3) == ((1,),)


def test_truncseries_product_lemma():
    # B(z+p-1)...B(z) = 1 + (B0^p - B0) z^{-p} + o(z^{-p})
    p = 3
    # scalar: b^3 - b = 0 mod 3, so the product is 1 mod z^{-4}
    for b in range(p):
        B = TruncSeries(p, 1, p, {0: ((1,),), 1: ((b,),)})
        prod = TruncSeries.one(p, 1, p)
        for j in range(p - 1, -1, -1):
            prod = prod * B.shift(j)
        assert prod == TruncSeries.one(p, 1, p)
    # nilpotent 2x2 leading coefficient: B0^3 = 0, so the z^{-3} term is -B0
    B0 = ((0, 1), (0, 0))
    I = ((1, 0), (0, 1))
    B = TruncSeries(p, 2, p, {0: I, 1: B0})
    prod = TruncSeries.one(p, 2, p)
    for j in range(p - 1, -1, -1):
        prod = prod * B.shift(j)
    expect = TruncSeries(p, 2, p, {0: I, p: ((0, (-1) % p), (0, 0))})
    assert prod == expect


def test_tau_additivity_and_span_rank():
    rep = run_case("tau_invariance", prime=5, trials=2, seed=11)
    assert rep.ok, rep.details
    rep = run_case("span4_qdiff", trials=5, seed=13)
    assert rep.ok, rep.details


def test_algebra_argument_validation():
    F, z = frac_field("z", QQ)
    with pytest.raises(ValueError):
        OreAlgebra(F, "bogus")
    with pytest.raises(ValueError):
        OreAlgebra(F, "ashift")  # needs a step
    alg = OreAlgebra(F, "diff")
    with pytest.raises(ValueError):
        alg.S(-1)

import random

import pytest

from ncsurf.cones import (
    effective_cert,
    effective_generators,
    is_ample,
    is_effective,
    is_nef,
    is_strongly_ample,
    minimal_section,
    nef_witness,
)
from ncsurf.lattice import (
    DivClass,
    LatticeSignature,
    anticanonical_class,
    basis_e,
    basis_f,
    basis_s,
    canonical_class,
    div,
    intersect,
    render_div,
    zero_class,
)
from ncsurf.marking import MarkingGroup, QComponent, SurfaceData, validate
from ncsurf.presets import (
    PRESETS,
    f0_generic,
    f2_type,
    get_preset,
    m1_generic,
    m2_generic,
)


def rand_div(sig, rng, bound=4):
    return DivClass(tuple(rng.randint(-bound, bound) for _ in range(sig.rank)), sig)


def test_minimal_section():
    S = f0_generic()
    sp, d0, tie = minimal_section(S)
    assert sp == basis_s(S.sig) and d0 == 0 and not tie
    S2 = f2_type()
    sp, d0, tie = minimal_section(S2)
    assert sp == div(S2.sig, 1, -1) and d0 == 1


def test_effective_examples():
    S = f0_generic()
    sig = S.sig
    assert is_effective(S, basis_s(sig) + basis_f(sig))
    assert not is_effective(S, canonical_class(sig))
    S2 = f2_type()
    assert is_effective(S2, div(S2.sig, 1, -1))
    assert not is_effective(S, div(sig, 1, -1))  # generic marking
    assert is_effective(S, zero_class(sig))


def test_effective_certificate_sums():
    rng = random.Random(11)
    for name in ("m1_generic", "m2_generic", "m3_generic"):
        S = get_preset(name)
        sig = S.sig
        for _ in range(40):
            D = rand_div(sig, rng)
            ok, cert = effective_cert(S, D)
            if ok:
                total = cert["residue"]
                for x in cert["subtracted"]:
                    assert is_effective(S, x)
                    total = total + x
                assert total == D


def test_nef_examples():
    S = m1_generic()
    sig = S.sig
    assert is_nef(S, basis_f(sig))
    ok, wit = nef_witness(S, basis_e(sig, 1))
    assert not ok and wit == basis_e(sig, 1)
    assert is_nef(S, div(sig, 2, 2, -1))


def test_ample_examples():
    S = f0_generic()
    sig = S.sig
    D = basis_s(sig) + basis_f(sig)
    assert is_ample(S, D)
    assert not is_ample(S, basis_f(sig))  # D^2 = 0
    # F2-type: s-f is effective and (s+f).(s-f) = 0 kills ampleness
    S2 = f2_type()
    assert not is_ample(S2, div(S2.sig, 1, 1))
    assert is_ample(S2, div(S2.sig, 2, 3))


def test_ample_blocked_by_orthogonal_neg1():
    # m=1: D = s+f-e1 pairs 0 with the -1 class e1... no: (s+f-e1).e1 = 1.
    # Use D = 2s+2f-2e1: D.(f-e1) = 0 with f-e1 effective
    S = m1_generic()
    sig = S.sig
    D = div(sig, 2, 2, -2)
    assert intersect(D, D) > 0
    assert not is_ample(S, D)


def test_generators_examples():
    S = f0_generic()
    sig = S.sig
    got = {render_div(x) for x in effective_generators(S, div(sig, 1, 1), 2)}
    assert got == {"2s+2f", "s", "f"}
    S2 = f2_type()
    got = {render_div(x) for x in effective_generators(S2, div(S2.sig, 1, 2), 2)}
    assert got == {"2s+2f", "f", "s-f"}
    S1 = m1_generic()
    got = {
        render_div(x)
        for x in effective_generators(S1, div(S1.sig, 2, 2, -1), 2)
    }
    assert {"e1", "f-e1"} <= got


def test_generators_require_ample():
    with pytest.raises(ValueError):
        effective_generators(f2_type(), div(f2_type().sig, 1, 1), 2)


def test_nef_implies_effective():
    rng = random.Random(12)
    for name in PRESETS:
        S = get_preset(name)
        for _ in range(30):
            D = rand_div(S.sig, rng, 3)
            if is_nef(S, D):
                assert is_effective(S, D), (name, D)


def test_effective_additive_and_fiber_degree():
    rng = random.Random(13)
    for name in ("f0_generic", "f2_type", "m2_generic"):
        S = get_preset(name)
        f = basis_f(S.sig)
        eff = []
        for _ in range(120):
            D = rand_div(S.sig, rng, 3)
            if is_effective(S, D):
                eff.append(D)
                assert intersect(D, f) >= 0
        for _ in range(30):
            D1, D2 = rng.choice(eff), rng.choice(eff)
            assert is_effective(S, D1 + D2)


def test_not_both_directions_effective():
    rng = random.Random(14)
    for name in ("f0_generic", "m2_generic"):
        S = get_preset(name)
        for _ in range(80):
            D = rand_div(S.sig, rng, 3)
            if not D.is_zero() and is_effective(S, D):
                assert not is_effective(S, -D)


def test_effective_invariant_under_ineffective_reflection():
    from ncsurf.marking import is_root_effective
    from ncsurf.weyl import reflect, reflect_surface, simple_roots

    rng = random.Random(15)
    S = m2_generic()
    roots, _ = simple_roots(S.sig)
    for alpha in roots:
        if is_root_effective(S, alpha)[0]:
            continue
        Sr = reflect_surface(S, alpha)
        for _ in range(25):
            D = rand_div(S.sig, rng, 3)
            assert is_effective(S, D) == is_effective(Sr, reflect(D, alpha))


def test_strongly_ample():
    S = f0_generic()
    sig = S.sig
    assert is_strongly_ample(S, div(sig, 1, 1))  # D.Q = 4
    # g=1, Q=2s: s+f ample-ish but s+f-2f = s-f not nef generically
    sig1 = LatticeSignature(0, "even", (1, 1))
    P = MarkingGroup(2)
    S1 = SurfaceData(
        sig1, (QComponent(basis_s(sig1), 2),), P, (1, 0), ((0, 1), (0, 0))
    )
    assert validate(S1) == []
    assert not is_strongly_ample(S1, div(sig1, 1, 1))

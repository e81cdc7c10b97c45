import random

import pytest

from ncsurf.lattice import (
    DivClass,
    LatticeSignature,
    anticanonical_class,
    basis_e,
    basis_f,
    basis_s,
    div,
    intersect,
)
from ncsurf.marking import (
    MarkingGroup,
    QComponent,
    SurfaceData,
    blow_up,
    cyclic_membership,
    element_order,
    is_neg1_effective,
    is_neg1_irreducible,
    is_root_effective,
    isomonodromy_count,
    moduli_stack_dim,
    ord_q,
    validate,
)
from ncsurf.presets import f0_generic, f0_commutative, f2_type, m2_generic


def test_validate_presets_ok():
    assert validate(f0_generic()) == []
    assert validate(f2_type()) == []
    assert validate(m2_generic()) == []


def test_validate_violations():
    sig = LatticeSignature(0, "even")
    P = MarkingGroup(2)
    lam = ((0, 1), (0, 0))
    # components summing to -K + f
    S = SurfaceData(
        sig,
        (QComponent(div(sig, 2, 2), 1), QComponent(div(sig, 0, 1), 1)),
        P,
        (1, 0),
        lam,
    )
    assert any("anticanonical sum" in v for v in validate(S))
    # non-anticanonical component with fiber degree 2
    S = SurfaceData(
        sig,
        (QComponent(div(sig, 2, 0), 1), QComponent(div(sig, 0, 2), 1)),
        P,
        (1, 0),
        lam,
    )
    assert any("component fiber degree" in v for v in validate(S))


def test_cyclic_membership():
    P = MarkingGroup(1, (5,))
    assert cyclic_membership(P, (4, 2), (2, 1))[0] == 2
    assert cyclic_membership(P, (1, 0), (2, 1)) is None
    # q = 0: witness iff x = 0
    Z2 = MarkingGroup(2)
    assert cyclic_membership(Z2, (0, 0), (0, 0)) is not None
    assert cyclic_membership(Z2, (1, 0), (0, 0)) is None


def test_element_order():
    P = MarkingGroup(1, (5,))
    assert element_order(P, (0, 2)) == 5
    assert element_order(P, (1, 0)) is None
    assert element_order(P, (0, 0)) == 1
    assert ord_q(f0_generic()) is None
    assert ord_q(f0_commutative()) == 1


def test_root_effective():
    # equal marked points make e1 - e2 effective with witness a = 0
    S = m2_generic()
    sig = S.sig
    alpha = basis_e(sig, 1) - basis_e(sig, 2)
    ok, wit = is_root_effective(S, alpha)
    assert not ok  # generic marking: distinct points
    lam = list(S.lam)
    lam[3] = lam[2]
    Seq = SurfaceData(sig, S.components, S.marking, S.q, tuple(lam))
    ok, wit = is_root_effective(Seq, alpha)
    assert ok and wit["a"] == 0
    # ruling root on the F2-type surface: lambda(s-f) = 3q
    S2 = f2_type()
    ok, wit = is_root_effective(S2, div(S2.sig, 1, -1))
    assert ok
    # generic F0: lambda(s-f) = (-3, 1) is not a multiple of q = (1, 0)
    S0 = f0_generic()
    ok, _ = is_root_effective(S0, div(S0.sig, 1, -1))
    assert not ok


def test_root_effective_component_permutation_invariance():
    S = m2_generic()
    sig = S.sig
    Sp = SurfaceData(S.sig, tuple(reversed(S.components)), S.marking, S.q, S.lam)
    for alpha in (
        basis_e(sig, 1) - basis_e(sig, 2),
        basis_f(sig) - basis_e(sig, 1) - basis_e(sig, 2),
        basis_s(sig) - basis_f(sig),
    ):
        assert is_root_effective(S, alpha)[0] == is_root_effective(Sp, alpha)[0]


def test_commutative_distinct_points_roots_ineffective():
    # q = 0 with pairwise-distinct lambda(e_i): e_i - e_j is never effective
    S = f0_commutative()
    S = blow_up(S, 0, [1], (3, 1))
    S = blow_up(S, 0, [1], (4, 1))
    sig = S.sig
    for i in range(1, 3):
        for j in range(1, 3):
            if i != j:
                assert not is_root_effective(S, basis_e(sig, i) - basis_e(sig, j))[0]


def test_neg1_classes():
    S = m2_generic()
    sig = S.sig
    assert is_neg1_effective(S, basis_e(sig, 2))
    assert is_neg1_irreducible(S, basis_e(sig, 2))
    assert is_neg1_effective(S, basis_f(sig) - basis_e(sig, 1))
    assert is_neg1_irreducible(S, basis_f(sig) - basis_e(sig, 1))
    # equal markings: e1 stays effective but decomposes as (e1-e2) + e2
    lam = list(S.lam)
    lam[3] = lam[2]
    Seq = SurfaceData(sig, S.components, S.marking, S.q, tuple(lam))
    assert is_neg1_effective(Seq, basis_e(sig, 1))
    assert not is_neg1_irreducible(Seq, basis_e(sig, 1))


def test_blow_up_bookkeeping():
    # F0 with irreducible Q, one smooth point: Q pulls back to 2s+2f-e1
    S = blow_up(f0_generic(), 0, [1], (3, 5))
    assert validate(S) == []
    assert len(S.components) == 1
    assert S.components[0].cls.coeffs == (2, 2, -1)
    assert S.components[0].mult == 1
    with pytest.raises(ValueError):
        blow_up(f0_generic(), 5, [1], (0, 0))


def test_blow_up_on_multiple_component():
    # g=1 differential surface, Q = 2s; blowing up on the double component
    # with local multiplicity 1 produces components {2 x (s-e1), 1 x e1}
    sig = LatticeSignature(0, "even", (1, 1))
    P = MarkingGroup(2)
    S = SurfaceData(
        sig,
        (QComponent(basis_s(sig), 2),),
        P,
        (1, 0),
        ((0, 1), (0, 0)),
    )
    assert validate(S) == []
    S1 = blow_up(S, 0, [1], (2, 3))
    assert validate(S1) == []
    cls_mults = sorted((c.cls.coeffs, c.mult) for c in S1.components)
    assert cls_mults == [((0, 0, 1), 1), ((1, 0, -1), 2)]


def test_isomonodromy_counts():
    sig1 = LatticeSignature(0, "even", (1, 1))
    P = MarkingGroup(2)
    lam = ((0, 1), (0, 0))
    S1 = SurfaceData(sig1, (QComponent(basis_s(sig1), 2),), P, (1, 0), lam)
    assert isomonodromy_count(S1) == 0
    sig2 = LatticeSignature(0, "even", (2, 2))
    S2 = SurfaceData(sig2, (QComponent(div(sig2, 1, -1), 2),), P, (1, 0), lam)
    assert isomonodromy_count(S2) == 3
    # blowing up a smooth point on the double component adds 1
    S2b = blow_up(S2, 0, [1], (5, 9))
    assert isomonodromy_count(S2b) == 4
    # a blowup on a multiplicity-1 component leaves the count unchanged
    S2bb = blow_up(S2b, 1, [0, 1], (6, 10))  # e1 component has mult 1
    assert isomonodromy_count(S2bb) == 4


def test_moduli_stack_dim():
    assert moduli_stack_dim(0, 5) == 8
    assert moduli_stack_dim(1, 0) == 1
    assert moduli_stack_dim(3, 2) == 6

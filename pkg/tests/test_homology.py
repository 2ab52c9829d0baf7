import random
from fractions import Fraction
from math import comb

import pytest

from dpres import (
    DPMatrix,
    Field,
    QQ,
    RingSpec,
    betti_table,
    char2_constraints,
    cokernel_module,
    direct_sum,
    find_isomorphism,
    gorenstein_pairing,
    herzog_kuhl,
    hilbert_function,
    is_minimal,
    koszul_complex,
    minimize,
    minimize_symmetric,
    obstructed_degree_sequence,
    quotient_module,
    tor_betti,
    trivial_module,
    verify_strands,
)
from dpres.errors import MathPreconditionError, SymmetricMinimizationUnsupported
from dpres.homology import BettiTable, hk_verify
from dpres.nielsen import middle_symmetry_defect, nielsen_complex, selfdual_resolution
from dpres.freemod import FreeComplex, GradedFreeMatrix

from util import random_cyclic_gorenstein, random_module


def test_minimize_nielsen_k(ring3, gf101):
    k = trivial_module(ring3, gf101)
    C = nielsen_complex(k)
    Cmin = minimize(C)
    assert Cmin.ranks() == [comb(3, i) for i in range(4)]
    # already-minimal input is returned unchanged
    Cmin2 = minimize(Cmin)
    assert Cmin2.ranks() == Cmin.ranks()
    for a, b in zip(Cmin.diffs, Cmin2.diffs):
        assert a.equal(b)


def test_minimize_keeps_augmentation(paper_matrix):
    M = quotient_module(paper_matrix)
    C = minimize(nielsen_complex(M))
    C.validate()
    lo, hi = M.min_degree(), M.max_degree() + 4
    assert all(r.ok for r in verify_strands(C, M, window=(lo, hi)))


def test_betti_rejects_non_minimal(ring3, gf101):
    rng = random.Random(2)
    M = random_module(ring3, gf101, rng, max_dim=5, min_dim=2)
    C = nielsen_complex(M)
    if is_minimal(C):
        pytest.skip("sample came out minimal")
    with pytest.raises(MathPreconditionError):
        betti_table(C)


def test_betti_koszul(ring3, gf101):
    C = koszul_complex(ring3, gf101)
    bt = betti_table(C)
    assert bt.counts == {(i, i): comb(3, i) for i in range(4)}


def test_tor_betti_trivial(ring3, gf101):
    bt = tor_betti(trivial_module(ring3, gf101))
    assert bt.counts == {(i, i): comb(3, i) for i in range(4)}


def test_tor_betti_additive(paper_matrix):
    M = quotient_module(paper_matrix)
    one = tor_betti(M)
    double = tor_betti(direct_sum(M, M))
    assert double == one.add(one)


def test_oracle_equivalence_paper(paper_matrix):
    M = quotient_module(paper_matrix)
    assert betti_table(minimize(nielsen_complex(M))) == tor_betti(M)


def test_minimization_order_invariance(ring3, gf101):
    rng = random.Random(11)
    for _ in range(5):
        M = random_module(ring3, gf101, rng, max_dim=7)
        C = nielsen_complex(M)
        a = betti_table(minimize(C))
        b = betti_table(minimize(C, scan_reverse=True))
        assert a == b


def test_selfdual_table_symmetry(ring3, gf101):
    rng = random.Random(12)
    M, _ = random_cyclic_gorenstein(ring3, gf101, rng, 3)
    pr = gorenstein_pairing(M, seed=0)
    C = selfdual_resolution(M, pr)
    Cm = minimize_symmetric(C, 1, pr.epsilon)
    bt = betti_table(Cm)
    n, d, s = 3, ring3.total_weight, pr.s
    for (i, j), c in bt.counts.items():
        assert bt[(n - i, d + s - j)] == c


def test_minimize_symmetric_preserves_symmetry_and_betti(ring3, gf101):
    rng = random.Random(14)
    for trial in range(4):
        M, _ = random_cyclic_gorenstein(ring3, gf101, rng, rng.randint(2, 4))
        pr = gorenstein_pairing(M, seed=trial)
        C = selfdual_resolution(M, pr)
        Cm = minimize_symmetric(C, 1, pr.epsilon)
        assert is_minimal(Cm)
        assert middle_symmetry_defect(Cm, 1, pr.epsilon).is_zero()
        # equal Betti numbers along the plain route
        assert betti_table(Cm) == betti_table(minimize(nielsen_complex(M)))
        # left and right halves are twist-adjusted transposes
        total = ring3.total_weight + pr.s
        assert Cm.diffs[2].equal(Cm.diffs[0].dual(total))


def test_selfdual_koszul_unchanged(ring3, gf101):
    from dpres.flmodule import GradedPairing, ModuleMap, dual_module, twist_module

    k = trivial_module(ring3, gf101)
    tau = ModuleMap(k, twist_module(dual_module(k), 0), 0, {0: [[gf101.one]]})
    C = selfdual_resolution(k, GradedPairing(0, tau, 1))
    Cm = minimize_symmetric(C, 1, 1)
    assert Cm.ranks() == [1, 3, 3, 1]
    assert middle_symmetry_defect(Cm, 1, 1).is_zero()


def test_complete_intersection_middle_skew(ring3, gf101):
    K = gf101
    P = DPMatrix(ring3, K, (-3,), (0,), [[{(1, 1, 1): K.one}]])
    M = quotient_module(P)
    pr = gorenstein_pairing(M, seed=0)
    C = minimize_symmetric(selfdual_resolution(M, pr), 1, pr.epsilon)
    assert C.ranks() == [1, 3, 3, 1]
    T = C.diffs[1]
    assert T.equal(T.flip().neg())  # skew 3x3 middle


def test_char2_alternating_route(ring3):
    K = Field(2)
    rng = random.Random(3)
    M, _ = random_cyclic_gorenstein(ring3, K, rng, 3)
    pr = gorenstein_pairing(M, seed=0)
    C = selfdual_resolution(M, pr)
    # middle diagonal is structurally zero, so the symmetric route works
    Cm = minimize_symmetric(C, 1, pr.epsilon)
    assert betti_table(Cm) == tor_betti(M)


def test_char2_refusal_on_nonzero_diagonal(ring3):
    # hand-build a tiny selfdual complex with a symmetric unit middle
    # entry on the diagonal: refused over GF(2)
    K = Field(2)
    ring = ring3
    from dpres.freemod import FreeModule

    F = FreeModule((0,), ("g",))
    Fd = FreeModule((0,), ("g",))
    T = GradedFreeMatrix(ring, K, Fd, F, {(0, 0): {(0, 0, 0): K.one}})
    C = FreeComplex(ring, K, [F, Fd], [T], check=False)
    with pytest.raises(SymmetricMinimizationUnsupported):
        minimize_symmetric(C, 0, 1)
    # plain minimization handles it
    assert minimize(C).ranks() == [0, 0]


def test_verify_strands_negative_control(ring3, gf101):
    k = trivial_module(ring3, gf101)
    C = nielsen_complex(k)
    good = verify_strands(C, k, window=(0, 4))
    assert all(r.ok for r in good)
    # corrupt one differential entry
    bad_diffs = list(C.diffs)
    d1 = bad_diffs[0]
    entries = dict(d1.entries)
    entries[(0, 0)] = {(2, 0, 0): gf101.one}  # degree-2 junk replacing x1
    bad_diffs[0] = GradedFreeMatrix(
        d1.ring, gf101, d1.source, d1.target, entries, check=False
    )
    bad = FreeComplex(C.ring, gf101, C.modules, bad_diffs,
                      augmentation=C.augmentation, check=False)
    reports = verify_strands(bad, k, window=(0, 4))
    assert not all(r.ok for r in reports)


def test_cokernel_matches_module(paper_matrix):
    M = quotient_module(paper_matrix)
    C = minimize(nielsen_complex(M))
    N = cokernel_module(C, (M.min_degree(), M.max_degree() + 2))
    assert hilbert_function(N) == hilbert_function(M)
    iso = find_isomorphism(N, M, seed=3)
    assert iso is not None and iso.verify() and iso.is_isomorphism()


def test_weighted_ring_pipeline():
    # weights (1, 2): resolve R/Ann(X1^(2)X2) and cross-check the oracle
    ring = RingSpec((1, 2))
    K = Field(101)
    f = {(2, 1): K.one}  # degree -(2*1 + 1*2) = -4
    P = DPMatrix(ring, K, (-4,), (0,), [[f]])
    M = quotient_module(P)
    assert hilbert_function(M) == {0: 1, 1: 1, 2: 2, 3: 1, 4: 1}
    bt = betti_table(minimize(nielsen_complex(M)))
    assert bt == tor_betti(M)


def test_weighted_selfdual_route():
    # odd n with nontrivial weights: the selfdual machinery still applies
    ring = RingSpec((1, 1, 2))
    K = Field(101)
    f = {(1, 1, 1): K.one}  # degree -(1 + 1 + 2) = -4
    P = DPMatrix(ring, K, (-4,), (0,), [[f]])
    M = quotient_module(P)
    pr = gorenstein_pairing(M, seed=0)
    assert pr is not None
    C = selfdual_resolution(M, pr)
    Cm = minimize_symmetric(C, 1, pr.epsilon)
    assert middle_symmetry_defect(Cm, 1, pr.epsilon).is_zero()
    assert betti_table(Cm) == tor_betti(M)


# ---------------------------------------------------------------------------
# Herzog-Kuhl and the parity predicates


def test_hk_pure_table():
    betti = herzog_kuhl((0, 2, 3, 5, 6, 8))
    assert betti == [Fraction(x) for x in (1, 10, 16, 16, 10, 1)]
    assert hk_verify((0, 2, 3, 5, 6, 8), betti)


def test_hk_koszul_n2():
    assert herzog_kuhl((0, 1, 2)) == [Fraction(1), Fraction(2), Fraction(1)]


def test_hk_first_obstructed_case():
    betti = herzog_kuhl((0, 3, 5, 8))
    assert betti == [Fraction(1), Fraction(4), Fraction(4), Fraction(1)]
    assert all(b > 0 for b in betti)
    assert hk_verify((0, 3, 5, 8), betti)


def test_hk_rejects_non_strict():
    with pytest.raises(MathPreconditionError):
        herzog_kuhl((0, 0, 1))
    with pytest.raises(MathPreconditionError):
        herzog_kuhl((3,))


def test_hk_fractional_values_possible():
    betti = herzog_kuhl((0, 1, 3))
    assert hk_verify((0, 1, 3), betti)
    assert betti[0] == 1


def test_char2_constraints_l3():
    spec = char2_constraints(3)
    assert (spec.n, spec.m) == (5, 2)
    assert spec.a_max == 19  # floor(5*10/2) - 5 - 1
    good = BettiTable({(2, 4): 3, (3, 4): 3})
    bad = BettiTable({(2, 4): 0, (3, 4): 0})
    assert spec.check(good)["ok"]
    verdict = spec.check(bad)
    assert not verdict["ok"] and not verdict["odd"]


def test_char2_rejects_pure_table():
    # the characteristic-0 pure table has beta_{3,4} = 0, an even value
    spec = char2_constraints(3)
    pure = BettiTable(
        {(0, 0): 1, (1, 2): 10, (2, 3): 16, (3, 5): 16, (4, 6): 10, (5, 8): 1}
    )
    assert not spec.check(pure)["ok"]


def test_char2_gate():
    with pytest.raises(MathPreconditionError):
        char2_constraints(2)


def test_obstructed_degree_sequences():
    assert obstructed_degree_sequence(2) == (0, 3, 5, 8)
    assert obstructed_degree_sequence(3) == (0, 5, 6, 7, 9, 10, 11, 16)
    for l in range(2, 7):
        seq = obstructed_degree_sequence(l)
        assert len(seq) == 2**l
        assert all(seq[i] < seq[i + 1] for i in range(len(seq) - 1))
    with pytest.raises(MathPreconditionError):
        obstructed_degree_sequence(1)

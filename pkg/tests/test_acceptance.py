"""Acceptance suite: the contract-level checks, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one pass/fail
line per criterion.  Every tolerance is pinned here; nothing is deferred
to later calibration.
"""

import itertools

import pytest

from qglnm.analyze import (
    check_invariance,
    check_unitarity,
    deformed_ops_check,
    essentially_typical,
    highest_weight,
    inequivalence,
)
from qglnm.fock import Signature, dim_F0, enumerate_up_to
from qglnm.verify import verify_all

SIGNATURES = [Signature(2, 1), Signature(2, 2), Signature(3, 1), Signature(3, 2)]


def report_line(num, text):
    print(f"criterion {num:2d} PASS: {text}")


def test_criterion_01_dyson_homomorphism_exact():
    """Every defining relation annihilates every probe state of degree <= 6,
    with exact coefficients and formal p."""
    for sig in SIGNATURES:
        rep = verify_all(sig, kind="dyson", p=None, cap=6)
        assert rep.all_pass, (sig, [r.name for r in rep.failures])
        assert all(r.status == "exact-pass" for r in rep.results)
    report_line(1, "Dyson relation suite exact-passes for (2,1),(2,2),(3,1),(3,2), formal p, cap 6")


def test_criterion_02_hp_homomorphism_numeric():
    """Holstein-Primakoff relations hold to 1e-10 per (relation, state,
    sample) for p in {1,2,3} and q in {0.5, 0.9, 1.3, 2.0}."""
    worst = 0.0
    for sig in SIGNATURES:
        for p in (1, 2, 3):
            rep = verify_all(sig, kind="hp", p=p, q=[0.5, 0.9, 1.3, 2.0])
            assert rep.all_pass, (sig, p, [r.name for r in rep.failures])
            worst = max(worst, rep.max_residual)
    assert worst <= 1e-10
    report_line(2, f"HP relation suite numeric-passes, worst residual {worst:.2e} <= 1e-10")


@pytest.mark.parametrize("n,m,p", [(2, 1, 1), (2, 1, 2), (2, 2, 2)])
def test_criterion_03_invariance_structure(n, m, p):
    """Dyson: the high subspace is invariant (exactly) and the low one is
    not, with an explicit witness; HP: both invariant."""
    sig = Signature(n, m)
    dy = check_invariance(sig, "dyson", p)
    assert dy.f1_invariant and not dy.f0_invariant and dy.f0_witness
    hp_rep = check_invariance(sig, "hp", p, q=1.3)
    assert hp_rep.f1_invariant and hp_rep.f0_invariant
    report_line(3, f"invariance pattern at (n,m,p)=({n},{m},{p}); Dyson witness: {dy.f0_witness}")


def test_criterion_04_unitarizability():
    """HP transpose test passes within 1e-10 on the low subspace at
    q in {0.9, 1.3}; the Dyson matrices fail it with a witness entry."""
    for sig in (Signature(2, 1), Signature(2, 2)):
        for q in (0.9, 1.3):
            rep = check_unitarity(sig, p=2, q=q, tolerance=1e-10)
            assert rep.hp_pass and rep.h_diagonal_real
            assert rep.dyson_fails and rep.dyson_witness
    report_line(4, "HP matrices unitarizable (transpose test <= 1e-10), Dyson fails with witness")


def test_criterion_05_dimension_and_highest_weight():
    """Closed-form dimension equals brute enumeration for n in {2,3,4},
    m in {0..3}, p in {1..5}; the vacuum weight is (p, 0, ..., 0)."""
    for n, m, p in itertools.product((2, 3, 4), (0, 1, 2, 3), range(1, 6)):
        sig = Signature(n, m)
        assert dim_F0(sig, p) == len(enumerate_up_to(sig, p))
    for sig in SIGNATURES:
        for p in (1, 2, 3):
            expected = tuple([p] + [0] * (sig.r - 1))
            assert highest_weight(sig, p) == expected
    report_line(5, "dim F0 matches enumeration on the (n,m,p) grid; vacuum weight is (p,0,...,0)")


def test_criterion_06_atypicality():
    """Fock-module weights fail the essentially-typical criterion for every
    tested signature with m >= 1."""
    for sig in SIGNATURES:
        for p in (1, 2, 3):
            weight = tuple([p] + [0] * (sig.r - 1))
            rep = essentially_typical(sig, weight)
            assert not rep.essentially_typical, (sig, p, rep)
            assert rep.intersection
    report_line(6, "all tested Fock weights are atypical (criterion sets intersect)")


def test_criterion_07_deformed_oscillators():
    """Deformed-oscillator relations hold to 1e-12 on bosonic modes; the
    fermionic exponent variant resolves to +N; the two HP forms agree to
    1e-12."""
    for sig in (Signature(2, 1), Signature(2, 2)):
        for q in (0.9, 1.3):
            rep = deformed_ops_check(sig, p=2, q=q, tolerance=1e-12)
            assert rep.bosonic_pass and rep.bosonic_max_residual <= 1e-12
            assert rep.fermionic_exponent == "+"
            assert rep.fermionic_plus_residual <= 1e-12
            assert rep.fermionic_minus_residual > 1e-12
            assert rep.agreement_pass and rep.agreement_residual <= 1e-12
    report_line(7, "deformed oscillator relations pass at 1e-12; fermionic variant is q^{+N}; "
                   "both HP forms agree")


def test_criterion_08_classical_limit():
    """With brackets replaced by their arguments at q = 1, the Dyson suite
    still passes exactly (formal p); m = 0 signatures reproduce the purely
    bosonic case."""
    for sig in SIGNATURES:
        rep = verify_all(sig, kind="dyson", p=None, cap=6, classical=True)
        assert rep.all_pass, (sig, [r.name for r in rep.failures])
    for sig in (Signature(3, 0), Signature(4, 0)):
        rep = verify_all(sig, kind="dyson", p=None, cap=6)
        assert rep.all_pass
        rep = verify_all(sig, kind="dyson", p=None, cap=6, classical=True)
        assert rep.all_pass
    report_line(8, "classical q=1 suite exact-passes; m=0 signatures verify as the bosonic case")


def test_criterion_09_mutation_sensitivity():
    """Each seeded defect causes at least one relation failure with a
    reproducible witness."""
    cases = [
        ("drop_bracket_ratio", Signature(3, 1)),
        ("flip_fermion_sign", Signature(2, 1)),
        ("shift_e1_bracket", Signature(2, 1)),
    ]
    summary = []
    for mutation, sig in cases:
        rep = verify_all(sig, kind="dyson", p=None, cap=4, mutation=mutation)
        assert not rep.all_pass, mutation
        assert all(r.witness for r in rep.failures)
        summary.append(f"{mutation}->{rep.failures[0].name}")
    report_line(9, "seeded mutations all detected: " + ", ".join(summary))


def test_criterion_10_inequivalence():
    """Dimension and h_1 spectrum distinguish the thresholds 1, 2, 3."""
    dims = {p: dim_F0(Signature(2, 1), p) for p in (1, 2, 3)}
    for p1, p2 in [(1, 2), (1, 3), (2, 3)]:
        rep = inequivalence(Signature(2, 1), p1, p2)
        assert rep.inequivalent
        assert rep.dim1 != rep.dim2
        assert rep.spectrum1 != rep.spectrum2
    assert dims == {1: 3, 2: 5, 3: 7}
    report_line(10, f"thresholds 1,2,3 distinguished: dims {dims}")

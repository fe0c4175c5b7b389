"""Clifford data, psi-bilinears, super-Minkowski presentations, string
cocycles, and the twisted-complex exchange between the two extensions."""

import numpy as np
import pytest

from sullivan.fields import QI
from sullivan.superminkowski import (
    GammaData,
    _matmul,
    _to_gaussian,
    bilinear,
    bilinear_symmetry,
    build_gamma,
    build_superminkowski,
    hori_pipeline,
    mu_f1,
    verify_report,
)


@pytest.fixture(scope="module")
def gd() -> GammaData:
    return build_gamma()


@pytest.fixture(scope="module")
def sm(gd):
    return build_superminkowski(gd)


@pytest.fixture(scope="module")
def cocycles(sm):
    return mu_f1(sm)


def test_anticommutators(gd):
    ident = np.eye(16, dtype=object)
    for a in range(9):
        for b in range(9):
            anti = _matmul(gd.gamma[a], gd.gamma[b]) + _matmul(gd.gamma[b], gd.gamma[a])
            expected = (2 * gd.eta[a] if a == b else 0) * ident
            assert np.array_equal(anti, expected)


def test_squares_follow_recorded_signature(gd):
    ident = np.eye(16, dtype=object)
    for a in range(9):
        assert np.array_equal(_matmul(gd.gamma[a], gd.gamma[a]), gd.eta[a] * ident)
    # over Q the timelike square is forced to +1 (mostly-minus signature)
    assert gd.eta[0] == 1 and all(e == -1 for e in gd.eta[1:])
    assert gd.lowering_eta == [-e for e in gd.eta]


def test_g9b_identity(gd):
    lhs = _matmul(_to_gaussian(gd.G9A), gd.G10) * QI.imaginary_unit()
    diff = lhs - _to_gaussian(gd.G9B)
    assert all(not x for x in diff.flat)


def test_convention_report_recorded(gd):
    text = "\n".join(gd.report)
    assert "mostly-plus (eta_00 = -1): rejected" in text
    assert "mostly-minus (eta_00 = +1): accepted" in text
    assert "charge conjugation" in text
    assert "index lowering" in text


def test_bilinear_antisymmetric_matrix_gives_zero(gd, sm):
    # C squares to the identity, so M = C A with A antisymmetric has C M = A
    A = np.zeros((32, 32), dtype=object)
    A[0, 1], A[1, 0] = 1, -1
    assert np.array_equal(_matmul(gd.C, gd.C), np.eye(16 * 2, dtype=object))
    M = _matmul(gd.C, A)
    assert bilinear_symmetry(gd, M) == "antisymmetric"
    assert bilinear(gd, sm.base.algebra, M).is_zero()


def test_bilinear_identity_matrix(gd, sm):
    ident = np.eye(32, dtype=object)
    assert bilinear_symmetry(gd, ident) == "symmetric"
    assert not bilinear(gd, sm.base.algebra, ident).is_zero()


def test_bilinear_g9a_is_c2a(gd, sm):
    assert bilinear(gd, sm.base.algebra, gd.G9A) == sm.c2A
    assert bilinear_symmetry(gd, gd.G9A) == "symmetric"
    assert bilinear_symmetry(gd, gd.G9B) == "symmetric"


def test_presentations_pass_d_squared(sm):
    assert sm.base.verify_d_squared() is None
    assert sm.extA.total.verify_d_squared() is None
    assert sm.extB.total.verify_d_squared() is None


def test_extension_differentials(sm):
    assert sm.extA.total.d_of_generator("e9A") == sm.extA.inclusion.apply(sm.c2A)
    assert sm.extB.total.d_of_generator("e9B") == sm.extB.inclusion.apply(sm.c2B)


def test_c2_cocycles_real_and_independent(sm):
    from sullivan.linalg import rank

    for c in (sm.c2A, sm.c2B):
        assert all(QI.is_real(x) for x in c.terms.values())
        assert sm.base.is_cocycle(c)
    monomials = sorted(set(sm.c2A.terms) | set(sm.c2B.terms))
    rows = [
        [c.terms.get(m, QI.zero) for m in monomials]
        for c in (sm.c2A, sm.c2B)
    ]
    assert rank(rows, QI) == 2


def test_de_real_coefficients(sm):
    for a in range(9):
        de = sm.base.d_of_generator(f"e{a}")
        assert not de.is_zero()
        assert all(QI.is_real(c) for c in de.terms.values())


def test_mu81_trivializes_the_product(sm, cocycles):
    assert sm.base.apply_d(cocycles.mu81) == sm.c2A * sm.c2B
    assert all(QI.is_real(c) for c in cocycles.mu81.terms.values())


def test_mu_iia_is_a_cocycle(sm, cocycles):
    assert sm.extA.total.is_cocycle(cocycles.muA)
    assert sm.extB.total.is_cocycle(cocycles.muB)


def test_mu_iia_completion_formula(sm, cocycles):
    inclA = sm.extA.inclusion
    e9A = sm.extA.total.algebra.gen("e9A")
    assert cocycles.muA == inclA.apply(cocycles.mu81) - e9A * inclA.apply(sm.c2B)
    inclB = sm.extB.inclusion
    e9B = sm.extB.total.algebra.gen("e9B")
    assert cocycles.muB == inclB.apply(cocycles.mu81) - inclB.apply(sm.c2A) * e9B


def test_quartic_scale(cocycles):
    # the closure of muA is a genuinely quartic cancellation
    assert len(cocycles.muA.terms) > 100


def test_verify_report_passes():
    rep = verify_report()
    assert rep.passed, str(rep)


def test_hori_pipeline_smoke():
    rep = hori_pipeline(samples=5, window=3)
    assert rep.passed, str(rep)

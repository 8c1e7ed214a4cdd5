"""X-state construction, validation, Dicke transform and serialization."""

import numpy as np
import pytest

from helpers import random_x_state
from qcorr import (
    DomainError,
    ModelParams,
    NotHermitian,
    NotPSD,
    NotXShaped,
    TraceNotOne,
    XState,
    analytic_mixture,
    dumps_density_matrix,
    from_dicke,
    hermitian_eigensystem,
    is_x_shaped,
    loads_density_matrix,
    make_mixture,
    make_werner,
    purity,
    reduced_a,
    reduced_b,
    to_dicke,
    l1_coherence,
    validate,
)


def test_validate_accepts_maximally_mixed():
    validate(np.eye(4, dtype=complex) / 4.0)


def test_validate_trace_error():
    with pytest.raises(TraceNotOne):
        validate(np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex))


def test_validate_positivity_error():
    bad = np.zeros((4, 4), dtype=complex)
    bad[0, 0] = bad[3, 3] = 0.25
    bad[1, 1] = 0.5
    bad[0, 3] = bad[3, 0] = 0.6
    with pytest.raises(NotPSD):
        validate(bad)
    with pytest.raises(NotPSD):
        XState(0.25, 0.5, 0.0, 0.25, 0.6, 0.0)


def test_validate_hermiticity_error():
    bad = np.eye(4, dtype=complex) / 4.0
    bad[0, 1] = 0.1
    with pytest.raises(NotHermitian):
        validate(bad)


def test_is_x_shaped():
    for p in (-1.0 / 3.0, 0.0, 0.5, 1.0):
        assert is_x_shaped(make_werner(p).to_matrix())
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    zero = np.array([1.0, 0.0])
    psi = np.kron(plus, zero)
    rho = np.outer(psi, psi).astype(complex)
    assert rho[0, 2] == pytest.approx(0.5)
    assert not is_x_shaped(rho)


def test_evolved_mixture_stays_x_shaped():
    p = ModelParams(j=0.1, delta=0.5, gamma=0.1)
    for t in (0.0, 0.7, 3.3, 12.0, 40.0):
        assert is_x_shaped(analytic_mixture(t, p).to_matrix(), 1e-12)


def test_from_matrix_rejects_off_pattern():
    rho = np.eye(4, dtype=complex) / 4.0
    rho[0, 1] = rho[1, 0] = 0.05
    with pytest.raises(NotXShaped):
        XState.from_matrix(rho)


def test_dicke_of_single_excitation():
    d = to_dicke(XState(0.0, 1.0, 0.0, 0.0, 0.0, 0.0))
    assert d.ss == pytest.approx(0.5)
    assert d.aa == pytest.approx(0.5)
    assert d.sa == pytest.approx(0.5 + 0.0j)


def test_dicke_of_thermal_diagonal_state():
    nb = 0.8
    k = (2 * nb + 1) ** 2
    x = XState(nb**2 / k, nb * (nb + 1) / k, nb * (nb + 1) / k, (nb + 1) ** 2 / k, 0.0, 0.0)
    d = to_dicke(x)
    assert d.ss == pytest.approx(nb * (nb + 1) / k, abs=1e-15)
    assert d.aa == pytest.approx(d.ss, abs=1e-15)
    assert d.sa == 0.0 and d.eg == 0.0


def test_dicke_round_trip_and_spectrum():
    rng = np.random.default_rng(41)
    for _ in range(30):
        x = random_x_state(rng)
        back = from_dicke(to_dicke(x))
        for name in ("rho11", "rho22", "rho33", "rho44", "rho14", "rho23"):
            assert abs(getattr(back, name) - getattr(x, name)) <= 1e-14
        d = to_dicke(x)
        dicke_mat = np.zeros((4, 4), dtype=complex)
        dicke_mat[0, 0], dicke_mat[1, 1] = d.ee, d.gg
        dicke_mat[0, 1], dicke_mat[1, 0] = d.eg, np.conj(d.eg)
        dicke_mat[2, 2], dicke_mat[3, 3] = d.ss, d.aa
        dicke_mat[2, 3], dicke_mat[3, 2] = d.sa, np.conj(d.sa)
        lam_x = hermitian_eigensystem(x.to_matrix()).eigenvalues
        lam_d = hermitian_eigensystem(dicke_mat).eigenvalues
        np.testing.assert_allclose(lam_x, lam_d, atol=1e-13)
        assert d.ee + d.gg + d.ss + d.aa == pytest.approx(1.0, abs=1e-12)


def test_reduced_states():
    w1 = make_werner(1.0)
    np.testing.assert_allclose(reduced_a(w1), np.diag([0.5, 0.5]), atol=1e-15)
    np.testing.assert_allclose(reduced_b(w1), np.diag([0.5, 0.5]), atol=1e-15)
    mix = make_mixture(0.5)
    np.testing.assert_allclose(reduced_a(mix), np.diag([0.75, 0.25]), atol=1e-15)
    np.testing.assert_allclose(reduced_b(mix), np.diag([0.25, 0.75]), atol=1e-15)
    rng = np.random.default_rng(43)
    for _ in range(10):
        x = random_x_state(rng)
        assert l1_coherence(reduced_a(x)) == 0.0
        assert l1_coherence(reduced_b(x)) == 0.0
        assert np.trace(reduced_a(x)).real == pytest.approx(1.0, abs=1e-12)


def test_purity():
    assert purity(make_werner(1.0)) == pytest.approx(1.0, abs=1e-14)
    assert purity(make_werner(0.0)) == pytest.approx(0.25, abs=1e-14)
    assert purity(np.eye(4) / 4.0) == pytest.approx(0.25, abs=1e-15)
    assert purity(make_mixture(0.5)) == pytest.approx(0.5, abs=1e-14)
    for p in (0.2, 0.6, 0.9):
        assert purity(make_werner(p)) == pytest.approx((1 + 3 * p * p) / 4, abs=1e-14)
    for w in (0.1, 0.4, 0.8):
        assert purity(make_mixture(w)) == pytest.approx(1 - 2 * w * (1 - w), abs=1e-14)


def test_make_mixture():
    mix = make_mixture(0.5)
    assert (mix.rho11, mix.rho22, mix.rho33, mix.rho44) == (0.25, 0.5, 0.0, 0.25)
    assert mix.rho14 == 0.25 and mix.rho23 == 0.0
    pure = make_mixture(1.0).to_matrix()
    np.testing.assert_array_equal(pure, np.diag([0.0, 1.0, 0.0, 0.0]).astype(complex))
    with pytest.raises(DomainError):
        make_mixture(-0.01)
    with pytest.raises(DomainError):
        make_mixture(1.01)


def test_make_mixture_bell_limit():
    from qcorr import concurrence_x

    bell = make_mixture(0.0)
    psi = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
    np.testing.assert_allclose(bell.to_matrix(), np.outer(psi, psi), atol=1e-15)
    assert concurrence_x(bell) == pytest.approx(1.0, abs=1e-15)


def test_generic_partial_traces_against_einsum():
    from qcorr import trace_out_a, trace_out_b
    from helpers import random_density_matrix

    rng = np.random.default_rng(53)
    for _ in range(10):
        rho = random_density_matrix(rng)
        r = rho.reshape(2, 2, 2, 2)
        np.testing.assert_allclose(trace_out_b(rho), np.einsum("ikjk->ij", r), atol=1e-15)
        np.testing.assert_allclose(trace_out_a(rho), np.einsum("ikil->kl", r), atol=1e-15)
        assert np.trace(trace_out_b(rho)).real == pytest.approx(1.0, abs=1e-12)


def test_make_werner():
    np.testing.assert_allclose(make_werner(0.0).to_matrix(), np.eye(4) / 4.0, atol=1e-15)
    singlet = np.zeros((4, 4), dtype=complex)
    singlet[1, 1] = singlet[2, 2] = 0.5
    singlet[1, 2] = singlet[2, 1] = -0.5
    np.testing.assert_allclose(make_werner(1.0).to_matrix(), singlet, atol=1e-15)
    with pytest.raises(DomainError):
        make_werner(-0.4)
    with pytest.raises(DomainError):
        make_werner(1.1)


def test_constructors_valid_over_domain():
    for w in np.linspace(0.0, 1.0, 21):
        validate(make_mixture(w).to_matrix())
    for p in np.linspace(-1.0 / 3.0, 1.0, 21):
        validate(make_werner(p).to_matrix())


def test_serialization_round_trip():
    rng = np.random.default_rng(47)
    x = random_x_state(rng)
    text = dumps_density_matrix(x)
    assert len(text.splitlines()) == 4
    back = loads_density_matrix(text)
    np.testing.assert_array_equal(back, x.to_matrix())


def test_serialization_rejects_malformed():
    with pytest.raises(ValueError):
        loads_density_matrix("1+0i 0+0i\n")
    good = dumps_density_matrix(np.eye(4) / 4.0)
    with pytest.raises(ValueError):
        loads_density_matrix(good.replace("i", ""))

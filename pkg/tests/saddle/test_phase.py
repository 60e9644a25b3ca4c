import numpy as np
import pytest

from ssk_lab.errors import BranchCutError, InvalidArgumentError, OutOfRegimeError
from ssk_lab.saddle import SaddleFrame, c_beta, phase_G, phase_G_derivative, phase_G_difference, phase_g
from ssk_lab.spectral import edge_sums

BETA = 1.5


def test_c_beta():
    assert c_beta(2.0) == 1.0
    assert c_beta(1.5) == pytest.approx(2.0)
    with pytest.raises(OutOfRegimeError):
        c_beta(1.0)


def test_frame_places_gamma_right_of_the_edge(zero_diag_spectrum):
    frame = SaddleFrame.from_spectrum(zero_diag_spectrum, BETA)
    lam = zero_diag_spectrum.eigenvalues
    assert frame.gamma == pytest.approx(lam[0] + 2.0 / 60)
    m_gamma, _ = edge_sums(lam, frame.gamma)
    assert frame.a == pytest.approx(0.5 * (BETA + m_gamma))
    assert frame.b == frame.c_beta


def test_with_gamma_scale_moves_only_gamma(zero_diag_spectrum):
    frame = SaddleFrame.from_spectrum(zero_diag_spectrum, BETA)
    moved = frame.with_gamma_scale(2.0)
    assert moved.gamma - frame.lambda_max == pytest.approx(2.0 * (frame.gamma - frame.lambda_max))
    assert moved.beta == frame.beta
    with pytest.raises(InvalidArgumentError):
        frame.with_gamma_scale(0.0)


def test_phase_difference_matches_direct_evaluation(zero_diag_spectrum):
    frame = SaddleFrame.from_spectrum(zero_diag_spectrum, BETA)
    z = frame.gamma + 0.3j - 0.05
    direct = phase_G(z, zero_diag_spectrum, BETA) - phase_G(frame.gamma, zero_diag_spectrum, BETA)
    assert phase_G_difference(z, frame) == pytest.approx(direct, abs=1e-12)
    assert frame.log_weight(frame.gamma) == 0


def test_phase_derivative_matches_finite_difference(zero_diag_spectrum):
    z = 2.2 + 0.4j
    h = 1e-6
    numeric = (phase_G(z + h, zero_diag_spectrum, BETA) - phase_G(z - h, zero_diag_spectrum, BETA)) / (2 * h)
    assert phase_G_derivative(z, zero_diag_spectrum, BETA) == pytest.approx(numeric, abs=1e-7)


def test_phase_is_vectorised(zero_diag_spectrum):
    z = np.array([2.5 + 0.1j, 2.5 - 0.1j])
    values = phase_G(z, zero_diag_spectrum, BETA)
    assert values.shape == (2,)
    assert values[1] == pytest.approx(np.conj(values[0]))


def test_branch_cut_is_refused(zero_diag_spectrum):
    frame = SaddleFrame.from_spectrum(zero_diag_spectrum, BETA)
    with pytest.raises(BranchCutError):
        phase_G(frame.lambda_max - 0.1, zero_diag_spectrum, BETA)
    with pytest.raises(BranchCutError):
        frame.phase_difference(np.array([frame.gamma + 1j, 0.0 + 0.0j]))
    with pytest.raises(BranchCutError):
        phase_g(-frame.c_beta / frame.n - 1e-3, frame)


def test_local_model_derivative_vanishes_at_the_saddle(zero_diag_spectrum):
    frame = SaddleFrame.from_spectrum(zero_diag_spectrum, BETA)
    # g'(0) = 2a - 1/c_beta
    h = 1e-7
    slope = (phase_g(h, frame) - phase_g(-h, frame)) / (2 * h)
    assert slope == pytest.approx(2 * frame.a - 1.0 / frame.c_beta, abs=1e-6)

"""Linear phase-insensitive amplifier channel on cat states.

Gain g rescales the Q-function argument by 1/g; for g > 1 the
P-function becomes a smooth sum of Gaussians whose width
sigma = sqrt((g^2 - 1) / 2) collapses to zero as g -> 1, degenerating
into the singular four-term representation.
"""

import math
from dataclasses import dataclass

import numpy as np

from .gendelta import delta_kernel
from .quasiprob import IMAG_RESIDUE_TOL, PTerm, p_cat_terms, q_function
from .states import coherent_overlap


def sigma_of_gain(g):
    """Gaussian width sqrt((g^2 - 1) / 2) of the amplified P-function."""
    if g < 1.0:
        raise ValueError(f"amplitude gain must be >= 1, got {g}")
    return math.sqrt((g * g - 1.0) / 2.0)


@dataclass(frozen=True)
class AmplifierGain:
    """Amplitude gain g >= 1.  Power gain never appears in this interface."""

    g: float

    def __post_init__(self):
        if self.g < 1.0:
            raise ValueError(f"amplitude gain must be >= 1, got {self.g}")

    @property
    def sigma(self):
        return sigma_of_gain(self.g)


def amplify_q(spec, gain, alpha):
    """Q-function after amplification: (1/g^2) Q_in(alpha / g)."""
    g = gain.g
    return q_function(spec, np.asarray(alpha, dtype=complex) / g) / (g * g)


def _amplified_p_term(kappa, beta, gamma, g, alpha):
    """One Gaussian term of the amplified P-function:

        kappa <beta|gamma> / (pi (g^2 - 1)) *
            e^{-(|alpha|^2 + g^2 conj(beta) gamma
                 - g (conj(beta) alpha + conj(alpha) gamma)) / (g^2 - 1)}.
    """
    alpha = np.asarray(alpha, dtype=complex)
    bc = np.conj(beta)
    g_sq_m1 = g * g - 1.0
    expo = -(np.abs(alpha) ** 2 + g * g * bc * gamma
             - g * (bc * alpha + np.conj(alpha) * gamma)) / g_sq_m1
    return kappa * coherent_overlap(beta, gamma) * np.exp(expo) / (math.pi * g_sq_m1)


def amplified_p(spec, gain, alpha):
    """Smooth P-function of the amplified cat state (g > 1 strictly).

    The four Gaussian terms are individually complex; only their
    Hermitian sum is real, and the imaginary residue is asserted below
    1e-12 before being discarded.
    """
    g = gain.g
    if g <= 1.0:
        raise ValueError(
            "P-function is singular at g = 1; use p_cat_terms / p_regularized_eval "
            "for the unamplified representation")
    a_sq = spec.norm_A ** 2
    z = spec.zeta
    total = (_amplified_p_term(a_sq, spec.alpha1, spec.alpha1, g, alpha)
             + _amplified_p_term(a_sq * abs(z) ** 2, spec.alpha2, spec.alpha2, g, alpha)
             + _amplified_p_term(a_sq * z, spec.alpha1, spec.alpha2, g, alpha)
             + _amplified_p_term(a_sq * np.conj(z), spec.alpha2, spec.alpha1, g, alpha))
    residue = float(np.max(np.abs(np.imag(total))))
    if residue > IMAG_RESIDUE_TOL:
        raise AssertionError(
            f"amplified P imaginary residue {residue:.3e} > {IMAG_RESIDUE_TOL}")
    out = np.real(total)
    return out if out.shape else float(out)


def amplified_p_factored(term, gain, alpha):
    """Two-Gaussian factorization of one amplified P-function term:

        kappa <beta|gamma> * kernel(alpha_r - g (conj(beta) + gamma) / 2, sigma)
                           * kernel(alpha_i - i g (conj(beta) - gamma) / 2, sigma)

    with sigma = sqrt((g^2 - 1) / 2).  Identical to the unfactored
    Gaussian form; as g -> 1 the centers approach the singular-limit
    centers of the term.
    """
    g = gain.g
    if g <= 1.0:
        raise ValueError("factored form requires g > 1; see amplified_p")
    sigma = gain.sigma
    alpha = np.asarray(alpha, dtype=complex)
    out = term.weight * (delta_kernel(alpha.real - g * term.center_r, sigma)
                         * delta_kernel(alpha.imag - g * term.center_i, sigma))
    return out if out.shape else complex(out)


def amplified_p_terms(spec, gain, alpha):
    """Per-term amplified P values in the order of p_cat_terms(spec)."""
    g = gain.g
    return [_amplified_p_term(t.kappa, t.beta, t.gamma, g, alpha)
            for t in p_cat_terms(spec).terms]

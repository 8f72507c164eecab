"""Coherent states, Schrodinger cat states, and truncated Fock-basis
density matrices.
"""

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .numerics import log_factorial

TAIL_MASS_WARN = 1e-10


def coherent_overlap(alpha, beta):
    """Overlap <alpha|beta> = exp(-(|alpha|^2 + |beta|^2 - 2 conj(alpha) beta) / 2)."""
    return np.exp(-0.5 * (abs(alpha) ** 2 + abs(beta) ** 2 - 2.0 * np.conj(alpha) * beta))


def cat_normalization(alpha1, alpha2, zeta):
    """Normalization A of the two-component superposition |a1> + zeta |a2>.

    A = [1 + |zeta|^2 + 2 Re(zeta <a1|a2>)]^(-1/2).  Raises for the
    degenerate case where the normalizer is not positive (e.g. zeta = -1
    with alpha2 = alpha1).
    """
    norm_sq = 1.0 + abs(zeta) ** 2 + 2.0 * (zeta * coherent_overlap(alpha1, alpha2)).real
    if norm_sq <= 0 or not math.isfinite(norm_sq):
        raise ValueError(
            f"degenerate cat state: <psi|psi> proportional to {norm_sq}, cannot normalize")
    return 1.0 / math.sqrt(norm_sq)


@dataclass(frozen=True)
class CatStateSpec:
    """Two coherent amplitudes plus a relative coefficient; the
    normalization constant is derived and cached at construction.
    """

    alpha1: complex
    alpha2: complex
    zeta: complex
    norm_A: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "norm_A",
                           cat_normalization(self.alpha1, self.alpha2, self.zeta))


def recommended_n_max(spec_or_alpha):
    """Truncation heuristic n_max >= |a|^2 + 6|a| + 10 for the largest amplitude."""
    if isinstance(spec_or_alpha, CatStateSpec):
        a = max(abs(spec_or_alpha.alpha1), abs(spec_or_alpha.alpha2))
    else:
        a = abs(spec_or_alpha)
    return int(math.ceil(a * a + 6.0 * a + 10.0))


def coherent_fock_coeffs(alpha, n_max):
    """Number-basis coefficients c_n = e^{-|a|^2/2} a^n / sqrt(n!) for n = 0..n_max.

    Warns when the neglected Poisson tail mass exceeds 1e-10.
    """
    n = np.arange(n_max + 1)
    log_fact = np.array([log_factorial(k) for k in n])
    mag = abs(alpha)
    if mag == 0.0:
        c = np.zeros(n_max + 1, dtype=complex)
        c[0] = 1.0
        return c
    # log-magnitude accumulation keeps alpha^n / sqrt(n!) finite up to n_max = 64
    log_mag = -0.5 * mag * mag + n * math.log(mag) - 0.5 * log_fact
    phase = np.exp(1j * n * np.angle(complex(alpha)))
    c = np.exp(log_mag) * phase
    tail = 1.0 - float(np.sum(np.abs(c) ** 2))
    if tail > TAIL_MASS_WARN:
        warnings.warn(
            f"Fock truncation n_max = {n_max} leaves tail mass {tail:.3e} "
            f"for |alpha| = {mag:.3f}", stacklevel=2)
    return c


@dataclass(frozen=True)
class FockDensityMatrix:
    """Truncated number-basis density matrix; entries[j, k] multiplies |j><k|."""

    n_max: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        expected = (self.n_max + 1, self.n_max + 1)
        if entries.shape != expected:
            raise ValueError(f"entries shape {entries.shape} != {expected}")
        object.__setattr__(self, "entries", entries)

    def trace(self):
        return complex(np.trace(self.entries)).real

    def hermiticity_defect(self):
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def to_json(self):
        pairs = [[v.real, v.imag] for v in self.entries.ravel()]
        return json.dumps({"n_max": self.n_max, "entries": pairs})

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        n = data["n_max"]
        flat = np.array([complex(re, im) for re, im in data["entries"]])
        return cls(n_max=n, entries=flat.reshape(n + 1, n + 1))


def cat_density_matrix(spec, n_max):
    """Density matrix of the cat state in the truncated number basis.

    rho = A^2 (|a1><a1| + |z|^2 |a2><a2| + z |a2><a1| + conj(z) |a1><a2|),
    assembled from outer products of coherent-state coefficient vectors.
    """
    c1 = coherent_fock_coeffs(spec.alpha1, n_max)
    c2 = coherent_fock_coeffs(spec.alpha2, n_max)
    a_sq = spec.norm_A ** 2
    z = spec.zeta
    rho = a_sq * (np.outer(c1, c1.conj())
                  + abs(z) ** 2 * np.outer(c2, c2.conj())
                  + z * np.outer(c2, c1.conj())
                  + np.conj(z) * np.outer(c1, c2.conj()))
    return FockDensityMatrix(n_max=n_max, entries=rho)

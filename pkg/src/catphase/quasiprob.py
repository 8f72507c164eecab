"""Quasiprobability distributions of cat states: Q-function, Wigner
function, the four-term Glauber-Sudarshan representation, and the
Gaussian-convolution transforms between them.

Convention: the coherent amplitude relates to the quadratures by
alpha = (x + i p) / sqrt(2).  Every cross-representation comparison in
the package goes through `alpha_from_xp` / `xp_from_alpha` so the sqrt(2)
appears in exactly one place.
"""

import io
import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .gendelta import delta_kernel
from .numerics import hermite_poly, log_factorial
from .states import CatStateSpec, coherent_overlap

IMAG_RESIDUE_TOL = 1e-12


def alpha_from_xp(x, p):
    return (x + 1j * p) / math.sqrt(2.0)


def xp_from_alpha(alpha):
    alpha = np.asarray(alpha, dtype=complex)
    return math.sqrt(2.0) * alpha.real, math.sqrt(2.0) * alpha.imag


@dataclass(frozen=True)
class PTerm:
    """One |gamma><beta| component of a density operator, weight kappa.

    The generalized-delta centers of the corresponding P-representation
    term are (conj(beta) + gamma) / 2 on the real-part axis and
    i (conj(beta) - gamma) / 2 on the imaginary-part axis; both are real
    exactly when beta = gamma (the diagonal case).
    """

    kappa: complex
    beta: complex
    gamma: complex

    @property
    def is_diagonal(self):
        return bool(np.isclose(self.beta, self.gamma, rtol=0.0, atol=1e-14))

    @property
    def kind(self):
        return "diagonal" if self.is_diagonal else "off_diagonal"

    @property
    def center_r(self):
        return (np.conj(self.beta) + self.gamma) / 2.0

    @property
    def center_i(self):
        return 1j * (np.conj(self.beta) - self.gamma) / 2.0

    @property
    def weight(self):
        """kappa <beta|gamma>, the coefficient carried into the P-function."""
        return self.kappa * coherent_overlap(self.beta, self.gamma)


@dataclass(frozen=True)
class PRepresentation:
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))


def p_cat_terms(spec):
    """Four-term P-representation of a cat state.

    Diagonal weights A^2 and A^2 |zeta|^2 sit at the two amplitudes; the
    conjugate pair of off-diagonal terms carries A^2 zeta and
    A^2 conj(zeta) with complex centers.
    """
    a_sq = spec.norm_A ** 2
    z = spec.zeta
    terms = (
        PTerm(kappa=a_sq, beta=spec.alpha1, gamma=spec.alpha1),
        PTerm(kappa=a_sq * abs(z) ** 2, beta=spec.alpha2, gamma=spec.alpha2),
        PTerm(kappa=a_sq * z, beta=spec.alpha1, gamma=spec.alpha2),
        PTerm(kappa=a_sq * np.conj(z), beta=spec.alpha2, gamma=spec.alpha1),
    )
    # zeta = 0 collapses the state to a single coherent projector
    return PRepresentation(terms=tuple(t for t in terms if t.kappa != 0))


def _q_term(kappa, beta, gamma, alpha):
    """General Q-function term (kappa / pi) <beta|gamma>
    e^{-(|alpha|^2 + conj(beta) gamma - (conj(beta) alpha + conj(alpha) gamma))}."""
    alpha = np.asarray(alpha, dtype=complex)
    bc = np.conj(beta)
    expo = -(np.abs(alpha) ** 2 + bc * gamma - (bc * alpha + np.conj(alpha) * gamma))
    return kappa * coherent_overlap(beta, gamma) * np.exp(expo) / math.pi


def q_function(spec, alpha):
    """Husimi Q-function (1/pi) <alpha|rho|alpha> of a cat state.

    Accepts a complex scalar or array; the result is real and
    nonnegative (the four-term sum's imaginary residue is asserted below
    1e-12 and discarded).
    """
    a_sq = spec.norm_A ** 2
    z = spec.zeta
    total = (_q_term(a_sq, spec.alpha1, spec.alpha1, alpha)
             + _q_term(a_sq * abs(z) ** 2, spec.alpha2, spec.alpha2, alpha)
             + _q_term(a_sq * z, spec.alpha1, spec.alpha2, alpha)
             + _q_term(a_sq * np.conj(z), spec.alpha2, spec.alpha1, alpha))
    residue = float(np.max(np.abs(np.imag(total))))
    if residue > IMAG_RESIDUE_TOL:
        raise AssertionError(f"Q-function imaginary residue {residue:.3e} > {IMAG_RESIDUE_TOL}")
    out = np.real(total)
    return out if out.shape else float(out)


def q_fourier_term(term, xi):
    """Fourier transform of one Q-function term at conjugate variable xi:

        kappa <beta|gamma> e^{-|xi|^2/4}
            e^{-i (conj(beta) + gamma) xi_r / 2} e^{(conj(beta) - gamma) xi_i / 2}.
    """
    xi = np.asarray(xi, dtype=complex)
    xr, xi_i = xi.real, xi.imag
    bc = np.conj(term.beta)
    out = (term.weight * np.exp(-np.abs(xi) ** 2 / 4.0)
           * np.exp(-0.5j * (bc + term.gamma) * xr)
           * np.exp(0.5 * (bc - term.gamma) * xi_i))
    return out if out.shape else complex(out)


def p_regularized_eval(rep, sigma, alpha):
    """Regularized P-function: each term contributes its weight times a
    product of two width-sigma kernels in the real and imaginary parts of
    alpha, centered at the term's (possibly complex) centers.  Complex-
    valued in general for off-diagonal terms.
    """
    alpha = np.asarray(alpha, dtype=complex)
    total = np.zeros(alpha.shape, dtype=complex)
    for term in rep.terms:
        total = total + term.weight * (
            delta_kernel(alpha.real - term.center_r, sigma)
            * delta_kernel(alpha.imag - term.center_i, sigma))
    return total if total.shape else complex(total)


# ---------------------------------------------------------------------------
# grids

_AXIS_SEMANTICS = ("alpha", "xp")


@dataclass
class Grid2D:
    """Uniformly sampled complex field over a rectangle.

    values[i, j] is the sample at (xs[i], ys[j]).  axis_semantics records
    whether the axes are (Re alpha, Im alpha) or the (x, p) quadratures.
    """

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int
    values: np.ndarray = None
    axis_semantics: str = "alpha"

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("nx and ny must be >= 2")
        if self.axis_semantics not in _AXIS_SEMANTICS:
            raise ValueError(f"axis_semantics must be one of {_AXIS_SEMANTICS}")
        if self.values is None:
            self.values = np.zeros((self.nx, self.ny), dtype=complex)
        else:
            self.values = np.asarray(self.values, dtype=complex)
            if self.values.shape != (self.nx, self.ny):
                raise ValueError(
                    f"values shape {self.values.shape} != {(self.nx, self.ny)}")

    @property
    def xs(self):
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def ys(self):
        return np.linspace(self.y_min, self.y_max, self.ny)

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def dy(self):
        return (self.y_max - self.y_min) / (self.ny - 1)

    def meshgrid(self):
        return np.meshgrid(self.xs, self.ys, indexing="ij")

    def like(self, values=None):
        return Grid2D(self.x_min, self.x_max, self.y_min, self.y_max,
                      self.nx, self.ny, values=values,
                      axis_semantics=self.axis_semantics)

    def fill(self, fn):
        """Evaluate fn on the meshgrid and store the result."""
        gx, gy = self.meshgrid()
        self.values = np.asarray(fn(gx, gy), dtype=complex)
        return self

    def integrate(self):
        """2D trapezoid integral of the field over the rectangle."""
        wx = _trap_weights_1d(self.nx, self.dx)
        wy = _trap_weights_1d(self.ny, self.dy)
        return complex(wx @ self.values @ wy)

    # -- serialization ------------------------------------------------------

    def to_csv(self, stream, meta=None):
        """Header `x,y,re,im`, one row per point, '#'-prefixed metadata lines."""
        close = False
        if isinstance(stream, (str, bytes)):
            stream = open(stream, "w")
            close = True
        try:
            for line in (meta or []):
                stream.write(f"# {line}\n")
            stream.write("x,y,re,im\n")
            xs, ys = self.xs, self.ys
            for i in range(self.nx):
                for j in range(self.ny):
                    v = self.values[i, j]
                    stream.write(f"{float(xs[i])!r},{float(ys[j])!r},"
                                 f"{float(v.real)!r},{float(v.imag)!r}\n")
        finally:
            if close:
                stream.close()

    @classmethod
    def from_csv(cls, stream, axis_semantics="alpha"):
        close = False
        if isinstance(stream, (str, bytes)):
            stream = open(stream)
            close = True
        try:
            rows = []
            for line in stream:
                line = line.strip()
                if not line or line.startswith("#") or line.startswith("x,"):
                    continue
                x, y, re, im = line.split(",")
                rows.append((float(x), float(y), float(re), float(im)))
        finally:
            if close:
                stream.close()
        xs = sorted({r[0] for r in rows})
        ys = sorted({r[1] for r in rows})
        grid = cls(xs[0], xs[-1], ys[0], ys[-1], len(xs), len(ys),
                   axis_semantics=axis_semantics)
        xi = {v: i for i, v in enumerate(xs)}
        yi = {v: i for i, v in enumerate(ys)}
        for x, y, re, im in rows:
            grid.values[xi[x], yi[y]] = complex(re, im)
        return grid

    def to_json(self, meta=None):
        return json.dumps({
            "meta": meta or {},
            "axes": {"x_min": self.x_min, "x_max": self.x_max,
                     "y_min": self.y_min, "y_max": self.y_max,
                     "semantics": self.axis_semantics},
            "nx": self.nx, "ny": self.ny,
            "values": [[v.real, v.imag] for v in self.values.ravel()],
        })

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        ax = data["axes"]
        flat = np.array([complex(re, im) for re, im in data["values"]])
        return cls(ax["x_min"], ax["x_max"], ax["y_min"], ax["y_max"],
                   data["nx"], data["ny"],
                   values=flat.reshape(data["nx"], data["ny"]),
                   axis_semantics=ax.get("semantics", "alpha"))


def _trap_weights_1d(n, h):
    w = np.full(n, h)
    w[0] = w[-1] = 0.5 * h
    return w


# ---------------------------------------------------------------------------
# Wigner functions

def fock_wavefunction(n, x):
    """Dimensionless position wavefunction of the n-photon state:
    pi^{-1/4} (2^n n!)^{-1/2} H_n(x) e^{-x^2/2}."""
    x = np.asarray(x, dtype=float)
    log_norm = -0.25 * math.log(math.pi) - 0.5 * (n * math.log(2.0) + log_factorial(n))
    return math.exp(log_norm) * np.real(hermite_poly(n, x)) * np.exp(-0.5 * x * x)


def wigner_fock(n, grid, q_halfwidth=10.0, q_nodes=2001):
    """Wigner function of the number state |n> on an (x, p) grid, by
    quadrature over the shift variable:

        W(x, p) = (1/pi) * integral of psi_n(x+q) psi_n(x-q) e^{-2 i p q} dq.
    """
    if grid.axis_semantics != "xp":
        raise ValueError("wigner_fock requires an XP-quadrature grid")
    reach = 2.0 * math.sqrt(n) + 4.0
    if max(abs(grid.x_min), grid.x_max) < reach or max(abs(grid.y_min), grid.y_max) < reach:
        warnings.warn(f"grid extent below the recommended |x|,|p| >= {reach:.2f} "
                      f"for n = {n}", stacklevel=2)
    q = np.linspace(-q_halfwidth, q_halfwidth, q_nodes)
    wq = _trap_weights_1d(q_nodes, q[1] - q[0])
    xs, ps = grid.xs, grid.ys
    # rows: integrand psi(x+q) psi(x-q) per x; columns contracted against e^{-2ipq}
    c = fock_wavefunction(n, xs[:, None] + q[None, :]) * \
        fock_wavefunction(n, xs[:, None] - q[None, :])
    phases = np.exp(-2j * np.outer(q, ps)) * wq[:, None]
    out = grid.like(values=(c @ phases) / math.pi)
    residue = float(np.max(np.abs(out.values.imag)))
    if residue > 1e-10:
        warnings.warn(f"Wigner imaginary residue {residue:.3e}; "
                      "quadrature window likely too small", stacklevel=2)
    return out


# ---------------------------------------------------------------------------
# Gaussian-convolution transforms

def _gaussian_convolve(src, out_grid, method="separable"):
    """(2/pi) * double integral of src(beta) e^{-2 |alpha - beta|^2} d2beta,
    sampled on out_grid.  The kernel is separable, so the trapezoid sum
    factors into two matrix products; the `direct` method performs the
    same sum without factoring and exists as a cross-check.
    """
    wx = _trap_weights_1d(src.nx, src.dx)
    wy = _trap_weights_1d(src.ny, src.dy)
    dx_out = np.subtract.outer(out_grid.xs, src.xs)
    dy_out = np.subtract.outer(out_grid.ys, src.ys)
    if method == "separable":
        kx = np.exp(-2.0 * dx_out ** 2) * wx[None, :]
        ky = np.exp(-2.0 * dy_out ** 2) * wy[None, :]
        vals = (2.0 / math.pi) * (kx @ src.values @ ky.T)
    elif method == "direct":
        weighted = src.values * np.outer(wx, wy)
        vals = np.empty((out_grid.nx, out_grid.ny), dtype=complex)
        for i in range(out_grid.nx):
            for j in range(out_grid.ny):
                kern = np.exp(-2.0 * (dx_out[i][:, None] ** 2 + dy_out[j][None, :] ** 2))
                vals[i, j] = (2.0 / math.pi) * np.sum(weighted * kern)
    else:
        raise ValueError(f"unknown method {method!r}")
    return out_grid.like(values=vals)


def p_representation_grid(rep, sigma, grid):
    """Sample the regularized P-function of `rep` on an alpha-plane grid,
    warning when sigma is too small for the grid spacing to resolve."""
    if sigma < 2.0 * max(grid.dx, grid.dy):
        warnings.warn(f"P width sigma = {sigma} below 2 grid spacings "
                      f"({grid.dx:.3g}, {grid.dy:.3g}); field is aliased", stacklevel=2)
    gx, gy = grid.meshgrid()
    return grid.like(values=p_regularized_eval(rep, sigma, gx + 1j * gy))


def wigner_from_p(p_field, grid, sigma=None, method="separable"):
    """Wigner function from a smooth P field by Gaussian convolution.

    `p_field` is either a sampled Grid2D or a PRepresentation, in which
    case `sigma` must give the regularization width used to sample it.
    """
    if isinstance(p_field, PRepresentation):
        if sigma is None:
            raise ValueError("sigma is required when converting a PRepresentation")
        p_field = p_representation_grid(p_field, sigma, grid)
    return _gaussian_convolve(p_field, grid, method=method)


def q_from_wigner(w_field, grid, method="separable"):
    """Q-function from a Wigner field by the same Gaussian convolution."""
    return _gaussian_convolve(w_field, grid, method=method)

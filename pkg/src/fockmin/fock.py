"""Coefficient-space core: states, conserved quantities, quartic energy,
symmetry actions and the catalog of closed-form stationary waves.

A state is a finite expansion u = sum_n a_n phi_n over the orthonormal
basis phi_n(z) = z^n e^{-|z|^2/2} / sqrt(pi n!).  All functionals below
are evaluated directly on the coefficient sequence (a_0 .. a_N).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import eval_genlaguerre

from .errors import InvalidParameter, TruncationTooSmall

__all__ = [
    "FockCoefficients",
    "FunctionalReport",
    "PhiN",
    "PhiNAlpha",
    "PsiB",
    "EqualityFamily",
    "SemiclassicalPhi",
    "catalog_coefficients",
    "stationary_frequency",
    "mass",
    "angular_momentum",
    "magnetic_momentum",
    "hamiltonian",
    "functionals",
    "apply_phase",
    "apply_rotation",
    "apply_translation",
    "displacement_matrix",
    "carlen_gap",
    "save_coefficients",
    "load_coefficients",
]

# Tail-mass thresholds: catalog expansions must be essentially exact, while
# translation output only has to keep functional errors below test tolerances.
CATALOG_TAIL_TOL = 1e-14
TRANSLATION_TAIL_TOL = 1e-10


@dataclass(frozen=True)
class FockCoefficients:
    """Finite complex coefficient sequence (a_0 .. a_N)."""

    truncation: int
    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=complex)
        if arr.ndim != 1 or arr.shape[0] != self.truncation + 1:
            raise InvalidParameter(
                f"expected {self.truncation + 1} coefficients, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr.view(float))):
            raise InvalidParameter("coefficients must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    def padded(self, truncation: int) -> "FockCoefficients":
        """Re-embed into a larger truncation (headroom for translations)."""
        if truncation < self.truncation:
            raise InvalidParameter("padding cannot shrink the truncation")
        out = np.zeros(truncation + 1, dtype=complex)
        out[: self.truncation + 1] = self.coeffs
        return FockCoefficients(truncation, out)


# ---------------------------------------------------------------------------
# Quartic energy kernel
# ---------------------------------------------------------------------------


class EnergyKernel:
    """Precomputed index/weight tables for the quartic sum at truncation N.

    The interaction energy is (1/8pi) * sum_j |ct_j|^2 with
    ct_j = sum_k w_{jk} a_k a_{j-k} and w_{jk} = sqrt(C(j,k)/2^j) <= 1,
    so no factorial is ever formed: only binomial ratios appear, which keeps
    every intermediate in floating range for any practical truncation.
    """

    def __init__(self, truncation: int):
        self.truncation = truncation
        n = truncation + 1
        j_ids, k_ids, weights = [], [], []
        for j in range(2 * truncation + 1):
            lo = max(0, j - truncation)
            hi = min(j, truncation)
            for k in range(lo, hi + 1):
                j_ids.append(j)
                k_ids.append(k)
                # int/int true division is correctly rounded at any size
                weights.append(math.sqrt(math.comb(j, k) / (1 << j)))
        self.j_ids = np.array(j_ids, dtype=np.intp)
        self.k_ids = np.array(k_ids, dtype=np.intp)
        self.l_ids = self.j_ids - self.k_ids  # j - k
        self.weights = np.array(weights)
        self.n_j = 2 * truncation + 1
        self.n_modes = n
        self.mode_index = np.arange(n, dtype=float)

    def convolution(self, a: np.ndarray) -> np.ndarray:
        """The weighted self-convolution ct_j for all j."""
        vals = self.weights * (a[self.k_ids] * a[self.l_ids])
        re = np.bincount(self.j_ids, weights=vals.real, minlength=self.n_j)
        im = np.bincount(self.j_ids, weights=vals.imag, minlength=self.n_j)
        return re + 1j * im

    def interaction(self, a: np.ndarray) -> float:
        """8*pi*H: the quartic part of the energy."""
        ct = self.convolution(a)
        return float(np.sum(ct.real**2 + ct.imag**2))

    def value(self, a: np.ndarray, mu: float) -> float:
        p = float(np.sum(self.mode_index * (a.real**2 + a.imag**2)))
        return self.interaction(a) + mu * p

    def value_and_gradient(self, a: np.ndarray, mu: float):
        """Energy and Wirtinger gradient d/dRe + i d/dIm at a."""
        ct = self.convolution(a)
        energy = float(np.sum(ct.real**2 + ct.imag**2))
        p = float(np.sum(self.mode_index * (a.real**2 + a.imag**2)))
        energy += mu * p
        vals = 4.0 * self.weights * ct[self.j_ids] * np.conj(a[self.l_ids])
        g_re = np.bincount(self.k_ids, weights=vals.real, minlength=self.n_modes)
        g_im = np.bincount(self.k_ids, weights=vals.imag, minlength=self.n_modes)
        grad = g_re + 1j * g_im
        grad += 2.0 * mu * self.mode_index * a
        return energy, grad


@lru_cache(maxsize=16)
def energy_kernel(truncation: int) -> EnergyKernel:
    return EnergyKernel(truncation)


# ---------------------------------------------------------------------------
# Conserved and derived functionals
# ---------------------------------------------------------------------------


def mass(u: FockCoefficients) -> float:
    a = u.coeffs
    return float(np.sum(a.real**2 + a.imag**2))


def angular_momentum(u: FockCoefficients) -> float:
    a = u.coeffs
    n = np.arange(a.shape[0], dtype=float)
    return float(np.sum(n * (a.real**2 + a.imag**2)))


def magnetic_momentum(u: FockCoefficients) -> complex:
    a = u.coeffs
    if a.shape[0] < 2:
        return 0j
    n = np.arange(a.shape[0] - 1, dtype=float)
    return complex(np.sum(np.sqrt(n + 1.0) * a[:-1] * np.conj(a[1:])))


def hamiltonian(u: FockCoefficients) -> float:
    """Quartic interaction energy H = (1/4) integral |u|^4."""
    return energy_kernel(u.truncation).interaction(u.coeffs) / (8.0 * math.pi)


@dataclass(frozen=True)
class FunctionalReport:
    """All conserved and derived functionals of one state at one mu."""

    mu: float
    M: float
    P: float
    Q: complex
    H: float
    B: float
    E: float
    G: float
    F: float


def functionals(u: FockCoefficients, mu: float) -> FunctionalReport:
    m = mass(u)
    p = angular_momentum(u)
    q = magnetic_momentum(u)
    h = hamiltonian(u)
    q2 = abs(q) ** 2
    b = 4.0 * math.pi * h + 0.25 * (m * p - q2) - 0.5 * m * m
    e = b + 0.25 * q2
    g = 8.0 * math.pi * h + mu * p
    f = 8.0 * math.pi * h + m * (mu * p - m)
    return FunctionalReport(mu=mu, M=m, P=p, Q=q, H=h, B=b, E=e, G=g, F=f)


# ---------------------------------------------------------------------------
# Symmetry actions
# ---------------------------------------------------------------------------


def apply_phase(u: FockCoefficients, gamma: float) -> FockCoefficients:
    return FockCoefficients(u.truncation, np.exp(1j * gamma) * u.coeffs)


def apply_rotation(u: FockCoefficients, theta: float) -> FockCoefficients:
    n = np.arange(u.truncation + 1, dtype=float)
    return FockCoefficients(u.truncation, np.exp(1j * theta * n) * u.coeffs)


def displacement_matrix(alpha: complex, size: int) -> np.ndarray:
    """Matrix of the magnetic translation by alpha on the first `size` modes.

    The translation u(z) -> u(z+alpha) e^{(zbar*alpha - z*alphabar)/2} acts on
    basis coefficients as the unitary displacement with parameter -conj(alpha);
    entries involve generalized Laguerre polynomials.  Entries are exact matrix
    elements of the infinite operator, so truncation loss shows up only as a
    mass defect of the output.
    """
    beta = -np.conj(alpha)
    x = abs(beta) ** 2
    pref = math.exp(-0.5 * x)
    log_fact = np.zeros(size)
    for n in range(1, size):
        log_fact[n] = log_fact[n - 1] + math.log(n)
    out = np.zeros((size, size), dtype=complex)
    for m in range(size):
        for n in range(size):
            d = m - n
            if d >= 0:
                ratio = math.exp(0.5 * (log_fact[n] - log_fact[m]))
                out[m, n] = ratio * beta**d * pref * eval_genlaguerre(n, d, x)
            else:
                ratio = math.exp(0.5 * (log_fact[m] - log_fact[n]))
                out[m, n] = (
                    ratio * (-np.conj(beta)) ** (-d) * pref * eval_genlaguerre(m, -d, x)
                )
    return out


def apply_translation(
    u: FockCoefficients, alpha: complex, *, tail_tol: float = TRANSLATION_TAIL_TOL
) -> FockCoefficients:
    """Magnetic translation by alpha; errors out without truncation headroom."""
    d = displacement_matrix(alpha, u.truncation + 1)
    out = d @ u.coeffs
    m_in = mass(u)
    m_out = float(np.sum(out.real**2 + out.imag**2))
    if m_in > 0 and (m_in - m_out) > tail_tol * m_in:
        raise TruncationTooSmall(
            f"translation by {alpha} loses mass {m_in - m_out:.3e} "
            f"(tolerance {tail_tol:.1e}); pad the input first"
        )
    return FockCoefficients(u.truncation, out)


# ---------------------------------------------------------------------------
# Embedding constants (Carlen)
# ---------------------------------------------------------------------------


def _log_norm_p(n: int, p: float) -> float:
    """log of the L^p norm of phi_n, from the closed radial integral:
    ||phi_n||_p^p = (pi n!)^{-p/2} * pi * (2/p)^{n p/2 + 1} * Gamma(n p/2 + 1).
    """
    log_pp = (
        -0.5 * p * (math.log(math.pi) + math.lgamma(n + 1))
        + math.log(math.pi)
        + (0.5 * n * p + 1.0) * math.log(2.0 / p)
        + math.lgamma(0.5 * n * p + 1.0)
    )
    return log_pp / p


def carlen_gap(n: int, p: float, q: float) -> float:
    """Slack in the sharp holomorphic L^p -> L^q embedding for phi_n.

    Returns (p/2pi)^{1/p} ||phi_n||_p - (q/2pi)^{1/q} ||phi_n||_q, which is
    non-negative whenever 1 <= p <= q.
    """
    if n < 0:
        raise InvalidParameter("n must be a non-negative integer")
    if p < 1.0 or q < p:
        raise InvalidParameter("need 1 <= p <= q")
    left = math.exp(math.log(p / (2.0 * math.pi)) / p + _log_norm_p(n, p))
    right = math.exp(math.log(q / (2.0 * math.pi)) / q + _log_norm_p(n, q))
    return left - right


# ---------------------------------------------------------------------------
# Stationary-wave catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhiN:
    """Basis element phi_n."""

    n: int


@dataclass(frozen=True)
class PhiNAlpha:
    """Magnetically translated basis element."""

    n: int
    alpha: complex


@dataclass(frozen=True)
class PsiB:
    """One-parameter family with a single off-center zero, b >= 0."""

    b: float


@dataclass(frozen=True)
class EqualityFamily:
    """(a0 phi_0 + a1 phi_1) e^{c z}: the exact null family of the quartic form."""

    a0: complex
    a1: complex
    c: complex


@dataclass(frozen=True)
class SemiclassicalPhi:
    """phi_k in semiclassical coordinates, k in {0, 1}, 0 < h < 1."""

    k: int
    h: float


WaveSpec = PhiN | PhiNAlpha | PsiB | EqualityFamily | SemiclassicalPhi


def stationary_frequency(spec: PhiN) -> float:
    """Rotation frequency of the stationary wave phi_n."""
    n = spec.n
    return math.comb(2 * n, n) / (math.pi * 2.0 ** (2 * n + 1))


def _psi_b_coefficients(b: float, truncation: int) -> np.ndarray:
    gam = b / (1.0 + b * b)
    bet = b * (2.0 + b * b) / (1.0 + b * b)
    pref = math.exp(-0.5 * gam * gam) / math.sqrt(math.pi * (1.0 + b * b))
    out = np.zeros(truncation + 1, dtype=complex)
    out[0] = -math.sqrt(math.pi) * pref * bet
    # sqrt(pi n!) * (gam^{n-1}/(n-1)! - bet*gam^n/n!) with ratios kept incremental
    gam_pow_over_fact = 1.0  # gam^{n-1}/(n-1)!
    sqrt_fact = 1.0  # sqrt(n!)
    for n in range(1, truncation + 1):
        sqrt_fact *= math.sqrt(n)
        term = gam_pow_over_fact * (1.0 - bet * gam / n)
        out[n] = math.sqrt(math.pi) * pref * sqrt_fact * term
        gam_pow_over_fact *= gam / n
    return out


def _equality_family_coefficients(
    a0: complex, a1: complex, c: complex, truncation: int
) -> np.ndarray:
    out = np.zeros(truncation + 1, dtype=complex)
    out[0] = a0
    c_pow_over_fact = 1.0 + 0j  # c^{n-1}/(n-1)!
    sqrt_fact = 1.0
    for n in range(1, truncation + 1):
        sqrt_fact *= math.sqrt(n)
        out[n] = sqrt_fact * (a0 * c_pow_over_fact * c / n + a1 * c_pow_over_fact)
        c_pow_over_fact *= c / n
    return out


def catalog_coefficients(spec: WaveSpec, truncation: int) -> FockCoefficients:
    """Expand a catalog wave in the basis, verifying the tail is negligible."""
    if truncation < 0:
        raise InvalidParameter("truncation must be non-negative")
    if isinstance(spec, PhiN):
        if spec.n < 0:
            raise InvalidParameter("basis index must be non-negative")
        if spec.n > truncation:
            raise TruncationTooSmall(f"phi_{spec.n} needs truncation >= {spec.n}")
        out = np.zeros(truncation + 1, dtype=complex)
        out[spec.n] = 1.0
        return FockCoefficients(truncation, out)
    if isinstance(spec, SemiclassicalPhi):
        if spec.k not in (0, 1):
            raise InvalidParameter("semiclassical index must be 0 or 1")
        if not 0.0 < spec.h < 1.0:
            raise InvalidParameter("semiclassical parameter must lie in (0, 1)")
        return catalog_coefficients(PhiN(spec.k), truncation)
    if isinstance(spec, PhiNAlpha):
        if spec.n < 0:
            raise InvalidParameter("basis index must be non-negative")
        base = catalog_coefficients(PhiN(spec.n), truncation)
        d = displacement_matrix(-np.conj(spec.alpha), truncation + 1)
        out = d @ base.coeffs
        defect = 1.0 - float(np.sum(out.real**2 + out.imag**2))
        if defect > CATALOG_TAIL_TOL:
            raise TruncationTooSmall(
                f"translated phi_{spec.n} tail mass {defect:.3e} exceeds "
                f"{CATALOG_TAIL_TOL:.1e} at truncation {truncation}"
            )
        return FockCoefficients(truncation, out)
    if isinstance(spec, PsiB):
        if spec.b < 0:
            raise InvalidParameter("the zero-offset parameter b must be >= 0")
        out = _psi_b_coefficients(spec.b, truncation)
        defect = abs(1.0 - float(np.sum(out.real**2 + out.imag**2)))
        if defect > CATALOG_TAIL_TOL:
            raise TruncationTooSmall(
                f"psi_b tail mass {defect:.3e} exceeds {CATALOG_TAIL_TOL:.1e} "
                f"at truncation {truncation}"
            )
        return FockCoefficients(truncation, out)
    if isinstance(spec, EqualityFamily):
        probe = _equality_family_coefficients(
            spec.a0, spec.a1, spec.c, truncation + 16
        )
        total = float(np.sum(probe.real**2 + probe.imag**2))
        tail = float(
            np.sum(probe[truncation + 1 :].real ** 2 + probe[truncation + 1 :].imag ** 2)
        )
        if total > 0 and tail > CATALOG_TAIL_TOL * total:
            raise TruncationTooSmall(
                f"equality-family tail mass {tail / total:.3e} exceeds "
                f"{CATALOG_TAIL_TOL:.1e} at truncation {truncation}"
            )
        return FockCoefficients(truncation, probe[: truncation + 1])
    raise InvalidParameter(f"unknown wave spec {spec!r}")


# ---------------------------------------------------------------------------
# Coefficient file format
# ---------------------------------------------------------------------------


def save_coefficients(u: FockCoefficients, path) -> None:
    payload = {
        "truncation": u.truncation,
        "coeffs": [[float(c.real), float(c.imag)] for c in u.coeffs],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_coefficients(path) -> FockCoefficients:
    with open(path) as fh:
        payload = json.load(fh)
    truncation = int(payload["truncation"])
    pairs = payload["coeffs"]
    if len(pairs) != truncation + 1:
        raise InvalidParameter(
            f"coefficient file declares truncation {truncation} but holds "
            f"{len(pairs)} entries"
        )
    coeffs = np.array([complex(re, im) for re, im in pairs])
    return FockCoefficients(truncation, coeffs)

"""Special functions for the cone-kernel series.

Everything here is self-contained (numpy only): real-order Bessel J,
Gegenbauer polynomials, log-gamma, and the phase profile
h1(mu) = sqrt(1 - mu^2) - mu*arccos(mu) together with its derivative.

Bessel evaluation strategy
--------------------------
* ``x <= max(12, nu/2)``: ascending power series, accumulated in
  double-double arithmetic so the alternating-series cancellation near
  x ~ 12 costs no accuracy.
* otherwise: the real-order integral representation

      J_nu(x) = (1/pi) * int_0^pi cos(nu*t - x*sin t) dt
                - (sin(nu*pi)/pi) * int_0^inf exp(-nu*t - x*sinh t) dt

  with composite 16-point Gauss-Legendre panels.  Oscillatory panels are
  sized so each carries at most ~two oscillations of the integrand; the
  phase nu*t - x*sin t is assembled in double-double and range-reduced
  mod 2*pi so large arguments lose no phase accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._compensated import (
    TWO_PI_HI,
    TWO_PI_LO,
    dd_add,
    dd_div,
    dd_mul,
    two_prod,
    two_sum,
)
from .errors import DomainError, PrecisionError

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "bessel_j",
    "bessel_j_many",
    "gegenbauer_c",
    "gegenbauer_all",
    "log_gamma",
    "h1",
    "h1_prime",
    "acos_unit",
    "sinpi",
]


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative error targets for special-function evaluation."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10

    def __post_init__(self) -> None:
        for name in ("abs_tol", "rel_tol"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be a positive finite number, got {v!r}")


DEFAULT_TOL = Tolerance()

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)

# Use hardware extended precision for oscillatory phase assembly when the
# platform long double genuinely carries >= 63 mantissa bits; otherwise
# fall back to compensated double-double arithmetic.
_LONGDOUBLE_OK = float(np.finfo(np.longdouble).eps) <= 1.5e-19
_TWO_PI_LD = np.longdouble(TWO_PI_HI) + np.longdouble(TWO_PI_LO)

# Lanczos approximation, g = 7, 9 coefficients (double-precision classic).
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_LOG_SQRT_TWO_PI = 0.9189385332046727


def _check_finite(name: str, v) -> float:
    if not (isinstance(v, (int, float)) and math.isfinite(v)):
        raise DomainError(f"{name} must be a finite real number, got {v!r}")
    return float(v)


def log_gamma(z: float) -> float:
    """log Gamma(z) for real z > 0 (Lanczos, relative error ~1e-14)."""
    z = _check_finite("z", z)
    if z <= 0.0:
        raise DomainError(f"log_gamma requires z > 0, got {z}")
    if z < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z); 1-z >= 0.5
        return math.log(math.pi / math.sin(math.pi * z)) - log_gamma(1.0 - z)
    w = z - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i in range(1, 9):
        acc += _LANCZOS_COEFFS[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    return _LOG_SQRT_TWO_PI + (w + 0.5) * math.log(t) - t + math.log(acc)


def acos_unit(mu: float) -> float:
    """arccos on [0, 1] (range [0, pi/2]), stable against cancellation
    near mu = 1 via 2*asin(sqrt((1-mu)/2))."""
    mu = _check_finite("mu", mu)
    if not 0.0 <= mu <= 1.0:
        raise DomainError(f"acos_unit requires mu in [0, 1], got {mu}")
    return 2.0 * math.asin(math.sqrt(0.5 * (1.0 - mu)))


def h1(mu: float) -> float:
    """h1(mu) = sqrt(1 - mu^2) - mu*arccos(mu) on [0, 1].

    Strictly decreasing from h1(0) = 1 to h1(1) = 0.  Near mu = 1 the two
    terms cancel to O((1-mu)^{3/2}); there we switch to the series
    sin t - t cos t = sum_{j>=1} (-1)^{j+1} t^{2j+1} (2j)/(2j+1)!
    in t = arccos(mu).
    """
    mu = _check_finite("mu", mu)
    if not 0.0 <= mu <= 1.0:
        raise DomainError(f"h1 requires mu in [0, 1], got {mu}")
    t = acos_unit(mu)
    if t >= 0.5:
        return math.sqrt((1.0 - mu) * (1.0 + mu)) - mu * t
    tt = t * t
    s = 0.0
    pw = t * tt      # t^{2j+1} at j = 1
    fact = 6.0       # (2j+1)! at j = 1
    j = 1
    while True:
        term = pw * (2.0 * j) / fact
        s += term if j % 2 == 1 else -term
        if term <= 1e-18 * abs(s) + 5e-324:
            return s
        j += 1
        pw *= tt
        fact *= (2.0 * j) * (2.0 * j + 1.0)


def h1_prime(mu: float) -> float:
    """Derivative h1'(mu) = -arccos(mu) on [0, 1]."""
    return -acos_unit(mu)


def sinpi(nu: float) -> float:
    """sin(pi * nu), exact zero at integers and accurate for large nu."""
    r = math.remainder(nu, 2.0)  # exact, r in [-1, 1]
    if r == 0.0 or abs(r) == 1.0:
        return 0.0
    return math.sin(math.pi * r)


# ---------------------------------------------------------------------------
# Bessel J, power-series region
# ---------------------------------------------------------------------------

_SERIES_MAX_TERMS = 20000


def _bessel_series(nu: float, x: float, tol: Tolerance) -> float:
    # J_nu(x) = t0 * S, t0 = (x/2)^nu / Gamma(nu+1),
    # S = sum_k (-1)^k u_k with u_0 = 1, u_k = u_{k-1} * z / (k (nu+k)).
    h = 0.5 * x
    z = two_prod(h, h)
    u = (1.0, 0.0)
    s = (1.0, 0.0)
    u_max = 1.0
    k = 0
    while True:
        k += 1
        if k > _SERIES_MAX_TERMS:
            raise PrecisionError(
                f"power series for J_{nu}({x}) did not converge", math.inf
            )
        dk = float(k)
        a, ae = two_sum(nu, dk)
        den_hi, den_lo = two_prod(dk, a)
        den_lo += dk * ae
        u = dd_mul(u, z)
        u = dd_div(u, (den_hi, den_lo))
        if k % 2 == 1:
            s = dd_add(s, (-u[0], -u[1]))
        else:
            s = dd_add(s, u)
        au = abs(u[0])
        if au > u_max:
            u_max = au
        # safe stop: terms are decreasing once z < k (nu+k)
        if au <= 1e-34 * abs(s[0]) + 1e-320 and z[0] < dk * (nu + dk):
            break
    if nu == 0.0:
        t0 = 1.0
        expo = 0.0
    else:
        expo = nu * math.log(h) - log_gamma(nu + 1.0)
        t0 = math.exp(expo) if expo > -745.0 else 0.0
    val = t0 * (s[0] + s[1])
    # error model: double-double accumulation leaves ~2^-100 of the largest
    # term; the prefactor exp() costs ~(|expo|+4) ulps relative.
    achieved = t0 * u_max * 1e-30 + abs(val) * (abs(expo) + 4.0) * 2.3e-16
    if achieved > max(tol.abs_tol, tol.rel_tol * abs(val)):
        raise PrecisionError(
            f"J_{nu}({x}): achieved error bound {achieved:.3e} exceeds tolerance",
            achieved,
        )
    return val


# ---------------------------------------------------------------------------
# Bessel J, quadrature region (x > max(12, nu/2))
# ---------------------------------------------------------------------------

def _quad_achieved(x: float) -> float:
    # Irreducible phase noise: x*sin(theta) carries x*eps/2 of absolute
    # phase rounding; panel sums add a few ulps more.
    return x * 1.6e-16 + 5e-15


def _cos_sin_split(hi: np.ndarray, lo: np.ndarray):
    """cos/sin of an angle given as an unevaluated sum hi + lo with
    |lo| << 1: libm reduces hi exactly, the lo correction is linear."""
    c = np.cos(hi)
    s = np.sin(hi)
    return c - s * lo, s + c * lo


def _bessel_quad_batch(nus: np.ndarray, x: float, tol: Tolerance) -> np.ndarray:
    # Oscillatory part: (1/pi) int_0^pi cos(nu theta - x sin theta) dtheta
    # on uniform panels with 16-point Gauss-Legendre nodes, sized so each
    # panel sees at most ~2 oscillations.  Writing theta = c_p + h g_k and
    # expanding cos(nu c_p + nu h g_k - phi_pk) by angle addition turns the
    # (nu, panel, node) phase cube into trig on the (nu, panel) and
    # (nu, node) faces plus four (nu,panel)x(panel,node) matrix products.
    nu_max = float(np.max(nus))
    n_panels = max(4, int(math.ceil((nu_max + x) / 4.0)) + 2)
    width = math.pi / n_panels
    half = 0.5 * width
    centers = (np.arange(n_panels) + 0.5) * width  # (P,)
    offsets = half * _GL_NODES  # (16,)
    theta = centers[:, None] + offsets[None, :]  # (P, 16)
    if _LONGDOUBLE_OK:
        phi_ld = np.longdouble(x) * np.sin(theta.astype(np.longdouble))
        phi_hi = phi_ld.astype(np.float64)
        phi_lo = (phi_ld - phi_hi).astype(np.float64)
    else:
        phi_hi, phi_lo = two_prod(x, np.sin(theta))
    cos_phi, sin_phi = _cos_sin_split(phi_hi, phi_lo)
    weights = _GL_WEIGHTS * (half / math.pi)  # (16,)
    c_mat = cos_phi * weights[None, :]  # (P, 16)
    s_mat = sin_phi * weights[None, :]

    out = np.empty(nus.shape[0])
    chunk = max(1, int(2_000_000 / max(n_panels, 1)))
    for lo_i in range(0, nus.shape[0], chunk):
        nu_c = nus[lo_i : lo_i + chunk]
        a_hi, a_lo = two_prod(nu_c[:, None], centers[None, :])  # (m, P)
        cos_a, sin_a = _cos_sin_split(a_hi, a_lo)
        b_hi, b_lo = two_prod(nu_c[:, None], offsets[None, :])  # (m, 16)
        cos_b, sin_b = _cos_sin_split(b_hi, b_lo)
        m1 = cos_a @ c_mat + sin_a @ s_mat  # (m, 16)
        m2 = cos_a @ s_mat - sin_a @ c_mat
        out[lo_i : lo_i + chunk] = np.sum(cos_b * m1 + sin_b * m2, axis=1)

    sp = np.array([sinpi(float(v)) for v in nus])
    if np.any(sp != 0.0):
        # int_0^inf exp(-nu t - x sinh t) dt on dyadic panels of [0, T];
        # beyond T the integrand is below exp(-45).
        T = math.asinh(45.0 / x)
        n_dyadic = max(4, int(math.ceil(math.log2(x))) + 2)
        edges = [0.0] + [T * 2.0 ** (-j) for j in range(n_dyadic - 1, -1, -1)]
        t_nodes = []
        w_nodes = []
        for a, b in zip(edges[:-1], edges[1:]):
            hw = 0.5 * (b - a)
            t_nodes.append(0.5 * (a + b) + hw * _GL_NODES)
            w_nodes.append(hw * _GL_WEIGHTS)
        t_flat = np.concatenate(t_nodes)
        w_flat = np.concatenate(w_nodes)
        g = np.exp(-x * np.sinh(t_flat)) * w_flat
        with np.errstate(under="ignore"):
            for lo_i in range(0, nus.shape[0], 4096):
                nu_c = nus[lo_i : lo_i + 4096]
                second = np.exp(-np.outer(nu_c, t_flat)) @ g
                out[lo_i : lo_i + 4096] -= sp[lo_i : lo_i + 4096] * second / math.pi

    achieved = _quad_achieved(x)
    floor = np.maximum(tol.abs_tol, tol.rel_tol * np.abs(out))
    if np.any(achieved > floor):
        raise PrecisionError(
            f"J_nu({x}): achieved error bound {achieved:.3e} exceeds tolerance",
            achieved,
        )
    return out


def bessel_j(nu: float, x: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """Bessel function of the first kind, real order nu >= 0, x >= 0.

    Absolute error <= max(tol.abs_tol, tol.rel_tol * |J|); raises
    PrecisionError (carrying the achieved bound) when that cannot be met.
    """
    nu = _check_finite("nu", nu)
    x = _check_finite("x", x)
    if nu < 0.0:
        raise DomainError(f"bessel_j requires nu >= 0, got {nu}")
    if x < 0.0:
        raise DomainError(f"bessel_j requires x >= 0, got {x}")
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if x <= max(12.0, 0.5 * nu):
        return _bessel_series(nu, x, tol)
    return float(_bessel_quad_batch(np.array([nu]), x, tol)[0])


def bessel_j_many(nus: np.ndarray, x: float, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """J_nu(x) for an array of orders at one argument.

    Same per-order contract as bessel_j; orders in the quadrature region
    share one panel grid (sized by the largest order) so series evaluation
    over many orders stays O(total nodes).
    """
    x = _check_finite("x", x)
    if x < 0.0:
        raise DomainError(f"bessel_j_many requires x >= 0, got {x}")
    nus = np.asarray(nus, dtype=float)
    if nus.ndim != 1 or nus.shape[0] == 0:
        raise DomainError("bessel_j_many requires a nonempty 1-d array of orders")
    if not np.all(np.isfinite(nus)) or np.any(nus < 0.0):
        raise DomainError("bessel_j_many requires finite orders >= 0")
    out = np.empty(nus.shape[0])
    if x == 0.0:
        out[:] = np.where(nus == 0.0, 1.0, 0.0)
        return out
    quad_mask = x > np.maximum(12.0, 0.5 * nus)
    for i in np.nonzero(~quad_mask)[0]:
        out[i] = _bessel_series(float(nus[i]), x, tol)
    if np.any(quad_mask):
        out[quad_mask] = _bessel_quad_batch(nus[quad_mask], x, tol)
    return out


# ---------------------------------------------------------------------------
# Gegenbauer polynomials
# ---------------------------------------------------------------------------

def _check_gegenbauer_args(m: int, d: float, t: float) -> tuple[int, float, float]:
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 0:
        raise DomainError(f"Gegenbauer degree must be a nonnegative integer, got {m!r}")
    d = _check_finite("d", d)
    if d <= 0.0:
        raise DomainError(f"Gegenbauer weight d must be positive, got {d}")
    if d > 10.0:
        # C_m^d(1) ~ m^{2d-1}/Gamma(2d): beyond d = 10 the endpoint values
        # overflow doubles long before useful degrees.
        raise DomainError(f"Gegenbauer weight d must be <= 10, got {d}")
    t = _check_finite("t", t)
    if not -1.0 <= t <= 1.0:
        raise DomainError(f"Gegenbauer argument must lie in [-1, 1], got {t}")
    return int(m), d, t


def gegenbauer_c(m: int, d: float, t: float) -> float:
    """Gegenbauer polynomial C_m^d(t) by the three-term recurrence
    m C_m = 2 t (m+d-1) C_{m-1} - (m+2d-2) C_{m-2}."""
    m, d, t = _check_gegenbauer_args(m, d, t)
    if m == 0:
        return 1.0
    c_prev = 1.0
    c_cur = 2.0 * d * t
    for j in range(2, m + 1):
        c_prev, c_cur = c_cur, (
            2.0 * t * (j + d - 1.0) * c_cur - (j + 2.0 * d - 2.0) * c_prev
        ) / j
    return c_cur


def gegenbauer_all(m_max: int, d: float, t: float) -> np.ndarray:
    """C_m^d(t) for m = 0..m_max as one array (single recurrence pass)."""
    m_max, d, t = _check_gegenbauer_args(m_max, d, t)
    out = np.empty(m_max + 1)
    out[0] = 1.0
    if m_max == 0:
        return out
    out[1] = 2.0 * d * t
    c_prev = 1.0
    c_cur = out[1]
    for j in range(2, m_max + 1):
        c_prev, c_cur = c_cur, (
            2.0 * t * (j + d - 1.0) * c_cur - (j + 2.0 * d - 2.0) * c_prev
        ) / j
        out[j] = c_cur
    return out

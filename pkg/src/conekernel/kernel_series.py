"""Spectral series for the cone propagator kernel.

The central object is

    I(x, phi) = x^{-d} * sum_{m>=0} e^{-i pi nu_m / 2} J_{nu_m}(x)
                * ((m + d)/d) * C_m^d(cos phi),

evaluated by certified truncation: the analytic tail majorant

    sum_{m>M} x^{-d} ((m+d)/d) C_m^d(1) (x/2)^{nu_m} / Gamma(nu_m + 1)

is driven below the requested tolerance with a geometric-ratio closure.
The physical propagator kernel at time t and radii r1, r2 is a prefactor
times I(r1 r2 / (2t), phi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._compensated import CompensatedSum
from .errors import CapacityError, DomainError
from .specfun import DEFAULT_TOL, bessel_j_many, gegenbauer_all, log_gamma
from .spectrum import ConeParams, nu, nu_many

__all__ = [
    "KernelPoint",
    "PhysicalPoint",
    "SeriesResult",
    "truncation_index",
    "eval_I",
    "eval_I_multi",
    "eval_kernel",
    "kernel_prefactor",
    "kappa",
]

_TRUNCATION_CAP = 10_000_000
_RATIO_CAP = 0.95


def _check_positive(name: str, v) -> float:
    if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
        raise DomainError(f"{name} must be a positive finite number, got {v!r}")
    return float(v)


def _check_angle(phi) -> float:
    if not (isinstance(phi, (int, float)) and math.isfinite(phi)):
        raise DomainError(f"phi must be a finite real number, got {phi!r}")
    if not 0.0 <= phi <= math.pi:
        raise DomainError(f"phi must lie in [0, pi], got {phi}")
    return float(phi)


@dataclass(frozen=True)
class KernelPoint:
    """Spectral-variable point: x = r1 r2 / (2t) > 0 and angle phi in [0, pi]."""

    x: float
    phi: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _check_positive("x", self.x))
        object.__setattr__(self, "phi", _check_angle(self.phi))


@dataclass(frozen=True)
class PhysicalPoint:
    """Physical-variable point: time t > 0, radii r1, r2 > 0, angle phi."""

    t: float
    r1: float
    r2: float
    phi: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "t", _check_positive("t", self.t))
        object.__setattr__(self, "r1", _check_positive("r1", self.r1))
        object.__setattr__(self, "r2", _check_positive("r2", self.r2))
        object.__setattr__(self, "phi", _check_angle(self.phi))

    def to_kernel_point(self) -> KernelPoint:
        return KernelPoint(x=self.r1 * self.r2 / (2.0 * self.t), phi=self.phi)


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    tail_bound: float


def _log_tail_term(params: ConeParams, x: float, m: int) -> float:
    """log of the m-th tail majorant term (endpoint Gegenbauer bound)."""
    d = params.d
    nm = nu(params, m)
    log_c_end = log_gamma(m + 2.0 * d) - log_gamma(m + 1.0) - log_gamma(2.0 * d)
    return (
        -d * math.log(x)
        + math.log((m + d) / d)
        + log_c_end
        + nm * math.log(0.5 * x)
        - log_gamma(nm + 1.0)
    )


def _certify_tail(params: ConeParams, x: float, m: int, tol: float) -> float | None:
    """Certified bound on the tail beyond index m, or None if the
    geometric closure does not yet apply."""
    lt1 = _log_tail_term(params, x, m + 1)
    if lt1 >= math.log(tol) - math.log(10.0):
        return None
    lt2 = _log_tail_term(params, x, m + 2)
    lt3 = _log_tail_term(params, x, m + 3)
    r = max(math.exp(lt2 - lt1), math.exp(lt3 - lt2))
    if r > _RATIO_CAP:
        return None
    tail = math.exp(lt1) / (1.0 - r)
    return tail if tail < tol else None


def _truncation(params: ConeParams, x: float, tol: float) -> tuple[int, float]:
    m = 0
    while True:
        tail = _certify_tail(params, x, m, tol)
        if tail is not None:
            return m, tail
        m += 1
        if m > _TRUNCATION_CAP:
            raise CapacityError(
                f"truncation index exceeded {_TRUNCATION_CAP} at x = {x}"
            )


def truncation_index(params: ConeParams, x: float, tol: float) -> int:
    """Smallest M whose certified analytic tail bound beyond M is < tol."""
    x = _check_positive("x", x)
    tol = _check_positive("tol", tol)
    return _truncation(params, x, tol)[0]


def eval_I_multi(
    params: ConeParams,
    x: float,
    phis,
    tol: float = 1e-10,
    terms: int | None = None,
) -> list[SeriesResult]:
    """Evaluate the series at one x and several angles, sharing the Bessel
    batch across angles.  eval_I(params, KernelPoint(x, phi)) is exactly
    the single-angle case of this path, so the two agree bitwise.
    """
    x = _check_positive("x", x)
    tol = _check_positive("tol", tol)
    phis = [_check_angle(p) for p in phis]
    if not phis:
        raise DomainError("need at least one angle")
    if terms is None:
        m_top, tail = _truncation(params, x, tol)
    else:
        if not isinstance(terms, (int, np.integer)) or terms < 0:
            raise DomainError(f"terms must be a nonnegative integer, got {terms!r}")
        m_top = int(terms)
        certified = _certify_tail(params, x, m_top, tol)
        tail = certified if certified is not None else math.inf

    d = params.d
    ms = np.arange(m_top + 1)
    nus = nu_many(params, ms)
    js = bessel_j_many(nus, x, DEFAULT_TOL)
    # e^{-i pi nu/2}: reduce nu mod 4 exactly first (fmod is exact).
    r4 = np.mod(nus, 4.0)
    angles = -0.5 * math.pi * r4
    phase_re = np.cos(angles)
    phase_im = np.sin(angles)
    amp = js * ((ms + d) / d)
    scale = x ** (-d)

    results = []
    for phi in phis:
        cg = gegenbauer_all(m_top, d, math.cos(phi))
        acc_re = CompensatedSum()
        acc_im = CompensatedSum()
        for m in range(m_top + 1):
            a = amp[m] * cg[m]
            acc_re.add(a * phase_re[m])
            acc_im.add(a * phase_im[m])
        value = complex(scale * acc_re.value, scale * acc_im.value)
        results.append(SeriesResult(value=value, terms_used=m_top + 1, tail_bound=tail))
    return results


def eval_I(
    params: ConeParams,
    pt: KernelPoint,
    tol: float = 1e-10,
    terms: int | None = None,
) -> SeriesResult:
    """Certified evaluation of I(x, phi): |value - I| <= tail_bound plus
    accumulated special-function error; tail_bound <= tol."""
    return eval_I_multi(params, pt.x, [pt.phi], tol=tol, terms=terms)[0]


def kappa(n: float) -> float:
    """Normalization constant d 2^d Gamma(d) (2 pi)^{-n/2}, calibrated so the
    flat-space (rho=1, c=0) kernel modulus equals (4 pi t)^{-n/2}."""
    d = (float(n) - 2.0) / 2.0
    if d <= 0.0:
        raise DomainError(f"kappa requires n > 2, got {n}")
    return d * 2.0**d * math.exp(log_gamma(d)) * (2.0 * math.pi) ** (-n / 2.0)


def kernel_prefactor(params: ConeParams, pt: PhysicalPoint) -> complex:
    """Everything in front of I(x, phi) in the propagator kernel:
    (kappa_n / rho^{n-1}) (2t)^{-n/2} e^{+i (r1^2+r2^2)/(4t)} / i.

    Phase convention: e^{-(r1^2+r2^2)/(4it)} = e^{+i(r1^2+r2^2)/(4t)}.
    The overall unimodular factor 1/i is fixed only up to the sign of the
    calibration constant; moduli are convention-free.
    """
    n = params.n
    pref = kappa(n) / params.rho ** (n - 1.0) * (2.0 * pt.t) ** (-n / 2.0)
    phase = (pt.r1 * pt.r1 + pt.r2 * pt.r2) / (4.0 * pt.t)
    return pref * complex(math.cos(phase), math.sin(phase)) * complex(0.0, -1.0)


def eval_kernel(params: ConeParams, pt: PhysicalPoint, tol: float = 1e-10) -> complex:
    """Propagator kernel value at a physical point."""
    series = eval_I(params, pt.to_kernel_point(), tol=tol)
    return kernel_prefactor(params, pt) * series.value

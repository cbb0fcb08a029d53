"""
Continuum approximations of the packet displacement and the cosine fitting model
"""
import math
import warnings
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import structlog
from scipy.integrate import IntegrationWarning, quad

from blochchain.config import settings
from blochchain.exceptions import ConfigurationError, NumericalError
from blochchain.schemas.analytics import AmplitudeFitResult, ApproxParams, FitResult

logger = structlog.get_logger()


def static_displacement(t: float, V: float, f: float) -> float:
    """ΔN(t) ≃ −(4V/f) sin²(ft/2)"""
    if f == 0:
        raise ConfigurationError("Bloch period is undefined without a field (f = 0)")
    return -(4.0 * V / f) * math.sin(0.5 * f * t) ** 2


def displacement_rate(t: float, V: float, f: float) -> float:
    """Ṅ(t) = −2V sin(ft)"""
    return -2.0 * V * math.sin(f * t)


def approx_displacement_quadrature(p: ApproxParams, tolerance: Optional[float] = None) -> float:
    """ΔN_{l,approx} = −2V ∫₀^{lT_B} sin(ft)/[1 − 2a sin(ωt + φ)]³ dt by adaptive quadrature"""
    tolerance = tolerance or settings.QUADRATURE_TOLERANCE
    upper = p.l * 2.0 * math.pi / p.f

    def integrand(t: float) -> float:
        return math.sin(p.f * t) / (1.0 - 2.0 * p.a * math.sin(p.omega * t + p.phi)) ** 3

    # Headroom so the bound still holds after scaling by 2V
    epsabs = tolerance / (10.0 * max(1.0, 2.0 * p.V))
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, error = quad(integrand, 0.0, upper, epsabs=epsabs, epsrel=0.0, limit=settings.QUADRATURE_LIMIT)
        except IntegrationWarning as e:
            logger.error("Quadrature did not converge", params=p.model_dump(), error=str(e))
            raise NumericalError(f"displacement integral did not converge: {e}")

    if not math.isfinite(value) or 2.0 * p.V * error > tolerance:
        raise NumericalError(
            f"displacement integral error estimate {2.0 * p.V * error:.3g} exceeds {tolerance:.3g}"
        )
    return -2.0 * p.V * value


def _is_resonant(p: ApproxParams) -> bool:
    return math.isclose(p.omega, p.f, rel_tol=1e-12, abs_tol=0.0)


def approx_displacement_resonant(p: ApproxParams) -> float:
    """Closed form for ω = f: −12 l π a V cos φ / [f (1 − 4a²)^{5/2}]"""
    if not _is_resonant(p):
        raise ConfigurationError(
            f"closed form needs omega == f (got omega={p.omega:g}, f={p.f:g})"
        )
    return -12.0 * p.l * math.pi * p.a * p.V * math.cos(p.phi) / (p.f * (1.0 - 4.0 * p.a ** 2) ** 2.5)


def approx_displacement(p: ApproxParams) -> float:
    """Closed form at resonance, quadrature otherwise"""
    if _is_resonant(p):
        return approx_displacement_resonant(p)
    return approx_displacement_quadrature(p)


def detuning_curve(
    V: float,
    omega: float,
    a: float,
    phi: float,
    l: int,
    field_strengths: Iterable[float],
    scale: float = 1.0,
) -> List[Tuple[float, float]]:
    """(f, scale · ΔN_{l,approx}(f)) across a field-strength grid"""
    curve = []
    for f in field_strengths:
        p = ApproxParams(V=V, f=f, omega=omega, a=a, phi=phi, l=l)
        curve.append((float(f), scale * approx_displacement(p)))
    return curve


def sign_changes(xs: Sequence[float], ys: Sequence[float]) -> List[float]:
    """Linearly interpolated zero crossings of a sampled curve"""
    crossings = []
    for (x0, y0), (x1, y1) in zip(zip(xs, ys), zip(xs[1:], ys[1:])):
        if y0 == 0:
            crossings.append(float(x0))
        elif y0 * y1 < 0:
            crossings.append(float(x0 - y0 * (x1 - x0) / (y1 - y0)))
    return crossings


def _amplitude_factor(mean_amplitude: float) -> float:
    """ā/(1 − 4ā²)^{5/2}"""
    if 4.0 * mean_amplitude ** 2 >= 1.0:
        raise ConfigurationError(f"mean amplitude {mean_amplitude:g} must be below 0.5")
    return mean_amplitude / (1.0 - 4.0 * mean_amplitude ** 2) ** 2.5


def fit_displacement_model(data: Sequence[Tuple[float, float]], mean_amplitude: float, l: int) -> FitResult:
    """Least-squares fit of ΔN_l = β ā cos(φ + α)/(1 − 4ā²)^{5/2} over φ.

    β cos(φ + α) = A cos φ + B sin φ with A = β cos α, B = −β sin α is
    linear in (A, B). α is reported in (−π/2, π/2] with β carrying the sign.
    """
    phases = np.array([phi for phi, _ in data], dtype=float)
    values = np.array([value for _, value in data], dtype=float)
    if len(np.unique(np.round(phases, 12))) < 3:
        raise ConfigurationError("fit needs at least 3 distinct phases")

    factor = _amplitude_factor(mean_amplitude)
    if factor == 0:
        raise ConfigurationError("fit needs a non-zero mean amplitude")

    design = factor * np.column_stack([np.cos(phases), np.sin(phases)])
    (A, B), _, rank, _ = np.linalg.lstsq(design, values, rcond=None)
    if rank < 2:
        raise ConfigurationError("degenerate phase grid: cos φ and sin φ are not independent")

    alpha = math.atan2(-B, A)
    beta = math.hypot(A, B)
    if alpha > math.pi / 2:
        alpha -= math.pi
        beta = -beta
    elif alpha <= -math.pi / 2:
        alpha += math.pi
        beta = -beta

    residuals = values - beta * factor * np.cos(phases + alpha)
    residual_rms = float(np.sqrt(np.mean(residuals ** 2)))

    logger.debug("Displacement model fitted", l=l, alpha=alpha, beta=beta, residual_rms=residual_rms)
    return FitResult(
        l=l,
        mean_amplitude=mean_amplitude,
        alpha_l=alpha,
        beta_l=beta,
        residual_rms=residual_rms,
        n_points=len(values),
        per_l={l: (alpha, beta)},
    )


def fit_amplitude_model(data: Sequence[Tuple[float, float]], l: int, phase: Optional[float] = None) -> AmplitudeFitResult:
    """Least-squares fit of ΔN_l = K ā/(1 − 4ā²)^{5/2} over ā at fixed φ"""
    amplitudes = np.array([amplitude for amplitude, _ in data], dtype=float)
    values = np.array([value for _, value in data], dtype=float)
    factors = np.array([_amplitude_factor(amplitude) for amplitude in amplitudes])
    if not np.any(factors):
        raise ConfigurationError("amplitude fit needs at least one non-zero amplitude")

    coefficient = float(np.dot(factors, values) / np.dot(factors, factors))
    residuals = values - coefficient * factors
    return AmplitudeFitResult(
        l=l,
        coefficient=coefficient,
        residual_rms=float(np.sqrt(np.mean(residuals ** 2))),
        n_points=len(values),
        phase=phase,
    )

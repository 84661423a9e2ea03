"""Pure-state concurrence and CREN, and mixed-state lower bounds from the Ky Fan margin."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .criteria import CriterionParams, build_M, kyfan_margin, kyfan_tolerance
from .linalg import (
    BipartiteDensityMatrix,
    PureState,
    ValidationError,
    ky_fan_norm,
    partial_transpose,
)
from .states import SchmidtSpectrum, mix_white_noise

SCHMIDT_FLOOR = 1e-12


class Measure(str, enum.Enum):
    CONCURRENCE = "concurrence"
    CREN = "cren"


@dataclass(frozen=True)
class BoundReport:
    """A lower bound; ``raw`` is the unclamped value.

    ``clamped`` is set when the underlying Ky Fan margin does not exceed the
    detection tolerance (in particular whenever ``raw < 0``); ``bound`` is then
    0, otherwise ``raw``. A positive bound therefore always coincides with a
    detection by :func:`kyfan.criteria.kyfan_criterion_test`.
    """

    measure: Measure
    params: CriterionParams
    raw: float
    clamped: bool

    @property
    def bound(self) -> float:
        return 0.0 if self.clamped else self.raw


def schmidt_coefficients(psi: PureState) -> SchmidtSpectrum:
    s = np.linalg.svd(psi.coefficient_matrix(), compute_uv=False)
    lam = s**2
    return SchmidtSpectrum(lam / lam.sum())


def _cross_sum(lam: np.ndarray) -> float:
    """``sum_{i<j} sqrt(lambda_i lambda_j)``."""
    r = np.sqrt(np.where(lam < SCHMIDT_FLOOR, 0.0, lam))
    return float((r.sum() ** 2 - np.sum(r**2)) / 2)


def pure_concurrence(psi: PureState) -> float:
    lam = schmidt_coefficients(psi).lambdas
    return math.sqrt(max(0.0, 2 * (1 - np.sum(lam**2))))


def pure_cren(psi: PureState) -> float:
    """Convex-roof extended negativity of a pure state; 0 when ``k == 1``."""
    k = psi.k
    if k == 1:
        return 0.0
    return 2 * _cross_sum(schmidt_coefficients(psi).lambdas) / (k - 1)


def pure_cren_partial_transpose(psi: PureState) -> float:
    """Same quantity via ``(|| (|psi><psi|)^{T_B} ||_1 - 1) / (k - 1)``."""
    k = psi.k
    if k == 1:
        return 0.0
    rho = np.outer(psi.amplitudes, psi.amplitudes.conj())
    return (ky_fan_norm(partial_transpose(rho, (psi.dim_a, psi.dim_b))) - 1) / (k - 1)


def _require_k(rho: BipartiteDensityMatrix) -> int:
    if rho.k < 2:
        raise ValidationError("dimension", f"bound undefined for k = min(dim_a, dim_b) = {rho.k}")
    return rho.k


def concurrence_lower_bound(rho: BipartiteDensityMatrix, params: CriterionParams = CriterionParams()) -> BoundReport:
    k = _require_k(rho)
    margin = kyfan_margin(rho, params)
    raw = math.sqrt(2) / math.sqrt(k * (k - 1)) * margin
    return BoundReport(Measure.CONCURRENCE, params, raw, margin <= kyfan_tolerance(params))


def cren_lower_bound(rho: BipartiteDensityMatrix, params: CriterionParams = CriterionParams()) -> BoundReport:
    k = _require_k(rho)
    margin = kyfan_margin(rho, params)
    return BoundReport(Measure.CREN, params, margin / (k - 1), margin <= kyfan_tolerance(params))


def lower_bound(rho: BipartiteDensityMatrix, params: CriterionParams, measure: Measure | str) -> BoundReport:
    if Measure(measure) is Measure.CONCURRENCE:
        return concurrence_lower_bound(rho, params)
    return cren_lower_bound(rho, params)


def pure_state_chen_bound_check(psi: PureState) -> tuple[float, float]:
    """``(C^2(psi), 8/(k(k-1)) * (sum_{i<j} sqrt(l_i l_j))^2)``; the first should dominate."""
    k = psi.k
    lhs = pure_concurrence(psi) ** 2
    if k == 1:
        return lhs, 0.0
    rhs = 8 / (k * (k - 1)) * _cross_sum(schmidt_coefficients(psi).lambdas) ** 2
    return lhs, rhs


def pure_M_decomposition_check(psi: PureState, params: CriterionParams) -> tuple[float, float]:
    """Compare ``||M(psi)||`` with ``||M(sigma)|| + 2 sum_{i<j} sqrt(l_i l_j)``.

    ``sigma = sum_i l_i |ii><ii|`` is the dephased separable part. ``psi``
    must already be in Schmidt form in the computational basis.
    """
    C = psi.coefficient_matrix()
    off = C - np.diag(np.diag(C))
    if np.max(np.abs(off), initial=0.0) > 1e-12:
        raise ValidationError("schmidt", "state is not Schmidt-diagonal in the computational basis")
    lam = np.abs(np.diag(C)) ** 2
    D = psi.dim_a * psi.dim_b
    sigma = np.zeros((D, D))
    for i, w in enumerate(lam):
        sigma[i * psi.dim_b + i, i * psi.dim_b + i] = w
    sigma = BipartiteDensityMatrix(sigma, psi.dim_a, psi.dim_b)
    norm_M = ky_fan_norm(build_M(psi.density_matrix(), params))
    norm_M1 = ky_fan_norm(build_M(sigma, params))
    return norm_M, norm_M1 + 2 * _cross_sum(lam)


# -- noise threshold ----------------------------------------------------------

BISECTION_ITERS = 80
BISECTION_TOL = 1e-6
SCAN_POINTS = 101


def detection_threshold(
    base: BipartiteDensityMatrix,
    params: CriterionParams,
    measure: Measure | str = Measure.CONCURRENCE,
) -> float:
    """Largest white-noise weight ``w`` at which the bound stays positive.

    A 101-point scan first checks for a single sign change; bisection then
    refines it. If the bound is not monotone on the scan the last positive
    scan point is returned instead.
    """
    measure = Measure(measure)

    def positive(w: float) -> bool:
        return lower_bound(mix_white_noise(base, w), params, measure).bound > 0

    return _threshold(positive)


def _threshold(positive: Callable[[float], bool]) -> float:
    ws = np.linspace(0.0, 1.0, SCAN_POINTS)
    signs = [positive(float(w)) for w in ws]
    if not signs[0]:
        return 0.0
    if signs[-1]:
        return 1.0
    changes = sum(a != b for a, b in zip(signs, signs[1:]))
    last = max(i for i, s in enumerate(signs) if s)
    if changes != 1:
        return float(ws[last])
    lo, hi = float(ws[last]), float(ws[last + 1])
    for _ in range(BISECTION_ITERS):
        if hi - lo <= BISECTION_TOL:
            break
        mid = (lo + hi) / 2
        if positive(mid):
            lo = mid
        else:
            hi = mid
    return lo

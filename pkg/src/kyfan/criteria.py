"""Separability criteria: PPT, CCNR, enhanced realignment and the Ky Fan family.

Every test returns a :class:`CriterionVerdict` whose ``margin`` is
"left-hand side minus bound": a positive margin certifies entanglement.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .linalg import (
    BipartiteDensityMatrix,
    ComplexArray,
    ValidationError,
    ky_fan_norm,
    partial_trace,
    partial_transpose,
    purity,
    realign,
    vec,
)

DETECTION_TOL = 1e-9
RELATIVE_DETECTION_TOL = 1e-13


class Criterion(str, enum.Enum):
    PPT = "ppt"
    CCNR = "ccnr"
    ENHANCED_REALIGNMENT = "enhanced"
    KY_FAN = "kyfan"


@dataclass(frozen=True)
class CriterionParams:
    """Nonnegative border weights ``(alpha, beta)`` of the extended realignment matrix."""

    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v < 0:
                raise ValidationError("params", f"{name} must be finite and >= 0, got {v}")
            object.__setattr__(self, name, v)

    @property
    def separable_bound(self) -> float:
        """``sqrt((alpha^2 + 1)(beta^2 + 1))``."""
        return math.sqrt((self.alpha**2 + 1) * (self.beta**2 + 1))

    def swapped(self) -> "CriterionParams":
        return CriterionParams(self.beta, self.alpha)


@dataclass(frozen=True)
class CriterionVerdict:
    criterion: Criterion
    margin: float
    detected: bool
    params: CriterionParams | None = None


def _verdict(criterion, margin, params=None, tol=DETECTION_TOL):
    return CriterionVerdict(criterion, float(margin), bool(margin > tol), params)


def kyfan_tolerance(params: CriterionParams) -> float:
    """Detection tolerance, widened for large weights where the margin cancels."""
    return max(DETECTION_TOL, RELATIVE_DETECTION_TOL * params.separable_bound)


def ppt_test(rho: BipartiteDensityMatrix) -> CriterionVerdict:
    min_eig = np.linalg.eigvalsh(partial_transpose(rho)).min()
    return _verdict(Criterion.PPT, -min_eig)


def ccnr_test(rho: BipartiteDensityMatrix) -> CriterionVerdict:
    return _verdict(Criterion.CCNR, ky_fan_norm(realign(rho)) - 1.0)


def enhanced_realignment_margin(rho: BipartiteDensityMatrix) -> float:
    rho_a = partial_trace(rho, "B")
    rho_b = partial_trace(rho, "A")
    lhs = ky_fan_norm(realign(rho.matrix - np.kron(rho_a, rho_b), rho.dims))
    # purities can exceed 1 by rounding for pure marginals
    rhs = math.sqrt(max(0.0, 1 - purity(rho_a))) * math.sqrt(max(0.0, 1 - purity(rho_b)))
    return lhs - rhs


def enhanced_realignment_test(rho: BipartiteDensityMatrix) -> CriterionVerdict:
    return _verdict(Criterion.ENHANCED_REALIGNMENT, enhanced_realignment_margin(rho))


def build_M(rho: BipartiteDensityMatrix, params: CriterionParams) -> ComplexArray:
    """Bordered realignment matrix of shape ``(dim_a**2 + 1, dim_b**2 + 1)``::

        [[alpha*beta,          alpha * vec(rho_B)^T],
         [beta * vec(rho_A),   R(rho)              ]]
    """
    alpha, beta = params.alpha, params.beta
    R = realign(rho)
    M = np.empty((R.shape[0] + 1, R.shape[1] + 1), dtype=np.complex128)
    M[0, 0] = alpha * beta
    M[0, 1:] = alpha * vec(partial_trace(rho, "A"))
    M[1:, 0] = beta * vec(partial_trace(rho, "B"))
    M[1:, 1:] = R
    return M


def kyfan_margin(rho: BipartiteDensityMatrix, params: CriterionParams) -> float:
    return ky_fan_norm(build_M(rho, params)) - params.separable_bound


def kyfan_criterion_test(
    rho: BipartiteDensityMatrix, params: CriterionParams = CriterionParams()
) -> CriterionVerdict:
    return _verdict(Criterion.KY_FAN, kyfan_margin(rho, params), params, kyfan_tolerance(params))


def run_criterion(
    rho: BipartiteDensityMatrix, criterion: Criterion | str, params: CriterionParams | None = None
) -> CriterionVerdict:
    criterion = Criterion(criterion)
    if criterion is Criterion.PPT:
        return ppt_test(rho)
    if criterion is Criterion.CCNR:
        return ccnr_test(rho)
    if criterion is Criterion.ENHANCED_REALIGNMENT:
        return enhanced_realignment_test(rho)
    return kyfan_criterion_test(rho, params or CriterionParams())


# -- parameter search ---------------------------------------------------------


def default_grid() -> list[CriterionParams]:
    """60 diagonal points and a 15x15 product, log-spaced on [1e-2, 1e4], plus the origin."""
    diag = np.logspace(-2, 4, 60)
    axis = np.logspace(-2, 4, 15)
    points = [(0.0, 0.0)]
    points += [(x, x) for x in diag]
    points += [(x, y) for x in axis for y in axis]
    return [CriterionParams(a, b) for a, b in points]


def make_grid(
    alphas: Sequence[float] | None = None,
    betas: Sequence[float] | None = None,
    diagonal: Sequence[float] | None = None,
) -> list[CriterionParams]:
    """Product grid ``alphas x betas`` and/or diagonal points ``alpha = beta``."""
    points = []
    if alphas is not None or betas is not None:
        if alphas is None or betas is None:
            raise ValueError("alphas and betas must be given together")
        points += [CriterionParams(a, b) for a in alphas for b in betas]
    if diagonal is not None:
        points += [CriterionParams(x, x) for x in diagonal]
    return points


def optimize_params(
    rho: BipartiteDensityMatrix, grid: Iterable[CriterionParams] | None = None
) -> tuple[CriterionParams, CriterionVerdict]:
    """Grid search for the weights maximizing the Ky Fan margin.

    Ties go to the smaller ``alpha**2 + beta**2``.
    """
    grid = default_grid() if grid is None else list(grid)
    if not grid:
        raise ValueError("parameter grid is empty")
    best = None
    for p in grid:
        verdict = kyfan_criterion_test(rho, p)
        key = (verdict.margin, -(p.alpha**2 + p.beta**2))
        if best is None or key > best[0]:
            best = (key, p, verdict)
    return best[1], best[2]

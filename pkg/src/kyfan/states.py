"""Example states, noise mixing, random samplers and state-file I/O."""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from os import PathLike
from typing import Sequence

import numpy as np

from .linalg import (
    PSD_TOL,
    BipartiteDensityMatrix,
    PureState,
    ValidationError,
    partial_transpose,
)

SCHMIDT_SUM_TOL = 1e-10
SCHMIDT_NEG_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SchmidtSpectrum:
    """Descending Schmidt weights summing to one.

    Values in ``[-1e-12, 0)`` are clamped to zero.
    """

    lambdas: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=np.float64).ravel()
        if lam.size == 0:
            raise ValidationError("schmidt", "empty spectrum")
        if np.any(lam < -SCHMIDT_NEG_TOL):
            raise ValidationError("schmidt", f"negative weight {lam.min():.3e}")
        lam = np.clip(lam, 0.0, None)
        if abs(lam.sum() - 1) > SCHMIDT_SUM_TOL:
            raise ValidationError("schmidt", f"weights sum to {lam.sum():.12g}, not 1")
        if np.any(np.diff(lam) > SCHMIDT_NEG_TOL):
            raise ValidationError("schmidt", "weights must be in descending order")
        lam.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)

    def __len__(self):
        return self.lambdas.size


def pure_from_schmidt(lambdas: SchmidtSpectrum | Sequence[float], dim_a: int, dim_b: int) -> PureState:
    """Build ``sum_i sqrt(lambda_i) |ii>``, keeping the given order of weights."""
    if isinstance(lambdas, SchmidtSpectrum):
        lam = lambdas.lambdas
    else:
        lam = np.asarray(lambdas, dtype=np.float64).ravel()
        if np.any(lam < -SCHMIDT_NEG_TOL):
            raise ValidationError("schmidt", f"negative weight {lam.min():.3e}")
        lam = np.clip(lam, 0.0, None)
        if abs(lam.sum() - 1) > SCHMIDT_SUM_TOL:
            raise ValidationError("schmidt", f"weights sum to {lam.sum():.12g}, not 1")
    if lam.size > min(dim_a, dim_b):
        raise ValidationError(
            "schmidt", f"{lam.size} weights exceed min(dim_a, dim_b) = {min(dim_a, dim_b)}"
        )
    psi = np.zeros(dim_a * dim_b, dtype=np.complex128)
    for i, w in enumerate(lam):
        psi[i * dim_b + i] = math.sqrt(w)
    psi /= np.linalg.norm(psi)
    return PureState(psi, dim_a, dim_b)


def bell_state() -> BipartiteDensityMatrix:
    """``|Phi+><Phi+|`` with ``|Phi+> = (|00> + |11>)/sqrt(2)``."""
    return pure_from_schmidt([0.5, 0.5], 2, 2).density_matrix()


def maximally_mixed(dim_a: int, dim_b: int) -> BipartiteDensityMatrix:
    D = dim_a * dim_b
    return BipartiteDensityMatrix(np.eye(D) / D, dim_a, dim_b)


def product_state(rho_a, rho_b) -> BipartiteDensityMatrix:
    rho_a = np.asarray(rho_a, dtype=np.complex128)
    rho_b = np.asarray(rho_b, dtype=np.complex128)
    return BipartiteDensityMatrix(np.kron(rho_a, rho_b), rho_a.shape[0], rho_b.shape[0])


@dataclass(frozen=True)
class ChessboardParams:
    """Real parameters of the 3x3 chessboard family.

    ``s = a*c/n`` and ``t = a*d/m`` are derived so the state stays PPT.
    """

    a: float
    b: float
    c: float
    d: float
    m: float
    n: float

    def __post_init__(self):
        if self.m == 0 or self.n == 0:
            raise ValidationError("chessboard", "m and n must be nonzero")

    @property
    def s(self) -> float:
        return self.a * self.c / self.n

    @property
    def t(self) -> float:
        return self.a * self.d / self.m

    def vectors(self) -> np.ndarray:
        """The four unnormalized 9-vectors, one per row."""
        a, b, c, d, m, n, s, t = self.a, self.b, self.c, self.d, self.m, self.n, self.s, self.t
        return np.array(
            [
                [m, 0, s, 0, n, 0, 0, 0, 0],
                [0, a, 0, b, 0, c, 0, 0, 0],
                [n, 0, 0, 0, -m, 0, t, 0, 0],
                [0, b, 0, -a, 0, 0, 0, d, 0],
            ],
            dtype=np.float64,
        )

    @property
    def normalization(self) -> float:
        return float(np.sum(self.vectors() ** 2))


EXAMPLE_CHESSBOARD = ChessboardParams(a=0.33, b=-0.109, c=-0.65, d=0.8560, m=0.469, n=-0.3161)


def chessboard_state(params: ChessboardParams = EXAMPLE_CHESSBOARD) -> BipartiteDensityMatrix:
    """``(1/N) sum_i |V_i><V_i|`` on 3x3, with ``N = sum_i |V_i|^2``.

    Warns (does not raise) if the result is not PPT.
    """
    V = params.vectors()
    N = params.normalization
    if not N > 0:
        raise ValidationError("chessboard", "normalization N = sum |V_i|^2 is zero")
    rho = BipartiteDensityMatrix(V.T @ V / N, 3, 3)
    min_pt = np.linalg.eigvalsh(partial_transpose(rho)).min()
    if min_pt < -PSD_TOL:
        warnings.warn(
            f"chessboard state with {params} is not PPT (min eigenvalue {min_pt:.3e})",
            RuntimeWarning,
            stacklevel=2,
        )
    return rho


def tiles_vectors() -> np.ndarray:
    """The five orthonormal tiles vectors as rows, psi_0 .. psi_4."""
    e0, e1, e2 = np.eye(3)
    r2 = math.sqrt(2)
    return np.array(
        [
            np.kron(e0, e0 - e1) / r2,
            np.kron(e0 - e1, e2) / r2,
            np.kron(e2, e1 - e2) / r2,
            np.kron(e1 - e2, e0) / r2,
            np.kron(e0 + e1 + e2, e0 + e1 + e2) / 3,
        ]
    )


def tiles_ppt_state() -> BipartiteDensityMatrix:
    """Bound entangled 3x3 state ``(I - sum_i |psi_i><psi_i|) / 4``."""
    P = tiles_vectors()
    return BipartiteDensityMatrix((np.eye(9) - P.T @ P) / 4, 3, 3)


def mix_white_noise(rho: BipartiteDensityMatrix, w: float) -> BipartiteDensityMatrix:
    """``(1 - w) rho + w I/D``, where ``w`` is the weight of the noise."""
    if not 0.0 <= w <= 1.0:
        raise ValidationError("noise_weight", f"noise weight must lie in [0, 1], got {w}")
    D = rho.dim_a * rho.dim_b
    return BipartiteDensityMatrix((1 - w) * rho.matrix + w * np.eye(D) / D, rho.dim_a, rho.dim_b)


def random_density(dim_a: int, dim_b: int, seed: int | None = None) -> BipartiteDensityMatrix:
    """Ginibre-ensemble mixed state ``G G^dagger / tr(G G^dagger)``."""
    rng = np.random.default_rng(seed)
    D = dim_a * dim_b
    G = rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D))
    rho = G @ G.conj().T
    rho = (rho + rho.conj().T) / 2
    return BipartiteDensityMatrix(rho / np.trace(rho).real, dim_a, dim_b)


def _random_ket(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_pure(dim_a: int, dim_b: int, seed: int | None = None) -> PureState:
    rng = np.random.default_rng(seed)
    return PureState(_random_ket(dim_a * dim_b, rng), dim_a, dim_b)


def random_separable(dim_a: int, dim_b: int, terms: int, seed: int | None = None) -> BipartiteDensityMatrix:
    """Dirichlet-weighted mixture of ``terms`` random pure product states."""
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    D = dim_a * dim_b
    rho = np.zeros((D, D), dtype=np.complex128)
    for p in weights:
        v = np.kron(_random_ket(dim_a, rng), _random_ket(dim_b, rng))
        rho += p * np.outer(v, v.conj())
    rho = (rho + rho.conj().T) / 2
    return BipartiteDensityMatrix(rho / np.trace(rho).real, dim_a, dim_b)


# -- state files ------------------------------------------------------------


class StateFileError(ValueError):
    """Malformed state file; ``location`` points at the offending line or field."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def dumps_state(rho: BipartiteDensityMatrix) -> str:
    rows = []
    for row in rho.matrix:
        pairs = ", ".join(f"[{_fmt(z.real)}, {_fmt(z.imag)}]" for z in row)
        rows.append(f"    [{pairs}]")
    body = ",\n".join(rows)
    return f'{{\n  "dim_a": {rho.dim_a},\n  "dim_b": {rho.dim_b},\n  "matrix": [\n{body}\n  ]\n}}\n'


def loads_state(text: str) -> BipartiteDensityMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from exc
    if not isinstance(doc, dict):
        raise StateFileError("document", "top level must be an object")
    dims = []
    for key in ("dim_a", "dim_b"):
        if key not in doc:
            raise StateFileError(key, "missing field")
        val = doc[key]
        if isinstance(val, bool) or not isinstance(val, int) or val < 1:
            raise StateFileError(key, f"must be a positive integer, got {val!r}")
        dims.append(val)
    if "matrix" not in doc:
        raise StateFileError("matrix", "missing field")
    rows = doc["matrix"]
    if not isinstance(rows, list):
        raise StateFileError("matrix", "must be an array of rows")
    D = dims[0] * dims[1]
    if len(rows) != D:
        raise ValidationError("dimension", f"matrix has {len(rows)} rows but dim_a*dim_b = {D}")
    M = np.empty((D, D), dtype=np.complex128)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != D:
            n = len(row) if isinstance(row, list) else "?"
            raise ValidationError("dimension", f"matrix[{r}] has {n} entries, expected {D}")
        for c, pair in enumerate(row):
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
            ):
                raise StateFileError(f"matrix[{r}][{c}]", f"expected [re, im] number pair, got {pair!r}")
            M[r, c] = complex(pair[0], pair[1])
    return BipartiteDensityMatrix(M, dims[0], dims[1])


def write_state(rho: BipartiteDensityMatrix, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_state(rho))


def read_state(path: str | PathLike) -> BipartiteDensityMatrix:
    with open(path, encoding="utf-8") as fh:
        return loads_state(fh.read())

"""Dense complex-matrix primitives for bipartite states.

Composite basis index for ``|i>_A |j>_B`` is ``i * dim_b + j`` throughout, so
a density matrix read as a ``dim_a x dim_a`` grid of ``dim_b x dim_b`` blocks
has block ``(i, j)`` equal to ``<i|_A rho |j>_A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Union

import numpy as np
import numpy.typing as npt

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
NORM_TOL = 1e-10

ArrayLike = npt.ArrayLike
ComplexArray = npt.NDArray[np.complex128]


class ValidationError(ValueError):
    """An input violates a state invariant.

    ``invariant`` names the violated property (``"hermitian"``, ``"trace"``,
    ``"psd"``, ``"dimension"``, ``"finite"``, ``"norm"``, ...).
    """

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class NumericalError(ArithmeticError):
    """A LAPACK routine failed to converge."""


def _as_matrix(A: ArrayLike) -> ComplexArray:
    A = np.asarray(A, dtype=np.complex128)
    if A.ndim == 1:
        A = A[np.newaxis, :]
    if A.ndim != 2:
        raise ValidationError("dimension", f"expected a 2-D matrix, got ndim={A.ndim}")
    if not np.all(np.isfinite(A)):
        raise ValidationError("finite", "matrix has NaN or Inf entries")
    return A


@dataclass(frozen=True, eq=False)
class BipartiteDensityMatrix:
    """Validated density matrix on ``C^dim_a (x) C^dim_b``.

    All invariants are checked once, here, so downstream operations can skip
    them.

    Parameters
    ----------
    matrix : array_like, shape (dim_a*dim_b, dim_a*dim_b)
    dim_a, dim_b : int
        Local dimensions of subsystems A and B.
    """

    matrix: ComplexArray = field(repr=False)
    dim_a: int
    dim_b: int

    def __post_init__(self):
        dim_a, dim_b = int(self.dim_a), int(self.dim_b)
        if dim_a < 1 or dim_b < 1:
            raise ValidationError("dimension", f"dimensions must be positive, got ({dim_a}, {dim_b})")
        M = _as_matrix(self.matrix)
        D = dim_a * dim_b
        if M.shape != (D, D):
            raise ValidationError(
                "dimension",
                f"matrix shape {M.shape} does not match dim_a*dim_b = {dim_a}*{dim_b} = {D}",
            )
        herm_err = np.max(np.abs(M - M.conj().T))
        if herm_err > HERMITIAN_TOL:
            raise ValidationError("hermitian", f"max |M - M^dagger| = {herm_err:.3e} exceeds {HERMITIAN_TOL:g}")
        tr = np.trace(M)
        if abs(tr - 1) > TRACE_TOL:
            raise ValidationError("trace", f"trace = {tr.real:.12g} differs from 1 by more than {TRACE_TOL:g}")
        min_eig = np.linalg.eigvalsh(M).min()
        if min_eig < -PSD_TOL:
            raise ValidationError("psd", f"minimum eigenvalue {min_eig:.3e} below -{PSD_TOL:g}")
        M = M.copy()
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "dim_a", dim_a)
        object.__setattr__(self, "dim_b", dim_b)

    @property
    def dims(self) -> tuple[int, int]:
        return self.dim_a, self.dim_b

    @property
    def k(self) -> int:
        """Smaller local dimension ``min(dim_a, dim_b)``."""
        return min(self.dim_a, self.dim_b)

    def is_real(self, tol: float = HERMITIAN_TOL) -> bool:
        return bool(np.max(np.abs(self.matrix.imag)) <= tol)

    def swap(self) -> "BipartiteDensityMatrix":
        """The same state with subsystems A and B exchanged."""
        Z = self.matrix.reshape(self.dim_a, self.dim_b, self.dim_a, self.dim_b)
        D = self.dim_a * self.dim_b
        return BipartiteDensityMatrix(Z.transpose(1, 0, 3, 2).reshape(D, D), self.dim_b, self.dim_a)


@dataclass(frozen=True, eq=False)
class PureState:
    """Unit vector on ``C^dim_a (x) C^dim_b``, index ``i * dim_b + j``."""

    amplitudes: ComplexArray = field(repr=False)
    dim_a: int
    dim_b: int

    def __post_init__(self):
        dim_a, dim_b = int(self.dim_a), int(self.dim_b)
        psi = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        if psi.size != dim_a * dim_b:
            raise ValidationError("dimension", f"{psi.size} amplitudes for dims ({dim_a}, {dim_b})")
        if not np.all(np.isfinite(psi)):
            raise ValidationError("finite", "amplitudes have NaN or Inf entries")
        nrm = np.linalg.norm(psi)
        if abs(nrm - 1) > NORM_TOL:
            raise ValidationError("norm", f"|psi| = {nrm:.12g} differs from 1 by more than {NORM_TOL:g}")
        psi = psi.copy()
        psi.setflags(write=False)
        object.__setattr__(self, "amplitudes", psi)
        object.__setattr__(self, "dim_a", dim_a)
        object.__setattr__(self, "dim_b", dim_b)

    @property
    def k(self) -> int:
        return min(self.dim_a, self.dim_b)

    def coefficient_matrix(self) -> ComplexArray:
        """Amplitudes reshaped to ``dim_a x dim_b``."""
        return self.amplitudes.reshape(self.dim_a, self.dim_b)

    def density_matrix(self) -> BipartiteDensityMatrix:
        return BipartiteDensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()), self.dim_a, self.dim_b)


StateLike = Union[BipartiteDensityMatrix, ArrayLike]


def _unpack(rho: StateLike, dims: tuple[int, int] | None) -> tuple[ComplexArray, int, int]:
    if isinstance(rho, BipartiteDensityMatrix):
        return rho.matrix, rho.dim_a, rho.dim_b
    if dims is None:
        raise TypeError("dims=(dim_a, dim_b) is required for a bare array")
    dim_a, dim_b = dims
    M = _as_matrix(rho)
    if M.shape != (dim_a * dim_b, dim_a * dim_b):
        raise ValidationError("dimension", f"matrix shape {M.shape} does not match dims {dims}")
    return M, dim_a, dim_b


def vec(A: ArrayLike) -> ComplexArray:
    """Stack the columns of ``A`` into one vector (column-major order)."""
    return _as_matrix(A).reshape(-1, order="F")


def unvec(v: ArrayLike, shape: tuple[int, int]) -> ComplexArray:
    """Inverse of :func:`vec`."""
    return np.asarray(v, dtype=np.complex128).reshape(shape, order="F")


def kron(A: ArrayLike, B: ArrayLike) -> ComplexArray:
    return np.kron(_as_matrix(A), _as_matrix(B))


def partial_trace(
    rho: StateLike, subsystem: Literal["A", "B"], dims: tuple[int, int] | None = None
) -> ComplexArray:
    """Trace out ``subsystem``.

    ``subsystem="B"`` returns the reduced state of A, ``"A"`` that of B.
    """
    M, dim_a, dim_b = _unpack(rho, dims)
    Z = M.reshape(dim_a, dim_b, dim_a, dim_b)
    if subsystem == "B":
        return np.einsum("ikjk->ij", Z)
    if subsystem == "A":
        return np.einsum("kikj->ij", Z)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def partial_transpose(rho: StateLike, dims: tuple[int, int] | None = None) -> ComplexArray:
    """Transpose the B indices, ``(id (x) T)(rho)``."""
    M, dim_a, dim_b = _unpack(rho, dims)
    D = dim_a * dim_b
    return M.reshape(dim_a, dim_b, dim_a, dim_b).transpose(0, 3, 2, 1).reshape(D, D)


def realign(rho: StateLike, dims: tuple[int, int] | None = None) -> ComplexArray:
    """Realignment matrix of shape ``(dim_a**2, dim_b**2)``.

    Blocks ``Z_{i,j}`` are listed column-major over ``(i, j)``: row
    ``j * dim_a + i`` holds ``vec(Z_{i,j})``. For a product ``X (x) Y`` this
    gives exactly ``vec(X) vec(Y)^T``.
    """
    M, dim_a, dim_b = _unpack(rho, dims)
    Z = M.reshape(dim_a, dim_b, dim_a, dim_b)  # Z[i, k, j, l] = (Z_{i,j})_{k,l}
    return Z.transpose(2, 0, 3, 1).reshape(dim_a * dim_a, dim_b * dim_b)


def singular_values(A: ArrayLike) -> npt.NDArray[np.float64]:
    """All ``min(m, n)`` singular values in descending order."""
    A = _as_matrix(A)
    try:
        s = np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge for {A.shape} matrix") from exc
    return s


def ky_fan_norm(A: ArrayLike) -> float:
    """Sum of all singular values (trace norm). Tiny values are not truncated."""
    return float(np.sum(singular_values(A)))


trace_norm = ky_fan_norm


def purity(M: ArrayLike) -> float:
    """``tr(M^2)`` for a square Hermitian matrix."""
    M = _as_matrix(M)
    if M.shape[0] != M.shape[1]:
        raise ValidationError("dimension", f"purity needs a square matrix, got {M.shape}")
    # tr(M^2) = sum |M_ij|^2 for Hermitian M
    return float(np.sum(np.abs(M) ** 2))

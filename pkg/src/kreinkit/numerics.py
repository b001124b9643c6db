"""Dense complex linear algebra kernel with explicit tolerance contracts.

Everything downstream (Cayley transforms, deficiency subspaces, resolvent
formulas) reduces to a small set of dense operations: Hermitian and unitary
eigendecompositions, SVD-based range/null-space extraction, spectral function
calculus, and linear solves with singularity detection.  This module owns
those operations and their failure modes; formula-level code never calls
LAPACK directly.

Matrices are numpy complex128 arrays, validated on entry.  Residuals use the
Frobenius norm throughout.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from .errors import (
    NotHermitian,
    NotUnitary,
    NumericalFailure,
    SingularFunctionValue,
    SingularMatrix,
)

# Default tolerances; every operation takes them as keyword overrides.
TOL_ORTHO = 1e-12   # orthonormality of bases / unitarity gate
TOL_RECON = 1e-10   # eigendecomposition reconstruction, relative
TOL_HERM = 1e-11    # Hermitian deviation, relative; unit-circle deviation
TOL_RANK = 1e-9     # relative singular value / pivot cutoff
TOL_SOLVE = 1e-10   # linear solve residual, relative, times condition guard
OVERFLOW_GUARD = 1e12  # spectral calculus: |f(lambda)| beyond this is a pole


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Validate and convert to a 2-d complex128 array.

    Rejects non-finite entries; accepts anything array-like with two axes.
    """
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-d, got shape {a.shape}")
    if a.size and not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def frob(m) -> float:
    return float(np.linalg.norm(m))


def hermitian_deviation(h: np.ndarray) -> float:
    """Relative Hermitian deviation ||H - H*|| / (1 + ||H||)."""
    return frob(h - h.conj().T) / (1.0 + frob(h))


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of C^ambient given by an orthonormal column basis.

    basis has shape (ambient, rank); rank 0 (zero subspace) is legal and
    carried as an (ambient, 0) array so projectors and restrictions work
    uniformly.
    """

    ambient: int
    rank: int
    basis: np.ndarray

    def __post_init__(self):
        b = as_matrix(self.basis, "subspace basis")
        object.__setattr__(self, "basis", b)
        if b.shape != (self.ambient, self.rank):
            raise ValueError(
                f"basis shape {b.shape} != (ambient, rank) = "
                f"({self.ambient}, {self.rank})"
            )
        if not 0 <= self.rank <= self.ambient:
            raise ValueError(f"rank {self.rank} out of range for ambient {self.ambient}")
        gram = b.conj().T @ b
        if frob(gram - np.eye(self.rank)) > TOL_ORTHO * max(1.0, float(self.rank)):
            raise ValueError("subspace basis is not orthonormal within tolerance")


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues with a matching orthonormal eigenvector frame.

    eigenvalues: 1-d complex array (imaginary parts are exactly zero for
    Hermitian input, on the unit circle for unitary input).
    eigenvectors: columns form an orthonormal basis; the source matrix equals
    V diag(eigenvalues) V*.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.eigenvalues, dtype=np.complex128)
        v = as_matrix(self.eigenvectors, "eigenvector matrix")
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", v)
        if w.ndim != 1 or v.shape != (w.size, w.size):
            raise ValueError("eigenvalue/eigenvector shapes are inconsistent")
        gram = v.conj().T @ v
        if frob(gram - np.eye(w.size)) > TOL_ORTHO * max(1.0, float(w.size)):
            raise ValueError("eigenvector frame is not orthonormal within tolerance")

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.size)


def hermitian_eig(h, *, tol_herm: float = TOL_HERM,
                  tol_recon: float = TOL_RECON) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises NotHermitian if ||H - H*|| > tol_herm * (1 + ||H||), and
    NumericalFailure if the reconstruction residual exceeds
    tol_recon * (1 + ||H||).
    """
    a = as_matrix(h, "hermitian matrix")
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected square matrix, got {a.shape}")
    dev = frob(a - a.conj().T)
    if dev > tol_herm * (1.0 + frob(a)):
        raise NotHermitian(f"Hermitian deviation {dev:.3e} exceeds tolerance")
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare backend failure
        raise NumericalFailure(f"eigh failed: {exc}") from exc
    res = frob(a - (v * w) @ v.conj().T)
    if res > tol_recon * (1.0 + frob(a)):
        raise NumericalFailure(f"eigh reconstruction residual {res:.3e}")
    return SpectralDecomposition(w.astype(np.complex128), v)


def unitary_eig(u, *, tol_ortho: float = TOL_ORTHO, tol_herm: float = TOL_HERM,
                tol_recon: float = TOL_RECON) -> SpectralDecomposition:
    """Eigendecomposition of a unitary matrix via the complex Schur form.

    The Schur frame of a normal matrix is an orthonormal eigenbasis, which is
    robust under eigenvalue clustering (plain nonsymmetric eig is not).
    Eigenvalues are sorted by principal argument, ascending.
    """
    a = as_matrix(u, "unitary matrix")
    d = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected square matrix, got {a.shape}")
    if d == 0:
        return SpectralDecomposition(np.zeros(0, dtype=np.complex128),
                                     np.zeros((0, 0), dtype=np.complex128))
    dev = frob(a.conj().T @ a - np.eye(d))
    if dev > tol_ortho * max(1.0, float(d)):
        raise NotUnitary(f"unitarity deviation {dev:.3e} exceeds tolerance")
    try:
        t, zf = scipy.linalg.schur(a, output="complex")
    except Exception as exc:  # pragma: no cover - rare backend failure
        raise NumericalFailure(f"schur failed: {exc}") from exc
    w = np.diag(t).astype(np.complex128)
    circ = np.max(np.abs(np.abs(w) - 1.0))
    if circ > tol_herm:
        raise NumericalFailure(f"eigenvalue off the unit circle by {circ:.3e}")
    order = np.argsort(np.angle(w), kind="stable")
    w = w[order]
    zf = zf[:, order]
    res = frob(a - (zf * w) @ zf.conj().T)
    if res > tol_recon * (1.0 + frob(a)):
        raise NumericalFailure(f"unitary reconstruction residual {res:.3e}")
    return SpectralDecomposition(w, zf)


def orthonormal_range(m, tol_rank: float = TOL_RANK, *,
                      scale_floor: float = 0.0) -> Subspace:
    """Orthonormal basis of the (numerical) column range of m.

    Rank counts singular values above tol_rank * max(sigma_max, scale_floor).
    The default floor 0 gives the usual relative cutoff; callers that know
    the natural norm scale of m pass it as scale_floor so that a matrix which
    is pure roundoff (sigma_max itself below tol_rank * scale_floor) comes
    back as the zero subspace instead of full-rank noise.
    """
    a = as_matrix(m, "range input")
    try:
        uu, ss, _ = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericalFailure(f"svd failed: {exc}") from exc
    smax = float(ss[0]) if ss.size else 0.0
    cutoff = tol_rank * max(smax, scale_floor)
    rank = int(np.count_nonzero(ss > cutoff)) if cutoff > 0.0 else 0
    return Subspace(ambient=a.shape[0], rank=rank, basis=uu[:, :rank])


def null_space(m, tol_rank: float = TOL_RANK) -> Subspace:
    """Orthonormal basis of the (numerical) kernel of m, a subspace of the
    column domain C^cols.  rank(orthonormal_range(m)) + rank(null_space(m))
    equals the column count."""
    a = as_matrix(m, "null-space input")
    try:
        _, ss, vh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericalFailure(f"svd failed: {exc}") from exc
    smax = float(ss[0]) if ss.size else 0.0
    rank = int(np.count_nonzero(ss > tol_rank * smax)) if smax > 0.0 else 0
    basis = vh[rank:, :].conj().T
    return Subspace(ambient=a.shape[1], rank=a.shape[1] - rank, basis=basis)


def apply_function_normal(d: SpectralDecomposition, f: Callable[[complex], complex],
                          *, guard: float = OVERFLOW_GUARD) -> np.ndarray:
    """Spectral function calculus: sum of f(lambda_i) u_i u_i*.

    f is a scalar callable evaluated at each stored eigenvalue.  Non-finite
    values, or magnitudes above `guard`, signal an eigenvalue at a pole of f
    (e.g. tan at pi/2) and raise SingularFunctionValue.
    """
    vals = np.empty(d.dim, dtype=np.complex128)
    for i, lam in enumerate(d.eigenvalues):
        fv = complex(f(complex(lam)))
        if not (np.isfinite(fv.real) and np.isfinite(fv.imag)) or abs(fv) > guard:
            raise SingularFunctionValue(
                f"f({complex(lam):.6g}) = {fv:.6g} is singular or beyond guard {guard:.1e}"
            )
        vals[i] = fv
    v = d.eigenvectors
    return (v * vals) @ v.conj().T


def solve_linear(m, b, *, tol_rank: float = TOL_RANK) -> np.ndarray:
    """Solve M X = B by LU with partial pivoting and a pivot-ratio gate.

    Raises SingularMatrix when the smallest |U_ii| falls below tol_rank times
    the largest, which is the operational singularity test used everywhere in
    the package (resolvents at spectral points, degenerate denominators).
    """
    a = as_matrix(m, "solve matrix")
    rhs = as_matrix(b, "solve rhs")
    d = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected square matrix, got {a.shape}")
    if rhs.shape[0] != d:
        raise ValueError(f"rhs has {rhs.shape[0]} rows, expected {d}")
    if d == 0:
        return np.zeros((0, rhs.shape[1]), dtype=np.complex128)
    try:
        # the pivot-ratio gate below is the singularity test; scipy's own
        # exact-zero-pivot warning would just duplicate it as console noise
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(a)
    except Exception as exc:
        raise SingularMatrix(f"LU factorization failed: {exc}") from exc
    diag = np.abs(np.diag(lu))
    dmax = float(diag.max())
    if dmax == 0.0 or float(diag.min()) <= tol_rank * dmax:
        raise SingularMatrix(
            f"pivot ratio {float(diag.min()) / max(dmax, np.finfo(float).tiny):.3e} "
            f"below cutoff {tol_rank:.1e}"
        )
    x = scipy.linalg.lu_solve((lu, piv), rhs)
    if x.size and not np.all(np.isfinite(x)):
        raise NumericalFailure("solve produced non-finite entries")
    return x


def projector(s: Subspace) -> np.ndarray:
    """Orthogonal projector onto the subspace (basis @ basis*)."""
    return s.basis @ s.basis.conj().T

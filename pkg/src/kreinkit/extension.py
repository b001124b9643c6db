"""Finite matrix model of a symmetric restriction and its self-adjoint
extensions, parametrized through Cayley transforms.

The model starts from one Hermitian matrix ``a1`` on C^N and a chosen
n-dimensional "defect" subspace N+.  The symmetric object being extended is
the restriction of ``a1`` to D = (a1 + i)^{-1}(N+^perp); every Hermitian
matrix that agrees with ``a1`` on D is an extension.  The deficiency
subspaces are N+ and N- = C1^{-1} N+ (C1 the Cayley transform of ``a1``),
and extensions are in bijection with unitaries N+ -> N-.

A word of caution that applies to everything built on this model: D is a
proper subspace of C^N, so the restricted operator is *not* densely defined.
None of the identities implemented downstream need density - they are
resolvent and Cayley-transform identities, and the restricted object is
exactly the intersection of its self-adjoint extensions' graphs.  The package
treats that as a feature: it gives closed-form, fully checkable linear
algebra for every formula.

Coordinate convention, fixed at build time: restricted n x n operators are
expressed in the orthonormal bases stored in ``nplus`` / ``nminus``.  The
``nminus`` basis is the isometric image of the ``nplus`` basis under
-C1^{-1}, which normalizes the reference extension's unitary parameter to the
identity matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    NotAnExtension,
    NotHermitian,
    NumericalFailure,
    RankDeficientInput,
    UnitEigenvalue,
)
from .numerics import (
    TOL_HERM,
    TOL_ORTHO,
    TOL_RANK,
    Subspace,
    as_matrix,
    frob,
    null_space,
    orthonormal_range,
    projector,
    solve_linear,
    unitary_eig,
)

DEFAULT_TOL = 1e-9  # instance tolerance for extension-level checks


@dataclass(frozen=True, eq=False)
class Extension:
    """A self-adjoint extension: the Hermitian matrix and its Cayley
    transform (a + i)(a - i)^{-1}, kept together because every formula
    downstream consumes both."""

    a: np.ndarray
    cayley: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", as_matrix(self.a, "extension matrix"))
        object.__setattr__(self, "cayley", as_matrix(self.cayley, "cayley transform"))
        if self.a.shape != self.cayley.shape or self.a.shape[0] != self.a.shape[1]:
            raise ValueError("extension matrices must be square and same shape")

    @classmethod
    def from_hermitian(cls, a, *, tol_herm: float = TOL_HERM) -> "Extension":
        a = as_matrix(a, "extension matrix")
        return cls(a=a, cayley=cayley(a, tol_herm=tol_herm))

    @property
    def dim(self) -> int:
        return self.a.shape[0]


@dataclass(frozen=True, eq=False)
class ExtensionParameter:
    """Unitary parameter v: coordinates of the isometry N+ -> N- that selects
    an extension, in the model's fixed bases."""

    v: np.ndarray

    def __post_init__(self):
        v = as_matrix(self.v, "extension parameter")
        object.__setattr__(self, "v", v)
        n = v.shape[0]
        if v.shape[0] != v.shape[1]:
            raise ValueError("extension parameter must be square")
        dev = frob(v.conj().T @ v - np.eye(n))
        if dev > TOL_ORTHO * max(1.0, float(n)):
            raise ValueError(f"extension parameter not unitary, deviation {dev:.3e}")


@dataclass(frozen=True, eq=False)
class RestrictionModel:
    """The fixed data of one model: ambient dimension, deficiency index,
    reference matrix, the two deficiency subspaces, and the restricted
    domain D (called dot_domain)."""

    dim: int
    deficiency: int
    a1: np.ndarray
    nplus: Subspace
    nminus: Subspace
    dot_domain: Subspace
    reference: Extension


def cayley(a, *, tol_herm: float = TOL_HERM) -> np.ndarray:
    """Cayley transform (a + i)(a - i)^{-1} of a Hermitian matrix.

    Unitary by construction; a - i is invertible for Hermitian a, so the only
    error mode is a non-Hermitian input.
    """
    a = as_matrix(a, "hermitian matrix")
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected square matrix, got {a.shape}")
    dev = frob(a - a.conj().T)
    if dev > tol_herm * (1.0 + frob(a)):
        raise NotHermitian(f"Hermitian deviation {dev:.3e} exceeds tolerance")
    eye = np.eye(a.shape[0])
    return (a + 1j * eye) @ solve_linear(a - 1j * eye, eye)


def inverse_cayley(c, *, tol: float = DEFAULT_TOL,
                   tol_herm: float = TOL_HERM) -> np.ndarray:
    """Invert the Cayley transform: a = i (c + 1)(c - 1)^{-1}.

    Raises UnitEigenvalue when c has an eigenvalue within tol of 1; that is
    the self-adjoint-relation case and is never silently perturbed.
    """
    c = as_matrix(c, "cayley transform")
    dec = unitary_eig(c)
    if dec.dim:
        gap = float(np.min(np.abs(dec.eigenvalues - 1.0)))
        if gap <= tol:
            raise UnitEigenvalue(
                f"cayley transform has eigenvalue within {gap:.3e} of 1"
            )
    eye = np.eye(c.shape[0])
    a = 1j * ((c + eye) @ solve_linear(c - eye, eye))
    dev = frob(a - a.conj().T)
    if dev > tol_herm * (1.0 + frob(a)):
        raise NumericalFailure(f"inverse cayley lost Hermiticity by {dev:.3e}")
    return (a + a.conj().T) / 2.0


def _orthonormal_columns(m: np.ndarray, tol_rank: float) -> np.ndarray:
    """Phase-fixed thin QR: orientation-preserving orthonormalization.

    diag(R) is rotated to the positive real axis, so an already-orthonormal
    input comes back unchanged (up to roundoff) and the first basis vector is
    a positive multiple of the first input column.
    """
    q, r = np.linalg.qr(m, mode="reduced")
    d = np.diag(r)
    mags = np.abs(d)
    dmax = float(mags.max()) if mags.size else 0.0
    if dmax == 0.0 or float(mags.min()) <= tol_rank * dmax:
        raise RankDeficientInput("defect-subspace columns are not independent")
    return q * (d.conj() / mags)[None, :]


def build_model(a1, nplus_raw, *, tol_rank: float = TOL_RANK,
                tol_herm: float = TOL_HERM) -> RestrictionModel:
    """Assemble the model from the reference matrix and a raw N+ spanning set.

    nplus_raw is N x n with independent columns; it is orthonormalized with
    the orientation-preserving QR above.  N- is the isometric image
    -C1^{-1} N+, and dot_domain is (a1 + i)^{-1}(N+^perp).
    """
    a1 = as_matrix(a1, "reference matrix")
    dim = a1.shape[0]
    raw = as_matrix(nplus_raw, "nplus spanning set")
    n = raw.shape[1]
    if raw.shape[0] != dim:
        raise ValueError(f"nplus rows {raw.shape[0]} != dimension {dim}")
    if not 1 <= n <= dim:
        raise ValueError(f"deficiency index {n} out of range 1..{dim}")
    bp = _orthonormal_columns(raw, tol_rank)
    c1 = cayley(a1, tol_herm=tol_herm)
    bm = -solve_linear(c1, bp)
    nplus = Subspace(ambient=dim, rank=n, basis=bp)
    nminus = Subspace(ambient=dim, rank=n, basis=bm)  # ctor verifies isometry
    perp = null_space(bp.conj().T, tol_rank)
    if perp.rank != dim - n:
        raise NumericalFailure("defect-subspace complement has wrong rank")
    eye = np.eye(dim)
    dot = orthonormal_range(solve_linear(a1 + 1j * eye, perp.basis), tol_rank)
    if dot.rank != dim - n:
        raise NumericalFailure("restricted domain has wrong rank")
    return RestrictionModel(
        dim=dim,
        deficiency=n,
        a1=a1,
        nplus=nplus,
        nminus=nminus,
        dot_domain=dot,
        reference=Extension(a=a1, cayley=c1),
    )


def extension_from_parameter(model: RestrictionModel, p: ExtensionParameter,
                             *, tol: float = DEFAULT_TOL) -> Extension:
    """Build the extension selected by the unitary parameter v.

    The inverse Cayley transform of the result acts as C1^{-1} on N+^perp and
    as -U_v on N+, where U_v is the parametrized isometry N+ -> N-.  Raises
    UnitEigenvalue when the assembled transform has eigenvalue 1 (parameter
    selects a relation, not an operator).
    """
    if p.v.shape[0] != model.deficiency:
        raise ValueError(
            f"parameter size {p.v.shape[0]} != deficiency {model.deficiency}"
        )
    eye = np.eye(model.dim)
    pp = projector(model.nplus)
    u_map = model.nminus.basis @ p.v @ model.nplus.basis.conj().T
    c_inv = solve_linear(model.reference.cayley, eye - pp) - u_map
    c = solve_linear(c_inv, eye)
    a = inverse_cayley(c, tol=tol)
    return Extension(a=a, cayley=cayley(a))


def parameter_of(model: RestrictionModel, ext: Extension,
                 *, tol: float = DEFAULT_TOL) -> ExtensionParameter:
    """Recover the unitary parameter of an extension: v = -Bm* C^{-1} Bp.

    Raises NotAnExtension unless ext agrees with the reference on the
    restricted domain.
    """
    dev = frob((ext.a - model.a1) @ model.dot_domain.basis)
    scale = 1.0 + frob(ext.a) + frob(model.a1)
    if dev > tol * scale:
        raise NotAnExtension(
            f"matrix deviates from the reference on the restricted domain by {dev:.3e}"
        )
    v = -model.nminus.basis.conj().T @ solve_linear(ext.cayley, model.nplus.basis)
    return ExtensionParameter(v)


def restricted_cayley_product(ext1: Extension, ext2: Extension,
                              subspace: Subspace) -> np.ndarray:
    """Coordinates of (C2 C1^{-1}) restricted to the subspace, in its basis.

    This is the unitary whose spectrum encodes how the two extensions differ;
    the subspace must be invariant for the restriction to be meaningful
    (callers that cannot guarantee it check invariance first).
    """
    s = subspace.basis
    return s.conj().T @ ext2.cayley @ solve_linear(ext1.cayley, s)


def is_relatively_prime(model: RestrictionModel, ext1: Extension, ext2: Extension,
                        *, tol: float = DEFAULT_TOL) -> bool:
    """True when the pair generates the full model: no eigenvalue of
    (C1 C2^{-1})|N+ within tol of 1.

    Equivalently (cross-checked in the test suite), the resolvent difference
    at i has full rank n.
    """
    s = model.nplus.basis
    w = s.conj().T @ ext1.cayley @ solve_linear(ext2.cayley, s)
    dec = unitary_eig(w)
    gap = float(np.min(np.abs(dec.eigenvalues - 1.0))) if dec.dim else np.inf
    return bool(gap > tol)


def common_plus_subspace(ext1: Extension, ext2: Extension,
                         *, tol_rank: float = TOL_RANK) -> Subspace:
    """Closure of the range of R2(i) - R1(i): the deficiency subspace of the
    maximal common symmetric part of the pair.  Equals N+ exactly when the
    pair is relatively prime; rank 0 when the extensions coincide.

    Both resolvents have spectral norm at most 1, so the rank cutoff floors
    the scale at 1: a difference that is pure roundoff yields rank 0 instead
    of noise directions."""
    eye = np.eye(ext1.dim)
    r1 = solve_linear(ext1.a - 1j * eye, eye)
    r2 = solve_linear(ext2.a - 1j * eye, eye)
    return orthonormal_range(r2 - r1, tol_rank, scale_floor=1.0)


def check_cayley_geometry(model: RestrictionModel, ext: Extension,
                          *, tol_rank: float = TOL_RANK) -> dict[str, float]:
    """Residuals of the structural facts tying one extension to the model.

    Keys:
      deficiency_exchange       ||P_{N+} - C P_{N-} C^{-1}||
      resolvent_cayley_identity ||((a - i)^{-1} C^{-1} - (i/2)(C^{-1} - 1)) Bp||
      domain_direct_sum         N - rank([dot_domain basis | (1 - C^{-1}) Bp])
    """
    eye = np.eye(model.dim)
    c = ext.cayley
    c_inv = solve_linear(c, eye)
    bp = model.nplus.basis
    pp = projector(model.nplus)
    pm = projector(model.nminus)
    exchange = frob(pp - c @ pm @ c_inv)
    lhs = solve_linear(ext.a - 1j * eye, c_inv @ bp)
    rhs = 0.5j * (c_inv @ bp - bp)
    resolvent_identity = frob(lhs - rhs)
    combined = np.hstack([model.dot_domain.basis, (eye - c_inv) @ bp])
    rank = orthonormal_range(combined, tol_rank).rank
    return {
        "deficiency_exchange": exchange,
        "resolvent_cayley_identity": resolvent_identity,
        "domain_direct_sum": float(model.dim - rank),
    }

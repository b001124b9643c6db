"""Resolvent-difference calculus for pairs of self-adjoint extensions.

For two extensions A1, A2 of the same restricted operator, the central object
is the sandwiched resolvent difference

    P(z) = (A1 - z)(A1 - i)^{-1} (R2(z) - R1(z)) (A1 - z)(A1 + i)^{-1},

an operator supported on the deficiency subspace N+ on both sides.  Its value
at z = i is (i/2)(1 - C2 C1^{-1}) compressed to N+, which links it to the
Cayley/unitary parametrization; its inverse on N+ is tan(alpha) - M(z), where
alpha is the angle operator of the pair and

    M(z) = z + (1 + z^2) P_N (A - z)^{-1} P_N |_N

is the Weyl-Titchmarsh operator of an extension compressed to a subspace N.
Out of these pieces the module assembles:

  * the resolvent formula recovering R2(z) from A1-data plus tan(alpha),
  * the Herglotz bound and the exact positivity identity for Im M,
  * the fractional-linear laws mapping M1 to M2 (directly, in angle form,
    and through a deterministic auxiliary third extension),
  * the translation identity in z and rank constancy of compressed P,
  * the consistency link with the von Neumann unitary parameters.

All restricted matrices live in the coordinate frames of the subspaces they
are compressed to (see the extension module's convention).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ExhaustedCandidates,
    NotInvariant,
    NotRelativelyPrime,
    NumericalFailure,
    RealParameter,
    SingularDenominator,
    SingularMatrix,
    SpectralParameter,
    UnitEigenvalue,
)
from .extension import (
    DEFAULT_TOL,
    Extension,
    ExtensionParameter,
    RestrictionModel,
    common_plus_subspace,
    extension_from_parameter,
    is_relatively_prime,
    parameter_of,
    restricted_cayley_product,
)
from .numerics import (
    OVERFLOW_GUARD,
    Subspace,
    apply_function_normal,
    as_matrix,
    frob,
    hermitian_eig,
    orthonormal_range,
    projector,
    solve_linear,
    unitary_eig,
)

ANGLE_GAP_TOL = 1e-8  # how close to pi/2 an angle eigenvalue may sit


@dataclass(frozen=True, eq=False)
class PSample:
    """One evaluation of the sandwiched resolvent difference: the full-space
    matrix and its compression to the sampling subspace's frame."""

    z: complex
    full: np.ndarray
    restricted: np.ndarray


@dataclass(frozen=True, eq=False)
class AngleOperator:
    """Hermitian angle operator alpha of an extension pair on an invariant
    subspace; -exp(-2i alpha) equals the restricted Cayley product, with the
    spectrum reduced to the branch (-pi/2, pi/2]."""

    alpha: np.ndarray
    subspace: Subspace

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_matrix(self.alpha, "angle operator"))
        if self.alpha.shape != (self.subspace.rank, self.subspace.rank):
            raise ValueError("angle operator shape does not match subspace rank")


@dataclass(frozen=True, eq=False)
class WeylSample:
    """One evaluation of the Weyl-Titchmarsh operator of an extension
    compressed to a subspace, in that subspace's frame."""

    z: complex
    m: np.ndarray
    subspace: Subspace

    def __post_init__(self):
        object.__setattr__(self, "m", as_matrix(self.m, "weyl operator"))
        if self.m.shape != (self.subspace.rank, self.subspace.rank):
            raise ValueError("weyl operator shape does not match subspace rank")


def _guard_resolvent_point(a: np.ndarray, z: complex, tol: float) -> None:
    """Reject z within tol of the (real) spectrum of a Hermitian matrix."""
    if a.shape[0] == 0:
        return
    evs = np.linalg.eigvalsh(a)
    dist = float(np.min(np.abs(evs - z)))
    if dist <= max(tol, 1e-13):
        raise SpectralParameter(
            f"z = {z:.6g} is within {dist:.3e} of the spectrum"
        )


def _resolvent(ext: Extension, z: complex, tol: float) -> np.ndarray:
    _guard_resolvent_point(ext.a, z, tol)
    eye = np.eye(ext.dim)
    try:
        return solve_linear(ext.a - z * eye, eye)
    except SingularMatrix as exc:
        raise SpectralParameter(f"resolvent solve failed at z = {z:.6g}") from exc


def _as_m(m) -> np.ndarray:
    return m.m if isinstance(m, WeylSample) else as_matrix(m, "weyl matrix")


def p_function(ext1: Extension, ext2: Extension, subspace: Subspace, z,
               *, tol: float = DEFAULT_TOL) -> PSample:
    """Sandwiched resolvent difference at z, full and compressed.

    z must stay off both spectra; the compression frame is the given
    subspace's basis (use the model's nplus for the standard object).
    """
    z = complex(z)
    r1 = _resolvent(ext1, z, tol)
    r2 = _resolvent(ext2, z, tol)
    eye = np.eye(ext1.dim)
    left = (ext1.a - z * eye) @ solve_linear(ext1.a - 1j * eye, eye)
    right = (ext1.a - z * eye) @ solve_linear(ext1.a + 1j * eye, eye)
    full = left @ (r2 - r1) @ right
    s = subspace.basis
    return PSample(z=z, full=full, restricted=s.conj().T @ full @ s)


def p_at_i_via_cayley(ext1: Extension, ext2: Extension,
                      subspace: Subspace) -> np.ndarray:
    """Value of the compressed resolvent-difference operator at z = i from
    Cayley data alone: (i/2)(1 - C2 C1^{-1}) in the subspace frame."""
    w = restricted_cayley_product(ext1, ext2, subspace)
    return 0.5j * (np.eye(subspace.rank) - w)


def _branch_angle(lam: complex) -> float:
    """Angle alpha in (-pi/2, pi/2] with -exp(-2i alpha) = lam for |lam| = 1."""
    theta = cmath.phase(lam)          # (-pi, pi]
    alpha = (math.pi - theta) / 2.0   # [0, pi)
    if alpha > math.pi / 2.0:
        alpha -= math.pi
    return alpha


def angle_operator(ext1: Extension, ext2: Extension, subspace: Subspace,
                   *, tol: float = DEFAULT_TOL) -> AngleOperator:
    """Hermitian angle operator of the pair on an invariant subspace.

    Checks invariance of the subspace under C2 C1^{-1} (NotInvariant
    otherwise), eigendecomposes the restricted product, and maps each unitary
    eigenvalue through the branch (-pi/2, pi/2].  The reconstruction
    -exp(-2i alpha) == restricted product is re-verified on exit.
    """
    k = subspace.rank
    if k == 0:
        return AngleOperator(alpha=np.zeros((0, 0), dtype=np.complex128),
                             subspace=subspace)
    s = subspace.basis
    eye = np.eye(ext1.dim)
    prod_full = ext2.cayley @ solve_linear(ext1.cayley, eye)
    w = s.conj().T @ prod_full @ s
    invariance = frob(prod_full @ s - s @ w)
    if invariance > tol * (1.0 + frob(prod_full)):
        raise NotInvariant(
            f"subspace is not invariant under the Cayley product ({invariance:.3e})"
        )
    dec = unitary_eig(w)
    alpha = apply_function_normal(dec, _branch_angle)
    alpha = (alpha + alpha.conj().T) / 2.0
    rec = -apply_function_normal(hermitian_eig(alpha),
                                 lambda lam: cmath.exp(-2j * lam))
    res = frob(rec - w)
    if res > tol * (1.0 + frob(w)):
        raise NumericalFailure(f"angle reconstruction residual {res:.3e}")
    return AngleOperator(alpha=alpha, subspace=subspace)


def _angle_gap_guard(alpha: np.ndarray, tol: float) -> None:
    if alpha.shape[0] == 0:
        return
    evs = np.linalg.eigvalsh(alpha)
    gap = float(np.min(np.abs(evs - math.pi / 2.0)))
    if gap <= tol:
        raise NotRelativelyPrime(
            f"angle eigenvalue within {gap:.3e} of pi/2: pair is degenerate here"
        )


def tan_alpha(angle: AngleOperator, *, tol: float = ANGLE_GAP_TOL,
              guard: float = OVERFLOW_GUARD) -> np.ndarray:
    """tan of the angle operator by spectral calculus.

    Raises NotRelativelyPrime when an eigenvalue of alpha sits within tol of
    pi/2 (tan has its pole exactly where the pair fails to be relatively
    prime on the subspace).
    """
    if angle.subspace.rank == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    _angle_gap_guard(angle.alpha, tol)
    t = apply_function_normal(hermitian_eig(angle.alpha), cmath.tan, guard=guard)
    return (t + t.conj().T) / 2.0


def weyl_operator(ext: Extension, subspace: Subspace, z,
                  *, tol: float = DEFAULT_TOL) -> WeylSample:
    """Weyl-Titchmarsh operator of one extension compressed to a subspace:
    m(z) = z + (1 + z^2) S* (a - z)^{-1} S in the subspace frame.

    m(i) = i * identity for every extension and every subspace."""
    z = complex(z)
    _guard_resolvent_point(ext.a, z, tol)
    s = subspace.basis
    eye = np.eye(ext.dim)
    try:
        x = solve_linear(ext.a - z * eye, s)
    except SingularMatrix as exc:
        raise SpectralParameter(f"resolvent solve failed at z = {z:.6g}") from exc
    m = z * np.eye(subspace.rank) + (1.0 + z * z) * (s.conj().T @ x)
    return WeylSample(z=z, m=m, subspace=subspace)


def p_inverse_via_m(ext1: Extension, tan_a: np.ndarray, subspace: Subspace, z,
                    *, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Inverse of the compressed resolvent-difference operator without ever
    touching the second extension: tan(alpha) - m1(z) on the subspace."""
    tan_a = as_matrix(tan_a, "tan alpha")
    return tan_a - weyl_operator(ext1, subspace, z, tol=tol).m


def krein_resolvent(ext1: Extension, subspace: Subspace, tan_a: np.ndarray, z,
                    *, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Resolvent of the second extension from first-extension data only:

        R2(z) = R1(z) + (a1 - i) R1(z) S (tan(alpha) - m1(z))^{-1} S* (a1 + i) R1(z)

    with S the basis of the common deficiency subspace of the pair and alpha
    the angle operator over that subspace.  A rank-0 subspace (identical
    extensions) degenerates to R1(z).
    """
    z = complex(z)
    r1 = _resolvent(ext1, z, tol)
    if subspace.rank == 0:
        return r1
    tan_a = as_matrix(tan_a, "tan alpha")
    m1 = weyl_operator(ext1, subspace, z, tol=tol).m
    s = subspace.basis
    eye = np.eye(ext1.dim)
    try:
        mid = solve_linear(tan_a - m1, np.eye(subspace.rank))
    except SingularMatrix as exc:
        raise SingularDenominator(
            f"tan(alpha) - m(z) is singular at z = {z:.6g}"
        ) from exc
    left = (ext1.a - 1j * eye) @ r1
    right = (ext1.a + 1j * eye) @ r1
    return r1 + left @ s @ mid @ s.conj().T @ right


def herglotz_lower_bound(z) -> float:
    """Lower bound (Im z)^2 / (max(1, |z|^2) + |Re z|) for the smallest
    eigenvalue of Im z * Im m(z).  Requires Im z != 0.

    The (Im z)^2 numerator is forced by the exact identity
    Im m(z) = Im z * S*(1+a^2)^{1/2}((a - Re z)^2 + (Im z)^2)^{-1}(1+a^2)^{1/2}S
    together with the scalar estimate
    (1+t^2)/((t - Re z)^2 + (Im z)^2) >= 1/(max(1,|z|^2) + |Re z|), t real;
    without it the bound fails for |Im z| < 1 (e.g. z = i/2, eigenvalue 3).
    At z = i the bound is 1, attained: m(i) = i * identity."""
    z = complex(z)
    if z.imag == 0.0:
        raise RealParameter("herglotz bound needs a non-real z")
    return z.imag ** 2 / (max(1.0, abs(z) ** 2) + abs(z.real))


def herglotz_check(ext: Extension, subspace: Subspace, z,
                   *, tol: float = DEFAULT_TOL) -> dict[str, float]:
    """Positivity data of the Weyl-Titchmarsh operator at one non-real z.

    Keys:
      positivity_bound    max(0, bound - lambda_min(Im z * Im m(z)))
      exact_identity      || Im z * Im m - (Im z)^2 S*(1+a^2)^{1/2}((a-x)^2+y^2)^{-1}(1+a^2)^{1/2} S ||
      conjugate_symmetry  || m(conj z) - m(z)* ||
    """
    z = complex(z)
    bound = herglotz_lower_bound(z)  # raises RealParameter on the axis
    m = weyl_operator(ext, subspace, z, tol=tol).m
    im_m = (m - m.conj().T) / 2j
    im_m = (im_m + im_m.conj().T) / 2.0
    lhs = z.imag * im_m
    lam_min = float(np.min(np.linalg.eigvalsh(lhs))) if subspace.rank else np.inf
    x, y = z.real, z.imag
    dec = hermitian_eig(ext.a)
    shalf = apply_function_normal(dec, lambda lam: math.sqrt(1.0 + lam.real ** 2))
    eye = np.eye(ext.dim)
    dmat = (ext.a - x * eye) @ (ext.a - x * eye) + (y * y) * eye
    rhs_full = shalf @ solve_linear(dmat, shalf)
    s = subspace.basis
    rhs = (y * y) * (s.conj().T @ rhs_full @ s)
    m_conj = weyl_operator(ext, subspace, z.conjugate(), tol=tol).m
    return {
        "positivity_bound": max(0.0, bound - lam_min) if subspace.rank else 0.0,
        "exact_identity": frob(lhs - rhs),
        "conjugate_symmetry": frob(m_conj - m.conj().T),
    }


def lft_m1_to_m2(m1, p_i: np.ndarray) -> np.ndarray:
    """Fractional-linear law sending the reference M-operator to the second
    extension's, with coefficients built from the compressed
    resolvent-difference value p_i at z = i:

        m2 = (p_i + (1 + i p_i) m1) ((1 + i p_i) - p_i m1)^{-1}

    Holds for arbitrary pairs, degenerate ones included (p_i = 0 on a
    degenerate block gives the identity map there).
    """
    m = _as_m(m1)
    p = as_matrix(p_i, "p at i")
    k = m.shape[0]
    eye = np.eye(k)
    num = p + (eye + 1j * p) @ m
    den = (eye + 1j * p) - p @ m
    try:
        den_inv = solve_linear(den, eye)
    except SingularMatrix as exc:
        raise SingularDenominator("fractional-linear denominator is singular") from exc
    return num @ den_inv


def lft_m1_to_m2_angle(m1, angle: AngleOperator,
                       *, tol: float = ANGLE_GAP_TOL) -> np.ndarray:
    """Angle form of the same law, valid for relatively prime pairs:

        m2 = e^{-i alpha} (cos a + sin a * m1) (sin a - cos a * m1)^{-1} e^{i alpha}
    """
    m = _as_m(m1)
    _angle_gap_guard(angle.alpha, tol)
    dec = hermitian_eig(angle.alpha)
    e_minus = apply_function_normal(dec, lambda lam: cmath.exp(-1j * lam))
    e_plus = apply_function_normal(dec, lambda lam: cmath.exp(1j * lam))
    cos_a = apply_function_normal(dec, cmath.cos)
    sin_a = apply_function_normal(dec, cmath.sin)
    num = cos_a + sin_a @ m
    den = sin_a - cos_a @ m
    try:
        den_inv = solve_linear(den, np.eye(m.shape[0]))
    except SingularMatrix as exc:
        raise SingularDenominator("angle-form denominator is singular") from exc
    return e_minus @ num @ den_inv @ e_plus


def lft_to_reference(m1, angle_ref1: AngleOperator,
                     *, tol: float = ANGLE_GAP_TOL) -> np.ndarray:
    """Invert the angle-form law: recover the auxiliary reference extension's
    M-operator from m1, where angle_ref1 is the angle of (reference, ext1):

        m_ref = -e^{i a} (cos a - sin a * m1) (sin a + cos a * m1)^{-1} e^{-i a}
    """
    m = _as_m(m1)
    _angle_gap_guard(angle_ref1.alpha, tol)
    dec = hermitian_eig(angle_ref1.alpha)
    e_minus = apply_function_normal(dec, lambda lam: cmath.exp(-1j * lam))
    e_plus = apply_function_normal(dec, lambda lam: cmath.exp(1j * lam))
    cos_a = apply_function_normal(dec, cmath.cos)
    sin_a = apply_function_normal(dec, cmath.sin)
    num = cos_a - sin_a @ m
    den = sin_a + cos_a @ m
    try:
        den_inv = solve_linear(den, np.eye(m.shape[0]))
    except SingularMatrix as exc:
        raise SingularDenominator("reference-inversion denominator is singular") from exc
    return -e_plus @ num @ den_inv @ e_minus


def choose_third_extension(model: RestrictionModel, ext1: Extension,
                           ext2: Extension, *, tol: float = DEFAULT_TOL) -> Extension:
    """Deterministically pick an auxiliary extension relatively prime to both.

    Sweeps the phases t_j = j pi / (2 (2n + 2)), j = 1..2n+1, each defining a
    candidate whose inverse Cayley transform on N+ is the reference one
    rotated by e^{-2i t_j}.  Each obstruction (degeneracy against ext1 or
    ext2, or a unit eigenvalue of the candidate's Cayley transform) rules out
    finitely many phases, so the sweep cannot exhaust for honest inputs;
    ExhaustedCandidates otherwise.
    """
    n = model.deficiency
    v1 = parameter_of(model, ext1, tol=max(tol, 1e-8)).v
    for j in range(1, 2 * n + 2):
        t = j * math.pi / (2.0 * (2 * n + 2))
        candidate = ExtensionParameter(cmath.exp(-2j * t) * v1)
        try:
            ext3 = extension_from_parameter(model, candidate, tol=tol)
        except UnitEigenvalue:
            continue
        if is_relatively_prime(model, ext3, ext1, tol=tol) and \
                is_relatively_prime(model, ext3, ext2, tol=tol):
            return ext3
    raise ExhaustedCandidates("no admissible third extension in the phase sweep")


def general_lft_check(model: RestrictionModel, ext1: Extension, ext2: Extension,
                      z, *, tol: float = DEFAULT_TOL) -> dict[str, float]:
    """Exercise every route from m1(z) to m2(z) and report residuals.

    Keys:
      direct               coefficient form vs directly computed m2
      third_extension      route through the auxiliary extension vs m2
      reference_inversion  inverted m_ref vs its directly computed value
      cayley_compression   p(i) from resolvents vs (i/2)(1 - W)
      cayley_compression_affine  1 + i p(i) vs (1/2)(1 + W)
    """
    z = complex(z)
    sub = model.nplus
    m1 = weyl_operator(ext1, sub, z, tol=tol)
    m2 = weyl_operator(ext2, sub, z, tol=tol)
    p_i = p_at_i_via_cayley(ext1, ext2, sub)
    direct = frob(lft_m1_to_m2(m1, p_i) - m2.m)

    eye = np.eye(sub.rank)
    w = restricted_cayley_product(ext1, ext2, sub)
    p_res = p_function(ext1, ext2, sub, 1j, tol=tol).restricted
    compression = frob(p_res - 0.5j * (eye - w))
    compression_affine = frob((eye + 1j * p_res) - 0.5 * (eye + w))

    ext3 = choose_third_extension(model, ext1, ext2, tol=tol)
    a31 = angle_operator(ext3, ext1, sub, tol=tol)
    a32 = angle_operator(ext3, ext2, sub, tol=tol)
    m3 = lft_to_reference(m1, a31)
    m3_direct = weyl_operator(ext3, sub, z, tol=tol).m
    reference_inversion = frob(m3 - m3_direct)
    m2_via3 = lft_m1_to_m2_angle(m3, a32)
    third = frob(m2_via3 - m2.m)

    return {
        "direct": direct,
        "third_extension": third,
        "reference_inversion": reference_inversion,
        "cayley_compression": compression,
        "cayley_compression_affine": compression_affine,
    }


def vonneumann_link_check(model: RestrictionModel, ext1: Extension,
                          ext2: Extension, *, tol: float = DEFAULT_TOL) -> dict[str, float]:
    """Link between the compressed resolvent difference at i and the von
    Neumann unitary parameters, restricted to the pair's common deficiency
    subspace: p(i) = (i/2)(1 - u2^{-1} u1) there.

    Keys:
      parametrization_link        residual of the identity above
      common_subspace_alignment   || (1 - P_{N+}) basis(common) ||
    """
    sub = common_plus_subspace(ext1, ext2)
    c = sub.basis
    p_full = p_function(ext1, ext2, model.nplus, 1j, tol=tol).full
    left = c.conj().T @ p_full @ c
    u1 = parameter_of(model, ext1, tol=max(tol, 1e-8)).v
    u2 = parameter_of(model, ext2, tol=max(tol, 1e-8)).v
    w_par = solve_linear(u2, u1)
    bp = model.nplus.basis
    op = bp @ (0.5j * (np.eye(model.deficiency) - w_par)) @ bp.conj().T
    right = c.conj().T @ op @ c
    eye = np.eye(model.dim)
    alignment = frob((eye - bp @ bp.conj().T) @ c)
    return {
        "parametrization_link": frob(left - right),
        "common_subspace_alignment": alignment,
    }


def p_translation_check(ext1: Extension, ext2: Extension, subspace: Subspace,
                        z, z_prime, *, tol: float = DEFAULT_TOL) -> dict[str, float]:
    """Translation identity in the spectral parameter plus rank constancy.

    Keys:
      translation  || P(z) - P(z') - (z - z') P(z')(a1+i)(a1-z')^{-1}(a1-i)(a1-z)^{-1} P(z) ||
      rank_delta   |rank P(z)|_sub - rank P(z')|_sub|
      range_drift  || range-projector(P(z)) - range-projector(P(z')) ||
    """
    z = complex(z)
    zp = complex(z_prime)
    pz = p_function(ext1, ext2, subspace, z, tol=tol)
    pzp = p_function(ext1, ext2, subspace, zp, tol=tol)
    eye = np.eye(ext1.dim)
    mid = (ext1.a + 1j * eye) @ solve_linear(ext1.a - zp * eye, eye) \
        @ (ext1.a - 1j * eye) @ solve_linear(ext1.a - z * eye, eye)
    translation = frob(pz.full - pzp.full - (z - zp) * (pzp.full @ mid @ pz.full))
    # scale floor 1: a compressed difference that is pure roundoff (identical
    # extensions) must count as rank 0 at every z, not as noise directions
    range_z = orthonormal_range(pz.restricted, scale_floor=1.0)
    range_zp = orthonormal_range(pzp.restricted, scale_floor=1.0)
    full_range_z = orthonormal_range(pz.full, scale_floor=1.0)
    full_range_zp = orthonormal_range(pzp.full, scale_floor=1.0)
    return {
        "translation": translation,
        "rank_delta": float(abs(range_z.rank - range_zp.rank)),
        "range_drift": frob(projector(full_range_z) - projector(full_range_zp)),
    }

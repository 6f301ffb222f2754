"""Dense complex linear-algebra kernel.

Conventions used throughout the package:

* Inner products are linear in the *first* argument:
  ``inner(u, v) = sum_i u[i] * conj(v[i])``.
* An antilinear operator K is stored as the matrix of ``v -> K.mat @ conj(v)``
  in the current orthonormal basis.  Under this convention the antilinear
  adjoint (``<K# u, v> = <K v, u>``) is the plain transpose of the matrix,
  and composing two antilinear operators gives the linear matrix
  ``K1.mat @ conj(K2.mat)``.
* ``kron`` orders tensor legs with the first factor on the slower index, so
  the tensor coordinates of ``a (x) b`` are ``kron(a, b)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (NotHermitian, NotPositiveDefinite, Singular)

Array = np.ndarray

kron = np.kron


@dataclass(frozen=True)
class Tolerance:
    """Relative/absolute tolerance pair, dimension-scaled via ``effective``."""

    rel: float = 1e-10
    abs: float = 1e-12

    def __post_init__(self):
        if self.rel <= 0 or self.abs <= 0:
            raise ValueError("tolerances must be positive")

    def effective(self, n: int) -> float:
        return self.abs + self.rel * n


DEFAULT_TOL = Tolerance()


def cmat(a) -> Array:
    return np.asarray(a, dtype=complex)


def dagger(a: Array) -> Array:
    return a.conj().T


def inner(u: Array, v: Array) -> complex:
    """Inner product, linear in the first argument."""
    return complex(np.vdot(v, u))


def frob(a: Array) -> float:
    return float(np.linalg.norm(a))


def resid(a: Array, b: Array) -> float:
    """Frobenius norm of the difference."""
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def is_hermitian(a: Array, tol: Tolerance = DEFAULT_TOL) -> bool:
    return resid(a, dagger(a)) <= tol.effective(a.shape[0])


def is_unitary(a: Array, tol: Tolerance = DEFAULT_TOL) -> bool:
    n = a.shape[0]
    return resid(dagger(a) @ a, np.eye(n)) <= tol.effective(n)


def is_positive_semidefinite(a: Array, tol: Tolerance = DEFAULT_TOL) -> bool:
    if not is_hermitian(a, tol):
        return False
    w = np.linalg.eigvalsh(0.5 * (a + dagger(a)))
    return bool(w.min() >= -tol.effective(a.shape[0]))


def herm_eig(a: Array, tol: Tolerance = DEFAULT_TOL) -> tuple[Array, Array]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, u)`` with eigenvalues ``w`` ascending and ``u`` unitary such
    that ``a = u @ diag(w) @ u*``.  Raises :class:`NotHermitian` when the
    symmetry defect exceeds the effective tolerance.
    """
    a = cmat(a)
    defect = resid(a, dagger(a))
    if defect > tol.effective(a.shape[0]):
        raise NotHermitian(f"symmetry defect {defect:.3e}")
    w, u = np.linalg.eigh(0.5 * (a + dagger(a)))
    return w, u


def _spectral_map(a: Array, f, tol: Tolerance, positive: bool) -> Array:
    w, u = herm_eig(a, tol)
    if positive and w.min() <= tol.effective(a.shape[0]):
        raise NotPositiveDefinite(f"min eigenvalue {w.min():.3e}")
    return u @ np.diag(f(w.astype(complex))) @ dagger(u)


def mat_power(a: Array, z: complex, tol: Tolerance = DEFAULT_TOL) -> Array:
    """``a**z`` for positive-definite ``a`` through the spectrum.

    For purely imaginary ``z = i t`` the result is unitary.
    """
    return _spectral_map(a, lambda w: np.exp(z * np.log(w)), tol, positive=True)


def mat_log(a: Array, tol: Tolerance = DEFAULT_TOL) -> Array:
    return _spectral_map(a, np.log, tol, positive=True)


def mat_exp(a: Array, tol: Tolerance = DEFAULT_TOL) -> Array:
    """Exponential of a Hermitian matrix (no positivity requirement)."""
    return _spectral_map(a, np.exp, tol, positive=False)


# -- antilinear operators ------------------------------------------------------


@dataclass(frozen=True)
class AntilinearOp:
    """Antilinear operator ``v -> mat @ conj(v)``."""

    mat: Array

    def __post_init__(self):
        object.__setattr__(self, "mat", cmat(self.mat))

    @classmethod
    def conjugation(cls, n: int) -> "AntilinearOp":
        """Plain componentwise conjugation on C^n."""
        return cls(np.eye(n))

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __call__(self, v: Array) -> Array:
        return self.mat @ np.conj(v)

    def adjoint(self) -> "AntilinearOp":
        """Antilinear adjoint K# with <K# u, v> = <K v, u>."""
        return AntilinearOp(self.mat.T)

    def compose(self, other: "AntilinearOp") -> Array:
        """self o other: antilinear after antilinear is linear."""
        return self.mat @ np.conj(other.mat)

    def after(self, linear: Array) -> "AntilinearOp":
        """self o linear."""
        return AntilinearOp(self.mat @ np.conj(linear))

    def then(self, linear: Array) -> "AntilinearOp":
        """linear o self."""
        return AntilinearOp(linear @ self.mat)

    def sandwich(self, x: Array) -> Array:
        """self o x o self for a linear map x (linear result)."""
        return self.mat @ np.conj(x) @ np.conj(self.mat)

    def antiunitary_defect(self) -> float:
        return resid(dagger(self.mat) @ self.mat, np.eye(self.dim))

    def involution_defect(self) -> float:
        return resid(self.mat @ np.conj(self.mat), np.eye(self.dim))

    def is_antiunitary(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.antiunitary_defect() <= tol.effective(self.dim)

    def is_involutive(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.involution_defect() <= tol.effective(self.dim)


def antilinear_polar(g: AntilinearOp, tol: Tolerance = DEFAULT_TOL
                     ) -> tuple[Array, AntilinearOp]:
    """Polar decomposition ``g = i o n**(1/2)`` of an invertible antilinear map.

    ``n = g# o g`` is positive definite and ``i = g o n**(-1/2)`` antiunitary.
    """
    n = g.adjoint().compose(g)
    n = 0.5 * (n + dagger(n))
    w = np.linalg.eigvalsh(n)
    if w.min() <= tol.effective(g.dim):
        raise Singular(f"antilinear map is singular (min eig of g# g = {w.min():.3e})")
    i = g.after(mat_power(n, -0.5, tol))
    return n, i


# -- subspaces of a complex vector space (matrices enter flattened) ------------


def _stack(vectors) -> Array:
    rows = [cmat(v).reshape(-1) for v in vectors]
    return np.array(rows) if rows else np.zeros((0, 0), dtype=complex)


def orthonormal_basis(vectors, tol: Tolerance = DEFAULT_TOL) -> Array:
    """Orthonormal basis (rows) of the span of the given vectors/matrices."""
    a = _stack(vectors)
    if a.size == 0:
        return a
    norms = np.linalg.norm(a, axis=1)
    keep = norms > tol.effective(a.shape[1])
    if not keep.any():
        return np.zeros((0, a.shape[1]), dtype=complex)
    a = a[keep] / norms[keep, None]
    _, s, vh = np.linalg.svd(a, full_matrices=False)
    rank = int(np.sum(s > tol.effective(max(a.shape))))
    return vh[:rank]


def subspace_rank(vectors, tol: Tolerance = DEFAULT_TOL) -> int:
    return orthonormal_basis(vectors, tol).shape[0]


def subspace_equal(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff span(a) == span(b), decided by ranks of the concatenation."""
    ba = orthonormal_basis(a, tol)
    bb = orthonormal_basis(b, tol)
    if ba.shape != bb.shape:
        return False
    if ba.size == 0:
        return True
    both = orthonormal_basis(np.vstack([ba, bb]), tol)
    return both.shape[0] == ba.shape[0]


def subspace_intersection_dim(a, b, tol: Tolerance = DEFAULT_TOL) -> int:
    ba = orthonormal_basis(a, tol)
    bb = orthonormal_basis(b, tol)
    if ba.size == 0 or bb.size == 0:
        return 0
    joint = subspace_rank(np.vstack([ba, bb]), tol)
    return ba.shape[0] + bb.shape[0] - joint


def span_residual(v, basis) -> float:
    """Distance of v from the span of the basis (least squares)."""
    v = cmat(v).reshape(-1)
    a = _stack(basis).T
    x, *_ = np.linalg.lstsq(a, v, rcond=None)
    return float(np.linalg.norm(a @ x - v))


def in_span(v, basis, tol: Tolerance = DEFAULT_TOL) -> bool:
    return span_residual(v, basis) <= tol.effective(cmat(v).size)


def nullspace(a: Array, tol: Tolerance = DEFAULT_TOL) -> Array:
    """Orthonormal basis (columns) of the kernel of ``a``."""
    a = cmat(a)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    cut = tol.effective(max(a.shape)) * (s[0] if s.size else 1.0)
    cut = max(cut, tol.effective(max(a.shape)))
    rank = int(np.sum(s > cut))
    return vh[rank:].conj().T


def algebra_closure(generators, tol: Tolerance = DEFAULT_TOL) -> list[Array]:
    """Orthonormal basis of the unital *-algebra generated by the given matrices.

    Orthonormal with respect to the trace inner product; stabilised by
    iterating pairwise products until the span stops growing.
    """
    gens = [cmat(g) for g in generators]
    d = gens[0].shape[0]
    seed = [np.eye(d, dtype=complex)] + gens + [dagger(g) for g in gens]
    basis = orthonormal_basis(seed, tol)
    while True:
        mats = [b.reshape(d, d) for b in basis]
        prods = [x @ y for x in mats for y in mats]
        grown = orthonormal_basis(list(basis) + prods, tol)
        if grown.shape[0] == basis.shape[0]:
            return mats
        basis = grown


def commutant(basis_mats, ambient_dim: int, tol: Tolerance = DEFAULT_TOL) -> list[Array]:
    """Basis of {X : [X, a] = 0 for all a in the given basis}.

    Solves the linear system with row-major vec: vec(aX - Xa) =
    (kron(a, I) - kron(I, a.T)) vec(X).
    """
    d = ambient_dim
    eye = np.eye(d)
    blocks = [kron(cmat(a), eye) - kron(eye, cmat(a).T) for a in basis_mats]
    if not blocks:
        blocks = [np.zeros((d * d, d * d), dtype=complex)]
    ker = nullspace(np.vstack(blocks), tol)
    return [ker[:, k].reshape(d, d) for k in range(ker.shape[1])]

"""Finite-dimensional *-algebras given by structure constants.

Elements are coordinate vectors in the algebra basis: ``e_i e_j = sum_k
structure[i, j, k] e_k`` and ``e_i* = sum_j involution[i, j] e_j``.  Linear
functionals are raw coordinate vectors in the dual basis, ``w(x) = w . x``;
positivity and faithfulness are decided, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import numlin
from .errors import DimensionMismatch, Inconsistent
from .numlin import Array, Tolerance, DEFAULT_TOL, cmat
from .report import VerificationReport


@dataclass(frozen=True)
class StarAlgebra:
    structure: Array          # (n, n, n)
    involution: Array         # (n, n)
    unit: Array               # (n,)
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "structure", cmat(self.structure))
        object.__setattr__(self, "involution", cmat(self.involution))
        object.__setattr__(self, "unit", cmat(self.unit))
        n = self.dim
        if self.structure.shape != (n, n, n) or self.involution.shape != (n, n):
            raise DimensionMismatch("structure data shapes do not match")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{k}" for k in range(n)))

    @property
    def dim(self) -> int:
        return self.unit.shape[0]

    def basis_vector(self, k: int) -> Array:
        v = np.zeros(self.dim, dtype=complex)
        v[k] = 1.0
        return v

    def multiply(self, a: Array, b: Array) -> Array:
        a, b = cmat(a), cmat(b)
        if a.shape != (self.dim,) or b.shape != (self.dim,):
            raise DimensionMismatch("element size does not match algebra dimension")
        return np.einsum("i,j,ijk->k", a, b, self.structure)

    def involute(self, a: Array) -> Array:
        return self.involution.T @ np.conj(cmat(a))

    def left_mult(self, a: Array) -> Array:
        """Matrix of x -> a x on coordinates."""
        return np.einsum("i,ijk->kj", cmat(a), self.structure)

    def right_mult(self, a: Array) -> Array:
        """Matrix of x -> x a on coordinates."""
        return np.einsum("j,ijk->ki", cmat(a), self.structure)

    def is_commutative(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        defect = numlin.resid(self.structure, self.structure.transpose(1, 0, 2))
        return defect <= tol.effective(self.dim)

    def tensor(self, other: "StarAlgebra") -> "StarAlgebra":
        """Tensor product algebra; coordinates are kron-ordered (first factor slow)."""
        n, m = self.dim, other.dim
        c = np.einsum("prk,qsl->pqrskl", self.structure, other.structure)
        s = np.einsum("pr,qs->pqrs", self.involution, other.involution)
        labels = tuple(f"{a}(x){b}" for a in self.labels for b in other.labels)
        return StarAlgebra(c.reshape(n * m, n * m, n * m), s.reshape(n * m, n * m),
                           np.kron(self.unit, other.unit), labels)

    def conjugate(self) -> "StarAlgebra":
        """Algebra with all structure data complex-conjugated."""
        return StarAlgebra(np.conj(self.structure), np.conj(self.involution),
                           np.conj(self.unit), self.labels)


def axioms_check(alg: StarAlgebra, tol: Tolerance = DEFAULT_TOL,
                 example_id: str = "") -> VerificationReport:
    """Residuals for associativity, unitality and the involution axioms."""
    rep = VerificationReport()
    c, s, u, n = alg.structure, alg.involution, alg.unit, alg.dim
    eff = tol.effective(n)

    left = np.einsum("ijm,mkl->ijkl", c, c)
    right = np.einsum("jkm,iml->ijkl", c, c)
    rep.check("algebra.associativity", "(e_i e_j) e_k = e_i (e_j e_k)",
              numlin.resid(left, right), eff, example_id)

    eye = np.eye(n)
    rep.check("algebra.unit_left", "1 x = x",
              numlin.resid(alg.left_mult(u), eye), eff, example_id)
    rep.check("algebra.unit_right", "x 1 = x",
              numlin.resid(alg.right_mult(u), eye), eff, example_id)
    rep.check("algebra.unit_selfadjoint", "1* = 1",
              numlin.resid(alg.involute(u), u), eff, example_id)

    rep.check("algebra.involution_involutive", "x** = x",
              numlin.resid(np.conj(s) @ s, eye), eff, example_id)

    lhs = np.einsum("ijk,kl->ijl", np.conj(c), s)
    rhs = np.einsum("jp,iq,pql->ijl", s, s, c)
    rep.check("algebra.involution_antimultiplicative", "(x y)* = y* x*",
              numlin.resid(lhs, rhs), eff, example_id)
    return rep


def involution_map_check(alg: StarAlgebra, invol, tol: Tolerance = DEFAULT_TOL,
                         example_id: str = "") -> VerificationReport:
    """Check an arbitrary involution candidate ``invol: vector -> vector``.

    Used by defect fixtures: verifies antilinearity in the complex structure
    ((i x)* = -i x*), involutivity and antimultiplicativity pointwise on the
    basis, without assuming the candidate is encoded by a matrix.
    """
    rep = VerificationReport()
    n = alg.dim
    eff = tol.effective(n)
    basis = [alg.basis_vector(k) for k in range(n)]

    r_anti = max(numlin.resid(invol(1j * e), -1j * cmat(invol(e))) for e in basis)
    rep.check("algebra.involution_antilinear", "(i x)* = -i x*", r_anti, eff, example_id)

    r_inv = max(numlin.resid(invol(cmat(invol(e))), e) for e in basis)
    rep.check("algebra.involution_involutive", "x** = x", r_inv, eff, example_id)

    r_mult = max(
        numlin.resid(invol(alg.multiply(a, b)),
                     alg.multiply(cmat(invol(b)), cmat(invol(a))))
        for a in basis for b in basis)
    rep.check("algebra.involution_antimultiplicative", "(x y)* = y* x*",
              r_mult, eff, example_id)
    return rep


# -- linear functionals ---------------------------------------------------------


def apply_functional(w: Array, x: Array) -> complex:
    return complex(np.dot(cmat(w), cmat(x)))


def conj_functional(alg: StarAlgebra, w: Array) -> Array:
    """The functional ``w~(x) = conj(w(x*))``; w is hermitian iff w~ = w."""
    return np.conj(alg.involution @ cmat(w))


def gram(alg: StarAlgebra, w: Array) -> Array:
    """Gram matrix ``G[i, j] = w(e_i* e_j)``; w positive iff G is PSD."""
    return np.einsum("ip,pjk,k->ij", alg.involution, alg.structure, cmat(w))


def positivity_check(alg: StarAlgebra, w: Array,
                     tol: Tolerance = DEFAULT_TOL) -> tuple[bool, bool]:
    """(positive, faithful) for a functional, decided through its Gram matrix."""
    g = gram(alg, w)
    eff = tol.effective(alg.dim)
    if numlin.resid(g, numlin.dagger(g)) > eff:
        return False, False
    ev = np.linalg.eigvalsh(0.5 * (g + numlin.dagger(g)))
    positive = bool(ev.min() >= -eff)
    faithful = bool(ev.min() > eff)
    return positive, positive and faithful


def density_wrt_trace(rep_mats, w: Array, tol: Tolerance = DEFAULT_TOL) -> Array:
    """The unique D in the represented algebra with ``w(x) = Tr(D pi(x))``.

    ``rep_mats[k]`` is the matrix of the k-th basis element; the reference
    trace is the ambient matrix trace.  Raises :class:`Inconsistent` when no
    solution exists inside the algebra.
    """
    mats = [cmat(m) for m in rep_mats]
    w = cmat(w)
    n = len(mats)
    a = np.array([[np.trace(mats[k] @ mats[j]) for k in range(n)] for j in range(n)])
    d, *_ = np.linalg.lstsq(a, w, rcond=None)
    if numlin.resid(a @ d, w) > tol.effective(n) * max(1.0, float(np.linalg.norm(w))):
        raise Inconsistent("functional has no density inside the algebra")
    return np.einsum("k,kab->ab", d, np.array(mats))

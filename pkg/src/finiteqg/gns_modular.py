"""GNS construction, Tomita modular data, the multiplicative unitary W,
the antilinear operator G with its polar data (N, I), and the operator P.

The Hilbert space H is identified with C^n once and for all through the GNS
map of the left Haar functional; every operator built later (dual side
included) lives in this one basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import numlin, star_algebra
from .builders import FiniteQuantumGroup
from .errors import GramNotPD, Inconsistent, NotHermitian, NotInAlgebra, NotUnitary, SpanDeficient
from .numlin import (AntilinearOp, Array, DEFAULT_TOL, Tolerance, cmat, dagger,
                     kron, mat_exp, mat_log, mat_power)
from .report import VerificationReport
from .star_algebra import StarAlgebra


def flip_matrix(n: int) -> Array:
    """The unitary Sigma on H (x) H with Sigma(u (x) v) = v (x) u."""
    sig = np.zeros((n * n, n * n))
    for a in range(n):
        for b in range(n):
            sig[a * n + b, b * n + a] = 1.0
    return sig


def leg12(w: Array, n: int) -> Array:
    return kron(w, np.eye(n))


def leg23(w: Array, n: int) -> Array:
    return kron(np.eye(n), w)


def leg13(w: Array, n: int) -> Array:
    w4 = w.reshape(n, n, n, n)
    x6 = np.einsum("ijkl,ab->iajkbl", w4, np.eye(n))
    return x6.reshape(n ** 3, n ** 3)


def pentagon_residual(w: Array, n: int) -> float:
    lhs = leg12(w, n) @ leg13(w, n) @ leg23(w, n)
    rhs = leg23(w, n) @ leg12(w, n)
    return numlin.resid(lhs, rhs)


def slice_leg1(x: Array, density: Array, n: int) -> Array:
    """(w (x) id)(x) for the functional w(a) = Tr(density a) on the first leg."""
    x4 = cmat(x).reshape(n, n, n, n)
    return np.einsum("ji,ikjl->kl", cmat(density), x4)


def slice_leg2(x: Array, density: Array, n: int) -> Array:
    """(id (x) w)(x) on the second leg."""
    x4 = cmat(x).reshape(n, n, n, n)
    return np.einsum("lk,ikjl->ij", cmat(density), x4)


def vector_functional_density(u: Array, v: Array) -> Array:
    """Density of w_{u,v}(x) = <x u, v>."""
    return np.outer(cmat(u), np.conj(cmat(v)))


# -- GNS data -------------------------------------------------------------------


@dataclass(eq=False)
class GnsData:
    """Hilbert-space realisation of a faithful positive functional.

    ``lam`` maps algebra coordinates to H = C^n (column k is the image of the
    k-th basis element) and ``pi[k]`` is the left-regular representation of
    the k-th basis element on H.
    """

    alg: StarAlgebra
    lam: Array

    def __post_init__(self):
        self.lam = cmat(self.lam)
        self.lam_inv = np.linalg.inv(self.lam)
        n = self.alg.dim
        self.pi = np.array([self.lam @ self.alg.left_mult(self.alg.basis_vector(k))
                            @ self.lam_inv for k in range(n)])
        self.gram = dagger(self.lam) @ self.lam
        self._pi_stack = self.pi.reshape(n, n * n).T        # columns vec(pi_k)
        self._pi_pinv = np.linalg.pinv(self._pi_stack)

    @property
    def dim(self) -> int:
        return self.alg.dim

    @cached_property
    def pi2(self) -> Array:
        """pi2[i*n+j] = pi_i (x) pi_j on H (x) H."""
        n = self.dim
        return np.array([kron(self.pi[i], self.pi[j])
                         for i in range(n) for j in range(n)])

    @cached_property
    def lam2(self) -> Array:
        return kron(self.lam, self.lam)

    def represent(self, x: Array) -> Array:
        return np.einsum("k,kab->ab", cmat(x), self.pi)

    def represent2(self, z: Array) -> Array:
        return np.einsum("u,uab->ab", cmat(z), self.pi2)

    def pullback(self, x: Array, tol: Tolerance = DEFAULT_TOL) -> Array:
        """Coordinates of a matrix that lies in pi(M); NotInAlgebra otherwise."""
        v = cmat(x).reshape(-1)
        coords = self._pi_pinv @ v
        r = float(np.linalg.norm(self._pi_stack @ coords - v))
        if r > tol.effective(self.dim) * max(1.0, float(np.linalg.norm(v))):
            raise NotInAlgebra(f"matrix leaves the represented algebra (residual {r:.3e})")
        return coords

    def pullback_residual(self, x: Array) -> float:
        v = cmat(x).reshape(-1)
        coords = self._pi_pinv @ v
        return float(np.linalg.norm(self._pi_stack @ coords - v))


def build_gns(qg: FiniteQuantumGroup, tol: Tolerance = DEFAULT_TOL) -> GnsData:
    """Cholesky GNS construction for the left Haar functional.

    ``lam = chol(gram)*`` so that ``lam* lam = gram`` and
    ``<lam x, lam y> = phi(y* x)``.
    """
    g = star_algebra.gram(qg.alg, qg.haar_left)
    g = 0.5 * (g + dagger(g))
    ev = np.linalg.eigvalsh(g)
    if ev.min() <= tol.effective(qg.dim):
        raise GramNotPD(f"Gram matrix of the left Haar functional has min eig {ev.min():.3e}")
    chol = np.linalg.cholesky(g)
    return GnsData(qg.alg, dagger(chol))


def gns_from_lambda(alg: StarAlgebra, lam: Array) -> GnsData:
    return GnsData(alg, lam)


# -- modular data ---------------------------------------------------------------


@dataclass(frozen=True)
class ModularData:
    T: AntilinearOp
    nabla: Array
    J: AntilinearOp


def modular_data(gns: GnsData, tol: Tolerance = DEFAULT_TOL) -> ModularData:
    """Polar decomposition T = J nabla^(1/2) of the GNS involution lift."""
    t_mat = gns.lam @ gns.alg.involution.T @ np.conj(gns.lam_inv)
    t_op = AntilinearOp(t_mat)
    nabla, j_op = numlin.antilinear_polar(t_op, tol)
    return ModularData(t_op, nabla, j_op)


# -- the multiplicative unitary W ------------------------------------------------


def _pair_columns(qg: FiniteQuantumGroup, t_alg: StarAlgebra,
                  lam_map: Array, left_slot: bool) -> Array:
    """Columns (i, j) of (L (x) L)(Delta(e_j)(e_i (x) 1)) (left_slot) or
    (L (x) L)(Delta(e_i)(1 (x) e_j)) (right_slot), for L = lam_map."""
    n = qg.dim
    unit = qg.alg.unit
    ll = kron(lam_map, lam_map)
    cols = np.empty((n * n, n * n), dtype=complex)
    for i in range(n):
        ei = qg.alg.basis_vector(i)
        for j in range(n):
            ej = qg.alg.basis_vector(j)
            if left_slot:
                z = t_alg.multiply(qg.delta(ej), kron(ei, unit))
            else:
                z = t_alg.multiply(qg.delta(ei), kron(unit, ej))
            cols[:, i * n + j] = ll @ z
    return cols


def build_W(qg: FiniteQuantumGroup, gns: GnsData, t_alg: StarAlgebra | None = None,
            tol: Tolerance = DEFAULT_TOL) -> Array:
    """The unitary with W*(lam(x) (x) lam(y)) = (lam (x) lam)(Delta(y)(x (x) 1)).

    Non-unitarity signals a broken Haar/comultiplication pair.
    """
    if t_alg is None:
        t_alg = qg.alg.tensor(qg.alg)
    n = qg.dim
    rhs = _pair_columns(qg, t_alg, gns.lam, left_slot=True)
    w_star = rhs @ np.linalg.inv(gns.lam2)
    defect = numlin.resid(dagger(w_star) @ w_star, np.eye(n * n))
    if defect > tol.effective(n * n):
        raise NotUnitary(f"W* is not unitary (defect {defect:.3e})")
    return dagger(w_star)


def build_V(qg: FiniteQuantumGroup, gamma: Array, t_alg: StarAlgebra | None = None,
            tol: Tolerance = DEFAULT_TOL) -> Array:
    """The unitary with V(Gamma(x) (x) Gamma(y)) = (Gamma (x) Gamma)(Delta(x)(1 (x) y))."""
    if t_alg is None:
        t_alg = qg.alg.tensor(qg.alg)
    n = qg.dim
    rhs = _pair_columns(qg, t_alg, gamma, left_slot=False)
    v = rhs @ np.linalg.inv(kron(gamma, gamma))
    defect = numlin.resid(dagger(v) @ v, np.eye(n * n))
    if defect > tol.effective(n * n):
        raise NotUnitary(f"V is not unitary (defect {defect:.3e})")
    return v


# -- the antilinear operator G and its polar data --------------------------------


@dataclass(frozen=True)
class PolarData:
    G: AntilinearOp
    N: Array
    I: AntilinearOp
    span_rank: int
    lsq_residual: float


def half_slice_vectors(qg: FiniteQuantumGroup, gns: GnsData, psi: Array,
                       t_alg: StarAlgebra) -> Array:
    """u[x, y] = lam((psi (x) id)(Delta(x*)(y (x) 1))) for all basis pairs.

    Returned with columns indexed by (x, y) in row-major order.
    """
    n = qg.dim
    psi = cmat(psi)
    unit = qg.alg.unit
    cols = np.empty((n, n * n), dtype=complex)
    for a in range(n):
        dxa = qg.delta(qg.alg.involute(qg.alg.basis_vector(a)))
        for b in range(n):
            z = t_alg.multiply(dxa, kron(qg.alg.basis_vector(b), unit))
            cols[:, a * n + b] = gns.lam @ (psi @ z.reshape(n, n))
    return cols


def build_G(qg: FiniteQuantumGroup, gns: GnsData, psi: Array,
            t_alg: StarAlgebra | None = None,
            tol: Tolerance = DEFAULT_TOL) -> PolarData:
    """Least-squares antilinear solution of G u[x, y] = u[y, x], then its polar data.

    The least-squares residual doubles as the well-definedness certificate; any
    positive multiple of psi produces the same G.
    """
    if t_alg is None:
        t_alg = qg.alg.tensor(qg.alg)
    n = qg.dim
    u = half_slice_vectors(qg, gns, psi, t_alg)
    rank = numlin.subspace_rank(u.T, tol)
    if rank < n:
        raise SpanDeficient(f"slice vectors span only {rank}/{n} dimensions")
    swap = u.reshape(n, n, n).transpose(0, 2, 1).reshape(n, n * n)
    a = np.conj(u)
    g_mat = np.linalg.lstsq(a.T, swap.T, rcond=None)[0].T
    r = numlin.resid(g_mat @ a, swap) / max(1.0, numlin.frob(swap))
    if r > tol.effective(n * n):
        raise Inconsistent(f"G is not well defined on the slice vectors (residual {r:.3e})")
    g = AntilinearOp(g_mat)
    n_mat, i_op = numlin.antilinear_polar(g, tol)
    return PolarData(g, n_mat, i_op, rank, r)


def build_P(polar: PolarData, gns: GnsData, nu: float,
            tol: Tolerance = DEFAULT_TOL) -> Array:
    """The positive operator with P^(it) lam(x) = nu^(t/2) lam(tau_t(x)).

    log P = (log nu)/2 + K where K is the commutator superoperator of log N
    transported through the GNS map; K must come out Hermitian.
    """
    n = gns.dim
    log_n = mat_log(polar.N, tol)
    cols = np.empty((n, n), dtype=complex)
    for k in range(n):
        cols[:, k] = gns.pullback(gns.pi[k] @ log_n - log_n @ gns.pi[k], tol)
    k_mat = gns.lam @ cols @ gns.lam_inv
    defect = numlin.resid(k_mat, dagger(k_mat))
    if defect > tol.effective(n):
        raise NotHermitian(f"transported generator of P is not Hermitian ({defect:.3e})")
    log_p = 0.5 * np.log(nu) * np.eye(n) + 0.5 * (k_mat + dagger(k_mat))
    p = mat_exp(log_p, tol)

    for t in (0.5, 1.0, 2.0):
        lhs = mat_power(p, 1j * t, tol) @ gns.lam
        tau_t = np.array([gns.pullback(mat_power(polar.N, -1j * t, tol) @ gns.pi[k]
                                       @ mat_power(polar.N, 1j * t, tol), tol)
                          for k in range(n)]).T
        rhs = nu ** (t / 2) * gns.lam @ tau_t
        if numlin.resid(lhs, rhs) > tol.effective(n):
            raise Inconsistent(f"P does not implement the scaling group at t={t}")
    return p


# -- structure suite -------------------------------------------------------------


def w_structure_suite(pipe, tol: Tolerance = DEFAULT_TOL,
                      example_id: str = "") -> VerificationReport:
    """Identities tying W, the modular data and the polar data together."""
    rep = VerificationReport()
    qg, gns, W = pipe.qg, pipe.gns, pipe.W
    n = qg.dim
    eff = tol.effective(n * n)
    eye2 = np.eye(n * n)
    nabla, J = pipe.modular.nabla, pipe.modular.J
    N, I = pipe.polar.N, pipe.polar.I

    rep.check("w_structure.pentagon_W", "W12 W13 W23 = W23 W12",
              pentagon_residual(W, n), 1e-10, example_id)
    rep.check("w_structure.W_unitary", "W* W = 1",
              numlin.resid(dagger(W) @ W, eye2), eff, example_id)

    t_alg = pipe.t_alg
    rhs = _pair_columns(qg, t_alg, gns.lam, left_slot=True)
    rep.check("w_structure.W_defining", "W*(lam(x) (x) lam(y)) = (lam (x) lam)(Delta(y)(x (x) 1))",
              numlin.resid(dagger(W) @ gns.lam2, rhs), eff, example_id)

    rep.check("w_structure.isometry",
              "<(lam (x) lam)(Delta(y1)(x1 (x) 1)), (lam (x) lam)(Delta(y2)(x2 (x) 1))> "
              "= <lam(x1) (x) lam(y1), lam(x2) (x) lam(y2)>",
              numlin.resid(dagger(rhs) @ rhs, dagger(gns.lam2) @ gns.lam2), eff, example_id)

    r_imp = max(numlin.resid(gns.represent2(qg.delta(qg.alg.basis_vector(k))),
                             dagger(W) @ kron(np.eye(n), gns.pi[k]) @ W)
                for k in range(n))
    rep.check("w_structure.delta_via_W", "Delta(x) = W*(1 (x) x) W", r_imp, 1e-10, example_id)

    if pipe.V is not None:
        r_v = max(numlin.resid(gns.represent2(qg.delta(qg.alg.basis_vector(k))),
                               pipe.V @ kron(gns.pi[k], np.eye(n)) @ dagger(pipe.V))
                  for k in range(n))
        rep.check("w_structure.delta_via_V", "Delta(x) = V(x (x) 1) V*", r_v, 1e-10, example_id)
        rep.check("w_structure.pentagon_V", "V12 V13 V23 = V23 V12",
                  pentagon_residual(pipe.V, n), 1e-10, example_id)
        # the vital commutation relation, with the modular operator of the right weight
        lhs = pipe.V @ kron(pipe.nabla_p, N)
        rep.check("w_structure.V_nabla_N", "V (nabla' (x) N) = (nabla' (x) N) V",
                  numlin.resid(lhs, kron(pipe.nabla_p, N) @ pipe.V), eff, example_id)

    io_j = AntilinearOp(kron(I.mat, J.mat))
    rep.check("w_structure.IJ_W", "(I (x) J) W = W* (I (x) J)",
              numlin.resid(io_j.after(W).mat, io_j.then(dagger(W)).mat), eff, example_id)

    nn = kron(mat_power(N, -1, tol), nabla)
    rep.check("w_structure.NinvNabla_W", "(N^-1 (x) nabla) W = W (N^-1 (x) nabla)",
              numlin.resid(nn @ W, W @ nn), eff, example_id)

    # spanning conditions
    d3 = qg.comul.reshape(n, n, n)
    rank1 = numlin.subspace_rank([gns.lam @ d3[i, :, k] for i in range(n) for k in range(n)],
                                 tol)
    rep.check_flag("w_structure.spanning_left_slices",
                   "H = [lam((w (x) id) Delta(x))]", rank1 == n, example_id)
    rep.check_flag("w_structure.spanning_half_slices",
                   "H = [lam((psi (x) id)(Delta(b* x)(a (x) 1)))]",
                   pipe.polar.span_rank == n, example_id)

    # modular data invariants
    rep.check("w_structure.T_implements_star", "T lam(x) = lam(x*)",
              max(numlin.resid(pipe.modular.T(gns.lam[:, k]),
                               gns.lam @ qg.alg.involute(qg.alg.basis_vector(k)))
                  for k in range(n)), tol.effective(n), example_id)
    rep.check("w_structure.T_polar", "T = J nabla^(1/2)",
              numlin.resid(pipe.modular.T.mat,
                           J.after(mat_power(nabla, 0.5, tol)).mat),
              tol.effective(n), example_id)
    rep.check("w_structure.J_involutive", "J^2 = 1", J.involution_defect(),
              tol.effective(n), example_id)
    rep.check("w_structure.J_nabla_J", "J nabla J = nabla^-1",
              numlin.resid(J.sandwich(nabla), mat_power(nabla, -1, tol)),
              tol.effective(n), example_id)

    u_t = mat_power(nabla, 1j, tol)
    rep.check_flag("w_structure.sigma_preserves_M", "nabla^(it) pi(M) nabla^(-it) = pi(M)",
                   numlin.subspace_equal([u_t @ p @ dagger(u_t) for p in gns.pi],
                                         list(gns.pi), tol), example_id)
    m_prime = numlin.commutant(list(gns.pi), n, tol)
    rep.check_flag("w_structure.JMJ_commutant", "J pi(M) J = pi(M)'",
                   numlin.subspace_equal([J.sandwich(p) for p in gns.pi], m_prime, tol),
                   example_id)

    # slices of W* implement the slices of Delta
    r_slice = 0.0
    for i in range(n):
        dens = star_algebra_density(gns, qg.alg.basis_vector(i))
        lhs = slice_leg1(dagger(W), dens, n) @ gns.lam
        rhs_m = gns.lam @ d3[i]
        r_slice = max(r_slice, numlin.resid(lhs, rhs_m))
    rep.check("w_structure.slice_W_star", "(w (x) id)(W*) lam(x) = lam((w (x) id) Delta(x))",
              r_slice, eff, example_id)
    return rep


def star_algebra_density(gns: GnsData, w: Array) -> Array:
    """A matrix R with Tr(R pi(e_k)) = w_k for all k (minimal norm solution)."""
    n = gns.dim
    a = np.array([gns.pi[k].T.reshape(-1) for k in range(n)])
    r = np.linalg.pinv(a) @ cmat(w)
    return r.reshape(n, n)

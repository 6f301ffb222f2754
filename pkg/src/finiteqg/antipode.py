"""Scaling group tau, unitary antipode R, antipode S, scaling constant nu,
modular element delta, and the GNS data of the right Haar weight."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numlin, star_algebra
from .builders import FiniteQuantumGroup
from .errors import Inconsistent, NotInAlgebra, PhaseMismatch, ValidationFailed
from .gns_modular import GnsData, ModularData, PolarData
from .numlin import (AntilinearOp, Array, DEFAULT_TOL, Tolerance, cmat, dagger,
                     kron, mat_power, mat_log)
from .report import VerificationReport
from .star_algebra import StarAlgebra


@dataclass(eq=False)
class AntipodeData:
    """Coordinate realisations of tau_t(x) = N^(-it) x N^(it), R(x) = I x* I
    and S = R tau_(-i/2), pulled back from pi(M) to algebra coordinates."""

    gns: GnsData
    N: Array
    I: AntilinearOp
    r_coef: Array          # columns: coordinates of R(e_k)
    s_mat: Array           # columns: coordinates of S(e_k)

    def tau_coords(self, t: complex, tol: Tolerance = DEFAULT_TOL) -> Array:
        """Coordinate matrix of tau_t (analytic in t via the spectrum of N)."""
        gns = self.gns
        left = mat_power(self.N, -1j * t, tol)
        right = mat_power(self.N, 1j * t, tol)
        cols = [gns.pullback(left @ p @ right, tol) for p in gns.pi]
        return np.array(cols).T

    def r_matrix(self, x: Array) -> Array:
        """R applied to a matrix on H."""
        return self.I.mat @ cmat(x).T @ np.conj(self.I.mat)

    def apply_r(self, x: Array) -> Array:
        # R(x) = I x* I is linear: the antilinearity of * cancels against I.
        return self.r_coef @ cmat(x)

    def apply_s(self, x: Array) -> Array:
        return self.s_mat @ cmat(x)

    def apply_s_inv(self, x: Array, tol: Tolerance = DEFAULT_TOL) -> Array:
        return np.linalg.solve(self.s_mat, cmat(x))

    def apply_tau(self, x: Array, t: float, tol: Tolerance = DEFAULT_TOL) -> Array:
        return self.tau_coords(t, tol) @ cmat(x)


def antipode_data(gns: GnsData, polar: PolarData,
                  tol: Tolerance = DEFAULT_TOL) -> AntipodeData:
    """Assemble the evaluators from the polar data of G."""
    n = gns.dim
    i_mat = polar.I.mat
    half_l = mat_power(polar.N, -0.5, tol)
    half_r = mat_power(polar.N, 0.5, tol)
    r_cols = np.empty((n, n), dtype=complex)
    s_cols = np.empty((n, n), dtype=complex)
    for k in range(n):
        r_cols[:, k] = gns.pullback(i_mat @ gns.pi[k].T @ np.conj(i_mat), tol)
        s_cols[:, k] = gns.pullback(
            i_mat @ (half_l @ gns.pi[k] @ half_r).T @ np.conj(i_mat), tol)
    return AntipodeData(gns, polar.N, polar.I, r_cols, s_cols)


def apply_antipode(anti: AntipodeData, x: Array, which="S",
                   tol: Tolerance = DEFAULT_TOL) -> Array:
    """Image of an algebra element under S, R or tau_t (which = ("tau", t))."""
    if which == "S":
        return anti.apply_s(x)
    if which == "R":
        return anti.apply_r(x)
    if isinstance(which, tuple) and which[0] == "tau":
        return anti.apply_tau(x, which[1], tol)
    raise ValueError(f"unknown antipode component {which!r}")


def structure_suite(pipe, tol: Tolerance = DEFAULT_TOL,
                    example_id: str = "") -> VerificationReport:
    """R^2 = id, R tau commutation, S = R tau_(-i/2), antimultiplicativity,
    the flipped-comultiplication law for R, and S(S(x)*)* = x."""
    rep = VerificationReport()
    qg, gns, anti = pipe.qg, pipe.gns, pipe.anti
    n = qg.dim
    eff = tol.effective(n)
    alg = qg.alg
    basis = [alg.basis_vector(k) for k in range(n)]

    r2 = max(numlin.resid(anti.apply_r(anti.apply_r(e)), e) for e in basis)
    rep.check("antipode.R_involutive", "R^2 = id", r2, eff, example_id)

    tau1 = anti.tau_coords(1.0, tol)
    lhs = np.array([anti.apply_r(tau1 @ e) for e in basis]).T
    rhs = np.array([anti.apply_tau(anti.apply_r(e), 1.0, tol) for e in basis]).T
    rep.check("antipode.R_tau_commute", "R tau_t = tau_t R",
              numlin.resid(lhs, rhs), eff, example_id)

    # S = R tau_(-i/2) and tau_(-i/2) R agree
    r_s = 0.0
    half = anti.tau_coords(-0.5j, tol)
    for e in basis:
        r_s = max(r_s, numlin.resid(anti.apply_s(e), anti.apply_r(half @ e)))
        r_s = max(r_s, numlin.resid(anti.apply_s(e), half @ anti.apply_r(e)))
    rep.check("antipode.S_polar", "S = R tau_(-i/2) = tau_(-i/2) R", r_s, eff, example_id)

    r_anti = max(numlin.resid(anti.apply_r(alg.multiply(a, b)),
                              alg.multiply(anti.apply_r(b), anti.apply_r(a)))
                 for a in basis for b in basis)
    rep.check("antipode.R_antimultiplicative", "R(x y) = R(y) R(x)", r_anti, eff, example_id)

    r_star = max(
        numlin.resid(alg.involute(anti.apply_s(alg.involute(anti.apply_s(e)))), e)
        for e in basis)
    rep.check("antipode.S_inverse_property", "S(S(x)*)* = x", r_star, eff, example_id)

    # chi (R (x) R) Delta = Delta R
    rr = kron(anti.r_coef, anti.r_coef)
    r_flip = max(
        numlin.resid(flip_tensor(rr @ qg.delta(e), n),
                     qg.delta(anti.apply_r(e)))
        for e in basis)
    rep.check("antipode.R_flips_comul", "chi (R (x) R) Delta = Delta R",
              r_flip, tol.effective(n * n), example_id)

    # tau_t and R preserve pi(M); image subspaces coincide with pi(M)
    u = mat_power(pipe.polar.N, -1j, tol)
    tau_mats = [u @ p @ dagger(u) for p in gns.pi]
    rep.check_flag("antipode.tau_preserves_M", "tau_t(M) = M",
                   numlin.subspace_equal(tau_mats, list(gns.pi), tol), example_id)
    r_mats = [anti.r_matrix(p) for p in gns.pi]
    rep.check_flag("antipode.R_preserves_M", "R(M) = M",
                   numlin.subspace_equal(r_mats, list(gns.pi), tol), example_id)
    return rep


def flip_tensor(z: Array, n: int) -> Array:
    return cmat(z).reshape(n, n).T.reshape(-1)


def strong_invariance_check(pipe, tol: Tolerance = DEFAULT_TOL,
                            example_id: str = "") -> VerificationReport:
    """Strong left invariance over all basis pairs, plus the right-sided mirror."""
    rep = VerificationReport()
    qg, anti, t_alg = pipe.qg, pipe.anti, pipe.t_alg
    n = qg.dim
    alg = qg.alg
    phi = qg.haar_left
    psi = pipe.psi_c
    unit = alg.unit
    r_left = 0.0
    r_right = 0.0
    for a in range(n):
        ea_star = alg.involute(alg.basis_vector(a))
        d_astar = qg.delta(ea_star)
        for b in range(n):
            eb = alg.basis_vector(b)
            # S((id (x) phi)(Delta(a*)(1 (x) b))) = (id (x) phi)((1 (x) a*) Delta(b))
            z = t_alg.multiply(d_astar, kron(unit, eb))
            lhs = anti.apply_s(z.reshape(n, n) @ phi)
            w = t_alg.multiply(kron(unit, ea_star), qg.delta(eb))
            rhs = w.reshape(n, n) @ phi
            r_left = max(r_left, numlin.resid(lhs, rhs))
            # S((psi (x) id)(Delta(a*)(b (x) 1))) = (psi (x) id)((a* (x) 1) Delta(b))
            z2 = t_alg.multiply(d_astar, kron(eb, unit))
            lhs2 = anti.apply_s(psi @ z2.reshape(n, n))
            w2 = t_alg.multiply(kron(ea_star, unit), qg.delta(eb))
            rhs2 = psi @ w2.reshape(n, n)
            r_right = max(r_right, numlin.resid(lhs2, rhs2))
    rep.check("strong_invariance.left",
              "S((id (x) phi)(Delta(a*)(1 (x) b))) = (id (x) phi)((1 (x) a*) Delta(b))",
              r_left, 1e-10, example_id)
    rep.check("strong_invariance.right",
              "S((psi (x) id)(Delta(a*)(b (x) 1))) = (psi (x) id)((a* (x) 1) Delta(b))",
              r_right, 1e-10, example_id)
    return rep


def compute_nu(qg: FiniteQuantumGroup, anti: AntipodeData,
               tol: Tolerance = DEFAULT_TOL) -> float:
    """Least-squares positive scalar with phi tau_1 = nu^-1 phi, validated at t = 2."""
    phi = qg.haar_left
    w1 = anti.tau_coords(1.0, tol).T @ phi
    c = complex(np.vdot(phi, w1) / np.vdot(phi, phi))
    if abs(c.imag) > tol.effective(qg.dim) or c.real <= 0:
        raise Inconsistent(f"phi tau_1 is not a positive multiple of phi (c = {c})")
    if numlin.resid(w1, c * phi) > tol.effective(qg.dim):
        raise Inconsistent("phi tau_1 is not proportional to phi")
    w2 = anti.tau_coords(2.0, tol).T @ phi
    if numlin.resid(w2, c * c * phi) > tol.effective(qg.dim):
        raise Inconsistent("scaling constant fit fails the t = 2 cross-check")
    return 1.0 / c.real


@dataclass(eq=False)
class ModularElementData:
    delta: Array            # algebra coordinates
    delta_mat: Array        # pi(delta)
    d_phi: Array            # trace density of phi
    d_psi: Array            # trace density of psi
    gamma: Array            # GNS map of psi: Gamma(x) = lam(x delta^(1/2))
    nabla_p: Array          # modular operator of psi w.r.t. Gamma
    j_p: AntilinearOp       # modular conjugation of psi (= nu^(i/4) J)


def compute_delta(qg: FiniteQuantumGroup, gns: GnsData, psi_c: Array,
                  tol: Tolerance = DEFAULT_TOL) -> ModularElementData:
    """Radon-Nikodym quotient delta = D_phi^-1 D_psi, validated against
    psi(x) = phi(delta^(1/2) x delta^(1/2))."""
    n = qg.dim
    mats = list(gns.pi)
    d_phi = star_algebra.density_wrt_trace(mats, qg.haar_left, tol)
    d_psi = star_algebra.density_wrt_trace(mats, psi_c, tol)
    delta_mat = np.linalg.solve(d_phi, d_psi)
    delta_mat = 0.5 * (delta_mat + dagger(delta_mat))
    ev = np.linalg.eigvalsh(delta_mat)
    if ev.min() <= tol.effective(n):
        raise ValidationFailed(f"delta is not positive invertible (min eig {ev.min():.3e})")
    try:
        delta = gns.pullback(delta_mat, tol)
    except NotInAlgebra as exc:
        raise ValidationFailed(f"delta leaves pi(M): {exc}") from exc

    sqrt_d = mat_power(delta_mat, 0.5, tol)
    r = max(numlin.resid(star_algebra.apply_functional(psi_c, qg.alg.basis_vector(k)),
                         complex(np.trace(d_phi @ sqrt_d @ gns.pi[k] @ sqrt_d)))
            for k in range(n))
    if r > tol.effective(n):
        raise ValidationFailed(f"psi(x) = phi(delta^(1/2) x delta^(1/2)) fails ({r:.3e})")
    if numlin.resid(d_phi @ delta_mat, delta_mat @ d_phi) > tol.effective(n):
        raise ValidationFailed("[D_phi, delta] does not vanish")
    return ModularElementData(delta, delta_mat, d_phi, d_psi,
                              gamma=None, nabla_p=None, j_p=None)


def right_weight_gns(qg: FiniteQuantumGroup, gns: GnsData, modular: ModularData,
                     melt: ModularElementData, nu: float, psi_c: Array,
                     tol: Tolerance = DEFAULT_TOL) -> ModularElementData:
    """Fill in Gamma(x) = lam(x delta^(1/2)), its modular operator, and check
    that the polar conjugation equals nu^(i/4) J."""
    n = qg.dim
    sqrt_delta = gns.pullback(mat_power(melt.delta_mat, 0.5, tol), tol)
    gamma = gns.lam @ qg.alg.right_mult(sqrt_delta)

    g_gram = dagger(gamma) @ gamma
    if numlin.resid(g_gram, star_algebra.gram(qg.alg, psi_c)) > tol.effective(n):
        raise ValidationFailed("<Gamma(x), Gamma(y)> = psi(y* x) fails")

    t_p = AntilinearOp(gamma @ qg.alg.involution.T @ np.conj(np.linalg.inv(gamma)))
    nabla_p, j_p = numlin.antilinear_polar(t_p, tol)
    phase = nu ** 0.25j
    if numlin.resid(j_p.mat, phase * modular.J.mat) > tol.effective(n):
        raise PhaseMismatch("modular conjugation of psi differs from nu^(i/4) J")
    melt.gamma = gamma
    melt.nabla_p = nabla_p
    melt.j_p = j_p
    return melt


def delta_identity_suite(pipe, tol: Tolerance = DEFAULT_TOL,
                         example_id: str = "") -> VerificationReport:
    """Identities for delta, nu and the interplay of the one-parameter groups."""
    rep = VerificationReport()
    qg, gns, anti = pipe.qg, pipe.gns, pipe.anti
    n = qg.dim
    eff = tol.effective(n)
    alg = qg.alg
    nu = pipe.nu
    delta = pipe.melt.delta
    delta_mat = pipe.melt.delta_mat
    nabla, nabla_p = pipe.modular.nabla, pipe.nabla_p
    phi, psi = qg.haar_left, pipe.psi_c
    basis = [alg.basis_vector(k) for k in range(n)]

    rep.check("delta.comul_grouplike", "Delta(delta) = delta (x) delta",
              numlin.resid(qg.delta(delta), kron(delta, delta)),
              tol.effective(n * n), example_id)
    rep.check("delta.R_inverts", "R(delta) = delta^-1",
              numlin.resid(gns.represent(anti.apply_r(delta)),
                           np.linalg.inv(delta_mat)), eff, example_id)
    rep.check("delta.tau_fixes", "tau_t(delta) = delta",
              numlin.resid(anti.apply_tau(delta, 1.0, tol), delta), eff, example_id)

    def conj_group(u: Array) -> Array:
        cols = [gns.pullback(u @ p @ dagger(u), tol) for p in gns.pi]
        return np.array(cols).T

    sigma1 = conj_group(mat_power(nabla, 1j, tol))
    sigma_p1 = conj_group(mat_power(nabla_p, 1j, tol))
    tau1 = anti.tau_coords(1.0, tol)
    rep.check("delta.sigma_scales", "sigma_t(delta) = nu^t delta",
              numlin.resid(sigma1 @ delta, nu * delta), eff, example_id)

    rep.check("delta.phi_sigma_p", "phi sigma'_t = nu^t phi",
              numlin.resid(sigma_p1.T @ phi, nu * phi), eff, example_id)
    rep.check("delta.psi_sigma", "psi sigma_t = nu^-t psi",
              numlin.resid(sigma1.T @ psi, psi / nu), eff, example_id)
    rep.check("delta.psi_tau", "psi tau_t = nu^-t psi",
              numlin.resid(tau1.T @ psi, psi / nu), eff, example_id)

    sigma_m1 = conj_group(mat_power(nabla, -1j, tol))
    rep.check("delta.sigma_p_via_R", "sigma'_t = R sigma_-t R",
              numlin.resid(anti.r_coef @ sigma_m1 @ anti.r_coef, sigma_p1),
              eff, example_id)

    # the four comultiplication commutation relations
    eff2 = tol.effective(n * n)
    for t in (0.5, 1.0):
        sig = conj_group(mat_power(nabla, 1j * t, tol))
        sig_p = conj_group(mat_power(nabla_p, 1j * t, tol))
        sig_p_m = conj_group(mat_power(nabla_p, -1j * t, tol))
        ta = anti.tau_coords(t, tol)
        ta_m = anti.tau_coords(-t, tol)
        checks = [
            ("delta.comul_sigma", "Delta sigma_t = (tau_t (x) sigma_t) Delta",
             qg.comul @ sig, kron(ta, sig) @ qg.comul),
            ("delta.comul_sigma_p", "Delta sigma'_t = (sigma'_t (x) tau_-t) Delta",
             qg.comul @ sig_p, kron(sig_p, ta_m) @ qg.comul),
            ("delta.comul_tau", "Delta tau_t = (tau_t (x) tau_t) Delta",
             qg.comul @ ta, kron(ta, ta) @ qg.comul),
            ("delta.comul_tau_sigma", "Delta tau_t = (sigma_t (x) sigma'_-t) Delta",
             qg.comul @ ta, kron(sig, sig_p_m) @ qg.comul),
        ]
        for cid, anchor, lhs, rhs in checks:
            rep.check(f"{cid}[t={t}]", anchor, numlin.resid(lhs, rhs), eff2, example_id)

    # nabla'^(it) lam(x) = nu^(-t/2) lam(sigma'_t(x))
    lhs = mat_power(nabla_p, 1j, tol) @ gns.lam
    rhs = nu ** -0.5 * gns.lam @ sigma_p1
    rep.check("delta.nabla_p_implements", "nabla'^(it) lam(x) = nu^(-t/2) lam(sigma'_t(x))",
              numlin.resid(lhs, rhs), eff, example_id)

    # Gamma is a GNS map for psi
    rep.check("delta.gamma_gram", "<Gamma(x), Gamma(y)> = psi(y* x)",
              numlin.resid(dagger(pipe.gamma) @ pipe.gamma,
                           star_algebra.gram(alg, psi)), eff, example_id)
    rep.check("delta.psi_phi_delta", "psi(x) = phi(delta^(1/2) x delta^(1/2))",
              max(numlin.resid(
                  star_algebra.apply_functional(psi, e),
                  star_algebra.apply_functional(
                      phi, alg.multiply(alg.multiply(
                          gns.pullback(mat_power(delta_mat, 0.5, tol), tol), e),
                          gns.pullback(mat_power(delta_mat, 0.5, tol), tol))))
                  for e in basis), eff, example_id)

    rep.check("nu.value", "nu = 1 at finite dimension", abs(nu - 1.0), 1e-10, example_id)
    return rep

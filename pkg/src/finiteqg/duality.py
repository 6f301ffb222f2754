"""The predual convolution algebra, the lambda/xi maps, the dual quantum group
with its modular data, the four multiplicative unitaries, the duality theorem,
the Pontryagin double dual, the commutation table and M intersect M-hat.

Every dual-side operator gets two independent constructions where a closed
form is available (polar data versus N^-1/I, GNS formula versus Sigma W* Sigma,
...); the equality of the two paths is the content of the suites below.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import numlin, star_algebra
from .builders import FiniteQuantumGroup, comultiplication_check, solve_haar
from .errors import Inconsistent, Singular
from .gns_modular import (GnsData, flip_matrix, pentagon_residual, slice_leg1,
                          star_algebra_density)
from .numlin import (Array, DEFAULT_TOL, Tolerance, cmat, dagger, kron,
                     mat_log, mat_power)
from .report import VerificationReport
from .star_algebra import StarAlgebra


# -- the predual as a *-algebra ---------------------------------------------------


def predual_product(qg: FiniteQuantumGroup, w1: Array, w2: Array) -> Array:
    """Convolution (w1 w2)(x) = (w1 (x) w2)(Delta(x))."""
    n = qg.dim
    return np.einsum("i,j,ijk->k", cmat(w1), cmat(w2), qg.comul.reshape(n, n, n))


def sharp_star(s_mat: Array, w: Array) -> Array:
    """The sharp involution w*(x) = conj(w(S(x))) on functional coordinates."""
    return np.conj(cmat(s_mat).T @ cmat(w))


def lambda_of(pipe, w: Array) -> Array:
    """lambda(w) = (w (x) id)(W), via a trace density for w on B(H)."""
    return slice_leg1(pipe.W, star_algebra_density(pipe.gns, w), pipe.qg.dim)


def xi_of(pipe, w: Array) -> Array:
    """The vector with <xi(w), lam(x)> = w(x*) for all x."""
    return np.linalg.solve(dagger(pipe.gns.lam), pipe.qg.alg.involution @ cmat(w))


@dataclass(eq=False)
class DualData:
    b_mats: Array             # (n, n, n): lambda of the dual basis functionals
    pipe: object              # the full pipeline of (M-hat, Delta-hat)

    @cached_property
    def commutant(self) -> list[Array]:
        n = self.b_mats.shape[1]
        return numlin.commutant(list(self.b_mats), n)


def build_dual(pipe, dual_levels: int = 0, tol: Tolerance = DEFAULT_TOL,
               report: VerificationReport | None = None) -> DualData:
    """Construct (M-hat, Delta-hat, phi-hat, Lambda-hat) and run the full
    pipeline on it, inside the same Hilbert space basis."""
    from .pipeline import build_pipeline

    rep = report if report is not None else VerificationReport()
    qg, gns, W = pipe.qg, pipe.gns, pipe.W
    alg = qg.alg
    n = qg.dim
    eid = pipe.name + "^"
    eff = tol.effective(n)

    b = np.array([lambda_of(pipe, alg.basis_vector(k)) for k in range(n)])
    if numlin.subspace_rank(list(b), tol) < n:
        raise Singular("lambda is not injective on the predual")
    rep.check_flag("dual.lambda_injective", "lambda: M_* -> M-hat is injective",
                   True, eid)

    # in the basis lambda(dual basis), the convolution structure constants are
    # exactly the comultiplication coefficients
    c_hat = qg.comul.reshape(n, n, n).copy()
    s_hat = np.conj(pipe.anti.s_mat)
    b_stack = b.reshape(n, n * n).T
    unit_hat, *_ = np.linalg.lstsq(b_stack, np.eye(n).reshape(-1), rcond=None)
    r_unit = float(np.linalg.norm(b_stack @ unit_hat - np.eye(n).reshape(-1)))
    if r_unit > eff:
        raise Inconsistent(f"1 is not in the span of lambda(M_*) ({r_unit:.3e})")

    labels = tuple(f"l({lab})" for lab in alg.labels)
    alg_hat = StarAlgebra(c_hat, s_hat, unit_hat, labels)
    rep.merge(star_algebra.axioms_check(alg_hat, tol, eid))

    r_mult = max(numlin.resid(b[i] @ b[j], np.einsum("k,kab->ab", c_hat[i, j], b))
                 for i in range(n) for j in range(n))
    rep.check("dual.lambda_multiplicative", "lambda(w t) = lambda(w) lambda(t)",
              r_mult, 1e-10, eid)
    r_star = max(numlin.resid(dagger(b[i]), np.einsum("k,kab->ab", s_hat[i], b))
                 for i in range(n))
    rep.check("dual.lambda_star", "lambda(w*) = lambda(w)*", r_star, 1e-10, eid)

    closure = numlin.algebra_closure(list(b), tol)
    rep.check_flag("dual.span_is_algebra",
                   "M-hat = span lambda(M_*) = generated algebra of the W slices",
                   numlin.subspace_equal(closure, list(b), tol), eid)

    lam_hat = np.linalg.solve(dagger(gns.lam), alg.involution)
    rep.check_flag("dual.xi_spans", "rank { xi(w) } = dim H",
                   numlin.subspace_rank(list(lam_hat.T), tol) == n, eid)

    # materialise Delta-hat(x) = Sigma W (x (x) 1) W* Sigma on the basis
    sig = flip_matrix(n)
    eye = np.eye(n)
    kron_stack = np.array([kron(b[i], b[j]).reshape(-1)
                           for i in range(n) for j in range(n)]).T
    d_hat = np.empty((n * n, n), dtype=complex)
    r_land = 0.0
    for a in range(n):
        mat = sig @ W @ kron(b[a], eye) @ dagger(W) @ sig
        coeff, *_ = np.linalg.lstsq(kron_stack, mat.reshape(-1), rcond=None)
        r_land = max(r_land, float(np.linalg.norm(kron_stack @ coeff - mat.reshape(-1))))
        d_hat[:, a] = coeff
    rep.check("dual.comul_lands", "Delta-hat(M-hat) inside M-hat (x) M-hat",
              r_land, tol.effective(n * n), eid)

    rep.merge(comultiplication_check(alg_hat, d_hat, tol, eid))
    haar = solve_haar(alg_hat, d_hat, tol)
    rep.check_flag("dual.haar_nullity", "invariant functionals of the dual are unique",
                   haar.left_nullity == 1 and haar.right_nullity == 1, eid)

    phi_hat = np.conj(lam_hat @ unit_hat) @ lam_hat
    rep.check("dual.weight_gns", "phi-hat(b* a) = <Lambda-hat(a), Lambda-hat(b)>",
              numlin.resid(star_algebra.gram(alg_hat, phi_hat), dagger(lam_hat) @ lam_hat),
              eff, eid)
    c = complex(np.vdot(haar.phi, phi_hat) / np.vdot(haar.phi, haar.phi))
    rep.check("dual.weight_invariant", "phi-hat is left invariant (solver cross-check)",
              numlin.resid(phi_hat, c * haar.phi) + abs(c.imag) + max(0.0, -c.real),
              eff, eid)
    pos, faith = star_algebra.positivity_check(alg_hat, phi_hat, tol)
    rep.check_flag("dual.weight_positive", "phi-hat is positive and faithful",
                   pos and faith, eid)

    qg_hat = FiniteQuantumGroup(alg_hat, d_hat, phi_hat, haar.psi, pipe.name + "^")
    gns_hat = GnsData(alg_hat, lam_hat)
    r_incl = max(numlin.resid(gns_hat.pi[k], b[k]) for k in range(n))
    rep.check("dual.gns_identity_rep", "lambda(eta) xi(w) = xi(eta w)",
              r_incl, eff, eid)

    dual_pipe = build_pipeline(qg_hat, gns=gns_hat, name=pipe.name + "^",
                               dual_levels=dual_levels, tol=tol, report=rep)

    rep.check("dual.scaling_inverse", "scaling constant of the dual is nu^-1",
              abs(dual_pipe.nu * pipe.nu - 1.0), 1e-10, eid)
    rep.check("dual.P_shared", "P-hat = P", numlin.resid(dual_pipe.P, pipe.P),
              eff, eid)
    return DualData(b, dual_pipe)


# -- commutator-based membership in tensor products -------------------------------


def _commute_leg1_residual(x: Array, a: Array, n: int) -> float:
    x4 = x.reshape(n, n, n, n)
    lhs = np.einsum("ip,pkjl->ikjl", a, x4)
    rhs = np.einsum("ikpl,pj->ikjl", x4, a)
    return numlin.resid(lhs, rhs)


def _commute_leg2_residual(x: Array, a: Array, n: int) -> float:
    x4 = x.reshape(n, n, n, n)
    lhs = np.einsum("kp,ipjl->ikjl", a, x4)
    rhs = np.einsum("ikjp,pl->ikjl", x4, a)
    return numlin.resid(lhs, rhs)


def tensor_membership_residual(x: Array, first_commutant, second_commutant,
                               n: int) -> float:
    """Distance certificate for x in A (x) B: x must commute with A' (x) 1
    and 1 (x) B' (finite-dimensional tensor commutation theorem)."""
    r = 0.0
    for a in first_commutant:
        r = max(r, _commute_leg1_residual(x, a, n))
    for bmat in second_commutant:
        r = max(r, _commute_leg2_residual(x, bmat, n))
    return r


# -- suites -----------------------------------------------------------------------


def dual_unitaries(pipe, tol: Tolerance = DEFAULT_TOL,
                   example_id: str = "") -> VerificationReport:
    """Defining-formula versus closed-form constructions of W-hat, V, V-hat,
    their pentagon equations, memberships and slice identities."""
    rep = VerificationReport()
    dual = pipe.dual
    dp = dual.pipe
    qg, gns = pipe.qg, pipe.gns
    n = qg.dim
    eff = tol.effective(n * n)
    sig = flip_matrix(n)
    W, V = pipe.W, pipe.V
    w_hat, v_hat = dp.W, dp.V
    jm, jhm = pipe.modular.J.mat, dp.modular.J.mat

    rep.check("dual_unitaries.pentagon_What", "W12 W13 W23 = W23 W12 for W-hat",
              pentagon_residual(w_hat, n), 1e-10, example_id)
    rep.check("dual_unitaries.pentagon_Vhat", "W12 W13 W23 = W23 W12 for V-hat",
              pentagon_residual(v_hat, n), 1e-10, example_id)

    sws = sig @ dagger(W) @ sig
    rep.check("dual_unitaries.What_closed_form", "W-hat = Sigma W* Sigma",
              numlin.resid(w_hat, sws), 1e-9, example_id)
    jj = kron(jhm, jhm)
    rep.check("dual_unitaries.V_closed_form",
              "V = (J-hat (x) J-hat) Sigma W* Sigma (J-hat (x) J-hat)",
              numlin.resid(V, jj @ np.conj(sws) @ np.conj(jj)), 1e-9, example_id)
    kk = kron(jm, jm)
    rep.check("dual_unitaries.Vhat_closed_form", "V-hat = (J (x) J) W (J (x) J)",
              numlin.resid(v_hat, kk @ np.conj(W) @ np.conj(kk)), 1e-9, example_id)

    # Delta-hat implemented by W-hat and V-hat on the dual basis
    eye = np.eye(n)
    r_w = max(numlin.resid(dp.gns.represent2(dp.qg.delta(dp.qg.alg.basis_vector(k))),
                           dagger(w_hat) @ kron(eye, dp.gns.pi[k]) @ w_hat)
              for k in range(n))
    rep.check("dual_unitaries.delta_hat_via_What", "Delta-hat(y) = W-hat*(1 (x) y) W-hat",
              r_w, 1e-10, example_id)
    r_v = max(numlin.resid(dp.gns.represent2(dp.qg.delta(dp.qg.alg.basis_vector(k))),
                           v_hat @ kron(dp.gns.pi[k], eye) @ dagger(v_hat))
              for k in range(n))
    rep.check("dual_unitaries.delta_hat_via_Vhat", "Delta-hat(y) = V-hat(y (x) 1) V-hat*",
              r_v, 1e-10, example_id)

    # memberships
    m_mats = list(gns.pi)
    m_comm = pipe.m_commutant
    mhat_mats = list(dual.b_mats)
    mhat_comm = dual.commutant
    rep.check("dual_unitaries.W_membership", "W in M (x) M-hat",
              tensor_membership_residual(W, m_comm, mhat_comm, n), eff, example_id)
    rep.check("dual_unitaries.What_membership", "W-hat in M-hat (x) M",
              tensor_membership_residual(w_hat, mhat_comm, m_comm, n), eff, example_id)
    rep.check("dual_unitaries.V_membership", "V in M-hat' (x) M",
              tensor_membership_residual(V, mhat_mats, m_comm, n), eff, example_id)
    rep.check("dual_unitaries.Vhat_membership", "V-hat in M' (x) M-hat",
              tensor_membership_residual(v_hat, m_mats, mhat_comm, n), eff, example_id)

    # slices of V* against the right weight
    t_alg = pipe.t_alg
    alg = qg.alg
    psi = pipe.psi_c
    gamma = pipe.gamma
    r_slice = 0.0
    for a in range(n):
        ga = gamma[:, a]
        for bidx in range(n):
            dens = np.outer(ga, np.conj(gamma[:, bidx]))
            lhs = slice_leg1(dagger(V), dens, n)
            z = t_alg.multiply(qg.delta(alg.involute(alg.basis_vector(bidx))),
                               kron(alg.basis_vector(a), alg.unit))
            rhs = gns.represent(psi @ z.reshape(n, n))
            r_slice = max(r_slice, numlin.resid(lhs, rhs))
    rep.check("dual_unitaries.slice_V",
              "(w_{Gamma(a),Gamma(b)} (x) id)(V*) = (psi (x) id)(Delta(b*)(a (x) 1))",
              r_slice, eff, example_id)

    # density statements: slices of Delta and of V and W recover M
    d3 = qg.comul.reshape(n, n, n)
    rep.check_flag("dual_unitaries.span_right_slices",
                   "M = [(w (x) id) Delta(x)]",
                   numlin.subspace_rank([d3[i, :, k] for i in range(n) for k in range(n)],
                                        tol) == n, example_id)
    rep.check_flag("dual_unitaries.span_left_slices",
                   "M = [(id (x) w) Delta(x)]",
                   numlin.subspace_rank([d3[:, j, k] for j in range(n) for k in range(n)],
                                        tol) == n, example_id)
    v4 = V.reshape(n, n, n, n)
    rep.check_flag("dual_unitaries.span_V_slices", "M = [(w (x) id)(V)]",
                   numlin.subspace_equal([v4[bq, :, aq, :] for aq in range(n)
                                          for bq in range(n)], m_mats, tol), example_id)
    w4 = W.reshape(n, n, n, n)
    rep.check_flag("dual_unitaries.span_W_leg2_slices",
                   "M recovered from the second-leg slices of W",
                   numlin.subspace_equal([w4[:, bq, :, aq] for aq in range(n)
                                          for bq in range(n)], m_mats, tol), example_id)
    return rep


def duality_theorem_suite(pipe, tol: Tolerance = DEFAULT_TOL,
                          example_id: str = "") -> VerificationReport:
    """Two-path equalities tying the dual modular data to the polar data of G."""
    rep = VerificationReport()
    dp = pipe.dual.pipe
    qg, gns, anti = pipe.qg, pipe.gns, pipe.anti
    n = qg.dim
    eff = tol.effective(n)
    nabla, jm = pipe.modular.nabla, pipe.modular.J.mat
    nabla_hat, jhm = dp.modular.nabla, dp.modular.J.mat
    N, im = pipe.polar.N, pipe.polar.I.mat
    W = pipe.W

    rep.check("duality.That_adjoint_is_G", "T-hat* = G",
              numlin.resid(dp.modular.T.mat.T, pipe.polar.G.mat), 1e-9, example_id)
    rep.check("duality.nabla_hat_is_Ninv", "nabla-hat = N^-1",
              numlin.resid(nabla_hat, mat_power(N, -1, tol)), 1e-9, example_id)
    rep.check("duality.Jhat_is_I", "J-hat = I",
              numlin.resid(jhm, im), 1e-9, example_id)

    star_r = np.array([qg.alg.involute(anti.apply_r(qg.alg.basis_vector(k)))
                       for k in range(n)]).T
    rep.check("duality.Jhat_Gamma", "J-hat Gamma(x) = lam(R(x)*)",
              numlin.resid(jhm @ np.conj(pipe.gamma), gns.lam @ star_r),
              1e-10, example_id)

    phase = pipe.nu ** 0.25j
    rep.check("duality.phase", "J-hat J = nu^(i/4) J J-hat",
              numlin.resid(jhm @ np.conj(jm), phase * jm @ np.conj(jhm)),
              eff, example_id)

    def coords_of_conjugation(u: Array, g: GnsData) -> Array:
        return np.array([g.pullback(u @ p @ dagger(u), tol) for p in g.pi]).T

    u_hat = mat_power(nabla_hat, 1j, tol)
    rep.check("duality.implement_tau", "tau_t(x) = nabla-hat^(it) x nabla-hat^(-it)",
              numlin.resid(coords_of_conjugation(u_hat, gns), anti.tau_coords(1.0, tol)),
              eff, example_id)
    r_r = max(numlin.resid(anti.r_matrix(gns.pi[k]), jhm @ gns.pi[k].T @ np.conj(jhm))
              for k in range(n))
    rep.check("duality.implement_R", "R(x) = J-hat x* J-hat", r_r, eff, example_id)

    u = mat_power(nabla, 1j, tol)
    rep.check("duality.implement_tau_hat", "tau-hat_t(y) = nabla^(it) y nabla^(-it)",
              numlin.resid(coords_of_conjugation(u, dp.gns), dp.anti.tau_coords(1.0, tol)),
              eff, example_id)
    r_rh = max(numlin.resid(dp.anti.r_matrix(dp.gns.pi[k]),
                            jm @ dp.gns.pi[k].T @ np.conj(jm))
               for k in range(n))
    rep.check("duality.implement_R_hat", "R-hat(y) = J y* J", r_rh, eff, example_id)

    eff2 = tol.effective(n * n)
    nn = kron(nabla_hat, nabla)
    rep.check("duality.W_nablas", "W (nabla-hat (x) nabla) = (nabla-hat (x) nabla) W",
              numlin.resid(W @ nn, nn @ W), eff2, example_id)
    jj = kron(jhm, jm)
    rep.check("duality.W_Js", "W (J-hat (x) J) = (J-hat (x) J) W*",
              numlin.resid(W @ jj, jj @ W.T), eff2, example_id)
    pn = kron(pipe.P, nabla)
    rep.check("duality.W_P_nabla", "W (P (x) nabla) = (P (x) nabla) W",
              numlin.resid(W @ pn, pn @ W), eff2, example_id)
    np_ = kron(nabla_hat, pipe.P)
    rep.check("duality.W_nabla_hat_P", "W (nabla-hat (x) P) = (nabla-hat (x) P) W",
              numlin.resid(W @ np_, np_ @ W), eff2, example_id)

    ii = kron(im, dp.polar.I.mat)
    rep.check("duality.RRhat_W", "(R (x) R-hat)(W) = W",
              numlin.resid(ii @ W.T @ np.conj(ii), W), eff2, example_id)
    for t in (0.5, 1.0):
        tt = kron(mat_power(N, -1j * t, tol), mat_power(dp.polar.N, -1j * t, tol))
        rep.check(f"duality.tau_tauhat_W[t={t}]", "(tau_t (x) tau-hat_t)(W) = W",
                  numlin.resid(tt @ W @ np.linalg.inv(tt), W), eff2, example_id)
        lhs = mat_power(nabla_hat, 1j * t, tol)
        d_it = mat_power(pipe.melt.delta_mat, 1j * t, tol)
        rhs = mat_power(pipe.P, 1j * t, tol) @ (jm @ np.conj(d_it) @ np.conj(jm))
        rep.check(f"duality.nabla_hat_P_delta[t={t}]",
                  "nabla-hat^(it) = P^(it) J delta^(it) J",
                  numlin.resid(lhs, rhs), eff, example_id)

    s_inv_star = np.array([qg.alg.involute(anti.apply_s_inv(qg.alg.basis_vector(k), tol))
                           for k in range(n)]).T
    rep.check("duality.That_adjoint_on_lam", "T-hat* lam(x) = lam(S^-1(x)*)",
              numlin.resid(dp.modular.T.mat.T @ np.conj(gns.lam), gns.lam @ s_inv_star),
              eff, example_id)
    return rep


def pontryagin_check(pipe, tol: Tolerance = DEFAULT_TOL,
                     example_id: str = "") -> VerificationReport:
    """Double dual versus the original: algebra, GNS map, weight, modular element."""
    rep = VerificationReport()
    ddp = pipe.dual.pipe.dual
    dd_pipe = ddp.pipe
    qg, gns = pipe.qg, pipe.gns
    n = qg.dim

    rep.check_flag("pontryagin.algebra", "M-hat-hat = M",
                   numlin.subspace_equal(list(ddp.b_mats), list(gns.pi), tol),
                   example_id)

    # coordinate identification: express pi(e_j) in the double-dual basis
    b_stack = ddp.b_mats.reshape(n, n * n).T
    pi_stack = gns.pi.reshape(n, n * n).T
    c, *_ = np.linalg.lstsq(b_stack, pi_stack, rcond=None)
    rep.check("pontryagin.identification", "pi(M) expands in the double-dual basis",
              float(np.linalg.norm(b_stack @ c - pi_stack)), tol.effective(n * n),
              example_id)

    rep.check("pontryagin.gns_map", "Lambda-hat-hat = Lambda",
              numlin.resid(dd_pipe.gns.lam @ c, gns.lam), 1e-9, example_id)
    rep.check("pontryagin.weight", "phi-hat-hat = phi",
              numlin.resid(c.T @ dd_pipe.qg.haar_left, qg.haar_left), 1e-10, example_id)
    rep.check("pontryagin.modular_element", "delta-hat-hat = delta",
              numlin.resid(dd_pipe.gns.represent(dd_pipe.melt.delta),
                           gns.represent(pipe.melt.delta)), 1e-9, example_id)
    rep.check("pontryagin.gamma", "Gamma-hat-hat = Gamma",
              numlin.resid(dd_pipe.gamma @ c, pipe.gamma), 1e-9, example_id)
    rep.check("pontryagin.W", "the multiplicative unitary of the double dual is W",
              numlin.resid(dd_pipe.W, pipe.W), 1e-9, example_id)
    return rep


def intersection_check(pipe, tol: Tolerance = DEFAULT_TOL,
                       example_id: str = "") -> tuple[int, VerificationReport]:
    rep = VerificationReport()
    dim = numlin.subspace_intersection_dim(list(pipe.gns.pi),
                                           list(pipe.dual.b_mats), tol)
    rep.check_flag("intersection.trivial", "M intersect M-hat = C 1",
                   dim == 1, example_id)
    return dim, rep


def commutation_table(pipe, tol: Tolerance = DEFAULT_TOL, example_id: str = "",
                      delta_mat: Array | None = None,
                      delta_hat_mat: Array | None = None) -> VerificationReport:
    """The commutation relations between nabla, nabla', their duals, J, J-hat,
    P and the modular elements, plus the hatted-swap second pass.

    At nu = 1 the nu^(ist)-twisted relations are asserted as vanishing
    commutators of the logarithms; the J conjugations entrywise.  The two
    delta arguments exist so defect fixtures can inject fakes.
    """
    rep = VerificationReport()
    dp = pipe.dual.pipe
    n = pipe.qg.dim
    tol9 = 1e-9

    nabla, nabla_p = pipe.modular.nabla, pipe.nabla_p
    nabla_hat, nabla_hat_p = dp.modular.nabla, dp.nabla_p
    j = pipe.modular.J
    j_hat = dp.modular.J
    p = pipe.P
    d_mat = pipe.melt.delta_mat if delta_mat is None else cmat(delta_mat)
    dh_mat = dp.gns.represent(dp.melt.delta) if delta_hat_mat is None else cmat(delta_hat_mat)

    logs = {
        "nabla": mat_log(nabla, tol), "nabla'": mat_log(nabla_p, tol),
        "nabla-hat": mat_log(nabla_hat, tol), "nabla-hat'": mat_log(nabla_hat_p, tol),
        "P": mat_log(p, tol), "delta": mat_log(d_mat, tol),
        "delta-hat": mat_log(dh_mat, tol),
    }

    def comm(cid: str, a: str, b: str):
        la, lb = logs[a], logs[b]
        rep.check(cid, f"[{a}^(it), {b}^(is)] relation (log-commutator form at nu = 1)",
                  numlin.resid(la @ lb, lb @ la), tol9, example_id)

    def conj(cid: str, k, x: Array, target: Array, anchor: str):
        rep.check(cid, anchor, numlin.resid(k.sandwich(x), target), tol9, example_id)

    # pass 1: the relations as stated
    comm("commutation.com1a", "nabla-hat", "nabla")
    comm("commutation.com1b", "nabla-hat'", "nabla'")
    comm("commutation.com2a", "nabla-hat", "nabla'")
    comm("commutation.com2b", "nabla", "nabla'")
    conj("commutation.com3a", j_hat, nabla, nabla_p, "J-hat nabla J-hat = nabla'")
    conj("commutation.com3b", j, nabla, mat_power(nabla, -1, tol), "J nabla J = nabla^-1")
    conj("commutation.com3c", j, nabla_p, mat_power(nabla_p, -1, tol),
         "J nabla' J = nabla'^-1")
    conj("commutation.com4a", j_hat, p, mat_power(p, -1, tol), "J-hat P J-hat = P^-1")
    conj("commutation.com4b", j_hat, d_mat, np.linalg.inv(d_mat),
         "J-hat delta J-hat = delta^-1")
    comm("commutation.com5a", "P", "nabla")
    comm("commutation.com5b", "P", "nabla'")
    comm("commutation.com6", "P", "delta")
    comm("commutation.com7a", "nabla", "delta")
    comm("commutation.com7b", "nabla'", "delta")
    comm("commutation.com8a", "nabla-hat", "delta")
    comm("commutation.com8b", "nabla-hat'", "delta")

    # pass 2: swap the hats, replace delta by delta-hat, nu by nu^-1, keep P
    comm("commutation.swap_com1a", "nabla", "nabla-hat")
    comm("commutation.swap_com1b", "nabla'", "nabla-hat'")
    comm("commutation.swap_com2a", "nabla", "nabla-hat'")
    comm("commutation.swap_com2b", "nabla-hat", "nabla-hat'")
    conj("commutation.swap_com3a", j, nabla_hat, nabla_hat_p, "J nabla-hat J = nabla-hat'")
    conj("commutation.swap_com3b", j_hat, nabla_hat, mat_power(nabla_hat, -1, tol),
         "J-hat nabla-hat J-hat = nabla-hat^-1")
    conj("commutation.swap_com3c", j_hat, nabla_hat_p, mat_power(nabla_hat_p, -1, tol),
         "J-hat nabla-hat' J-hat = nabla-hat'^-1")
    conj("commutation.swap_com4a", j, p, mat_power(p, -1, tol), "J P J = P^-1")
    conj("commutation.swap_com4b", j, dh_mat, np.linalg.inv(dh_mat),
         "J delta-hat J = delta-hat^-1")
    comm("commutation.swap_com5a", "P", "nabla-hat")
    comm("commutation.swap_com5b", "P", "nabla-hat'")
    comm("commutation.swap_com6", "P", "delta-hat")
    comm("commutation.swap_com7a", "nabla-hat", "delta-hat")
    comm("commutation.swap_com7b", "nabla-hat'", "delta-hat")
    comm("commutation.swap_com8a", "nabla", "delta-hat")
    comm("commutation.swap_com8b", "nabla'", "delta-hat")
    return rep


def predual_suite(pipe, rng: np.random.Generator,
                  tol: Tolerance = DEFAULT_TOL, example_id: str = "",
                  samples: int = 6) -> VerificationReport:
    """Convolution-algebra and lambda/xi identities over seeded random functionals."""
    rep = VerificationReport()
    qg, anti = pipe.qg, pipe.anti
    n = qg.dim
    eff = tol.effective(n)
    s_mat = anti.s_mat

    def rand_w():
        return rng.standard_normal(n) + 1j * rng.standard_normal(n)

    ws = [rand_w() for _ in range(samples)]

    r_assoc = max(
        numlin.resid(predual_product(qg, predual_product(qg, a, b), c),
                     predual_product(qg, a, predual_product(qg, b, c)))
        for a, b, c in zip(ws, ws[1:], ws[2:]))
    rep.check("predual.associative", "(w t) u = w (t u)", r_assoc,
              eff * 10, example_id)

    r_mult = max(numlin.resid(lambda_of(pipe, predual_product(qg, a, b)),
                              lambda_of(pipe, a) @ lambda_of(pipe, b))
                 for a, b in zip(ws, ws[1:]))
    rep.check("predual.lambda_multiplicative", "lambda(w t) = lambda(w) lambda(t)",
              r_mult, 1e-10, example_id)

    r_star = max(numlin.resid(lambda_of(pipe, sharp_star(s_mat, w)),
                              dagger(lambda_of(pipe, w))) for w in ws)
    rep.check("predual.lambda_star", "lambda(w*) = lambda(w)*", r_star, 1e-10, example_id)

    r_module = max(numlin.resid(lambda_of(pipe, a) @ xi_of(pipe, b),
                                xi_of(pipe, predual_product(qg, a, b)))
                   for a, b in zip(ws, ws[1:]))
    rep.check("predual.lambda_xi_module", "lambda(eta) xi(w) = xi(eta w)",
              r_module, 1e-10, example_id)

    r_invol = max(numlin.resid(sharp_star(s_mat, sharp_star(s_mat, w)), w) for w in ws)
    rep.check("predual.sharp_involutive", "(w*)* = w", r_invol, eff, example_id)

    r_antim = max(
        numlin.resid(sharp_star(s_mat, predual_product(qg, a, b)),
                     predual_product(qg, sharp_star(s_mat, b), sharp_star(s_mat, a)))
        for a, b in zip(ws, ws[1:]))
    rep.check("predual.sharp_antimultiplicative", "(w t)* = t* w*", r_antim,
              eff, example_id)

    r_xi = 0.0
    for w in ws[:3]:
        xi = xi_of(pipe, w)
        for k in range(n):
            lhs = numlin.inner(xi, pipe.gns.lam[:, k])
            rhs = star_algebra.apply_functional(
                w, qg.alg.involute(qg.alg.basis_vector(k)))
            r_xi = max(r_xi, abs(lhs - rhs))
    rep.check("predual.xi_defining", "<xi(w), lam(x)> = w(x*)", r_xi, eff, example_id)
    return rep

"""Opposite and commutant quantum groups, their canonical weights, and the
duality identities relating them to the dual.

Both variants reuse the generic pipeline with swapped inputs; the closed
forms (W-op = Sigma V* Sigma, W' = V-hat, delta-op = delta^-1, delta' =
J delta J, ...) are assertions, never constructions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numlin
from .builders import FiniteQuantumGroup, comultiplication_check, flip_comul, solve_haar
from .gns_modular import GnsData, flip_matrix
from .numlin import Array, DEFAULT_TOL, Tolerance, cmat, dagger, kron, mat_power
from .report import VerificationReport


@dataclass(eq=False)
class VariantData:
    opposite: object        # pipeline of (M, chi Delta) with left weight psi, GNS Gamma
    commutant: object       # pipeline of (M', Delta') with left weight phi', GNS Lambda'


def build_opposite(pipe, tol: Tolerance = DEFAULT_TOL,
                   report: VerificationReport | None = None):
    """Pipeline of (M, chi Delta) with left weight psi and GNS map Gamma."""
    from .pipeline import build_pipeline

    rep = report if report is not None else VerificationReport()
    qg = pipe.qg
    name = pipe.name + "op"
    comul_op = flip_comul(qg.comul)
    rep.merge(comultiplication_check(qg.alg, comul_op, tol, name))
    haar = solve_haar(qg.alg, comul_op, tol)
    rep.check_flag("variants.opposite_haar_nullity",
                   "invariant functionals of the opposite are unique",
                   haar.left_nullity == 1 and haar.right_nullity == 1, name)
    qg_op = FiniteQuantumGroup(qg.alg, comul_op, pipe.psi_c, qg.haar_left, name)
    gns_op = GnsData(qg.alg, pipe.gamma)
    op_pipe = build_pipeline(qg_op, gns=gns_op, name=name, dual_levels=1,
                             tol=tol, report=rep, t_alg=pipe.t_alg)

    n = qg.dim
    sig = flip_matrix(n)
    rep.check("variants.W_op", "W-op = Sigma V* Sigma",
              numlin.resid(op_pipe.W, sig @ dagger(pipe.V) @ sig), 1e-10, name)
    rep.check("variants.delta_op", "delta-op = delta^-1",
              numlin.resid(op_pipe.melt.delta_mat,
                           np.linalg.inv(pipe.melt.delta_mat)), 1e-9, name)
    rep.check("variants.tau_op", "tau-op_t = tau_-t",
              numlin.resid(op_pipe.anti.tau_coords(1.0, tol),
                           pipe.anti.tau_coords(-1.0, tol)), tol.effective(n), name)
    rep.check("variants.R_op", "R-op = R",
              numlin.resid(op_pipe.anti.r_coef, pipe.anti.r_coef),
              tol.effective(n), name)
    return op_pipe


def build_commutant(pipe, tol: Tolerance = DEFAULT_TOL,
                    report: VerificationReport | None = None):
    """Pipeline of (M', Delta') in the conjugated basis J pi(e_k) J.

    In that basis all structure data are the complex conjugates of the
    original, and the GNS map of phi'(x) = phi(J x J) is J conj(lam).
    """
    from .pipeline import build_pipeline

    rep = report if report is not None else VerificationReport()
    qg, gns = pipe.qg, pipe.gns
    n = qg.dim
    name = pipe.name + "'"
    jm = pipe.modular.J.mat

    alg_c = qg.alg.conjugate()
    comul_c = np.conj(qg.comul)
    rep.merge(comultiplication_check(alg_c, comul_c, tol, name))
    haar = solve_haar(alg_c, comul_c, tol)
    rep.check_flag("variants.commutant_haar_nullity",
                   "invariant functionals of the commutant are unique",
                   haar.left_nullity == 1 and haar.right_nullity == 1, name)
    qg_c = FiniteQuantumGroup(alg_c, comul_c, np.conj(qg.haar_left),
                              np.conj(pipe.psi_c), name)
    gns_c = GnsData(alg_c, jm @ np.conj(gns.lam))
    comm_pipe = build_pipeline(qg_c, gns=gns_c, name=name, dual_levels=1,
                               tol=tol, report=rep)

    conj_basis = [pipe.modular.J.sandwich(p) for p in gns.pi]
    r_basis = max(numlin.resid(comm_pipe.gns.pi[k], conj_basis[k]) for k in range(n))
    rep.check("variants.commutant_basis", "pi'(e_k) = J pi(e_k) J", r_basis,
              tol.effective(n), name)
    rep.check_flag("variants.commutant_subspace", "M' = commutant of pi(M)",
                   numlin.subspace_equal(list(comm_pipe.gns.pi), pipe.m_commutant, tol),
                   name)
    rep.check_flag("variants.commutant_dim", "dim M' = dim M",
                   len(pipe.m_commutant) == n, name)

    rep.check("variants.W_comm", "W' = (J (x) J) W (J (x) J) = V-hat",
              numlin.resid(comm_pipe.W, pipe.dual.pipe.V), 1e-9, name)
    rep.check("variants.delta_comm", "delta' = J delta J",
              numlin.resid(comm_pipe.melt.delta_mat,
                           pipe.modular.J.sandwich(pipe.melt.delta_mat)), 1e-9, name)

    r_rp = max(numlin.resid(
        comm_pipe.anti.r_matrix(comm_pipe.gns.pi[k]),
        pipe.modular.J.sandwich(pipe.anti.r_matrix(gns.pi[k])))
        for k in range(n))
    rep.check("variants.R_comm", "R'(x) = J R(J x J) J", r_rp, tol.effective(n), name)

    u = mat_power(comm_pipe.polar.N, -1j, tol)
    u0 = mat_power(pipe.polar.N, 1j, tol)
    r_tau = max(numlin.resid(
        u @ comm_pipe.gns.pi[k] @ dagger(u),
        pipe.modular.J.sandwich(u0 @ gns.pi[k] @ dagger(u0)))
        for k in range(n))
    rep.check("variants.tau_comm", "tau'_t(x) = J tau_-t(J x J) J", r_tau,
              tol.effective(n), name)
    return comm_pipe


def _dual_comul_evaluator(dual_pipe_source, x: Array) -> Array:
    """Delta-hat(x) = Sigma W (x (x) 1) W* Sigma for the given source pipeline."""
    n = dual_pipe_source.qg.dim
    sig = flip_matrix(n)
    w = dual_pipe_source.W
    return sig @ w @ kron(cmat(x), np.eye(n)) @ dagger(w) @ sig


def variants_suite(pipe, tol: Tolerance = DEFAULT_TOL,
                   example_id: str = "") -> VerificationReport:
    """The three duality identities of the opposite/commutant constructions and
    the isomorphism Phi(x) = w x w* between (M, Delta) and the opposite commutant."""
    rep = VerificationReport()
    op_pipe = pipe.variants.opposite
    comm_pipe = pipe.variants.commutant
    dp = pipe.dual.pipe
    qg, gns = pipe.qg, pipe.gns
    n = qg.dim
    jm = pipe.modular.J.mat
    jhm = dp.modular.J.mat
    jj = kron(jhm, jhm)
    sig = flip_matrix(n)

    # (M, Delta)-op-dual = (M, Delta)-dual-commutant
    op_dual_basis = list(op_pipe.dual.b_mats)
    dual_comm_basis = [dp.modular.J.sandwich(b) for b in pipe.dual.b_mats]
    rep.check_flag("variants.op_dual_algebra", "dual of opposite = commutant of dual",
                   numlin.subspace_equal(op_dual_basis, dual_comm_basis, tol),
                   example_id)
    r1 = 0.0
    for b in op_dual_basis:
        lhs = _dual_comul_evaluator(op_pipe, b)
        inner_mat = _dual_comul_evaluator(pipe, dp.modular.J.sandwich(b))
        rhs = jj @ np.conj(inner_mat) @ np.conj(jj)
        r1 = max(r1, numlin.resid(lhs, rhs))
    rep.check("variants.op_dual_comul",
              "comultiplication of the opposite dual = (J-hat (x) J-hat)-twisted dual",
              r1, 1e-9, example_id)

    # (M, Delta)'-dual = (M, Delta)-dual-op
    comm_dual_basis = list(comm_pipe.dual.b_mats)
    rep.check_flag("variants.comm_dual_algebra", "dual of commutant = dual (as algebras)",
                   numlin.subspace_equal(comm_dual_basis, list(pipe.dual.b_mats), tol),
                   example_id)
    r2 = 0.0
    for b in comm_dual_basis:
        lhs = _dual_comul_evaluator(comm_pipe, b)
        rhs = sig @ _dual_comul_evaluator(pipe, b) @ sig
        r2 = max(r2, numlin.resid(lhs, rhs))
    rep.check("variants.comm_dual_comul",
              "comultiplication of the commutant dual = flipped dual comultiplication",
              r2, 1e-9, example_id)

    # (M, Delta)'-op = (M, Delta)-op-'
    op_j = op_pipe.modular.J
    op_comm_basis = [op_j.sandwich(p) for p in gns.pi]
    rep.check_flag("variants.op_comm_algebra",
                   "commutant of the opposite = the commutant (as algebras)",
                   numlin.subspace_equal(op_comm_basis, list(comm_pipe.gns.pi), tol),
                   example_id)
    opjj = kron(op_j.mat, op_j.mat)
    r3 = 0.0
    for k in range(n):
        x = comm_pipe.gns.pi[k]
        lhs = sig @ comm_pipe.gns.represent2(
            comm_pipe.qg.delta(comm_pipe.qg.alg.basis_vector(k))) @ sig
        y = op_j.sandwich(x)
        inner_mat = op_pipe.gns.represent2(op_pipe.qg.delta(op_pipe.gns.pullback(y, tol)))
        rhs = opjj @ np.conj(inner_mat) @ np.conj(opjj)
        r3 = max(r3, numlin.resid(lhs, rhs))
    rep.check("variants.op_comm_comul",
              "flipped commutant comultiplication = commutant of the opposite",
              r3, 1e-9, example_id)

    # Phi(x) = w x w* with w = J-hat J = nu^(i/4) J J-hat
    w_mat = jhm @ np.conj(jm)
    phase = pipe.nu ** 0.25j
    rep.check("variants.w_two_forms", "w = J-hat J = nu^(i/4) J J-hat",
              numlin.resid(w_mat, phase * jm @ np.conj(jhm)), tol.effective(n),
              example_id)
    phi_basis = [w_mat @ p @ dagger(w_mat) for p in gns.pi]
    rep.check_flag("variants.Phi_onto", "Phi maps M onto M'",
                   numlin.subspace_equal(phi_basis, list(comm_pipe.gns.pi), tol),
                   example_id)
    r_phi = 0.0
    ww = kron(w_mat, w_mat)
    for k in range(n):
        phi_x = w_mat @ gns.pi[k] @ dagger(w_mat)
        lhs = sig @ comm_pipe.gns.represent2(
            comm_pipe.qg.delta(comm_pipe.gns.pullback(phi_x, tol))) @ sig
        rhs = ww @ gns.represent2(qg.delta(qg.alg.basis_vector(k))) @ dagger(ww)
        r_phi = max(r_phi, numlin.resid(lhs, rhs))
    rep.check("variants.Phi_intertwines", "Delta'-op(Phi(x)) = (Phi (x) Phi) Delta(x)",
              r_phi, 1e-9, example_id)

    # involutivity: op of op and commutant of commutant recover the original
    rep.check("variants.op_op", "flipping the comultiplication twice is the identity",
              numlin.resid(flip_comul(op_pipe.qg.comul), qg.comul),
              tol.effective(n * n), example_id)
    double_comm = numlin.commutant(pipe.m_commutant, n, tol)
    rep.check_flag("variants.comm_comm_algebra", "M'' = M (double commutant)",
                   numlin.subspace_equal(double_comm, list(gns.pi), tol), example_id)
    jc = comm_pipe.modular.J
    r_cc = 0.0
    jcc = kron(jc.mat, jc.mat)
    for k in range(n):
        x = gns.pi[k]
        y = jc.sandwich(x)
        inner_mat = comm_pipe.gns.represent2(
            comm_pipe.qg.delta(comm_pipe.gns.pullback(y, tol)))
        lhs = jcc @ np.conj(inner_mat) @ np.conj(jcc)
        rhs = gns.represent2(qg.delta(qg.alg.basis_vector(k)))
        r_cc = max(r_cc, numlin.resid(lhs, rhs))
    rep.check("variants.comm_comm_comul",
              "commutant construction applied twice recovers the comultiplication",
              r_cc, 1e-9, example_id)
    return rep

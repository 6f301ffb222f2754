"""Strengthened invariance: operator-valued slices of the Haar weight against
an external matrix algebra, checked on seeded random positive samples."""

from __future__ import annotations

import numpy as np

from . import numlin, star_algebra
from .errors import DimensionMismatch
from .numlin import Array, DEFAULT_TOL, Tolerance, cmat, dagger, kron
from .report import VerificationReport


def slice_weight(x: Array, density: Array, dims: tuple[int, int],
                 side: str = "last") -> Array:
    """Partial application of the functional Tr(density .) on one tensor leg.

    ``dims = (d1, d2)`` are the leg dimensions of ``x``; ``side`` selects which
    leg the functional eats.  On elementary tensors the first-leg version
    satisfies (w (x) id)(a (x) b) = w(a) b.
    """
    d1, d2 = dims
    x = cmat(x)
    if x.shape != (d1 * d2, d1 * d2):
        raise DimensionMismatch(f"matrix is not {d1 * d2} x {d1 * d2}")
    x4 = x.reshape(d1, d2, d1, d2)
    r = cmat(density)
    if side == "first":
        return np.einsum("ji,ikjl->kl", r, x4)
    if side == "last":
        return np.einsum("lk,ikjl->ij", r, x4)
    raise ValueError(f"side must be 'first' or 'last', got {side!r}")


def _sample_psd(rng: np.random.Generator, k: int, pi: Array) -> Array:
    """Random PSD element of B(C^k) (x) pi(M), sampled as Y* Y."""
    n = pi.shape[1]
    g = rng.standard_normal((k, k, len(pi))) + 1j * rng.standard_normal((k, k, len(pi)))
    y = np.einsum("abj,jpq->apbq", g, pi).reshape(k * n, k * n)
    return dagger(y) @ y


def strong_invariance_suite(pipe, kdims=(1, 2, 3), batch: int = 20, seed: int = 7,
                            tol: Tolerance = DEFAULT_TOL,
                            example_id: str = "") -> VerificationReport:
    """(id (x) id (x) phi)(id (x) Delta)(X) = (id (x) phi)(X) (x) 1 on random
    PSD X in B(C^k) (x) M, plus the scalar case on the full basis."""
    rep = VerificationReport()
    qg, gns = pipe.qg, pipe.gns
    n = qg.dim
    alg = qg.alg
    phi, psi = qg.haar_left, pipe.psi_c
    rng = np.random.default_rng(seed)

    # k = 1 case on all basis elements, by linearity
    r_left = max(
        numlin.resid(qg.delta(alg.basis_vector(k)).reshape(n, n) @ phi,
                     star_algebra.apply_functional(phi, alg.basis_vector(k)) * alg.unit)
        for k in range(n))
    rep.check("invariance.left_scalar", "(id (x) phi) Delta(x) = phi(x) 1",
              r_left, 1e-10, example_id)
    r_right = max(
        numlin.resid(psi @ qg.delta(alg.basis_vector(k)).reshape(n, n),
                     star_algebra.apply_functional(psi, alg.basis_vector(k)) * alg.unit)
        for k in range(n))
    rep.check("invariance.right_scalar", "(psi (x) id) Delta(x) = psi(x) 1",
              r_right, 1e-10, example_id)

    d_phi = star_algebra.density_wrt_trace(list(gns.pi), phi, tol)
    eye_n = np.eye(n)

    for k in sorted(set(kdims)):
        worst = 0.0
        worst_pos = 0.0
        for _ in range(batch):
            x = _sample_psd(rng, k, gns.pi)
            x4 = x.reshape(k, n, k, n)
            # (id (x) Delta)(X) on C^k (x) H (x) H
            y = np.zeros((k, n * n, k, n * n), dtype=complex)
            for a in range(k):
                for b in range(k):
                    coords = gns.pullback(x4[a, :, b, :], tol)
                    y[a, :, b, :] = gns.represent2(qg.delta(coords))
            lhs = slice_weight(y.reshape(k * n * n, k * n * n), d_phi, (k * n, n),
                               side="last")
            sliced = slice_weight(x, d_phi, (k, n), side="last")
            rhs = kron(sliced, eye_n)
            worst = max(worst, numlin.resid(lhs, rhs))
            worst_pos = max(worst_pos,
                            max(0.0, -float(np.linalg.eigvalsh(
                                0.5 * (sliced + dagger(sliced))).min())))
        rep.check(f"invariance.strengthened[k={k}]",
                  "(id (x) id (x) phi)(id (x) Delta)(X) = (id (x) phi)(X) (x) 1",
                  worst, 1e-10, example_id)
        rep.check(f"invariance.slice_positive[k={k}]",
                  "(id (x) phi)(X) is positive for positive X",
                  worst_pos, tol.effective(k * n), example_id)

    # rank-one projections, the proof's own test vectors
    worst_eta = 0.0
    for _ in range(batch // 2):
        eta = rng.standard_normal(2 * n) + 1j * rng.standard_normal(2 * n)
        eta /= np.linalg.norm(eta)
        p_eta = np.outer(eta, np.conj(eta))
        x4 = p_eta.reshape(2, n, 2, n)
        try:
            coords = [[gns.pullback(x4[a, :, b, :], tol) for b in range(2)]
                      for a in range(2)]
        except Exception:
            continue  # P_eta only qualifies when it lies in B(C^2) (x) pi(M)
        y = np.zeros((2, n * n, 2, n * n), dtype=complex)
        for a in range(2):
            for b in range(2):
                y[a, :, b, :] = gns.represent2(qg.delta(coords[a][b]))
        lhs = slice_weight(y.reshape(2 * n * n, 2 * n * n), d_phi, (2 * n, n), "last")
        rhs = kron(slice_weight(p_eta, d_phi, (2, n), "last"), eye_n)
        worst_eta = max(worst_eta, numlin.resid(lhs, rhs))
    rep.check("invariance.rank_one", "rank-one positive test vectors",
              worst_eta, 1e-10, example_id)

    # the slice commutes with functionals on the external leg
    worst_sw = 0.0
    k = 2
    for _ in range(5):
        x = (rng.standard_normal((n * k, n * k))
             + 1j * rng.standard_normal((n * k, n * k)))
        r_w = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        lhs = np.trace(r_w @ slice_weight(x, d_phi, (n, k), side="first"))
        rhs = np.trace(d_phi @ slice_weight(x, r_w, (n, k), side="last"))
        worst_sw = max(worst_sw, abs(lhs - rhs))
    rep.check("invariance.slice_compatibility", "w((phi (x) id)(x)) = phi((id (x) w)(x))",
              worst_sw, tol.effective(n * k), example_id)
    return rep

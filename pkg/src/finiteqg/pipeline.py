"""End-to-end orchestration: build every operator of a finite quantum group,
recurse into its dual, and run all verification suites."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import antipode as antipode_mod
from . import duality as duality_mod
from . import invariance as invariance_mod
from . import numlin, star_algebra, variants as variants_mod
from .builders import FiniteQuantumGroup, comultiplication_check, solve_haar
from .errors import FiniteQGError
from .gns_modular import (GnsData, ModularData, PolarData, build_G, build_P,
                          build_V, build_W, build_gns, modular_data,
                          w_structure_suite)
from .numlin import Array, DEFAULT_TOL, Tolerance
from .report import VerificationReport
from .star_algebra import StarAlgebra


@dataclass
class PipelineConfig:
    tol: Tolerance = field(default_factory=Tolerance)
    seed: int = 7
    kdims: tuple[int, ...] = (1, 2, 3)
    batch: int = 20


@dataclass(eq=False)
class Pipeline:
    """Everything the constructions produce for one quantum group."""

    name: str
    qg: FiniteQuantumGroup
    t_alg: StarAlgebra
    gns: GnsData
    modular: ModularData
    W: Array
    polar: PolarData
    anti: antipode_mod.AntipodeData
    nu: float
    psi_c: Array
    melt: antipode_mod.ModularElementData
    P: Array
    V: Array
    dual: duality_mod.DualData | None = None
    variants: variants_mod.VariantData | None = None

    @property
    def gamma(self) -> Array:
        return self.melt.gamma

    @property
    def nabla_p(self) -> Array:
        return self.melt.nabla_p

    @cached_property
    def m_commutant(self) -> list[Array]:
        return numlin.commutant(list(self.gns.pi), self.qg.dim)


def build_pipeline(qg: FiniteQuantumGroup, gns: GnsData | None = None,
                   name: str | None = None, dual_levels: int = 0,
                   tol: Tolerance = DEFAULT_TOL,
                   report: VerificationReport | None = None,
                   t_alg: StarAlgebra | None = None) -> Pipeline:
    """Construct GNS, modular data, W, (G, N, I), the antipode triple, nu,
    delta, the right-weight GNS data, P and V; recurse into the dual
    ``dual_levels`` deep."""
    rep = report if report is not None else VerificationReport()
    name = qg.name if name is None else name
    if t_alg is None:
        t_alg = qg.alg.tensor(qg.alg)
    if gns is None:
        gns = build_gns(qg, tol)

    modular = modular_data(gns, tol)
    w = build_W(qg, gns, t_alg, tol)
    polar = build_G(qg, gns, qg.haar_right, t_alg, tol)
    rep.check("build.G_involutive", "G is involutive", polar.G.involution_defect(),
              tol.effective(qg.dim), name)
    rep.check("build.G_least_squares", "G is well defined on the slice vectors",
              polar.lsq_residual, tol.effective(qg.dim ** 2), name)

    anti = antipode_mod.antipode_data(gns, polar, tol)
    nu = antipode_mod.compute_nu(qg, anti, tol)

    psi_c = anti.r_coef.T @ qg.haar_left
    c = complex(np.vdot(qg.haar_right, psi_c) / np.vdot(qg.haar_right, qg.haar_right))
    rep.check("build.psi_is_phi_R",
              "phi R is right invariant and proportional to the solved psi",
              numlin.resid(psi_c, c * qg.haar_right) + abs(c.imag) + max(0.0, -c.real),
              tol.effective(qg.dim), name)

    melt = antipode_mod.compute_delta(qg, gns, psi_c, tol)
    melt = antipode_mod.right_weight_gns(qg, gns, modular, melt, nu, psi_c, tol)
    p = build_P(polar, gns, nu, tol)
    v = build_V(qg, melt.gamma, t_alg, tol)

    pipe = Pipeline(name, qg, t_alg, gns, modular, w, polar, anti, nu,
                    psi_c, melt, p, v)
    if dual_levels > 0:
        pipe.dual = duality_mod.build_dual(pipe, dual_levels - 1, tol, rep)
    return pipe


# -- full verification run --------------------------------------------------------


def run_full(qg: FiniteQuantumGroup, config: PipelineConfig | None = None,
             with_variants: bool = True) -> tuple[Pipeline | None, VerificationReport]:
    """Run the complete pipeline and every suite; on a stage failure, record it
    and mark the remaining stages skipped."""
    config = config or PipelineConfig()
    tol = config.tol
    rep = VerificationReport()
    name = qg.name
    pipe: Pipeline | None = None

    def staged(stage: str, fn):
        t0 = time.perf_counter()
        try:
            out = fn()
        except FiniteQGError as exc:
            rep.check(f"{stage}.stage_error", f"{type(exc).__name__}: {exc}", 1.0, 0.0, name)
            raise _StageFailure(stage) from exc
        rep.timings[f"{name}:{stage}"] = time.perf_counter() - t0
        return out

    stages = [
        ("axioms", lambda: rep.merge(star_algebra.axioms_check(qg.alg, tol, name))),
        ("comultiplication", lambda: rep.merge(
            comultiplication_check(qg.alg, qg.comul, tol, name))),
        ("haar", lambda: _haar_stage(qg, tol, rep, name)),
        ("core", lambda: build_pipeline(qg, name=name, dual_levels=2, tol=tol,
                                        report=rep)),
        ("w_structure", lambda: rep.merge(w_structure_suite(pipe, tol, name))),
        ("antipode_structure", lambda: rep.merge(
            antipode_mod.structure_suite(pipe, tol, name))),
        ("strong_left_invariance", lambda: rep.merge(
            antipode_mod.strong_invariance_check(pipe, tol, name))),
        ("delta_identities", lambda: rep.merge(
            antipode_mod.delta_identity_suite(pipe, tol, name))),
        ("predual", lambda: rep.merge(duality_mod.predual_suite(
            pipe, np.random.default_rng(config.seed), tol, name))),
        ("dual_unitaries", lambda: rep.merge(duality_mod.dual_unitaries(pipe, tol, name))),
        ("duality_theorem", lambda: rep.merge(
            duality_mod.duality_theorem_suite(pipe, tol, name))),
        ("commutation_table", lambda: rep.merge(
            duality_mod.commutation_table(pipe, tol, name))),
        ("pontryagin", lambda: rep.merge(duality_mod.pontryagin_check(pipe, tol, name))),
        ("intersection", lambda: rep.merge(duality_mod.intersection_check(pipe, tol, name)[1])),
        ("strengthened_invariance", lambda: rep.merge(
            invariance_mod.strong_invariance_suite(
                pipe, config.kdims, config.batch, config.seed, tol, name))),
    ]
    if with_variants:
        stages.append(("variants", lambda: _variants_stage(pipe, tol, rep, name)))

    done = 0
    try:
        for i, (stage, fn) in enumerate(stages):
            out = staged(stage, fn)
            if stage == "core":
                pipe = out
            done = i + 1
    except _StageFailure:
        for stage, _ in stages[done + 1:]:
            rep.skip(f"{name}:{stage}")
    return pipe, rep


class _StageFailure(Exception):
    pass


def _haar_stage(qg, tol, rep, name):
    haar = solve_haar(qg.alg, qg.comul, tol)
    rep.check_flag("haar.left_nullity", "left invariance nullspace is one-dimensional",
                   haar.left_nullity == 1, name)
    rep.check_flag("haar.right_nullity", "right invariance nullspace is one-dimensional",
                   haar.right_nullity == 1, name)
    rep.check("haar.left_matches", "solved left Haar equals the stored one",
              numlin.resid(haar.phi, qg.haar_left), tol.effective(qg.dim), name)


def _variants_stage(pipe, tol, rep, name):
    op_pipe = variants_mod.build_opposite(pipe, tol, rep)
    comm_pipe = variants_mod.build_commutant(pipe, tol, rep)
    pipe.variants = variants_mod.VariantData(op_pipe, comm_pipe)
    rep.merge(variants_mod.variants_suite(pipe, tol, name))

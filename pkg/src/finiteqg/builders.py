"""Builders for finite quantum groups and the Haar solver.

A finite quantum group is a :class:`StarAlgebra` together with a
comultiplication matrix ``comul`` of shape (n*n, n): ``Delta(e_k)`` has tensor
coordinates ``comul[:, k]`` (kron ordering).  The Haar functionals are solved
from the invariance linear systems and validated positive and faithful.
"""

from __future__ import annotations

import importlib.resources
import json
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import numlin, star_algebra
from .errors import InvalidTable, NonUnique, NoPositiveSolution
from .numlin import Array, Tolerance, DEFAULT_TOL, cmat
from .report import VerificationReport
from .star_algebra import StarAlgebra


@dataclass(frozen=True)
class GroupTable:
    """Cayley table of a finite group: ``table[i, j]`` is the index of g_i g_j."""

    table: np.ndarray
    identity: int
    inverse: np.ndarray
    labels: tuple[str, ...] = ()

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @classmethod
    def from_table(cls, table, labels=()) -> "GroupTable":
        t = np.asarray(table, dtype=int)
        n = t.shape[0]
        if t.shape != (n, n) or n == 0:
            raise InvalidTable("table must be square and nonempty")
        if t.min() < 0 or t.max() >= n:
            raise InvalidTable("table entries out of range")
        for i in range(n):
            if len(set(t[i, :])) != n or len(set(t[:, i])) != n:
                raise InvalidTable("table is not a Latin square")
        ident = [g for g in range(n)
                 if all(t[g, j] == j for j in range(n)) and all(t[j, g] == j for j in range(n))]
        if len(ident) != 1:
            raise InvalidTable("table has no two-sided identity")
        e = ident[0]
        inv = np.full(n, -1, dtype=int)
        for g in range(n):
            js = [j for j in range(n) if t[g, j] == e]
            if len(js) != 1 or t[js[0], g] != e:
                raise InvalidTable("inverses are not consistent")
            inv[g] = js[0]
        # brute-force associativity; group orders here stay <= 24
        for i in range(n):
            for j in range(n):
                if np.any(t[t[i, j], :] != t[i, t[j, :]]):
                    raise InvalidTable("table is not associative")
        if not labels:
            labels = tuple(f"g{k}" for k in range(n))
        return cls(t, e, inv, tuple(labels))


def trivial_group() -> GroupTable:
    return GroupTable.from_table([[0]], labels=("e",))


def cyclic_group(n: int) -> GroupTable:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return GroupTable.from_table(table, labels=tuple(f"{k}" for k in range(n)))


def symmetric_group_3() -> GroupTable:
    perms = sorted(permutations(range(3)))
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    labels = tuple("".join(str(i) for i in p) for p in perms)
    return GroupTable.from_table(table, labels=labels)


def quaternion_group() -> GroupTable:
    """Q8 with elements 1, -1, i, -i, j, -j, k, -k."""
    units = ["1", "i", "j", "k"]
    mul = {("1", u): (1, u) for u in units}
    mul.update({(u, "1"): (1, u) for u in units})
    mul.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for u in units for s in (1, -1)]
    index = {el: k for k, el in enumerate(elems)}
    table = [[index[(s1 * s2 * mul[(u1, u2)][0], mul[(u1, u2)][1])]
              for (s2, u2) in elems] for (s1, u1) in elems]
    labels = tuple(("" if s == 1 else "-") + u for (s, u) in elems)
    return GroupTable.from_table(table, labels=labels)


def dihedral_group_4() -> GroupTable:
    """D4 of order 8: r^4 = s^2 = 1, s r s = r^-1.  Elements r^a s^b."""
    elems = [(a, b) for b in (0, 1) for a in range(4)]
    index = {el: k for k, el in enumerate(elems)}

    def mul(x, y):
        (a1, b1), (a2, b2) = x, y
        # (r^a1 s^b1)(r^a2 s^b2) = r^(a1 + (-1)^b1 a2) s^(b1+b2)
        return ((a1 + (a2 if b1 == 0 else -a2)) % 4, (b1 + b2) % 2)

    table = [[index[mul(x, y)] for y in elems] for x in elems]
    labels = tuple(f"r{a}" + ("s" if b else "") for (a, b) in elems)
    return GroupTable.from_table(table, labels=labels)


# -- quantum groups --------------------------------------------------------------


@dataclass(frozen=True)
class FiniteQuantumGroup:
    alg: StarAlgebra
    comul: Array                  # (n*n, n)
    haar_left: Array              # phi, the weight the GNS construction uses
    haar_right: Array             # psi (any positive multiple works downstream)
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "comul", cmat(self.comul))
        object.__setattr__(self, "haar_left", cmat(self.haar_left))
        object.__setattr__(self, "haar_right", cmat(self.haar_right))

    @property
    def dim(self) -> int:
        return self.alg.dim

    def delta(self, x: Array) -> Array:
        """Tensor coordinates of Delta(x)."""
        return self.comul @ cmat(x)

    def is_cocommutative(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        n = self.dim
        d = self.comul.reshape(n, n, n)
        return numlin.resid(d, d.transpose(1, 0, 2)) <= tol.effective(n)


def flip_comul(comul: Array) -> Array:
    n = comul.shape[1]
    return comul.reshape(n, n, n).transpose(1, 0, 2).reshape(n * n, n)


def comultiplication_check(alg: StarAlgebra, comul: Array,
                           tol: Tolerance = DEFAULT_TOL,
                           example_id: str = "") -> VerificationReport:
    """Residuals for Delta being a coassociative unital *-homomorphism."""
    rep = VerificationReport()
    n = alg.dim
    eff = tol.effective(n * n)
    comul = cmat(comul)
    t_alg = alg.tensor(alg)

    rep.check("comul.unital", "Delta(1) = 1 (x) 1",
              numlin.resid(comul @ alg.unit, np.kron(alg.unit, alg.unit)), eff, example_id)

    r_hom = 0.0
    for i in range(n):
        for j in range(n):
            prod = alg.structure[i, j]
            lhs = comul @ prod
            rhs = t_alg.multiply(comul[:, i], comul[:, j])
            r_hom = max(r_hom, numlin.resid(lhs, rhs))
    rep.check("comul.homomorphism", "Delta(x y) = Delta(x) Delta(y)", r_hom, eff, example_id)

    r_star = max(
        numlin.resid(comul @ alg.involute(alg.basis_vector(i)),
                     t_alg.involute(comul[:, i]))
        for i in range(n))
    rep.check("comul.star", "Delta(x*) = Delta(x)*", r_star, eff, example_id)

    eye = np.eye(n)
    lhs = np.kron(comul, eye) @ comul
    rhs = np.kron(eye, comul) @ comul
    rep.check("comul.coassociative", "(Delta (x) id) Delta = (id (x) Delta) Delta",
              numlin.resid(lhs, rhs), eff, example_id)
    return rep


@dataclass(frozen=True)
class HaarSolution:
    phi: Array
    psi: Array
    left_nullity: int
    right_nullity: int


def _invariance_system(alg: StarAlgebra, comul: Array, side: str) -> Array:
    n = alg.dim
    d = comul.reshape(n, n, n)
    u = alg.unit
    if side == "left":
        # (id (x) w) Delta(e_k) = w(e_k) 1:  sum_j d[i,j,k] w_j - u_i w_k = 0
        a = d.transpose(0, 2, 1).reshape(n * n, n).copy()
        a -= np.einsum("i,kj->ikj", u, np.eye(n)).reshape(n * n, n)
    else:
        # (w (x) id) Delta(e_k) = w(e_k) 1:  sum_i d[i,j,k] w_i - u_j w_k = 0
        a = d.transpose(1, 2, 0).reshape(n * n, n).copy()
        a -= np.einsum("j,ki->jki", u, np.eye(n)).reshape(n * n, n)
    return a


def solve_haar(alg: StarAlgebra, comul: Array,
               tol: Tolerance = DEFAULT_TOL) -> HaarSolution:
    """Solve the invariance linear systems for the left and right Haar functionals.

    Each nullspace must be one-dimensional; the solution is normalised to
    w(1) = 1 and validated positive and faithful.
    """
    out = []
    nullities = []
    for side in ("left", "right"):
        ker = numlin.nullspace(_invariance_system(alg, cmat(comul), side), tol)
        nullities.append(ker.shape[1])
        if ker.shape[1] == 0:
            raise NoPositiveSolution(f"no {side}-invariant functional")
        if ker.shape[1] > 1:
            raise NonUnique(f"{side}-invariance nullspace has dimension {ker.shape[1]}")
        w = ker[:, 0]
        scale = star_algebra.apply_functional(w, alg.unit)
        if abs(scale) < tol.effective(alg.dim):
            raise NoPositiveSolution(f"{side}-invariant functional vanishes on the unit")
        w = w / scale
        positive, faithful = star_algebra.positivity_check(alg, w, tol)
        if not (positive and faithful):
            raise NoPositiveSolution(
                f"{side}-invariant solution line contains no faithful state")
        out.append(w)
    return HaarSolution(out[0], out[1], nullities[0], nullities[1])


def make_quantum_group(alg: StarAlgebra, comul: Array, name: str = "",
                       tol: Tolerance = DEFAULT_TOL) -> FiniteQuantumGroup:
    haar = solve_haar(alg, comul, tol)
    return FiniteQuantumGroup(alg, comul, haar.phi, haar.psi, name)


def function_algebra(g: GroupTable, tol: Tolerance = DEFAULT_TOL) -> FiniteQuantumGroup:
    """C(G): pointwise functions with basis delta_g and (Delta f)(x, y) = f(xy)."""
    n = g.order
    c = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        c[i, i, i] = 1.0
    d = np.zeros((n, n, n), dtype=complex)
    for x in range(n):
        for y in range(n):
            d[x, y, g.table[x, y]] = 1.0
    alg = StarAlgebra(c, np.eye(n), np.ones(n),
                      tuple(f"d_{lab}" for lab in g.labels))
    return make_quantum_group(alg, d.reshape(n * n, n), f"C({_group_name(g)})", tol)


def group_algebra(g: GroupTable, tol: Tolerance = DEFAULT_TOL) -> FiniteQuantumGroup:
    """L(G): basis u_g with u_g u_h = u_gh, u_g* = u_g^-1, Delta(u_g) = u_g (x) u_g."""
    n = g.order
    c = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            c[i, j, g.table[i, j]] = 1.0
    s = np.zeros((n, n), dtype=complex)
    for i in range(n):
        s[i, g.inverse[i]] = 1.0
    d = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        d[i, i, i] = 1.0
    unit = np.zeros(n)
    unit[g.identity] = 1.0
    alg = StarAlgebra(c, s, unit, tuple(f"u_{lab}" for lab in g.labels))
    return make_quantum_group(alg, d.reshape(n * n, n), f"L({_group_name(g)})", tol)


def _group_name(g: GroupTable) -> str:
    return f"G{g.order}"


def kac_paljutkin(tol: Tolerance = DEFAULT_TOL) -> FiniteQuantumGroup:
    """The 8-dimensional quantum group that is neither commutative nor cocommutative.

    The structure constants ship as a data file (see scripts/gen_kac_paljutkin.py
    for how it was produced); the axioms suite gates its acceptance on load.
    """
    text = importlib.resources.files("finiteqg.data").joinpath(
        "kac_paljutkin.json").read_text()
    from . import specfile
    alg, comul, _ = specfile.parse_structure_constants(json.loads(text))
    rep = star_algebra.axioms_check(alg, tol)
    rep.merge(comultiplication_check(alg, comul, tol))
    if not rep.all_passed:
        raise InvalidTable("kac_paljutkin data file failed the axioms gate")
    return make_quantum_group(alg, comul, "KacPaljutkin", tol)

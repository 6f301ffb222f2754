"""Generate the structure-constants data file for the eight-dimensional
quantum group that is neither commutative nor cocommutative.

Construction: take the group algebra of the dihedral group of order 8 and
twist its comultiplication by the unitary 2-cocycle Omega built from the
nondegenerate bicharacter on the Klein four-subgroup {1, r^2, s, r^2 s}:

    Omega = sum_{x,y} beta(x, y) P_x (x) P_y,   beta((a,b),(c,d)) = (-1)^(b c),

where P_x are the minimal idempotents of the subgroup algebra.  The algebra
(C^4 + M_2), the unit and the involution are untouched; only the
comultiplication changes, to Omega Delta(.) Omega*.  The result is validated
here (axioms, unique faithful Haar, neither commutative nor cocommutative,
five-dimensional center) before the file is written.
"""

import json
import pathlib
import sys

import numpy as np

from finiteqg import builders, numlin, specfile, star_algebra
from finiteqg.builders import comultiplication_check, solve_haar
from finiteqg.gns_modular import build_gns

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "finiteqg" / "data" / "kac_paljutkin.json"


def klein_idempotents(alg):
    """Minimal idempotents of the subgroup algebra of {1, r^2, s, r^2 s}."""
    # element (r^2)^m s^n has index n*4 + (2 m mod 4) in the dihedral ordering
    k_index = {(m, n): n * 4 + (2 * m) % 4 for m in (0, 1) for n in (0, 1)}
    projections = {}
    for a in (0, 1):
        for b in (0, 1):
            p = np.zeros(8, dtype=complex)
            for m in (0, 1):
                for n in (0, 1):
                    p[k_index[(m, n)]] += 0.25 * (-1) ** (a * m + b * n)
            projections[(a, b)] = p
    return projections


def main() -> int:
    qg = builders.group_algebra(builders.dihedral_group_4())
    alg = qg.alg
    t_alg = alg.tensor(alg)
    proj = klein_idempotents(alg)

    for p in proj.values():
        assert numlin.resid(alg.multiply(p, p), p) < 1e-14
        assert numlin.resid(alg.involute(p), p) < 1e-14

    omega = np.zeros(64, dtype=complex)
    for (a, b), p in proj.items():
        for (c, d), q in proj.items():
            omega += (-1) ** (b * c) * np.kron(p, q)

    unit2 = np.kron(alg.unit, alg.unit)
    assert numlin.resid(t_alg.multiply(omega, t_alg.involute(omega)), unit2) < 1e-12

    comul = np.empty((64, 8), dtype=complex)
    for k in range(8):
        ek = alg.basis_vector(k)
        comul[:, k] = t_alg.multiply(t_alg.multiply(omega, np.kron(ek, ek)),
                                     t_alg.involute(omega))

    rep = star_algebra.axioms_check(alg)
    rep.merge(comultiplication_check(alg, comul))
    assert rep.all_passed, rep.to_text()

    haar = solve_haar(alg, comul)
    assert haar.left_nullity == 1 and haar.right_nullity == 1

    assert not alg.is_commutative()
    qg_t = builders.FiniteQuantumGroup(alg, comul, haar.phi, haar.psi, "KacPaljutkin")
    assert not qg_t.is_cocommutative()

    gns = build_gns(qg_t)
    center = numlin.subspace_intersection_dim(
        list(gns.pi), numlin.commutant(list(gns.pi), 8))
    assert center == 5, f"center dimension {center}"

    spec = specfile.structure_spec(alg, comul, name="KacPaljutkin")
    OUT.write_text(json.dumps(spec, indent=1, sort_keys=True) + "\n")
    print(f"validated and wrote {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

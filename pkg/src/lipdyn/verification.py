"""Self-check suite behind ``lipdyn verify``.

Each check compares an implementation against an oracle on seeded random
instances and yields an :class:`OracleReport`.
"""

from __future__ import annotations

from fractions import Fraction

from .dynamics import (
    DOUBLING, Verdict, classify_hypercyclic, condition_iv, condition_v, eigen_residual,
    fhc_check_annihilation, fhc_right_inverse, fhc_series_B,
)
from .operators import (
    CompositionOp, MultiplicationOp, ShiftOp, affine_symbol, comp_apply_seq, matrix_truncate,
)
from .oracles import OracleReport, dinv_pathsum, lambda_bruteforce, op_norm_rowsum
from .sampling import (
    make_rng, random_explicit_tree, random_increasing_symbol, random_path_symbol, random_psi,
    random_sigma00, random_vector,
)
from .spaces import from_sequence, lip_norm, to_sequence
from .trees import PathN0, ZLine, uniform_tree


def _all(name: str, results, depth: int) -> OracleReport:
    results = list(results)
    return OracleReport(name, len(results), sum(1 for r in results if r), all(results), depth)


def run_suite(seed: int | None = None, rounds: int = 20) -> list:
    rng = make_rng(seed)
    path, line = PathN0(), ZLine()
    reports = []

    trees = [path, line, random_explicit_tree(rng, 3)]
    isometry = []
    for _ in range(rounds):
        for t in trees:
            x = random_vector(rng, t)
            f = from_sequence(x)
            isometry.append(lip_norm(f) == x.sup_norm() and to_sequence(f) == x
                            and all(f(v) == dinv_pathsum(x, v) for v in t.vertices(6)))
    reports.append(_all("isometry and inverse path sums", isometry, 6))

    conj = []
    for _ in range(rounds):
        phi = random_path_symbol(rng)
        x = random_vector(rng, path)
        conj.append(to_sequence(CompositionOp(phi).apply_lip(from_sequence(x))) == comp_apply_seq(phi, x))
        t = random_explicit_tree(rng, 2)
        psi, y = random_psi(rng, t), random_vector(rng, t, 3)
        for op in (MultiplicationOp(psi), ShiftOp(t)):
            conj.append(to_sequence(op.apply_lip(from_sequence(y))) == op.apply(y))
    reports.append(_all("conjugacy of sequence and function actions", conj, 5))

    for name, op in [("composition j->2j+1", CompositionOp(DOUBLING)),
                     ("shift on the path tree", ShiftOp(path)),
                     ("shift on the binary tree", ShiftOp(uniform_tree(2))),
                     ("composition random", CompositionOp(random_path_symbol(rng))),
                     ("multiplication random", MultiplicationOp(random_psi(rng, path)))]:
        depth = op.certified_depth()
        reports.append(OracleReport.compare(f"norm of {name}", op.norm(),
                                            op_norm_rowsum(matrix_truncate(op, depth=depth)), depth))

    t = random_explicit_tree(rng, 3)
    n = t.homogeneity_level()
    reports.append(OracleReport.compare("branching supremum", t.lambda_T(), lambda_bruteforce(t, n + 3), n + 3))

    witness = []
    for op in (CompositionOp(random_path_symbol(rng)), MultiplicationOp(random_psi(rng, path)),
               ShiftOp(uniform_tree(2))):
        for u in op.tree.vertices(2):
            w = op.witness(u)
            witness.append(w.sup_norm() == 1 and abs(op.apply(w)[u]) == op.term(u))
    reports.append(_all("extremal witnesses", witness, 2))

    routes = []
    for _ in range(rounds):
        phi = random_increasing_symbol(rng)
        routes.append(condition_v(phi, 16, 64).verdict == condition_iv(phi).verdict)
    routes.append(classify_hypercyclic(DOUBLING).verdict == Verdict.FHC_HYPERCYCLIC)
    routes.append(classify_hypercyclic(affine_symbol(1, 1)).verdict == Verdict.NOT_HYPERCYCLIC)
    reports.append(_all("classifier routes agree", routes, 16))

    fhc = []
    for _ in range(rounds):
        x = random_sigma00(rng, path)
        fhc.append(fhc_check_annihilation(DOUBLING, x).N0 >= 0)
        fhc.append(comp_apply_seq(DOUBLING, fhc_right_inverse(DOUBLING, x)) == x)
    fhc.append(len(fhc_series_B(DOUBLING, 1, terms=30).series) == 30)
    reports.append(_all("frequent hypercyclicity criterion", fhc, 30))

    reports.append(OracleReport.compare("eigen residual at 3/2", eigen_residual(Fraction(3, 2), 64), 0, 64))
    return reports


"""Dynamics of composition operators on the path tree.

* gap profiles and the three-valued hypercyclicity classifier for strictly
  increasing symbols with ``phi(0) > 0``;
* the right inverse used by the Frequent Hypercyclicity Criterion, the
  annihilation index of vectors in the sum-zero subspace, and the
  disjoint-support structure of the series ``sum_n B^n e(l)``;
* the eigenvectors and spectral radius of ``j -> 2j + 1``;
* plain orbit simulation of ``lambda * C``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ContractError, DomainError, TruncationError, VerificationError
from .operators.composition import comp_apply_seq, comp_norm, comp_power_apply, CompositionOp
from .operators.matrix import matrix_truncate
from .operators.symbols import AffineTail, SymbolPhi, affine_symbol
from .oracles import op_norm_rowsum
from .scalars import Scalar, is_exact, nth_root
from .spaces import SeqVec, in_sigma00
from .trees import PathN0


class Verdict(str, enum.Enum):
    FHC_HYPERCYCLIC = "FHC_Hypercyclic"
    NOT_HYPERCYCLIC = "NotHypercyclic"
    UNKNOWN = "Unknown"


def _require_increasing(phi: SymbolPhi) -> None:
    if not isinstance(phi.tree, PathN0):
        raise ContractError("this analysis lives on the path tree")
    if not phi.increasing:
        raise ContractError("symbol must be flagged strictly increasing with phi(0) > 0")


def gap(phi: SymbolPhi, j: int, n: int) -> int:
    """``phi^n(j) - phi^n(j - 1)``; equal to 1 when ``n = 0``."""
    _require_increasing(phi)
    if j < 1 or n < 0:
        raise DomainError("gap needs j >= 1 and n >= 0")
    hi, lo = j, j - 1
    for _ in range(n):
        hi, lo = phi(hi), phi(lo)
    return hi - lo


# -- classification -------------------------------------------------------

@dataclass
class GapProfile:
    """Gap samples of one ``j`` and what they show.

    ``status`` is ``"Reaches2"`` (``n_j`` set), ``"PinnedAt1"`` (``certificate``
    set) or ``"Undetermined"``.
    """

    j: int
    samples: list = field(default_factory=list)
    status: str = "Undetermined"
    n_j: int | None = None
    certificate: dict | None = None


def gap_profile(phi: SymbolPhi, j: int, budget: int) -> GapProfile:
    """Iterate the pair ``(j-1, j)`` at most ``budget`` times.

    The search stops at the first gap of at least 2, or when both iterates
    sit inside an affine tail of slope 1 with unit gap: from there on the
    gap can never grow.
    """
    _require_increasing(phi)
    prof = GapProfile(j)
    lo, hi = j - 1, j
    tail = phi.tail
    for n in range(budget + 1):
        g = hi - lo
        prof.samples.append((n, g))
        if g >= 2:
            prof.status, prof.n_j = "Reaches2", n
            return prof
        if tail is not None and tail.a == 1 and lo >= tail.start:
            prof.status = "PinnedAt1"
            prof.certificate = {"pinned_j": j, "entry_index": n, "entry_pair": [lo, hi],
                                "tail_slope": 1, "tail_from": tail.start}
            return prof
        if n == budget:
            break
        try:
            lo, hi = phi(lo), phi(hi)
        except TruncationError:
            break
    return prof


@dataclass
class Classification:
    verdict: Verdict
    witnesses: dict = field(default_factory=dict)
    certificate: dict = field(default_factory=dict)
    routes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witnesses": {str(j): n for j, n in sorted(self.witnesses.items())},
            "certificate": self.certificate,
            "routes": {k: v.value for k, v in self.routes.items()},
        }


def condition_v(phi: SymbolPhi, j_max: int, budget: int) -> Classification:
    """Budgeted search for ``n_j`` with gap at least 2.

    Indices beyond ``max(j_max, tail start)`` have both ``j-1`` and ``j``
    inside the tail, so their gap after one step is the slope ``a``; that
    settles them when ``a >= 2``.
    """
    _require_increasing(phi)
    tail = phi.tail
    top = j_max if tail is None else max(j_max, tail.start + 1)
    witnesses = {}
    for j in range(1, top + 1):
        prof = gap_profile(phi, j, budget)
        if prof.status == "PinnedAt1":
            return Classification(Verdict.NOT_HYPERCYCLIC, witnesses, prof.certificate)
        if prof.status == "Undetermined":
            return Classification(Verdict.UNKNOWN, witnesses,
                                  {"undetermined_j": j, "budget": budget,
                                   "reason": "budget exhausted" if tail else "no affine tail"})
        witnesses[j] = prof.n_j
    if tail is None:
        return Classification(Verdict.UNKNOWN, witnesses,
                              {"reason": "no affine tail to certify j > j_max", "j_max": j_max})
    # a == 1 would have pinned j = tail.start + 1 above
    return Classification(Verdict.FHC_HYPERCYCLIC, witnesses,
                          {"tail_slope": tail.a, "tail_from": tail.start,
                           "certified_beyond": top, "n_j_beyond": 1})


def entry_index(phi: SymbolPhi, j: int) -> int:
    """First ``n`` with ``phi^n(j - 1)`` inside the affine tail."""
    tail = phi.tail
    n, lo = 0, j - 1
    while lo < tail.start:
        lo = phi(lo)
        n += 1
    return n


def condition_iv(phi: SymbolPhi) -> Classification:
    """Decide ``gap(j, n) -> infinity`` for every ``j`` from the tail alone.

    Once both iterates are in the tail each step multiplies the gap by the
    slope ``a``.  With ``a >= 2`` every gap diverges; with ``a = 1`` the gap
    freezes at its value on entry, and ``j = tail start + 1`` enters with
    gap 1.  The smallest such ``j`` is reported.
    """
    _require_increasing(phi)
    tail = phi.tail
    if tail is None:
        return Classification(Verdict.UNKNOWN, certificate={"reason": "no affine tail"})
    if tail.a >= 2:
        return Classification(Verdict.FHC_HYPERCYCLIC,
                              certificate={"tail_slope": tail.a, "tail_from": tail.start})
    for j in range(1, tail.start + 2):
        e = entry_index(phi, j)
        lo = phi.iterate(j - 1, e)
        hi = phi.iterate(j, e)
        if hi - lo == 1:
            return Classification(Verdict.NOT_HYPERCYCLIC,
                                  certificate={"pinned_j": j, "entry_index": e, "entry_pair": [lo, hi],
                                               "tail_slope": 1, "tail_from": tail.start})
    raise AssertionError("unreachable: j = tail start + 1 enters with unit gap")  # pragma: no cover


def classify_hypercyclic(phi: SymbolPhi, j_max: int = 32, budget: int = 64) -> Classification:
    """Three-valued verdict with certificates from both routes.

    The verdict is the tail analysis when a tail exists (it is decisive),
    otherwise the budgeted search, which for a black box can only answer
    ``Unknown``.
    """
    _require_increasing(phi)
    if j_max < 1 or budget < 1:
        raise DomainError("j_max and budget must be positive")
    v = condition_v(phi, j_max, budget)
    iv = condition_iv(phi)
    final = iv if iv.verdict != Verdict.UNKNOWN else v
    witnesses = dict(v.witnesses)
    if final.verdict == Verdict.FHC_HYPERCYCLIC and v.verdict != Verdict.FHC_HYPERCYCLIC:
        # the budget ran out but the tail guarantees every n_j; finish the search
        for j in range(1, j_max + 1):
            if j not in witnesses:
                witnesses[j] = gap_profile(phi, j, entry_index(phi, j) + 1).n_j
    certificate = dict(final.certificate)
    if final is iv and v.verdict != Verdict.UNKNOWN:
        certificate.update(v.certificate)
    out = Classification(final.verdict, {j: n for j, n in witnesses.items() if j <= j_max}, certificate)
    out.routes = {"condition_v": v.verdict, "condition_iv": iv.verdict}
    return out


# -- Frequent Hypercyclicity Criterion -------------------------------------

def fhc_right_inverse(phi: SymbolPhi, x: SeqVec) -> SeqVec:
    """Spread ``x_j`` evenly over the block that coordinate ``j`` of the image sums.

    Coordinate 0 gets 0, the block ``1..phi(0)`` gets ``x_0 / phi(0)`` and the
    block ``phi(j-1)+1 .. phi(j)`` gets ``x_j / (phi(j) - phi(j-1))``.
    """
    _require_increasing(phi)
    out = {}
    for j, xj in x.items():
        start = 1 if j == 0 else phi(j - 1) + 1
        end = phi(j)
        width = end - start + 1
        val = Fraction(xj, width) if is_exact(xj) else xj / width
        for k in range(start, end + 1):
            out[k] = val
    return SeqVec(x.tree, out)


@dataclass
class AnnihilationReport:
    N0: int
    samples: list

    def to_json(self) -> dict:
        return {"N0": self.N0, "samples": [{"n": n, "zero": z} for n, z in self.samples]}


def fhc_check_annihilation(phi: SymbolPhi, x: SeqVec, extra: int = 5) -> AnnihilationReport:
    """Smallest ``N0`` with ``phi^N0(0) >= support depth``, plus checked samples.

    Raises :class:`VerificationError` if some sampled power fails to kill ``x``.
    """
    _require_increasing(phi)
    if not in_sigma00(x):
        raise ContractError("annihilation needs a vector whose path sums vanish at its support depth")
    m = x.support_depth
    n, top = 0, 0
    while top < m:
        top = phi(top)
        n += 1
    samples = []
    for k in range(n, n + extra + 1):
        zero = comp_power_apply(phi, k, x).is_zero() if k > 0 else x.is_zero()
        samples.append((k, zero))
        if not zero:
            raise VerificationError(f"power {k} does not annihilate the vector")
    return AnnihilationReport(n, samples)


def _runs_apply_B(phi: SymbolPhi, runs: list) -> list:
    """Right inverse applied to a vector stored as ``(lo, hi, value)`` runs."""
    tail = phi.tail
    out = []
    for lo, hi, val in runs:
        j = lo
        while j <= hi:
            if tail is not None and j - 1 >= tail.start:
                # whole remaining run lies in the tail: constant width a, contiguous blocks
                out.append((phi(j - 1) + 1, phi(hi), Fraction(val, tail.a)))
                break
            start = 1 if j == 0 else phi(j - 1) + 1
            end = phi(j)
            out.append((start, end, Fraction(val, end - start + 1)))
            j += 1
    merged = []
    for run in out:
        if merged and merged[-1][2] == run[2] and merged[-1][1] + 1 == run[0]:
            merged[-1] = (merged[-1][0], run[1], run[2])
        else:
            merged.append(run)
    return merged


@dataclass
class SeriesTerm:
    n: int
    support: tuple
    norm: Fraction
    window: int
    bound: Fraction
    runs: list = field(repr=False, default_factory=list)

    def to_json(self) -> dict:
        return {"n": self.n, "support": list(self.support), "norm": str(self.norm),
                "window": self.window, "bound": str(self.bound)}


@dataclass
class FhcWitness:
    """Window data and per-term records for ``sum_n B^n e(l)``.

    ``windows`` holds ``n_0 = 0, n_1, ...``; window ``j`` covers the terms
    ``n_0 + ... + n_j <= n < n_0 + ... + n_{j+1}``.
    """

    phi: SymbolPhi
    l: int
    windows: list
    series: list
    N0: int | None = None

    def tail_bound(self, j: int) -> Fraction:
        """Sup-norm bound for the tail of the series from window ``j`` on.

        The terms have pairwise disjoint supports, so the sup norm of any
        sub-sum is the largest sup norm among its terms.
        """
        return Fraction(1, 2 ** j)

    def partial_sum(self, terms: int | None = None, limit: int = 1 << 16) -> SeqVec:
        recs = self.series if terms is None else self.series[:terms]
        size = sum(r.support[1] - r.support[0] + 1 for r in recs)
        if size > limit:
            raise TruncationError(f"partial sum has {size} nonzero entries", required=size)
        entries = {}
        for r in recs:
            for lo, hi, val in r.runs:
                for k in range(lo, hi + 1):
                    entries[k] = val
        return SeqVec(self.phi.tree, entries)

    def to_json(self) -> dict:
        return {"l": self.l, "N0": self.N0, "windows": list(self.windows),
                "series": [t.to_json() for t in self.series]}


def _least_window(phi: SymbolPhi, lo: int, hi: int) -> int:
    """Least ``n`` such that every ``k`` in ``lo..hi`` has ``gap(k, n) >= 2``."""
    tail = phi.tail
    best = 1
    k = lo
    while k <= hi:
        if k - 1 >= tail.start:
            break  # one step multiplies a unit gap by a >= 2
        prof = gap_profile(phi, k, entry_index(phi, k) + 1)
        best = max(best, prof.n_j)
        k += 1
    return best


def fhc_series_B(phi: SymbolPhi, l: int, j_windows: int | None = None, terms: int | None = None) -> FhcWitness:
    """Build windows and the first terms of ``sum_n B^n e(l)``.

    Give ``j_windows`` (number of windows after ``n_0``) or ``terms`` (number
    of series terms, windows are added until they cover them).  Each window
    is the least admissible one, measured from the support reached at the
    end of the previous window.  Every record is checked: the support is the
    interval ``phi^n(l-1)+1 .. phi^n(l)``, consecutive supports are disjoint,
    and the norm respects the bound of its window; a failure raises
    :class:`VerificationError`.
    """
    if l < 1:
        raise DomainError("the series index l must be at least 1")
    cls = classify_hypercyclic(phi, j_max=max(l, 1))
    if cls.verdict != Verdict.FHC_HYPERCYCLIC:
        raise ContractError(f"symbol is classified {cls.verdict.value}, not FHC_Hypercyclic")
    if (j_windows is None) == (terms is None):
        raise DomainError("give exactly one of j_windows and terms")
    windows = [0]
    series: list[SeriesTerm] = []
    runs = [(l, l, Fraction(1))]
    lo_it, hi_it = l - 1, l
    n = 0

    def record(window: int) -> None:
        lo = min(r[0] for r in runs)
        hi = max(r[1] for r in runs)
        if (lo, hi) != (lo_it + 1, hi_it) or any(a[1] + 1 != b[0] for a, b in zip(runs, runs[1:])):
            raise VerificationError(f"support of term {n} is not the interval {lo_it + 1}..{hi_it}")
        if series and series[-1].support[1] >= lo:
            raise VerificationError(f"supports of terms {n - 1} and {n} overlap")
        norm = max(abs(r[2]) for r in runs)
        bound = Fraction(1, 2 ** window)
        if norm > bound:
            raise VerificationError(f"term {n} has norm {norm} above the window bound {bound}")
        series.append(SeriesTerm(n, (lo, hi), norm, window, bound, list(runs)))

    window = 0
    while (n < terms) if terms is not None else (len(windows) - 1 < j_windows):
        # the next window length is read off the support reached at the start of this one
        length = _least_window(phi, lo_it + 1, hi_it)
        windows.append(length)
        stop = n + length
        while n < stop and (terms is None or n < terms):
            record(window)
            runs = _runs_apply_B(phi, runs)
            lo_it, hi_it = phi(lo_it), phi(hi_it)
            n += 1
        window += 1
    return FhcWitness(phi, l, windows, series)


# -- spectral data of j -> 2j + 1 ------------------------------------------

DOUBLING = affine_symbol(2, 1)


def _check_lambda(lam: Scalar) -> None:
    if lam == 0 or abs(lam) >= 2:
        raise DomainError("eigenvalues of j -> 2j+1 need 0 < |lambda| < 2")


def eigenvector(lam: Scalar, depth: int) -> SeqVec:
    """Coordinates ``0..depth`` of the eigenvector: 1 at the root, then
    ``(lambda/2)^j (lambda - 1)`` on the block ``2^j .. 2^(j+1) - 1``."""
    _check_lambda(lam)
    if depth < 0:
        raise DomainError("depth must be non-negative")
    half = Fraction(lam, 2) if is_exact(lam) else lam / 2
    entries = {0: 1}
    j, val = 0, lam - 1
    while 2 ** j <= depth:
        for k in range(2 ** j, min(2 ** (j + 1) - 1, depth) + 1):
            entries[k] = val
        val *= half
        j += 1
    return SeqVec(PathN0(), entries)


def eigen_residual(lam: Scalar, depth: int) -> Scalar:
    """Sup norm of ``(C - lambda) x`` over rows whose block lies in ``0..depth``."""
    x = eigenvector(lam, depth)
    image = comp_apply_seq(DOUBLING, x)
    complete = [i for i in range(depth + 1) if DOUBLING(i) <= depth]
    return max((abs(image[i] - lam * x[i]) for i in complete), default=0)


def spectral_radius_estimate(phi: SymbolPhi, n_max: int) -> list:
    """``(n, ||C^n||, ||C^n||^(1/n), row-sum oracle)`` for ``n = 1..n_max``."""
    if not isinstance(phi.tree, PathN0):
        raise DomainError("spectral radius estimates need a path-tree symbol")
    out = []
    for n in range(1, n_max + 1):
        power = phi.power(n)
        value = comp_norm(power)
        op = CompositionOp(power)
        oracle = op_norm_rowsum(matrix_truncate(op, depth=op.certified_depth()))
        out.append((n, value, nth_root(value, n), oracle))
    return out


def orbit_simulate(lam: Scalar, phi: SymbolPhi, x0: SeqVec, steps: int,
                   depth: int | None = None, snapshots: bool = False) -> list:
    """Orbit of ``x0`` under ``lambda * C``; records ``(n, sup norm, snapshot or None)``.

    With ``depth`` set, any iterate supported deeper raises
    :class:`TruncationError`.  No dynamical property is inferred.
    """
    x = x0
    out = []
    for n in range(steps + 1):
        if depth is not None and x.support_depth > depth:
            raise TruncationError(f"iterate {n} reaches depth {x.support_depth}", required=x.support_depth)
        out.append((n, x.sup_norm(), x if snapshots else None))
        if n < steps:
            x = comp_apply_seq(phi, x) * lam
    return out


__all__ = [
    "AffineTail", "AnnihilationReport", "Classification", "DOUBLING", "FhcWitness", "GapProfile",
    "SeriesTerm", "Verdict", "classify_hypercyclic", "condition_iv", "condition_v", "eigen_residual",
    "eigenvector", "entry_index", "fhc_check_annihilation", "fhc_right_inverse", "fhc_series_B",
    "gap", "gap_profile", "orbit_simulate", "spectral_radius_estimate",
]

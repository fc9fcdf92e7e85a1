"""Identity-level harnesses built on the homology engine.

Each harness checks a concrete machine-verifiable identity on a given
algebra instance and returns a report carrying the degree window and
search bounds it used; verdicts are evidence about those instances and
bounds, nothing more.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .algebra import (
    FdAlgebra,
    UnsupportedFieldError,
    corner_algebra,
    quotient_by_ideal,
    radical,
    tensor_over,
)
from .constructors import MoritaContextData, morita_context_ring
from .homology import (
    EXCEEDS,
    GldimVerdict,
    HomologyReport,
    StratifyingReport,
    check_stratifying,
    gldim,
    hh_dims,
    projdim,
    tor_dims,
)


class NotStratifyingError(RuntimeError):
    """Raised when a harness requires a stratifying idempotent and the
    supplied one fails the checks; carries the failure report."""

    def __init__(self, report: StratifyingReport):
        self.report = report
        parts = []
        if not report.si1:
            parts.append(
                f"multiplication map is not bijective (tensor dim "
                f"{report.tensor_dim}, ideal dim {report.ideal_dim}, "
                f"injective={report.injective}, surjective={report.surjective})")
        if not report.si2:
            bad = next(i + 1 for i, v in enumerate(report.tor) if v != 0)
            parts.append(f"Tor does not vanish in degree {bad}")
        super().__init__("idempotent is not stratifying: " + "; ".join(parts))


# -- splitting ---------------------------------------------------------------

@dataclass(frozen=True)
class SplittingReport:
    degrees: Tuple[Tuple[int, int, int, int, bool], ...]
    overall: bool
    cap: int
    provenance: str = ""

    def describe(self) -> str:
        lines = [f"splitting check up to degree {self.cap}"
                 + (f" [{self.provenance}]" if self.provenance else "")]
        for n, da, db, dc, ok in self.degrees:
            lines.append(f"  n={n}: {da} vs {db}+{dc} "
                         f"{'ok' if ok else 'MISMATCH'}")
        lines.append("overall: " + ("pass" if self.overall else "FAIL"))
        return "\n".join(lines)


def verify_splitting(a: FdAlgebra, b: FdAlgebra, c: FdAlgebra, cap: int,
                     provenance: str = "") -> SplittingReport:
    """Check dim HH_n(a) = dim HH_n(b) + dim HH_n(c) for 0 <= n <= cap."""
    ra = hh_dims(a, cap).dims
    rb = hh_dims(b, cap).dims
    rc = hh_dims(c, cap).dims
    degrees = tuple(
        (n, ra[n], rb[n], rc[n], ra[n] == rb[n] + rc[n])
        for n in range(cap + 1))
    return SplittingReport(degrees, all(row[4] for row in degrees), cap,
                           provenance)


# -- long-exact-sequence inequality ------------------------------------------

@dataclass(frozen=True)
class LesReport:
    degrees: Tuple[Tuple[int, int, int, int, int], ...]
    # rows (n, dim HH_n(A), dim HH_n(A/AeA), dim HH_n(eAe), slack)
    cap: int
    stratifying: StratifyingReport

    @property
    def overall(self) -> bool:
        return all(row[4] >= 0 for row in self.degrees)


def verify_les_inequality(a: FdAlgebra, e: Sequence, cap: int,
                          bound: int = 12) -> LesReport:
    """For a stratifying idempotent e, check
    dim HH_n(A) <= dim HH_n(A/AeA) + dim HH_n(eAe) for 0 <= n <= cap.

    Refuses non-stratifying idempotents.  Negative slack is mathematically
    impossible under the hypothesis, so it is raised as a fatal error
    rather than reported.
    """
    strat = check_stratifying(a, e, bound)
    if not strat.verdict:
        raise NotStratifyingError(strat)
    corner = corner_algebra(a, e).algebra
    quot = quotient_by_ideal(a, [tuple(e)]).algebra
    ra = hh_dims(a, cap).dims
    rq = hh_dims(quot, cap).dims
    rc = hh_dims(corner, cap).dims
    degrees = tuple(
        (n, ra[n], rq[n], rc[n], rq[n] + rc[n] - ra[n])
        for n in range(cap + 1))
    report = LesReport(degrees, cap, strat)
    if not report.overall:
        bad = next(row for row in degrees if row[4] < 0)
        raise AssertionError(
            f"negative slack {bad[4]} at degree {bad[0]}: the bound "
            "dim HH_n(A) <= dim HH_n(A/AeA) + dim HH_n(eAe) failed for a "
            "stratifying idempotent; this indicates an implementation bug")
    return report


# -- Morita-context reduction ------------------------------------------------

@dataclass(frozen=True)
class MoritaReductionReport:
    variant: int
    pairing_injective: bool
    tor: Tuple[int, ...]          # degrees 0..bound over the corner ring
    first_nonzero_tor: Optional[int]
    projdim_value: object         # int or the exceeds marker
    hypotheses_pass: bool
    splitting: Optional[SplittingReport]
    cap: int
    bound: int

    @property
    def overall(self) -> bool:
        return (self.hypotheses_pass and self.splitting is not None
                and self.splitting.overall)


def verify_morita_reduction(d: MoritaContextData, cap: int, bound: int,
                            variant: int = 1) -> MoritaReductionReport:
    """Hypothesis checks and the reduced splitting identity.

    Variant 1: the pairing M (x)_B N -> C must be injective, Tor over B of
    (M, N) must vanish in degrees 1..bound, and M must have finite
    projective dimension (<= bound) as a right B-module; then the ring of
    the context splits against B and C / image of the pairing.  Variant 2
    swaps the roles of the two corners.
    """
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    if variant == 1:
        base, other = d.B, d.C
        x_mod, y_mod = d.M.as_right(), d.N.as_left()
        pairing = d.beta
    else:
        base, other = d.C, d.B
        x_mod, y_mod = d.N.as_right(), d.M.as_left()
        pairing = d.alpha
    F = base.field

    tens = tensor_over(x_mod, y_mod, base)
    if tens.dim == 0:
        injective = True
    else:
        mat = tens.induced_matrix(lambda i, j: pairing[i][j], other.dim)
        injective = mat.rank() == tens.dim

    tor = tor_dims(base, x_mod, y_mod, bound)
    first_bad = next((i for i in range(1, bound + 1) if tor[i] != 0), None)

    pd = projdim(x_mod, bound, rad=radical(base))
    hypotheses = injective and first_bad is None and pd != EXCEEDS

    splitting = None
    if hypotheses:
        image = [pairing[i][j] for i in range(len(pairing))
                 for j in range(len(pairing[i]))]
        quot = quotient_by_ideal(other, image).algebra
        ring = morita_context_ring(d)
        if variant == 1:
            splitting = verify_splitting(ring, base, quot, cap,
                                         provenance="morita-reduction")
        else:
            splitting = verify_splitting(ring, quot, base, cap,
                                         provenance="morita-reduction")
    return MoritaReductionReport(variant, injective, tor, first_bad, pd,
                                 hypotheses, splitting, cap, bound)


# -- Han probe ---------------------------------------------------------------

CONSISTENT_FINITE = "consistent-finite"
CONSISTENT_INFINITE = "consistent-infinite"
WINDOW_INCONCLUSIVE = "window-inconclusive"


@dataclass(frozen=True)
class HanProbe:
    hh: HomologyReport
    gldim: Optional[GldimVerdict]  # None when the radical is unavailable
    classification: str
    cap: int
    bound: int

    def describe(self) -> str:
        gl = "unavailable" if self.gldim is None else self.gldim.describe()
        return (f"HH dims 0..{self.cap}: {self.hh.dims}; gldim: {gl}; "
                f"classification: {self.classification}")


def han_probe(a: FdAlgebra, cap: int, bound: int) -> HanProbe:
    """Homology window plus bounded global dimension search.

    consistent-finite when the global dimension search terminated with a
    number; consistent-infinite when homology is still nonzero at the top
    of the window while the search exceeded its bound; inconclusive
    otherwise (including fields where the radical cannot be computed).
    """
    hh = hh_dims(a, cap)
    try:
        verdict: Optional[GldimVerdict] = gldim(a, bound)
    except UnsupportedFieldError:
        verdict = None
    if verdict is not None and not verdict.exceeded:
        classification = CONSISTENT_FINITE
    elif verdict is not None and verdict.exceeded and hh.dims[cap] != 0:
        classification = CONSISTENT_INFINITE
    else:
        classification = WINDOW_INCONCLUSIVE
    return HanProbe(hh, verdict, classification, cap, bound)

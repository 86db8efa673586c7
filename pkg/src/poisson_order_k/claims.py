"""Index of reproduced claims, cross-linked to ``pok verify`` suites.

``docs/claims.md`` is generated from :data:`CLAIMS` by
:func:`generate_claim_index`; a test keeps the two in sync and checks that
every suite is claimed and every claimed suite exists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import PoissonOrderKError
from .harness import SUITES


class ClaimStatus(str, enum.Enum):
    REPRODUCED = "reproduced"
    SCALED_DOWN = "scaled-down"
    INFORMATIONAL = "informational"


@dataclass(frozen=True)
class ClaimEntry:
    claim_id: str
    location: str
    suite: str | None
    command_line: str
    expected: str
    status: ClaimStatus = ClaimStatus.REPRODUCED


class MissingSuiteError(PoissonOrderKError):
    pass


def _v(suite: str) -> str:
    return f"pok verify --suite {suite}"


CLAIMS: tuple[ClaimEntry, ...] = (
    ClaimEntry("pmf-definition", "Definition of the order-k pmf (tuple sum)", "engines", _v("engines"),
               "brute-force tuple sum agrees with every recurrence to 1e-12 relative (k <= 4, n <= 20)"),
    ClaimEntry("tuple-table", "Tuple table for k = 2", "engines", _v("engines"),
               "enumerated (n_1, n_2) tuples for n = 0..6 match the table"),
    ClaimEntry("recurrences", "Adelson, GPS, Kwon-Philippou and Kostadinova-Minkova recurrences", "engines",
               _v("engines"), "all four agree elementwise to 1e-12 relative, k <= 10, n <= 500"),
    ClaimEntry("h-polynomial-structure", "Degree and lowest power of h_k(n; lambda)", "polynomial-structure",
               _v("polynomial-structure"), "degree n, lowest power >= floor(n/k), leading coefficient 1/n!"),
    ClaimEntry("moments", "Mean kappa*lambda and variance k(k+1)(2k+1)lambda/6", "normalization",
               _v("normalization"), "truncated-table moments match to 1e-8 relative; total mass within 1e-10"),
    ClaimEntry("median-formula", "Median location conjecture, n >= kappa", "median-formula",
               _v("median-formula"), "zero counterexamples, k <= 20, n in [kappa, kappa + 50]"),
    ClaimEntry("median-zero-threshold", "Zero-median theorem, lambda_* = ln2 / k", "zero-median",
               _v("zero-median"), "F(0) = 1/2 at lambda_* to 1e-14; median flips 0 -> 1 across it"),
    ClaimEntry("median-zero-corollary", "Zero-median corollary, n_* = floor((k+1) ln2 / 2)", "zero-median",
               _v("zero-median"), "median 0 exactly for integer means n <= n_*"),
    ClaimEntry("k1-alpha-expansion", "Standard Poisson median boundary expansion", "k1-alpha", _v("k1-alpha"),
               "solved alpha_n within 1e-6 of the 4-term expansion for n in {100, 300, 1000}"),
    ClaimEntry("alpha-expansion", "alpha_{k,n} expansion with A_{k,n}", "alpha-expansion", _v("alpha-expansion"),
               "|alpha - formula| <= 5e-8 (k = 10) and <= 5e-7 (k = 2)"),
    ClaimEntry("alpha-k-only-terms", "Conjecture: k-only terms of alpha_{k,n} are exact", "k1-alpha",
               _v("k1-alpha"), "k-only terms reduce to 2/3 at k = 1; fitted A coefficient differs from 8/405"),
    ClaimEntry("alpha-bounds", "Conjecture: alpha_{k,n} - n in (0, 1) for n >= kappa", "limits", _v("limits"),
               "bounds hold on the regime grids, k <= 12"),
    ClaimEntry("alpha-decreasing", "Conjecture: alpha_{k,n} - n decreasing on its regime", "limits", _v("limits"),
               "strict decrease with 1e-12 slack, 30 consecutive n per k"),
    ClaimEntry("alpha-limit", "Conjecture: limit of alpha_{k,n} - n", "limits", _v("limits"),
               "values stay above the limit; final gap below 0.05"),
    ClaimEntry("mean-minus-median-limit", "Conjecture: limit of alpha_{k,n} - median", "limits", _v("limits"),
               "values stay above (2k+9)/16 - 1/(16(2k+1))"),
    ClaimEntry("mean-minus-median-large-k", "Conjecture: large-k limit of the mean-minus-median limit", "limits",
               _v("limits"), "difference from (2k+9)/16 shrinks to 0 as k grows"),
    ClaimEntry("mode-formula", "Mode location conjecture, n >= 2 kappa", "mode-formula", _v("mode-formula"),
               "zero counterexamples and unique modes, k in 2..20; m = 234 at k = 15, lambda = 2"),
    ClaimEntry("gps-integer-lambda-mode", "GPS theorem: mode kappa*lambda - floor(k/2) at integer lambda",
               "mode-formula", _v("mode-formula"), "agreement for k in 2..5, lambda in {1, 2, 3}"),
    ClaimEntry("sharp-mode-bounds", "Proposition: sharp bounds on the mode", "mode-bounds", _v("mode-bounds"),
               "every mode lies within the bounds, k <= 12"),
    ClaimEntry("zero-mode-thresholds", "Unique zero mode for kappa*lambda < 1 and k = 2 below sqrt(3) - 1",
               "double-modes", _v("double-modes"), "mode is [0] on the sampled lambdas"),
    ClaimEntry("first-double-mode", "First double mode: [0, k] for k <= 14, [0, 25] at k = 15", "double-modes",
               _v("double-modes"), "k = 2 at sqrt(3) - 1 within 1e-9; k = 15 at 0.25023 within 5e-4"),
    ClaimEntry("figure-k15-double-mode", "Histogram figure of the k = 15 first double mode", "double-modes",
               "pok pmf --k 15 --lambda 0.25023 --n-max 60", "near-tie between n = 0 and n = 25, h(15) near 0.9945",
               ClaimStatus.INFORMATIONAL),
    ClaimEntry("figure-k15-lambda2", "Histogram figure for k = 15, lambda = 2", "mode-formula",
               "pok pmf --k 15 --lambda 2 --n-max 400", "argmax at n = 234", ClaimStatus.INFORMATIONAL),
    ClaimEntry("figure-median-mode-k3", "Figure of median and mode against kappa*lambda for k = 3", None,
               "pok stats --k 3 --mean <mu>", "plot-ready rows; no pass/fail", ClaimStatus.INFORMATIONAL),
    ClaimEntry("zero-mode-power-law", "(kappa lambda)_0 proportional to k^1.125 (figure and text)", "power-law",
               _v("power-law") + " --k-max 2000", "fitted exponent in 1.125 +/- 0.02 over k in [100, 2000]",
               ClaimStatus.SCALED_DOWN),
    ClaimEntry("beta-expansion", "beta_{k,n} expansion with B_{k,n}", "beta-expansion", _v("beta-expansion"),
               "|beta - formula| <= 5e-6 (k = 10) and <= 5e-5 (k = 2)"),
    ClaimEntry("beta-k-only-terms", "Conjecture: k-only terms of beta_{k,n} are exact", "k1-alpha",
               _v("k1-alpha"), "k-only terms reduce to 0 at k = 1"),
    ClaimEntry("beta-bounds", "Conjecture: beta_{k,n} - n in (0, 1) for n >= 2 kappa", "limits", _v("limits"),
               "bounds hold on the regime grids, k <= 12"),
    ClaimEntry("beta-decreasing", "Conjecture: beta_{k,n} - n decreasing on its regime", "limits", _v("limits"),
               "strict decrease with 1e-12 slack, 30 consecutive n per k"),
    ClaimEntry("beta-limit", "Conjecture: limit of beta_{k,n} - n", "limits", _v("limits"),
               "values stay above the limit; final gap below 0.05"),
    ClaimEntry("mean-minus-mode-limit", "Conjecture: limit of beta_{k,n} - mode", "limits", _v("limits"),
               "values stay above (6k+11)/16 - 3/(16(2k+1))"),
    ClaimEntry("mean-minus-mode-large-k", "Conjecture: large-k limit of the mean-minus-mode limit", "limits",
               _v("limits"), "difference from (6k+11)/16 shrinks to 0 as k grows"),
    ClaimEntry("ordering-k2-k3", "Ordering: (mode, median, mean) = (n-1, n, n) for k = 2, 3", "ordering",
               _v("ordering"), "holds for n in [2 kappa, 2 kappa + 50]"),
    ClaimEntry("ordering-strict", "Ordering: mode < median < mean for k >= 4, n >= 2 kappa", "ordering",
               _v("ordering"), "holds for k in 4..10"),
    ClaimEntry("ordering-weak", "Ordering: mode <= median <= mean for n < 2 kappa", "ordering", _v("ordering"),
               "holds on 200 seeded random (k, n) pairs, k in [2, 100]"),
)


def check_coverage(claims=CLAIMS, suites=None) -> None:
    """Raise if a suite has no claim or a non-informational claim has no suite."""
    suites = set(SUITES if suites is None else suites)
    claimed = {c.suite for c in claims if c.suite is not None}
    missing = sorted(suites - claimed)
    if missing:
        raise MissingSuiteError(f"suites without a claim entry: {', '.join(missing)}")
    orphans = sorted(
        c.claim_id for c in claims
        if c.status is not ClaimStatus.INFORMATIONAL and c.suite not in suites
    )
    if orphans:
        raise MissingSuiteError(f"claims without a suite: {', '.join(orphans)}")


def generate_claim_index(claims=CLAIMS) -> str:
    check_coverage(claims)
    lines = [
        "# Claim index",
        "",
        "Each row links a published claim to the command that checks it.",
        "Generated by `pok claims`; do not edit by hand.",
        "",
        "| claim | location | suite | command | pass criterion | status |",
        "|---|---|---|---|---|---|",
    ]
    for c in claims:
        cells = [c.claim_id, c.location, c.suite or "-", f"`{c.command_line}`", c.expected, c.status.value]
        lines.append("| " + " | ".join(x.replace("|", "\\|") for x in cells) + " |")
    return "\n".join(lines) + "\n"

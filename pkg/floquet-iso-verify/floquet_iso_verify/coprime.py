# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Exhaustive check of the vanishing pattern of the three-period root determinant.

For pairwise coprime ``q1, q2, q3`` the determinant with rows ``(1, 1, 1)``,
``(rho1_l1, rho2_l2, rho3_l3)`` and ``(rho1_l1', rho2_l2', rho3_l3')`` is zero
exactly when ``(l, l')`` falls into one of six integer cases. The cases are
decided by integer predicates alone, so the enumeration cross-checks the
floating-point determinant against the combinatorics.
"""

from __future__ import annotations

import logging
from typing import Dict, Optional, Sequence

import numpy as np

from floquet_iso_core.config import DEFAULT_CONFIG, SpectralConfig
from floquet_iso_core.exceptions import BadCoordinate
from floquet_iso_core.lattice import new_lattice
from floquet_iso_core.models import Verdict

from .models import CoprimeReport

logger = logging.getLogger(__name__)

VANISHING_TOL = 1e-10
MAX_EXAMPLES = 10
CASES = ("a", "b", "c", "d", "e", "f")


def root_determinants(periods: Sequence[int]) -> np.ndarray:
    """``det[i, k]`` for the multi-indices ``l = index i`` and ``l' = index k`` of the three-period lattice."""
    lattice = new_lattice(periods)
    x = lattice.roots[:, None, :]
    y = lattice.roots[None, :, :]
    return (
        (x[..., 1] * y[..., 2] - x[..., 2] * y[..., 1])
        - (x[..., 0] * y[..., 2] - x[..., 2] * y[..., 0])
        + (x[..., 0] * y[..., 1] - x[..., 1] * y[..., 0])
    )


def case_masks(periods: Sequence[int]) -> Dict[str, np.ndarray]:
    """Boolean ``(Q, Q)`` masks of the six cases over all ``(l, l')``."""
    lattice = new_lattice(periods)
    l = lattice.multi_indices[:, None, :]
    lp = lattice.multi_indices[None, :, :]
    zero = l == 0
    zero_p = lp == 0
    both = zero & zero_p
    Q = lattice.Q
    return {
        "a": np.broadcast_to(np.all(zero, axis=-1), (Q, Q)),
        "b": np.broadcast_to(np.all(zero_p, axis=-1), (Q, Q)),
        "c": np.all(l == lp, axis=-1),
        "d": both[..., 0] & both[..., 1],
        "e": both[..., 0] & both[..., 2],
        "f": both[..., 1] & both[..., 2],
    }


def enumerate_vanishing_determinants(
    periods: Sequence[int],
    tol: Optional[float] = None,
    config: SpectralConfig = DEFAULT_CONFIG,
) -> CoprimeReport:
    """Enumerate every ``(l, l')`` and cross-check ``det == 0`` against the six cases.

    PASS iff no vanishing tuple is unclassified and no classified tuple has a
    nonzero determinant.

    Raises:
        BadCoordinate: If the number of periods is not three.
        CoprimalityViolation: If the periods are not pairwise coprime.
    """
    periods = [int(q) for q in periods]
    if len(periods) != 3:
        raise BadCoordinate(f"The determinant lemma needs exactly three periods, got {periods}.")
    tol = VANISHING_TOL if tol is None else tol
    lattice = new_lattice(periods)
    magnitude = np.abs(root_determinants(periods))
    masks = case_masks(periods)
    classified = np.logical_or.reduce([masks[name] for name in CASES])
    vanishing = magnitude < tol

    unclassified = vanishing & ~classified
    stray = classified & ~vanishing
    offending = np.argwhere(unclassified | stray)[:MAX_EXAMPLES]
    nonzero = magnitude[~vanishing]
    report = CoprimeReport(
        verdict=Verdict.PASS if not unclassified.any() and not stray.any() else Verdict.FAIL,
        tol=tol,
        periods=periods,
        tuples=int(magnitude.size),
        vanishing=int(vanishing.sum()),
        unclassified=int(unclassified.sum()),
        classified_nonvanishing=int(stray.sum()),
        case_counts={name: int(masks[name].sum()) for name in CASES},
        min_nonzero=float(nonzero.min()) if nonzero.size else 0.0,
        examples=[
            [*lattice.multi_index_of(int(i)), *lattice.multi_index_of(int(k))] for i, k in offending
        ],
    )
    logger.info(
        f"Determinant enumeration for q={periods}: {report.vanishing}/{report.tuples} vanish, "
        f"{report.unclassified} unclassified, gap {report.min_nonzero:.3e}"
    )
    return report

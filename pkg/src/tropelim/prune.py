"""Monomial reduction passes for elimination stages.

Every pass keeps the value of the stage polynomial unchanged at each point of
the box, so the minimum and the optimal set are unaffected.  Passes take and
return objective stages (any frozen dataclass with ``semifield`` and
``monomials`` fields) and never increase the row count.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .polynomial import Box, Monomial, merge_terms
from .semifield import ZERO, Semifield

PRUNE_LEVELS = ("none", "basic", "dominance")

# rows per block in the float dominance prefilter
_CHUNK_CELLS = 4_000_000


@dataclass
class PruneReport:
    before: int = 0
    dropped_zero: int = 0
    merged: int = 0
    dominated: int = 0

    @property
    def after(self) -> int:
        return self.before - self.dropped_zero - self.merged - self.dominated

    def as_dict(self) -> dict:
        return {
            "before": self.before,
            "dropped_zero": self.dropped_zero,
            "merged": self.merged,
            "dominated": self.dominated,
            "after": self.after,
        }


def drop_zero(stage, report: PruneReport | None = None):
    kept = tuple(m for m in stage.monomials if m.coeff is not ZERO)
    if report is not None:
        report.dropped_zero += len(stage.monomials) - len(kept)
    return dataclasses.replace(stage, monomials=kept)


def merge_duplicates(stage, report: PruneReport | None = None):
    """Merge rows with equal exponent vectors by ⊕ and sort lexicographically."""
    merged = merge_terms(stage.semifield, stage.monomials)
    kept = tuple(Monomial(merged[e], e) for e in sorted(merged))
    if report is not None:
        report.merged += len(stage.monomials) - len(kept)
    return dataclasses.replace(stage, monomials=kept)


def ratio_supremum(sf: Semifield, mi: Monomial, mk: Monomial, box: Box):
    """sup over the box of term_i ⊘ term_k, or None when it is unbounded.

    Unbounded means some variable with δ_j = p_ij - p_kj < 0 has a ZERO lower
    bound, which would need the inverse of ZERO.
    """
    v = sf.div(mi.coeff, mk.coeff)
    for pi, pk, g, h in zip(mi.exponents, mk.exponents, box.lower, box.upper):
        d = pi - pk
        if d > 0:
            v = sf.otimes(v, sf.tpow(h, d))
        elif d < 0:
            if g is ZERO:
                return None
            v = sf.otimes(v, sf.tpow(g, d))
    return v


def dominates(sf: Semifield, mk: Monomial, mi: Monomial, box: Box) -> bool:
    """True if term_i ≤ term_k everywhere on the box."""
    sup = ratio_supremum(sf, mi, mk, box)
    return sup is not None and sf.leq(sup, sf.one)


def _candidate_matrix_rows(sf: Semifield, monos, box: Box):
    """Yield (i, sorted candidate k's) from a float screen of the dominance test.

    The screen works in the order-preserving max-plus float image of the
    semifield and is only a filter: every candidate is re-checked exactly.
    """
    m = len(monos)
    n = len(box)
    coeff = np.array([sf.log_embed(t.coeff) for t in monos], dtype=float)
    lo = np.array([sf.log_embed(g) for g in box.lower], dtype=float)
    hi = np.array([sf.log_embed(h) for h in box.upper], dtype=float)
    exps = np.array([[float(e) for e in t.exponents] for t in monos], dtype=float).reshape(m, n)
    scale = 1.0 + float(np.max(np.abs(coeff))) if m else 1.0
    if n:
        finite = np.concatenate([lo[np.isfinite(lo)], hi])
        scale += float(np.max(np.abs(exps))) * float(np.max(np.abs(finite))) * n
    tol = 1e-9 * scale

    chunk = max(1, _CHUNK_CELLS // max(1, m * max(n, 1)))
    with np.errstate(invalid="ignore"):
        for start in range(0, m, chunk):
            stop = min(m, start + chunk)
            sup = coeff[start:stop, None] - coeff[None, :]
            if n:
                delta = exps[start:stop, None, :] - exps[None, :, :]
                contrib = np.where(
                    delta > 0, delta * hi, np.where(delta < 0, delta * lo, 0.0)
                )
                sup = sup + contrib.sum(axis=2)
            mask = sup <= tol
            for r in range(stop - start):
                i = start + r
                mask[r, i] = False
                ks = np.flatnonzero(mask[r])
                if ks.size:
                    yield i, ks


def dominance_prune(stage, box: Box, report: PruneReport | None = None):
    """Drop rows dominated on the box by a single other row.

    Row i is removed when some surviving row k satisfies
    sup_box(term_i ⊘ term_k) ≤ 𝟙.  Rows are only ever compared against rows
    that are still present, so every removed row stays covered by a kept one.
    """
    sf = stage.semifield
    monos = stage.monomials
    if len(monos) < 2:
        return stage
    if len(box) != len(monos[0].exponents):
        raise ValueError(f"box has {len(box)} variables, stage has {len(monos[0].exponents)}")

    removed = np.zeros(len(monos), dtype=bool)
    for i, ks in _candidate_matrix_rows(sf, monos, box):
        for k in ks:
            if removed[k]:
                continue
            if dominates(sf, monos[k], monos[i], box):
                removed[i] = True
                break
    kept = tuple(t for t, r in zip(monos, removed) if not r)
    if report is not None:
        report.dominated += len(monos) - len(kept)
    return dataclasses.replace(stage, monomials=kept)


def apply_prune(stage, box: Box, level: str, report: PruneReport | None = None):
    """Run the passes for a prune level: zero-drop, then merge, then dominance."""
    if level not in PRUNE_LEVELS:
        raise ValueError(f"unknown prune level {level!r}")
    stage = drop_zero(stage, report)
    if level in ("basic", "dominance"):
        stage = merge_duplicates(stage, report)
    if level == "dominance":
        stage = dominance_prune(stage, box, report)
    return stage

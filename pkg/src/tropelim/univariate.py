"""Closed-form minimization of one-variable tropical Puiseux polynomials."""

from __future__ import annotations

from dataclasses import dataclass

from .polynomial import Problem, evaluate
from .semifield import ZERO, Semifield, SemifieldError, Value


@dataclass(frozen=True)
class Interval:
    """Bounds lower ≤ x ≤ upper in the induced order.

    ``lower`` may be ZERO, meaning the interval is open at the zero element
    (x itself must stay nonzero).
    """

    lower: Value
    upper: Value

    def is_consistent(self, sf: Semifield) -> bool:
        return sf.leq(self.lower, self.upper)

    def contains(self, sf: Semifield, x: Value) -> bool:
        return x is not ZERO and sf.leq(self.lower, x) and sf.leq(x, self.upper)


@dataclass(frozen=True)
class UnivariateResult:
    mu: Value
    interval: Interval | None
    attained: bool


def box_coefficient(sf: Semifield, a: Value, p, g: Value, h: Value) -> Value:
    """(h^{-p} ⊕ g^{-p})^{-1} ⊗ a, evaluated without ever inverting ZERO.

    For g ≤ h the bracket collapses to h^p, 𝟙 or g^p by the sign of p.
    """
    if p < 0:
        return sf.otimes(sf.tpow(h, p), a)
    if p > 0:
        if g is ZERO:
            return ZERO
        return sf.otimes(sf.tpow(g, p), a)
    return a


def pair_coefficient(sf: Semifield, a_neg: Value, p_neg, a_pos: Value, p_pos) -> Value:
    """a_i^{-p_k/(p_i-p_k)} ⊗ a_k^{p_i/(p_i-p_k)} for p_i < 0 < p_k."""
    d = p_neg - p_pos
    return sf.otimes(sf.tpow(a_neg, -p_pos / d), sf.tpow(a_pos, p_neg / d))


def _check(prob: Problem) -> None:
    if prob.arity != 1:
        raise SemifieldError(f"univariate solver needs arity 1, got {prob.arity}")
    if not prob.polynomial.is_canonical():
        raise SemifieldError("univariate solver needs a canonical polynomial")


def pair_terms(prob: Problem) -> list:
    """Nonzero pair terms of the minimum formula, one per (p_i < 0, p_k > 0)."""
    sf = prob.semifield
    monos = prob.polynomial.monomials
    neg = [(m.coeff, m.exponents[0]) for m in monos if m.exponents[0] < 0]
    pos = [(m.coeff, m.exponents[0]) for m in monos if m.exponents[0] > 0]
    return [pair_coefficient(sf, ai, pi, ak, pk) for ai, pi in neg for ak, pk in pos]


def solve_univariate(prob: Problem) -> UnivariateResult:
    _check(prob)
    sf = prob.semifield
    g, h = prob.box.lower[0], prob.box.upper[0]
    monos = prob.polynomial.monomials

    box_terms = (box_coefficient(sf, m.coeff, m.exponents[0], g, h) for m in monos)
    mu = sf.oplus(sf.sum(pair_terms(prob)), sf.sum(box_terms))
    if mu is ZERO:
        return UnivariateResult(ZERO, None, attained=False)

    lower = sf.oplus(
        sf.sum(
            sf.otimes(sf.tpow(mu, 1 / p), sf.tpow(m.coeff, -1 / p))
            for m in monos
            if (p := m.exponents[0]) < 0
        ),
        g,
    )
    upper_inv = sf.oplus(
        sf.sum(
            sf.otimes(sf.tpow(mu, -1 / p), sf.tpow(m.coeff, 1 / p))
            for m in monos
            if (p := m.exponents[0]) > 0
        ),
        sf.inv(h),
    )
    return UnivariateResult(mu, Interval(lower, sf.inv(upper_inv)), attained=True)


def breakpoint_oracle(prob: Problem) -> Value:
    """Exact minimum by brute force over breakpoints of the convex objective.

    Evaluates f at both box ends and at every pairwise crossing point of two
    terms (clipped into the box) and returns the least value.
    """
    _check(prob)
    sf = prob.semifield
    if not sf.exact:
        raise SemifieldError("breakpoint oracle needs exact mode")
    g, h = prob.box.lower[0], prob.box.upper[0]
    if g is ZERO:
        raise SemifieldError("breakpoint oracle needs a finite lower bound")

    monos = prob.polynomial.monomials
    candidates = [g, h]
    for i, mi in enumerate(monos):
        for mk in monos[i + 1:]:
            pi, pk = mi.exponents[0], mk.exponents[0]
            if pi == pk:
                continue
            x = sf.tpow(sf.div(mi.coeff, mk.coeff), 1 / (pk - pi))
            if sf.leq(h, x):
                x = h
            candidates.append(sf.oplus(g, x))

    best = ZERO
    for x in candidates:
        v = evaluate(prob.polynomial, (x,))
        if best is ZERO or sf.leq(v, best):
            best = v
    return best

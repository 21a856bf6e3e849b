"""Brute-force reference minimizers and a seeded random problem generator.

None of this shares code with the elimination engine beyond polynomial
evaluation, so agreement between the two is meaningful evidence.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import Problem, evaluate
from .semifield import ZERO, Semifield, SemifieldError, Value, get_semifield


class OracleCapacityError(RuntimeError):
    pass


def _least(sf: Semifield, values) -> Value:
    best = ZERO
    for v in values:
        if best is ZERO or sf.leq(v, best):
            best = v
    return best


def _check_exact_finite(prob: Problem, who: str) -> Semifield:
    sf = prob.semifield
    if not (sf.exact and sf.additive):
        raise SemifieldError(f"{who} needs an exact max-plus or min-plus problem")
    if any(g is ZERO for g in prob.box.lower):
        raise SemifieldError(f"{who} needs finite lower bounds")
    return sf


def grid_oracle(prob: Problem, resolution: int, max_points: int = 1_000_000) -> Value:
    """Least objective value over a resolution^N lattice spanning the box.

    An upper bound (in the induced order) on the true minimum.
    """
    sf = _check_exact_finite(prob, "grid oracle")
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    n = prob.arity
    if resolution ** n > max_points:
        raise OracleCapacityError(
            f"grid of {resolution}^{n} points exceeds the cap of {max_points}"
        )
    axes = []
    for g, h in zip(prob.box.lower, prob.box.upper):
        step = sf.div(h, g)
        axes.append([sf.otimes(g, sf.tpow(step, Fraction(t, resolution - 1)))
                     for t in range(resolution)])
    return _least(sf, (evaluate(prob.polynomial, x) for x in itertools.product(*axes)))


def solve_linear(a, b):
    """Solve the square rational system a x = b exactly, or return None if singular.

    Rows are scaled to integers and reduced with Bareiss' fraction-free
    elimination, so every intermediate entry stays an exact integer.
    """
    n = len(a)
    m = []
    for row, rhs in zip(a, b):
        entries = [Fraction(v) for v in row] + [Fraction(rhs)]
        scale = math.lcm(*(e.denominator for e in entries))
        m.append([int(e * scale) for e in entries])

    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return None
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]

    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(m[i][n]) - sum(m[i][j] * x[j] for j in range(i + 1, n))
        x[i] = acc / m[i][i]
    return x


def _normalized(row, rhs):
    lead = next(v for v in row if v != 0)
    return tuple(v / lead for v in row) + (rhs / lead,)


def candidate_equations(prob: Problem) -> list:
    """Affine equations (row, rhs) whose intersections can be optimal vertices.

    In carrier arithmetic term_i = term_k reads (p_i - p_k)·x = a_k - a_i; box
    facets read x_j = g_j and x_j = h_j.  Duplicates are removed.
    """
    n = prob.arity
    monos = prob.polynomial.monomials
    seen = set()
    eqs = []

    def add(row, rhs):
        if all(v == 0 for v in row):
            return
        key = _normalized(row, rhs)
        if key not in seen:
            seen.add(key)
            eqs.append((tuple(row), rhs))

    for mi, mk in itertools.combinations(monos, 2):
        add([pi - pk for pi, pk in zip(mi.exponents, mk.exponents)], mk.coeff - mi.coeff)
    for j in range(n):
        unit = [Fraction(0)] * n
        unit[j] = Fraction(1)
        add(unit, prob.box.lower[j])
        add(unit, prob.box.upper[j])
    return eqs


def vertex_oracle(prob: Problem, max_arity: int = 3, max_monomials: int = 8) -> Value:
    """Exact minimum by enumerating vertices of the piecewise-affine objective.

    A box-constrained minimum of a max of affine functions is attained where
    N independent equations among {term_i = term_k} ∪ box facets hold.  All
    such points inside the box, plus the box corners, are evaluated.
    """
    sf = _check_exact_finite(prob, "vertex oracle")
    n = prob.arity
    if n > max_arity:
        raise OracleCapacityError(f"vertex oracle supports N <= {max_arity}, got {n}")
    if len(prob.polynomial) > max_monomials:
        raise OracleCapacityError(
            f"vertex oracle supports M <= {max_monomials}, got {len(prob.polynomial)}"
        )

    box = prob.box
    values = [evaluate(prob.polynomial, x) for x in itertools.product(*zip(box.lower, box.upper))]
    eqs = candidate_equations(prob)
    for combo in itertools.combinations(eqs, n):
        x = solve_linear([row for row, _ in combo], [rhs for _, rhs in combo])
        if x is None or not box.contains(sf, x):
            continue
        values.append(evaluate(prob.polynomial, x))
    return _least(sf, values)


@dataclass(frozen=True)
class GeneratorParams:
    arity: int = 2
    monomials: int = 4
    coeff_numerator: tuple = (-6, 6)
    coeff_denominator: tuple = (1, 3)
    exponent_numerator: tuple = (-3, 3)
    exponent_denominator: tuple = (1, 2)
    bound_numerator: tuple = (-6, 6)
    bound_denominator: tuple = (1, 2)
    width_numerator: tuple = (0, 6)
    zero_lower: float = 0.0
    semifield: str = "max-plus"
    seed: int = 0


def _rational(rng: random.Random, num, den) -> Fraction:
    return Fraction(rng.randint(*num), rng.randint(*den))


def random_problem(params: GeneratorParams) -> Problem:
    """A valid exact problem, fully determined by ``params`` (including seed)."""
    if params.arity < 1 or params.monomials < 1:
        raise ValueError("arity and monomial count must be positive")
    sf = get_semifield(params.semifield, "exact")
    rng = random.Random(params.seed)
    terms = []
    for _ in range(params.monomials):
        coeff = _rational(rng, params.coeff_numerator, params.coeff_denominator)
        exps = [_rational(rng, params.exponent_numerator, params.exponent_denominator)
                for _ in range(params.arity)]
        terms.append((coeff, exps))
    lower, upper = [], []
    for _ in range(params.arity):
        a = _rational(rng, params.bound_numerator, params.bound_denominator)
        b = a + _rational(rng, params.width_numerator, params.bound_denominator)
        lo, hi = (a, b) if sf.maximize else (b, a)
        if params.zero_lower and rng.random() < params.zero_lower:
            lo = ZERO
        lower.append(lo)
        upper.append(hi)
    return Problem.make(sf, terms, lower, upper)

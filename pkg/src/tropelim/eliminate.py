"""Backward variable elimination and forward substitution.

Backward phase: starting from the objective in x_1..x_N, each step removes
the last variable and produces a new objective in one variable fewer whose
box-constrained minimum is the same.  After N steps the objective is a
constant, the minimum mu.

Forward phase: every eliminated stage also yields a two-sided bound on its
last variable as a polynomial in the preceding ones.  Evaluating these bounds
for x_1, x_2, ... in turn, and fixing each variable inside its bound, gives
an optimal point together with the interval of choices at every step.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field

from .polynomial import Box, Monomial, Polynomial, Problem, evaluate, merge_terms
from .prune import PRUNE_LEVELS, PruneReport, apply_prune
from .semifield import ZERO, Semifield, SemifieldError, Value
from .univariate import Interval, box_coefficient

DEFAULT_MAX_MONOMIALS = 5_000_000
PICK_STRATEGIES = ("lower", "midpoint", "upper")

ATTAINED = "attained"
NOT_ATTAINED = "infimum-not-attained"


class CapacityError(RuntimeError):
    """A stage would exceed the configured monomial cap."""

    def __init__(self, level: int, count: int, cap: int):
        super().__init__(
            f"stage {level} would hold {count} monomials, above the cap of {cap}"
        )
        self.level = level
        self.count = count
        self.cap = cap


class InvariantError(AssertionError):
    """An internal consistency check failed; this indicates a bug."""


def default_cap() -> int:
    env = os.environ.get("TROPELIM_MAX_MONOMIALS")
    return int(env) if env else DEFAULT_MAX_MONOMIALS


@dataclass(frozen=True)
class SolverOptions:
    prune: str = "dominance"
    pick: str = "lower"
    max_monomials: int = field(default_factory=default_cap)
    keep_trace: bool = False
    mode: str = "exact"
    threads: int = 1

    def __post_init__(self):
        if self.prune not in PRUNE_LEVELS:
            raise ValueError(f"unknown prune level {self.prune!r}")
        if self.pick not in PICK_STRATEGIES:
            raise ValueError(f"unknown pick strategy {self.pick!r}")
        if self.max_monomials < 1:
            raise ValueError("max_monomials must be positive")
        if self.mode not in ("exact", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class ObjectiveStage:
    """Objective polynomial in x_1..x_level (level 0: a constant)."""

    level: int
    semifield: Semifield
    monomials: tuple
    raw_count: int = 0

    @property
    def size(self) -> int:
        return len(self.monomials)

    @property
    def coeffs(self) -> list:
        return [m.coeff for m in self.monomials]

    @property
    def exponents(self) -> list:
        return [m.exponents for m in self.monomials]

    @property
    def polynomial(self) -> Polynomial:
        return Polynomial(self.semifield, self.level, self.monomials)

    @classmethod
    def from_problem(cls, prob: Problem) -> "ObjectiveStage":
        p = prob.polynomial
        return cls(prob.arity, p.semifield, p.monomials, raw_count=len(p))


@dataclass(frozen=True)
class ConstraintStage:
    """Bounds on x_level in terms of x_1..x_{level-1}.

    Row i contributes c_i ⊗ x^{r_i} to the lower bound when c_i is nonzero and
    d_i ⊗ x^{s_i} to the inverted upper bound when d_i is nonzero.
    """

    level: int
    semifield: Semifield
    c: tuple
    r: tuple
    d: tuple
    s: tuple

    def bounds(self, prefix, g: Value, h: Value) -> Interval:
        sf = self.semifield
        lower = g
        for ci, ri in zip(self.c, self.r):
            if ci is not ZERO:
                lower = sf.oplus(lower, _term(sf, ci, ri, prefix))
        upper_inv = sf.inv(h)
        for di, si in zip(self.d, self.s):
            if di is not ZERO:
                upper_inv = sf.oplus(upper_inv, _term(sf, di, si, prefix))
        return Interval(lower, sf.inv(upper_inv))


def _term(sf: Semifield, coeff, exps, x) -> Value:
    v = coeff
    for p, xj in zip(exps, x):
        if p:
            v = sf.otimes(v, sf.tpow(xj, p))
    return v


@dataclass
class StageStats:
    level: int
    raw_count: int
    pruned_count: int
    elapsed_ms: float
    prune: PruneReport

    def as_dict(self) -> dict:
        return {
            "level": self.level,
            "raw_count": self.raw_count,
            "pruned_count": self.pruned_count,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "prune": self.prune.as_dict(),
        }


@dataclass
class EliminationTrace:
    semifield: Semifield
    mu: Value
    objectives: list  # ObjectiveStage for levels N..0 (empty in summary mode)
    constraints: list  # ConstraintStage for levels N..1
    stats: list

    def constraint(self, level: int) -> ConstraintStage:
        for c in self.constraints:
            if c.level == level:
                return c
        raise KeyError(level)


@dataclass
class Solution:
    mu: Value
    point: tuple
    intervals: tuple
    status: str
    trace: EliminationTrace | None = None

    @property
    def attained(self) -> bool:
        return self.status == ATTAINED


# -- backward phase ----------------------------------------------------------


def _pair_kernel(sf: Semifield):
    """Return f(a_i, p_i, a_k, p_k) giving the pair coefficient for p_i < 0 < p_k."""
    if sf.additive:
        def pair(ai, pi, ak, pk):
            return (pi * ak - pk * ai) / (pi - pk)
    else:
        def pair(ai, pi, ak, pk):
            d = pi - pk
            return ai ** float(-pk / d) * ak ** float(pi / d)
    return pair


def stage_rows(stage: ObjectiveStage, g: Value, h: Value):
    """Yield the nonzero rows of the next stage: pair rows, then box rows."""
    sf = stage.semifield
    n = stage.level
    last = n - 1
    neg, pos = [], []
    for m in stage.monomials:
        p = m.exponents[last]
        if p < 0:
            neg.append(m)
        elif p > 0:
            pos.append(m)

    pair = _pair_kernel(sf)
    for mi in neg:
        ei, ai = mi.exponents, mi.coeff
        pin = ei[last]
        for mk in pos:
            ek = mk.exponents
            pkn = ek[last]
            den = pin - pkn
            q = tuple((ek[j] * pin - ei[j] * pkn) / den for j in range(last))
            yield Monomial(pair(ai, pin, mk.coeff, pkn), q)

    for m in stage.monomials:
        b = box_coefficient(sf, m.coeff, m.exponents[last], g, h)
        if b is not ZERO:
            yield Monomial(b, m.exponents[:last])


def next_stage_size(stage: ObjectiveStage, g: Value) -> int:
    """Number of nonzero rows the next elimination step will emit."""
    last = stage.level - 1
    neg = sum(1 for m in stage.monomials if m.exponents[last] < 0)
    pos = sum(1 for m in stage.monomials if m.exponents[last] > 0)
    box = stage.size - (pos if g is ZERO else 0)
    return neg * pos + box


def eliminate_step(
    stage: ObjectiveStage,
    g: Value,
    h: Value,
    merge: bool = True,
    max_monomials: int | None = None,
) -> ObjectiveStage:
    """Eliminate x_level; return the objective stage one level down.

    ``raw_count`` on the result is the number of nonzero rows emitted before
    duplicate rows were merged.
    """
    sf = stage.semifield
    n = stage.level
    if n < 1:
        raise ValueError("nothing left to eliminate")
    if h is ZERO:
        raise SemifieldError(f"upper bound of x_{n} must be nonzero")
    if not sf.leq(g, h):
        raise SemifieldError(f"box for x_{n} is empty")

    raw = next_stage_size(stage, g)
    if max_monomials is not None and raw > max_monomials:
        raise CapacityError(n - 1, raw, max_monomials)

    rows = stage_rows(stage, g, h)
    if merge:
        merged = merge_terms(sf, rows)
        monos = tuple(Monomial(merged[e], e) for e in sorted(merged))
    else:
        monos = tuple(sorted(rows, key=lambda m: m.exponents))
    return ObjectiveStage(n - 1, sf, monos, raw_count=raw)


def build_constraints(stage: ObjectiveStage, mu: Value) -> ConstraintStage:
    sf = stage.semifield
    if mu is ZERO:
        raise SemifieldError("infimum not attained; no certificate intervals")
    n = stage.level
    last = n - 1
    c, r, d, s = [], [], [], []
    zeros = (0,) * last
    for m in stage.monomials:
        p = m.exponents[last]
        head = m.exponents[:last]
        if p < 0:
            c.append(sf.otimes(sf.tpow(mu, 1 / p), sf.tpow(m.coeff, -1 / p)))
            r.append(tuple(-e / p for e in head))
        else:
            c.append(ZERO)
            r.append(zeros)
        if p > 0:
            d.append(sf.otimes(sf.tpow(mu, -1 / p), sf.tpow(m.coeff, 1 / p)))
            s.append(tuple(e / p for e in head))
        else:
            d.append(ZERO)
            s.append(zeros)
    return ConstraintStage(n, sf, tuple(c), tuple(r), tuple(d), tuple(s))


def backward_eliminate(prob: Problem, options: SolverOptions | None = None) -> EliminationTrace:
    options = options or SolverOptions()
    prob.validate()
    sf = prob.semifield
    box = prob.box
    merge = options.prune != "none"

    if len(prob.polynomial) > options.max_monomials:
        raise CapacityError(prob.arity, len(prob.polynomial), options.max_monomials)
    stats = []
    t0 = time.perf_counter()
    report = PruneReport(before=len(prob.polynomial))
    stage = apply_prune(ObjectiveStage.from_problem(prob), box, options.prune, report)
    stats.append(StageStats(prob.arity, report.before, stage.size,
                            (time.perf_counter() - t0) * 1e3, report))
    objectives = [stage]
    for n in range(prob.arity, 0, -1):
        t0 = time.perf_counter()
        g, h = box.lower[n - 1], box.upper[n - 1]
        nxt = eliminate_step(stage, g, h, merge=merge, max_monomials=options.max_monomials)
        report = PruneReport(before=nxt.raw_count, merged=nxt.raw_count - nxt.size)
        nxt = apply_prune(nxt, box.prefix(n - 1), options.prune, report)
        stats.append(StageStats(n - 1, nxt.raw_count, nxt.size,
                                (time.perf_counter() - t0) * 1e3, report))
        objectives.append(nxt)
        stage = nxt

    mu = sf.sum(stage.coeffs)
    constraints = []
    if mu is not ZERO:
        constraints = [build_constraints(st, mu) for st in objectives[:-1]]
    return EliminationTrace(sf, mu, objectives, constraints, stats)


# -- forward phase -----------------------------------------------------------


def pick_value(sf: Semifield, interval: Interval, strategy: str) -> Value:
    lo, hi = interval.lower, interval.upper
    if strategy == "upper" or lo is ZERO:
        return hi
    if strategy == "lower":
        return lo
    if strategy == "midpoint":
        return sf.tpow(sf.otimes(lo, hi), sf.exponent(1) / 2)
    raise ValueError(f"unknown pick strategy {strategy!r}")


def _settle(sf: Semifield, interval: Interval, level: int) -> Interval:
    if sf.leq(interval.lower, interval.upper):
        return interval
    if not sf.exact:
        a = sf.log_embed(interval.lower)
        b = sf.log_embed(interval.upper)
        if a - b <= 1e-9 * (1.0 + abs(a) + abs(b)):
            return Interval(interval.upper, interval.upper)
    raise InvariantError(
        f"empty interval for x_{level}: {sf.format(interval.lower)} > {sf.format(interval.upper)}"
    )


def forward_substitute(trace: EliminationTrace, box: Box, pick: str = "lower") -> Solution:
    sf = trace.semifield
    if trace.mu is ZERO:
        return Solution(ZERO, (), (), NOT_ATTAINED, trace)
    point, intervals = [], []
    for n in range(1, len(box) + 1):
        cons = trace.constraint(n)
        iv = _settle(sf, cons.bounds(point, box.lower[n - 1], box.upper[n - 1]), n)
        intervals.append(iv)
        point.append(pick_value(sf, iv, pick))
    return Solution(trace.mu, tuple(point), tuple(intervals), ATTAINED, trace)


def solve(prob: Problem, options: SolverOptions | None = None) -> Solution:
    """Minimize a box-constrained tropical Puiseux polynomial.

    Returns the minimum, an optimal point chosen by ``options.pick`` and the
    interval each coordinate was chosen from.  When the minimum is only an
    infimum (possible with ZERO lower bounds) the status says so and the
    point is empty.
    """
    options = options or SolverOptions()
    if options.mode == "float":
        prob = prob.as_float()
    trace = backward_eliminate(prob, options)
    sol = forward_substitute(trace, prob.box, options.pick)
    if sol.attained and prob.semifield.exact:
        value = evaluate(prob.polynomial, sol.point)
        if value != sol.mu or not prob.box.contains(prob.semifield, sol.point):
            raise InvariantError("forward substitution produced a point that does not attain mu")
    if not options.keep_trace:
        trace.objectives = []
    return sol


# -- documents ---------------------------------------------------------------


def _fmt(sf: Semifield, v: Value, as_float: bool) -> str:
    if as_float and v is not ZERO:
        return format(float(v), ".17g")
    return sf.format(v)


def solution_to_dict(sol: Solution, semifield: Semifield, stats: bool = False,
                     as_float: bool = False) -> dict:
    """JSON-ready solution document with a fixed key order."""
    sf = semifield
    doc = {
        "status": sol.status,
        "semifield": sf.name,
        "mode": "float" if as_float else sf.mode,
        "mu": _fmt(sf, sol.mu, as_float),
        "point": [_fmt(sf, x, as_float) for x in sol.point],
        "intervals": [[_fmt(sf, iv.lower, as_float), _fmt(sf, iv.upper, as_float)]
                      for iv in sol.intervals],
    }
    if stats and sol.trace is not None:
        doc["stats"] = [s.as_dict() for s in sol.trace.stats]
    return doc

"""Discrete linear Chebyshev (minimax) fitting through the max-plus solver.

Minimizing max_i |X_i·θ - Y_i| over a box is a max-plus problem: each
residual |r| = max(Y - X·θ, X·θ - Y) becomes the tropical sum of the two
monomials Y ⊗ θ^{-X} and Y^{-1} ⊗ θ^{X}.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .eliminate import Solution, SolverOptions, solve
from .polynomial import Box, Monomial, Polynomial, Problem, ValidationError
from .semifield import MAX_PLUS, SemifieldError, parse_number


class CertificateError(AssertionError):
    """The decoded fit disagrees with an ordinary-arithmetic residual check."""


def _rational(v) -> Fraction:
    return parse_number(v) if isinstance(v, str) else Fraction(v)


@dataclass(frozen=True)
class ChebDataset:
    X: tuple  # K rows of N rationals
    Y: tuple
    lower: tuple
    upper: tuple

    def __post_init__(self):
        k = len(self.X)
        if k < 1:
            raise ValidationError("X", "need at least one observation")
        n = len(self.X[0])
        if n < 1:
            raise ValidationError("X", "need at least one parameter")
        for i, row in enumerate(self.X):
            if len(row) != n:
                raise ValidationError(f"X[{i}]", f"expected {n} columns, got {len(row)}")
        if len(self.Y) != k:
            raise ValidationError("Y", f"expected {k} values, got {len(self.Y)}")
        for name, b in (("lower", self.lower), ("upper", self.upper)):
            if len(b) != n:
                raise ValidationError(name, f"expected {n} bounds, got {len(b)}")
        for j, (g, h) in enumerate(zip(self.lower, self.upper)):
            if g > h:
                raise ValidationError(f"lower[{j}]", f"lower bound {g} exceeds upper bound {h}")

    @classmethod
    def make(cls, X, Y, lower, upper) -> "ChebDataset":
        return cls(
            tuple(tuple(_rational(v) for v in row) for row in X),
            tuple(_rational(v) for v in Y),
            tuple(_rational(v) for v in lower),
            tuple(_rational(v) for v in upper),
        )

    @property
    def size(self) -> int:
        return len(self.X)

    @property
    def arity(self) -> int:
        return len(self.X[0])


@dataclass(frozen=True)
class ChebResult:
    error: Fraction
    theta: tuple
    intervals: tuple
    residuals: tuple


def to_tropical(d: ChebDataset) -> Problem:
    """Max-plus problem with M = 2K monomials whose minimum is the fit error."""
    terms = [Monomial(y, tuple(-x for x in row)) for row, y in zip(d.X, d.Y)]
    terms += [Monomial(-y, tuple(row)) for row, y in zip(d.X, d.Y)]
    # kept unmerged so that monomial i pairs with residual i; the solver merges
    prob = Problem(Polynomial(MAX_PLUS, d.arity, tuple(terms)), Box(d.lower, d.upper))
    prob.validate()
    return prob


def residuals(d: ChebDataset, theta) -> tuple:
    return tuple(abs(sum(x * t for x, t in zip(row, theta)) - y) for row, y in zip(d.X, d.Y))


def from_tropical(sol: Solution, d: ChebDataset) -> ChebResult:
    """Read the fit off a solution and check it in ordinary arithmetic."""
    if not sol.attained:
        raise CertificateError("Chebyshev problems always attain their minimum")
    theta = tuple(sol.point)
    res = residuals(d, theta)
    if max(res) != sol.mu:
        raise CertificateError(f"max residual {max(res)} differs from the tropical minimum {sol.mu}")
    if any(not (g <= t <= h) for t, g, h in zip(theta, d.lower, d.upper)):
        raise CertificateError("fitted parameters leave the box")
    return ChebResult(sol.mu, theta, tuple(sol.intervals), res)


def fit(d: ChebDataset, options: SolverOptions | None = None) -> tuple:
    """Solve the fit exactly; returns (ChebResult, Solution)."""
    options = options or SolverOptions()
    if options.mode != "exact":
        raise SemifieldError("Chebyshev fitting runs in exact mode")
    sol = solve(to_tropical(d), options)
    return from_tropical(sol, d), sol


def read_csv(text: str):
    """Parse observations: N columns of X then one column of Y per row.

    Blank lines and lines starting with '#' are skipped; a header row of
    non-numeric cells is skipped too.
    """
    X, Y = [], []
    width = None
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [c.strip() for c in row]
        if not cells or not any(cells) or cells[0].startswith("#"):
            continue
        try:
            nums = [parse_number(c) for c in cells]
        except SemifieldError:
            if not X:
                continue
            raise ValidationError(f"line {lineno}", f"malformed number in {row!r}") from None
        if len(nums) < 2:
            raise ValidationError(f"line {lineno}", "need at least one X column and a Y column")
        if width is None:
            width = len(nums)
        elif len(nums) != width:
            raise ValidationError(f"line {lineno}", f"expected {width} columns, got {len(nums)}")
        X.append(tuple(nums[:-1]))
        Y.append(nums[-1])
    if not X:
        raise ValidationError("csv", "no observations")
    return tuple(X), tuple(Y)

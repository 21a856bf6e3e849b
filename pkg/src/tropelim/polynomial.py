"""Tropical Puiseux polynomials, boxes and problem instances."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .semifield import ZERO, Semifield, SemifieldError, Value, get_semifield, parse_number


class ValidationError(ValueError):
    """Invalid problem data.  ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class Monomial(NamedTuple):
    coeff: Value
    exponents: tuple


@dataclass(frozen=True)
class Polynomial:
    """A finite ⊕-sum of monomials of fixed arity over one semifield.

    Construct through :meth:`make` to get the canonical form (no ZERO
    coefficients, distinct exponent vectors, lexicographic order).
    """

    semifield: Semifield
    arity: int
    monomials: tuple

    @classmethod
    def make(cls, semifield: Semifield, terms, arity: int | None = None) -> "Polynomial":
        terms = [Monomial(semifield.value(c), tuple(semifield.exponent(e) for e in exps))
                 for c, exps in terms]
        if arity is None:
            if not terms:
                raise ValidationError("monomials", "cannot infer arity of an empty polynomial")
            arity = len(terms[0].exponents)
        for i, t in enumerate(terms):
            if len(t.exponents) != arity:
                raise ValidationError(
                    f"monomials[{i}].exponents",
                    f"length {len(t.exponents)} does not match arity {arity}",
                )
        return canonicalize(cls(semifield, arity, tuple(terms)))

    def __len__(self) -> int:
        return len(self.monomials)

    @property
    def coeffs(self) -> list:
        return [m.coeff for m in self.monomials]

    @property
    def exponents(self) -> list:
        return [m.exponents for m in self.monomials]

    def is_canonical(self) -> bool:
        exps = self.exponents
        return all(m.coeff is not ZERO for m in self.monomials) and all(
            a < b for a, b in zip(exps, exps[1:])
        )

    def __call__(self, x: Sequence[Value]) -> Value:
        return evaluate(self, x)


def merge_terms(sf: Semifield, terms) -> dict:
    """Map exponent vector -> ⊕ of coefficients, skipping ZERO coefficients."""
    merged: dict = {}
    for c, e in terms:
        if c is ZERO:
            continue
        old = merged.get(e)
        merged[e] = c if old is None else sf.oplus(old, c)
    return merged


def canonicalize(p: Polynomial) -> Polynomial:
    merged = merge_terms(p.semifield, p.monomials)
    monomials = tuple(Monomial(merged[e], e) for e in sorted(merged))
    return Polynomial(p.semifield, p.arity, monomials)


def term_value(sf: Semifield, coeff: Value, exponents, x: Sequence[Value]) -> Value:
    v = coeff
    for p, xj in zip(exponents, x):
        if p:
            v = sf.otimes(v, sf.tpow(xj, p))
    return v


def evaluate(p: Polynomial, x: Sequence[Value]) -> Value:
    """f(x) = ⊕_i a_i ⊗ x_1^{p_i1} ⊗ ... ⊗ x_N^{p_iN}; ZERO for the empty sum."""
    if len(x) != p.arity:
        raise SemifieldError(f"point has {len(x)} coordinates, polynomial arity is {p.arity}")
    if any(xj is ZERO for xj in x):
        raise SemifieldError("polynomials are evaluated only at nonzero points")
    sf = p.semifield
    return sf.sum(term_value(sf, m.coeff, m.exponents, x) for m in p.monomials)


@dataclass(frozen=True)
class Box:
    lower: tuple
    upper: tuple

    def __len__(self) -> int:
        return len(self.upper)

    def contains(self, sf: Semifield, x: Sequence[Value]) -> bool:
        return all(
            xj is not ZERO and sf.leq(g, xj) and sf.leq(xj, h)
            for xj, g, h in zip(x, self.lower, self.upper)
        )

    def prefix(self, n: int) -> "Box":
        return Box(self.lower[:n], self.upper[:n])


@dataclass(frozen=True)
class Problem:
    polynomial: Polynomial
    box: Box

    @property
    def semifield(self) -> Semifield:
        return self.polynomial.semifield

    @property
    def arity(self) -> int:
        return self.polynomial.arity

    @classmethod
    def make(cls, semifield: Semifield, terms, lower, upper) -> "Problem":
        """Build and validate a problem from raw coefficient/exponent data."""
        raw = list(terms)
        for i, (c, _) in enumerate(raw):
            if semifield.value(c) is ZERO:
                raise ValidationError(f"monomials[{i}].coeff", "coefficient must be nonzero")
        poly = Polynomial.make(semifield, raw, arity=len(upper) if not raw else None)
        box = Box(tuple(semifield.value(g) for g in lower),
                  tuple(semifield.value(h) for h in upper))
        prob = cls(poly, box)
        prob.validate()
        return prob

    def validate(self) -> None:
        sf = self.semifield
        n = self.arity
        if n < 1:
            raise ValidationError("monomials", "arity must be at least 1")
        if len(self.box.lower) != n:
            raise ValidationError("box.lower", f"expected {n} bounds, got {len(self.box.lower)}")
        if len(self.box.upper) != n:
            raise ValidationError("box.upper", f"expected {n} bounds, got {len(self.box.upper)}")
        for j, (g, h) in enumerate(zip(self.box.lower, self.box.upper)):
            if h is ZERO:
                raise ValidationError(f"box.upper[{j}]", "upper bound must be nonzero")
            if not sf.leq(g, h):
                raise ValidationError(
                    f"box.lower[{j}]",
                    f"lower bound {sf.format(g)} exceeds upper bound {sf.format(h)}",
                )
        for i, m in enumerate(self.polynomial.monomials):
            if m.coeff is ZERO:
                raise ValidationError(f"monomials[{i}].coeff", "coefficient must be nonzero")

    def objective(self, x: Sequence[Value]) -> Value:
        return evaluate(self.polynomial, x)

    def as_float(self) -> "Problem":
        """The same instance over the float version of its semifield."""
        sf = self.semifield
        if not sf.exact:
            return self
        fsf = get_semifield(sf.name, "float")

        def conv(v):
            return ZERO if v is ZERO else float(v)

        monos = tuple(Monomial(conv(m.coeff), tuple(float(e) for e in m.exponents))
                      for m in self.polynomial.monomials)
        poly = Polynomial(fsf, self.arity, monos)
        box = Box(tuple(conv(g) for g in self.box.lower), tuple(conv(h) for h in self.box.upper))
        return Problem(poly, box)


# -- problem documents -----------------------------------------------------


def problem_to_dict(prob: Problem) -> dict:
    sf = prob.semifield

    def fmt(v):
        return "zero" if v is ZERO else sf.format(v)

    return {
        "semifield": sf.name,
        "mode": sf.mode,
        "monomials": [
            {"coeff": fmt(m.coeff), "exponents": [sf.format(e) for e in m.exponents]}
            for m in prob.polynomial.monomials
        ],
        "box": {
            "lower": [fmt(g) for g in prob.box.lower],
            "upper": [fmt(h) for h in prob.box.upper],
        },
    }


def serialize_problem(prob: Problem) -> bytes:
    return (json.dumps(problem_to_dict(prob), indent=2) + "\n").encode()


def _parse_field(sf: Semifield, text, path: str):
    if not isinstance(text, (str, int)):
        raise ValidationError(path, f"expected a rational string, got {text!r}")
    try:
        return sf.parse(str(text))
    except SemifieldError as exc:
        raise ValidationError(path, str(exc)) from None


def problem_from_dict(doc: dict) -> Problem:
    if not isinstance(doc, dict):
        raise ValidationError("$", "problem document must be a JSON object")
    name = doc.get("semifield", "max-plus")
    mode = doc.get("mode", "exact")
    try:
        sf = get_semifield(name, mode)
    except SemifieldError as exc:
        raise ValidationError("semifield", str(exc)) from None

    monos = doc.get("monomials")
    if not isinstance(monos, list):
        raise ValidationError("monomials", "expected a list")
    box = doc.get("box")
    if not isinstance(box, dict):
        raise ValidationError("box", "expected an object with lower and upper")
    lower, upper = box.get("lower"), box.get("upper")
    if not isinstance(lower, list):
        raise ValidationError("box.lower", "expected a list")
    if not isinstance(upper, list):
        raise ValidationError("box.upper", "expected a list")

    arity = None
    terms = []
    for i, m in enumerate(monos):
        if not isinstance(m, dict) or "coeff" not in m or "exponents" not in m:
            raise ValidationError(f"monomials[{i}]", "expected {coeff, exponents}")
        exps = m["exponents"]
        if not isinstance(exps, list):
            raise ValidationError(f"monomials[{i}].exponents", "expected a list")
        if arity is None:
            arity = len(exps)
        elif len(exps) != arity:
            raise ValidationError(
                f"monomials[{i}].exponents",
                f"length {len(exps)} does not match arity {arity}",
            )
        c = _parse_field(sf, m["coeff"], f"monomials[{i}].coeff")
        if c is ZERO:
            raise ValidationError(f"monomials[{i}].coeff", "coefficient must be nonzero")
        e = []
        for j, t in enumerate(exps):
            path = f"monomials[{i}].exponents[{j}]"
            if str(t).strip() in ("zero", "-inf", "+inf", "inf"):
                raise ValidationError(path, "exponents must be finite numbers")
            try:
                e.append(sf.exponent(_parse_number_field(t, sf.exact, path)))
            except SemifieldError as exc:
                raise ValidationError(path, str(exc)) from None
        terms.append((c, tuple(e)))
    if arity is None:
        arity = len(upper)
    for side, vals in (("lower", lower), ("upper", upper)):
        if len(vals) != arity:
            raise ValidationError(f"box.{side}", f"expected {arity} bounds, got {len(vals)}")

    g = tuple(_parse_field(sf, t, f"box.lower[{j}]") for j, t in enumerate(lower))
    h = tuple(_parse_field(sf, t, f"box.upper[{j}]") for j, t in enumerate(upper))
    poly = canonicalize(Polynomial(sf, arity, tuple(Monomial(c, e) for c, e in terms)))
    prob = Problem(poly, Box(g, h))
    prob.validate()
    return prob


def _parse_number_field(t, exact: bool, path: str):
    if not isinstance(t, (str, int)):
        raise ValidationError(path, f"expected a rational string, got {t!r}")
    return parse_number(str(t), exact=exact)


def parse_problem(text: bytes | str) -> Problem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("$", f"invalid JSON: {exc}") from None
    return problem_from_dict(doc)

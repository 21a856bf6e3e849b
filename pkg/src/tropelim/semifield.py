"""Linearly ordered idempotent semifields.

Carrier values are plain Python numbers (``Fraction`` in exact mode, ``float``
in float mode).  The zero element is the dedicated singleton :data:`ZERO`,
never an in-band number, so code can always tell "no value" from "a very small
value".  A :class:`Semifield` instance supplies the operations; values do not
carry their semifield around with them.

Exact mode exists only for max-plus and min-plus, where the rationals are
closed under every operation including rational powers.  Max-times and
min-times are float-only; map them onto the exact engines through the log
isomorphism ``x -> log(x)`` when exact results are needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union


class SemifieldError(ValueError):
    """Domain or usage error in semifield arithmetic."""


class _Zero:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ZERO"

    def __reduce__(self):
        return (_Zero, ())


ZERO = _Zero()

Value = Union[Fraction, float, _Zero]

SEMIFIELD_NAMES = ("max-plus", "min-plus", "max-times", "min-times")


@dataclass(frozen=True)
class Semifield:
    """One of the four example semifields, in exact or float mode.

    ``maximize`` says whether ⊕ takes the numeric maximum (max-plus,
    max-times) or minimum.  ``additive`` says whether ⊗ is ordinary addition
    (the "plus" semifields) or ordinary multiplication.
    """

    name: str
    exact: bool

    def __post_init__(self):
        if self.name not in SEMIFIELD_NAMES:
            raise SemifieldError(f"unknown semifield {self.name!r}")
        if self.exact and not self.additive:
            raise SemifieldError(
                f"{self.name} is only available in float mode "
                "(rational powers leave the rationals)"
            )

    @property
    def maximize(self) -> bool:
        return self.name.startswith("max")

    @property
    def additive(self) -> bool:
        return self.name.endswith("plus")

    @property
    def mode(self) -> str:
        return "exact" if self.exact else "float"

    @property
    def one(self) -> Fraction | float:
        if self.additive:
            return Fraction(0) if self.exact else 0.0
        return 1.0

    def __str__(self) -> str:
        return f"{self.name}/{self.mode}"

    # -- arithmetic -------------------------------------------------------

    def oplus(self, a: Value, b: Value) -> Value:
        if a is ZERO:
            return b
        if b is ZERO:
            return a
        if self.maximize:
            return a if a >= b else b
        return a if a <= b else b

    def sum(self, values) -> Value:
        """⊕ over an iterable; the empty sum is ZERO."""
        acc = ZERO
        for v in values:
            if v is ZERO:
                continue
            if acc is ZERO:
                acc = v
            elif self.maximize:
                if v > acc:
                    acc = v
            elif v < acc:
                acc = v
        return acc

    def otimes(self, a: Value, b: Value) -> Value:
        if a is ZERO or b is ZERO:
            return ZERO
        if self.additive:
            return a + b
        return a * b

    def div(self, a: Value, b: Value) -> Value:
        """a ⊘ b = a ⊗ b^{-1}."""
        return self.otimes(a, self.inv(b))

    def inv(self, a: Value) -> Value:
        if a is ZERO:
            raise SemifieldError("inverse of zero element")
        if self.additive:
            return -a
        return 1.0 / a

    def tpow(self, a: Value, r) -> Value:
        """Tropical power a^r for a rational (or, in float mode, real) r."""
        if a is ZERO:
            if r > 0:
                return ZERO
            raise SemifieldError("zero to non-positive power")
        if self.additive:
            return r * a
        return a ** float(r)

    def leq(self, a: Value, b: Value) -> bool:
        """Induced order: a ≤ b iff a ⊕ b = b."""
        if a is ZERO:
            return True
        if b is ZERO:
            return False
        return a <= b if self.maximize else a >= b

    def lt(self, a: Value, b: Value) -> bool:
        return self.leq(a, b) and a != b

    # -- conversion -------------------------------------------------------

    def value(self, x) -> Value:
        """Coerce a user-supplied number (or ZERO) into a carrier value."""
        if x is ZERO:
            return ZERO
        if self.exact:
            if isinstance(x, float):
                raise SemifieldError(f"float {x!r} given to an exact semifield")
            if not isinstance(x, Rational):
                raise SemifieldError(f"not a rational: {x!r}")
            return Fraction(x)
        x = float(x)
        if math.isnan(x) or math.isinf(x):
            raise SemifieldError(f"non-finite carrier value {x!r}")
        if not self.additive and x <= 0:
            if x == 0:
                return ZERO
            raise SemifieldError(f"{self.name} carrier values must be positive, got {x!r}")
        return x

    def exponent(self, r):
        """Coerce an exponent: exact rationals, or floats in float mode."""
        if self.exact:
            if isinstance(r, float) or not isinstance(r, Rational):
                raise SemifieldError(f"exponent must be rational, got {r!r}")
            return Fraction(r)
        return float(r)

    def zero_token(self) -> str:
        if self.name == "max-plus":
            return "-inf"
        if self.name == "max-times":
            return "zero"
        return "+inf"

    def format(self, v: Value) -> str:
        if v is ZERO:
            return self.zero_token()
        return format_number(v)

    def parse(self, text: str) -> Value:
        t = str(text).strip()
        if t == "zero" or t == self.zero_token():
            return ZERO
        return self.value(parse_number(t, exact=self.exact))

    def log_embed(self, v: Value) -> float:
        """Order-preserving map into max-plus floats (ZERO -> -inf).

        ⊗ becomes +, powers become scaling, and a ≤ b in this semifield iff
        log_embed(a) <= log_embed(b) numerically.
        """
        if v is ZERO:
            return -math.inf
        x = float(v) if self.additive else math.log(v)
        return x if self.maximize else -x


def format_number(x) -> str:
    """Rationals as "p/q" (or "p"), floats with 17 significant digits."""
    if isinstance(x, float):
        return format(x, ".17g")
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_number(text: str, exact: bool = True):
    """Parse "p/q", an integer or a decimal string.

    Decimals become rationals with a power-of-ten denominator in exact mode.
    """
    t = str(text).strip()
    try:
        if exact:
            return Fraction(t)
        if "/" in t:
            return float(Fraction(t))
        return float(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise SemifieldError(f"malformed number {text!r}") from exc


MAX_PLUS = Semifield("max-plus", exact=True)
MIN_PLUS = Semifield("min-plus", exact=True)


def get_semifield(name: str, mode: str = "exact") -> Semifield:
    if mode not in ("exact", "float"):
        raise SemifieldError(f"unknown mode {mode!r}")
    return Semifield(name, exact=(mode == "exact"))

"""Exact scalar types: rationals and polynomials in one formal variable ``d``.

``Rational`` is the standard library ``fractions.Fraction`` (always stored in
lowest terms with a positive denominator, arbitrary precision).  ``DeltaPoly``
is a dense univariate polynomial over ``Rational``; the variable is the formal
dimension parameter carried by the diagram rewriting engine.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


class NotDivisible(ArithmeticError):
    """Raised when a polynomial division that must be exact leaves a remainder."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(q) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` for integers)."""
    q = _as_fraction(q)
    return str(q)


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


class DeltaPoly:
    """Polynomial in the formal dimension ``d`` with rational coefficients.

    Coefficients are stored densely, lowest degree first, with no trailing
    zeros.  Degrees stay tiny here (the rewriting rules are at most quadratic
    in ``d``), so no sparse representation is needed.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------

    @classmethod
    def const(cls, c) -> "DeltaPoly":
        return cls([_as_fraction(c)])

    @classmethod
    def delta(cls) -> "DeltaPoly":
        return cls([0, 1])

    @classmethod
    def zero(cls) -> "DeltaPoly":
        return cls()

    @classmethod
    def one(cls) -> "DeltaPoly":
        return cls([1])

    # -- structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if isinstance(other, DeltaPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == DeltaPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # -- ring operations ----------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, DeltaPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return DeltaPoly.const(other)
        return None

    def __add__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        a, b = self.coeffs, p.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return DeltaPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return DeltaPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return self + (-p)

    def __rsub__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        return p + (-self)

    def __mul__(self, other):
        p = self._coerce(other)
        if p is None:
            return NotImplemented
        if not self.coeffs or not p.coeffs:
            return DeltaPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(p.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(p.coeffs):
                    out[i + j] += a * b
        return DeltaPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        acc = DeltaPoly.one()
        for _ in range(n):
            acc = acc * self
        return acc

    # -- evaluation and division ---------------------------------------

    def __call__(self, value) -> Fraction:
        """Evaluate at an exact rational point (Horner)."""
        value = _as_fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def divide_linear(self, root) -> "DeltaPoly":
        """Return q with self = (d - root) * q, exactly.

        Raises NotDivisible when root is not a root of self.
        """
        root = _as_fraction(root)
        if not self.coeffs:
            return DeltaPoly()
        # synthetic division from the top coefficient down
        out = [Fraction(0)] * (len(self.coeffs) - 1)
        carry = Fraction(0)
        for i in range(len(self.coeffs) - 1, 0, -1):
            carry = self.coeffs[i] + carry * root
            out[i - 1] = carry
        remainder = self.coeffs[0] + carry * root
        if remainder != 0:
            raise NotDivisible(f"{self!r} is not divisible by (d - {root})")
        return DeltaPoly(out)

    # -- serialization --------------------------------------------------

    def to_json(self) -> list:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "DeltaPoly":
        return cls([parse_rational(c) for c in data])

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "d" if i == 1 else f"d^{i}"
                if c == 1:
                    parts.append(var)
                elif c == -1:
                    parts.append(f"-{var}")
                else:
                    parts.append(f"{c}*{var}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def poly_eval(p: DeltaPoly, value) -> Fraction:
    """Functional form of DeltaPoly.__call__, exact evaluation."""
    return p(value)


def divide_linear(p: DeltaPoly, root) -> DeltaPoly:
    """Functional form of DeltaPoly.divide_linear."""
    return p.divide_linear(root)

"""Exact Laurent polynomials in one variable with integer coefficients."""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import DivisibilityError


class LaurentPolynomial:
    """Immutable map ``exponent -> coefficient`` with zero coefficients dropped."""

    __slots__ = ("_c", "var")

    def __init__(self, coefficients: Mapping[int, int] | None = None, var: str = "q"):
        self._c = {int(e): int(c) for e, c in (coefficients or {}).items() if c}
        self.var = var

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1, var: str = "q") -> "LaurentPolynomial":
        return cls({exponent: coefficient}, var)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]], var: str = "q") -> "LaurentPolynomial":
        acc: dict[int, int] = {}
        for e, c in terms:
            acc[e] = acc.get(e, 0) + c
        return cls(acc, var)

    @property
    def coefficients(self) -> dict[int, int]:
        return dict(self._c)

    def __getitem__(self, e: int) -> int:
        return self._c.get(e, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    @property
    def min_degree(self) -> int:
        return min(self._c)

    @property
    def max_degree(self) -> int:
        return max(self._c)

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self._c.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) != 1:
                raise DivisibilityError("only monomials have negative powers")
            (e, c), = self._c.items()
            if abs(c) != 1:
                raise DivisibilityError("monomial coefficient is not a unit")
            return LaurentPolynomial({e * n: c if n % 2 else 1}, self.var)
        result = LaurentPolynomial({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def divmod(self, divisor: "LaurentPolynomial") -> tuple["LaurentPolynomial", "LaurentPolynomial"]:
        """Long division from the top degree; the divisor's leading coefficient must be a unit."""
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = divisor.max_degree, divisor[divisor.max_degree]
        if abs(lead_c) != 1:
            raise DivisibilityError("leading coefficient of the divisor must be +-1")
        rem = dict(self._c)
        quot: dict[int, int] = {}
        low = divisor.min_degree
        span = lead_e - low
        while rem and max(rem) - min(rem) >= span:
            top = max(rem)
            c = rem[top] * lead_c
            shift = top - lead_e
            quot[shift] = quot.get(shift, 0) + c
            for e, dc in divisor._c.items():
                k = e + shift
                v = rem.get(k, 0) - c * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPolynomial(quot, self.var), LaurentPolynomial(rem, self.var)

    def exact_div(self, divisor: "LaurentPolynomial") -> "LaurentPolynomial":
        q, r = self.divmod(divisor)
        if r:
            raise DivisibilityError(f"{divisor} does not divide {self}")
        return q

    def substitute_power(self, k: int, sign: int = 1) -> "LaurentPolynomial":
        """Replace ``var**e`` by ``(sign * var**k)**e``."""
        return LaurentPolynomial({e * k: c * (sign ** (e % 2)) for e, c in self._c.items()}, self.var)

    def divide_exponents(self, k: int, var: str | None = None) -> "LaurentPolynomial":
        """Rewrite ``var**(k e)`` as ``new**e``; every exponent must be a multiple of ``k``."""
        if any(e % k for e in self._c):
            raise DivisibilityError(f"not every exponent is a multiple of {k}")
        return LaurentPolynomial({e // k: c for e, c in self._c.items()}, var or self.var)

    def mirror(self) -> "LaurentPolynomial":
        """``var -> 1/var``"""
        return LaurentPolynomial({-e: c for e, c in self._c.items()}, self.var)

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.terms()}

    @classmethod
    def from_json(cls, data: Mapping[str, int], var: str = "q") -> "LaurentPolynomial":
        return cls({int(e): int(c) for e, c in data.items()}, var)

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, c in sorted(self._c.items(), reverse=True):
            if e == 0:
                mono = str(abs(c))
            else:
                power = self.var if e == 1 else f"{self.var}^{e}"
                mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.to_json()!r}, var={self.var!r})"


def q_plus_q_inverse(var: str = "q") -> LaurentPolynomial:
    return LaurentPolynomial({1: 1, -1: 1}, var)

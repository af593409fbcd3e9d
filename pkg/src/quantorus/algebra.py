"""The finite-Fourier rotation algebra in its unitary basis.

Basis elements a(n, l) obey

    a(n1, l1) * a(n2, l2) = e^{i L n1 l2} a(n1+n2, l1+l2)
    a(n, l)^*            = e^{i L n l} a(-n, -l)

with L the rotation angle.  a(0, 0) is the unit and every a(n, l) is
unitary.  Elements are finite sparse sums with SymScalar coefficients.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import NotInvertibleError, NotUnitaryMonomialError, ZeroIndexError
from .scalars import GAUSS_ONE, PhaseExponent, SymScalar

Index = tuple[int, int]


def _add_term(acc: dict, key, val: SymScalar) -> None:
    cur = acc.get(key)
    merged = val if cur is None else cur + val
    if merged.is_zero():
        acc.pop(key, None)
    else:
        acc[key] = merged


class AlgebraElement:
    """Finite sparse element of the rotation algebra, keyed by (n, l)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Index, SymScalar] | None = None):
        clean: dict[Index, SymScalar] = {}
        for key, val in (terms or {}).items():
            val = SymScalar.of(val)
            if not val.is_zero():
                _add_term(clean, (int(key[0]), int(key[1])), val)
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "AlgebraElement":
        return AlgebraElement()

    @staticmethod
    def one() -> "AlgebraElement":
        return AlgebraElement({(0, 0): SymScalar.one()})

    @staticmethod
    def basis(n: int, l: int, coeff=1) -> "AlgebraElement":
        return AlgebraElement({(n, l): SymScalar.of(coeff)})

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        acc = dict(self.terms)
        for key, val in other.terms.items():
            _add_term(acc, key, val)
        out = AlgebraElement.__new__(AlgebraElement)
        out.terms = acc
        return out

    def __neg__(self) -> "AlgebraElement":
        out = AlgebraElement.__new__(AlgebraElement)
        out.terms = {k: -v for k, v in self.terms.items()}
        return out

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, s) -> "AlgebraElement":
        s = SymScalar.of(s)
        acc: dict[Index, SymScalar] = {}
        for key, val in self.terms.items():
            _add_term(acc, key, val * s)
        out = AlgebraElement.__new__(AlgebraElement)
        out.terms = acc
        return out

    # -- ring structure -----------------------------------------------------

    def __mul__(self, other) -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        acc: dict[Index, SymScalar] = {}
        for (n1, l1), c1 in self.terms.items():
            for (n2, l2), c2 in other.terms.items():
                coeff = c1 * c2
                if n1 * l2:
                    coeff = coeff * SymScalar.phase(PhaseExponent.of_lam(n1 * l2))
                _add_term(acc, (n1 + n2, l1 + l2), coeff)
        out = AlgebraElement.__new__(AlgebraElement)
        out.terms = acc
        return out

    def __rmul__(self, other) -> "AlgebraElement":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "AlgebraElement":
        if exponent < 0:
            return self.invert() ** (-exponent)
        out = AlgebraElement.one()
        for _ in range(exponent):
            out = out * self
        return out

    def star(self) -> "AlgebraElement":
        acc: dict[Index, SymScalar] = {}
        for (n, l), c in self.terms.items():
            coeff = c.conj() * SymScalar.phase(PhaseExponent.of_lam(n * l))
            _add_term(acc, (-n, -l), coeff)
        out = AlgebraElement.__new__(AlgebraElement)
        out.terms = acc
        return out

    # -- grading and units ----------------------------------------------------

    def degree_extrema(self) -> tuple[Index | None, Index | None]:
        """(max, min) degree in lexicographic order; (None, None) for 0."""
        if not self.terms:
            return (None, None)
        keys = self.terms.keys()
        return (max(keys), min(keys))

    def monomial_parts(self) -> tuple[Index, SymScalar]:
        if len(self.terms) != 1:
            raise NotInvertibleError(f"element has {len(self.terms)} terms")
        [(key, coeff)] = self.terms.items()
        return key, coeff

    def invert(self) -> "AlgebraElement":
        """Two-sided inverse of a monomial mu * a(p, q) with monomial mu."""
        (p, q), coeff = self.monomial_parts()
        try:
            inv_coeff = coeff.inv()
        except Exception as err:
            raise NotInvertibleError(str(err)) from err
        phase = SymScalar.phase(PhaseExponent.of_lam(p * q))
        return AlgebraElement({(-p, -q): inv_coeff * phase})

    def unit_phase_parts(self) -> tuple[PhaseExponent, Index]:
        """(phi, (p, q)) for a unit-phase monomial e^{i phi} a(p, q)."""
        try:
            key, coeff = self.monomial_parts()
        except NotInvertibleError as err:
            raise NotUnitaryMonomialError(str(err)) from err
        return coeff.unit_phase(), key

    def dth_root(self, d: int) -> "AlgebraElement | None":
        """Principal d-th root of a unit-phase monomial, or None.

        Powers follow a(p', q')^d = e^{i L p' q' d(d-1)/2} a(dp', dq'), so the
        root carries the compensating angle -L p q (d-1) / (2 d^2).
        """
        if d < 1:
            raise ValueError("root degree must be positive")
        phi, (p, q) = self.unit_phase_parts()
        if p % d or q % d:
            return None
        exp = phi.scale(Fraction(1, d)) + PhaseExponent.of_lam(Fraction(-p * q * (d - 1), 2 * d * d))
        return AlgebraElement({(p // d, q // d): SymScalar.phase(exp)})

    def root_order(self) -> int:
        """gcd(|p|, |q|) for a unit-phase monomial; its gcd-th root is rootless."""
        _, (p, q) = self.unit_phase_parts()
        if p == 0 and q == 0:
            raise ZeroIndexError("a(0, 0) multiples have roots of every order")
        return math.gcd(p, q)

    # -- numeric convolution cross-check ---------------------------------------

    def function_value(self, theta: float, k: int, lam: float | None = None,
                       alphas: Mapping[int, float] | None = None) -> complex:
        """Value of the represented function sum_n c_{n,k} e^{i n theta}."""
        total = 0j
        for (n, l), c in self.terms.items():
            if l == k:
                total += c.evaluate(lam, alphas) * cmath.exp(1j * n * theta)
        return total

    def convolve_numeric(self, other: "AlgebraElement", theta: float, k: int,
                         lam: float, alphas: Mapping[int, float] | None = None) -> complex:
        """Pointwise convolution (a*b)(theta,k) = sum_k' a(theta+L k', k-k') b(theta, k')."""
        total = 0j
        support = {l for (_, l) in other.terms}
        for kp in support:
            total += self.function_value(theta + lam * kp, k - kp, lam, alphas) * \
                other.function_value(theta, kp, lam, alphas)
        return total

    # -- misc -----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, hash(v)) for k, v in self.terms.items()))

    def support(self) -> list[Index]:
        return sorted(self.terms)

    def __iter__(self) -> Iterator[tuple[Index, SymScalar]]:
        return iter(sorted(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "AlgebraElement(0)"
        parts = [f"{coeff!r}*a{key}" for key, coeff in sorted(self.terms.items())]
        return " + ".join(parts)


A_UNIT = AlgebraElement.one()

"""Exact coefficient arithmetic: Gaussian rationals times unit phases.

A scalar is a finite sum ``sum_j (a_j + i b_j) * e^{i phi_j}`` where the
``a_j, b_j`` are rationals and each angle ``phi_j`` is a rational combination
of 2*pi, the rotation angle L (lambda), and formal symbols A1, A2, ...
Two scalars are equal exactly when their canonical term maps coincide; with
L/2pi irrational and the A-symbols generic this coincides with numeric
equality under every admissible assignment.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import MissingSymbolError, NonMonomialError, NotUnitaryMonomialError, ZeroScalarError

RationalLike = "int | Fraction"


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class GaussianRational:
    """A Gaussian rational a + b*i with exact components."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(_frac(value), Fraction(0))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return self + (-GaussianRational.of(other))

    def __mul__(self, other) -> "GaussianRational":
        other = GaussianRational.of(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inv(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroScalarError("division by zero Gaussian rational")
        return GaussianRational(self.re / norm, -self.im / norm)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"


GAUSS_ONE = GaussianRational(Fraction(1), Fraction(0))

# quarter turns of 2*pi realising the four Gaussian units as pure phases
_UNIT_QUARTERS = {
    (Fraction(1), Fraction(0)): Fraction(0),
    (Fraction(0), Fraction(1)): Fraction(1, 4),
    (Fraction(-1), Fraction(0)): Fraction(1, 2),
    (Fraction(0), Fraction(-1)): Fraction(3, 4),
}


@dataclass(frozen=True)
class PhaseExponent:
    """Formal angle tau*2pi + lam*L + sum_k alphas[k]*A_k with rational weights.

    The canonical representative has tau in [0, 1); lam and the A-symbol
    weights are never reduced here.
    """

    tau: Fraction = Fraction(0)
    lam: Fraction = Fraction(0)
    alphas: tuple[tuple[int, Fraction], ...] = ()

    @staticmethod
    def make(tau=0, lam=0, alphas: Mapping[int, "RationalLike"] | None = None) -> "PhaseExponent":
        items = tuple(sorted((int(k), _frac(v)) for k, v in (alphas or {}).items() if v != 0))
        return PhaseExponent(_frac(tau), _frac(lam), items)

    @staticmethod
    def of_lam(v) -> "PhaseExponent":
        return PhaseExponent.make(lam=v)

    @staticmethod
    def of_tau(v) -> "PhaseExponent":
        return PhaseExponent.make(tau=v)

    @staticmethod
    def of_alpha(k: int, v=1) -> "PhaseExponent":
        return PhaseExponent.make(alphas={k: v})

    def canonical(self) -> "PhaseExponent":
        """Reduce tau modulo 1, i.e. apply e^{2 pi i} = 1."""
        return PhaseExponent(self.tau % 1, self.lam, self.alphas)

    def alpha_map(self) -> dict[int, Fraction]:
        return dict(self.alphas)

    def is_zero(self) -> bool:
        return self.tau == 0 and self.lam == 0 and not self.alphas

    def __add__(self, other: "PhaseExponent") -> "PhaseExponent":
        acc = self.alpha_map()
        for k, v in other.alphas:
            acc[k] = acc.get(k, Fraction(0)) + v
        return PhaseExponent.make(self.tau + other.tau, self.lam + other.lam, acc)

    def __neg__(self) -> "PhaseExponent":
        return PhaseExponent(-self.tau, -self.lam, tuple((k, -v) for k, v in self.alphas))

    def __sub__(self, other: "PhaseExponent") -> "PhaseExponent":
        return self + (-other)

    def scale(self, r) -> "PhaseExponent":
        r = _frac(r)
        if r == 0:
            return PhaseExponent()
        return PhaseExponent(self.tau * r, self.lam * r, tuple((k, v * r) for k, v in self.alphas))

    def evaluate(self, lam: float | None = None, alphas: Mapping[int, float] | None = None) -> float:
        """Numeric angle with 2*pi bound to its value."""
        angle = float(self.tau) * 2.0 * math.pi
        if self.lam != 0:
            if lam is None:
                raise MissingSymbolError("no numeric value bound to L")
            angle += float(self.lam) * lam
        for k, v in self.alphas:
            if alphas is None or k not in alphas:
                raise MissingSymbolError(f"no numeric value bound to A{k}")
            angle += float(v) * alphas[k]
        return angle

    def __repr__(self) -> str:
        return f"PhaseExponent(tau={self.tau}, lam={self.lam}, alphas={dict(self.alphas)})"


class SymScalar:
    """Finite sum of Gaussian-rational multiples of unit phases.

    Stored as a mapping from canonical PhaseExponent to nonzero
    GaussianRational; the zero scalar is the empty mapping.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[PhaseExponent, GaussianRational] | None = None):
        clean: dict[PhaseExponent, GaussianRational] = {}
        for exp, coeff in (terms or {}).items():
            coeff = GaussianRational.of(coeff)
            if coeff.is_zero():
                continue
            exp = exp.canonical()
            if exp in clean:
                merged = clean[exp] + coeff
                if merged.is_zero():
                    del clean[exp]
                else:
                    clean[exp] = merged
            else:
                clean[exp] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "SymScalar":
        return SymScalar()

    @staticmethod
    def one() -> "SymScalar":
        return SymScalar({PhaseExponent(): GAUSS_ONE})

    @staticmethod
    def of(value) -> "SymScalar":
        if isinstance(value, SymScalar):
            return value
        return SymScalar({PhaseExponent(): GaussianRational.of(value)})

    @staticmethod
    def gauss(re, im=0) -> "SymScalar":
        return SymScalar({PhaseExponent(): GaussianRational(_frac(re), _frac(im))})

    @staticmethod
    def phase(exp: PhaseExponent, coeff=1) -> "SymScalar":
        return SymScalar({exp: GaussianRational.of(coeff)})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other) -> "SymScalar":
        other = SymScalar.of(other)
        acc = dict(self.terms)
        for exp, coeff in other.terms.items():
            cur = acc.get(exp)
            merged = coeff if cur is None else cur + coeff
            if merged.is_zero():
                acc.pop(exp, None)
            else:
                acc[exp] = merged
        out = SymScalar.__new__(SymScalar)
        out.terms = acc
        return out

    __radd__ = __add__

    def __neg__(self) -> "SymScalar":
        out = SymScalar.__new__(SymScalar)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other) -> "SymScalar":
        return self + (-SymScalar.of(other))

    def __rsub__(self, other) -> "SymScalar":
        return SymScalar.of(other) - self

    def __mul__(self, other) -> "SymScalar":
        other = SymScalar.of(other)
        acc: dict[PhaseExponent, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = (e1 + e2).canonical()
                coeff = c1 * c2
                cur = acc.get(exp)
                merged = coeff if cur is None else cur + coeff
                if merged.is_zero():
                    acc.pop(exp, None)
                else:
                    acc[exp] = merged
        out = SymScalar.__new__(SymScalar)
        out.terms = acc
        return out

    __rmul__ = __mul__

    def conj(self) -> "SymScalar":
        return SymScalar({-e: c.conj() for e, c in self.terms.items()})

    def monomial_parts(self) -> tuple[PhaseExponent, GaussianRational]:
        if not self.terms:
            raise ZeroScalarError("the zero scalar has no monomial form")
        if len(self.terms) != 1:
            raise NonMonomialError(f"scalar has {len(self.terms)} terms")
        [(exp, coeff)] = self.terms.items()
        return exp, coeff

    def inv(self) -> "SymScalar":
        exp, coeff = self.monomial_parts()
        return SymScalar({-exp: coeff.inv()})

    def unit_phase(self) -> PhaseExponent:
        """The angle phi with self = e^{i phi}, for unit-phase monomials.

        Gaussian units i, -1, -i fold into quarter turns of 2*pi.
        """
        try:
            exp, coeff = self.monomial_parts()
        except (ZeroScalarError, NonMonomialError) as err:
            raise NotUnitaryMonomialError(str(err)) from err
        quarter = _UNIT_QUARTERS.get((coeff.re, coeff.im))
        if quarter is None:
            raise NotUnitaryMonomialError(f"coefficient {coeff} is not a phase unit")
        return (exp + PhaseExponent.of_tau(quarter)).canonical()

    def evaluate(self, lam: float | None = None, alphas: Mapping[int, float] | None = None) -> complex:
        total = 0j
        for exp, coeff in self.terms.items():
            total += coeff.to_complex() * cmath.exp(1j * exp.evaluate(lam, alphas))
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = SymScalar.of(other)
        if not isinstance(other, SymScalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "SymScalar(0)"
        parts = [f"({c.re}+{c.im}i)e^[{e.tau}T+{e.lam}L+{dict(e.alphas)}]" for e, c in sorted(
            self.terms.items(), key=lambda t: (t[0].lam, t[0].tau, t[0].alphas))]
        return "SymScalar(" + " + ".join(parts) + ")"


SYM_ONE = SymScalar.one()
SYM_ZERO = SymScalar.zero()

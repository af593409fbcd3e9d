"""Cyclic right modules of the rotation algebra defined by a unit phase.

A module class is a triple (alpha, p, q) with (p, q) != (0, 0); the carrier
has orthonormal basis xi_n, n in Z, and the generators act by

    p != 0:  xi_n . a(1,0) = e^{(i/p)[alpha + L n + L q (p+1)/2]} xi_{n+q}
             xi_n . a(0,1) = xi_{n-p}
    p == 0:  xi_n . a(1,0) = xi_{n+q}
             xi_n . a(0,1) = e^{(i/q)[alpha + L n]} xi_n

General basis elements act through a(m,l) = e^{-i L m l} a(m,0) a(0,l).
For coprime (p, q) the module is simple and realises the quotient of the
algebra by the right ideal (u - 1)A, u = e^{-i alpha} a(p,q), with u acting
on xi_n by e^{i L n}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .algebra import AlgebraElement, _add_term
from .errors import NotCoprimeError, NotSimpleError
from .scalars import PhaseExponent, SymScalar


@dataclass(frozen=True)
class ModuleClass:
    """Descriptor (alpha, p, q) of a cyclic module."""

    alpha: PhaseExponent
    p: int
    q: int

    def __post_init__(self):
        if self.p == 0 and self.q == 0:
            raise ValueError("module class requires (p, q) != (0, 0)")

    def gcd(self) -> int:
        return math.gcd(self.p, self.q)

    def is_simple(self) -> bool:
        return self.gcd() == 1

    def canonical(self) -> "ModuleClass":
        """Isomorphism-class representative for simple classes.

        Sign-normalises (p, q) with alpha negated on a flip, then reduces
        alpha modulo integer multiples of L and of 2*pi.  For non-simple
        classes only the L-reduction is isomorphism-safe, so callers that
        decompose must pass the exact alpha, not the canonical one.
        """
        alpha, p, q = self.alpha, self.p, self.q
        if p < 0 or (p == 0 and q < 0):
            alpha, p, q = -alpha, -p, -q
        alpha = PhaseExponent(alpha.tau % 1, alpha.lam % 1, alpha.alphas)
        return ModuleClass(alpha, p, q)

    def unitary(self) -> AlgebraElement:
        """The defining unit e^{-i alpha} a(p, q)."""
        return AlgebraElement.basis(self.p, self.q, SymScalar.phase(-self.alpha))

    def __repr__(self) -> str:
        return f"ModuleClass({self.alpha!r}, p={self.p}, q={self.q})"


def basis_action(cls: ModuleClass, n: int, m: int, l: int) -> tuple[PhaseExponent, int]:
    """Phase and landing index of xi_n . a(m, l) on the given class."""
    phase = PhaseExponent.of_lam(-m * l) if m * l else PhaseExponent()
    k = n
    p, q, alpha = cls.p, cls.q, cls.alpha
    if p != 0:
        half = PhaseExponent.of_lam(Fraction(q * (p + 1), 2))
        step = 1 if m >= 0 else -1
        for _ in range(abs(m)):
            if step > 0:
                phase = phase + (alpha + PhaseExponent.of_lam(k) + half).scale(Fraction(1, p))
                k += q
            else:
                k -= q
                phase = phase - (alpha + PhaseExponent.of_lam(k) + half).scale(Fraction(1, p))
        k -= l * p
    else:
        k += m * q
        if l:
            phase = phase + (alpha.scale(l) + PhaseExponent.of_lam(l * k)).scale(Fraction(1, q))
    return phase, k


class ModuleVector:
    """Finite vector over the xi_n basis of a fixed module class."""

    __slots__ = ("cls", "coords")

    def __init__(self, cls: ModuleClass, coords: Mapping[int, SymScalar] | None = None):
        self.cls = cls
        clean: dict[int, SymScalar] = {}
        for n, c in (coords or {}).items():
            c = SymScalar.of(c)
            if not c.is_zero():
                _add_term(clean, int(n), c)
        self.coords = clean

    @staticmethod
    def basis(cls: ModuleClass, n: int, coeff=1) -> "ModuleVector":
        return ModuleVector(cls, {n: SymScalar.of(coeff)})

    def act(self, a: AlgebraElement) -> "ModuleVector":
        acc: dict[int, SymScalar] = {}
        for n, c in self.coords.items():
            for (m, l), s in a.terms.items():
                phase, k = basis_action(self.cls, n, m, l)
                _add_term(acc, k, c * s * SymScalar.phase(phase))
        out = ModuleVector.__new__(ModuleVector)
        out.cls = self.cls
        out.coords = acc
        return out

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        if other.cls != self.cls:
            raise ValueError("cannot add vectors of different module classes")
        acc = dict(self.coords)
        for n, c in other.coords.items():
            _add_term(acc, n, c)
        out = ModuleVector.__new__(ModuleVector)
        out.cls = self.cls
        out.coords = acc
        return out

    def __neg__(self) -> "ModuleVector":
        out = ModuleVector.__new__(ModuleVector)
        out.cls = self.cls
        out.coords = {n: -c for n, c in self.coords.items()}
        return out

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def scale(self, s) -> "ModuleVector":
        s = SymScalar.of(s)
        acc: dict[int, SymScalar] = {}
        for n, c in self.coords.items():
            _add_term(acc, n, c * s)
        out = ModuleVector.__new__(ModuleVector)
        out.cls = self.cls
        out.coords = acc
        return out

    def inner(self, other: "ModuleVector") -> SymScalar:
        """Formal inner product with the xi_n orthonormal."""
        total = SymScalar.zero()
        for n, c in self.coords.items():
            d = other.coords.get(n)
            if d is not None:
                total = total + c * d.conj()
        return total

    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.cls == other.cls and self.coords == other.coords

    def __repr__(self) -> str:
        return f"ModuleVector({self.cls!r}, {dict(sorted(self.coords.items()))!r})"


def module_act(v: ModuleVector, a: AlgebraElement) -> ModuleVector:
    return v.act(a)


def _case1_rescale(cls: ModuleClass, j: int, k: int) -> PhaseExponent:
    # (1/p) { -alpha j + L [ j k p - j (j + p) q / 2 ] }
    p, q = cls.p, cls.q
    lam_part = Fraction(j * k * p) - Fraction(j * (j + p) * q, 2)
    return (cls.alpha.scale(-j) + PhaseExponent.of_lam(lam_part)).scale(Fraction(1, p))


def quotient_coordinates(a: AlgebraElement, cls: ModuleClass) -> ModuleVector:
    """Coordinates of the class a + (u-1)A in the xi basis, coprime (p, q).

    The unnormalised vectors xi'_{jk} = xi . a(j,k) satisfy
    xi'_{j+p,k+q} = e^{i(alpha - L k p)} xi'_{jk}; rescaling by
    e^{(i/p){-alpha j + L [jkp - j(j+p)q/2]}} (p != 0) or e^{-i alpha k/q}
    (p == 0) yields representatives constant on (p, q)-translates, labelled
    by n = j q - k p.
    """
    if cls.gcd() != 1:
        raise NotCoprimeError(f"(p, q) = ({cls.p}, {cls.q}) is not coprime")
    acc: dict[int, SymScalar] = {}
    for (j, k), c in a.terms.items():
        n = j * cls.q - k * cls.p
        if cls.p != 0:
            rescale = _case1_rescale(cls, j, k)
        else:
            rescale = cls.alpha.scale(Fraction(-k, cls.q))
        _add_term(acc, n, c * SymScalar.phase(-rescale))
    return ModuleVector(cls, acc)


def is_simple(cls: ModuleClass) -> bool:
    return cls.is_simple()


def decompose(cls: ModuleClass) -> tuple[ModuleClass, ...]:
    """Split into gcd(|p|, |q|) simple canonical classes.

    The summands carry (alpha + L l)/d on indices (p/d, q/d), l = 0..d-1;
    the exact (unreduced) alpha of cls is used, since shifting alpha by
    2*pi changes a non-simple module's isomorphism type.
    """
    d = cls.gcd()
    if d <= 1:
        return (cls.canonical(),)
    out = []
    for l in range(d):
        alpha_l = (cls.alpha + PhaseExponent.of_lam(l)).scale(Fraction(1, d))
        out.append(ModuleClass(alpha_l, cls.p // d, cls.q // d).canonical())
    return tuple(out)


def is_isomorphic(c1: ModuleClass, c2: ModuleClass) -> bool:
    """Simple classes are isomorphic iff their canonical forms coincide."""
    if not c1.is_simple() or not c2.is_simple():
        raise NotSimpleError("isomorphism test requires simple classes")
    return c1.canonical() == c2.canonical()

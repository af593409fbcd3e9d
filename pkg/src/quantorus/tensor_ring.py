"""Tensor product of module classes and the ring of formal class sums.

The product of two cyclic module classes is computed two ways: a closed
form (gcd/lcm index arithmetic plus decomposition into simples) and a
brute-force truncation oracle that builds the relation quotient of the
coproduct construction explicitly and fingerprints the spectrum of the
claimed defining unit on interior orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import WindowTooSmallError
from .modules import ModuleClass, basis_action, decompose
from .scalars import PhaseExponent

ALPHA_ZERO = PhaseExponent()


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a x + b y = g = gcd(a, b), for a, b >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_x, x = x, old_x - quot * x
        old_y, y = y, old_y - quot * y
    return old_r, old_x, old_y


def bezout_pair(q1: int, q2: int) -> tuple[int, int]:
    """(s1, s2) with (s1 q2 - s2 q1) / gcd(q1, q2) = 1."""
    g, x, y = _egcd(q2, q1)
    assert g == math.gcd(q1, q2)
    return x, -y


class ClassSum:
    """Formal non-negative integer combination of canonical simple classes.

    The zero element is the empty mapping; multiplicities are >= 1.
    """

    __slots__ = ("classes",)

    def __init__(self, classes: dict[ModuleClass, int] | None = None):
        clean: dict[ModuleClass, int] = {}
        for cls, mult in (classes or {}).items():
            mult = int(mult)
            if mult == 0:
                continue
            if mult < 0:
                raise ValueError("multiplicities must be >= 1")
            if not cls.is_simple() or cls != cls.canonical():
                raise ValueError(f"class {cls!r} is not canonical simple")
            clean[cls] = clean.get(cls, 0) + mult
        self.classes = clean

    @staticmethod
    def zero() -> "ClassSum":
        return ClassSum()

    @staticmethod
    def single(cls: ModuleClass, mult: int = 1) -> "ClassSum":
        return ClassSum({cls.canonical(): mult})

    def __add__(self, other: "ClassSum") -> "ClassSum":
        acc = dict(self.classes)
        for cls, mult in other.classes.items():
            acc[cls] = acc.get(cls, 0) + mult
        return ClassSum(acc)

    def scale(self, n: int) -> "ClassSum":
        if n == 0:
            return ClassSum.zero()
        return ClassSum({cls: n * m for cls, m in self.classes.items()})

    def is_zero(self) -> bool:
        return not self.classes

    def items(self) -> Iterator[tuple[ModuleClass, int]]:
        return iter(sorted(self.classes.items(), key=lambda t: _class_sort_key(t[0])))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassSum):
            return NotImplemented
        return self.classes == other.classes

    def __hash__(self):
        return hash(frozenset(self.classes.items()))

    def __repr__(self) -> str:
        if not self.classes:
            return "ClassSum(0)"
        return "ClassSum(" + " + ".join(f"{m}*{c!r}" for c, m in self.items()) + ")"


def _class_sort_key(cls: ModuleClass):
    return (cls.p, cls.q, cls.alpha.tau, cls.alpha.lam, cls.alpha.alphas)


def ring_unit() -> ClassSum:
    return ClassSum.single(ModuleClass(ALPHA_ZERO, 1, 0))


def _closed_params(c1: ModuleClass, c2: ModuleClass) -> tuple[PhaseExponent, int, int, int]:
    """(alpha, p, q, multiplicity) of the product before decomposition.

    With some p nonzero: p = lcm(p1,p2), q = (p1 q2 + p2 q1)/gcd(p1,p2),
    alpha = (alpha1 p2 + alpha2 p1)/gcd(p1,p2), multiplicity gcd(p1,p2);
    the extra term L p (q1+q2-q)/2 is an integer multiple of L and drops.

    With p1 = p2 = 0 the product is nonzero exactly when
    alpha2 q1 - alpha1 q2 lies in L g Z + 2 pi g lcm(q1,q2) Z, g = gcd(q1,q2);
    then q = g and alpha = s1 alpha2 - s2 alpha1 for any valid Bezout pair.
    """
    if c1.p == 0 and c2.p == 0:
        g = math.gcd(c1.q, c2.q)
        lcm = math.lcm(c1.q, c2.q)
        diff = c2.alpha.scale(c1.q) - c1.alpha.scale(c2.q)
        ok = (not diff.alphas
              and (diff.lam / g).denominator == 1
              and (diff.tau / (g * lcm)).denominator == 1)
        s1, s2 = bezout_pair(c1.q, c2.q)
        alpha = c2.alpha.scale(s1) - c1.alpha.scale(s2)
        return alpha, 0, g, (1 if ok else 0)
    g = math.gcd(c1.p, c2.p)
    p = math.lcm(c1.p, c2.p)
    q = (c1.p * c2.q + c2.p * c1.q) // g
    alpha = (c1.alpha.scale(c2.p) + c2.alpha.scale(c1.p)).scale(Fraction(1, g))
    return alpha, p, q, g


def tensor_closed_form(c1: ModuleClass, c2: ModuleClass) -> ClassSum:
    """Product of two canonical classes, fully decomposed and canonicalised."""
    alpha, p, q, mult = _closed_params(c1, c2)
    if mult == 0:
        return ClassSum.zero()
    acc: dict[ModuleClass, int] = {}
    for summand in decompose(ModuleClass(alpha, p, q)):
        acc[summand] = acc.get(summand, 0) + mult
    return ClassSum(acc)


def ring_mul(x: ClassSum, y: ClassSum) -> ClassSum:
    """Bilinear extension of the class product; unit is the (0, 1, 0) class."""
    acc: dict[ModuleClass, int] = {}
    for ca, ma in x.classes.items():
        for cb, mb in y.classes.items():
            for cls, m in tensor_closed_form(ca, cb).classes.items():
                acc[cls] = acc.get(cls, 0) + ma * mb * m
    return ClassSum(acc)


# -- brute-force oracle ----------------------------------------------------------


@dataclass
class SpectralFingerprint:
    """Observed eigenphases of the claimed defining unit on interior orbits."""

    window: int
    probe_alpha: PhaseExponent
    probe_p: int
    probe_q: int
    counts: dict[PhaseExponent, int] = field(default_factory=dict)

    def sorted_counts(self) -> list[tuple[PhaseExponent, int]]:
        return sorted(self.counts.items(), key=lambda t: (t[0].lam, t[0].tau, t[0].alphas))


def _affine_action(cls: ModuleClass, m: int, j: int) -> tuple[PhaseExponent, PhaseExponent, int]:
    """(A, B, shift): xi_k . a(m,j) = e^{i (A + B k)} xi_{k+shift} on cls.

    The per-step phases are affine in the running index, so two probes pin
    the whole family; the third probe below guards the assumption.
    """
    a0, k0 = basis_action(cls, 0, m, j)
    a1, k1 = basis_action(cls, 1, m, j)
    a2, k2 = basis_action(cls, 2, m, j)
    grad = a1 - a0
    if a2 != (a0 + grad.scale(2)) or k1 - k0 != 1 or k2 - k0 != 2:
        raise AssertionError("basis action is not affine in the index")
    return a0, grad, k0


def _record(counts: dict[PhaseExponent, int], phase: PhaseExponent, mult: int = 1) -> None:
    counts[phase] = counts.get(phase, 0) + mult


def tensor_oracle(c1: ModuleClass, c2: ModuleClass, window: int) -> SpectralFingerprint:
    """Truncated relation quotient of the tensor construction.

    Generators xi'(k1, k2) for |k1|, |k2| <= window are cut down by the
    relation identifying the two routes of the level-one generator through
    the coproduct vector d(0,0,0); the claimed defining unit then acts on
    interior orbit representatives and its eigenphases are collected with
    multiplicity.  Orbits touched by the truncation boundary are skipped.
    """
    bound = max(abs(c1.p), abs(c2.p), abs(c1.q), abs(c2.q), 4)
    if window < bound:
        raise WindowTooSmallError(f"window {window} < required {bound}")
    alpha, p, q, _ = _closed_params(c1, c2)
    fp = SpectralFingerprint(window, alpha, p, q)
    if c1.p != 0 and c2.p != 0:
        _oracle_both_nonzero(c1, c2, window, fp)
    elif c1.p == 0 and c2.p == 0:
        _oracle_both_zero(c1, c2, window, fp)
    else:
        _oracle_one_zero(c1, c2, window, fp)
    return fp


def _oracle_both_nonzero(c1: ModuleClass, c2: ModuleClass, w: int, fp: SpectralFingerprint) -> None:
    p1, p2 = c1.p, c2.p
    g = math.gcd(p1, p2)
    # relation xi'(k1+p1, k2-p2) = xi'(k1, k2): orbits are (p1, -p2) lines
    fibers: dict[int, dict[tuple[int, int], int]] = {}
    for k1 in range(-w, w + 1):
        r1 = k1 % p1
        t = (k1 - r1) // p1
        for k2 in range(-w, w + 1):
            rep = (r1, k2 + t * p2)
            n = (p2 * k1 + p1 * k2) // g
            reps = fibers.setdefault(n, {})
            reps[rep] = reps.get(rep, 0) + 1
    a1, b1, sh1 = _affine_action(c1, fp.probe_p, 0)
    a2, b2, sh2 = _affine_action(c2, fp.probe_p, fp.probe_q)
    # the unit must return each generator to its own orbit
    if (sh1 % p1) or (sh2 != -(sh1 // p1) * p2):
        raise AssertionError("probe unit left the relation orbit")
    base = a1 + a2 - fp.probe_alpha
    for n in sorted(fibers):
        reps = fibers[n]
        if len(reps) != g or any(cnt < 2 for cnt in reps.values()):
            continue
        for (k1r, k2r) in reps:
            eig = (base + b1.scale(k1r) + b2.scale(k2r)).canonical()
            _record(fp.counts, eig)


def _oracle_one_zero(c1: ModuleClass, c2: ModuleClass, w: int, fp: SpectralFingerprint) -> None:
    nz, z = (c1, c2) if c1.p != 0 else (c2, c1)
    # relation identifies steps of size nz.p along the nonzero side, with a
    # diagonal phase from the zero side; fibers are full once each residue
    # line meets the window at least twice
    line_counts = [len(range(r, w + 1, nz.p)) + len(range(r - nz.p, -w - 1, -nz.p))
                   for r in range(nz.p)]
    if any(cnt < 2 for cnt in line_counts):
        return
    a0, b0, sh = _affine_action(z, 0, fp.probe_q)
    if sh != 0:
        raise AssertionError("probe unit is not diagonal on the zero side")
    for kz in range(-w, w + 1):
        eig = (a0 + b0.scale(kz) - fp.probe_alpha).canonical()
        _record(fp.counts, eig, nz.p)


def _oracle_both_zero(c1: ModuleClass, c2: ModuleClass, w: int, fp: SpectralFingerprint) -> None:
    # scalar constraint: (alpha1 + L k1)/q1 = (alpha2 + L k2)/q2 mod 2 pi
    a0, b0, sh = _affine_action(c1, 0, fp.probe_q)
    if sh != 0:
        raise AssertionError("probe unit is not diagonal")
    for k1 in range(-w, w + 1):
        lhs = (c1.alpha + PhaseExponent.of_lam(k1)).scale(Fraction(1, c1.q))
        for k2 in range(-w, w + 1):
            rhs = (c2.alpha + PhaseExponent.of_lam(k2)).scale(Fraction(1, c2.q))
            delta = (lhs - rhs).canonical()
            if delta.alphas or delta.lam != 0 or delta.tau != 0:
                continue
            eig = (a0 + b0.scale(k1) - fp.probe_alpha).canonical()
            _record(fp.counts, eig)


def _in_progression(phase: PhaseExponent, base: PhaseExponent, step: int) -> bool:
    delta = (phase - base).canonical()
    return (not delta.alphas and delta.tau == 0
            and delta.lam.denominator == 1 and delta.lam % step == 0)


def oracle_matches(cs: ClassSum, fp: SpectralFingerprint) -> bool:
    """Exact agreement of predicted and observed eigenphase multiplicities.

    Each simple class (beta, p', q') with probe (p, q) = d (p', q') predicts
    the progression d*beta - alpha_probe - L p'q'd(d-1)/2 + L d Z; every
    observed interior phase must be predicted with its exact multiplicity
    and every predicted class must be visible.
    """
    if not fp.counts:
        return cs.is_zero()
    if cs.is_zero():
        return False
    progs: list[tuple[PhaseExponent, int, int]] = []
    for cls, mult in cs.items():
        if cls.p == 0:
            if fp.probe_p != 0 or fp.probe_q % cls.q:
                return False
            d = fp.probe_q // cls.q
        else:
            if fp.probe_p % cls.p:
                return False
            d = fp.probe_p // cls.p
            if cls.q * d != fp.probe_q:
                return False
        if d < 1:
            return False
        corr = PhaseExponent.of_lam(Fraction(cls.p * cls.q * d * (d - 1), 2))
        base = (cls.alpha.scale(d) - fp.probe_alpha - corr).canonical()
        progs.append((base, d, mult))
    for phase, count in fp.counts.items():
        predicted = sum(m for base, d, m in progs if _in_progression(phase, base, d))
        if predicted != count:
            return False
    for base, d, _ in progs:
        if not any(_in_progression(phase, base, d) for phase in fp.counts):
            return False
    return True

"""Seeded verification suites for the bimodule axioms.

Each check samples basis data inside an index window and verifies an exact
symbolic identity; all actions are index-shift equivariant, so windowed
trials plus the separately tested equivariance cover the general statement.
Every check accepts a private hook replacing the operation under test, used
by the mutation fixtures to prove the check can fail.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .algebra import AlgebraElement
from .bimodules import (
    LEFT,
    RIGHT,
    DeltaVector,
    EpsilonVector,
    HomMatrix,
    SVector,
    TripleVector,
    antipode,
    coassoc_iso,
    counit_reduce,
    hom_act,
    pairing,
    reduce_triple,
    s_left_act,
    s_to_algebra,
    tensor,
    triple_left_act,
    triple_right_act,
)
from .scalars import PhaseExponent, SymScalar


@dataclass
class CheckReport:
    axiom: str
    trials: int
    window: int
    seed: int
    passed: bool
    counterexample: str | None = None

    def to_obj(self) -> dict:
        obj = {
            "axiom": self.axiom,
            "trials": self.trials,
            "window": self.window,
            "seed": self.seed,
            "passed": self.passed,
        }
        if self.counterexample is not None:
            obj["counterexample"] = self.counterexample
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True)


def _rng(seed: int) -> random.Random:
    return random.Random(seed)


def _rand_basis(rng: random.Random, w: int) -> AlgebraElement:
    return AlgebraElement.basis(rng.randint(-w, w), rng.randint(-w, w))


def check_h1(trials: int, window: int, seed: int, iso=None) -> CheckReport:
    """Coassociativity: the basis bijection between the two triple carriers
    intertwines the outer three-fold left action and the right action."""
    iso = iso or coassoc_iso
    rng = _rng(seed)
    for trial in range(trials):
        key = tuple(rng.randint(-window, window) for _ in range(4))
        t = TripleVector(LEFT, {key: SymScalar.one()})
        a = _rand_basis(rng, window)
        x3 = [(_rand_basis(rng, window), _rand_basis(rng, window), _rand_basis(rng, window))]
        lhs_r = iso(triple_right_act(t, a))
        rhs_r = triple_right_act(iso(t), a)
        if lhs_r != rhs_r:
            return CheckReport("h1", trials, window, seed, False,
                               f"trial {trial}: right action at {key} by {a!r}")
        lhs_l = iso(triple_left_act(x3, t))
        rhs_l = triple_left_act(x3, iso(t))
        if lhs_l != rhs_l:
            return CheckReport("h1", trials, window, seed, False,
                               f"trial {trial}: left action at {key} by {x3!r}")
    return CheckReport("h1", trials, window, seed, True)


def check_h2(trials: int, window: int, seed: int, reduce_fn=None) -> CheckReport:
    """Counit: both induced carriers collapse onto the algebra compatibly
    with the two-sided actions, and they agree on the unit class."""
    reduce_fn = reduce_fn or counit_reduce
    unit_left = reduce_fn([(EpsilonVector.basis(0), AlgebraElement.one(),
                            DeltaVector.basis(0, 0, 0))], LEFT)
    unit_right = reduce_fn([(AlgebraElement.one(), EpsilonVector.basis(0),
                             DeltaVector.basis(0, 0, 0))], RIGHT)
    if unit_left != AlgebraElement.one() or unit_right != AlgebraElement.one():
        return CheckReport("h2", trials, window, seed, False, "unit classes disagree")
    rng = _rng(seed)
    for trial in range(trials):
        w = window
        e = EpsilonVector.basis(rng.randint(-w, w))
        c = _rand_basis(rng, w)
        d = DeltaVector.basis(rng.randint(-w, w), rng.randint(-w, w), rng.randint(-w, w))
        a = _rand_basis(rng, w)
        x = _rand_basis(rng, w)
        side = rng.choice((LEFT, RIGHT))
        if side == LEFT:
            term, acted_left, acted_right = (e, c, d), (e, x * c, d), (e, c, d.act(a))
        else:
            term, acted_left, acted_right = (c, e, d), (x * c, e, d), (c, e, d.act(a))
        base = reduce_fn([term], side)
        if reduce_fn([acted_left], side) != x * base:
            return CheckReport("h2", trials, window, seed, False,
                               f"trial {trial}: left action mismatch on {side} side")
        if reduce_fn([acted_right], side) != base * a:
            return CheckReport("h2", trials, window, seed, False,
                               f"trial {trial}: right action mismatch on {side} side")
    return CheckReport("h2", trials, window, seed, True)


def check_h3_weak(trials: int, window: int, seed: int, pairing_fn=None) -> CheckReport:
    """Weak antipode: the pairing is tensorial in both slots and
    non-degenerate on finite supports."""
    pairing_fn = pairing_fn or pairing
    rng = _rng(seed)
    one = AlgebraElement.one()
    for trial in range(trials):
        w = window
        z = HomMatrix.basis(rng.randint(-w, w), rng.randint(-w, w))
        if rng.random() < 0.5:
            z = z + HomMatrix.basis(rng.randint(-w, w), rng.randint(-w, w),
                                    coeff=SymScalar.gauss(0, 1))
        s = SVector.basis(rng.randint(-w, w), rng.randint(-w, w))
        b = _rand_basis(rng, w)
        if pairing_fn(hom_act(z, tensor(b, one)), s) != pairing_fn(z, s_left_act(tensor(b, one), s)):
            return CheckReport("h3w", trials, window, seed, False,
                               f"trial {trial}: first-slot tensoriality fails for {b!r}")
        if pairing_fn(hom_act(z, tensor(one, b)), s) != pairing_fn(z, s_left_act(tensor(one, b), s)):
            return CheckReport("h3w", trials, window, seed, False,
                               f"trial {trial}: second-slot tensoriality fails for {b!r}")
        # non-degeneracy at finite support: a nonzero vector pairs nontrivially
        if not any(not pairing_fn(z, SVector.basis(n, l)).is_zero() for (l, n) in z.terms):
            return CheckReport("h3w", trials, window, seed, False,
                               f"trial {trial}: degenerate matrix {z!r}")
        if not any(not pairing_fn(HomMatrix.basis(l, n), s).is_zero() for (n, l) in s.terms):
            return CheckReport("h3w", trials, window, seed, False,
                               f"trial {trial}: degenerate vector {s!r}")
    return CheckReport("h3w", trials, window, seed, True)


def check_h4(window: int = 8, antipode_fn=None) -> CheckReport:
    """Freeness of the antipode carrier on the (0,0) generator, and recovery
    of the antipode map from the second-slot action."""
    antipode_fn = antipode_fn or antipode
    one = AlgebraElement.one()
    s00 = SVector.basis(0, 0)
    seen: set[tuple[int, int]] = set()
    trials = 0
    for m in range(-window, window + 1):
        for j in range(-window, window + 1):
            trials += 1
            a = AlgebraElement.basis(m, j)
            s = s_left_act(tensor(a, one), s00)
            if s != SVector.basis(m, j):
                return CheckReport("h4", trials, window, 0, False,
                                   f"(a({m},{j}) (x) 1) . s(0,0) != s({m},{j})")
            key_set = set(s_to_algebra(s).terms)
            if len(key_set) != 1:
                return CheckReport("h4", trials, window, 0, False, "free generator not cyclic")
            seen.update(key_set)
            # second-slot action recovers the antihomomorphism
            via_action = s_to_algebra(s_left_act(tensor(one, a), s00))
            if via_action != antipode_fn(a):
                return CheckReport("h4", trials, window, 0, False,
                                   f"antipode mismatch at a({m},{j})")
    if len(seen) != trials:
        return CheckReport("h4", trials, window, 0, False, "generator map is not injective")
    return CheckReport("h4", trials, window, 0, True)


def check_no_strong_antipode(support_radius: int, hom_action=None) -> CheckReport:
    """No nonzero finite-support matrix is fixed by the level-one action.

    The action sends z[l, n] to a multiple of z[l+1, n], so a fixed vector
    propagates upward forever; constraint propagation from the truncation
    boundary must therefore zero out every coordinate.  The dual-side
    eigenvector identity that motivates the statement is checked first.
    """
    hom_action = hom_action or hom_act
    r = support_radius
    one = AlgebraElement.one()
    a01 = AlgebraElement.basis(0, 1)
    # z(a(n,l)) = delta_{n,0} satisfies z . a(0,1) = z on a window
    for n in range(-r, r + 1):
        for l in range(-r, r + 1):
            prod = a01 * AlgebraElement.basis(n, l)
            value = sum((c for (nn, _), c in prod.terms.items() if nn == 0),
                        start=SymScalar.zero())
            expected = SymScalar.one() if n == 0 else SymScalar.zero()
            if value != expected:
                return CheckReport("noanti", (2 * r + 1) ** 2, r, 0, False,
                                   f"dual eigenvector identity fails at ({n},{l})")
    # fixed-point equations of z |-> z . (a(0,1) (x) 1) on the support box:
    # for every coordinate u, sum_v rows[u][v] z_v = z_u, with z = 0 off-box
    box = {(l, n) for l in range(-r, r + 1) for n in range(-r, r + 1)}
    rows: dict[tuple[int, int], dict[tuple[int, int], SymScalar]] = {}
    for v in box:
        l, n = v
        acted = hom_action(HomMatrix.basis(l, n), tensor(a01, one))
        for u, coeff in acted.terms.items():
            rows.setdefault(u, {})[v] = coeff
    zero: set[tuple[int, int]] = set()
    changed = True
    while changed:
        changed = False
        for u in box | set(rows):
            row = rows.get(u, {})
            lhs = {v for v in row if v in box and v not in zero}
            if u in box and u not in zero:
                if not lhs:
                    zero.add(u)
                    changed = True
                elif lhs == {u} and row[u] != SymScalar.one():
                    # (c - 1) z_u = 0 with c != 1 forces z_u = 0
                    zero.add(u)
                    changed = True
            else:
                if len(lhs) == 1:
                    zero.update(lhs)
                    changed = True
    free = box - zero
    if free:
        witness = sorted(free)[0]
        return CheckReport("noanti", (2 * r + 1) ** 2, r, 0, False,
                           f"nonzero fixed vector supported near z[{witness[0]}, {witness[1]}]")
    return CheckReport("noanti", (2 * r + 1) ** 2, r, 0, True)


def run_all(trials: int, window: int, seed: int) -> list[CheckReport]:
    return [
        check_h1(trials, window, seed),
        check_h2(trials, window, seed),
        check_h3_weak(trials, window, seed),
        check_h4(window=max(window, 8)),
        check_no_strong_antipode(max(window, 8)),
    ]


# canonical mutations used by the command-line fixture mode and the tests


def broken_iso(t: TripleVector) -> TripleVector:
    """Key bijection with two slots swapped the wrong way."""
    if t.side != LEFT:
        raise ValueError("broken_iso expects a left-associated vector")
    out = TripleVector.__new__(TripleVector)
    out.terms = {(n1, n2, n3, l): c for (n1, n2, n3, l), c in t.terms.items()}
    out.side = RIGHT
    return out


def broken_counit_reduce(raw, side):
    """Counit collapse with the phase factor dropped."""
    from .algebra import _add_term

    acc: dict = {}
    for item in raw:
        e, c, d = item if side == LEFT else (item[1], item[0], item[2])
        for l, s1 in e.terms.items():
            for (m, j), s2 in c.terms.items():
                for (n1, n2, lpp), s3 in d.terms.items():
                    key = (n2 + m, j - l - lpp) if side == LEFT else (n1 + m, j - l - lpp)
                    _add_term(acc, key, s1 * s2 * s3)
    out = AlgebraElement.__new__(AlgebraElement)
    out.terms = acc
    return out


def broken_pairing(z: HomMatrix, s: SVector) -> SymScalar:
    """Pairing without the cross phase."""
    total = SymScalar.zero()
    for (n, l), c in s.terms.items():
        zc = z.terms.get((l, n))
        if zc is not None:
            total = total + c * zc
    return total


def broken_antipode(a: AlgebraElement) -> AlgebraElement:
    """Index flip without the compensating phase."""
    return AlgebraElement({(-m, j): c for (m, j), c in a.terms.items()})


def broken_hom_act(z: HomMatrix, x) -> HomMatrix:
    """Drops the level-one shift, so fixed vectors exist."""
    scale = SymScalar.zero()
    for a, b in x:
        for _, s1 in a.terms.items():
            for _, s2 in b.terms.items():
                scale = scale + s1 * s2
    return z.scale(scale)


MUTATIONS = {
    "h1": lambda trials, window, seed: check_h1(trials, window, seed, iso=broken_iso),
    "h2": lambda trials, window, seed: check_h2(trials, window, seed, reduce_fn=broken_counit_reduce),
    "h3w": lambda trials, window, seed: check_h3_weak(trials, window, seed, pairing_fn=broken_pairing),
    "h4": lambda trials, window, seed: check_h4(window=max(window, 8), antipode_fn=broken_antipode),
    "noanti": lambda trials, window, seed: check_no_strong_antipode(max(window, 8), hom_action=broken_hom_act),
}

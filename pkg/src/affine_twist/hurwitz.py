"""Hurwitz action on reflection factorizations of the Coxeter transformation.

A :data:`RootTuple` ``(b_1, ..., b_mu)`` of real roots with
``r_{b_1} ... r_{b_mu} = c`` is moved around by the braid generators and
reduced modulo sign flips and powers of the twist. The number of orbit
classes reached from the simple-root tuple is compared against the closed
formula ``mu! a1^a1 a2^a2 a3^a3 / (a1! a2! a3! chi)``.
"""

from __future__ import annotations

import logging
import math
import struct
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import exactlin as el
from . import grs, weyl
from .grs import RootVec, SystemDescriptor

log = logging.getLogger(__name__)

RootTuple = tuple[RootVec, ...]
CanonicalKey = bytes

DEFAULT_STATE_CAP = 10**7


class NoTwistAnchor(ValueError):
    pass


class StateCapExceeded(RuntimeError):
    def __init__(self, partial: "OrbitCount"):
        super().__init__(
            f"state cap hit after {partial.e_count} classes "
            f"({partial.states_explored} expanded)"
        )
        self.partial = partial


class InvariantViolation(AssertionError):
    pass


class NonIntegral(ArithmeticError):
    pass


@dataclass(frozen=True)
class OrbitCount:
    e_count: int
    formula_value: int
    states_explored: int
    match: bool


def _reflect(g: el.IntMat, beta: RootVec, alpha: RootVec) -> RootVec:
    """``r_beta(alpha) = alpha - I(beta, alpha) beta``."""
    c = el.bilinear(beta, g, alpha)
    return el.vec_sub(alpha, el.vec_scale(c, beta))


def braid_move(sys: SystemDescriptor, t: RootTuple, i: int, direction: int) -> RootTuple:
    """Apply ``sigma_i`` (direction +1) or ``sigma_i^-1`` (direction -1).

    ``i`` is 1-based and swaps entries ``i-1, i`` (0-based):
    ``sigma_i: (a, b) -> (b, r_b(a))`` and ``sigma_i^-1: (a, b) -> (r_a(b), a)``.
    """
    if not 1 <= i <= len(t) - 1:
        raise IndexError(f"braid index {i} outside 1..{len(t) - 1}")
    g = grs.cartan_form(sys)
    a, b = t[i - 1], t[i]
    if direction == 1:
        pair = (b, _reflect(g, b, a))
    elif direction == -1:
        pair = (_reflect(g, a, b), a)
    else:
        raise ValueError("direction must be +1 or -1")
    return t[: i - 1] + pair + t[i + 1:]


def sign_move(sys: SystemDescriptor, t: RootTuple, i: int) -> RootTuple:
    """Negate entry ``i`` (0-based)."""
    if not 0 <= i < len(t):
        raise IndexError(f"sign index {i} outside 0..{len(t) - 1}")
    return t[:i] + (el.vec_neg(t[i]),) + t[i + 1:]


def twist_tuple(sys: SystemDescriptor, t: RootTuple, n: int = 1) -> RootTuple:
    return tuple(weyl.twist_power_apply(sys, n, v) for v in t)


def canonical_tuple(sys: SystemDescriptor, t: RootTuple) -> RootTuple:
    """Representative of ``t`` modulo sign flips and powers of the twist.

    The first entry pairing non-trivially with delta anchors the twist: its
    sign is fixed so that ``c = chi(delta, entry) > 0`` and the twist power is
    the one that brings its delta-coefficient into ``[0, c)``.
    """
    t = tuple(grs.positive_representative(sys, v) for v in t)
    for v in t:
        c = grs.chi_delta(sys, v)
        if c:
            break
    else:
        raise NoTwistAnchor("every entry pairs to zero with delta")
    if c < 0:
        v, c = el.vec_neg(v), -c
    n = v[0] // c  # t^n shifts the delta-coefficient by -n*c
    if n:
        t = twist_tuple(sys, t, n)
    return tuple(grs.positive_representative(sys, v) for v in t)


def encode(t: RootTuple) -> CanonicalKey:
    flat = [x for v in t for x in v]
    return struct.pack(f"<{len(flat)}q", *flat)


def decode(key: CanonicalKey, mu: int) -> RootTuple:
    flat = struct.unpack(f"<{len(key) // 8}q", key)
    return tuple(tuple(flat[k * mu:(k + 1) * mu]) for k in range(len(flat) // mu))


def canonicalize(sys: SystemDescriptor, t: RootTuple) -> CanonicalKey:
    return encode(canonical_tuple(sys, t))


def base_tuple(sys: SystemDescriptor) -> RootTuple:
    """The simple roots in vertex order; their reflections multiply to ``c``."""
    return tuple(grs.basis_vector(sys, v) for v in sys.vertex_order)


def reflection_product(sys: SystemDescriptor, t: RootTuple) -> weyl.LatticeMap:
    return weyl.product(sys, [weyl.reflection_matrix(sys, v) for v in t])


def tuple_violations(sys: SystemDescriptor, t: RootTuple) -> list[str]:
    """Names of the root-tuple invariants ``t`` breaks (empty when valid)."""
    out = []
    if len(t) != sys.mu:
        return ["length"]
    if not all(grs.is_real_root(sys, v) for v in t):
        return ["reality"]
    if not el.is_unimodular(el.transpose(t)):
        out.append("unimodularity")
    if reflection_product(sys, t) != weyl.coxeter_matrix(sys):
        out.append("product")
    return out


def formula_deg_ll(sys: SystemDescriptor) -> int:
    """``mu! a1^a1 a2^a2 a3^a3 / (a1! a2! a3! chi)`` in exact arithmetic."""
    a = sys.triple
    num = math.factorial(sys.mu) * math.prod(x**x for x in a)
    den = math.prod(math.factorial(x) for x in a)
    value = Fraction(num, den) / sys.chi
    if value.denominator != 1:
        raise NonIntegral(f"degree formula gives {value} for {sys}")
    return int(value)


def explore_orbit(
    sys: SystemDescriptor,
    limit: Optional[int] = DEFAULT_STATE_CAP,
    validate: bool = True,
    on_state: Optional[Callable[[RootTuple], None]] = None,
) -> tuple[dict[CanonicalKey, RootTuple], int]:
    """Breadth-first closure of the base tuple's class under braid moves.

    Returns the visited classes (insertion-ordered, key -> representative)
    and the number of classes expanded. Neighbours are generated for
    ``i = 1..mu-1`` ascending, ``+1`` before ``-1``. Raises
    :class:`StateCapExceeded` once more than ``limit`` classes are known.
    """
    start = canonical_tuple(sys, base_tuple(sys))
    visited: dict[CanonicalKey, RootTuple] = {encode(start): start}
    frontier = [start]
    expanded = 0
    head = 0
    while head < len(frontier):
        rep = frontier[head]
        head += 1
        if validate:
            bad = tuple_violations(sys, rep)
            if bad:
                raise InvariantViolation(f"{rep} violates {bad}")
        if on_state is not None:
            on_state(rep)
        expanded += 1
        for i in range(1, sys.mu):
            for d in (1, -1):
                nxt = canonical_tuple(sys, braid_move(sys, rep, i, d))
                key = encode(nxt)
                if key not in visited:
                    visited[key] = nxt
                    frontier.append(nxt)
                    if limit is not None and len(visited) > limit:
                        partial = OrbitCount(
                            len(visited), formula_deg_ll(sys), expanded, False
                        )
                        raise StateCapExceeded(partial)
        if expanded % 10000 == 0:
            log.info("%s: %d classes expanded, %d known", sys, expanded, len(visited))
    return visited, expanded


def enumerate_orbit(
    sys: SystemDescriptor, limit: Optional[int] = DEFAULT_STATE_CAP, validate: bool = True
) -> OrbitCount:
    visited, expanded = explore_orbit(sys, limit, validate)
    formula = formula_deg_ll(sys)
    return OrbitCount(len(visited), formula, expanded, len(visited) == formula)


def check_orbit_closure(
    sys: SystemDescriptor, visited: dict[CanonicalKey, RootTuple]
) -> list[tuple[CanonicalKey, int, int]]:
    """Braid moves from visited classes that leave the visited set."""
    escapes = []
    for key, rep in visited.items():
        for i in range(1, sys.mu):
            for d in (1, -1):
                if canonicalize(sys, braid_move(sys, rep, i, d)) not in visited:
                    escapes.append((key, i, d))
    return escapes


def random_orbit_mate(sys: SystemDescriptor, t: RootTuple, rng) -> RootTuple:
    """Another tuple in the sign-and-twist class of ``t``."""
    t = twist_tuple(sys, t, rng.randint(-5, 5))
    for k in range(len(t)):
        if rng.random() < 0.5:
            t = sign_move(sys, t, k)
    return t


def check_quotient_well_defined(
    sys: SystemDescriptor, tuples: Sequence[RootTuple], rng, pairs: int = 100
) -> list[tuple[RootTuple, RootTuple, int, int]]:
    """Spot-check that braid moves descend to the sign-and-twist quotient."""
    bad = []
    for _ in range(pairs):
        t = rng.choice(tuples)
        u = random_orbit_mate(sys, t, rng)
        assert canonicalize(sys, t) == canonicalize(sys, u)
        i = rng.randint(1, sys.mu - 1)
        d = rng.choice((1, -1))
        if canonicalize(sys, braid_move(sys, t, i, d)) != canonicalize(
            sys, braid_move(sys, u, i, d)
        ):
            bad.append((t, u, i, d))
    return bad

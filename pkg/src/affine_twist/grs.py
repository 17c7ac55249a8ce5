"""The generalized root system of affine ADE type attached to a triple ``A``.

Coordinates throughout are taken in the root basis ordered as
``1*, 1, (1,1), ..., (1,a1-1), (2,1), ..., (3,a3-1)``. The imaginary root
``delta`` is ``e_{1*} - e_1``, so ``alpha_{1*} = alpha_1 + delta`` holds by
construction.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from . import exactlin as el
from .exactlin import IntMat, IntVec, LinearConstraint

STAR = "1*"
ONE = "1"

# "1*", "1", or an arm vertex (i, j) with 1 <= i <= 3, 1 <= j <= a_i - 1.
VertexId = Union[str, tuple[int, int]]
RootVec = IntVec


class NotAffineAde(ValueError):
    pass


class NotARoot(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    pass


def vertex_label(v: VertexId) -> str:
    return v if isinstance(v, str) else f"({v[0]},{v[1]})"


@dataclass(frozen=True)
class SystemDescriptor:
    a1: int
    a2: int
    a3: int
    mu: int
    chi: Fraction
    ell: int
    vertex_order: tuple[VertexId, ...]

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.a1, self.a2, self.a3)

    def index(self, v: VertexId) -> int:
        try:
            return self.vertex_order.index(v)
        except ValueError:
            raise KeyError(f"no vertex {v!r} in type {self.triple}") from None

    def arm(self, i: int) -> tuple[tuple[int, int], ...]:
        """Vertices ``(i, 1), ..., (i, a_i - 1)``; empty when ``a_i = 1``."""
        return tuple((i, j) for j in range(1, self.triple[i - 1]))

    def __str__(self) -> str:
        return f"A=({self.a1},{self.a2},{self.a3})"


def build_system(a1: int, a2: int, a3: int) -> SystemDescriptor:
    """Validate ``A = (a1, a2, a3)`` and derive mu, chi, ell and the vertex order.

    >>> build_system(2, 3, 5).chi
    Fraction(1, 30)
    """
    triple = (a1, a2, a3)
    if any(not isinstance(a, int) or isinstance(a, bool) or a < 1 for a in triple):
        raise ValueError(f"entries of A must be positive integers, got {triple}")
    chi = Fraction(1, a1) + Fraction(1, a2) + Fraction(1, a3) - 1
    if chi <= 0:
        raise NotAffineAde(f"1/{a1} + 1/{a2} + 1/{a3} - 1 = {chi} is not > 0")
    order: list[VertexId] = [STAR, ONE]
    for i, a in enumerate(triple, start=1):
        order.extend((i, j) for j in range(1, a))
    return SystemDescriptor(
        a1=a1,
        a2=a2,
        a3=a3,
        mu=a1 + a2 + a3 - 1,
        chi=chi,
        ell=math.lcm(a1, a2, a3),
        vertex_order=tuple(order),
    )


# --------------------------------------------------------------------------
# vectors


def basis_vector(sys: SystemDescriptor, v: VertexId) -> RootVec:
    k = sys.index(v)
    return tuple(1 if i == k else 0 for i in range(sys.mu))


def delta(sys: SystemDescriptor) -> RootVec:
    return (1, -1) + (0,) * (sys.mu - 2)


def delta_coefficient(v: RootVec) -> int:
    return v[0]


def finite_part(v: RootVec) -> RootVec:
    """Image in ``L = L~ / rad``: substitute ``alpha_{1*} -> alpha_1``."""
    return (0, el.checked(v[0] + v[1])) + tuple(v[2:])


# --------------------------------------------------------------------------
# forms


@lru_cache(maxsize=None)
def cartan_form(sys: SystemDescriptor) -> IntMat:
    """Symmetric Cartan matrix of the affine root basis.

    Double-dashed edge ``1* = 1`` carries the value 2; ``1*`` and ``1`` both
    join the first vertex of each arm, and arms are simple chains.
    """
    n = sys.mu
    g = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    g[0][1] = g[1][0] = 2
    for i in (1, 2, 3):
        arm = sys.arm(i)
        for j, v in enumerate(arm):
            k = sys.index(v)
            neighbours = [0, 1] if j == 0 else [sys.index(arm[j - 1])]
            for h in neighbours:
                g[k][h] = g[h][k] = -1
    return el.mat(g)


@lru_cache(maxsize=None)
def euler_form_triangular(sys: SystemDescriptor) -> IntMat:
    """Upper unitriangular Euler form read off the Cartan matrix."""
    g = cartan_form(sys)
    n = sys.mu
    return el.mat(
        [[g[i][j] if i < j else (1 if i == j else 0) for j in range(n)] for i in range(n)]
    )


def euler_axiom_constraints(
    sys: SystemDescriptor, coxeter: IntMat | None = None
) -> list[LinearConstraint]:
    """Linear constraints ``X + X^T = I~`` and, given the Coxeter matrix,
    ``X c + X^T = 0`` on the unknown Euler matrix ``X``."""
    n = sys.mu
    g = cartan_form(sys)
    idx = lambda i, j: el.entry(i, j, n)  # noqa: E731
    out = []
    for i in range(n):
        for j in range(i, n):
            coeffs = {idx(i, j): 1}
            coeffs[idx(j, i)] = coeffs.get(idx(j, i), 0) + 1
            out.append(LinearConstraint(coeffs, g[i][j]))
    if coxeter is not None:
        for i in range(n):
            for j in range(n):
                coeffs: dict[int, int] = {}
                for k in range(n):
                    if coxeter[k][j]:
                        coeffs[idx(i, k)] = coeffs.get(idx(i, k), 0) + coxeter[k][j]
                coeffs[idx(j, i)] = coeffs.get(idx(j, i), 0) + 1
                out.append(LinearConstraint(coeffs, 0))
    return out


def euler_form_from_axioms(sys: SystemDescriptor) -> IntMat:
    """Solve the Euler-form axioms directly and check the answer is unique."""
    from .weyl import coxeter_matrix

    constraints = euler_axiom_constraints(sys, coxeter_matrix(sys).matrix)
    try:
        x = el.solve_bilinear_system(constraints, sys.mu)
    except (el.NoSolution, el.NonUnique) as exc:
        raise InternalInconsistency(f"Euler form for {sys} not unique: {exc}") from exc
    if x != euler_form_triangular(sys):
        raise InternalInconsistency(f"Euler form for {sys} differs from the triangular one")
    return x


def cartan_pairing(sys: SystemDescriptor, u: RootVec, v: RootVec) -> int:
    return el.bilinear(u, cartan_form(sys), v)


def euler_pairing(sys: SystemDescriptor, u: RootVec, v: RootVec) -> int:
    return el.bilinear(u, euler_form_triangular(sys), v)


@lru_cache(maxsize=None)
def _delta_row(sys: SystemDescriptor) -> IntVec:
    x = euler_form_triangular(sys)
    return el.mat_vec(el.transpose(x), delta(sys))


def chi_delta(sys: SystemDescriptor, v: RootVec) -> int:
    """``chi(delta, v)``; equals ``v[0] + v[1]`` for this Euler form."""
    return el.dot(_delta_row(sys), v)


# --------------------------------------------------------------------------
# roots


@lru_cache(maxsize=None)
def finite_real_roots(sys: SystemDescriptor) -> frozenset[RootVec]:
    """Real roots of the finite quotient system, closed under simple reflections.

    Vectors have ``coords[0] == 0``; the finite simple roots are ``e_v`` for
    ``v`` other than ``1*``.
    """
    g = cartan_form(sys)
    simple = [basis_vector(sys, v) for v in sys.vertex_order[1:]]
    simple_idx = list(range(1, sys.mu))
    seen = set(simple)
    queue = deque(simple)
    while queue:
        lam = queue.popleft()
        for k, alpha in zip(simple_idx, simple):
            # I(alpha_k, lam) is row k of the Cartan matrix dotted with lam
            c = sum(x * y for x, y in zip(g[k], lam))
            if c:
                img = tuple(x - c * a for x, a in zip(lam, alpha))
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
    return frozenset(seen)


def is_real_root(sys: SystemDescriptor, v: RootVec) -> bool:
    if len(v) != sys.mu:
        return False
    return finite_part(v) in finite_real_roots(sys)


def is_positive_root(sys: SystemDescriptor, v: RootVec) -> bool:
    """Positive iff the delta-coefficient is positive, or it is zero and the
    finite part is a non-negative combination of finite simple roots."""
    if not is_real_root(sys, v):
        raise NotARoot(f"{v} is not a real root of {sys}")
    n = v[0]
    if n != 0:
        return n > 0
    return all(x >= 0 for x in finite_part(v))


def positive_representative(sys: SystemDescriptor, v: RootVec) -> RootVec:
    return v if is_positive_root(sys, v) else el.vec_neg(v)

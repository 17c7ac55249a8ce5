"""Grothendieck-group shadow of the derived category of the octopus algebra.

Objects are represented only by their classes in ``K_0``, written in the
affine root basis. The quiver-side Euler matrix comes from the homological
identity ``chi(S_v, S_w) = [v = w] - #arrows(v -> w) + #relations(v -> w)``
(valid in global dimension <= 2) and is cross-checked against the
root-side Euler form.

Three arrow/relation conventions are available:

``canonical`` (default)
    each arm ``i`` is a path ``1 -> (i,1) -> ... -> (i,a_i-1) -> 1*``; an
    empty arm is a direct arrow ``1 -> 1*``; three arms with no direct arrow
    carry a single relation, and a relation that involves a direct arrow
    eliminates that arrow instead.
``first_vertex``
    arrows ``1 -> (i,1) -> 1*`` with the arms hanging off ``(i,1)`` and two
    relations from ``1`` to ``1*``.
``arm_end``
    as ``first_vertex`` but ``1*`` is entered from ``(i,a_i-1)``.

Only ``canonical`` agrees with the root-side Euler form; the other two are
kept so the disagreement can be demonstrated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from . import exactlin as el
from . import grs, hurwitz, weyl
from .exactlin import IntMat
from .grs import ONE, STAR, RootVec, SystemDescriptor, VertexId

Convention = Literal["canonical", "first_vertex", "arm_end"]
CONVENTIONS: tuple[Convention, ...] = ("canonical", "first_vertex", "arm_end")

ClassTuple = tuple[RootVec, ...]


@dataclass(frozen=True)
class QuiverPresentation:
    vertices: tuple[VertexId, ...]
    arrow_count: dict[tuple[VertexId, VertexId], int]
    relation_count: dict[tuple[VertexId, VertexId], int]
    convention: str = "canonical"

    def arrows(self, v: VertexId, w: VertexId) -> int:
        return self.arrow_count.get((v, w), 0)

    def relations(self, v: VertexId, w: VertexId) -> int:
        return self.relation_count.get((v, w), 0)


def simples_order(sys: SystemDescriptor) -> tuple[VertexId, ...]:
    """``S_1, S_(1,1), ..., S_(3,a3-1), S_1*``: the exceptional order of simples."""
    return sys.vertex_order[1:] + (STAR,)


def build_octopus_quiver(
    sys: SystemDescriptor, convention: Convention = "canonical"
) -> QuiverPresentation:
    arrows: dict[tuple[VertexId, VertexId], int] = {}
    relations: dict[tuple[VertexId, VertexId], int] = {}

    def add(v, w, k=1):
        arrows[(v, w)] = arrows.get((v, w), 0) + k

    for i in (1, 2, 3):
        arm = sys.arm(i)
        if not arm:
            if convention == "canonical":
                add(ONE, STAR)
            continue
        add(ONE, arm[0])
        for v, w in zip(arm, arm[1:]):
            add(v, w)
        add(arm[0] if convention == "first_vertex" else arm[-1], STAR)

    if convention == "canonical":
        direct = arrows.get((ONE, STAR), 0)
        if direct:
            # the relation is linear in a direct arrow: drop that arrow instead
            arrows[(ONE, STAR)] = direct - 1
            if not arrows[(ONE, STAR)]:
                del arrows[(ONE, STAR)]
        else:
            relations[(ONE, STAR)] = 1
    elif convention in ("first_vertex", "arm_end"):
        relations[(ONE, STAR)] = 2
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return QuiverPresentation(simples_order(sys), arrows, relations, convention)


def euler_matrix_from_quiver(q: QuiverPresentation) -> IntMat:
    """Euler matrix in the basis of simples, ordered as ``q.vertices``."""
    vs = q.vertices
    return el.mat(
        [
            [(1 if v == w else 0) - q.arrows(v, w) + q.relations(v, w) for w in vs]
            for v in vs
        ]
    )


def mutate_class(
    e: RootVec, f: RootVec, chi: IntMat, side: Literal["left", "right"]
) -> RootVec:
    """Classes of mutations: right ``[E] - chi(E,F)[F]``, left ``[F] - chi(E,F)[E]``."""
    c = el.bilinear(e, chi, f)
    if side == "right":
        return el.vec_sub(e, el.vec_scale(c, f))
    if side == "left":
        return el.vec_sub(f, el.vec_scale(c, e))
    raise ValueError("side must be 'left' or 'right'")


def mutate_tuple(t: ClassTuple, i: int, direction: int, chi: IntMat) -> ClassTuple:
    """Braid generator on classes via mutations (``i`` is 1-based)."""
    e, f = t[i - 1], t[i]
    if direction == 1:
        pair = (f, mutate_class(e, f, chi, "right"))
    elif direction == -1:
        pair = (mutate_class(e, f, chi, "left"), e)
    else:
        raise ValueError("direction must be +1 or -1")
    return t[: i - 1] + pair + t[i + 1:]


def simples_class_tuple(sys: SystemDescriptor) -> ClassTuple:
    """Classes of the simples, in :func:`simples_order`.

    The collection ``sigma_1^-1 ... sigma_{mu-1}^-1 (simples)`` has classes
    equal to the simple roots of the affine root basis, so the simples are
    recovered by applying ``sigma_1`` first, then ``sigma_2``, up to
    ``sigma_{mu-1}``.
    """
    t = hurwitz.base_tuple(sys)
    for i in range(1, sys.mu):
        t = hurwitz.braid_move(sys, t, i, 1)
    return t


def change_of_basis(sys: SystemDescriptor) -> IntMat:
    """Columns are the simples' classes in root-basis coordinates."""
    return el.transpose(simples_class_tuple(sys))


def base_changed(sys: SystemDescriptor, m: IntMat) -> IntMat:
    """``P^T m P`` for a bilinear form ``m`` given in the root basis."""
    p = change_of_basis(sys)
    return el.mat_mul(el.mat_mul(el.transpose(p), m), p)


def verify_quiver_euler(sys: SystemDescriptor, convention: Convention = "canonical") -> weyl.Report:
    rep = weyl.Report(f"quiver cross-check ({convention})")
    p = change_of_basis(sys)
    rep.add("simples classes are a Z-basis", el.is_unimodular(p))
    chi_s = base_changed(sys, grs.euler_form_triangular(sys))
    quiver = euler_matrix_from_quiver(build_octopus_quiver(sys, convention))
    diff = [
        (simples_order(sys)[i], simples_order(sys)[j], chi_s[i][j], quiver[i][j])
        for i in range(sys.mu)
        for j in range(sys.mu)
        if chi_s[i][j] != quiver[i][j]
    ]
    rep.add("P^T chi P = quiver Euler matrix", not diff, f"first mismatches {diff[:3]}" if diff else "")
    g_s = base_changed(sys, grs.cartan_form(sys))
    rep.add(
        "quiver Euler + transpose = Cartan in simples basis",
        el.mat_add(quiver, el.transpose(quiver)) == g_s,
    )
    c_s = el.mat_mul(el.mat_mul(el.mat_inverse_unimodular(p), weyl.coxeter_matrix(sys).matrix), p)
    serre = el.mat_neg(el.mat_mul(el.mat_inverse_unimodular(quiver), el.transpose(quiver)))
    rep.add("-E^-1 E^T = Coxeter in simples basis", serre == c_s)
    return rep


def spherical_twist_class(x: RootVec, s: RootVec, chi: IntMat) -> RootVec:
    """``[T_S(X)] = [X] - chi([S], [X]) [S]``."""
    return el.vec_sub(x, el.vec_scale(el.bilinear(s, chi, x), s))


def verify_spherical_class_identity(sys: SystemDescriptor) -> weyl.Report:
    rep = weyl.Report("spherical twist classes")
    chi = grs.euler_form_triangular(sys)
    t = weyl.twist_matrix(sys)
    d = grs.delta(sys)
    basis = hurwitz.base_tuple(sys) + (d,)
    for label, s in (("[S] = delta", d), ("[S] = -delta", el.vec_neg(d))):
        bad = [x for x in basis if spherical_twist_class(x, s, chi) != t.apply(x)]
        rep.add(f"{label}: [T_S X] = t([X])", not bad, str(bad) if bad else "")
    return rep

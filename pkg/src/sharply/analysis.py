"""Involution invariants of finite sharply 2-transitive groups.

J is the set of involutions. Every sharply 2-transitive group has one class
of involutions, either all with a unique fixed point or all fixed-point
free; the characteristic, the splitting test and the near-domain all come
from J and the products t.j.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from sharply.gf import is_prime
from sharply.nearfield import involutions_of, regular_involution_set
from sharply.perm import (
    GroupError,
    compose,
    conjugacy_class,
    conjugate,
    is_normal,
    is_sharply_n_transitive,
    subgroup_from_elements,
)

FIXED = "all-have-unique-fixed-point"
FREE = "none-have-fixed-points"


class AnalysisError(ValueError):
    pass


def _require_sharp2(G):
    if not is_sharply_n_transitive(G, 2):
        raise AnalysisError("group is not sharply 2-transitive")


def involutions(G):
    return involutions_of(G)


def least_involution(G):
    J = involutions_of(G)
    if not J:
        raise AnalysisError("group has no involutions")
    return min(J)


def fixed_point_mode(G):
    J = involutions_of(G)
    counts = {len(t.fixed_points()) for t in J}
    if counts == {1}:
        return FIXED
    if counts == {0}:
        return FREE
    raise AnalysisError(f"mixed fixed-point behaviour among involutions: {sorted(counts)}")


def check_single_class(G):
    _require_sharp2(G)
    J = involutions_of(G)
    return conjugacy_class(G, min(J)) == J


def fix_bijection_check(G):
    """t -> Fix(t) is a bijection J -> X, and each point stabilizer has a
    unique involution, central in that stabilizer."""
    _require_sharp2(G)
    if fixed_point_mode(G) == FREE:
        raise AnalysisError("involutions are fixed-point free (characteristic 2 case)")
    J = involutions_of(G)
    fix = {}
    for t in J:
        (x,) = t.fixed_points()
        fix.setdefault(x, []).append(t)
    if sorted(fix) != list(range(G.degree)) or any(len(v) != 1 for v in fix.values()):
        return False
    for x, (t,) in fix.items():
        stab = [g for g in G.elements if g[x] == x]
        if any(compose(g, t) != compose(t, g) for g in stab):
            return False
    return True


def j_squared(G, J=None):
    J = involutions_of(G) if J is None else J
    return frozenset(compose(a, b) for a in J for b in J)


def characteristic(G):
    """2 when involutions are fixed-point free, else the common prime order of J^2 - {1}."""
    _require_sharp2(G)
    if fixed_point_mode(G) == FREE:
        return 2
    orders = {g.order() for g in j_squared(G) if not g.is_identity()}
    if len(orders) != 1:
        raise AnalysisError(f"elements of J^2 - 1 have differing orders {sorted(orders)}")
    (p,) = orders
    if not is_prime(p):
        raise AnalysisError(f"J^2 - 1 has non-prime order {p}")
    return p


def is_regular_set(G, elements):
    """For every ordered pair (x, y) exactly one element takes x to y."""
    n = G.degree
    for x in range(n):
        images = [g[x] for g in elements]
        if sorted(images) != list(range(n)):
            return False
    return True


def neumann_split_test(G):
    """Split iff t.J is closed (t the least involution); returns (split, N)."""
    _require_sharp2(G)
    J = involutions_of(G)
    t = min(J)
    R = regular_involution_set(G, t, J)
    split = all(compose(a, b) in R for a in R for b in R)
    if not split:
        return False, None
    if R != j_squared(G, J):
        raise AnalysisError("t.J is a subgroup but differs from J^2")
    if not is_regular_set(G, R):
        raise AnalysisError("t.J is a subgroup but not regular")
    if any(compose(a, b) != compose(b, a) for a in R for b in R):
        raise AnalysisError("t.J is a subgroup but not abelian")
    if not is_normal(G, R):
        raise AnalysisError("t.J is a subgroup but not normal")
    return True, subgroup_from_elements(G, R, "N")


def j_squared_class_check(G):
    _require_sharp2(G)
    if fixed_point_mode(G) == FREE:
        raise AnalysisError(
            "characteristic 2: J^2 - 1 need not be one class; "
            "see the free-product witness (sharply freeprod)")
    rest = j_squared(G) - {G.identity}
    return conjugacy_class(G, min(rest)) == rest


@dataclass
class InvolutionReport:
    J: frozenset = field(repr=False)
    single_class: bool
    fixed_point_mode: str
    characteristic: int
    split: bool
    regular_normal: object = None
    degree: int = 0
    order: int = 0
    j_squared_single_class: bool | None = None

    def lines(self):
        N = self.regular_normal
        out = [
            ("degree", self.degree),
            ("order", self.order),
            ("involutions", len(self.J)),
            ("single_class", str(self.single_class).lower()),
            ("fixed_point_mode", self.fixed_point_mode),
            ("characteristic", self.characteristic),
            ("split", str(self.split).lower()),
            ("regular_normal_order", N.order if N is not None else "none"),
            ("regular_normal_abelian", str(N.is_abelian()).lower() if N is not None else "none"),
            ("j_squared_single_class",
             "n/a" if self.j_squared_single_class is None
             else str(self.j_squared_single_class).lower()),
        ]
        return [f"{k}: {v}" for k, v in out]

    def to_text(self):
        return "\n".join(self.lines()) + "\n"


def analyze(G):
    _require_sharp2(G)
    mode = fixed_point_mode(G)
    split, N = neumann_split_test(G)
    report = InvolutionReport(
        J=involutions_of(G),
        single_class=check_single_class(G),
        fixed_point_mode=mode,
        characteristic=characteristic(G),
        split=split,
        regular_normal=N,
        degree=G.degree,
        order=G.order,
        j_squared_single_class=None if mode == FREE else j_squared_class_check(G),
    )
    if report.split != (report.regular_normal is not None):
        raise AnalysisError("split flag disagrees with regular normal subgroup")
    if not report.split:
        raise AnalysisError("finite sharply 2-transitive group failed to split")
    if mode == FIXED and not fix_bijection_check(G):
        raise AnalysisError("t -> Fix(t) is not a bijection")
    return report


def automorphism_action_holds(G, N, x=0):
    """Conjugation by each g fixing x is multiplicative on N."""
    for g in G.elements:
        if g[x] != x:
            continue
        for a in N.elements:
            ag = conjugate(a, g)
            for b in N.elements:
                if conjugate(compose(a, b), g) != compose(ag, conjugate(b, g)):
                    return False
    return True


__all__ = [
    "AnalysisError",
    "FIXED",
    "FREE",
    "GroupError",
    "InvolutionReport",
    "analyze",
    "automorphism_action_holds",
    "characteristic",
    "check_single_class",
    "fix_bijection_check",
    "fixed_point_mode",
    "involutions",
    "is_regular_set",
    "j_squared",
    "j_squared_class_check",
    "neumann_split_test",
]

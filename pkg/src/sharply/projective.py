"""PGL(2, q) on the projective line and the Kerby functional equation.

Affine points are field indices 0..q-1 and infinity is index q.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from sharply.gf import GF, FieldError
from sharply.nearfield import NearFieldError, build_affine_group, build_field_nearfield
from sharply.perm import Permutation, generate_group, is_sharply_n_transitive, restrict, stabilizer

PGL_CAP = 16


class ProjectiveError(ValueError):
    pass


def normalize_point(F, u, v):
    """Unique representative: (x, 1) for affine x, (1, 0) for infinity."""
    if v != 0:
        return (F.mul(u, F.inv(v)), 1)
    if u == 0:
        raise ProjectiveError("(0:0) is not a projective point")
    return (1, 0)


def point_index(F, pt):
    u, v = normalize_point(F, *pt)
    return u if v == 1 else F.q


def index_point(F, i):
    return (i, 1) if i < F.q else (1, 0)


@dataclass(frozen=True)
class MoebiusMap:
    """x -> (ax + b)/(cx + d), scaled so the first nonzero entry is 1."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def make(cls, F, a, b, c, d):
        det = F.sub(F.mul(a, d), F.mul(b, c))
        if det == 0:
            raise ProjectiveError("singular matrix")
        lead = next(x for x in (a, b, c, d) if x != 0)
        s = F.inv(lead)
        return cls(F.mul(a, s), F.mul(b, s), F.mul(c, s), F.mul(d, s))


def apply_moebius(F, m, pt):
    """Homogeneous evaluation (u:v) -> (au+bv : cu+dv); infinity needs no special case."""
    u, v = pt
    return normalize_point(F, F.add(F.mul(m.a, u), F.mul(m.b, v)),
                           F.add(F.mul(m.c, u), F.mul(m.d, v)))


def moebius_permutation(F, m):
    return Permutation([point_index(F, apply_moebius(F, m, index_point(F, i)))
                        for i in range(F.q + 1)])


def all_moebius_maps(F):
    seen = set()
    for a, b, c, d in product(range(F.q), repeat=4):
        try:
            m = MoebiusMap.make(F, a, b, c, d)
        except ProjectiveError:
            continue
        seen.add(m)
    return seen


def build_pgl(q, cap=PGL_CAP):
    """PGL(2,q) as a permutation group of degree q+1, checked against all maps."""
    if q > cap:
        raise ProjectiveError(f"q={q} exceeds cap {cap}")
    try:
        F = GF(q)
    except FieldError as exc:
        raise ProjectiveError(str(exc)) from exc
    w = F.primitive_element()
    gens = [MoebiusMap.make(F, 1, 1, 0, 1),   # x+1
            MoebiusMap.make(F, w, 0, 0, 1),   # wx
            MoebiusMap.make(F, 0, 1, 1, 0)]   # 1/x
    G = generate_group([moebius_permutation(F, m) for m in gens],
                       cap=(q + 1) * q * (q - 1), label=f"PGL(2,{q})")
    maps = {moebius_permutation(F, m) for m in all_moebius_maps(F)}
    if G.elements != maps:
        raise ProjectiveError("generated group differs from the set of Moebius maps")
    if not is_sharply_n_transitive(G, 3):
        raise ProjectiveError("PGL(2,q) is not sharply 3-transitive")
    return G


def stabilizer_is_affine(q):
    """Stabilizer of infinity, restricted to the affine points, is AGL(1,q)."""
    G = build_pgl(q)
    H = restrict(stabilizer(G, (q,)), range(q))
    A = build_affine_group(build_field_nearfield(q))
    return H.elements == A.elements


# Kerby equation sigma(1 + sigma(x)) = 1 - sigma(1 + x)

INF = -1


def _sigma_ext(sigma, y, zero, convention):
    if y == INF:
        return zero
    if y == zero:
        return INF if convention == "projective" else zero
    return sigma[y]


def _plus(D, a, b):
    if a == INF or b == INF:
        return INF
    return D.add[a][b]


def _minus(D, a, y, side):
    """a - y as a + (-y), with -y the right or left loop inverse of y."""
    if y == INF:
        return INF
    return D.add[a][D.neg(y, side)]


def inversion_sigma(D):
    sigma = [D.zero] * D.order
    for x in D.nonzero():
        sigma[x] = next(y for y in D.nonzero() if D.mul[x][y] == D.one)
    return sigma


@dataclass(frozen=True)
class KerbyResult:
    ok: bool
    reason: str = ""
    witness: tuple = ()
    variants_differ: bool = False

    def __bool__(self):
        return self.ok


def kerby_sigma_check(D, sigma, convention="projective", side="right"):
    """sigma is an involutory automorphism of (D*, .) solving the equation.

    ``convention`` fixes how sigma treats 0: "projective" extends sigma to
    the projective line (sigma(0) = inf, sigma(inf) = 0, 1 + inf = inf);
    "zero" sets sigma(0) = 0. ``side`` picks the loop inverse used for
    subtraction; the result also records whether the other side disagrees.
    """
    z, e = D.zero, D.one
    nz = D.nonzero()
    sigma = list(sigma)
    if sigma[z] != z:
        return KerbyResult(False, "sigma(0) must be 0 in the table", (z,))
    for x in nz:
        if sigma[sigma[x]] != x:
            return KerbyResult(False, "not involutory", (x,))
    for x in nz:
        for y in nz:
            if sigma[D.mul[x][y]] != D.mul[sigma[x]][sigma[y]]:
                return KerbyResult(False, "not multiplicative", (x, y))

    def sides(x):
        lhs = _sigma_ext(sigma, _plus(D, e, _sigma_ext(sigma, x, z, convention)), z, convention)
        s = _sigma_ext(sigma, _plus(D, e, x), z, convention)
        return lhs, _minus(D, e, s, "right"), _minus(D, e, s, "left")

    other = "left" if side == "right" else "right"
    differ = False
    failure = None
    for x in nz:
        if x == e:
            continue
        lhs, r_right, r_left = sides(x)
        rhs = {"right": r_right, "left": r_left}
        if rhs[side] != rhs[other]:
            differ = True
        if failure is None and lhs != rhs[side]:
            failure = (x, lhs, rhs[side])
    if failure:
        return KerbyResult(False, "functional equation fails", failure, differ)
    return KerbyResult(True, "", (), differ)


def _mult_generators(D):
    nz = D.nonzero()
    gens = []
    span = {D.one}
    for g in nz:
        if g in span:
            continue
        gens.append(g)
        span = _span(D, gens)
        if len(span) == len(nz):
            break
    return gens


def _span(D, gens):
    span = {D.one}
    stack = [D.one]
    while stack:
        x = stack.pop()
        for g in gens:
            y = D.mul[x][g]
            if y not in span:
                span.add(y)
                stack.append(y)
    return span


def _elem_order(D, x):
    k, y = 1, x
    while y != D.one:
        y = D.mul[y][x]
        k += 1
    return k


def multiplicative_automorphisms(D):
    """All automorphisms of (D*, .), enumerated through generator images."""
    gens = _mult_generators(D)
    nz = D.nonzero()
    orders = {x: _elem_order(D, x) for x in nz}
    out = []
    for images in product(*[[y for y in nz if orders[y] == orders[g]] for g in gens]):
        hom = {D.one: D.one}
        stack = [D.one]
        ok = True
        while stack and ok:
            x = stack.pop()
            for g, gi in zip(gens, images):
                y, yi = D.mul[x][g], D.mul[hom[x]][gi]
                if y in hom:
                    if hom[y] != yi:
                        ok = False
                        break
                else:
                    hom[y] = yi
                    stack.append(y)
        if ok and len(hom) == len(nz) and len(set(hom.values())) == len(nz):
            sigma = [D.zero] * D.order
            for x, y in hom.items():
                sigma[x] = y
            out.append(sigma)
    return sorted(out)


def find_kerby_sigma(D, convention="projective", cap=PGL_CAP):
    if D.order > cap:
        raise NearFieldError(f"|D| = {D.order} exceeds cap {cap}")
    found = []
    for sigma in multiplicative_automorphisms(D):
        if all(sigma[sigma[x]] == x for x in D.nonzero()):
            if kerby_sigma_check(D, sigma, convention):
                found.append(sigma)
    return found


__all__ = [
    "INF",
    "KerbyResult",
    "MoebiusMap",
    "ProjectiveError",
    "apply_moebius",
    "build_pgl",
    "find_kerby_sigma",
    "index_point",
    "inversion_sigma",
    "kerby_sigma_check",
    "moebius_permutation",
    "multiplicative_automorphisms",
    "normalize_point",
    "point_index",
    "stabilizer_is_affine",
]

"""Near-fields and near-domains as finite double tables.

A near-structure carries an addition table, a multiplication table and two
distinguished indices ``zero`` and ``one``. This module builds fields and
Dickson-twisted near-fields, checks the axioms, turns a near-field into its
affine sharply 2-transitive group and back, and enumerates the regular
linear groups that give all near-fields of a small order.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from sharply import kernels
from sharply.gf import GF, FieldError, prime_power
from sharply.perm import (
    FiniteGroup,
    GroupError,
    Permutation,
    compose,
    conjugate,
    generate_group,
    generating_set,
    is_sharply_n_transitive,
)


class NearFieldError(ValueError):
    pass


@dataclass(frozen=True)
class NearStructure:
    order: int
    add: tuple
    mul: tuple
    zero: int = 0
    one: int = 1
    label: str = ""

    def __post_init__(self):
        n = self.order
        object.__setattr__(self, "add", tuple(tuple(r) for r in self.add))
        object.__setattr__(self, "mul", tuple(tuple(r) for r in self.mul))
        for name in ("add", "mul"):
            rows = getattr(self, name)
            if len(rows) != n or any(len(r) != n for r in rows):
                raise NearFieldError(f"{name} table is not {n}x{n}")
            if any(not 0 <= v < n for r in rows for v in r):
                raise NearFieldError(f"{name} table has entries outside 0..{n - 1}")
        if not (0 <= self.zero < n and 0 <= self.one < n) or self.zero == self.one:
            raise NearFieldError("zero and one must be distinct elements")

    def nonzero(self):
        return [a for a in range(self.order) if a != self.zero]

    def neg(self, a, side="right"):
        """Additive inverse: b with a+b = 0 (right) or b+a = 0 (left)."""
        for b in range(self.order):
            s = self.add[a][b] if side == "right" else self.add[b][a]
            if s == self.zero:
                return b
        raise NearFieldError(f"{a} has no {side} additive inverse")

    def is_add_commutative(self):
        return all(self.add[a][b] == self.add[b][a]
                   for a in range(self.order) for b in range(a))

    def is_mul_commutative(self):
        nz = self.nonzero()
        return all(self.mul[a][b] == self.mul[b][a] for a in nz for b in nz)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    axiom: str = ""
    witness: tuple = ()
    message: str = ""
    associative: bool | None = None

    def __bool__(self):
        return self.ok


def _flat(table):
    return [v for row in table for v in row]


def _fail(axiom, witness, message):
    return Verdict(False, axiom, tuple(witness), message)


def _check_multiplicative_group(S):
    n, z, e, mul = S.order, S.zero, S.one, S.mul
    nz = S.nonzero()
    for a in nz:
        for b in nz:
            if mul[a][b] == z:
                return _fail("multiplicative closure", (a, b),
                             f"{a}*{b} = 0 for nonzero factors")
    for a in nz:
        if mul[e][a] != a or mul[a][e] != a:
            return _fail("multiplicative identity", (a,), f"1 does not fix {a}")
    bad = kernels.assoc_failure(_flat(mul), n, z)
    if bad is not None:
        return _fail("multiplicative associativity", bad,
                     "(%d*%d)*%d != %d*(%d*%d)" % (bad + bad))
    for a in nz:
        if not any(mul[a][b] == e for b in nz):
            return _fail("multiplicative inverse", (a,), f"{a} has no inverse")
    return None


def _check_right_distributive(S):
    bad = kernels.right_dist_failure(_flat(S.add), _flat(S.mul), S.order, S.zero)
    if bad is not None:
        a, b, c = bad
        return _fail("right distributivity", bad, f"({a}+{b})*{c} != {a}*{c}+{b}*{c}")
    return None


def verify_near_field(S):
    """Check the three near-field axioms; report the first failing triple."""
    n, z, add = S.order, S.zero, S.add
    for a in range(n):
        if add[z][a] != a or add[a][z] != a:
            return _fail("additive identity", (a,), f"0 is not neutral for {a}")
    bad = kernels.assoc_failure(_flat(add), n)
    if bad is not None:
        return _fail("additive associativity", bad,
                     "(%d+%d)+%d != %d+(%d+%d)" % (bad + bad))
    for a in range(n):
        if z not in add[a]:
            return _fail("additive inverse", (a,), f"{a} has no additive inverse")
    failure = _check_multiplicative_group(S)
    if failure is None:
        failure = _check_right_distributive(S)
    if failure is not None:
        return failure
    return Verdict(True, message="near-field", associative=True)


def verify_near_domain(S):
    """Loop addition, multiplicative group, right distributivity.

    The verdict's ``associative`` flag says whether the addition is a group,
    i.e. whether the near-domain is a near-field.
    """
    n, z, add = S.order, S.zero, S.add
    for a in range(n):
        if add[z][a] != a or add[a][z] != a:
            return _fail("loop identity", (a,), f"0 is not neutral for {a}")
    full = set(range(n))
    for a in range(n):
        if set(add[a]) != full:
            return _fail("loop division", (a,), f"left translation by {a} is not bijective")
        if {add[b][a] for b in range(n)} != full:
            return _fail("loop division", (a,), f"right translation by {a} is not bijective")
    failure = _check_multiplicative_group(S)
    if failure is None:
        failure = _check_right_distributive(S)
    if failure is not None:
        return failure
    assoc = kernels.assoc_failure(_flat(add), n) is None
    return Verdict(True, message="near-field" if assoc else "near-domain",
                   associative=assoc)


FIELD_CAP = 64
DICKSON_CAP = 49


def build_field_nearfield(q, cap=FIELD_CAP):
    if q > cap:
        raise NearFieldError(f"q={q} exceeds cap {cap}")
    try:
        F = GF(q)
    except FieldError as exc:
        raise NearFieldError(str(exc)) from exc
    return NearStructure(q, F.add_table, F.mul_table, 0, 1, f"GF({q})")


def dickson_table(F):
    """a.b = a*b when b is a square, a^p * b otherwise."""
    q = F.q
    return [[F.mul(a, b) if F.is_square(b) else F.mul(F.frobenius(a), b)
             for b in range(q)] for a in range(q)]


def build_dickson_nearfield(q, cap=DICKSON_CAP):
    try:
        p, k = prime_power(q)
    except FieldError as exc:
        raise NearFieldError(str(exc)) from exc
    if k != 2 or p == 2:
        raise NearFieldError(f"Dickson twist needs q = p^2 with p odd, got {q}")
    if q > cap:
        raise NearFieldError(f"q={q} exceeds cap {cap}")
    F = GF(q)
    S = NearStructure(q, F.add_table, dickson_table(F), 0, 1, f"Dickson({q})")
    verdict = verify_near_field(S)
    if not verdict:
        raise NearFieldError(
            f"Dickson({q}) fails {verdict.axiom} at {verdict.witness}: {verdict.message}")
    return S


def build_affine_group(S):
    """All maps x -> x.a + b (a != 0), as a sharply 2-transitive group.

    Multiplying by ``a`` on the right is what makes these maps compose,
    because only right distributivity is available.
    """
    verdict = verify_near_field(S)
    if not verdict:
        raise NearFieldError(f"not a near-field: {verdict.axiom} {verdict.witness}")
    n = S.order
    maps = {Permutation._trusted([S.add[S.mul[x][a]][b] for x in range(n)])
            for a in S.nonzero() for b in range(n)}
    if len(maps) != n * (n - 1):
        raise NearFieldError("affine maps are not pairwise distinct")
    G = generate_group(generating_set(maps), cap=n * (n - 1),
                       label=f"AGL(1,{S.label or n})")
    if G.elements != maps:
        raise NearFieldError("affine maps are not closed under composition")
    if not is_sharply_n_transitive(G, 2):
        raise NearFieldError("affine group is not sharply 2-transitive")
    return G


# extraction of the near-domain of a sharply 2-transitive group

VARIANTS = (("rho_b", "g_a"), ("rho_b", "g_b"), ("rho_a", "g_a"), ("rho_a", "g_b"))
CANONICAL = ("rho_b", "g_b")


def regular_involution_set(G, t, J):
    """t.J, together with t itself when involutions are fixed-point free.

    For finite groups of characteristic 2 the set t.J misses exactly the one
    element that moves a point to its t-image; t.(J u {1}) is the regular set.
    """
    fpf = all(not j.fixed_points() for j in J)
    members = {compose(t, j) for j in J}
    if fpf:
        members.add(t)
    return frozenset(members)


def involutions_of(G):
    return frozenset(g for g in G.elements
                     if not g.is_identity() and compose(g, g).is_identity())


def extract_near_domain(G, zero=0, one=1, variant=CANONICAL):
    """Coordinatize a sharply 2-transitive group.

    With t the involution swapping zero and one, rho_b the element of the
    regular set t.J taking zero to b, and g_a the element fixing zero with
    one -> a, the canonical orientation is a+b := a^rho_b and a.b := a^g_b.
    """
    if not is_sharply_n_transitive(G, 2):
        raise NearFieldError("group is not sharply 2-transitive")
    if zero == one:
        raise NearFieldError("zero and one must differ")
    n = G.degree
    t = next(g for g in G.elements if g[zero] == one and g[one] == zero)
    R = regular_involution_set(G, t, involutions_of(G))
    rho = {}
    for r in R:
        if r[zero] in rho:
            raise NearFieldError("t.J is not regular")
        rho[r[zero]] = r
    if len(rho) != n:
        raise NearFieldError("t.J is not regular")
    g = {h[one]: h for h in G.elements if h[zero] == zero}
    add_rule, mul_rule = variant
    if add_rule == "rho_b":
        add = [[rho[b][a] for b in range(n)] for a in range(n)]
    else:
        add = [[rho[a][b] for b in range(n)] for a in range(n)]
    mul = [[zero] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a != zero and b != zero:
                mul[a][b] = g[b][a] if mul_rule == "g_b" else g[a][b]
    D = NearStructure(n, add, mul, zero, one, f"D({G.label})" if G.label else "")
    verdict = verify_near_domain(D)
    if not verdict:
        raise NearFieldError(
            f"orientation {variant} fails {verdict.axiom} at {verdict.witness}")
    return D


def select_orientation(oracles):
    """First variant that recovers every oracle near-field up to isomorphism.

    ``oracles`` is a sequence of near-fields S; each is checked through
    extract_near_domain(build_affine_group(S)).
    """
    groups = [(S, build_affine_group(S)) for S in oracles]
    for variant in VARIANTS:
        ok = True
        for S, G in groups:
            try:
                D = extract_near_domain(G, 0, 1, variant)
            except NearFieldError:
                ok = False
                break
            if find_isomorphism(S, D) is None:
                ok = False
                break
        if ok:
            return variant
    return None


# isomorphism of double tables

def find_isomorphism(S, T):
    """A bijection preserving zero, one, + and . (as a list), or None."""
    if S.order != T.order:
        return None
    n = S.order
    if sorted(_profile(S)) != sorted(_profile(T)):
        return None

    def extend(phi, used, pending):
        while pending:
            a = pending.pop()
            for b in list(phi):
                for x, y in ((a, b), (b, a)):
                    fx, fy = phi[x], phi[y]
                    for ops, opt in ((S.add, T.add), (S.mul, T.mul)):
                        c, fc = ops[x][y], opt[fx][fy]
                        if c in phi:
                            if phi[c] != fc:
                                return False
                        elif fc in used:
                            return False
                        else:
                            phi[c] = fc
                            used.add(fc)
                            pending.append(c)
        return True

    def search(phi, used):
        if len(phi) == n:
            return phi
        a = min(x for x in range(n) if x not in phi)
        for fa in range(n):
            if fa in used:
                continue
            phi2, used2 = dict(phi), set(used)
            phi2[a] = fa
            used2.add(fa)
            if extend(phi2, used2, [a]):
                found = search(phi2, used2)
                if found:
                    return found
        return None

    phi = {S.zero: T.zero, S.one: T.one}
    used = {T.zero, T.one}
    if not extend(phi, used, [S.zero, S.one]):
        return None
    found = search(phi, used)
    if found is None:
        return None
    return [found[a] for a in range(n)]


def _profile(S):
    # additive and multiplicative orders: cheap isomorphism invariants
    out = []
    for a in range(S.order):
        k, x = 1, a
        while x != S.zero and k <= S.order:
            x = S.add[x][a]
            k += 1
        m = 0
        if a != S.zero:
            m, y = 1, a
            while y != S.one and m <= S.order:
                y = S.mul[y][a]
                m += 1
        out.append((k, m))
    return out


def is_isomorphic(S, T):
    return find_isomorphism(S, T) is not None


# regular linear groups

LINEAR_CAP = 16


def _vec(x, p, k):
    out = []
    for _ in range(k):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _idx(v, p):
    return sum(c * p ** i for i, c in enumerate(v))


def _matrix_perm(M, p, k):
    """Permutation of vector indices induced by v -> vM (row vectors)."""
    images = []
    for x in range(p ** k):
        v = _vec(x, p, k)
        images.append(_idx([sum(v[i] * M[i][j] for i in range(k)) % p
                            for j in range(k)], p))
    return Permutation(images)


def general_linear_group(p, k, cap=LINEAR_CAP):
    q = p ** k
    if q > cap:
        raise NearFieldError(f"p^k = {q} exceeds cap {cap}")
    omega = GF(p).primitive_element()
    ident = [[int(i == j) for j in range(k)] for i in range(k)]
    mats = []
    diag = [row[:] for row in ident]
    diag[0][0] = omega
    mats.append(diag)
    for i, j in product(range(k), repeat=2):
        if i != j:
            m = [row[:] for row in ident]
            m[i][j] = 1
            mats.append(m)
    gens = [_matrix_perm(M, p, k) for M in mats]
    return generate_group(gens, label=f"GL({k},{p})")


def _subgroup_orbit(subgroup, gens):
    """Orbit of an element set under conjugation by ``gens``."""
    seen = {subgroup}
    stack = [subgroup]
    while stack:
        H = stack.pop()
        for h in gens:
            K = frozenset(conjugate(x, h) for x in H)
            if K not in seen:
                seen.add(K)
                stack.append(K)
    return seen


def classify_regular_linear_groups(p, k, cap=LINEAR_CAP):
    """Subgroups of GL(k,p), up to conjugacy, regular on the nonzero vectors.

    Each returned group has order p^k - 1 and only the zero vector as fixed
    point of its non-identity elements. Groups act on vector indices 0..q-1.
    """
    GL = general_linear_group(p, k, cap)
    m = p ** k - 1
    ident = GL.identity
    free = {g for g in GL.elements
            if not g.is_identity() and g.fixed_points() == [0] and m % g.order() == 0}
    allowed = free | {ident}

    cyclic = set()
    for g in free:
        C = frozenset(kernels.closure([g], m))
        if C <= allowed:
            cyclic.add(C)
    reps = []
    covered = set()
    for C in sorted(cyclic, key=lambda s: (len(s), sorted(s))):
        if C not in covered:
            covered |= _subgroup_orbit(C, GL.generators)
            reps.append(C)

    found = set()
    seen = set(reps)
    frontier = list(reps)
    while frontier:
        nxt = []
        for K in frontier:
            if len(K) == m:
                found.add(K)
                continue
            for g in sorted(free - K):
                try:
                    H = frozenset(kernels.closure(sorted(K) + [g], m))
                except kernels.ClosureOverflow:
                    continue
                if H in seen or m % len(H) or not H <= allowed:
                    continue
                seen.add(H)
                nxt.append(H)
        frontier = nxt

    classes = []
    covered = set()
    for H in sorted(found, key=sorted):
        if H not in covered:
            covered |= _subgroup_orbit(H, GL.generators)
            elems = frozenset(Permutation._trusted(x) for x in H)
            classes.append(FiniteGroup(p ** k, generating_set(elems), elems,
                                       _describe(elems)))
    return classes


def _describe(elems):
    ident = Permutation.identity(len(next(iter(elems))))
    abelian = all(compose(a, b) == compose(b, a) for a in elems for b in elems)
    orders = [g.order() for g in elems]
    n = len(elems)
    if n in orders:
        return f"C{n}"
    if abelian:
        return f"abelian{n}"
    inv = sum(1 for g in elems if g != ident and compose(g, g) == ident)
    if inv == 1 and n == 8:
        return "Q8"
    return f"nonabelian{n}"


def near_field_from_regular_group(H, p, k):
    """Vector addition and a.b := a^(h_b), where h_b is the unique element taking e1 to b."""
    q = p ** k
    h = {}
    for g in H.elements:
        h[g[1]] = g
    if len(h) != q - 1 or 0 in h:
        raise NearFieldError("group is not regular on nonzero vectors")
    add = [[_idx([(x + y) % p for x, y in zip(_vec(a, p, k), _vec(b, p, k))], p)
            for b in range(q)] for a in range(q)]
    mul = [[0 if b == 0 else h[b][a] for b in range(q)] for a in range(q)]
    return NearStructure(q, add, mul, 0, 1, f"{H.label}:{q}")


__all__ = [
    "CANONICAL",
    "FieldError",
    "GroupError",
    "NearFieldError",
    "NearStructure",
    "VARIANTS",
    "Verdict",
    "build_affine_group",
    "build_dickson_nearfield",
    "build_field_nearfield",
    "classify_regular_linear_groups",
    "extract_near_domain",
    "find_isomorphism",
    "general_linear_group",
    "involutions_of",
    "is_isomorphic",
    "near_field_from_regular_group",
    "regular_involution_set",
    "select_orientation",
    "verify_near_domain",
    "verify_near_field",
]

"""Exact finite permutation groups by element enumeration.

Points are 0..n-1 and groups act on the right: ``x^(ab) = (x^a)^b``.
Permutations are image tuples, so ``p[x]`` is the image of ``x``.
"""
from __future__ import annotations

import math
import os
import re
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations as _tuples

from sharply import kernels

DEFAULT_MAX_ORDER = 100_000


def max_order():
    """Closure cap, overridable through ``SHARP_MAX_ORDER``."""
    return int(os.environ.get("SHARP_MAX_ORDER", DEFAULT_MAX_ORDER))


class GroupError(ValueError):
    pass


class Permutation(tuple):
    """A bijection of {0..degree-1} stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images=()):
        self = super().__new__(cls, images)
        if sorted(self) != list(range(len(self))):
            raise GroupError(f"not a permutation: {tuple(self)}")
        return self

    @classmethod
    def _trusted(cls, images):
        return tuple.__new__(cls, images)

    @classmethod
    def identity(cls, degree):
        return cls._trusted(range(degree))

    @classmethod
    def from_cycles(cls, degree, *cycles):
        """Build from cycles, e.g. ``from_cycles(4, (0, 1), (2, 3))``."""
        img = list(range(degree))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                img[x] = cyc[(i + 1) % len(cyc)]
        return cls(img)

    @property
    def degree(self):
        return len(self)

    @property
    def images(self):
        return tuple(self)

    def __mul__(self, other):
        return compose(self, other)

    def __invert__(self):
        return self.inverse()

    def __pow__(self, k):
        result = Permutation.identity(len(self))
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = compose(result, base)
        return result

    def inverse(self):
        inv = [0] * len(self)
        for x, y in enumerate(self):
            inv[y] = x
        return Permutation._trusted(inv)

    def is_identity(self):
        return all(x == y for x, y in enumerate(self))

    def fixed_points(self):
        return [x for x, y in enumerate(self) if x == y]

    def order(self):
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def cycles(self, include_fixed=False):
        seen = set()
        out = []
        for i in range(len(self)):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def __repr__(self):
        cyc = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Permutation<{len(self)}>{body}"


def compose(a, b):
    """Right-action product: apply ``a`` then ``b``."""
    if len(a) != len(b):
        raise GroupError(f"degree mismatch: {len(a)} vs {len(b)}")
    return Permutation._trusted([b[x] for x in a])


@dataclass(frozen=True)
class FiniteGroup:
    degree: int
    generators: tuple
    elements: frozenset = field(repr=False)
    label: str = ""

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    @property
    def identity(self):
        return Permutation.identity(self.degree)

    def is_abelian(self):
        gens = self.generators or tuple(self.elements)
        return all(compose(a, b) == compose(b, a) for a in gens for b in gens)

    def __repr__(self):
        name = f" {self.label}" if self.label else ""
        return f"<FiniteGroup{name} order={self.order} degree={self.degree}>"


def generate_group(gens, cap=None, label=""):
    """Closure of ``gens`` under composition.

    Raises GroupError when the closure exceeds ``cap`` (default: max_order()).
    """
    gens = [Permutation(g) for g in gens]
    if not gens:
        raise GroupError("need at least one generator")
    degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise GroupError("generators have different degrees")
    cap = max_order() if cap is None else cap
    try:
        elems = kernels.closure(gens, cap)
    except kernels.ClosureOverflow as exc:
        raise GroupError(
            f"closure exceeded cap {cap} (partial size {exc.size})") from exc
    return FiniteGroup(degree, tuple(gens),
                       frozenset(Permutation._trusted(e) for e in elems), label)


def generating_set(elements):
    """Greedy small generating set of a finite group given by its elements."""
    elements = sorted(elements)
    degree = len(elements[0])
    gens = []
    span = {Permutation.identity(degree)}
    for g in elements:
        if g not in span:
            gens.append(g)
            span = set(kernels.closure(gens, len(elements)))
            if len(span) == len(elements):
                break
    return tuple(gens) or (Permutation.identity(degree),)


def subgroup_from_elements(G, elements, label=""):
    """Wrap an element set already known to be a subgroup of ``G``."""
    elements = frozenset(elements)
    return FiniteGroup(G.degree, generating_set(elements), elements, label)


def falling_factorial(n, k):
    return math.perm(n, k)


def _check_n(G, n):
    if n < 1:
        raise GroupError("n must be positive")
    if n > G.degree:
        raise GroupError(f"n={n} exceeds degree {G.degree}")


def is_n_transitive(G, n):
    """Orbit of the base tuple (0..n-1) must cover every distinct-entry n-tuple."""
    _check_n(G, n)
    gens = list(G.generators)
    return (kernels.tuple_orbit_size(gens, tuple(range(n)))
            == falling_factorial(G.degree, n))


def is_sharply_n_transitive(G, n):
    return (is_n_transitive(G, n)
            and G.order == falling_factorial(G.degree, n))


def definitional_transitivity(G, n):
    """Brute-force oracle: ``(transitive, sharp)`` from all pairs of n-tuples.

    For each source tuple count, for every target tuple, the elements that
    map one onto the other. Independent of the orbit method above.
    """
    _check_n(G, n)
    want = falling_factorial(G.degree, n)
    transitive = sharp = True
    for src in _tuples(range(G.degree), n):
        counts = Counter(tuple(g[x] for x in src) for g in G.elements)
        if len(counts) != want:
            transitive = sharp = False
            break
        if any(c != 1 for c in counts.values()):
            sharp = False
    return transitive, sharp


def stabilizer(G, pts, label=""):
    """Pointwise stabilizer of ``pts`` as a subgroup acting on all points."""
    pts = tuple(pts)
    if any(not 0 <= p < G.degree for p in pts):
        raise GroupError(f"points {pts} out of range for degree {G.degree}")
    if len(set(pts)) != len(pts):
        raise GroupError(f"points must be distinct: {pts}")
    elems = frozenset(g for g in G.elements if all(g[p] == p for p in pts))
    return subgroup_from_elements(G, elems, label)


def restrict(G, points):
    """Induced action on ``points`` (an invariant set), relabelled 0..len-1."""
    points = list(points)
    index = {p: i for i, p in enumerate(points)}
    elems = set()
    for g in G.elements:
        try:
            elems.add(Permutation._trusted([index[g[p]] for p in points]))
        except KeyError:
            raise GroupError("point set is not invariant") from None
    return FiniteGroup(len(points), generating_set(elems), frozenset(elems), G.label)


def orbit(G, x):
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for g in G.generators:
            if g[y] not in seen:
                seen.add(g[y])
                stack.append(g[y])
    return seen


def is_transitive(G):
    return len(orbit(G, 0)) == G.degree


def conjugate(g, h):
    """g^h = h^-1 g h."""
    return compose(compose(h.inverse(), g), h)


def conjugacy_class(G, g):
    if g not in G.elements:
        raise GroupError("element is not in the group")
    seen = {g}
    stack = [g]
    gens = G.generators
    while stack:
        x = stack.pop()
        for h in gens:
            y = conjugate(x, h)
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def conjugacy_classes(G):
    """All classes, ordered by their least element."""
    remaining = set(G.elements)
    classes = []
    for g in sorted(G.elements):
        if g in remaining:
            cls = conjugacy_class(G, g)
            remaining -= cls
            classes.append(cls)
    return classes


def is_frobenius(G):
    if not is_transitive(G) or G.order <= G.degree:
        return False
    return all(len(g.fixed_points()) <= 1 for g in G.elements if not g.is_identity())


def _grow(elements, extra, cap):
    """Closure of ``elements`` with ``extra`` adjoined, or None past ``cap``."""
    gens = sorted(set(extra) | set(elements))
    try:
        return frozenset(Permutation._trusted(e) for e in kernels.closure(gens, cap))
    except kernels.ClosureOverflow:
        return None


def is_regular(G, elements=None):
    elements = G.elements if elements is None else elements
    if len(elements) != G.degree:
        return False
    return len({g[0] for g in elements}) == G.degree


def find_regular_normal_subgroup(G):
    """A normal subgroup acting regularly, searched over unions of classes."""
    classes = [c for c in conjugacy_classes(G) if G.identity not in c]
    start = frozenset([G.identity])
    seen = set()
    frontier = [start]
    while frontier:
        nxt = []
        for N in frontier:
            for cls in classes:
                if cls <= N:
                    continue
                M = _grow(N, cls, G.degree)
                if M is None or G.degree % len(M) or M in seen:
                    continue
                seen.add(M)
                if is_regular(G, M):
                    return subgroup_from_elements(G, M, "N")
                nxt.append(M)
        frontier = sorted(nxt, key=lambda s: (len(s), sorted(s)))
    return None


def is_normal(G, elements):
    elements = frozenset(elements)
    return all(conjugate(x, h) in elements for x in elements for h in G.generators)


def symmetric(n):
    if n == 1:
        return generate_group([Permutation.identity(1)], label="S(1)")
    if n == 2:
        return generate_group([Permutation((1, 0))], label="S(2)")
    gens = [Permutation.from_cycles(n, (0, 1)),
            Permutation.from_cycles(n, tuple(range(n)))]
    return generate_group(gens, label=f"S({n})")


def alternating(n):
    if n < 3:
        return generate_group([Permutation.identity(n)], label=f"A({n})")
    gens = [Permutation.from_cycles(n, (0, 1, k)) for k in range(2, n)]
    return generate_group(gens, label=f"A({n})")


def cyclic(n):
    return generate_group([Permutation.from_cycles(n, tuple(range(n)))],
                          label=f"C({n})")


def dihedral(order):
    """Dihedral group of the given order acting on order/2 points."""
    if order % 2 or order < 6:
        raise GroupError("dihedral order must be even and at least 6")
    n = order // 2
    rot = Permutation.from_cycles(n, tuple(range(n)))
    refl = Permutation([(-x) % n for x in range(n)])
    return generate_group([rot, refl], label=f"D({order})")


M11_ORDER = 7920


def mathieu11():
    # (1,...,11) and (3,7,11,8)(4,10,5,6), shifted to 0-based points
    a = Permutation.from_cycles(11, tuple(range(11)))
    b = Permutation.from_cycles(11, (2, 6, 10, 7), (3, 9, 4, 5))
    G = generate_group([a, b], cap=M11_ORDER, label="M11")
    if G.order != M11_ORDER:
        raise GroupError(f"M11 generators produced order {G.order}")
    return G


_CATALOG = re.compile(r"^\s*([SACD])\((\d+)\)\s*$|^\s*(M11)\s*$")


def catalog(name):
    """Named groups: S(n), A(n), C(n), D(2n) and M11."""
    m = _CATALOG.match(name)
    if not m:
        raise GroupError(f"unknown group name {name!r}")
    if m.group(3):
        return mathieu11()
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise GroupError(f"bad size in {name!r}")
    return {"S": symmetric, "A": alternating, "C": cyclic, "D": dihedral}[kind](n)


def regular_action(G):
    """G acting on itself by right multiplication (degree |G|)."""
    elems = sorted(G.elements)
    index = {g: i for i, g in enumerate(elems)}
    gens = [Permutation._trusted([index[compose(x, g)] for x in elems])
            for g in G.generators]
    return generate_group(gens, label=f"{G.label} regular" if G.label else "")

"""Normal forms in G = (C2 x F(C)) * F(N).

The first factor A = C2 x F(C) holds the involution t together with the
generators c1, c2, ... that commute with it; the second factor F(N) is free
on n1, n2, .... An element is an alternating sequence of nontrivial
syllables, one factor at a time.

Syllables are plain tuples:

* A-syllable ``("A", flip, word)`` with ``flip`` in {0, 1} (the power of t)
  and ``word`` a freely reduced tuple of nonzero ints over C (k means c_k,
  -k its inverse);
* N-syllable ``("N", word)`` with ``word`` a nonempty reduced tuple over N.
"""
from __future__ import annotations

import re
from itertools import product


class WordError(ValueError):
    pass


def _free_mul(u, v):
    """Freely reduced product of two reduced words."""
    i = 0
    m = min(len(u), len(v))
    while i < m and u[len(u) - 1 - i] == -v[i]:
        i += 1
    return u[:len(u) - i] + v[i:]


def _free_inv(w):
    return tuple(-x for x in reversed(w))


def _syl_mul(a, b):
    """Product of two syllables from the same factor, or None if trivial."""
    if a[0] == "A":
        flip = a[1] ^ b[1]
        word = _free_mul(a[2], b[2])
        return ("A", flip, word) if (flip or word) else None
    word = _free_mul(a[1], b[1])
    return ("N", word) if word else None


def _syl_inv(s):
    if s[0] == "A":
        return ("A", s[1], _free_inv(s[2]))
    return ("N", _free_inv(s[1]))


class FPWord:
    """An element of (C2 x F(C)) * F(N) in normal form."""

    __slots__ = ("syllables", "_hash")

    def __init__(self, syllables=()):
        syllables = tuple(syllables)
        for i, s in enumerate(syllables):
            if s[0] == "A":
                if not (s[1] or s[2]):
                    raise WordError("trivial A-syllable")
            elif s[0] != "N" or not s[1]:
                raise WordError(f"bad syllable {s!r}")
            if i and syllables[i - 1][0] == s[0]:
                raise WordError("adjacent syllables from the same factor")
        self.syllables = syllables
        self._hash = hash(syllables)

    @classmethod
    def _raw(cls, syllables):
        self = object.__new__(cls)
        self.syllables = syllables
        self._hash = hash(syllables)
        return self

    def __eq__(self, other):
        return isinstance(other, FPWord) and self.syllables == other.syllables

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)

    def __len__(self):
        return len(self.syllables)

    def __mul__(self, other):
        return fp_multiply(self, other)

    def __invert__(self):
        return fp_invert(self)

    def __pow__(self, k):
        base = self if k >= 0 else fp_invert(self)
        out = IDENTITY
        for _ in range(abs(k)):
            out = fp_multiply(out, base)
        return out

    def is_identity(self):
        return not self.syllables

    def letters(self):
        """Letter sequence: ("t",), ("c", k) or ("n", k) with signed k."""
        out = []
        for s in self.syllables:
            if s[0] == "A":
                if s[1]:
                    out.append(("t",))
                out.extend(("c", x) for x in s[2])
            else:
                out.extend(("n", x) for x in s[1])
        return out

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"FPWord({format_word(self)!r})"


IDENTITY = FPWord._raw(())
T = FPWord._raw((("A", 1, ()),))


def c(k, e=1):
    return FPWord._raw((("A", 0, (k if e > 0 else -k,)),))


def n(k, e=1):
    return FPWord._raw((("N", (k if e > 0 else -k,)),))


def letter_word(letter):
    if letter[0] == "t":
        return T
    kind, x = letter
    return c(abs(x), x) if kind == "c" else n(abs(x), x)


def fp_multiply(u, v):
    left = list(u.syllables)
    right = v.syllables
    j = 0
    while left and j < len(right) and left[-1][0] == right[j][0]:
        merged = _syl_mul(left.pop(), right[j])
        j += 1
        if merged is not None:
            left.append(merged)
            break
    return FPWord._raw(tuple(left) + right[j:])


def fp_invert(u):
    return FPWord._raw(tuple(_syl_inv(s) for s in reversed(u.syllables)))


def fp_conjugate(u, g):
    """g^-1 u g."""
    return fp_multiply(fp_multiply(fp_invert(g), u), g)


def fp_is_involution(u):
    return not u.is_identity() and fp_multiply(u, u).is_identity()


def _cyclic_free(w):
    """Cyclically reduced core of a reduced free word."""
    w = tuple(w)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def _is_rotation(a, b):
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = a + a
    return any(doubled[i:i + len(b)] == b for i in range(len(a)))


def cyclic_reduce(u):
    """Conjugate of u whose syllable sequence is cyclically reduced."""
    syl = list(u.syllables)
    while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
        merged = _syl_mul(syl[-1], syl[0])
        syl = syl[1:-1]
        if merged is not None:
            syl.append(merged)
    return FPWord._raw(tuple(syl))


def _factor_conjugate(a, b):
    if a[0] != b[0]:
        return False
    if a[0] == "A":
        return a[1] == b[1] and _is_rotation(_cyclic_free(a[2]), _cyclic_free(b[2]))
    return _is_rotation(_cyclic_free(a[1]), _cyclic_free(b[1]))


def fp_conjugacy_test(u, v):
    """Exact conjugacy in the free product.

    Cyclically reduced words of length >= 2 are conjugate iff their syllable
    sequences are cyclic rotations of each other; length-1 words reduce to
    conjugacy inside their factor.
    """
    a, b = cyclic_reduce(u).syllables, cyclic_reduce(v).syllables
    if len(a) != len(b):
        return False
    if len(a) == 0:
        return True
    if len(a) == 1:
        return _factor_conjugate(a[0], b[0])
    return _is_rotation(a, b)


def fp_in_tJ(u):
    """u in t.(J u {1}): t.u is the identity or an involution."""
    tu = fp_multiply(T, u)
    return tu.is_identity() or fp_is_involution(tu)


def cyclic_length(u):
    return len(cyclic_reduce(u))


def has_infinite_order(u):
    """Torsion elements are conjugate into a factor; only t-type syllables have finite order."""
    core = cyclic_reduce(u).syllables
    if len(core) >= 2:
        return True
    if not core:
        return False
    s = core[0]
    return bool(s[2]) if s[0] == "A" else True


# word syntax: t, c<k>, c<k>^-1, n<k>, n<k>^-1

_TOKEN = re.compile(r"^(t|[cn](\d+)(\^(-?\d+))?)$")


def parse_word(text):
    out = IDENTITY
    for tok in text.replace("*", " ").split():
        if tok == "1":
            continue
        m = _TOKEN.match(tok)
        if not m:
            raise WordError(f"bad token {tok!r}")
        if tok == "t":
            out = fp_multiply(out, T)
            continue
        k = int(m.group(2))
        if k < 1:
            raise WordError(f"generator index must be positive: {tok!r}")
        e = int(m.group(4)) if m.group(4) else 1
        base = c(k) if tok[0] == "c" else n(k)
        out = fp_multiply(out, base ** e)
    return out


def format_word(u):
    if u.is_identity():
        return "1"
    toks = []
    for letter in u.letters():
        if letter[0] == "t":
            toks.append("t")
        else:
            kind, x = letter
            toks.append(f"{kind}{abs(x)}" + ("^-1" if x < 0 else ""))
    return " ".join(toks)


def sort_key(u):
    return (len(u.syllables), [_letter_key(x) for x in u.letters()])


def _letter_key(letter):
    if letter[0] == "t":
        return (0, 0, 0)
    kind, x = letter
    return (1 if kind == "c" else 2, abs(x), 0 if x > 0 else 1)


# Neumann witnesses

def syllable_alphabet(n_free=1, n_comm=1):
    """Short syllables: t, c_k^+-1, t c_k^+-1 and n_k^+-1, in a fixed order."""
    a_syl = [("A", 1, ())]
    for k in range(1, n_comm + 1):
        for x in (k, -k):
            a_syl.append(("A", 0, (x,)))
            a_syl.append(("A", 1, (x,)))
    n_syl = [("N", (x,)) for k in range(1, n_free + 1) for x in (k, -k)]
    return a_syl, n_syl


def words_up_to(radius, n_free=1, n_comm=1):
    """Normal forms of syllable length 1..radius over the short syllables."""
    a_syl, n_syl = syllable_alphabet(n_free, n_comm)
    out = []
    for length in range(1, radius + 1):
        for start, other in (("A", "N"), ("N", "A")):
            pools = [(a_syl if (i % 2 == 0) == (start == "A") else n_syl)
                     for i in range(length)]
            if any(not p for p in pools):
                continue
            for syls in product(*pools):
                out.append(FPWord._raw(tuple(syls)))
    return out


def neumann_product(u, v):
    """(t.t^u)(t.t^v), a product of two elements of t.J."""
    return fp_multiply(fp_multiply(T, fp_conjugate(T, u)),
                       fp_multiply(T, fp_conjugate(T, v)))


def neumann_witnesses(radius, n_free=1, n_comm=1, limit=None):
    """All (u, v), in search order, whose Neumann product leaves t.J."""
    words = words_up_to(radius, n_free, n_comm)
    found = []
    for u in words:
        for v in words:
            if not fp_in_tJ(neumann_product(u, v)):
                found.append((u, v))
                if limit is not None and len(found) >= limit:
                    return found
    return found


def neumann_witness_search(radius, n_free=1, n_comm=1):
    """First (u, v) with (t t^u)(t t^v) outside t.J, or None.

    A witness shows t.J is not closed under multiplication, so the group has
    no regular normal subgroup for the action in which t is an involution.
    """
    if radius < 1:
        raise WordError("radius must be at least 1")
    found = neumann_witnesses(radius, n_free, n_comm, limit=1)
    return found[0] if found else None


__all__ = [
    "FPWord",
    "IDENTITY",
    "T",
    "WordError",
    "c",
    "cyclic_length",
    "cyclic_reduce",
    "format_word",
    "fp_conjugacy_test",
    "fp_conjugate",
    "fp_in_tJ",
    "fp_invert",
    "fp_is_involution",
    "fp_multiply",
    "has_infinite_order",
    "letter_word",
    "n",
    "neumann_product",
    "neumann_witness_search",
    "neumann_witnesses",
    "parse_word",
    "words_up_to",
]

"""Pure-Python implementations of the hot loops.

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and the same results; ``sharply.kernels`` picks one at import time.
"""


class ClosureOverflow(Exception):
    """Raised when a closure grows past its cap; carries the partial size."""

    def __init__(self, size, cap):
        super().__init__(f"closure exceeded cap {cap} (partial size {size})")
        self.size = size
        self.cap = cap


def closure(gens, cap):
    """Return the list of all products of ``gens`` (image tuples), identity first.

    Composition is x^(ab) = (x^a)^b, i.e. ``(a*b)[x] == b[a[x]]``.
    """
    n = len(gens[0])
    ident = tuple(range(n))
    elems = [ident]
    seen = {ident}
    i = 0
    while i < len(elems):
        e = elems[i]
        i += 1
        for g in gens:
            h = tuple([g[x] for x in e])
            if h not in seen:
                seen.add(h)
                elems.append(h)
                if len(elems) > cap:
                    raise ClosureOverflow(len(elems), cap)
    return elems


def tuple_orbit_size(gens, base):
    """Size of the orbit of the point tuple ``base`` under the group generated by ``gens``."""
    start = tuple(base)
    seen = {start}
    stack = [start]
    while stack:
        tup = stack.pop()
        for g in gens:
            img = tuple([g[x] for x in tup])
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return len(seen)


def assoc_failure(table, n, skip=-1):
    """First (a, b, c) in lexicographic order with (ab)c != a(bc), or None.

    ``table`` is a flat row-major n*n list; elements equal to ``skip`` are excluded.
    """
    rng = [x for x in range(n) if x != skip]
    for a in rng:
        ra = a * n
        for b in rng:
            ab = table[ra + b]
            rab = ab * n
            rb = b * n
            for c in rng:
                if table[rab + c] != table[ra + table[rb + c]]:
                    return (a, b, c)
    return None


def right_dist_failure(add, mul, n, zero):
    """First (a, b, c), c != zero, with (a+b)c != ac + bc, or None."""
    for a in range(n):
        for b in range(n):
            s = add[a * n + b] * n
            for c in range(n):
                if c == zero:
                    continue
                if mul[s + c] != add[mul[a * n + c] * n + mul[b * n + c]]:
                    return (a, b, c)
    return None

"""Finite stages of the partial-action construction in characteristic 2.

A stage is a finite point set carrying a total fixed-point-free involution
``t`` and partial injections for the generators activated so far:
commuting generators c_k (which must commute with t wherever both sides
are defined) and free generators n_k. Ordered pairs of points are processed
first-in first-out. A pair the base pair (x, y) cannot yet reach gets a
fresh generator taking (x, y) to it. The generator commutes with t when the
pair is already swapped by a conjugate of t, and is free otherwise.

Totalization is lazy. A point joins the *core* once it appears in a
processed pair, and ``totalize`` makes every active generator defined in
both directions on the core by adjoining fresh points. FIFO processing
puts every point into the core eventually, so every generator ends up
defined everywhere in the limit. Each finite stage stays finite.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from sharply.freeprod import (
    IDENTITY,
    T,
    FPWord,
    c as c_word,
    format_word,
    fp_conjugacy_test,
    fp_invert,
    fp_multiply,
    letter_word,
    n as n_word,
    parse_word,
)


class StageError(RuntimeError):
    pass


@dataclass
class Generator:
    kind: str            # "c" (commutes with t) or "n" (free)
    index: int
    fwd: dict = field(default_factory=dict)
    bwd: dict = field(default_factory=dict)

    @property
    def name(self):
        return f"{self.kind}{self.index}"

    def define(self, p, q):
        if self.fwd.get(p, q) != q or self.bwd.get(q, p) != p:
            raise StageError(f"{self.name}: {p}->{q} clashes with an existing definition")
        self.fwd[p] = q
        self.bwd[q] = p


def _pair_at(i):
    """The i-th ordered pair in FIFO order: (0,1),(1,0),(0,2),(2,0),(1,2),(2,1),..."""
    v = (1 + math.isqrt(1 + 4 * i)) // 2
    while v * (v - 1) > i:
        v -= 1
    while (v + 1) * v <= i:
        v += 1
    r = i - v * (v - 1)
    u = r // 2
    return (u, v) if r % 2 == 0 else (v, u)


def _pair_position(pair):
    a, b = pair
    v, u = max(a, b), min(a, b)
    return v * (v - 1) + 2 * u + (0 if a == u else 1)


@dataclass
class Stage:
    t: list
    gens: list = field(default_factory=list)
    base_pair: tuple = (0, 1)
    joined: dict = field(default_factory=dict)
    core: set = field(default_factory=set)
    cursor: int = 0
    step_count: int = 0
    rng_seed: int = 0
    log: list = field(default_factory=list)

    # -- points and letters

    @property
    def point_count(self):
        return len(self.t)

    def new_point(self):
        self.t.append(None)
        return len(self.t) - 1

    def new_t_pair(self):
        a, b = self.new_point(), self.new_point()
        self.t[a], self.t[b] = b, a
        return a, b

    def generator(self, kind, index):
        for g in self.gens:
            if g.kind == kind and g.index == index:
                return g
        raise KeyError(f"{kind}{index}")

    def activate(self, kind):
        index = 1 + sum(1 for g in self.gens if g.kind == kind)
        g = Generator(kind, index)
        self.gens.append(g)
        return g

    def step(self, p, letter):
        """Image of p under one letter, or None where undefined."""
        if letter[0] == "t":
            return self.t[p]
        kind, x = letter
        g = self.generator(kind, abs(x))
        return (g.fwd if x > 0 else g.bwd).get(p)

    def letters_at(self, p):
        """(letter, image) for every letter defined at p."""
        out = [(("t",), self.t[p])]
        for g in self.gens:
            q = g.fwd.get(p)
            if q is not None:
                out.append(((g.kind, g.index), q))
            q = g.bwd.get(p)
            if q is not None:
                out.append(((g.kind, -g.index), q))
        return out

    def evaluate(self, word, p):
        """p^word through the word's normal-form letters; None if undefined."""
        for letter in word.letters():
            if p is None:
                return None
            p = self.step(p, letter)
        return p

    # -- pair queue

    def pending_pairs(self):
        """Pairs still queued: all unvisited ordered pairs that are not joined."""
        total = self.point_count * (self.point_count - 1)
        ahead = sum(1 for pr in self.joined if _pair_position(pr) >= self.cursor)
        return total - self.cursor - ahead

    def dequeue(self):
        total = self.point_count * (self.point_count - 1)
        while self.cursor < total:
            pair = _pair_at(self.cursor)
            self.cursor += 1
            if pair not in self.joined:
                return pair
        raise StageError("pair queue is empty")

    # -- pair orbits

    def pair_orbit(self, start):
        """BFS over the pair graph from ``start``; returns (order, parent)."""
        parent = {start: None}
        order = [start]
        queue = deque([start])
        while queue:
            a, b = pr = queue.popleft()
            lb = dict(self.letters_at(b))
            for letter, a2 in self.letters_at(a):
                b2 = lb.get(letter)
                if b2 is None:
                    continue
                nxt = (a2, b2)
                if nxt not in parent:
                    parent[nxt] = (pr, letter)
                    order.append(nxt)
                    queue.append(nxt)
        return order, parent

    @staticmethod
    def path_word(parent, target):
        """Word w with start^w = target along BFS parents."""
        word = IDENTITY
        node = target
        while parent[node] is not None:
            prev, letter = parent[node]
            word = fp_multiply(letter_word(letter), word)
            node = prev
        return word


def init_stage(seed=0):
    """Four points, t = (0 1)(2 3), base pair (0, 1)."""
    S = Stage(t=[1, 0, 3, 2], rng_seed=seed)
    S.joined[(0, 1)] = IDENTITY
    S.joined[(1, 0)] = T
    S.core.update((0, 1))
    return S


def process_next_pair(S):
    """Dequeue one pair and join it to the base pair if it is not yet joined.

    Returns the action taken: "joined-already", "commuting" or "free".
    """
    w, z = pair = S.dequeue()
    S.step_count += 1
    S.core.update(pair)
    x, y = S.base_pair
    order, parent = S.pair_orbit(pair)
    if (x, y) in parent:
        S.joined[pair] = fp_invert(S.path_word(parent, (x, y)))
        S.log.append((pair, "joined-already", format_word(S.joined[pair])))
        return "joined-already"
    swapped = next((pr for pr in order if S.t[pr[0]] == pr[1]), None)
    if swapped is not None:
        a, b = swapped
        g = S.activate("c")
        g.define(x, a)
        g.define(y, b)
        gw = c_word(g.index)
        S.joined[swapped] = gw
        S.joined[pair] = fp_multiply(gw, fp_invert(S.path_word(parent, swapped)))
        S.log.append((pair, "commuting", format_word(S.joined[pair])))
        return "commuting"
    g = S.activate("n")
    g.define(x, w)
    g.define(y, z)
    S.joined[pair] = n_word(g.index)
    S.log.append((pair, "free", g.name))
    return "free"


def _complete(S, g, p):
    if g.kind == "n":
        if p not in g.fwd:
            q, _ = S.new_t_pair()
            g.define(p, q)
        if p not in g.bwd:
            q, _ = S.new_t_pair()
            g.define(q, p)
        return
    # commuting generators are defined on t-closed sets, so p and p^t go together
    tp = S.t[p]
    if p not in g.fwd:
        if tp in g.fwd:
            raise StageError(f"{g.name} defined at {tp} but not at its t-partner {p}")
        q, tq = S.new_t_pair()
        g.define(p, q)
        g.define(tp, tq)
    if p not in g.bwd:
        if tp in g.bwd:
            raise StageError(f"{g.name}^-1 defined at {tp} but not at its t-partner {p}")
        q, tq = S.new_t_pair()
        g.define(q, p)
        g.define(tq, tp)


def totalize(S):
    """Make every active generator a bijection on the core, adjoining fresh points."""
    for g in S.gens:
        for p in sorted(S.core):
            _complete(S, g, p)
    if any(v is None for v in S.t):
        raise StageError("t is not total after totalize")
    return S


def run(steps, seed=0, every=1):
    """Process ``steps`` pairs, totalizing after every ``every`` new generators."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    S = init_stage(seed)
    since = 0
    for _ in range(steps):
        if process_next_pair(S) != "joined-already":
            since += 1
        if since >= every:
            totalize(S)
            since = 0
    if steps:
        totalize(S)
    return S


# -- invariant checks

@dataclass
class InvariantReport:
    depth: int
    points: int
    generators: int
    words_checked: int = 0
    frobenius: list = field(default_factory=list)
    uniqueness: list = field(default_factory=list)
    involution: list = field(default_factory=list)
    commuting: list = field(default_factory=list)
    coherence: list = field(default_factory=list)
    torsion: list = field(default_factory=list)
    ledger: list = field(default_factory=list)

    CATEGORIES = ("frobenius", "uniqueness", "involution", "commuting",
                  "coherence", "torsion", "ledger")

    @property
    def ok(self):
        return not any(getattr(self, c) for c in self.CATEGORIES)

    def lines(self):
        out = [f"depth: {self.depth}", f"points: {self.points}",
               f"generators: {self.generators}", f"words_checked: {self.words_checked}"]
        for cat in self.CATEGORIES:
            bad = getattr(self, cat)
            out.append(f"{cat}: {'pass' if not bad else 'FAIL %d' % len(bad)}")
            for item in bad[:5]:
                out.append(f"  {cat}_witness: {item}")
        out.append(f"verdict: {'pass' if self.ok else 'fail'}")
        return out

    def to_text(self):
        return "\n".join(self.lines()) + "\n"


def _inverse_letter(letter):
    if letter[0] == "t":
        return letter
    return (letter[0], -letter[1])


def _walks(S, p, depth):
    """Yield (normal form, end point) for every freely reduced letter walk from p."""
    stack = [(p, IDENTITY, None, 0)]
    while stack:
        q, word, last, d = stack.pop()
        if d:
            yield word, q
        if d == depth:
            continue
        back = _inverse_letter(last) if last is not None else None
        for letter, q2 in S.letters_at(q):
            if letter == back:
                continue
            stack.append((q2, fp_multiply(word, letter_word(letter)), letter, d + 1))


def check_invariants(S, depth=3):
    """Verify the stage against all reduced words of at most ``depth`` letters.

    (a) no nontrivial element fixes two points; (b) words taking the base
    pair to the same pair are equal; (c) t is a total fixed-point-free
    involution and commuting generators commute with it; (d) normal-form
    evaluation agrees with letter-by-letter evaluation. Also: elements
    acting as involutions on four or more points are conjugates of t, and
    every recorded join word takes the base pair where the ledger says.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    R = InvariantReport(depth, S.point_count, len(S.gens))

    for p, q in enumerate(S.t):
        if q is None or q == p or S.t[q] != p:
            R.involution.append(f"t at {p}: {q}")
    for g in S.gens:
        for p, q in g.fwd.items():
            if g.bwd.get(q) != p:
                R.commuting.append(f"{g.name} not injective at {p}")
        if g.kind == "c":
            for p, q in g.fwd.items():
                tq = g.fwd.get(S.t[p])
                if tq is not None and tq != S.t[q]:
                    R.commuting.append(f"{g.name} and t disagree at {p}")

    ends = {}
    for p in range(S.point_count):
        for word, q in _walks(S, p, depth):
            R.words_checked += 1
            ends.setdefault(word, {})[p] = q
            if word.is_identity():
                if q != p:
                    R.coherence.append(f"identity word moves {p} to {q}")
                continue
            direct = S.evaluate(word, p)
            if direct is not None and direct != q:
                R.coherence.append(f"{format_word(word)} at {p}: {direct} vs walk {q}")

    x, y = S.base_pair
    at_base = {}
    for word, m in ends.items():
        if word.is_identity():
            continue
        fixed = sorted(p for p, q in m.items() if p == q)
        if len(fixed) >= 2:
            R.frobenius.append(f"{format_word(word)} fixes {fixed[:4]}")
        inv_pts = sum(1 for p, q in m.items() if q != p and m.get(q) == p)
        if inv_pts >= 4 and not fp_conjugacy_test(word, T):
            R.torsion.append(f"{format_word(word)} swaps {inv_pts} points but is not a conjugate of t")
        if x in m and y in m:
            at_base.setdefault((m[x], m[y]), []).append(word)
    ends_id = (x, y)
    at_base.setdefault(ends_id, []).append(IDENTITY)
    for pair, words in at_base.items():
        if len(set(words)) > 1:
            shown = ", ".join(format_word(w) for w in sorted(set(words))[:3])
            R.uniqueness.append(f"{pair} reached by {shown}")

    for pair, word in S.joined.items():
        if (S.evaluate(word, x), S.evaluate(word, y)) != pair:
            R.ledger.append(f"{pair} recorded as {format_word(word)}")
    return R


# -- snapshots

def write_snapshot(S):
    lines = [f"points: {S.point_count}",
             "t: " + " ".join(map(str, S.t)),
             f"base: {S.base_pair[0]} {S.base_pair[1]}",
             f"seed: {S.rng_seed}",
             f"steps: {S.step_count}",
             f"cursor: {S.cursor}",
             "core: " + " ".join(map(str, sorted(S.core)))]
    for g in S.gens:
        lines.append(f"{g.name}: " + " ".join(f"{p}->{q}" for p, q in sorted(g.fwd.items())))
    for pair in sorted(S.joined, key=_pair_position):
        lines.append(f"joined: {pair[0]} {pair[1]} {format_word(S.joined[pair])}")
    return "\n".join(lines) + "\n"


def read_snapshot(text):
    S = None
    fields = {}
    gens = []
    joined = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(":")
        key, rest = key.strip(), rest.strip()
        try:
            if key in ("points", "seed", "steps", "cursor"):
                fields[key] = int(rest)
            elif key in ("t", "core", "base"):
                fields[key] = [int(v) for v in rest.split()]
            elif key == "joined":
                a, b, word = rest.split(maxsplit=2)
                joined[(int(a), int(b))] = parse_word(word)
            elif key[:1] in ("c", "n") and key[1:].isdigit():
                g = Generator(key[0], int(key[1:]))
                for tok in rest.split():
                    p, q = tok.split("->")
                    g.define(int(p), int(q))
                gens.append(g)
            else:
                raise ValueError(f"unknown key {key!r}")
        except (ValueError, StageError) as exc:
            raise StageError(f"line {lineno}: {exc}") from None
    for need in ("points", "t", "base"):
        if need not in fields:
            raise StageError(f"snapshot is missing the {need!r} line")
    if len(fields["t"]) != fields["points"]:
        raise StageError("t line length differs from the point count")
    S = Stage(t=fields["t"], gens=gens, base_pair=tuple(fields["base"]), joined=joined,
              core=set(fields.get("core", [])), cursor=fields.get("cursor", 0),
              step_count=fields.get("steps", 0), rng_seed=fields.get("seed", 0))
    return S


def stage_from_maps(t, gens, base_pair=(0, 1)):
    """Hand-built stage: ``gens`` maps names like "n1" to {p: q} dicts."""
    S = Stage(t=list(t), base_pair=tuple(base_pair))
    for name, mapping in gens.items():
        g = Generator(name[0], int(name[1:]))
        for p, q in mapping.items():
            g.define(p, q)
        S.gens.append(g)
    S.joined[tuple(base_pair)] = IDENTITY
    return S


__all__ = [
    "Generator",
    "InvariantReport",
    "Stage",
    "StageError",
    "check_invariants",
    "init_stage",
    "process_next_pair",
    "read_snapshot",
    "run",
    "stage_from_maps",
    "totalize",
    "write_snapshot",
]

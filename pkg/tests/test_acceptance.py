"""Acceptance criteria, one test per criterion.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly: ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time
from itertools import permutations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import agl, dickson, field, sharp2_corpus  # noqa: E402

from sharply import analysis, freeprod as fp, nearfield, partial, perm, projective  # noqa: E402


def _definitional(G, n):
    """(n-transitive, sharply n-transitive) straight from the definition."""
    tuples = list(permutations(range(G.degree), n))
    base = tuples[0]
    hits = {}
    for g in G.elements:
        img = tuple(g[x] for x in base)
        hits[img] = hits.get(img, 0) + 1
    trans = len(hits) == len(tuples)
    return trans, trans and all(v == 1 for v in hits.values())


def test_criterion_01_sharp_transitivity_orders():
    t0 = time.perf_counter()
    for q in (3, 4, 5, 7, 8, 9):
        G = agl(q)
        assert G.order == q * (q - 1)
        assert perm.is_sharply_n_transitive(G, 2)
        assert _definitional(G, 2) == (True, True)
    for q in (3, 4, 5, 7):
        G = projective.build_pgl(q)
        assert G.degree == q + 1
        assert G.order == (q + 1) * q * (q - 1)
        assert perm.is_sharply_n_transitive(G, 3)
        assert _definitional(G, 3) == (True, True)
    assert time.perf_counter() - t0 < 10


def test_criterion_02_mathieu_spot_check():
    t0 = time.perf_counter()
    G = perm.catalog("M11")
    assert G.degree == 11
    assert G.order == 7920 == 11 * 10 * 9 * 8
    assert perm.is_sharply_n_transitive(G, 4)
    assert not perm.is_n_transitive(G, 5)
    assert time.perf_counter() - t0 < 60


def test_criterion_03_dickson_nine():
    D = dickson(9)
    assert nearfield.verify_near_field(D)
    nz = D.nonzero()
    assert len(nz) == 8
    assert any(D.mul[a][b] != D.mul[b][a] for a in nz for b in nz)
    invols = [a for a in nz if a != D.one and D.mul[a][a] == D.one]
    assert len(invols) == 1
    G = agl(9, twisted=True)
    assert G.order == 72
    assert analysis.characteristic(G) == 3
    split, N = analysis.neumann_split_test(G)
    assert split and N.order == 9 and N.is_abelian()
    assert all(g.order() == 3 for g in N.elements if not g.is_identity())


def test_criterion_04_regular_linear_groups():
    t0 = time.perf_counter()
    c32 = nearfield.classify_regular_linear_groups(3, 2)
    c22 = nearfield.classify_regular_linear_groups(2, 2)
    assert len(c32) == 2
    assert len(c22) == 1
    for (p, k), classes in (((3, 2), c32), ((2, 2), c22)):
        for H in classes:
            assert nearfield.verify_near_field(nearfield.near_field_from_regular_group(H, p, k))
    assert time.perf_counter() - t0 < 30


def test_criterion_05_neumann_finite_side():
    for G in sharp2_corpus():
        J = analysis.involutions(G)
        t = min(J)
        R = nearfield.regular_involution_set(G, t, J)
        assert all(perm.compose(a, b) in R for a in R for b in R), G.label
        assert R == analysis.j_squared(G, J)
        assert all(perm.compose(a, b) == perm.compose(b, a) for a in R for b in R)
        assert perm.is_normal(G, R)
        assert analysis.is_regular_set(G, R)
        D = nearfield.extract_near_domain(G, 0, 1)
        assert D.is_add_commutative(), G.label


def test_criterion_06_neumann_infinite_side():
    t0 = time.perf_counter()
    found = fp.neumann_witness_search(1)
    elapsed = time.perf_counter() - t0
    assert found is not None
    prod = fp.neumann_product(*found)
    assert not fp.fp_in_tJ(prod)
    assert fp.cyclic_length(prod) > 1
    assert elapsed < 1


def test_criterion_07_non_conjugacy_in_j_squared():
    b = fp.n(1)
    u = fp.fp_multiply(fp.T, fp.fp_conjugate(fp.T, b))
    v = fp.fp_multiply(fp.T, fp.fp_conjugate(fp.T, b ** 2))
    assert fp.fp_conjugacy_test(u, v) is False


def test_criterion_08_partial_action_construction():
    t0 = time.perf_counter()
    S = partial.run(50, seed=1)
    report = partial.check_invariants(S, 4)
    assert report.ok, report.to_text()
    assert time.perf_counter() - t0 < 300


def test_criterion_09_near_domain_round_trip():
    for S in [field(3), field(4), field(5), field(7), dickson(9)]:
        D = nearfield.extract_near_domain(nearfield.build_affine_group(S), 0, 1,
                                          nearfield.CANONICAL)
        assert nearfield.find_isomorphism(S, D) is not None, S.label


def test_criterion_10_kerby_equation():
    # sigma(0) = 0, as the criterion states; the projective convention is
    # exercised in test_projective.py
    failures = []
    for q in (3, 4, 5, 7, 8, 9):
        F = field(q)
        res = projective.kerby_sigma_check(F, projective.inversion_sigma(F), convention="zero")
        if not res:
            failures.append((q, res.witness))
        assert projective.stabilizer_is_affine(q)
    assert not failures, f"equation fails with sigma(0)=0 at (q, (x, lhs, rhs)): {failures}"


def _random_word(rng):
    syl = []
    kind = rng.choice("AN")
    for _ in range(rng.randint(0, 6)):
        if kind == "A":
            flip = rng.randint(0, 1)
            word = _random_free(rng, 2, 0 if flip else 1)
            syl.append(("A", flip, word))
        else:
            syl.append(("N", _random_free(rng, 2, 1)))
        kind = "N" if kind == "A" else "A"
    return fp.FPWord(syl)


def _random_free(rng, gens, min_len):
    w = []
    for _ in range(rng.randint(min_len, 3)):
        choices = [x for x in (1, -1, 2, -2)[:2 * gens] if not w or x != -w[-1]]
        w.append(rng.choice(choices))
    return tuple(w)


def _char_oracle(G):
    elems = [tuple(g) for g in G.elements]
    ident = tuple(range(G.degree))
    mul = lambda a, b: tuple(b[x] for x in a)  # noqa: E731
    J = [g for g in elems if g != ident and mul(g, g) == ident]
    if all(g[x] != x for g in J for x in range(G.degree)):
        return 2
    orders = set()
    for a in J:
        for b in J:
            g = mul(a, b)
            if g == ident:
                continue
            k, h = 1, g
            while h != ident:
                h, k = mul(h, g), k + 1
            orders.add(k)
    assert len(orders) == 1
    return orders.pop()


def _small_groups():
    groups = [perm.catalog(n) for n in ("S(3)", "S(4)", "S(5)", "A(4)", "A(5)",
                                        "C(5)", "C(6)", "D(8)", "D(10)")]
    groups += [agl(q) for q in (3, 4, 5, 7, 8, 9)] + [agl(9, twisted=True)]
    groups += [projective.build_pgl(q) for q in (3, 4, 5, 7)]
    return [G for G in groups if G.order <= 500]


def test_criterion_11_property_suites():
    rng = random.Random(20261016)
    for _ in range(10_000):
        u, v, w = _random_word(rng), _random_word(rng), _random_word(rng)
        assert fp.fp_multiply(fp.fp_multiply(u, v), w) == fp.fp_multiply(u, fp.fp_multiply(v, w))
        assert fp.fp_multiply(u, fp.IDENTITY) == u == fp.fp_multiply(fp.IDENTITY, u)
        assert fp.fp_multiply(u, fp.fp_invert(u)) == fp.IDENTITY
    for G in sharp2_corpus():
        assert analysis.characteristic(G) == _char_oracle(G), G.label
    for G in _small_groups():
        for n in range(1, min(G.degree, 4) + 1):
            trans, sharp = _definitional(G, n)
            assert perm.is_n_transitive(G, n) == trans, (G.label, n)
            assert perm.is_sharply_n_transitive(G, n) == sharp, (G.label, n)


if __name__ == "__main__":
    tests = [(name, fn) for name, fn in sorted(globals().items())
             if name.startswith("test_criterion_")]
    failed = 0
    for name, fn in tests:
        try:
            fn()
            print(f"PASS  {name}")
        except AssertionError as exc:
            failed += 1
            print(f"FAIL  {name}: {exc}")
    sys.exit(1 if failed else 0)

import pytest

from sharply.gf import GF, FieldError, default_modulus, is_irreducible, prime_power


def test_gf9_arithmetic():
    F = GF(9)
    i = F.element([0, 1])
    one_plus_i = F.add(1, i)
    assert F.mul(i, i) == F.neg(1)
    assert F.mul(one_plus_i, one_plus_i) == F.mul(2, i)
    assert F.format(F.mul(one_plus_i, one_plus_i)) == "2i"


def test_gf9_squares():
    F = GF(9)
    i = F.element([0, 1])
    assert set(F.squares) - {0} == {1, 2, i, F.mul(2, i)}


def test_modulus_is_least_irreducible():
    # coefficient tuples are lowest degree first
    assert default_modulus(3, 2) == (1, 0, 1)        # x^2+1
    assert default_modulus(2, 3) == (1, 1, 0, 1)     # x^3+x+1
    assert default_modulus(2, 2) == (1, 1, 1)        # x^2+x+1
    assert not is_irreducible((2, 0, 1), 3)          # x^2+2 = (x+1)(x+2)
    for p, k in [(3, 2), (2, 3), (2, 4), (5, 2), (7, 2), (3, 3)]:
        assert is_irreducible(default_modulus(p, k), p)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49])
def test_field_axioms(q):
    F = GF(q)
    assert F.inv(1) == 1
    for a in range(q):
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    g = F.primitive_element()
    assert len({F.pow(g, e) for e in range(q - 1)}) == q - 1
    a, b, c = 2 % q, (q - 1), (q // 2) or 1
    assert F.mul(F.add(a, b), c) == F.add(F.mul(a, c), F.mul(b, c))


def test_errors():
    with pytest.raises(FieldError):
        GF(6)
    with pytest.raises(ZeroDivisionError):
        GF(5).inv(0)
    assert prime_power(27) == (3, 3)

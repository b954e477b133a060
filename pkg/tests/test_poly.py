import random
from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from bracketforge.linalg import Realization, det3, vec3
from bracketforge.poly import (
    BracketPoly,
    bracket,
    const_col,
    lazy_minor_eval,
    point,
    symbolic_minor,
)

fracs = st.fractions(min_value=-9, max_value=9, max_denominator=6)
vecs = st.tuples(fracs, fracs, fracs)


def rand_realization(rng, d):
    return Realization(
        tuple(vec3(*(F(rng.randint(-9, 9), rng.randint(1, 3)) for _ in range(3))) for _ in range(d))
    )


def rand_poly(rng, d):
    """Random small combination of products of point brackets."""
    out = BracketPoly.zero()
    for _ in range(rng.randint(1, 3)):
        term = BracketPoly.const(F(rng.randint(-5, 5)))
        for _ in range(rng.randint(1, 2)):
            cols = rng.sample(range(1, d + 1), 3)
            term = term * bracket(*cols)
        out = out + term
    return out


def test_bracket_alternation():
    assert bracket(1, 2, 3) == -bracket(2, 1, 3)
    assert bracket(1, 2, 3) == bracket(2, 3, 1)
    assert bracket(1, 1, 3).is_zero()


@given(vecs, vecs, vecs, vecs, fracs)
def test_bracket_multilinear_in_constant_columns(a, b, c, d, t):
    a, b, c, d = (vec3(*v) for v in (a, b, c, d))
    mixed = vec3(*(x + t * y for x, y in zip(a, d)))
    lhs = bracket(const_col(mixed), const_col(b), const_col(c))
    rhs = bracket(const_col(a), const_col(b), const_col(c)) + bracket(
        const_col(d), const_col(b), const_col(c)
    ).scale(t)
    assert lhs == rhs


def test_bracket_eval_is_det3():
    rng = random.Random(3)
    for _ in range(30):
        g = rand_realization(rng, 5)
        i, j, k = rng.sample(range(1, 6), 3)
        assert bracket(i, j, k).eval(g) == det3(g.col(i), g.col(j), g.col(k))


def test_eval_is_ring_homomorphism():
    rng = random.Random(5)
    for _ in range(100):
        d = rng.randint(4, 6)
        p, q = rand_poly(rng, d), rand_poly(rng, d)
        g = rand_realization(rng, d)
        assert (p + q).eval(g) == p.eval(g) + q.eval(g)
        assert (p * q).eval(g) == p.eval(g) * q.eval(g)
        assert (-p).eval(g) == -p.eval(g)


def test_sign_normalization():
    p = bracket(1, 2, 3) * bracket(1, 4, 5)
    assert p.eq_up_to_sign(-p)
    assert p.sign_normalized() == (-p).sign_normalized()
    assert p.sign_normalized().leading_coeff() > 0
    assert not p.eq_up_to_sign(p * BracketPoly.const(F(2)))


def test_total_degree_and_columns():
    p = bracket(1, 2, 3) * bracket(2, 4, 5)
    assert p.total_degree() == 6
    assert p.columns() == {1, 2, 3, 4, 5}
    assert not p.mentions_q()


def test_symbolic_vs_lazy_minor():
    rng = random.Random(9)
    for _ in range(4):
        entries = [[bracket(*rng.sample(range(1, 6), 3)) for _ in range(3)] for _ in range(3)]
        rows, cols = (0, 1, 2), (0, 1, 2)
        sym = symbolic_minor(entries, rows, cols)
        for _ in range(3):
            g = rand_realization(rng, 5)
            assert sym.eval(g) == lazy_minor_eval(entries, rows, cols, g)


def test_to_text_round_shape():
    p = bracket(1, 2, 3)
    text = p.to_text()
    assert "x[" in text and text == bracket(1, 2, 3).to_text()
    assert BracketPoly.zero().to_text() == "0"

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tautilt import ffla
from tautilt.algebra import (
    AlgebraError, InfiniteDimensional, NonAdmissibleRelation, NonComposablePath,
    NonParallelRelation, SpecSyntaxError, UnknownSymbol, build_basis, format_algebra_spec,
    has_loop, multiply, opposite, parse_algebra_spec, quotient_by_idempotent,
    radical_power_basis,
)
from tautilt.corpus import CORPUS

from conftest import algebra

A3_TEXT = """# 1 -> 2 -> 3
field = 2
vertices = [1, 2, 3]
arrows = [["a", 1, 2],
          ["b", 2, 3]]
relations = ["a*b"]
"""


def names(A):
    return [b.name for b in A.basis]


def test_parse_and_basis_of_a3rad2():
    A = build_basis(parse_algebra_spec(A3_TEXT))
    assert A.dim == 5
    assert names(A) == ["e1", "e2", "e3", "a", "b"]
    assert not has_loop(A.quiver)
    assert not multiply(A, A.element("a"), A.element("b")).any()


def test_multiply_idempotents_and_arrows(a3):
    e1, e2, a = a3.element("e1"), a3.element("e2"), a3.element("a")
    assert np.array_equal(multiply(a3, e1, a), a)
    assert np.array_equal(multiply(a3, a, e2), a)
    assert not multiply(a3, a, e1).any()
    assert np.array_equal(multiply(a3, a3.unit(), a), a)


def test_linear_a3_has_composite_path():
    A = algebra("linear-a3")
    assert A.dim == 6
    ab = multiply(A, A.element("a"), A.element("b"))
    assert np.array_equal(ab, A.element("a*b"))


def test_commutativity_relation_identifies_paths():
    A = algebra("commutative-square")
    ac = multiply(A, A.element("a"), A.element("c"))
    bd = multiply(A, A.element("b"), A.element("d"))
    assert np.array_equal(ac, bd)
    assert A.dim == 9


def test_local_algebra_has_loop():
    A = algebra("local2")
    assert A.dim == 2 and has_loop(A.quiver)


def test_field_override():
    A = build_basis(parse_algebra_spec(A3_TEXT, field=3))
    assert A.p == 3 and A.dim == 5


def test_kronecker_dimension():
    assert algebra("kronecker").dim == 4


def test_loop_without_relations_is_infinite():
    spec = parse_algebra_spec('vertices = [1]\narrows = [["x", 1, 1]]\nrelations = []\n')
    with pytest.raises(InfiniteDimensional):
        build_basis(spec)


def test_oriented_cycle_without_relations_is_infinite():
    spec = parse_algebra_spec(
        'vertices = [1, 2]\narrows = [["a", 1, 2], ["b", 2, 1]]\nrelations = []\n')
    with pytest.raises(InfiniteDimensional):
        build_basis(spec)


@pytest.mark.parametrize("text, exc", [
    ('vertices = [1]\narrows = [["a", 1, 2]]\n', UnknownSymbol),
    ('vertices = [1, 2]\narrows = [["a", 1, 2]]\nrelations = ["a*a"]\n', NonComposablePath),
    ('vertices = [1, 2, 3]\narrows = [["a", 1, 2], ["b", 2, 3], ["c", 1, 3]]\n'
     'relations = ["a*b - c"]\n', NonAdmissibleRelation),
    ('vertices = [1, 2, 3]\narrows = [["a", 1, 2], ["b", 2, 3], ["c", 2, 3], ["d", 1, 2]]\n'
     'relations = ["a*b - d*a"]\n', NonComposablePath),
    ('vertices = [1, 2, 3, 4]\narrows = [["a", 1, 2], ["b", 2, 3], ["c", 1, 2], ["d", 2, 4]]\n'
     'relations = ["a*b - c*d"]\n', NonParallelRelation),
    ('vertices = [1, 2]\narrows = [["a", 1, 2]]\nrelations = ["a*z"]\n', UnknownSymbol),
])
def test_invalid_relations(text, exc):
    with pytest.raises(exc):
        parse_algebra_spec(text)


def test_syntax_error_has_line_number():
    with pytest.raises(SpecSyntaxError) as info:
        parse_algebra_spec("vertices = [1, 2]\narrows = [[\"a\", 1, 2]\nrelations = []\n")
    assert info.value.line is not None
    assert "line" in str(info.value)


def test_semantic_error_has_line_number():
    with pytest.raises(UnknownSymbol, match="line 3"):
        parse_algebra_spec('field = 2\nvertices = [1]\narrows = [["a", 1, 2]]\n')


@pytest.mark.parametrize("text", [
    "vertices = [1]\n",
    'vertices = [1]\narrows = []\ncolour = "red"\n',
    "field = 4\nvertices = [1]\narrows = []\n",
    "this is not a spec\n",
])
def test_malformed_files(text):
    with pytest.raises(SpecSyntaxError):
        parse_algebra_spec(text)


def test_format_round_trip():
    for name, entry in CORPUS.items():
        spec = entry.spec()
        again = parse_algebra_spec(format_algebra_spec(spec))
        assert build_basis(again).key == build_basis(spec).key, name


def test_opposite_is_involutive(a3):
    op = opposite(a3)
    assert opposite(op) is a3
    assert op.dim == a3.dim
    a = op.element("a")
    assert (op.basis[op.index("a")].source, op.basis[op.index("a")].target) == (2, 1)
    # a*b = 0 in A becomes b.a = 0 in the opposite
    assert not multiply(op, op.element("b"), a).any()


def test_quotient_by_idempotent(a3):
    Q, data = quotient_by_idempotent(a3, [3])
    assert names(Q) == ["e1", "e2", "a"]
    assert Q.vertices == (1, 2)
    assert not data.project(a3.element("b"), 2).any()
    assert quotient_by_idempotent(a3, [3])[0] is Q


def test_quotient_commutative_square():
    A = algebra("commutative-square")
    Q, _ = quotient_by_idempotent(A, [4])
    assert names(Q) == ["e1", "e2", "e3", "a", "b"]


def test_quotient_by_everything_fails(a3):
    with pytest.raises(AlgebraError):
        quotient_by_idempotent(a3, [1, 2, 3])


def test_radical_powers():
    A = algebra("commutative-square")
    assert radical_power_basis(A, 1).shape[0] == 5
    assert radical_power_basis(A, 2).shape[0] == 1
    assert radical_power_basis(A, 3).shape[0] == 0


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_unit_and_associativity(name):
    A = algebra(name)
    rng = np.random.default_rng(0)
    one = A.unit()
    for _ in range(20):
        x, y, z = (rng.integers(0, A.p, A.dim) for _ in range(3))
        assert np.array_equal(multiply(A, one, x), x % A.p)
        assert np.array_equal(multiply(A, x, one), x % A.p)
        lhs = multiply(A, multiply(A, x, y), z)
        rhs = multiply(A, x, multiply(A, y, z))
        assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_radical_is_nilpotent(name):
    A = algebra(name)
    assert radical_power_basis(A, A.dim + 1).shape[0] == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(CORPUS)), st.data())
def test_associativity_random_elements(name, data):
    A = algebra(name)
    vec = st.lists(st.integers(0, A.p - 1), min_size=A.dim, max_size=A.dim)
    x, y, z = (np.array(data.draw(vec)) for _ in range(3))
    assert np.array_equal(multiply(A, multiply(A, x, y), z), multiply(A, x, multiply(A, y, z)))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.sampled_from([2, 3, 5]), st.data())
def test_ffla_rank_nullity(rows, cols, p, data):
    M = np.array(data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=cols,
                                             max_size=cols), min_size=rows, max_size=rows)))
    N = ffla.nullspace(M, p)
    assert ffla.rank(M, p) + N.shape[0] == cols
    if N.shape[0]:
        assert not ((M @ N.T) % p).any()

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paramedial.affine import (
    AffineForm,
    CyclicGroup,
    ElemAbelian2Group,
    ParamedialConditionError,
    QuasigroupTable,
    invariant_proper_subgroups,
    is_latin,
    is_paramedial,
    is_simple,
    materialize,
    proper_subgroups,
    table_from_text,
    table_to_text,
)
from paramedial.modring import Mat2, Modulus, Residue, Unit, Vec2


def cyclic_form(p, k, phi, psi, c):
    m = Modulus(p, k)
    return AffineForm(CyclicGroup(m), Unit(Residue(phi, m)), Unit(Residue(psi, m)), Residue(c, m))


def elem2_form(p, phi, psi, c=(0, 0)):
    g = ElemAbelian2Group(p)
    return AffineForm(g, Mat2(*phi, p), Mat2(*psi, p), Vec2(*c, p))


def raw_table(op, n):
    return QuasigroupTable(n, tuple(tuple(op(x, y) for y in range(n)) for x in range(n)))


def paramedial_by_loop(table):
    # quadruple-by-quadruple reference check, independent of the
    # vectorized implementation
    t = table.rows
    n = table.n
    for x, y, u, v in itertools.product(range(n), repeat=4):
        if t[t[x][y]][t[u][v]] != t[t[v][y]][t[u][x]]:
            return False
    return True


def test_materialize_identity_automorphisms_gives_addition():
    table = materialize(cyclic_form(3, 1, 1, 1, 0))
    assert table.rows == tuple(tuple((x + y) % 3 for y in range(3)) for x in range(3))


def test_materialize_negation_form_is_paramedial():
    table = materialize(cyclic_form(3, 1, 2, 2, 0))
    assert table.rows == tuple(tuple((-x - y) % 3 for y in range(3)) for x in range(3))
    assert paramedial_by_loop(table)
    assert is_paramedial(table)


def test_order_two_quasigroup():
    table = materialize(cyclic_form(2, 1, 1, 1, 0))
    assert table.rows == ((0, 1), (1, 0))
    assert is_latin(table) and is_paramedial(table)


def test_subtraction_and_addition_are_paramedial():
    assert is_paramedial(raw_table(lambda x, y: (x - y) % 5, 5))
    assert is_paramedial(raw_table(lambda x, y: (x + y) % 5, 5))


def test_symmetric_group_table_is_not_paramedial():
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(i, j):
        a, b = perms[i], perms[j]
        return index[tuple(a[b[t]] for t in range(3))]

    table = raw_table(compose, 6)
    assert is_latin(table)
    assert not is_paramedial(table)
    assert not paramedial_by_loop(table)


def test_is_paramedial_matches_loop_reference_on_mixed_tables():
    tables = [
        raw_table(lambda x, y: (x - y) % 4, 4),
        raw_table(lambda x, y: (x + 2 * y) % 5, 5),
        raw_table(lambda x, y: (2 * x + y + 1) % 5, 5),
        raw_table(lambda x, y: (3 * x + 2 * y) % 7, 7),
    ]
    for t in tables:
        assert is_paramedial(t) == paramedial_by_loop(t)


def test_is_latin_counterexamples():
    assert not is_latin(QuasigroupTable(2, ((0, 0), (0, 0))))
    assert not is_latin(QuasigroupTable(2, ((0, 1), (0, 1))))
    assert is_latin(materialize(cyclic_form(5, 1, 2, 3, 4)))


def test_paramedial_condition_is_structural():
    with pytest.raises(ParamedialConditionError):
        cyclic_form(5, 1, 1, 2, 0)
    with pytest.raises(ParamedialConditionError):
        elem2_form(3, (1, 0, 0, 1), (1, 1, 0, 1))
    # psi = -phi always valid
    cyclic_form(5, 1, 2, 3, 0)
    elem2_form(3, (1, 0, 0, 2), (0, 1, 1, 0))


def test_affine_form_rejects_singular_matrices():
    with pytest.raises(ValueError):
        elem2_form(3, (1, 0, 0, 0), (1, 0, 0, 0))


CYCLIC_PAIRS_9 = [(phi, psi) for phi in range(1, 9) for psi in range(1, 9)
                  if phi % 3 and psi % 3 and (phi * phi - psi * psi) % 9 == 0]


@given(st.sampled_from(CYCLIC_PAIRS_9), st.integers(min_value=0, max_value=8))
@settings(max_examples=40)
def test_materialized_cyclic_forms_are_latin_paramedial(pair, c):
    table = materialize(cyclic_form(3, 2, pair[0], pair[1], c))
    assert is_latin(table)
    assert is_paramedial(table)


GL3 = [m for m in (Mat2(a, b, c, d, 3) for a in range(3) for b in range(3)
                   for c in range(3) for d in range(3)) if m.det() != 0]
ELEM2_PAIRS_3 = [(f, s) for f in GL3 for s in GL3 if f.square() == s.square()]


@given(st.sampled_from(ELEM2_PAIRS_3), st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=40)
def test_materialized_elem2_forms_are_latin_paramedial(pair, cx, cy):
    g = ElemAbelian2Group(3)
    form = AffineForm(g, pair[0], pair[1], Vec2(cx, cy, 3))
    table = materialize(form)
    assert is_latin(table)
    assert is_paramedial(table)


def test_serialization_round_trip_and_exact_text():
    table = materialize(cyclic_form(3, 1, 1, 1, 0))
    text = table_to_text(table)
    assert text == "order 3\n0 1 2\n1 2 0\n2 0 1\n"
    assert table_from_text(text) == table


def test_element_encoding_of_elem2():
    # (x, y) encodes as x*p + y: psi = identity, phi = identity, c = (1, 2)
    form = elem2_form(3, (1, 0, 0, 1), (1, 0, 0, 1), (1, 2))
    table = materialize(form)
    assert table.rows[0][0] == 1 * 3 + 2


def test_proper_subgroups():
    assert proper_subgroups(CyclicGroup(Modulus(3, 2))) == [(0, 3, 6)]
    assert proper_subgroups(CyclicGroup(Modulus(3, 1))) == []
    assert proper_subgroups(CyclicGroup(Modulus(2, 3))) == [(0, 2, 4, 6), (0, 4)]
    lines = proper_subgroups(ElemAbelian2Group(3))
    assert len(lines) == 4
    assert (0, 1, 2) in lines  # span of (0,1)
    assert (0, 3, 6) in lines  # span of (1,0)


def test_invariant_subgroups_cyclic_prime_square():
    form = cyclic_form(3, 2, 2, 2, 1)
    assert invariant_proper_subgroups(form) == [(0, 3, 6)]
    assert not is_simple(form)


def test_invariant_subgroups_shared_eigenbasis():
    form = elem2_form(3, (1, 0, 0, 2), (1, 0, 0, 2))
    subs = invariant_proper_subgroups(form)
    assert sorted(subs) == [(0, 1, 2), (0, 3, 6)]
    assert not is_simple(form)


def test_invariant_subgroups_irreducible_rotation():
    # x^2 - 2 has no root mod 3, so no eigenvector exists at all
    form = elem2_form(3, (0, 1, 2, 0), (0, 1, 2, 0))
    assert invariant_proper_subgroups(form) == []
    assert is_simple(form)


def test_simplicity_prime_order_and_mixed_pair():
    assert is_simple(cyclic_form(5, 1, 3, 2, 4))
    # phi diagonal, psi the swap: axes are phi's eigenlines but psi exchanges them
    assert is_simple(elem2_form(3, (1, 0, 0, 2), (0, 1, 1, 0)))

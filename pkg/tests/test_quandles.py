import itertools

import pytest

from quandlekit.errors import AssumptionViolated, InvalidInput, InvalidParameter
from quandlekit.groups import build_dihedral, build_symmetric
from quandlekit.quandles import (FiniteQuandle, automorphisms, check_quandle_axioms, compute_section,
                                 conj_quandle, dihedral_identification, dihedral_quandle,
                                 inner_action, inner_group, is_connected, is_faithful,
                                 is_homogeneous, lifted_operation, orbit, quandle_from_table,
                                 trivial_quandle)


@pytest.mark.parametrize("p", [3, 4, 5, 6, 9])
def test_dihedral_axioms(p):
    R = dihedral_quandle(p)
    assert check_quandle_axioms(R)
    assert all(R.star(x, y) == (2 * y - x) % p for x in R for y in R)
    assert all(R.star_inv(R.star(x, y), y) == x for x in R for y in R)


def test_dihedral_needs_three():
    with pytest.raises(InvalidParameter):
        dihedral_quandle(2)


def test_connectivity_and_faithfulness():
    assert is_connected(dihedral_quandle(5)) and is_faithful(dihedral_quandle(5))
    assert not is_connected(dihedral_quandle(4))
    assert orbit(dihedral_quandle(4), 0) == {0, 2}
    assert not is_faithful(trivial_quandle(3))
    assert is_homogeneous(dihedral_quandle(4))


def test_inner_and_automorphism_groups():
    R = dihedral_quandle(5)
    assert len(inner_group(R)) == 10
    assert len(automorphisms(R)) == 20
    assert inner_action(R, [(1, 1), (1, -1)]) == list(range(5))


def test_table_validation():
    with pytest.raises(InvalidInput):
        quandle_from_table([[0, 0], [1, 0]])
    with pytest.raises(InvalidInput):
        quandle_from_table([[1, 1], [0, 0]])
    rep = check_quandle_axioms([[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    assert rep.ok


def test_json_roundtrip():
    R = dihedral_quandle(5)
    back = FiniteQuandle.from_json(R.dumps())
    assert back.op == R.op and back.inv_op == R.inv_op and back.tag == R.tag


def test_conj_d6_is_r3():
    G = build_dihedral(3)
    Q, ctx = conj_quandle(G, G.generators["h"])
    assert Q.op == dihedral_quandle(3).op
    assert ctx.corrected and ctx.l == 2
    ident = dihedral_identification(ctx, 3)
    assert sorted(ident) == [0, 1, 2]
    R = dihedral_quandle(3)
    for x, y in itertools.product(range(3), repeat=2):
        assert Q.op[ident[x]][ident[y]] == ident[R.op[x][y]]


def _intertwining_sections(G, h, Q, ctx):
    cosets = [[g for g in G if G.conj(h, g) == e] for e in ctx.elements]
    return sum(all(lifted_operation(G, h, s[x], s[y]) == s[Q.op[x][y]]
                   for x in Q for y in Q)
               for s in itertools.product(*cosets))


@pytest.mark.parametrize("G,hl", [(build_dihedral(5), "h"), (build_dihedral(3), "h"),
                                  (build_symmetric(4), "1023")])
def test_section_search_matches_brute_force(G, hl):
    h = G.index(hl)
    Q, ctx = conj_quandle(G, h)
    exists = _intertwining_sections(G, h, Q, ctx) > 0
    assert ctx.corrected == exists
    s = ctx.section
    for x in Q:
        assert G.conj(h, s[x]) == ctx.elements[x]
    if exists:
        for x, y in itertools.product(range(Q.order), repeat=2):
            assert lifted_operation(G, h, s[x], s[y]) == s[Q.op[x][y]]


def test_section_needs_abelian_centralizer():
    G = build_symmetric(3)
    with pytest.raises(AssumptionViolated):
        compute_section(G, G.identity)

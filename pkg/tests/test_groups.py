import pytest

from quandlekit.errors import InvalidInput, InvalidParameter
from quandlekit.groups import (build_cyclic, build_dihedral, build_symmetric, centralizer,
                               check_group_axioms, conjugacy_class, direct_product,
                               group_from_table)


@pytest.mark.parametrize("G", [build_cyclic(6), build_dihedral(5), build_symmetric(4),
                               direct_product(build_cyclic(2), build_cyclic(3))])
def test_axioms(G):
    assert check_group_axioms(G) is None


def test_dihedral_structure():
    G = build_dihedral(5)
    h, x = G.generators["h"], G.generators["x"]
    assert G.order == 10
    assert G.power(h, 2) == G.identity and G.element_order(x) == 5
    assert G.conj(x, h) == G.inv(x)
    assert len(centralizer(G, h).elements) == 2
    assert len(conjugacy_class(G, h)) == 5
    assert not G.is_abelian()


def test_symmetric_and_labels():
    S = build_symmetric(3)
    assert S.order == 6 and S.index(S.label(4)) == 4
    with pytest.raises(InvalidParameter):
        S.index("nope")


def test_centralizer_presentation():
    G = build_dihedral(3)
    Z = centralizer(G, G.generators["x"])
    assert Z.is_abelian and len(Z.elements) == 3
    for g in Z.elements:
        assert Z.from_vector(Z.to_vector(g)) == g


def test_table_rejects_non_group():
    with pytest.raises(InvalidInput):
        group_from_table([[0, 1], [0, 1]])

import random

import pytest

from quandlekit.chains import FormalChain, HomogeneousCochain
from quandlekit.covers import (GroupPresentation, branched_cover_cycle, branched_cover_invariant,
                               cyclic_cover_presentation, cycle_defect, dw_lens,
                               evaluate_group_cocycle, is_group_cycle, restrict_representation,
                               restrict_to_rotations, torus_lens_comparison, transfer_cocycle,
                               wirtinger)
from quandlekit.errors import AssumptionViolated, InvalidParameter
from quandlekit.grouprings import GroupRingValue
from quandlekit.groups import build_dihedral
from quandlekit.knots import (ShadowColoring, builtin_diagram, complete_region_coloring,
                              enumerate_arc_colorings)
from quandlekit.quandles import conj_quandle

# aggregate of the cover cycle pairing = K * DW(L(3,1)) for the trefoil;
# fixed once by the brute-force comparison below
TREFOIL_CONSTANT = 3


def _conj(p):
    G = build_dihedral(p)
    Q, ctx = conj_quandle(G, G.generators["h"])
    return G, Q, ctx


def test_wirtinger_shapes():
    tref = wirtinger(builtin_diagram("trefoil"))
    assert len(tref.generators) == 3 and len(tref.relators) == 3
    assert all(len(w) == 4 for w in tref.relators)
    unk = wirtinger(builtin_diagram("unknot"))
    assert len(unk.generators) == 1 and unk.relators == []
    for name in ("unknot", "trefoil", "figure8"):
        ab = wirtinger(builtin_diagram(name)).abelianization()
        assert ab.free_rank == 1 and ab.torsion == ()


def test_presentation_rejects_unknown_generator():
    with pytest.raises(InvalidParameter):
        GroupPresentation(["a"], [((1, 1),)])


@pytest.mark.parametrize("name,fold,branched,free,torsion", [
    ("trefoil", 2, False, 1, (3,)),
    ("trefoil", 3, True, 0, (2, 2)),
    ("figure8", 2, False, 1, (5,)),
    ("figure8", 3, True, 0, (4, 4)),
    ("unknot", 4, True, 0, ()),
])
def test_cover_abelianizations(name, fold, branched, free, torsion):
    ab = cyclic_cover_presentation(builtin_diagram(name), fold, branched).abelianization()
    assert (ab.free_rank, ab.torsion) == (free, torsion)


def test_cover_fold_check():
    with pytest.raises(InvalidParameter):
        cyclic_cover_presentation(builtin_diagram("trefoil"), 1)


def test_representation_grid():
    G, Q, ctx = _conj(3)
    D = builtin_diagram("trefoil")
    colorings = enumerate_arc_colorings(D, Q)
    for A in colorings:
        rep = restrict_representation(D, ctx, A, 2)
        assert all(rep.values[0, s] == G.identity for s in range(2))
    const = next(A for A in colorings if len(set(A)) == 1)
    rep = restrict_representation(D, ctx, const, 2)
    assert len(set(rep.values.values())) <= 2
    with pytest.raises(AssumptionViolated):
        restrict_representation(D, ctx, colorings[-1], 3)


def test_cycle_arguments():
    G, Q, ctx = _conj(3)
    D = builtin_diagram("trefoil")
    A = (0, 0, 0)
    S = ShadowColoring(A, complete_region_coloring(D, Q, A, 0, 0))
    with pytest.raises(InvalidParameter):
        branched_cover_cycle(D, Q, ctx, S, 1)
    with pytest.raises(InvalidParameter):
        branched_cover_cycle(D, Q, ctx, S, 0, l=3)
    U = builtin_diagram("unknot")
    SU = ShadowColoring((1,), complete_region_coloring(U, Q, (1,), 0, 0))
    assert branched_cover_cycle(U, Q, ctx, SU, 1).terms == {}


def test_figure_eight_cycles():
    G, Q, ctx = _conj(5)
    D = builtin_diagram("figure8")
    for A in enumerate_arc_colorings(D, Q):
        for seed in (0, 3):
            S = ShadowColoring(A, complete_region_coloring(D, Q, A, 0, seed))
            assert is_group_cycle(branched_cover_cycle(D, Q, ctx, S, A[0], q=seed), G)


def test_boundary_check_detects_non_cycles():
    G = build_dihedral(3)
    C = FormalChain("group-hom", 3, {(0, 1, 3, 4): 1})
    assert cycle_defect(C, G).terms
    assert not is_group_cycle(C, G)


def test_pairing_constant_and_independence():
    G, Q, ctx = _conj(3)
    _, F = transfer_cocycle(3)
    D = builtin_diagram("trefoil")
    dw = dw_lens(3, 1, restrict_to_rotations(F, 3)).value
    base = branched_cover_invariant(D, Q, ctx, F)
    assert base == dw * TREFOIL_CONSTANT
    for q in range(3):
        for seed in range(3):
            assert branched_cover_invariant(D, Q, ctx, F, q=q, seed_color=seed) == base
    assert branched_cover_invariant(builtin_diagram("trefoil-r2"), Q, ctx, F) == base


def test_pairing_with_figure_eight():
    G, Q, ctx = _conj(5)
    _, F = transfer_cocycle(5)
    val = branched_cover_invariant(builtin_diagram("figure8"), Q, ctx, F)
    # the double branched cover of the figure-eight knot is L(5, 2)
    assert val == dw_lens(5, 2, restrict_to_rotations(F, 5)).value * 5


def test_evaluate_group_cocycle():
    G = build_dihedral(3)
    zero = HomogeneousCochain(6, 3, lambda *g: 0, 3)
    _, F = transfer_cocycle(3)
    rng = random.Random(2)
    C1 = FormalChain("group-hom", 3, {tuple(rng.randrange(6) for _ in range(4)): 1 for _ in range(6)})
    C2 = FormalChain("group-hom", 3, {tuple(rng.randrange(6) for _ in range(4)): 2 for _ in range(6)})
    assert evaluate_group_cocycle(zero, C1) == 0
    assert evaluate_group_cocycle(F, FormalChain("group-hom", 3, {(0, 0, 1, 2): 5})) == 0
    assert evaluate_group_cocycle(F, C1 + C2) == (evaluate_group_cocycle(F, C1)
                                                  + evaluate_group_cocycle(F, C2)) % 3
    with pytest.raises(InvalidParameter):
        evaluate_group_cocycle(F, FormalChain("delta", 3, {}))


def test_dw_examples():
    assert dw_lens(3, 1).value == GroupRingValue(3, {0: 1, 2: 2})
    assert dw_lens(5, 1).value == GroupRingValue(5, {0: 1, 1: 2, 4: 2})
    for p in (3, 5, 7):
        assert dw_lens(p, 0).value == GroupRingValue(p, {0: p})
        for q in range(p):
            assert {dw_lens(p, q, b=b).value for b in range(p)} == {dw_lens(p, q).value}
    assert dw_lens(3, 1, restrict_to_rotations(transfer_cocycle(3)[1], 3)).closed_form is None


def test_comparison_needs_odd_p():
    with pytest.raises(InvalidParameter):
        torus_lens_comparison(4)
    assert torus_lens_comparison(3).to_json()["match"] is True

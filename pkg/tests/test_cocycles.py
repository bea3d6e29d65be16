import itertools
import random

import pytest

from quandlekit.chains import (FormalChain, delta_boundary, delta_mod_inner, inner_canonical,
                               is_cocycle, is_left_invariant, is_right_invariant, normalize,
                               rack_boundary)
from quandlekit.cocycles import (average_negation, b1b2_homogeneous, dihedral_embedding,
                                 hom_to_inhom_cochain, phi, phi_pullback, phi_terms, psi,
                                 psi_pullback, psi_terms, right_invariantize, theta, theta_value,
                                 tilde_section_cocycle, transfer_d2p)
from quandlekit.errors import InvalidInput, InvalidParameter, ResourceLimit
from quandlekit.groups import build_dihedral
from quandlekit.quandles import conj_quandle, dihedral_identification, dihedral_quandle


def test_theta_parameters():
    with pytest.raises(InvalidParameter):
        theta(4, factor=1)
    with pytest.raises(InvalidParameter):
        theta(5, factor=3)
    assert is_cocycle(theta(5, factor=1))
    assert all(theta_value(5, x, x, z) == 0 for x in range(5) for z in range(5))


@pytest.mark.parametrize("p", [3, 5])
def test_b1b2_homogeneous_cocycle(p):
    f = b1b2_homogeneous(p)
    assert f.satisfies_cocycle() and f.satisfies_normalized()
    assert average_negation(f, p).satisfies_cocycle()


@pytest.mark.parametrize("p", [3, 5])
def test_transfer_properties(p):
    G, F = transfer_d2p(b1b2_homogeneous(p), p)
    assert G.order == 2 * p
    assert F.satisfies_cocycle() and F.satisfies_normalized()
    assert is_left_invariant(F, G)
    assert is_right_invariant(right_invariantize(F, G), G)
    assert is_cocycle(hom_to_inhom_cochain(G, F))


def test_transfer_needs_odd_p():
    with pytest.raises(InvalidParameter):
        transfer_d2p(b1b2_homogeneous(4), 4)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_section_transfer_is_twice_the_average(p):
    G = build_dihedral(p)
    Q, ctx = conj_quandle(G, G.generators["h"])
    _, F = transfer_d2p(b1b2_homogeneous(p), p)
    T = tilde_section_cocycle(ctx, right_invariantize(F, G))
    avg = average_negation(b1b2_homogeneous(p), p)
    ident = dihedral_identification(ctx, p)
    for t in itertools.product(range(p), repeat=4):
        assert T.table[tuple(ident[x] for x in t)] % p == 2 * avg.table[t] % p


def test_phi_example_degree_two():
    R = dihedral_quandle(5)
    s = R.star
    q, r, x, y = 1, 2, 3, 4
    want = {(q, r, x, y): 1}
    for sign, lab in [(-1, (q, s(r, x), x, y)), (-1, (q, s(r, y), s(x, y), y)),
                      (1, (q, s(s(r, x), y), s(x, y), y))]:
        want[lab] = want.get(lab, 0) + sign
    assert phi(FormalChain("rack", 2, {(r, x, y): 1}), R, q) == FormalChain("delta", 3, want)
    assert len(list(phi_terms(R, q, r, (x, y, 0)))) == 8


@pytest.mark.parametrize("p", [3, 5])
def test_phi_anticommutes_with_boundaries(p):
    # the unsigned map satisfies d phi = - phi d modulo the G_X action
    rng = random.Random(p)
    R = dihedral_quandle(p)
    canon = inner_canonical(R)
    hits = 0
    for _ in range(40):
        n = rng.randint(1, 3)
        c = FormalChain("rack", n, {tuple(rng.randrange(p) for _ in range(n + 1)): 1})
        lhs = delta_mod_inner(delta_boundary(phi(c, R, 0)), R, canon)
        rhs = delta_mod_inner(phi(rack_boundary(c, R), R, 0), R, canon)
        assert lhs == rhs * -1
        hits += lhs != rhs
    assert hits > 0


def test_phi_needs_regions_and_invariance():
    R = dihedral_quandle(3)
    with pytest.raises(InvalidParameter):
        phi(FormalChain("rack", 1, {(None, 0): 1}), R, 0)
    with pytest.raises(InvalidParameter):
        phi(FormalChain("delta", 1, {(0, 1): 1}), R, 0)
    with pytest.raises(InvalidInput):
        phi_pullback(b1b2_homogeneous(4), dihedral_quandle(4), 0)
    f = average_negation(b1b2_homogeneous(3), 3)
    assert phi_pullback(f, R, 0).values == theta(3).values


def test_psi_degenerate_terms_vanish():
    G, emb = dihedral_embedding(5)
    R = dihedral_quandle(5)
    for t in [(1, 1, 2), (0, 3, 3), (2, 2, 2, 4)]:
        assert normalize(psi(FormalChain("rack", len(t), {(None,) + t: 1}), R, emb), G).terms == {}


def test_psi_counts_and_cap():
    R = dihedral_quandle(3)
    assert len(list(psi_terms(R, (0, 1, 2, 0)))) == 24
    with pytest.raises(ResourceLimit):
        list(psi_terms(R, (0,) * 7))


def test_psi_pullback_of_transfer_is_nonzero_cocycle():
    G, F = transfer_d2p(b1b2_homogeneous(3), 3)
    _, emb = dihedral_embedding(3)
    pulled = psi_pullback(hom_to_inhom_cochain(G, F), dihedral_quandle(3), emb)
    assert is_cocycle(pulled) and not pulled.is_zero()

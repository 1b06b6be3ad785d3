"""Planar trees, their permutations and the blocks they generate."""

import pytest

from headorder.amalgam import WHOLE, amalgam_chain
from headorder.brauer import (
    PlanarBrauerTree,
    build_block,
    derive_permutations,
    hasse_invariant,
    head_order_report,
    nonexceptional_vertices,
    validate_tree,
)
from headorder.errors import BadRotation, NotATree, NotCoprime


def star(e, p, a, exceptional=0):
    # exceptional center, e leaves
    edges = tuple((0, i + 1) for i in range(e))
    rotations = (tuple(range(e)),) + tuple((i,) for i in range(e))
    return PlanarBrauerTree(
        exceptional=exceptional,
        edges=edges,
        dims=(1,) * e,
        rotations=rotations,
        p=p,
        a=a,
    )


def path3(p, a, exceptional=0):
    # vertices 0 - 1 - 2 - 3, edges 0, 1, 2
    return PlanarBrauerTree(
        exceptional=exceptional,
        edges=((0, 1), (1, 2), (2, 3)),
        dims=(1, 1, 1),
        rotations=((0,), (0, 1), (1, 2), (2,)),
        p=p,
        a=a,
    )


def test_validate_rejects_cycle():
    t = PlanarBrauerTree(
        exceptional=0,
        edges=((0, 1), (1, 2), (2, 0)),
        dims=(1, 1, 1),
        rotations=((0, 2), (0, 1), (1, 2)),
        p=7,
        a=1,
    )
    with pytest.raises(NotATree):
        validate_tree(t)


def test_validate_rejects_bad_rotation():
    t = star(2, 3, 1)
    bad = PlanarBrauerTree(
        exceptional=0,
        edges=t.edges,
        dims=t.dims,
        rotations=((0, 0), (0,), (1,)),
        p=3,
        a=1,
    )
    with pytest.raises(BadRotation):
        validate_tree(bad)


def test_validate_rejects_nondividing_e():
    with pytest.raises(ValueError):
        validate_tree(star(3, 5, 1))  # 3 does not divide 5 - 1 = 4


def test_validate_rejects_noncoprime_descent():
    t = star(2, 3, 1)
    bad = PlanarBrauerTree(
        exceptional=0,
        edges=t.edges,
        dims=t.dims,
        rotations=t.rotations,
        p=3,
        a=1,
        m=4,
        galois_r=2,
    )
    with pytest.raises(NotCoprime):
        validate_tree(bad)


def test_permutations_star():
    t = star(3, 7, 1)
    delta, rho, orbits = derive_permutations(t)
    # the center is at distance 0: delta rotates its cycle, rho fixes leaves
    assert delta == {0: 1, 1: 2, 2: 0}
    assert rho == {0: 0, 1: 1, 2: 2}
    assert orbits == ((0, 1, 2), (0,), (1,), (2,))


def test_permutations_path():
    t = path3(7, 1)
    delta, rho, orbits = derive_permutations(t)
    # distances 0,1,2,3 from vertex 0: delta acts at vertices 0 and 2
    assert delta == {0: 0, 1: 2, 2: 1}
    assert rho == {0: 1, 1: 0, 2: 2}
    assert orbits[0] == (0,)


def test_delta_rho_cover_each_edge_once():
    for t in [star(2, 3, 2), path3(7, 2), path3(7, 1, exceptional=1)]:
        delta, rho, _ = derive_permutations(t)
        assert set(delta) == set(range(t.e))
        assert set(rho) == set(range(t.e))


def test_build_block_shapes():
    t = star(2, 3, 2)
    B = build_block(t)
    # a = 2 stack components plus one per leaf
    assert len(B.components) == 2 + 2
    assert B.components[0].ram == (3 - 1) // 2
    assert B.components[1].ram == (9 - 3) // 2
    assert B.params == (3, 2, 2)
    # one stack gluing plus one per edge
    stack = [g for g in B.gluings if g.right[1] == WHOLE]
    assert len(stack) == 1 and stack[0].depth == (3 - 1) // 2
    edge_gluings = [g for g in B.gluings if g.right[1] != WHOLE]
    assert len(edge_gluings) == 2
    assert all(g.depth == 2 for g in edge_gluings)


def test_build_block_leaf_components_scaled():
    t = star(2, 3, 2)
    B = build_block(t)
    for comp in B.components[2:]:
        assert comp.n == 1 and comp.M == ((0,),)


def test_report_star_consistency():
    t = star(2, 3, 1)
    report = head_order_report(t)
    comps = report["components"]
    assert len(comps) == 1 + 2
    assert comps[0]["exceptional"] is True
    for entry in comps[1:]:
        assert entry["blocks"] == entry["predicted_blocks"]
        assert entry["grouped_dims"] == entry["predicted_dims"]


def test_report_matches_chain_terminal():
    t = path3(7, 1, exceptional=1)
    report = head_order_report(t)
    chain = amalgam_chain(build_block(t))
    assert report["chain_length"] == len(chain) - 1


def test_report_hasse_field():
    t = star(2, 3, 1)
    desc = PlanarBrauerTree(
        exceptional=0,
        edges=t.edges,
        dims=t.dims,
        rotations=t.rotations,
        p=3,
        a=1,
        m=5,
        galois_r=2,
    )
    report = head_order_report(desc)
    assert report["hasse"] == {"t": 3, "m": 5}  # 2 * 3 = 6 = 1 mod 5


def test_nonexceptional_vertices():
    assert nonexceptional_vertices(star(3, 7, 1)) == (1, 2, 3)
    assert nonexceptional_vertices(path3(7, 1, exceptional=2)) == (0, 1, 3)


def test_hasse_invariant():
    assert hasse_invariant(1, 1) == (1, 1)
    assert hasse_invariant(3, 8) == (3, 8)
    assert hasse_invariant(2, 5) == (3, 5)
    with pytest.raises(NotCoprime):
        hasse_invariant(2, 4)

"""Orbits, limit sampling, elementary types, Dirichlet domains, tiling,
chamber walks."""

import pytest

from hyperlat import (build_lattice, chamber_walk, dirichlet_domain,
                      dirichlet_halfspace, direct_sum, eichler_transvection,
                      elementary_type, group,
                      limit_points_sample, make_isometry, orbit, pick_cone,
                      point_from_ray, polytope_hypothesis_check, rank1,
                      reflection, tiling_check)
from hyperlat.cones import cone_from_halfspaces
from hyperlat.errors import FixedBasepoint, OnWall
from hyperlat.groups import elements_up_to
from hyperlat.model import to_ball

U = build_lattice([[0, 1], [1, 0]])
D12 = build_lattice([[1, 0], [0, -2]])
U_MINUS2 = direct_sum(U, rank1(-2))

O_D12 = pick_cone(D12, (1, 0))
O_UM2 = pick_cone(U_MINUS2, (1, 1, 0))

PELL = make_isometry(O_D12, [[3, 4], [2, 3]])
PELL_GROUP = group(PELL)
TRANSVECTION = eichler_transvection(O_UM2, (1, 0, 0), (0, 0, 1))
MIRROR = reflection(O_UM2, (0, 0, 1))


def test_orbit_depth0():
    x = point_from_ray(O_D12, (1, 0))
    assert [p.ray for p in orbit(PELL_GROUP, x, 0)] == [(1, 0)]


def test_orbit_pell_depth2():
    x = point_from_ray(O_D12, (1, 0))
    pts = orbit(PELL_GROUP, x, 2)
    # matrix powers: g(1,0) = (3,2), g^2(1,0) = (17,12), inverses mirror them
    assert sorted(p.ray for p in pts) == \
        sorted([(1, 0), (3, 2), (17, 12), (3, -2), (17, -12)])


def test_orbit_involution():
    x = point_from_ray(O_UM2, (2, 3, 1))
    pts = orbit(group(MIRROR), x, 3)
    assert sorted(p.ray for p in pts) == [(2, 3, -1), (2, 3, 1)]


def test_orbit_count_loxodromic_cyclic():
    x = point_from_ray(O_D12, (3, 1))
    for depth in (1, 2, 3, 5):
        assert len(orbit(PELL_GROUP, x, depth)) == 2 * depth + 1


def test_limits_pell_two_clusters():
    x = point_from_ray(O_D12, (1, 0))
    dirs = limit_points_sample(PELL_GROUP, x, 12)
    assert len(dirs) == 2
    # oracle: the loxodromic fixed rays (sqrt2, +-1) map to the two ends of
    # the 1-dimensional ball
    assert sorted(d[0] for d in dirs) == pytest.approx([-1.0, 1.0])


def test_limits_transvection_single_cluster():
    x = point_from_ray(O_UM2, (1, 1, 0))
    dirs = limit_points_sample(group(TRANSVECTION), x, 1500)
    assert len(dirs) == 1
    expected = to_ball(O_UM2, __import__("hyperlat").boundary_from_ray(O_UM2, (1, 0, 0)))
    got = dirs[0]
    assert sum((a - b) ** 2 for a, b in zip(got, expected)) ** 0.5 < 1e-3


def test_limits_finite_group_empty():
    x = point_from_ray(O_UM2, (2, 3, 1))
    assert limit_points_sample(group(MIRROR), x, 6) == []


def test_elementary_types():
    assert elementary_type(group(TRANSVECTION)) == "ParabolicType"
    assert elementary_type(PELL_GROUP) == "LoxodromicType"
    assert elementary_type(group(MIRROR)) == "EllipticType"
    # two transvections along the same axis: still parabolic type
    t2 = eichler_transvection(O_UM2, (1, 0, 0), (2, 0, 1))
    assert elementary_type(group(TRANSVECTION, t2)) == "ParabolicType"
    # a reflection whose mirror passes through the cusp still fixes it
    s_fixing = reflection(O_UM2, (1, 0, 1))
    assert U_MINUS2.pair((1, 0, 0), (1, 0, 1)) == 0
    assert elementary_type(group(TRANSVECTION, s_fixing)) == "ParabolicType"
    # a reflection moving the cusp: nothing detected
    s_moving = reflection(O_UM2, (0, 1, 1))
    assert elementary_type(group(TRANSVECTION, s_moving)) == "NotDetectedElementary"


def test_dirichlet_halfspace_pell():
    h = point_from_ray(O_D12, (1, 0))
    # oracle: g^-1 = [[3,-4],[-2,3]], so g^-1 h - h = (2,-2) ~ (1,-1)
    assert dirichlet_halfspace(h, PELL).normal == (1, -1)
    assert dirichlet_halfspace(h, PELL.inverse()).normal == (1, 1)


def test_dirichlet_halfspace_fixed_basepoint():
    h = point_from_ray(O_D12, (1, 0))
    with pytest.raises(FixedBasepoint):
        dirichlet_halfspace(h, make_isometry(O_D12, [[1, 0], [0, 1]]))


def test_dirichlet_domain_pell_slab():
    h = point_from_ray(O_D12, (1, 0))
    dom = dirichlet_domain(PELL_GROUP, h, 3)
    assert set(dom.halfspaces) == {(1, -1), (1, 1)}
    assert dom.truncated_at == 3
    assert set(dom.rays) == {(2, 1), (2, -1)}
    report = polytope_hypothesis_check(dom, O_D12)
    assert report["side_count"] == 2
    assert report["is_generalized_polytope"]
    assert report["cusp_candidates"] == []


def test_dirichlet_domain_trivial_group():
    ident = make_isometry(O_D12, [[1, 0], [0, 1]])
    h = point_from_ray(O_D12, (1, 0))
    dom = dirichlet_domain(group(ident), h, 4)
    assert dom.halfspaces == ()


def test_dirichlet_domain_mirror_bisector():
    s = reflection(O_UM2, (1, 0, 1))
    h = point_from_ray(O_UM2, (1, 1, 0))
    assert U_MINUS2.pair(h.ray, (1, 0, 1)) == 1  # h is off the mirror
    dom = dirichlet_domain(group(s), h, 3)
    assert dom.halfspaces == ((1, 0, 1),)


def test_dirichlet_domain_fixed_basepoint_error():
    h = point_from_ray(O_UM2, (1, 1, 0))  # on the mirror of (0,0,1)
    with pytest.raises(FixedBasepoint):
        dirichlet_domain(group(MIRROR), h, 2)


def test_tiling_pell_clean():
    h = point_from_ray(O_D12, (1, 0))
    dom = dirichlet_domain(PELL_GROUP, h, 3)
    report = tiling_check(dom, PELL_GROUP, 100, 8, seed=0)
    assert report["overlap_count"] == 0
    assert report["unreachable_count"] == 0
    assert report["passed"]


def test_tiling_trivial_group_vacuous():
    ident = make_isometry(O_D12, [[1, 0], [0, 1]])
    h = point_from_ray(O_D12, (1, 0))
    dom = dirichlet_domain(group(ident), h, 2)
    report = tiling_check(dom, group(ident), 50, 4, seed=0)
    assert report["passed"]


def test_tiling_negative_controls():
    h = point_from_ray(O_D12, (1, 0))
    # shrunken: extra wall cuts the true domain, leaving unreachable points
    shrunk = cone_from_halfspaces(D12, [(1, -1), (1, 1), (0, -1)],
                                  orientation=O_D12)
    report = tiling_check(shrunk, PELL_GROUP, 100, 8, seed=0)
    assert report["unreachable_count"] > 0
    # enlarged: dropping a wall creates interior overlaps between translates
    enlarged = cone_from_halfspaces(D12, [(1, -1)], orientation=O_D12)
    report2 = tiling_check(enlarged, PELL_GROUP, 100, 8, seed=0)
    assert report2["overlap_count"] > 0


def test_chamber_walk_already_inside():
    result = chamber_walk(O_UM2, (3, 4, -1), height=1)
    assert result.completed and result.word == () and result.point == (3, 4, -1)


def test_chamber_walk_one_step():
    result = chamber_walk(O_UM2, (2, 2, 1), height=1)
    assert result.completed
    assert result.point == (2, 2, -1)
    assert result.word == ((0, 0, 1),)


def test_chamber_walk_rootless_lattice():
    lat = build_lattice([[4, 0, 0], [0, -8, 0], [0, 0, -12]])
    o = pick_cone(lat, (1, 0, 0))
    result = chamber_walk(o, (3, 1, 1), height=6)
    assert result.completed and result.word == ()


def test_chamber_walk_strict_walls():
    # (2,2,1) pairs to zero with the root (0,1,1)
    assert U_MINUS2.pair((2, 2, 1), (0, 1, 1)) == 0
    with pytest.raises(OnWall):
        chamber_walk(O_UM2, (2, 2, 1), height=1, require_off_wall=True)


def test_chamber_walk_budget_flag():
    result = chamber_walk(O_UM2, (9, 14, 5), height=1, step_budget=1)
    assert not result.completed
    assert len(result.word) == 1


def test_elements_are_deduplicated():
    elems = elements_up_to(group(MIRROR), 5)
    assert len(elems) == 2  # identity and the reflection


def test_walk_image_stays_in_cone():
    result = chamber_walk(O_UM2, (9, 14, 5), height=1)
    assert result.completed
    lat = U_MINUS2
    assert lat.norm(result.point) == lat.norm((9, 14, 5))
    assert lat.pair(result.point, (1, 1, 0)) > 0
    roots = [v.coords for v in
             __import__("hyperlat").enumerate_norm_vectors(lat, -2, 1)]
    assert all(lat.pair(result.point, r) >= 0 for r in roots)

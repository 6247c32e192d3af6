"""Double description against brute force; facet reduction; hypothesis check."""

import itertools
import random

import pytest

from hyperlat import build_lattice, cone_from_halfspaces, extreme_rays, \
    pick_cone, polytope_hypothesis_check
from hyperlat.cones import (TAG_INTERIOR, TAG_ISOTROPIC, double_description,
                            irredundant_halfspaces)
from hyperlat.errors import DimensionBudgetExceeded
from hyperlat.linalg import dot, kernel_basis, primitive_vector, rank

U = build_lattice([[0, 1], [1, 0]])
D12 = build_lattice([[1, 0], [0, -2]])


def brute_extreme_rays(functionals, n):
    """Oracle for pointed cones: kernels of (n-1)-subsets, extremality by
    active-set rank, membership by all inequalities."""
    rays = set()
    idx = range(len(functionals))
    for subset in itertools.combinations(idx, n - 1):
        rows = [list(functionals[i]) for i in subset]
        if rank(rows) != n - 1:
            continue
        kern = kernel_basis([tuple(r) for r in rows])
        if len(kern) != 1:
            continue
        for cand in (kern[0], tuple(-x for x in kern[0])):
            if all(dot(f, cand) >= 0 for f in functionals):
                active = [list(f) for f in functionals if dot(f, cand) == 0]
                if rank(active) == n - 1:
                    rays.add(primitive_vector(cand))
    return sorted(rays)


def random_pointed_functionals(rng, n, count):
    while True:
        fns = []
        for _ in range(count):
            f = tuple(rng.randint(-4, 4) for _ in range(n))
            if any(f):
                fns.append(f)
        if not fns:
            continue
        if kernel_basis(fns):
            continue  # has lineality; resample
        return fns


def test_double_description_vs_brute_force_50_random_cones():
    rng = random.Random(2024)
    done = 0
    while done < 50:
        n = rng.randint(2, 4)
        count = rng.randint(n, 8)
        fns = random_pointed_functionals(rng, n, count)
        got_rays, lineality = double_description(fns, n)
        assert lineality == []
        expected = brute_extreme_rays(fns, n)
        assert sorted(got_rays) == expected, (fns, got_rays, expected)
        done += 1


def test_rays_satisfy_all_halfspaces():
    rng = random.Random(77)
    lat = build_lattice([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    for _ in range(20):
        normals = [tuple(rng.randint(-3, 3) for _ in range(3)) for _ in range(5)]
        normals = [w for w in normals if any(w)]
        cone = cone_from_halfspaces(lat, normals)
        vrep = extreme_rays(cone)
        for ray in vrep.rays:
            for w in cone.halfspaces:
                assert lat.pair(w, ray) >= 0


def test_quadrant_cone_in_u():
    o = pick_cone(U, (1, 1))
    # normals (0,1) and (1,0) give the inequalities x >= 0 and y >= 0
    cone = cone_from_halfspaces(U, [(0, 1), (1, 0)], orientation=o)
    vrep = extreme_rays(cone)
    assert set(vrep.rays) == {(1, 0), (0, 1)}
    assert set(vrep.ray_tags) == {TAG_ISOTROPIC}
    report = polytope_hypothesis_check(cone, o)
    assert report["is_generalized_polytope"]
    assert len(report["cusp_candidates"]) == 2


def test_single_halfspace_rank2():
    o = pick_cone(U, (1, 1))
    cone = cone_from_halfspaces(U, [(1, 1)], orientation=o)  # (w,x) = x + y >= 0
    vrep = extreme_rays(cone)
    # one quotient ray plus the boundary line as a +- pair
    assert len(vrep.rays) == 3
    line = [r for r in vrep.rays if U.pair((1, 1), r) == 0]
    assert len(line) == 2 and line[0] == tuple(-x for x in line[1])


def test_whole_cone_flagged():
    o = pick_cone(U, (1, 1))
    cone = cone_from_halfspaces(U, [], orientation=o)
    report = polytope_hypothesis_check(cone, o)
    assert not report["is_generalized_polytope"]
    assert report["side_count"] == 0


def test_pell_slab_rays_and_tags():
    o = pick_cone(D12, (1, 0))
    cone = cone_from_halfspaces(D12, [(1, -1), (1, 1)], orientation=o)
    vrep = extreme_rays(cone)
    assert set(vrep.rays) == {(2, 1), (2, -1)}
    assert set(vrep.ray_tags) == {TAG_INTERIOR}
    # x^2 = 2 y^2 has no rational solution, so no rational isotropic ray
    assert TAG_ISOTROPIC not in vrep.ray_tags
    report = polytope_hypothesis_check(cone, o)
    assert report["side_count"] == 2 and report["cusp_candidates"] == []


def test_redundant_halfspace_removed():
    o = pick_cone(D12, (1, 0))
    # (4,-3) is implied by the slab: it was derived from the Pell cube word
    cone = cone_from_halfspaces(D12, [(1, -1), (1, 1), (4, -3)], orientation=o)
    reduced = irredundant_halfspaces(cone)
    assert set(reduced.halfspaces) == {(1, -1), (1, 1)}
    assert set(reduced.rays) == {(2, 1), (2, -1)}


def test_dimension_budget():
    lat = build_lattice([[1 if i == j else 0 for j in range(7)] for i in range(7)])
    cone = cone_from_halfspaces(lat, [tuple(1 for _ in range(7))])
    with pytest.raises(DimensionBudgetExceeded):
        extreme_rays(cone)


def test_lower_dimensional_cone():
    lat = build_lattice([[1, 0], [0, 1]])
    # x >= 0 and -x >= 0 force the y-axis; both constraints must survive
    cone = cone_from_halfspaces(lat, [(1, 0), (-1, 0), (0, 1)])
    vrep = extreme_rays(cone)
    assert vrep.rays == ((0, 1),)
    reduced = irredundant_halfspaces(vrep)
    got = extreme_rays(reduced)
    assert got.rays == ((0, 1),)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gaugesep import (
    EmptySetError,
    HPolyhedron,
    InputError,
    OpenBall,
    OracleSet,
    build_D,
    conic_hull,
    conic_hull_membership,
    conic_hull_membership_search,
    contains,
    pick_interior_point,
    sample_interior,
)
from gaugesep.fixtures import disk_instance, halfspace_instance

from helpers import random_instance

DISK = OpenBall(np.array([2.0, 0.0]), np.sqrt(2.0))
HALFSPACE = HPolyhedron(np.array([[-1.0, 0.0, 0.0]]), np.array([0.0]), witness=np.array([1.0, -3.0, 0.0]))


def in_disk_cone(e):
    # hand-derived hull of the offset disk: {x > 0, |y| < x}
    return e[0] > 0 and abs(e[1]) < e[0]


class TestContains:
    def test_disk_center(self):
        assert contains(DISK, np.array([2.0, 0.0]))

    def test_origin_outside_disk(self):
        # (0-2)^2 + 0 = 4 > 2
        assert not contains(DISK, np.array([0.0, 0.0]))

    def test_halfspace_witness(self):
        assert contains(HALFSPACE, np.array([1.0, -3.0, 0.0]))

    def test_strictness_on_boundary(self):
        assert not contains(HALFSPACE, np.array([0.0, 1.0, 1.0]))

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            contains(DISK, np.array([1.0, 0.0, 0.0]))

    def test_membership_convexity_spot_check(self):
        rng = np.random.default_rng(0)
        for a_set in (DISK, HALFSPACE):
            pts = sample_interior(a_set, 500, seed=1)
            for _ in range(500):
                u, v = pts[rng.integers(len(pts))], pts[rng.integers(len(pts))]
                for lam in (0.25, 0.5, 0.75):
                    assert contains(a_set, lam * u + (1 - lam) * v)


class TestConicHullMembership:
    def test_disk_cone_examples(self):
        assert conic_hull_membership(DISK, np.array([2.0, 1.0]))
        assert not conic_hull_membership(DISK, np.array([1.0, 2.0]))
        # the stored radius is fl(sqrt(2)), so the exact boundary ray sits
        # inside a ~1e-16 band; test it from a band's distance away
        assert not conic_hull_membership(DISK, np.array([1.0, 1.0 + 1e-9]))
        assert conic_hull_membership(DISK, np.array([1.0, 1.0 - 1e-9]))

    def test_halfspace_cone_is_itself(self):
        assert conic_hull_membership(HALFSPACE, np.array([5.0, 9.0, -3.0]))
        assert not conic_hull_membership(HALFSPACE, np.array([-1.0, 2.0, 2.0]))

    def test_origin_never_in_hull_of_origin_free_set(self):
        assert not conic_hull_membership(DISK, np.zeros(2))
        assert not conic_hull_membership(HALFSPACE, np.zeros(3))

    def test_origin_in_hull_when_set_contains_it(self):
        ball = OpenBall(np.array([0.5, 0.0]), 1.0)
        assert conic_hull_membership(ball, np.zeros(2))

    def test_positive_homogeneity(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            e = rng.normal(size=2) * 3
            alpha = rng.uniform(1e-3, 10.0)
            assert conic_hull_membership(DISK, e) == conic_hull_membership(DISK, alpha * e)

    def test_disk_cone_matches_hand_formula(self):
        rng = np.random.default_rng(3)
        for _ in range(1000):
            e = rng.uniform(-3, 3, size=2)
            if abs(abs(e[1]) - e[0]) < 1e-9:
                continue
            assert conic_hull_membership(DISK, e) == in_disk_cone(e)

    def test_closed_form_agrees_with_search_on_polyhedron(self):
        # square whose hull is the same wedge as the disk's
        square = HPolyhedron(
            np.array([[-1.0, 0.0], [1.0, 0.0], [0.0, -1.0], [0.0, 1.0]]),
            np.array([-1.0, 3.0, 1.0, 1.0]),
        )
        rng = np.random.default_rng(4)
        disagreements = 0
        for _ in range(1000):
            e = rng.uniform(-3, 3, size=2)
            if abs(abs(e[1]) - e[0]) < 1e-6 or np.linalg.norm(e) < 1e-6:
                continue  # search resolution is grid-limited on the boundary
            if conic_hull_membership(square, e) != conic_hull_membership_search(square, e):
                disagreements += 1
        assert disagreements == 0

    def test_closed_form_agrees_with_search_on_ball(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            e = rng.uniform(-3, 3, size=2)
            if abs(abs(e[1]) - e[0]) < 1e-6 or np.linalg.norm(e) < 1e-6:
                continue
            assert conic_hull_membership(DISK, e) == conic_hull_membership_search(DISK, e)

    def test_oracle_path_uses_search(self):
        oracle = OracleSet(2, lambda e: float(np.linalg.norm(e - [2.0, 0.0])) < np.sqrt(2.0), witness=np.array([2.0, 0.0]))
        assert conic_hull_membership(oracle, np.array([2.0, 1.0]))
        assert not conic_hull_membership(oracle, np.array([1.0, 2.0]))


class TestConicHullSets:
    def test_polyhedral_hull_rows(self):
        square = HPolyhedron(
            np.array([[-1.0, 0.0], [1.0, 0.0], [0.0, -1.0], [0.0, 1.0]]),
            np.array([-1.0, 3.0, 1.0, 1.0]),
        )
        hull = conic_hull(square)
        assert isinstance(hull, HPolyhedron)
        np.testing.assert_allclose(hull.b, 0.0, atol=1e-15)
        # integer data makes the wedge exact: the boundary ray is excluded
        assert not hull.contains(np.array([1.0, 1.0]))
        rng = np.random.default_rng(6)
        for _ in range(500):
            e = rng.uniform(-3, 3, size=2)
            if abs(abs(e[1]) - e[0]) < 1e-9:
                continue
            assert hull.contains(e) == in_disk_cone(e)

    def test_halfspace_hull_is_halfspace(self):
        hull = conic_hull(HALFSPACE)
        assert isinstance(hull, HPolyhedron)
        rng = np.random.default_rng(7)
        for _ in range(200):
            e = rng.normal(size=3) * 4
            assert hull.contains(e) == (e[0] > 0)

    def test_hull_avoids_subspace_when_set_does(self):
        rng = np.random.default_rng(8)
        trials = 0
        while trials < 1000:
            a_set, s = random_instance(rng, int(rng.integers(2, 5)))
            if s.dim == 0:
                continue
            coords = rng.uniform(-10, 10, size=s.dim)
            point = coords @ s.basis
            assert not conic_hull_membership(a_set, point)
            trials += 1


class TestBuildD:
    def test_disk_cross_polytope(self):
        body = build_D(DISK, np.array([1.0, 0.0]))
        assert body.contains(np.array([0.5, 0.4]))
        assert not body.contains(np.array([0.5, 0.6]))

    def test_halfspace_slab(self):
        body = build_D(HALFSPACE, np.array([1.0, -3.0, 0.0]))
        assert body.contains(np.array([0.9, 100.0, -100.0]))
        assert not body.contains(np.array([1.1, 0.0, 0.0]))

    def test_origin_always_member(self):
        for a_set, x in ((DISK, np.array([1.0, 0.0])), (HALFSPACE, np.array([1.0, -3.0, 0.0]))):
            assert build_D(a_set, x).contains(np.zeros(a_set.dim))

    def test_anchor_outside_hull_rejected(self):
        with pytest.raises(InputError):
            build_D(DISK, np.array([-1.0, 0.0]))

    def test_balanced_and_convex_sampled(self):
        rng = np.random.default_rng(9)
        body = build_D(DISK, np.array([1.0, 0.0]))
        members = []
        while len(members) < 60:
            e = rng.uniform(-1, 1, size=2)
            if body.contains(e):
                members.append(e)
        for _ in range(1000):
            u = members[rng.integers(len(members))]
            v = members[rng.integers(len(members))]
            assert body.contains(-u)
            assert body.contains(0.5 * (u + v))

    @given(st.floats(-0.99, 0.99))
    @settings(max_examples=40, deadline=None)
    def test_anchor_segment_inside(self, t):
        # every t*anchor with |t| < 1 lies in the symmetrized body
        body = build_D(DISK, np.array([1.0, 0.0]))
        assert body.contains(t * np.asarray(body.anchor))


class TestPickInteriorPoint:
    def test_ball_center(self):
        np.testing.assert_allclose(pick_interior_point(DISK), [2.0, 0.0])

    def test_unbounded_polyhedron_uses_witness(self):
        point = pick_interior_point(HALFSPACE)
        np.testing.assert_allclose(point, [1.0, -3.0, 0.0])

    def test_unbounded_without_witness_rejected(self):
        bare = HPolyhedron(np.array([[-1.0, 0.0, 0.0]]), np.array([0.0]))
        with pytest.raises(InputError):
            pick_interior_point(bare)

    def test_boxed_halfspace_center(self):
        rows = [[-1.0, 0.0, 0.0]]
        offs = [0.0]
        for j in range(3):
            e = [0.0, 0.0, 0.0]
            e[j] = 1.0
            rows.append(list(e))
            offs.append(10.0)
            rows.append([-v for v in e])
            offs.append(10.0)
        center = pick_interior_point(HPolyhedron(np.array(rows), np.array(offs)))
        assert center[0] == pytest.approx(5.0, abs=1e-6)

    def test_empty_polyhedron(self):
        empty = HPolyhedron(np.array([[1.0], [-1.0]]), np.array([0.0, -1.0]))
        with pytest.raises(EmptySetError):
            pick_interior_point(empty)

    def test_oracle_without_witness(self):
        oracle = OracleSet(2, lambda e: bool(np.all(np.abs(e) < 1)))
        with pytest.raises(InputError):
            pick_interior_point(oracle)


class TestSampleInterior:
    @pytest.mark.parametrize("fixture", [disk_instance, halfspace_instance])
    def test_samples_are_members(self, fixture):
        a_set, _, _ = fixture()
        pts = sample_interior(a_set, 500, seed=3)
        assert all(contains(a_set, p) for p in pts)

    def test_deterministic(self):
        first = sample_interior(DISK, 100, seed=5)
        second = sample_interior(DISK, 100, seed=5)
        assert np.array_equal(first, second)

    def test_oracle_walk(self):
        oracle = OracleSet(2, lambda e: bool(np.all(np.abs(e) < 1)), witness=np.zeros(2))
        pts = sample_interior(oracle, 200, seed=7)
        assert all(oracle.contains(p) for p in pts)
        assert np.std(pts) > 0.05  # the walk actually moves


class TestValidation:
    def test_zero_row_rejected(self):
        with pytest.raises(InputError):
            HPolyhedron(np.array([[0.0, 0.0]]), np.array([1.0]))

    def test_bad_radius(self):
        with pytest.raises(InputError):
            OpenBall(np.array([0.0]), 0.0)

    def test_shape_mismatch(self):
        with pytest.raises(InputError):
            HPolyhedron(np.array([[1.0, 0.0]]), np.array([1.0, 2.0]))

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.core.errors import SingularFrame, SingularMatrix, UnsupportedSpec
from src.core.frames.frames import (
    INVARIANT_DIMENSIONS,
    change_of_basis,
    in_subgroup,
    induced_inner_product,
    orbit_invariant,
    random_element,
    random_frame,
    same_orbit,
    unimodular_inner_product,
)
from src.core.frames.types import ConformalClass, DeterminantClass, Frame, InnerProduct, eta
from src.core.groups.groupfactory import GroupFactory
from src.core.groups.spec import SubgroupSpec, parse_subgroup

TAGS = ["O(1,3)", "SO(1,3)", "O(4)", "W(1,3)", "SL", "Id"]


def test_eta_is_mostly_plus():
    np.testing.assert_array_equal(eta(1, 3), np.diag([-1.0, 1.0, 1.0, 1.0]))


def test_parse_subgroup_tags():
    assert parse_subgroup("O(1,3)") == SubgroupSpec("O", (1, 3), parse_subgroup("O(1,3)").tolerance)
    assert parse_subgroup("SO(3)").signature == (0, 3)
    assert parse_subgroup("W").tag == "Weyl"
    assert parse_subgroup("Id").tag == "Identity"
    with pytest.raises(UnsupportedSpec):
        parse_subgroup("U(5)")
    with pytest.raises(UnsupportedSpec):
        parse_subgroup("SL(1,3)")
    with pytest.raises(UnsupportedSpec):
        parse_subgroup("O(1,3)").with_dim(3)


def test_change_of_basis_recombines_columns(rng):
    b1 = random_frame(4, rng)
    b2 = random_frame(4, rng)
    h = change_of_basis(b1, b2)
    np.testing.assert_allclose(b1.matrix @ h, b2.matrix, atol=1e-12)


def test_singular_frames_are_rejected():
    with pytest.raises(SingularFrame):
        Frame(np.array([[1.0, 2.0], [2.0, 4.0]]))
    with pytest.raises(SingularFrame):
        Frame(np.ones((2, 3)))
    with pytest.raises(SingularMatrix):
        in_subgroup(np.zeros((2, 2)), parse_subgroup("SL"))


def test_frame_matrix_is_read_only():
    b = Frame.standard(3)
    with pytest.raises(ValueError):
        b.matrix[0, 0] = 2.0


def test_identical_bases_share_every_orbit(rng):
    b = random_frame(4, rng)
    for tag in TAGS:
        assert same_orbit(b, b, parse_subgroup(tag))


def test_scaled_basis_leaves_orthogonal_orbit_but_not_conformal_class():
    b = Frame(np.eye(4))
    b2 = Frame(2.0 * np.eye(4))
    assert not same_orbit(b, b2, parse_subgroup("O(1,3)"))
    weyl = parse_subgroup("W(1,3)")
    assert same_orbit(b, b2, weyl)
    assert orbit_invariant(b, weyl).matches(orbit_invariant(b2, weyl), 1e-12)


def test_invariant_kinds():
    b = Frame.standard(4)
    assert isinstance(orbit_invariant(b, parse_subgroup("O(1,3)")), InnerProduct)
    assert isinstance(orbit_invariant(b, parse_subgroup("W(1,3)")), ConformalClass)
    assert isinstance(orbit_invariant(b, parse_subgroup("SL")), DeterminantClass)
    np.testing.assert_allclose(orbit_invariant(b, parse_subgroup("O(1,3)")).matrix, eta(1, 3))


def test_invariant_dimensions_match_quotients():
    n = 4
    assert INVARIANT_DIMENSIONS["inner_product"](n) == 10
    assert INVARIANT_DIMENSIONS["conformal_class"](n) == 9
    assert INVARIANT_DIMENSIONS["determinant_class"](n) == 1
    assert INVARIANT_DIMENSIONS["frame"](n) == 16


@pytest.mark.parametrize("tag", TAGS)
def test_orbit_invariant_is_constant_on_orbits(tag, rng):
    spec = parse_subgroup(tag).with_dim(4)
    for _ in range(200):
        b = random_frame(4, rng)
        h = random_element(spec, 4, rng)
        assert in_subgroup(h, spec)
        moved = b.acted_on(h)
        assert orbit_invariant(b, spec).matches(orbit_invariant(moved, spec), 1e-9)
        assert same_orbit(b, moved, spec)


@pytest.mark.parametrize("tag", TAGS)
def test_same_orbit_is_an_equivalence(tag, rng):
    spec = parse_subgroup(tag).with_dim(4)
    for _ in range(100):
        a = random_frame(4, rng)
        b = a.acted_on(random_element(spec, 4, rng))
        c = b.acted_on(random_element(spec, 4, rng))
        other = random_frame(4, rng)
        assert same_orbit(a, a, spec)
        assert same_orbit(a, b, spec) and same_orbit(b, a, spec)
        assert same_orbit(a, c, spec)
        assert same_orbit(a, other, spec) == same_orbit(other, a, spec)


@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=2 ** 32 - 1))
@settings(max_examples=50, deadline=None)
def test_orthonormal_frame_of_induced_inner_product(n, seed):
    b = random_frame(n, np.random.default_rng(seed))
    p = induced_inner_product(b, (1, n - 1))
    np.testing.assert_allclose(b.matrix.T @ p @ b.matrix, eta(1, n - 1), atol=1e-9)


@given(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=2 ** 32 - 1))
@settings(max_examples=50, deadline=None)
def test_unimodular_pair(p, seed):
    n = 4
    b = random_frame(n, np.random.default_rng(seed))
    inv = unimodular_inner_product(b, (p, n - p))
    assert inv.epsilon == (-1) ** p
    assert np.linalg.det(inv.inner_product.matrix) * inv.determinant ** 2 == pytest.approx(inv.epsilon)


def test_group_dimensions():
    assert GroupFactory(parse_subgroup("O(1,3)"), 4).dim(4) == 6
    assert GroupFactory(parse_subgroup("W(1,3)"), 4).dim(4) == 7
    assert GroupFactory(parse_subgroup("SL"), 4).dim(4) == 15
    assert GroupFactory(parse_subgroup("Id"), 4).dim(4) == 0


def test_special_orthogonal_excludes_reflections():
    r = np.diag([1.0, -1.0, 1.0])
    assert in_subgroup(r, parse_subgroup("O(3)"))
    assert not in_subgroup(r, parse_subgroup("SO(3)"))


@pytest.mark.parametrize("tag", TAGS)
def test_membership_is_a_plain_bool(tag, rng):
    group = GroupFactory(parse_subgroup(tag), 4)
    member = group.contains(group.random_element(4, rng))
    outsider = group.contains(np.diag([3.0, 1.0, 1.0, 1.0]))
    assert type(member) is bool and member
    assert type(outsider) is bool and not outsider

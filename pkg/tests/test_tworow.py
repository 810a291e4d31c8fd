import pytest

from weyltasep.errors import InvalidConfig, InvalidWall, ZeroParameter
from weyltasep.markov import exact_stationary
from weyltasep.models import DStarParams, STAR, build_dstar
from weyltasep.ratio import R, ZERO
import weyltasep.tworow as tr
from weyltasep.tworow import (
    count_segment,
    enumerate_configs,
    label_counts,
    project_top_row,
    q_weight,
    tstar,
    tstar_bar,
    validate,
)


def cfg(*cols):
    return tuple(t for t, _ in cols), tuple(b for _, b in cols)


Z = (0, 0)
S = (STAR, STAR)
U = (1, 1)
DN = (-1, -1)
RISE = (-1, 1)
FALL = (1, -1)

POINTS = [
    DStarParams(R(2, 3), R(3, 7), R(1, 2), R(5, 11)),
    DStarParams(R(1, 2), R(1, 2), R(1, 2), R(1, 2)),
    DStarParams(R(9, 10), R(1, 5), R(2, 5), R(7, 9)),
]


def test_listed_configuration_sets():
    got = set(enumerate_configs(3, 1))
    assert got == {
        cfg(Z, FALL, S),
        cfg(Z, RISE, S),
        cfg(S, Z, S),
        cfg(S, FALL, Z),
        cfg(S, RISE, Z),
    }
    got = set(enumerate_configs(4, 0))
    assert got == {
        cfg(S, RISE, RISE, S),
        cfg(S, RISE, FALL, S),
        cfg(S, U, DN, S),
        cfg(S, FALL, RISE, S),
        cfg(S, FALL, FALL, S),
    }


def test_validity():
    assert not validate(cfg(S, U, U, S))  # unbalanced
    assert not validate(cfg(S, DN, U, S))  # dips below the axis
    assert not validate(cfg(Z, S, Z))  # star inside
    assert not validate(cfg(U, DN))  # borders must be 0/*
    assert not validate(((0, 1), (0, -1)))  # 0 must pair with 0
    assert validate(cfg(Z, U, DN, Z))
    assert len(enumerate_configs(2, 2)) == 1


def test_label_counts_examples():
    assert label_counts(cfg(Z, Z, Z)) == tr.LabelCounts(0, 0, 0, 0)
    # adjacent up/down stretch inside stars: the up-step still carries a
    # label (the product-form stationary law forces it)
    assert label_counts(cfg(S, U, DN, S)) == tr.LabelCounts(1, 0, 1, 1)
    # level steps at the axis
    assert label_counts(cfg(S, RISE, Z)) == tr.LabelCounts(1, 0, 1, 0)
    assert label_counts(cfg(Z, FALL, S)) == tr.LabelCounts(0, 1, 0, 1)
    # a z' blocks later y labels
    assert label_counts(cfg(S, FALL, RISE, S)) == tr.LabelCounts(0, 1, 1, 1)
    # interior of a block is never labelled
    assert label_counts(cfg(S, U, RISE, DN, S)) == tr.LabelCounts(1, 0, 1, 1)
    with pytest.raises(InvalidConfig):
        label_counts(cfg(U, DN))


def test_q_weight_examples():
    p_all1 = DStarParams(1, 1, 1, 1)
    assert q_weight(cfg(Z, Z), p_all1) == 1
    p = DStarParams(R(1, 2), 1, 1, 1)
    assert q_weight(cfg(S, RISE, Z), p) == 2
    p = DStarParams(R(1, 2), R(1, 3), R(1, 5), R(1, 7))
    assert q_weight(cfg(S, RISE, Z), p) == 6  # one y (2) and the left star (3)
    # a vanishing non-starred rate under a label is a hard error
    from types import SimpleNamespace

    broken = SimpleNamespace(alpha=R(1), alpha_star=R(1), beta=ZERO, beta_star=R(1))
    with pytest.raises(ZeroParameter):
        q_weight(cfg(Z, FALL, S), broken)


def test_q_weight_ignores_zero_starred_rates():
    p = DStarParams(1, 0, 1, 0)
    assert q_weight(cfg(S, Z, S), p) == 1


def test_wall_map_examples():
    # left border creation of a star column
    assert tstar(cfg(Z, RISE, S), 1) == cfg(S, Z, S)
    # no matching rule holds the configuration
    assert tstar(cfg(S, RISE, Z), 2) == cfg(S, RISE, Z)
    with pytest.raises(InvalidWall):
        tstar(cfg(S, Z, S), 3)
    with pytest.raises(InvalidConfig):
        tstar(cfg(U, DN), 1)
    # bulk relocation: the pair crosses a run and lands as a column
    assert tstar(cfg(S, U, DN, Z), 2) == cfg(S, RISE, FALL, Z)
    assert tstar(cfg(S, U, DN, S), 2) == cfg(S, RISE, FALL, S)


def test_extended_wall_map_regression():
    # the full map on the five 3-column single-zero configurations
    a1, a2 = cfg(Z, FALL, S), cfg(Z, RISE, S)
    b = cfg(S, Z, S)
    c1, c2 = cfg(S, FALL, Z), cfg(S, RISE, Z)
    expected = {
        (a1, 1): (a1, 1),
        (a1, 2): (a2, 1),
        (a2, 1): (b, 1),
        (a2, 2): (a2, 2),
        (b, 1): (a1, 2),
        (b, 2): (c2, 1),
        (c1, 1): (c1, 1),
        (c1, 2): (b, 2),
        (c2, 1): (c1, 2),
        (c2, 2): (c2, 2),
    }
    for (c, i), out in expected.items():
        assert tstar_bar(c, i) == out
    assert len(set(expected.values())) == 10


@pytest.mark.parametrize("n", range(2, 7))
def test_wall_map_is_a_bijection(n):
    for n0 in range(0, min(n, 2) + 1):
        cfgs = enumerate_configs(n, n0)
        seen = set()
        for c in cfgs:
            for i in range(1, n):
                out = tstar_bar(c, i)
                assert validate(out[0])
                seen.add(out)
        assert len(seen) == len(cfgs) * (n - 1)


@pytest.mark.parametrize("params", POINTS)
def test_transfer_identity(params):
    for n in range(3, 7):
        for n0 in range(0, min(n, 2) + 1):
            for c in enumerate_configs(n, n0):
                qc = q_weight(c, params)
                for i in range(1, n):
                    c2, rule, j = tr._apply(c, i)
                    if rule is None:
                        continue
                    _, back, _ = tr._apply(c2, j)
                    assert tr.rate_of(rule, params) * qc == tr.rate_of(
                        back, params
                    ) * q_weight(c2, params)


@pytest.mark.parametrize("n,n0", [(3, 1), (4, 0), (4, 1), (4, 2), (5, 1)])
def test_product_form_equals_exact_solve(n, n0):
    for params in POINTS:
        dist, z = tr.stationary(n, n0, params)
        assert sum(dist.values(), ZERO) == 1
        assert exact_stationary(tr.kernel(n, n0, params)) == dist


def test_restricted_class_stationary():
    # both starred rates zero: the law is uniform over the doubly starred
    # zero-free configurations when the boundary rates are 1
    params = DStarParams(1, 0, 1, 0)
    dist, z = tr.stationary(3, 0, params)
    live = {c: p for c, p in dist.items() if p > 0}
    assert set(live) == {cfg(S, RISE, S), cfg(S, FALL, S)}
    assert all(p == R(1, 2) for p in live.values())
    assert z == 2
    assert exact_stationary(tr.kernel(3, 0, params)) == dist


def test_kernel_rows_sum_to_one():
    ker = tr.kernel(4, 1, POINTS[0])
    for row in ker.rows:
        assert sum(row.values(), ZERO) == 1


@pytest.mark.parametrize("n,n0", [(3, 1), (4, 2), (5, 3), (5, 1)])
def test_top_row_projection_matches_starred_chain(n, n0):
    for params in POINTS:
        top = project_top_row(tr.stationary(n, n0, params)[0])
        assert top == exact_stationary(build_dstar(n, n0, params))


def test_point_mass_projection():
    from weyltasep.markov import Dist

    c = cfg(S, Z, S)
    assert project_top_row(Dist({c: R(1)})) == Dist({c[0]: R(1)})


def test_count_segment():
    from weyltasep.closedform import ballot, catalan

    assert count_segment(2, 2) == 1
    assert count_segment(3, 1) == 14
    for k in range(0, 8):
        assert count_segment(k, 0) == catalan(k + 1)
    for k in range(0, 10):
        for n0 in range(k + 1):
            assert count_segment(k, n0) == ballot(k + n0 + 1, k - n0)

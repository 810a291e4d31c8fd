import pytest

from weyltasep.errors import InvalidCounts, UnsupportedKind
from weyltasep.markov import communicating_classes
from weyltasep.models import (
    DStarParams,
    build_dstar,
    build_multi,
    build_semipermeable,
    build_two_species,
    dstar_states,
    enumerate_states,
    first_move_patterns_d,
    multi_states,
    reversal_bijection,
    theta_move_patterns,
    two_species_states,
)
from weyltasep.ratio import R, ZERO
from weyltasep.weyl import WeylKind, kac_weights, theta_raises

CCHECK = WeylKind("Ccheck", 1)
B = WeylKind("B", 2)
D = WeylKind("D", 2)


def test_state_space_sizes():
    assert len(multi_states(WeylKind("B", 2), 2)) == 8
    assert len(multi_states(WeylKind("D", 3), 3)) == 24
    assert dstar_states(3, 1) == [
        (0, -1, "*"),
        (0, 1, "*"),
        ("*", -1, 0),
        ("*", 0, "*"),
        ("*", 1, 0),
    ]
    assert len(two_species_states(4, 2)) == 6 * 4
    assert enumerate_states(("dstar", 3, 1)) == dstar_states(3, 1)


def test_unsupported_kinds():
    with pytest.raises(UnsupportedKind):
        build_multi(WeylKind("C", 3), 3)
    with pytest.raises(UnsupportedKind):
        build_multi(WeylKind("Bcheck", 3), 3)


def test_multispecies_transition_probabilities():
    ker = build_multi(WeylKind("Ccheck", 2), 2)
    assert ker.prob((2, 1), (1, 2)) == R(1, 3)
    ker = build_multi(WeylKind("B", 3), 3)
    assert ker.prob((1, 3, 2), (1, -2, -3)) == R(1, 6)
    ker = build_multi(WeylKind("D", 3), 3)
    assert ker.prob((-1, -2, 3), (2, 1, 3)) == R(1, 4)


def test_two_species_transition_probabilities():
    ker = build_two_species(WeylKind("Ccheck", 3), 3, 1)
    assert ker.prob((1, 0, -1), (0, 1, -1)) == R(1, 4)
    ker = build_two_species(WeylKind("B", 3), 3, 2)
    assert ker.prob((0, 1, 0), (0, 0, -1)) == R(1, 6)
    ker = build_two_species(WeylKind("B", 3), 3, 1)
    assert ker.prob((0, 1, -1), (0, -1, 1)) == R(1, 6)
    ker = build_two_species(WeylKind("D", 3), 3, 0)
    assert ker.prob((1, 1, 1), (1, -1, -1)) == R(1, 4)


def test_dstar_transition_probabilities():
    p = DStarParams(R(1, 3), R(1, 5), R(1, 7), R(1, 11))
    ker = build_dstar(3, 1, p)
    assert ker.prob(("*", -1, 0), ("*", 1, 0)) == R(1, 2) * R(1, 3)
    assert ker.prob((0, -1, "*"), ("*", 0, "*")) == R(1, 2)
    assert ker.prob((0, 1, "*"), (0, -1, "*")) == R(1, 2) * R(1, 7)  # sign drop at the star
    ker = build_dstar(4, 1, p)
    assert ker.prob(("*", 1, 0, "*"), ("*", 0, 1, "*")) == R(1, 3)  # bulk swap
    assert ker.prob(("*", 1, 0, "*"), ("*", 1, -1, 0)) == R(1, 3) * R(1, 11)


def test_dstar_frozen_at_two_sites():
    ker = build_dstar(2, 1, DStarParams(1, 1, 1, 1))
    for s in ker.states:
        assert ker.prob(s, s) == 1


def test_rows_sum_to_one():
    kernels = [
        build_multi(WeylKind("B", 3), 3),
        build_multi(WeylKind("D", 3), 3),
        build_two_species(WeylKind("D", 4), 4, 2),
        build_dstar(4, 1, DStarParams(R(1, 2), R(1, 3), R(1, 5), R(1, 7))),
        build_semipermeable(3, 1, R(2, 3), R(3, 5)),
    ]
    for ker in kernels:
        for row in ker.rows:
            assert sum(row.values(), ZERO) == 1


@pytest.mark.parametrize("family,n", [("B", 2), ("B", 3), ("B", 4), ("D", 3), ("D", 4)])
def test_highest_root_edge_matches_raising(family, n):
    # the last edge moves exactly at states raised by the highest-root
    # generator and lands at states that are not raised
    kind = WeylKind(family, n)
    wk = kac_weights(kind)
    p_edge = R(wk.weights[n], wk.total)
    pats = theta_move_patterns(n)
    for w in multi_states(kind, n):
        has_move = (w[-2], w[-1]) in pats
        assert has_move == theta_raises(w, kind)
        if has_move:
            target = w[:-2] + pats[(w[-2], w[-1])]
            assert not theta_raises(target, kind)
            ker_prob = build_multi(kind, n).prob(w, target)
            assert ker_prob >= p_edge
        if family == "D":
            first = first_move_patterns_d(n)
            # mirrored rule at the left end: dominant entry negative
            a, b = w[0], w[1]
            dominant = a if abs(a) > abs(b) else b
            assert ((a, b) in first) == (dominant < 0)


def test_pattern_tables_match_sign_rule():
    pats = theta_move_patterns(5)
    for (a, b), (c, d) in pats.items():
        assert (c, d) == (-b, -a)
        assert (a if abs(a) > abs(b) else b) > 0
    first = first_move_patterns_d(5)
    for (a, b), (c, d) in first.items():
        assert (c, d) == (-b, -a)
        assert (a if abs(a) > abs(b) else b) < 0


def test_edge_probabilities_match_weights():
    # boundary/bulk selection probabilities per family, read off the tables
    for n in (3, 4, 5):
        kw = kac_weights(WeylKind("Ccheck", n))
        assert all(R(a, kw.total) == R(1, n + 1) for a in kw.weights)
        kw = kac_weights(WeylKind("B", n))
        probs = [R(a, kw.total) for a in kw.weights]
        assert probs[: n - 1] == [R(1, n)] * (n - 1)
        assert probs[n - 1 :] == [R(1, 2 * n)] * 2
        kw = kac_weights(WeylKind("D", n))
        probs = [R(a, kw.total) for a in kw.weights]
        assert probs[0] == probs[1] == probs[n - 1] == probs[n] == R(1, 2 * (n - 1))
        assert all(p == R(1, n - 1) for p in probs[2 : n - 1])


@pytest.mark.parametrize("family", ["Ccheck", "D"])
def test_reversal_invariance(family):
    # reversing the lattice and negating species is a kernel automorphism
    for n in range(3, 7):
        for n0 in (0, 1, 2):
            ker = build_two_species(WeylKind(family, n), n, n0)
            for s in ker.states:
                row = ker.row(s)
                mirrored = ker.row(reversal_bijection(s))
                assert {reversal_bijection(t): p for t, p in row.items()} == mirrored


def test_invalid_counts():
    with pytest.raises(InvalidCounts):
        build_two_species(WeylKind("B", 3), 3, 5)
    with pytest.raises(InvalidCounts):
        DStarParams(0, 1, 1, 1)

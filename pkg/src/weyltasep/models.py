"""Exclusion-process kernels on a path: multispecies, two-species, starred.

States are tuples.  Multispecies states are signed-permutation windows
(species -n..-1, 1..n, one of each absolute value per site); two-species
states are words over {-1, 0, 1} with a fixed number of zeros; starred
states allow ``"*"`` at the boundary sites.

Boundary moves are generated as literal pattern tables (one entry per
species pair), mirroring how the transition rules are usually written; the
equivalent "sign of the dominant entry" rule is kept to tests.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidCounts, InvalidRank, UnsupportedKind
from .markov import Kernel, build_kernel
from .ratio import R
from .weyl import WeylKind, kac_weights, signed_permutations

STAR = "*"

MULTI_FAMILIES = ("Ccheck", "B", "D")


def state_sort_key(word):
    """Deterministic ordering for states that may contain the star symbol."""
    return tuple((1, 0) if x == STAR else (0, x) for x in word)


@dataclass(frozen=True)
class DStarParams:
    """Boundary rates of the starred two-species process."""

    alpha: object
    alpha_star: object
    beta: object
    beta_star: object

    def __post_init__(self):
        vals = {
            "alpha": R(self.alpha),
            "alpha_star": R(self.alpha_star),
            "beta": R(self.beta),
            "beta_star": R(self.beta_star),
        }
        for name, v in vals.items():
            object.__setattr__(self, name, v)
            if not 0 <= v <= 1:
                raise InvalidCounts(f"{name} outside [0,1]")
        if self.alpha <= 0 or self.beta <= 0:
            raise InvalidCounts("alpha and beta must be positive")


def multi_states(kind: WeylKind, n: int) -> list:
    if kind.family not in MULTI_FAMILIES:
        raise UnsupportedKind(f"no multispecies model for family {kind.family}")
    return sorted(signed_permutations(n, even_only=kind.family == "D"))


def two_species_states(n: int, n0: int) -> list:
    if not 0 <= n0 <= n:
        raise InvalidCounts(f"need 0 <= n0 <= n, got n0={n0}, n={n}")
    states = []
    for zeros in itertools.combinations(range(n), n0):
        zs = set(zeros)
        rest = [i for i in range(n) if i not in zs]
        for signs in itertools.product((1, -1), repeat=len(rest)):
            w = [0] * n
            for i, s in zip(rest, signs):
                w[i] = s
            states.append(tuple(w))
    return sorted(states)


def dstar_states(n: int, n0: int) -> list:
    if n < 2:
        raise InvalidRank("starred process needs n >= 2")
    if not 0 <= n0 <= n:
        raise InvalidCounts(f"need 0 <= n0 <= n, got n0={n0}, n={n}")
    states = []
    for ends in itertools.product((0, STAR), repeat=2):
        inner_zeros = n0 - list(ends).count(0)
        if inner_zeros < 0 or inner_zeros > n - 2:
            continue
        for word in two_species_states(n - 2, inner_zeros):
            states.append((ends[0],) + word + (ends[1],))
    return sorted(states, key=state_sort_key)


def enumerate_states(descriptor: tuple) -> list:
    """Dispatch on ('multi', kind, n) / ('two', kind, n, n0) / ('dstar', n, n0)."""
    tag = descriptor[0]
    if tag == "multi":
        return multi_states(descriptor[1], descriptor[2])
    if tag == "two":
        return two_species_states(descriptor[2], descriptor[3])
    if tag == "dstar":
        return dstar_states(descriptor[1], descriptor[2])
    raise ValueError(f"unknown state-space descriptor {descriptor!r}")


@lru_cache(maxsize=None)
def theta_move_patterns(n: int) -> dict:
    """Last-two-site moves (a, b) -> (-b, -a), tabulated pairwise."""
    pats = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            pats[(j, i)] = (-i, -j)
            pats[(j, -i)] = (i, -j)
            pats[(i, j)] = (-j, -i)
            pats[(-i, j)] = (-j, i)
    return pats


@lru_cache(maxsize=None)
def first_move_patterns_d(n: int) -> dict:
    """First-two-site moves of the D family, tabulated pairwise."""
    pats = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            pats[(-i, -j)] = (j, i)
            pats[(i, -j)] = (j, -i)
            pats[(-j, -i)] = (i, j)
            pats[(-j, i)] = (-i, j)
    return pats


def _swap(word, k):
    lst = list(word)
    lst[k], lst[k + 1] = lst[k + 1], lst[k]
    return tuple(lst)


def _replace2(word, k, pair):
    lst = list(word)
    lst[k], lst[k + 1] = pair
    return tuple(lst)


def _flip(word, k):
    lst = list(word)
    lst[k] = -lst[k]
    return tuple(lst)


def build_multi(kind: WeylKind, n: int) -> Kernel:
    """Kernel of the multispecies process for families Ccheck, B, D.

    Edge l (0..n) is selected with probability a_l / sum(a) where a are the
    family's step weights; the selected edge then moves deterministically
    when its pattern matches, otherwise the state holds.
    """
    fam = kind.family
    if fam not in MULTI_FAMILIES:
        raise UnsupportedKind(f"no multispecies kernel for family {fam}")
    if n < (2 if fam in ("B", "D") else 1):
        raise InvalidRank(f"family {fam} multispecies model needs larger n")
    wk = WeylKind(fam, n)
    weights = kac_weights(wk)
    total = weights.total
    theta_pats = theta_move_patterns(n)
    d_first = first_move_patterns_d(n) if fam == "D" else None

    def moves(w):
        for ell in range(n + 1):
            p = R(weights.weights[ell], total)
            if 1 <= ell <= n - 1:
                if w[ell - 1] > w[ell]:
                    yield _swap(w, ell - 1), p
            elif ell == 0:
                if fam == "D":
                    tgt = d_first.get((w[0], w[1]))
                    if tgt is not None:
                        yield _replace2(w, 0, tgt), p
                elif w[0] < 0:
                    yield _flip(w, 0), p
            else:  # ell == n
                if fam == "Ccheck":
                    if w[-1] > 0:
                        yield _flip(w, n - 1), p
                else:
                    tgt = theta_pats.get((w[-2], w[-1]))
                    if tgt is not None:
                        yield _replace2(w, n - 2, tgt), p

    return build_kernel(multi_states(kind, n), moves)


TWO_THETA = {(1, 1): (-1, -1), (0, 1): (-1, 0), (1, 0): (0, -1)}
TWO_FIRST_D = {(-1, -1): (1, 1), (-1, 0): (0, 1), (0, -1): (1, 0)}


def build_two_species(kind: WeylKind, n: int, n0: int) -> Kernel:
    """Kernel of the two-species process for families Ccheck, B, D."""
    fam = kind.family
    if fam not in MULTI_FAMILIES:
        raise UnsupportedKind(f"no two-species kernel for family {fam}")
    if not 0 <= n0 <= n:
        raise InvalidCounts(f"need 0 <= n0 <= n, got {n0}")
    if n < (2 if fam in ("B", "D") else 1):
        raise InvalidRank(f"family {fam} two-species model needs larger n")
    weights = kac_weights(WeylKind(fam, n))
    total = weights.total

    def moves(w):
        for ell in range(n + 1):
            p = R(weights.weights[ell], total)
            if 1 <= ell <= n - 1:
                if w[ell - 1] > w[ell]:
                    yield _swap(w, ell - 1), p
            elif ell == 0:
                if fam == "D":
                    tgt = TWO_FIRST_D.get((w[0], w[1]))
                    if tgt is not None:
                        yield _replace2(w, 0, tgt), p
                elif w[0] == -1:
                    yield _flip(w, 0), p
            else:
                if fam == "Ccheck":
                    if w[-1] == 1:
                        yield _flip(w, n - 1), p
                else:
                    tgt = TWO_THETA.get((w[-2], w[-1]))
                    if tgt is not None:
                        yield _replace2(w, n - 2, tgt), p

    return build_kernel(two_species_states(n, n0), moves)


def build_dstar(n: int, n0: int, params: DStarParams) -> Kernel:
    """Kernel of the starred two-species process on n sites.

    Edges 1..n-1 are uniform; the outer edges carry the boundary rates.
    For n = 2 no move pattern is realizable and every state holds.
    """
    states = dstar_states(n, n0)
    if not states:
        raise InvalidCounts(f"empty state space for n={n}, n0={n0}")
    a, a_s = params.alpha, params.alpha_star
    b, b_s = params.beta, params.beta_star
    edge = R(1, n - 1)

    def moves(w):
        if n == 2:
            return
        # Left boundary edge.
        x, y = w[0], w[1]
        if x == STAR and y == -1:
            yield _replace2(w, 0, (STAR, 1)), edge * a
        elif x == STAR and y == 0:
            yield _replace2(w, 0, (0, 1)), edge * a_s
        elif x == 0 and y == -1:
            yield _replace2(w, 0, (STAR, 0)), edge
        # Bulk edges.
        for ell in range(2, n - 1):
            if w[ell - 1] > w[ell]:
                yield _swap(w, ell - 1), edge
        # Right boundary edge.
        x, y = w[n - 2], w[n - 1]
        if y == STAR and x == 1:
            yield _replace2(w, n - 2, (-1, STAR)), edge * b
        elif y == STAR and x == 0:
            yield _replace2(w, n - 2, (-1, 0)), edge * b_s
        elif x == 1 and y == 0:
            yield _replace2(w, n - 2, (0, STAR)), edge

    return build_kernel(states, moves)


def build_semipermeable(n: int, n0: int, alpha, beta) -> Kernel:
    """Open-boundary two-species kernel whose middle species never crosses.

    Species 1 enters as a sign flip at the first site (rate alpha relative
    to bulk), exits at the last site (rate beta); zeros are conserved.  The
    discrete chain selects among n+1 edges uniformly and scales the
    boundary moves by the rates.
    """
    alpha, beta = R(alpha), R(beta)
    if alpha <= 0 or beta <= 0:
        raise InvalidCounts("boundary rates must be positive")
    edge = R(1, n + 1)

    def moves(w):
        if w[0] == -1:
            yield _flip(w, 0), edge * alpha
        for ell in range(1, n):
            if w[ell - 1] > w[ell]:
                yield _swap(w, ell - 1), edge
        if w[-1] == 1:
            yield _flip(w, n - 1), edge * beta

    return build_kernel(two_species_states(n, n0), moves)


def reversal_bijection(w):
    """Reverse a two-species word and negate it (a kernel symmetry)."""
    return tuple(-x for x in reversed(w))

"""Closed formulas: ballot machinery, partition functions, correlations,
and the limiting directions of the reduced alcove walks.

Everything here evaluates exactly over the rationals.  Each closed form has
an independent exact route in the test-suite (stationary solves of the
matching chains, brute-force path enumeration, or the two-row model).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import RangeError, UnsupportedRange, ZeroParameter
from .markov import Dist, Kernel, exact_stationary
from .models import STAR, DStarParams, build_multi
from .ratio import ONE, R, ZERO
from .tworow import project_top_row
from .tworow import stationary as tworow_stationary
from .weyl import WeylKind, inverse_act_theta, theta_raises


def comb0(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def ballot(n: int, k: int) -> int:
    """Ballot number: binom(n+k, n) - binom(n+k, n+1), for 0 <= k <= n."""
    if n == -1 and k == 0:
        return 1
    if not 0 <= k <= n:
        raise RangeError(f"ballot index k={k} outside 0..{n}")
    return comb(n + k, n) - comb0(n + k, n + 1)


def ballot0(n: int, k: int) -> int:
    """Ballot number extended by zero outside its triangle (and B(-1,0)=1)."""
    if n == -1 and k == 0:
        return 1
    if n < 0 or k < 0 or k > n:
        return 0
    return ballot(n, k)


def catalan(n: int) -> int:
    if n < 0:
        raise RangeError("negative Catalan index")
    return ballot(n, n)


def m_poly(k: int, beta):
    """Sum of ballot(k, k-i) * beta^(-i) over i = 0..k."""
    beta = R(beta)
    if beta == 0:
        raise ZeroParameter("beta must be nonzero")
    return sum((ballot(k, k - i) / beta**i for i in range(k + 1)), ZERO)


def v_poly(k: int, alpha, beta):
    """Double ballot sum: sum of ballot(k-1, k-i-j) alpha^-i beta^-j."""
    alpha, beta = R(alpha), R(beta)
    if alpha == 0 or beta == 0:
        raise ZeroParameter("alpha and beta must be nonzero")
    if k == 0:
        return ONE
    total = ZERO
    for i in range(k + 1):
        for j in range(k - i + 1):
            c = ballot0(k - 1, k - i - j)
            if c:
                total += c / (alpha**i * beta**j)
    return total


def enumerate_bicolored_motzkin(k: int, alpha, beta):
    """Brute-force generating function of weighted bicolored Motzkin paths.

    Steps: up, down, and two colors of level step.  A second-color level
    step on the axis weighs 1/beta; up-steps from the axis and first-color
    level steps on the axis weigh 1/alpha, except that alpha-weights to the
    right of any beta-weight are not counted.  Independent oracle for
    :func:`v_poly`.
    """
    alpha, beta = R(alpha), R(beta)
    if alpha == 0 or beta == 0:
        raise ZeroParameter("alpha and beta must be nonzero")
    total = ZERO
    for steps in itertools.product(("u", "d", "r", "b"), repeat=k):
        h = 0
        ok = True
        w = ONE
        seen_beta = False
        for s in steps:
            if s == "u":
                if h == 0 and not seen_beta:
                    w = w / alpha
                h += 1
            elif s == "d":
                h -= 1
                if h < 0:
                    ok = False
                    break
            elif s == "r":
                if h == 0 and not seen_beta:
                    w = w / alpha
            else:
                if h == 0:
                    w = w / beta
                    seen_beta = True
        if ok and h == 0:
            total += w
    return total


def z_semiperm(n: int, n0: int, alpha, beta):
    """Partition function of the semipermeable two-species process."""
    alpha, beta = R(alpha), R(beta)
    if alpha <= 0 or beta <= 0:
        raise ZeroParameter("alpha and beta must be positive")
    if n0 < 0:
        raise RangeError("negative zero count")
    if alpha == beta:
        return sum(
            ((k + 1) * ballot0(n + n0 - 1, n - n0 - k) / alpha**k
             for k in range(n - n0 + 1)),
            ZERO,
        )
    # Unequal-rates branch; the k+1 exponent makes it the analytic
    # continuation of the equal-rates branch (their beta -> alpha limits
    # agree), which the exact kernels confirm.
    denom = 1 / beta - 1 / alpha
    total = ZERO
    for k in range(n - n0 + 1):
        c = ballot0(n + n0 - 1, n - n0 - k)
        if c:
            total += c * (1 / beta ** (k + 1) - 1 / alpha ** (k + 1)) / denom
    return total


def semiperm_density(n: int, n0: int, j: int, alpha, beta):
    """Probability that site j holds a 1 in the semipermeable process."""
    if not 1 <= j <= n or not 0 <= n0 <= n:
        raise RangeError(f"bad indices j={j}, n={n}, n0={n0}")
    alpha, beta = R(alpha), R(beta)
    zn = z_semiperm(n, n0, alpha, beta)
    total = ZERO
    for i in range(n - j):
        total += catalan(i) * z_semiperm(n - i - 1, n0, alpha, beta) / zn
    tail = sum(
        (ballot0(n - j - 1, n - j - k) / beta ** (k + 1) for k in range(n - j + 1)),
        ZERO,
    )
    total += z_semiperm(j - 1, n0, alpha, beta) / zn * tail
    return total


def ccheck_last_density(n: int, i: int):
    """Probability of species i at the last site of the Ccheck chain.

    Computed as a difference of semipermeable densities at adjacent zero
    counts; equals (2i+1)/(2n(2n+1)).
    """
    if not 1 <= i <= n:
        raise RangeError(f"species {i} outside 1..{n}")
    return semiperm_density(n, i - 1, n, 1, 1) - semiperm_density(n, i, n, 1, 1)


@dataclass(frozen=True)
class CorrelationTable:
    """Exact probabilities of value pairs at the two final sites."""

    entries: dict
    z: object
    context: str

    def cell(self, i, j):
        return self.entries.get((i, j), ZERO)

    def to_json_obj(self) -> dict:
        from .ratio import fmt_ratio

        return {
            "context": self.context,
            "z": fmt_ratio(self.z),
            "cells": [
                {"i": i, "j": j, "p": fmt_ratio(p)}
                for (i, j), p in sorted(self.entries.items())
            ],
        }


def z_b(n: int, n0: int) -> int:
    """Partition function of the B-type two-species process."""
    if not 0 <= n0 <= n:
        raise RangeError(f"bad zero count {n0}")
    return comb(2 * n, n - n0)


def b_pair_table(n: int, n0: int) -> CorrelationTable:
    """Final-pair probabilities of the B-type two-species process."""
    z = z_b(n, n0)
    raw = {
        (-1, -1): comb0(2 * n - 2, n - n0 - 2),
        (-1, 0): ballot0(n + n0 - 1, n - n0 - 1) if n0 >= 1 else 0,
        (-1, 1): comb0(2 * n - 2, n - n0 - 2),
        (0, -1): ballot0(n + n0 - 2, n - n0 - 1),
        (0, 0): ballot0(n + n0 - 3, n - n0),
        (0, 1): ballot0(n + n0 - 2, n - n0 - 1),
        (1, -1): 2 * comb0(2 * n - 3, n - n0 - 2),
        (1, 0): ballot0(n + n0 - 2, n - n0 - 1),
        (1, 1): 2 * comb0(2 * n - 3, n - n0 - 2),
    }
    entries = {ij: R(v, z) for ij, v in raw.items()}
    return CorrelationTable(entries, R(z), f"two-species B, n={n}, n0={n0}")


def z_d(n: int, n0: int) -> int:
    """Partition function of the D-type two-species process."""
    if not 0 <= n0 <= n:
        raise RangeError(f"bad zero count {n0}")
    if n0 == 0:
        return 4**n
    return sum(
        comb(2 * j, j) * comb0(2 * n - 2 * j - 2, n - j - n0)
        for j in range(n - n0 + 1)
    )


def _d_cell_00(n: int, n0: int) -> int:
    # A (0, 0) ending needs two zeros; the binomial alone misses that at n0=1.
    return comb0(2 * n - 4, n - n0) if n0 >= 2 else 0


def _d_cell_m0(n: int, n0: int) -> int:
    # Column-0 complement: <0 at last> carries weight comb(2n-2, n-n0).
    return comb0(2 * n - 2, n - n0) - _d_cell_00(n, n0) - comb0(2 * n - 4, n - n0 - 1)


def d_pair_table(n: int, n0: int) -> CorrelationTable:
    """Final-pair probabilities of the D-type two-species process (n0 >= 1).

    The +-1 column is shared: a 1 and a -1 at the last site are equally
    likely.  The (0,0) and (-1,0) cells vanish/adjust at n0 = 1, where a
    double-zero ending does not exist.
    """
    if not 1 <= n0 <= n:
        raise RangeError("the pair table needs n0 >= 1")
    z = z_d(n, n0)
    minus_pm = _d_sum_minus(n, n0)
    plus_pm = _d_sum_plus(n, n0)
    raw = {
        (-1, -1): minus_pm,
        (-1, 1): minus_pm,
        (-1, 0): _d_cell_m0(n, n0),
        (0, -1): comb0(2 * n - 4, n - n0 - 1),
        (0, 1): comb0(2 * n - 4, n - n0 - 1),
        (0, 0): _d_cell_00(n, n0),
        (1, -1): plus_pm,
        (1, 1): plus_pm,
        (1, 0): comb0(2 * n - 4, n - n0 - 1),
    }
    entries = {ij: R(v, z) for ij, v in raw.items()}
    return CorrelationTable(entries, R(z), f"two-species D, n={n}, n0={n0}")


@dataclass(frozen=True)
class HookSums:
    row: object
    col: object
    hd: object | None  # down-hook, defined for positive species
    hu: object | None  # up-hook


def multi_sums(family: str, n: int, i: int) -> HookSums:
    """Closed row/column/hook sums of final-pair correlations, families B, D."""
    if i == 0 or abs(i) > n:
        raise RangeError(f"species {i} outside +-1..{n}")
    if family == "B":
        if n < 2:
            raise RangeError("needs n >= 2")
        col = R(1, 2 * n)
        if i <= -2:
            row = R(1, 2 * n)
        elif i == -1:
            row = R(n - 1, 2 * n * (2 * n - 1))
        else:
            row = R(
                n * n + 2 * n * (2 * i - 1) - 3 * i * i - i + 1,
                2 * n * (2 * n - 1) * (n - 1),
            )
        if i < 0:
            return HookSums(row, col, None, None)
        hd = R((n - i) * (n + 3 * i - 1), 2 * n * (2 * n - 1) * (n - 1))
        hu = R(n - i, n * (2 * n - 1))
        return HookSums(row, col, hd, hu)
    if family == "D":
        if n < 3:
            raise RangeError("needs n >= 3")
        return _multi_sums_d(n, i)
    raise UnsupportedRange(f"no closed hook sums for family {family}")


def _d_sum_minus(n: int, m: int) -> int:
    # total weight of words ending (-1, +-1), one sign, scaled by z_d(n, m)
    return sum(
        comb0(2 * j - 2, j) * comb0(2 * n - 2 * j - 2, n - j - m)
        for j in range(2, n - m + 1)
    )


def _d_sum_plus(n: int, m: int) -> int:
    # total weight of words ending (1, +-1), one sign, scaled by z_d(n, m)
    return sum(
        comb(2 * j, j) * comb0(2 * n - 2 * j - 4, n - j - m - 1)
        for j in range(1, n - m)
    )


def _d_pen_minus(n: int, n0: int):
    """P(-1 at the next-to-last site) in the D-type two-species process."""
    if n0 == 0:
        # Even-signs class of the zero-free chain: both signs are equally
        # likely at every boundary site.
        return R(1, 2)
    return R(2 * _d_sum_minus(n, n0) + _d_cell_m0(n, n0), z_d(n, n0))


def _multi_sums_d(n: int, i: int) -> HookSums:
    m = abs(i)
    if m == 1:
        col = R(comb(2 * n - 2, n - 1), 2 ** (2 * n - 1))
    else:
        col = R(comb0(2 * n - 2, n - m), 2 * z_d(n, m)) - R(
            comb0(2 * n - 2, n - m + 1), 2 * z_d(n, m - 1)
        )
    if i == 1:
        row = R(comb(2 * n - 4, n - 2), 4 ** (n - 1))
    elif i < 0:
        row = _d_pen_minus(n, m - 1) - _d_pen_minus(n, m)
    else:
        row = R(
            2 * _d_sum_plus(n, i - 1) + comb0(2 * n - 4, n - i), z_d(n, i - 1)
        ) - R(2 * _d_sum_plus(n, i) + comb0(2 * n - 4, n - i - 1), z_d(n, i))
    if i < 0:
        return HookSums(row, col, None, None)
    if i == 1:
        hd = R(comb(2 * n - 4, n - 2), 4 ** (n - 1))
        hu = R(comb(2 * n - 3, n - 2), 4 ** (n - 1))
    else:
        hd = R(_d_sum_plus(n, i - 1), z_d(n, i - 1)) - R(_d_sum_plus(n, i), z_d(n, i))
        hu = R(_d_sum_minus(n, i - 1), z_d(n, i - 1)) - R(
            _d_sum_minus(n, i), z_d(n, i)
        )
    return HookSums(row, col, hd, hu)


def b_first_site(n: int, k: int):
    """Probability of species k at the first site of the B multispecies chain."""
    if n < 2 or k == 0 or abs(k) > n:
        raise RangeError(f"bad arguments n={n}, k={k}")
    if k < 0:
        return R(2 * (-k) - 1, 2 * n * (2 * n - 1))
    if k == 1:
        return R(n * n + n - 1, 2 * n * (2 * n - 1))
    return R(1, 2 * n)


# ---------------------------------------------------------------------------
# Exact chain-side quantities (oracle routes).


@lru_cache(maxsize=None)
def stationary_multi(family: str, n: int) -> tuple[Kernel, Dist]:
    """Exact stationary law of the multispecies chain (cached)."""
    kind = WeylKind(family, n)
    kernel = build_multi(kind, n)
    return kernel, exact_stationary(kernel)


def pair_correlations(family: str, n: int) -> dict:
    """Exact final-pair probabilities of the multispecies chain."""
    _, pi = stationary_multi(family, n)
    out: dict = {}
    for w, p in pi.items():
        if p == 0:
            continue
        key = (w[-2], w[-1])
        out[key] = out.get(key, ZERO) + p
    return out


def last_site_density(family: str, n: int) -> dict:
    _, pi = stationary_multi(family, n)
    out: dict = {}
    for w, p in pi.items():
        out[w[-1]] = out.get(w[-1], ZERO) + p
    return out


def first_site_density(family: str, n: int) -> dict:
    _, pi = stationary_multi(family, n)
    out: dict = {}
    for w, p in pi.items():
        out[w[0]] = out.get(w[0], ZERO) + p
    return out


def hook_sums_exact(family: str, n: int, i: int) -> HookSums:
    """Row/column/hook sums straight from the exact stationary law."""
    corr = pair_correlations(family, n)
    row = sum((p for (a, _), p in corr.items() if a == i), ZERO)
    col = sum((p for (_, b), p in corr.items() if b == i), ZERO)
    if i < 0:
        return HookSums(row, col, None, None)
    hd = ZERO
    hu = ZERO
    for j in range(i + 1, n + 1):
        hd += corr.get((i, -j), ZERO) + corr.get((j, -i), ZERO)
        hu += corr.get((-j, i), ZERO) + corr.get((-i, j), ZERO)
    return HookSums(row, col, hd, hu)


# ---------------------------------------------------------------------------
# Limiting directions.


@dataclass(frozen=True)
class DirectionVector:
    """A direction in R^n, defined up to positive scaling."""

    coeffs: tuple

    def normalized(self) -> "DirectionVector":
        total = sum(self.coeffs, ZERO)
        if total == 0:
            raise ZeroDivisionError("zero direction")
        return DirectionVector(tuple(c / total for c in self.coeffs))

    def proportional_to(self, other: "DirectionVector") -> bool:
        a, b = self.coeffs, other.coeffs
        if len(a) != len(b):
            return False
        pairs = [(x, y) for x, y in zip(a, b)]
        if any((x == 0) != (y == 0) for x, y in pairs):
            return False
        nz = [(x, y) for x, y in pairs if x != 0]
        if not nz:
            return True
        x0, y0 = nz[0]
        if (x0 > 0) != (y0 > 0):
            return False
        return all(x * y0 == y * x0 for x, y in nz)

    def cosine(self, other: "DirectionVector") -> float:
        import math

        a = [float(x) for x in self.coeffs]
        b = [float(x) for x in other.coeffs]
        dot = sum(x * y for x, y in zip(a, b))
        na = math.sqrt(sum(x * x for x in a))
        nb = math.sqrt(sum(x * x for x in b))
        return dot / (na * nb)


def limdir_exact_lam(kind: WeylKind, n: int) -> DirectionVector:
    """Limiting direction from the stationary-weighted highest-root sum.

    Sums, over the states raised by the highest-root generator, the
    stationary probability times the pulled-back highest root.
    """
    wkind = WeylKind(kind.family, n)
    _, pi = stationary_multi(kind.family, n)
    psi = [ZERO] * n
    for w, p in pi.items():
        if p == 0 or not theta_raises(w, wkind):
            continue
        v = inverse_act_theta(w, wkind)
        for idx, c in enumerate(v):
            if c:
                psi[idx] += p * c
    return DirectionVector(tuple(psi))


BCHECK_DSTAR_PARAMS = DStarParams(R(1, 2), 0, R(1, 2), R(1, 2))


@lru_cache(maxsize=None)
def _bcheck_marginals(n: int, n0: int):
    """Boundary marginals of the starred process attached to the Bcheck chain.

    The two-species Bcheck chain on n sites embeds (first site fixed to *)
    into the starred process on n+1 sites at rates (1/2, 0, 1/2, 1/2); its
    stationary top-row law gives the needed boundary-pair probabilities.
    A border * splits evenly between the two signs it identifies.
    """
    dist, _ = tworow_stationary(n + 1, n0, BCHECK_DSTAR_PARAMS)
    top = project_top_row(dist)
    p_last_sign = ZERO  # one sign at the chain's last site
    p_pen_plus = ZERO
    p_pen_minus = ZERO
    p_pair_plus = ZERO  # (1, *) / 2
    p_pair_minus = ZERO  # (-1, *) / 2
    for row, p in top.items():
        if p == 0:
            continue
        if row[-1] == STAR:
            p_last_sign += p / 2
            if row[-2] == 1:
                p_pair_plus += p / 2
            elif row[-2] == -1:
                p_pair_minus += p / 2
        if row[-2] == 1:
            p_pen_plus += p
        elif row[-2] == -1:
            p_pen_minus += p
    return p_last_sign, p_pen_plus, p_pen_minus, p_pair_plus, p_pair_minus


def _limdir_bcheck(n: int) -> DirectionVector:
    marg = [_bcheck_marginals(n, n0) for n0 in range(n + 1)] + [
        (ZERO, ZERO, ZERO, ZERO, ZERO)
    ]
    coeffs = []
    for k in range(1, n + 1):
        col = marg[k - 1][0] - marg[k][0]
        row = marg[k - 1][1] - marg[k][1]
        hd = marg[k - 1][3] - marg[k][3]
        hu = marg[k - 1][4] - marg[k][4]
        coeffs.append(row - hd + col - hu)
    return DirectionVector(tuple(coeffs))


def _limdir_c(n: int) -> DirectionVector:
    half = R(1, 2)

    def dens(n0: int):
        if n0 > n - 1:
            return ZERO
        return 2 * z_semiperm(n - 1, n0, half, half) / z_semiperm(n, n0, half, half)

    return DirectionVector(
        tuple(dens(i - 1) - dens(i) for i in range(1, n + 1))
    )


def limdir_closed(kind: WeylKind, n: int) -> DirectionVector:
    """Closed-form limiting direction for any of the five families."""
    fam = kind.family
    if fam == "Ccheck":
        return DirectionVector(
            tuple(R(2 * i + 1, 2 * n * (2 * n + 1)) for i in range(1, n + 1))
        )
    if fam == "B":
        return DirectionVector(
            tuple(R(2 * k - 1, n * (2 * n - 1)) for k in range(1, n + 1))
        )
    if fam == "D":
        if n == 2:
            return DirectionVector((R(1, 2), R(1, 2)))
        coeffs = [ZERO]
        for i in range(2, n + 1):
            first = R(i - 1, n + i - 2) * comb0(2 * n - 3, n - i) / z_d(n, i)
            second = (
                R(i - 2, n + i - 3) * comb0(2 * n - 3, n - i + 1) / z_d(n, i - 1)
                if i > 2
                else ZERO
            )
            coeffs.append(first - second)
        return DirectionVector(tuple(coeffs))
    if fam == "C":
        return _limdir_c(n)
    if fam == "Bcheck":
        return _limdir_bcheck(n)
    raise UnsupportedRange(f"unknown family {fam}")


# ---------------------------------------------------------------------------
# Conjectured two-point correlations for the B multispecies chain.


@dataclass(frozen=True)
class ConjectureValue:
    value: object
    case: int
    is_conjecture: bool = True


def conjecture_b_value(n: int, i: int, j: int) -> ConjectureValue:
    """Conjectured probability of species (i, j) at the last two sites.

    Five case families cover pairs with a negative second species; outside
    them a RangeError is raised.
    """
    if n < 2 or i == 0 or j == 0 or abs(i) > n or abs(j) > n:
        raise RangeError(f"bad species pair ({i}, {j})")
    a, b = abs(i), abs(j)
    if i < 0 and j < 0:
        if 3 <= a <= n and 1 <= b <= a - 2:
            return ConjectureValue(R(1, 4 * n * n), 1)
        if a == b + 1 and 1 <= b <= n - 1:
            return ConjectureValue(
                R(1, 4 * n * n) + R(n * n - b * b, 4 * n * n * (2 * n - 1)), 2
            )
        if 1 <= a <= n - 1 and a + 1 <= b <= n:
            return ConjectureValue(R(b - a, 2 * n * n * (2 * n - 1)), 3)
    if i > 0 and j < 0:
        if 1 <= a <= n - 2 and a + 2 <= b <= n:
            return ConjectureValue(R(a + b - 1, 2 * n * n * (2 * n - 1)), 3)
        if b == a + 1 and 1 <= a <= n - 1:
            return ConjectureValue(
                R(a * (n * n - a * a + 2 * n - 2), 2 * n * n * (2 * n - 1) * (n - 1)),
                4,
            )
        if 2 <= a <= n and 1 <= b <= a - 1:
            return ConjectureValue(
                R(3 * (a - b) * (a + b - 1), 4 * n * n * (2 * n - 1) * (n - 1)), 5
            )
    raise RangeError(f"pair ({i}, {j}) outside the conjectured case ranges")


def conjecture_b_pairs(n: int):
    """All (i, j) pairs covered by some conjectured case."""
    out = []
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            if i == 0 or j == 0:
                continue
            try:
                cv = conjecture_b_value(n, i, j)
            except RangeError:
                continue
            out.append((i, j, cv))
    return out


# ---------------------------------------------------------------------------
# Formal power series check for the D-type partition functions.


def _series_mul(a: list, b: list, order: int) -> list:
    out = [ZERO] * (order + 1)
    for i, x in enumerate(a):
        if x == 0 or i > order:
            continue
        for j, y in enumerate(b):
            if i + j > order:
                break
            out[i + j] += x * y
    return out


def z_d_generating_series(n0: int, order: int) -> list:
    """Coefficients of t^n0/(1-4t) * C(t)^(2 n0 - 2) up to t^order.

    C(t) is the Catalan generating function; the coefficient of t^n should
    match z_d(n, n0).
    """
    if n0 < 1:
        raise RangeError("series defined for n0 >= 1")
    cat = [R(catalan(k)) for k in range(order + 1)]
    geo = [R(4) ** k for k in range(order + 1)]  # 1/(1-4t)
    series = [ONE] + [ZERO] * order
    for _ in range(2 * n0 - 2):
        series = _series_mul(series, cat, order)
    series = _series_mul(series, geo, order)
    out = [ZERO] * (order + 1)
    for k, c in enumerate(series):
        if k + n0 <= order:
            out[k + n0] = c
    return out

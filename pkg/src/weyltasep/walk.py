"""Reduced random walks on the alcoves of the affine arrangement.

The walk starts at a generic interior point of the fundamental alcove and
repeatedly proposes a reflection in a wall of the current alcove, weighted
by the family's step weights.  A proposal is accepted only if it crosses a
hyperplane never crossed before (the separation count from the base point
grows by one); otherwise the walk holds.  All geometry is exact: points
live on a fixed denominator lattice, so the hot loop is integer-only.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .closedform import DirectionVector, limdir_closed
from .errors import NonGenericPoint
from .markov import derive_stream
from .ratio import R
from .weyl import WeylKind, kac_weights, root_data

Vec = tuple


@lru_cache(maxsize=None)
def fundamental_point(kind: WeylKind, n: int) -> tuple:
    """Barycenter of the fundamental alcove, as exact fractions.

    The alcove is the simplex cut out by the simple-root half-spaces and
    the affine wall of the highest root; the barycenter of its vertices is
    generic for every family considered here.
    """
    kind = WeylKind(kind.family, n)
    rs = root_data(kind)
    rows = [list(a) for a in rs.simple_roots] + [list(rs.theta)]
    rhs = [0] * n + [1]
    vertices = []
    for drop in range(n + 1):
        sub = [rows[i] for i in range(n + 1) if i != drop]
        b = [rhs[i] for i in range(n + 1) if i != drop]
        vertices.append(_solve_exact(sub, b))
    bary = tuple(
        sum((v[j] for v in vertices), Fraction(0)) / (n + 1) for j in range(n)
    )
    for alpha in rs.positive_roots:
        pairing = sum(Fraction(c) * x for c, x in zip(alpha, bary))
        if pairing.denominator == 1:
            raise NonGenericPoint(f"barycenter meets a wall of root {alpha}")
    return bary


def _solve_exact(rows, rhs):
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[r][n] for r in range(n))


def separation_count(x, kind: WeylKind, n: int) -> int:
    """Number of affine hyperplanes separating x from the fundamental point.

    Counts, over every positive root, the integers lying strictly between
    the root pairings at the two points.
    """
    kind = WeylKind(kind.family, n)
    base = fundamental_point(kind, n)
    total = 0
    for alpha in root_data(kind).positive_roots:
        pa = sum(Fraction(c) * Fraction(v) for c, v in zip(alpha, base))
        px = sum(Fraction(c) * Fraction(v) for c, v in zip(alpha, x))
        if px.denominator == 1:
            raise NonGenericPoint(f"point lies on a wall of root {alpha}")
        total += abs(math.floor(px) - math.floor(pa))
    return total


def _reflection_window(kind: WeylKind, g: int, n: int) -> tuple:
    fam = kind.root_family
    w = list(range(1, n + 1))
    if 1 <= g <= n - 1:
        w[g - 1], w[g] = w[g], w[g - 1]
    elif g == 0:
        if fam == "D":
            w[0], w[1] = -2, -1
        else:
            w[0] = -1
    else:
        if fam == "C" or n == 1:
            w[-1] = -w[-1]
        else:
            w[-2], w[-1] = -n, -(n - 1)
    return tuple(w)


@lru_cache(maxsize=None)
def _walk_tables(kind: WeylKind, n: int):
    kind = WeylKind(kind.family, n)
    rs = root_data(kind)
    base = fundamental_point(kind, n)
    d = 1
    for v in base:
        d = d * v.denominator // math.gcd(d, v.denominator)
    x0 = tuple(int(v * d) for v in base)
    theta = rs.theta
    theta_norm = sum(c * c for c in theta)
    tau = tuple(2 * c // theta_norm for c in theta)  # integral for B, C, D
    gens = []
    for g in range(n + 1):
        alpha = rs.simple_roots[g] if g < n else theta
        alpha_pairs = tuple((i, c) for i, c in enumerate(alpha) if c)
        win = _reflection_window(kind, g, n)
        supp = tuple((v, win[v - 1]) for v in range(1, n + 1) if win[v - 1] != v)
        tau_pairs = tuple((i, c) for i, c in enumerate(tau) if c) if g == n else ()
        level = 1 if g == n else 0
        gens.append((alpha_pairs, supp, tau_pairs, level))
    weights = kac_weights(kind).weights
    total = sum(weights)
    cum = []
    acc = 0.0
    for a in weights:
        acc += a / total
        cum.append(acc)
    cum[-1] = 1.1
    return d, x0, tuple(gens), tuple(cum)


@dataclass
class WalkState:
    kind: WeylKind
    n: int
    d: int
    window: list
    winv: list
    translation: list
    x_scaled: list
    crossings: int

    def point(self) -> tuple:
        return tuple(Fraction(v, self.d) for v in self.x_scaled)


def initial_state(kind: WeylKind, n: int) -> WalkState:
    d, x0, _, _ = _walk_tables(kind, n)
    ident = list(range(1, n + 1))
    return WalkState(
        WeylKind(kind.family, n), n, d, ident[:], ident[:], [0] * n, list(x0), 0
    )


def _try_step(state: WalkState, g: int) -> bool:
    """Attempt one proposal in place; returns whether it was accepted."""
    d, x0, gens, _ = _walk_tables(state.kind, state.n)
    alpha_pairs, supp, tau_pairs, level = gens[g]
    winv = state.winv
    w = state.window
    t = state.translation
    x = state.x_scaled
    lev = level * d
    s_base = 0
    s_cur = 0
    for i0, c in alpha_pairs:
        a = winv[i0]
        if a > 0:
            j0, cc = a - 1, c
        else:
            j0, cc = -a - 1, -c
        s_base += cc * x0[j0]
        s_cur += cc * x[j0]
        lev += cc * d * t[j0]
    if (s_base > lev) != (s_cur > lev):
        return False
    if tau_pairs:
        for i0, c in tau_pairs:
            a = winv[i0]
            if a > 0:
                t[a - 1] += c
            else:
                t[-a - 1] -= c
    changed = set()
    for v, img in supp:
        a = winv[v - 1]
        j0 = a - 1 if a > 0 else -a - 1
        w[j0] = img if a > 0 else -img
        changed.add(j0)
    for j0 in changed:
        val = w[j0]
        if val > 0:
            winv[val - 1] = j0 + 1
        else:
            winv[-val - 1] = -(j0 + 1)
    if tau_pairs:
        changed.update(range(state.n))  # translation moved: refresh all coords
    for j0 in changed:
        val = w[j0]
        base = x0[val - 1] if val > 0 else -x0[-val - 1]
        x[j0] = base + d * t[j0]
    state.crossings += 1
    return True


def step(state: WalkState, g: int) -> WalkState:
    """One proposal of generator g; returns the (possibly held) new state."""
    new = WalkState(
        state.kind,
        state.n,
        state.d,
        state.window[:],
        state.winv[:],
        state.translation[:],
        state.x_scaled[:],
        state.crossings,
    )
    _try_step(new, g)
    return new


def chamber_label(x, kind: WeylKind) -> tuple:
    """Window of the finite chamber containing x (parity-fixed for D)."""
    order = sorted(range(len(x)), key=lambda j: abs(x[j]))
    label = [0] * len(x)
    for rank, j in enumerate(order, start=1):
        label[j] = rank if x[j] >= 0 else -rank
    if kind.root_family == "D" and sum(1 for v in label if v < 0) % 2:
        j = order[0]
        label[j] = -label[j]
    return tuple(label)


def dominant_representative(x, kind: WeylKind) -> tuple:
    """Image of x in the closed dominant chamber of the finite group.

    Coordinates are sorted by absolute value and made positive; for the D
    family an odd number of sign flips leaves one negative sign on the
    smallest coordinate.
    """
    vals = sorted(x, key=abs)
    negs = sum(1 for v in x if v < 0)
    out = [abs(v) for v in vals]
    if kind.root_family == "D" and negs % 2:
        out[0] = -out[0]
    return tuple(out)


@dataclass(frozen=True)
class WalkSummary:
    final_point: tuple
    accepted: int
    steps: int
    crossings: int
    chamber: tuple
    seed: int


def run_walk(kind: WeylKind, n: int, steps: int, seed: int = 0) -> WalkSummary:
    """Simulate one walk; deterministic in the seed."""
    kind = WeylKind(kind.family, n)
    d, x0, gens, cum = _walk_tables(kind, n)
    state = initial_state(kind, n)
    rng = random.Random(derive_stream(seed, 0))
    rnd = rng.random
    accepted = 0
    ncum = len(cum)
    for _ in range(steps):
        r = rnd()
        g = 0
        while r > cum[g]:
            g += 1
        if _try_step(state, g):
            accepted += 1
    pt = state.point()
    cross = separation_count(pt, kind, n)
    return WalkSummary(pt, accepted, steps, cross, chamber_label(pt, kind), seed)


def _trial(args):
    family, n, steps, seed, trial = args
    kind = WeylKind(family, n)
    summary = run_walk(kind, n, steps, derive_stream(seed, trial))
    return summary


@dataclass(frozen=True)
class DirectionEstimate:
    direction: tuple  # unit vector of floats
    cosine_vs_closed_form: float
    acceptance_rate: float
    chamber_counts: dict
    steps: int
    trials: int
    seed: int


def estimate_direction(
    kind: WeylKind,
    n: int,
    steps: int,
    trials: int,
    seed: int = 0,
    processes: int | None = None,
) -> DirectionEstimate:
    """Mean final direction over independent trials, against the closed form.

    Trials use streams derived from (seed, trial) and may run in parallel;
    the result is deterministic either way.
    """
    kind = WeylKind(kind.family, n)
    jobs = [(kind.family, n, steps, seed, t) for t in range(trials)]
    if processes is None:
        import os

        processes = min(trials, os.cpu_count() or 1)
    if processes > 1 and trials > 1:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(processes) as pool:
            summaries = pool.map(_trial, jobs)
    else:
        summaries = [_trial(j) for j in jobs]
    mean = [0.0] * n
    accepted = 0
    chambers: dict = {}
    for s in summaries:
        vec = [float(v) for v in dominant_representative(s.final_point, kind)]
        norm = math.sqrt(sum(v * v for v in vec))
        for j in range(n):
            mean[j] += vec[j] / norm / trials
        accepted += s.accepted
        chambers[s.chamber] = chambers.get(s.chamber, 0) + 1
    norm = math.sqrt(sum(v * v for v in mean))
    unit = tuple(v / norm for v in mean)
    closed = limdir_closed(kind, n)
    cos = DirectionVector(tuple(R(round(v * 10**12), 10**12) for v in unit)).cosine(
        closed
    )
    return DirectionEstimate(
        unit, cos, accepted / (steps * trials), chambers, steps, trials, seed
    )


def svg_trajectory(kind: WeylKind, n: int, steps: int, seed: int, path: str) -> None:
    """Dump a rank-2 walk as a simple SVG polyline."""
    if n != 2:
        raise ValueError("SVG dump is only available for rank 2")
    kind = WeylKind(kind.family, n)
    d, x0, gens, cum = _walk_tables(kind, n)
    state = initial_state(kind, n)
    rng = random.Random(derive_stream(seed, 0))
    pts = [tuple(float(v) / d for v in state.x_scaled)]
    for _ in range(steps):
        r = rng.random()
        g = 0
        while r > cum[g]:
            g += 1
        if _try_step(state, g):
            pts.append(tuple(float(v) / d for v in state.x_scaled))
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    lo = min(min(xs), min(ys)) - 1
    hi = max(max(xs), max(ys)) + 1
    span = hi - lo
    scale = 600.0 / span

    def sx(v):
        return (v - lo) * scale

    def sy(v):
        return 600.0 - (v - lo) * scale

    grid = []
    for k in range(math.floor(lo), math.ceil(hi) + 1):
        g1 = (k - lo) * scale
        grid.append(
            f'<line x1="{g1:.1f}" y1="0" x2="{g1:.1f}" y2="600" '
            'stroke="#ddd" stroke-width="0.5"/>'
        )
        grid.append(
            f'<line x1="0" y1="{600 - g1:.1f}" x2="600" y2="{600 - g1:.1f}" '
            'stroke="#ddd" stroke-width="0.5"/>'
        )
    poly = " ".join(f"{sx(px):.2f},{sy(py):.2f}" for px, py in pts)
    with open(path, "w") as fh:
        fh.write(
            '<svg xmlns="http://www.w3.org/2000/svg" width="600" height="600" '
            'viewBox="0 0 600 600">\n'
        )
        fh.write("".join(grid))
        fh.write(
            f'<polyline points="{poly}" fill="none" stroke="#c90" '
            'stroke-width="1.5"/>\n'
        )
        fh.write(
            f'<circle cx="{sx(pts[0][0]):.2f}" cy="{sy(pts[0][1]):.2f}" r="3" '
            'fill="#06c"/>\n'
        )
        fh.write("</svg>\n")

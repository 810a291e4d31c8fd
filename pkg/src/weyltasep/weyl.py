"""Root systems and signed permutations for the classical families B, C, D.

Elements are kept in window notation: ``w = (w_1, ..., w_n)`` means
``w(i) = w_i``, with ``w(-i) = -w_i``.  The linear action on R^n follows
the convention ``w . e_i = e_{w^{-1}(i)}`` where ``e_{-i} = -e_i``; in
coordinates ``(w . v)_j = sign(w_j) * v_{|w_j|}``.

Families ``Bcheck`` and ``Ccheck`` share the root systems of B and C; they
differ only in their step weights (dual Kac labels).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import DimensionMismatch, InvalidRank

FAMILIES = ("B", "C", "Bcheck", "Ccheck", "D")

Window = tuple[int, ...]
Vector = tuple


@dataclass(frozen=True)
class WeylKind:
    """A classical family label together with a rank."""

    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidRank(f"unknown family {self.family!r}")
        least = 2 if self.family == "D" else 1
        if self.n < least:
            raise InvalidRank(f"family {self.family} needs rank >= {least}")

    @property
    def root_family(self) -> str:
        """Underlying finite root system (checked families borrow B/C)."""
        return {"Bcheck": "B", "Ccheck": "C"}.get(self.family, self.family)


@dataclass(frozen=True)
class RootSystem:
    positive_roots: tuple[Vector, ...]
    simple_roots: tuple[Vector, ...]
    theta: Vector


@dataclass(frozen=True)
class KacWeights:
    weights: tuple[int, ...]  # a_0 .. a_n
    total: int = field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "total", sum(self.weights))


def _e(i: int, n: int, c: int = 1) -> Vector:
    v = [0] * n
    v[i - 1] = c
    return tuple(v)


def _e2(i: int, j: int, n: int, ci: int, cj: int) -> Vector:
    v = [0] * n
    v[i - 1] = ci
    v[j - 1] = cj
    return tuple(v)


@lru_cache(maxsize=None)
def root_data(kind: WeylKind) -> RootSystem:
    """Positive roots, simple roots and highest root of the finite system."""
    n = kind.n
    fam = kind.root_family
    pairs = [(i, j) for j in range(2, n + 1) for i in range(1, j)]
    pos: list[Vector] = []
    if fam == "B":
        pos += [_e(i, n) for i in range(1, n + 1)]
    elif fam == "C":
        pos += [_e(i, n, 2) for i in range(1, n + 1)]
    pos += [_e2(i, j, n, -1, 1) for i, j in pairs]
    pos += [_e2(i, j, n, 1, 1) for i, j in pairs]
    if fam == "B":
        simple = (_e(1, n),) + tuple(_e2(i, i + 1, n, -1, 1) for i in range(1, n))
        theta = _e2(n - 1, n, n, 1, 1) if n >= 2 else _e(1, n)
    elif fam == "C":
        simple = (_e(1, n, 2),) + tuple(_e2(i, i + 1, n, -1, 1) for i in range(1, n))
        theta = _e(n, n, 2)
    else:  # D
        simple = (_e2(1, 2, n, 1, 1),) + tuple(
            _e2(i, i + 1, n, -1, 1) for i in range(1, n)
        )
        theta = _e2(n - 1, n, n, 1, 1)
    return RootSystem(tuple(pos), simple, theta)


@lru_cache(maxsize=None)
def kac_weights(kind: WeylKind) -> KacWeights:
    """Step weights a_0..a_n for the affine walk of this family.

    B, C, D carry their Kac labels; Bcheck and Ccheck the dual labels.
    """
    n = kind.n
    a = [2] * (n + 1)
    fam = kind.family
    if fam == "Ccheck":
        a = [1] * (n + 1)
    elif fam == "B":
        a[n - 1] = a[n] = 1
    elif fam == "C":
        a[0] = a[n] = 1
    elif fam == "Bcheck":
        a[0] = a[n - 1] = a[n] = 1
    else:  # D
        a[0] = a[1] = a[n - 1] = a[n] = 1
    return KacWeights(tuple(a))


def identity_window(n: int) -> Window:
    return tuple(range(1, n + 1))


def act(w: Window, v: Sequence) -> Vector:
    """Linear action of w on a vector: (w.v)_j = sign(w_j) v_{|w_j|}."""
    if len(v) != len(w):
        raise DimensionMismatch(f"vector length {len(v)} != rank {len(w)}")
    return tuple(v[a - 1] if a > 0 else -v[-a - 1] for a in w)


def wprod(a: Window, b: Window) -> Window:
    """Window of the composed linear map: act(wprod(a,b), v) == act(a, act(b, v))."""
    return tuple(b[x - 1] if x > 0 else -b[-x - 1] for x in a)


def inverse(w: Window) -> Window:
    out = [0] * len(w)
    for pos, val in enumerate(w, start=1):
        if val > 0:
            out[val - 1] = pos
        else:
            out[-val - 1] = -pos
    return tuple(out)


def apply_generator(w: Window, g: int, kind: WeylKind) -> Window:
    """Apply generator g (0..n, where n means the highest-root reflection).

    Generators act on window positions: s_i swaps entries i, i+1; s_0 is the
    family's first-site move; generator n acts on the last entries.
    """
    n = len(w)
    if not 0 <= g <= n:
        raise InvalidRank(f"generator {g} outside 0..{n}")
    fam = kind.root_family
    lst = list(w)
    if 1 <= g <= n - 1:
        lst[g - 1], lst[g] = lst[g], lst[g - 1]
    elif g == 0:
        if fam == "D":
            lst[0], lst[1] = -lst[1], -lst[0]
        else:
            lst[0] = -lst[0]
    else:  # g == n
        if fam == "C" or n == 1:
            lst[-1] = -lst[-1]
        else:
            lst[-2], lst[-1] = -lst[-1], -lst[-2]
    return tuple(lst)


@lru_cache(maxsize=None)
def _positive_root_set(kind: WeylKind) -> frozenset:
    return frozenset(root_data(kind).positive_roots)


def length(w: Window, kind: WeylKind) -> int:
    """Number of positive roots sent to negative roots by the action of w."""
    pos = _positive_root_set(kind)
    return sum(1 for alpha in pos if act(w, alpha) not in pos)


def theta_raises(w: Window, kind: WeylKind) -> bool:
    """Whether applying the highest-root generator increases the length.

    Characterized on the window: for C-type the last entry is positive; for
    B/D-type the entry of larger absolute value among the last two is
    positive.  Agreement with the length-based definition is a test.
    """
    if kind.root_family == "C" or len(w) == 1:
        return w[-1] > 0
    a, b = w[-2], w[-1]
    return (a if abs(a) > abs(b) else b) > 0


def inverse_act_theta(w: Window, kind: WeylKind) -> Vector:
    """w^{-1} applied to the highest root, via the window pattern."""
    n = len(w)
    v = [0] * n
    if kind.root_family == "C":
        v[abs(w[-1]) - 1] = 2 if w[-1] > 0 else -2
        return tuple(v)
    if n == 1:
        v[0] = 1 if w[0] > 0 else -1
        return tuple(v)
    for a in (w[-2], w[-1]):
        v[abs(a) - 1] += 1 if a > 0 else -1
    return tuple(v)


def positive_root_sum(kind: WeylKind) -> Vector:
    """Coordinates of the sum of positive roots: 2i (C), 2i-1 (B), 2i-2 (D)."""
    n = kind.n
    fam = kind.root_family
    if fam == "C":
        return tuple(2 * i for i in range(1, n + 1))
    if fam == "B":
        return tuple(2 * i - 1 for i in range(1, n + 1))
    return tuple(2 * i - 2 for i in range(1, n + 1))


def signed_permutations(n: int, even_only: bool = False) -> Iterator[Window]:
    """All windows on n letters; optionally only even numbers of negatives."""
    for perm in itertools.permutations(range(1, n + 1)):
        for signs in itertools.product((1, -1), repeat=n):
            if even_only and signs.count(-1) % 2:
                continue
            yield tuple(s * p for s, p in zip(signs, perm))

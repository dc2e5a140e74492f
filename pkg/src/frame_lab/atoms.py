"""Exact calculus for cylinder-supported exponentials on C4 x [0,1].

An Atom is c * e^{2 pi i t x} * indicator(cylinder), where the cylinder is
addressed by an x digit word over {0,2} and a y bit word over {0,1} of equal
length (every operator of the representation prepends or removes one digit
in each coordinate simultaneously, so equal lengths are invariant).
Frequencies are exact rationals; two atoms merge only on identical keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ContractError
from .transform import DEFAULT_EVALUATOR, TransformEvaluator, cis, mu4_hat

MERGE_TOL = 1e-15


@dataclass(frozen=True)
class Atom:
    coeff: complex
    freq: Fraction
    xword: tuple[int, ...]
    yword: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeff", complex(self.coeff))
        if not isinstance(self.freq, Fraction):
            object.__setattr__(self, "freq", Fraction(self.freq))
        xword = tuple(int(d) for d in self.xword)
        yword = tuple(int(b) for b in self.yword)
        if len(xword) != len(yword):
            raise ValueError("xword and yword must have equal length")
        if any(d not in (0, 2) for d in xword):
            raise ValueError("x digits must lie in {0,2}")
        if any(b not in (0, 1) for b in yword):
            raise ValueError("y digits must lie in {0,1}")
        object.__setattr__(self, "xword", xword)
        object.__setattr__(self, "yword", yword)

    @property
    def level(self) -> int:
        return len(self.xword)

    def key(self):
        return (self.freq, self.xword, self.yword)


@dataclass(frozen=True)
class FunctionSum:
    atoms: tuple[Atom, ...]

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def level(self) -> int:
        return max((a.level for a in self.atoms), default=0)


ZERO = FunctionSum(())


def exponential(t) -> FunctionSum:
    """The global exponential e^{2 pi i t x} as a single level-0 atom."""
    return FunctionSum((Atom(1.0, Fraction(t), (), ()),))


ONE = exponential(0)


def normalize(F: FunctionSum, merge_tol: float = MERGE_TOL) -> FunctionSum:
    """Merge identical-key atoms, drop near-zero coefficients, sort keys."""
    if merge_tol < 0:
        raise ValueError("merge_tol must be >= 0")
    merged: dict = {}
    for a in F.atoms:
        merged[a.key()] = merged.get(a.key(), 0.0) + a.coeff
    kept = [
        Atom(coeff, key[0], key[1], key[2])
        for key, coeff in merged.items()
        if abs(coeff) > merge_tol
    ]
    kept.sort(key=lambda a: a.key())
    return FunctionSum(tuple(kept))


def fs_add(*sums: FunctionSum) -> FunctionSum:
    atoms: list[Atom] = []
    for F in sums:
        atoms.extend(F.atoms)
    return normalize(FunctionSum(tuple(atoms)))


def fs_scale(F: FunctionSum, scalar: complex) -> FunctionSum:
    return FunctionSum(tuple(Atom(scalar * a.coeff, a.freq, a.xword, a.yword) for a in F.atoms))


def fs_sub(F: FunctionSum, G: FunctionSum) -> FunctionSum:
    return fs_add(F, fs_scale(G, -1.0))


def refine(F: FunctionSum, K: int) -> FunctionSum:
    """Split every atom into its level-K descendants (equal as a function)."""
    out: list[Atom] = []
    for a in F.atoms:
        if a.level > K:
            raise ContractError(f"cannot refine level-{a.level} atom to level {K}")
        frontier = [a]
        while frontier and frontier[0].level < K:
            nxt = []
            for b in frontier:
                for xd in (0, 2):
                    for yd in (0, 1):
                        nxt.append(Atom(b.coeff, b.freq, b.xword + (xd,), b.yword + (yd,)))
            frontier = nxt
        out.extend(frontier)
    return normalize(FunctionSum(tuple(out)))


def _compatible(a: Atom, b: Atom):
    """Deeper-cylinder words of the intersection, or None if disjoint."""
    if a.level <= b.level:
        lo, hi = a, b
    else:
        lo, hi = b, a
    k = lo.level
    if hi.xword[:k] == lo.xword and hi.yword[:k] == lo.yword:
        return hi.xword
    return None


def inner_product(
    F: FunctionSum, G: FunctionSum, cfg: TransformEvaluator = DEFAULT_EVALUATOR
) -> complex:
    """<F, G> in L^2 of the product measure, summed exactly over atom pairs.

    A nested pair at deeper level K with intersection x-word u contributes
    cF * conj(cG) * 2^-K * 2^-K * e^{2 pi i D offset(u)} * mu4_hat(D / 4^K)
    with D the frequency difference; disjoint pairs contribute nothing.
    """
    total = complex(0.0, 0.0)
    fa = sorted(F.atoms, key=lambda a: a.key())
    ga = sorted(G.atoms, key=lambda a: a.key())
    for a in fa:
        for b in ga:
            u = _compatible(a, b)
            if u is None:
                continue
            K = max(a.level, b.level)
            delta = a.freq - b.freq
            offset = Fraction(
                sum(d * 4 ** (K - i) for i, d in enumerate(u, start=1)), 4**K
            ) if K else Fraction(0)
            total += (
                a.coeff
                * b.coeff.conjugate()
                * 4.0 ** (-K)
                * cis(delta * offset)
                * mu4_hat(delta / 4**K, cfg)
            )
    return total


def norm(F: FunctionSum, cfg: TransformEvaluator = DEFAULT_EVALUATOR) -> float:
    return float(np.sqrt(max(inner_product(F, F, cfg).real, 0.0)))


def evaluate(F: FunctionSum, x, y) -> np.ndarray:
    """Pointwise values of F on arrays of coordinates (for the MC oracle)."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    out = np.zeros(np.broadcast(x, y).shape, dtype=np.complex128)
    for a in F.atoms:
        mask = np.ones_like(out, dtype=bool)
        for i, d in enumerate(a.xword, start=1):
            mask &= np.floor(x * 4.0**i) % 4 == d
        for i, b in enumerate(a.yword, start=1):
            mask &= np.floor(y * 2.0**i) % 2 == b
        out += a.coeff * np.exp(2j * np.pi * float(a.freq) * x) * mask
    return out

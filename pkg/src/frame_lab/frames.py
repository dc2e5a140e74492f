"""Projection onto the x-only subspace and the weighted exponential frames.

Projecting the generated orthonormal family onto functions of x alone turns
the word vector for omega into the single weighted exponential
(d_omega, c(omega)) with d_omega = prod_k (a_{j_k 0} + a_{j_k 2}). Indexed
by integers, the weights take the closed multiplicative form
p^{l1(n)} * 0^{l2(n)} * q^{l3(n)} over the base-4 digit counts of n. The
trace machinery certifies the Bessel bound, monotone Parseval partial sums,
the refinement identity of the coefficient-energy function h, and the
incompleteness of the p = 0 family.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .atoms import FunctionSum, refine
from .cuntz import CuntzRep, GRAM_MAX_LEN, _dense_word_vector, dense_inner
from .errors import CapacityError, ContractError, DomainError, UnsupportedShape
from .filters import FilterBank, g_map, hadamard_rho, little_m, filter_bank_from_A, solve_alpha
from .transform import DEFAULT_EVALUATOR, TransformEvaluator, mu4_hat
from .words import c_of_word, digit_counts, enumerate_X4

WEIGHT_TABLE_COLUMNS = ("n", "l1", "l2", "l3", "weight_re", "weight_im", "weight_abs2")
TRACE_COLUMNS = ("N", "partial_sum", "target")


@dataclass(frozen=True)
class WeightedExponential:
    weight: complex
    frequency: int


@dataclass(frozen=True)
class WeightSpec:
    """Weight family parameters, either via rho or directly via (p, q).

    The two agree under p = (1+rho)/2, q = (1-rho)/2. The family is a
    Parseval frame only for p != 0; the p = 0 member (rho = -1) still
    generates weights (it is the incompleteness example) but is tagged
    not Parseval-certified.
    """

    mode: str
    p: complex
    q: complex
    rho: complex | None = None

    @classmethod
    def from_rho(cls, rho: complex, tol: float = 1e-12) -> "WeightSpec":
        rho = complex(rho)
        if abs(abs(rho) - 1.0) > tol:
            raise DomainError(f"|rho| must be 1 within {tol}, got {abs(rho)}")
        return cls(mode="rho", p=(1.0 + rho) / 2.0, q=(1.0 - rho) / 2.0, rho=rho)

    @classmethod
    def from_pq(cls, p: complex, q: complex, tol: float = 1e-12) -> "WeightSpec":
        p, q = complex(p), complex(q)
        dev = abs(abs(p) ** 2 + abs(q) ** 2 - 1.0)
        if dev > tol:
            raise DomainError(f"|p|^2 + |q|^2 must be 1 within {tol}, off by {dev:.3g}")
        return cls(mode="pq", p=p, q=q, rho=None)

    @property
    def parseval_certified(self) -> bool:
        return abs(self.p) > 1e-15


def frame_weight(spec: WeightSpec, n: int) -> complex:
    """p^{l1(n)} * 0^{l2(n)} * q^{l3(n)}, with the convention 0^0 = 1."""
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ContractError(f"frequency index must be a nonnegative integer, got {n!r}")
    l1, l2, l3 = digit_counts(int(n))
    if l2 > 0:
        return 0j
    return complex(spec.p**l1 * spec.q**l3)


def bank_for_spec(spec: WeightSpec, tol: float = 1e-12) -> FilterBank:
    """An admissible bank whose projection weights realize the given family."""
    if spec.mode == "rho":
        return filter_bank_from_A(hadamard_rho(spec.rho, tol), tol)
    p, q = spec.p, spec.q
    fill = np.sqrt(max(1.0 - abs(p) ** 2, 0.0))
    if fill > tol:
        return solve_alpha(p, q, fill, 0.0, 0.0, 1.0, tol)
    return solve_alpha(p, q, 0.0, 0.0, 1.0, 0.0, tol)


def project_V(
    F: FunctionSum,
    cfg: TransformEvaluator = DEFAULT_EVALUATOR,
    shape_tol: float = 1e-10,
) -> list[WeightedExponential]:
    """Integrate out the y coordinate; valid when the result is a pure
    weighted exponential per frequency.

    Each level-K y cylinder contributes 2^-K. The per-x-cylinder totals
    must agree (that is what the kernel condition guarantees for word
    vectors); otherwise the input is not of weighted-exponential shape.
    """
    by_freq: dict[Fraction, list] = {}
    for a in F.atoms:
        by_freq.setdefault(a.freq, []).append(a)
    out = []
    for freq in sorted(by_freq):
        group = FunctionSum(tuple(by_freq[freq]))
        K = group.level
        flat = refine(group, K)
        totals: dict[tuple[int, ...], complex] = {}
        for a in flat.atoms:
            totals[a.xword] = totals.get(a.xword, 0.0) + a.coeff * 2.0 ** (-K)
        values = list(totals.values())
        if len(totals) < 2**K:
            values.append(0.0)  # an absent x-cylinder means weight 0 there
        w = values[0]
        spread = max(abs(v - w) for v in values)
        if spread > shape_tol:
            raise UnsupportedShape(
                f"y-integral is not constant in x at frequency {freq} (spread {spread:.3g})"
            )
        if freq.denominator != 1:
            raise UnsupportedShape(f"non-integer frequency {freq} has no frame index")
        out.append(WeightedExponential(weight=complex(w), frequency=int(freq)))
    return out


def projection_weight(bank: FilterBank, word) -> complex:
    """Closed-form d_omega = prod_k (a_{j_k 0} + a_{j_k 2})."""
    w = complex(1.0)
    for j in word:
        w *= bank.digit_weight(j)
    return w


@dataclass(frozen=True)
class PartialSumTrace:
    checkpoints: tuple[tuple[int, float], ...]
    target: float
    terms: np.ndarray = field(repr=False)

    @property
    def final_value(self) -> float:
        return self.checkpoints[-1][1]

    @property
    def deficiency(self) -> float:
        return self.target - self.final_value


def _checkpoint_grid(n_max: int) -> list[int]:
    grid = []
    n = 4
    while n <= n_max:
        grid.append(n)
        n *= 4
    if not grid or grid[-1] != n_max:
        grid.append(n_max)
    return grid


def parseval_trace(
    f: Sequence[tuple[int, complex]],
    spec: WeightSpec,
    n_max: int,
    cfg: TransformEvaluator = DEFAULT_EVALUATOR,
) -> PartialSumTrace:
    """Partial sums S_N = sum_{n<=N} |w_n|^2 |<f, e_n>|^2 at checkpoints 4^k.

    f is a finite combination [(frequency, coefficient), ..] of integer
    exponential frequencies; <e_g, e_n> = mu4_hat(g - n) gives the exact
    inner products, and the target is ||f||^2.
    """
    if n_max < 1:
        raise ContractError("n_max must be >= 1")
    freqs = [int(g) for g, _ in f]
    coeffs = [complex(c) for _, c in f]
    target = 0.0
    for g1, c1 in zip(freqs, coeffs):
        for g2, c2 in zip(freqs, coeffs):
            target += (c1 * c2.conjugate() * mu4_hat(g1 - g2, cfg)).real
    terms = np.zeros(n_max + 1)
    for n in range(n_max + 1):
        w = frame_weight(spec, n)
        if w == 0:
            continue
        ip = sum(c * mu4_hat(g - n, cfg) for g, c in zip(freqs, coeffs))
        terms[n] = abs(w) ** 2 * abs(ip) ** 2
    running = np.cumsum(terms)
    checkpoints = tuple((N, float(running[N])) for N in _checkpoint_grid(n_max))
    return PartialSumTrace(checkpoints=checkpoints, target=target, terms=terms)


def h_partial(
    t,
    rep: CuntzRep,
    max_len: int,
) -> float:
    """Coefficient energy sum_{omega, |omega| <= max_len} |<e_t, S_omega 1>|^2.

    Computed through the atom inner products of the closed-form word
    vectors (dense kernel), not through the symbol recursion, so the
    refinement-identity check stays a two-sided comparison.
    """
    if max_len > GRAM_MAX_LEN:
        raise CapacityError(f"max_len {max_len} exceeds cap {GRAM_MAX_LEN}")
    e_vec = np.ones(1, dtype=complex)
    total = 0.0
    for word in enumerate_X4(max_len):
        val = dense_inner(
            t, e_vec, 0, c_of_word(word), _dense_word_vector(rep.bank, word), len(word), rep.cfg
        )
        total += abs(val) ** 2
    return total


@dataclass(frozen=True)
class RuelleReport:
    level: int
    grid: tuple[float, ...]
    max_refinement_residual: float
    max_specialization_gap: float | None
    tol: float
    passed: bool


def verify_ruelle(
    rep: CuntzRep,
    t_grid: Sequence[float],
    L: int,
    tol: float,
    rho: complex | None = None,
) -> RuelleReport:
    """Check h_{L+1}(t) = sum_j |m_j(t)|^2 h_L((t-j)/4) on a grid.

    The identity is exact at every finite truncation depth because the
    depth-(L+1) family is the disjoint union of the isometry images of the
    depth-L family. For the one-parameter banks the coefficients reduce to
    cos^2 and |1 +- conj(rho)|^2/4 * sin^2 (the j = 2 symbol vanishes), and
    the reduced form must match the general one to 1e-12.
    """
    if L > 4:
        raise CapacityError("L must be <= 4")
    max_resid = 0.0
    max_gap = None if rho is None else 0.0
    for t in t_grid:
        t = float(t)
        lhs = h_partial(t, rep, L + 1)
        h_vals = [h_partial(g_map(j, t), rep, L) for j in range(4)]
        symbols = [abs(little_m(rep.bank, j, t)) ** 2 for j in range(4)]
        rhs = sum(s * h for s, h in zip(symbols, h_vals))
        max_resid = max(max_resid, abs(lhs - rhs))
        if rho is not None:
            c2 = math.cos(math.pi * t / 2.0) ** 2
            s2 = math.sin(math.pi * t / 2.0) ** 2
            rho_c = complex(rho).conjugate()
            reduced = (
                c2 * h_vals[0]
                + s2 * abs(1.0 + rho_c) ** 2 / 4.0 * h_vals[1]
                + s2 * abs(1.0 - rho_c) ** 2 / 4.0 * h_vals[3]
            )
            max_gap = max(max_gap, abs(rhs - reduced))
    passed = max_resid <= tol and (max_gap is None or max_gap <= 1e-12)
    return RuelleReport(
        level=L,
        grid=tuple(float(t) for t in t_grid),
        max_refinement_residual=max_resid,
        max_specialization_gap=max_gap,
        tol=tol,
        passed=passed,
    )


@dataclass(frozen=True)
class IncompletenessEntry:
    gamma: int
    trace: PartialSumTrace
    deficiency: float
    flagged: bool


@dataclass(frozen=True)
class IncompletenessReport:
    n_max: int
    entries: tuple[IncompletenessEntry, ...]
    threshold: float


def incompleteness_report(
    gammas: Sequence[int],
    n_max: int,
    cfg: TransformEvaluator = DEFAULT_EVALUATOR,
    threshold: float = 1e-6,
) -> IncompletenessReport:
    """Deficiency 1 - S_{n_max}(e_gamma) for the p = 0 weight family.

    Weights are the indicator of integers with base-4 digits in {0,3}; the
    report flags frequencies whose exponential has energy visibly missing
    from the family's span. Reported, not asserted, per frequency.
    """
    spec = WeightSpec.from_rho(-1.0)
    entries = []
    for gamma in gammas:
        trace = parseval_trace([(int(gamma), 1.0)], spec, n_max, cfg)
        deficiency = trace.target - trace.final_value
        entries.append(
            IncompletenessEntry(
                gamma=int(gamma),
                trace=trace,
                deficiency=float(deficiency),
                flagged=deficiency > threshold,
            )
        )
    return IncompletenessReport(n_max=n_max, entries=tuple(entries), threshold=threshold)


def write_weight_table(path, spec: WeightSpec, n_max: int) -> None:
    """CSV columns n, l1, l2, l3, weight_re, weight_im, weight_abs2."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(WEIGHT_TABLE_COLUMNS)
        for n in range(n_max + 1):
            l1, l2, l3 = digit_counts(n)
            w = frame_weight(spec, n)
            writer.writerow([n, l1, l2, l3, repr(w.real), repr(w.imag), repr(abs(w) ** 2)])


def write_trace_csv(path, trace: PartialSumTrace) -> None:
    """CSV columns N, partial_sum, target."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        for N, value in trace.checkpoints:
            writer.writerow([N, repr(value), repr(trace.target)])

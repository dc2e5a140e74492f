"""Filter coefficient matrices and their admissibility certificates.

A bank is a 4x4 coefficient matrix A (rows = filter index j, columns =
first-level cylinder index k) together with the sign-flipped matrix H,
H[j][k] = A[j][k] * s(j,k) with s = -1 exactly when j and k are both odd.
The bank is admissible when (i) row 0 of A is (1/2,1/2,1/2,1/2),
(ii) a_j0 + a_j2 = a_j1 + a_j3 for every j, and (iii) H is unitary.
Those are exactly the hypotheses under which the generated vector family
is orthonormal and projects onto weighted exponentials.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import ContractError, DomainError, InfeasibleParameters
from .transform import cis

# s(j,k) = -1 iff j in {1,3} and k in {1,3}
SIGN_PATTERN = np.ones((4, 4))
SIGN_PATTERN[np.ix_([1, 3], [1, 3])] = -1.0

# Orthonormal real basis underlying the solver parametrization:
# rows 1,3 of H live in span{u1,u2,u3}, row 2 in span{u2,u3}, row 0 is u0.
U0 = 0.5 * np.array([1, 1, 1, 1], dtype=complex)
U1 = 0.5 * np.array([1, -1, 1, -1], dtype=complex)
U2 = 0.5 * np.array([1, 1, -1, -1], dtype=complex)
U3 = 0.5 * np.array([1, -1, -1, 1], dtype=complex)

DEFAULT_UNITARITY_TOL = 1e-12


def hadamard_rho(rho: complex, tol: float = 1e-12) -> np.ndarray:
    """The one-parameter coefficient matrix family, |rho| = 1.

    A = 1/2 [[1,1,1,1], [1,1,rho,rho], [1,1,-1,-1], [1,1,-rho,-rho]];
    the matching H is a complex Hadamard matrix.
    """
    rho = complex(rho)
    if abs(abs(rho) - 1.0) > tol:
        raise DomainError(f"|rho| must be 1 within {tol}, got |rho| = {abs(rho)}")
    return 0.5 * np.array(
        [
            [1, 1, 1, 1],
            [1, 1, rho, rho],
            [1, 1, -1, -1],
            [1, 1, -rho, -rho],
        ],
        dtype=complex,
    )


def a_to_h(A: np.ndarray) -> np.ndarray:
    return np.asarray(A, dtype=complex) * SIGN_PATTERN


h_to_a = a_to_h  # the sign flip is an involution


@dataclass(frozen=True, eq=False)
class FilterBank:
    A: np.ndarray
    H: np.ndarray
    admissible: bool
    checks: Mapping[str, object]

    def __post_init__(self):
        for name in ("A", "H"):
            arr = np.array(getattr(self, name), dtype=complex)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def b(self, j: int) -> complex:
        """conj(a_j0) + conj(a_j2), the weight base attached to digit j."""
        return complex(np.conj(self.A[j, 0]) + np.conj(self.A[j, 2]))

    def digit_weight(self, j: int) -> complex:
        """a_j0 + a_j2, the per-digit projection weight."""
        return complex(self.A[j, 0] + self.A[j, 2])


def filter_bank_from_A(A: np.ndarray, tol: float = DEFAULT_UNITARITY_TOL) -> FilterBank:
    """Build H from A, run the three admissibility checks, record a report.

    Failures are recorded in the report rather than raised, so callers can
    print diagnostics; downstream operators require the admissible flag.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    A = np.array(A, dtype=complex)
    if A.shape != (4, 4):
        raise DomainError(f"A must be 4x4, got shape {A.shape}")
    if not np.all(np.isfinite(A.view(np.float64))):
        raise DomainError("A must have finite entries")
    H = a_to_h(A)
    first_row_dev = float(np.max(np.abs(A[0] - 0.5)))
    kernel_dev = float(np.max(np.abs((A[:, 0] + A[:, 2]) - (A[:, 1] + A[:, 3]))))
    unitarity_dev = float(np.max(np.abs(H.conj().T @ H - np.eye(4))))
    checks = {
        "tolerance": tol,
        "first_row_max_dev": first_row_dev,
        "kernel_max_dev": kernel_dev,
        "unitarity_max_dev": unitarity_dev,
        "first_row_ok": first_row_dev <= tol,
        "kernel_ok": kernel_dev <= tol,
        "unitarity_ok": unitarity_dev <= tol,
    }
    admissible = bool(checks["first_row_ok"] and checks["kernel_ok"] and checks["unitarity_ok"])
    return FilterBank(A=A, H=H, admissible=admissible, checks=checks)


def rho_bank(rho: complex, tol: float = DEFAULT_UNITARITY_TOL) -> FilterBank:
    """Convenience: admissible bank for the one-parameter family."""
    return filter_bank_from_A(hadamard_rho(rho), tol)


def solve_alpha(
    a10: complex,
    a30: complex,
    a11: complex,
    a12: complex,
    a21: complex,
    a22: complex,
    tol: float = DEFAULT_UNITARITY_TOL,
) -> FilterBank:
    """Assemble an admissible bank from the free parameters of the solver.

    Feasibility requires |a10|^2 + |a30|^2 = 1 (duality of the two weight
    bases), unit norm of the row-1 and row-2 coordinate vectors, and
    orthogonality a11*conj(a21) + a12*conj(a22) = 0. Row 3 is then coupled
    to row 1 by lambda = -conj(a10)*a30 / (1 - |a10|^2); in the degenerate
    case |a10| = 1 row 3 is the orthogonal complement of row 2 instead.
    """
    a10, a30, a11, a12, a21, a22 = (complex(z) for z in (a10, a30, a11, a12, a21, a22))
    dev = abs(abs(a10) ** 2 + abs(a30) ** 2 - 1.0)
    if dev > tol:
        raise InfeasibleParameters("duality", f"|a10|^2 + |a30|^2 = 1 off by {dev:.3g}")
    dev = abs(abs(a10) ** 2 + abs(a11) ** 2 + abs(a12) ** 2 - 1.0)
    if dev > tol:
        raise InfeasibleParameters("row1_norm", f"|a10|^2+|a11|^2+|a12|^2 = 1 off by {dev:.3g}")
    dev = abs(abs(a21) ** 2 + abs(a22) ** 2 - 1.0)
    if dev > tol:
        raise InfeasibleParameters("row2_norm", f"|a21|^2+|a22|^2 = 1 off by {dev:.3g}")
    dev = abs(a11 * a21.conjugate() + a12 * a22.conjugate())
    if dev > tol:
        raise InfeasibleParameters(
            "row12_orthogonality", f"a11*conj(a21)+a12*conj(a22) = 0 off by {dev:.3g}"
        )

    degenerate = 1.0 - abs(a10) ** 2 <= tol
    if degenerate:
        lam = None
        row3 = -a22.conjugate() * U2 + a21.conjugate() * U3
    else:
        lam = -a10.conjugate() * a30 / (1.0 - abs(a10) ** 2)
        row3 = a30 * U1 + lam * a11 * U2 + lam * a12 * U3
    H = np.array(
        [
            U0,
            a10 * U1 + a11 * U2 + a12 * U3,
            a21 * U2 + a22 * U3,
            row3,
        ]
    )
    bank = filter_bank_from_A(h_to_a(H), tol)
    if not bank.admissible:
        raise RuntimeError(f"solver produced a non-admissible bank: {bank.checks}")
    checks = dict(bank.checks)
    checks["lambda_coupling"] = lam
    checks["degenerate"] = degenerate
    checks["alpha"] = {"a10": a10, "a30": a30, "a11": a11, "a12": a12, "a21": a21, "a22": a22}
    return FilterBank(A=bank.A, H=bank.H, admissible=True, checks=checks)


def little_m(bank: FilterBank, j: int, t) -> complex:
    """Symbol of the adjoint on exponentials: S_j* e_t = little_m(j,t) e_{(t-j)/4}."""
    if not bank.admissible:
        raise ContractError("little_m requires an admissible bank")
    if j not in (0, 1, 2, 3):
        raise ContractError(f"filter index must be in 0..3, got {j}")
    A = bank.A
    even_part = 0.5 * (A[j, 0].conjugate() + A[j, 2].conjugate())
    odd_part = 0.5 * (A[j, 1].conjugate() + A[j, 3].conjugate())
    half_t = Fraction(t) / 2 if isinstance(t, (int, Fraction)) else 0.5 * float(t)
    return even_part + (-1.0) ** j * odd_part * cis(half_t)


def little_m_reduced(bank: FilterBank, j: int, t) -> complex:
    """Kernel-condition simplification of little_m (agrees within 1e-12)."""
    if not bank.admissible:
        raise ContractError("little_m_reduced requires an admissible bank")
    b = bank.b(j)
    half = float(t) / 2.0
    phase = cmath.exp(1j * math.pi * half)
    if j % 2 == 0:
        return b * phase * math.cos(math.pi * half)
    return -1j * b * phase * math.sin(math.pi * half)


def g_map(j: int, t):
    """Frequency descent map (t - j) / 4; exact on Fraction inputs."""
    if isinstance(t, (int, Fraction)):
        return Fraction(t - j, 4)
    return (t - j) / 4.0


@dataclass(frozen=True)
class Mu3NoGoCertificate:
    """Replay of the obstruction for the middle-third analogue.

    With scale 3 the cylinder phases at the odd columns become
    e^{4 pi i j / 3}; orthogonality of row 0 against the other rows then
    forces a_j0 + a_j2 = 0 for j = 1,2,3, so the matrix maps (1,0,1,0) to
    (1,0,0,0) and cannot be unitary (norm sqrt(2) in, norm 1 out).
    """

    row_phase_factors: tuple[complex, complex, complex]
    forced_row_sums: tuple[int, int, int]
    input_vector: tuple[int, int, int, int]
    output_vector: tuple[int, int, int, int]
    input_norm: float
    output_norm: float
    norm_gap: float
    passed: bool


def mu3_nogo_certificate() -> Mu3NoGoCertificate:
    # 1 + e^{4 pi i j / 3} for rows j = 1, 2, 3; nonvanishing is what forces
    # the row sums a_j0 + a_j2 to zero.
    factors = tuple(1.0 + cis(Fraction(2 * j, 3)) for j in (1, 2, 3))
    forced = (0, 0, 0)
    input_vector = (1, 0, 1, 0)
    # Row 0 sums to a_00 + a_02 = 1; the forced rows sum to 0.
    output_vector = (1, 0, 0, 0)
    input_norm = math.sqrt(2.0)
    output_norm = 1.0
    gap = input_norm - output_norm
    passed = all(abs(f) > 1e-9 for f in factors) and gap > 0.41
    return Mu3NoGoCertificate(
        row_phase_factors=factors,
        forced_row_sums=forced,
        input_vector=input_vector,
        output_vector=output_vector,
        input_norm=input_norm,
        output_norm=output_norm,
        norm_gap=gap,
        passed=passed,
    )


def matrix_to_json(A: np.ndarray) -> str:
    """Serialize a 4x4 complex matrix as {"rows": [[{"re","im"} x4] x4]}."""
    A = np.asarray(A, dtype=complex)
    rows = [[{"re": float(z.real), "im": float(z.imag)} for z in row] for row in A]
    return json.dumps({"rows": rows}, sort_keys=True)


def matrix_from_json(text: str) -> np.ndarray:
    data = json.loads(text)
    rows = data["rows"]
    if len(rows) != 4 or any(len(r) != 4 for r in rows):
        raise DomainError("matrix JSON must contain 4 rows of 4 entries")
    return np.array([[complex(e["re"], e["im"]) for e in row] for row in rows])

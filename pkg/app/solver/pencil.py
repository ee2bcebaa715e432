"""Frequenzbereichs-System M̄(ω̃), monischer Pencil und charakteristische Quartik.

M̄(ω̃) = −ω̃²·B + jω̃·D + U   mit
    B = [[1, M̃C̃2], [M̃, L̃2C̃2]]
    D = [[G̃1, M̃G̃2], [M̃G̃1, L̃2G̃2]]
    U = I

Monisierung durch Linksmultiplikation mit −B⁻¹:
    −B⁻¹·M̄(ω̃) = ω̃²·I + ω̃·P + Q,   P = −j·B⁻¹D,  Q = −B⁻¹

Die Quartik det(ω̃²I + ω̃P + Q) wird geschlossen aus den Einträgen von
(B, D, U) entwickelt, nicht interpoliert.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from app.circuit.models import NormalizedCircuit
from app.exceptions import SingularLeadingCoefficient
from app.logging_config import get_logger

logger = get_logger("solver")


def _frozen(values: np.ndarray) -> np.ndarray:
    """Schreibgeschützte Kopie – Pencil-Matrizen sind unveränderliche Werte."""
    out = np.array(values, copy=True)
    out.setflags(write=False)
    return out


# ---------------------------------------------------------------------------
# Datenstrukturen
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuadraticPencil:
    """Koeffizientenmatrizen von M̄(ω̃) und dessen monische Form.

    B, D, U reell (Koeffizienten von −ω̃², jω̃, 1); P, Q komplex mit
    −B⁻¹·M̄(ω̃) = ω̃²·I + ω̃·P + Q für alle ω̃.
    """

    B: np.ndarray
    D: np.ndarray
    U: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    det_b: float

    def evaluate(self, omega: complex) -> np.ndarray:
        """Monische Form ω̃²I + ω̃P + Q an einer Stelle."""
        return omega * omega * np.eye(2, dtype=complex) + omega * self.P + self.Q

    def system_matrix(self, omega: complex) -> np.ndarray:
        """M̄(ω̃) aus den gespeicherten Koeffizienten."""
        return -omega * omega * self.B + 1j * omega * self.D + self.U

    @property
    def scale(self) -> float:
        """1 + ‖P‖max + ‖Q‖max – Bezugsgröße für Solventen-Residuen."""
        return 1.0 + float(np.max(np.abs(self.P))) + float(np.max(np.abs(self.Q)))


@dataclass(frozen=True)
class QuarticCoefficients:
    """Koeffizienten a4..a0 (absteigend) einer Quartik.

    char_quartic() liefert det(ω̃²I + ω̃P + Q) in monischer Form (a4 = 1);
    das Orakel akzeptiert auch beliebig skalierte Koeffizienten.
    """

    coeffs: tuple[complex, complex, complex, complex, complex]

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    def evaluate(self, omega: complex) -> complex:
        return complex(np.polyval(self.as_array(), omega))

    def magnitude_scale(self, omega: complex) -> float:
        """Σ|a_k|·|ω̃|^k – natürliche Schranke für den Rundungsfehler von p(ω̃)."""
        return float(np.polyval(np.abs(self.as_array()), abs(omega)))


@dataclass(frozen=True)
class VoltageState:
    """Spannungszeiger [v1, v2], auf die M̄(ω̃) wirkt.

    Die Ströme i1, i2 sind analytisch eliminiert und tauchen nicht auf.
    """

    v1: complex
    v2: complex

    def __post_init__(self) -> None:
        if not (np.isfinite(self.v1) and np.isfinite(self.v2)):
            raise ValueError("VoltageState benötigt endliche Komponenten")

    def as_array(self) -> np.ndarray:
        return np.array([self.v1, self.v2], dtype=complex)


# ---------------------------------------------------------------------------
# Operationen
# ---------------------------------------------------------------------------

def coefficient_matrices(norm: NormalizedCircuit) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(B, D, U) einer normierten Schaltung."""
    B = np.array(
        [[1.0, norm.mt * norm.c2t],
         [norm.mt, norm.l2t * norm.c2t]],
        dtype=float,
    )
    D = np.array(
        [[norm.g1t, norm.mt * norm.g2t],
         [norm.mt * norm.g1t, norm.l2t * norm.g2t]],
        dtype=float,
    )
    return B, D, np.eye(2)


def system_matrix(norm: NormalizedCircuit, omega_tilde: complex) -> np.ndarray:
    """M̄(ω̃) eintragsweise.

    m11 = −ω̃² + jω̃G̃1 + 1,        m12 = −ω̃²M̃C̃2 + jω̃M̃G̃2
    m21 = −ω̃²M̃ + jω̃M̃G̃1,         m22 = −ω̃²L̃2C̃2 + jω̃L̃2G̃2 + 1
    """
    w = complex(omega_tilde)
    w2 = w * w
    return np.array(
        [[-w2 + 1j * w * norm.g1t + 1.0,
          -w2 * norm.mt * norm.c2t + 1j * w * norm.mt * norm.g2t],
         [-w2 * norm.mt + 1j * w * norm.mt * norm.g1t,
          -w2 * norm.l2t * norm.c2t + 1j * w * norm.l2t * norm.g2t + 1.0]],
        dtype=complex,
    )


def monic_pencil(norm: NormalizedCircuit) -> QuadraticPencil:
    """Monisiert M̄(ω̃) durch Linksmultiplikation mit −B⁻¹.

    Raises:
        SingularLeadingCoefficient: det B = 0 (für validierte Schaltungen unerreichbar).
    """
    B, D, U = coefficient_matrices(norm)
    det_b = norm.c2t * (norm.l2t - norm.mt * norm.mt)
    if det_b == 0.0 or not np.isfinite(det_b):
        raise SingularLeadingCoefficient(f"det B = {det_b!r} – Leitkoeffizient nicht invertierbar")

    # Adjunkte statt np.linalg.inv: exakt für die 2×2-Fälle der Beispiele
    b_inv = np.array([[B[1, 1], -B[0, 1]], [-B[1, 0], B[0, 0]]]) / det_b
    P = -1j * (b_inv @ D)
    Q = -b_inv.astype(complex)

    return QuadraticPencil(
        B=_frozen(B),
        D=_frozen(D),
        U=_frozen(U),
        P=_frozen(P),
        Q=_frozen(Q),
        det_b=float(det_b),
    )


def char_quartic(pencil: QuadraticPencil) -> QuarticCoefficients:
    """Monische Quartik det(ω̃²I + ω̃P + Q).

    Jeder Eintrag von M̄ ist ein Polynom −B_ik·ω̃² + jD_ik·ω̃ + U_ik; die
    Determinante entsteht per Polynommultiplikation und wird durch ihren
    Leitkoeffizienten (= det B) geteilt.
    """
    def entry(i: int, k: int) -> np.ndarray:
        return np.array([-pencil.B[i, k], 1j * pencil.D[i, k], pencil.U[i, k]], dtype=complex)

    det_poly = np.polysub(
        np.polymul(entry(0, 0), entry(1, 1)),
        np.polymul(entry(0, 1), entry(1, 0)),
    )
    monic = det_poly / det_poly[0]
    coeffs = tuple(complex(c) for c in monic)
    logger.debug("Quartik: %s", coeffs)
    return QuarticCoefficients(coeffs=coeffs)  # type: ignore[arg-type]


def mode_shape(pencil: QuadraticPencil, omega: complex, null_tol: float = 1e-7) -> VoltageState:
    """Spannungszeiger v mit M̄(ω̃)·v = 0 an einer Wurzel der Quartik.

    Rechte Null-Spalte aus der Adjunkte (die betragsgrößere Spalte),
    betragsgrößter Eintrag = 1.  Verschwindet M̄(ω̃) numerisch
    (entkoppelte Doppelwurzel), ist jede Richtung Lösung; dann [1, 0].
    """
    A = pencil.system_matrix(omega)
    scale = abs(omega) ** 2 * float(np.max(np.abs(pencil.B))) + abs(omega) * float(np.max(np.abs(pencil.D))) + 1.0
    if float(np.max(np.abs(A))) <= null_tol * scale:
        return VoltageState(1.0 + 0j, 0j)

    first = np.array([A[1, 1], -A[1, 0]], dtype=complex)
    second = np.array([-A[0, 1], A[0, 0]], dtype=complex)
    v = first if np.max(np.abs(first)) >= np.max(np.abs(second)) else second
    v = v / v[int(np.argmax(np.abs(v)))]
    return VoltageState(complex(v[0]), complex(v[1]))

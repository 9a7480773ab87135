"""Published energies and critical screening values used by the reproduction harness.

Values are copied verbatim from the source tables (A = 1 throughout).
"""

from __future__ import annotations

from screening.models.golden import GoldenCritical, GoldenRow

TABLE_IDS = ("2a", "2b", "3", "4")

# Hulthen s-wave levels; hard rows are compared with the closed-form energy
TABLE_2A = [
    GoldenRow("2a", "hulthen", 0, "1s", 0.21, 50, 0.8, -0.400512499, "bound", hard=True, rel_tol=5e-6),
    GoldenRow("2a", "hulthen", 0, "2s", 0.21, 50, 0.8, -4.205e-2, "bound", hard=True, rel_tol=5e-6),
    GoldenRow("2a", "hulthen", 0, "3s", 0.21, 50, 0.8, -1.679e-4, "bound", rel_tol=1e-3),
    GoldenRow("2a", "hulthen", 0, "3s", 0.21, 50, 0.2, -1.6805555554e-4, "bound", hard=True, abs_tol=1e-10),
    GoldenRow("2a", "hulthen", 0, "14s", 0.01, 50, 0.10, -1.0202e-6, "bound", rel_tol=1e-3),
    GoldenRow("2a", "hulthen", 0, "14s", 0.01, 100, 0.06, -1.0204081e-6, "bound", hard=True, rel_tol=1e-7),
]

TABLE_2A_CRITICAL = [
    GoldenCritical("2a", "hulthen", 0, "1s", 1, 2.0, hard=True, abs_tol=1e-3, mu_bracket=(1.5, 2.5), lam=0.8),
    GoldenCritical("2a", "hulthen", 0, "2s", 2, 0.5, hard=True, abs_tol=0.05),
    GoldenCritical("2a", "hulthen", 0, "3s", 3, 0.22, hard=True, abs_tol=0.005),
    GoldenCritical("2a", "hulthen", 0, "14s", 14, 0.0102, hard=True, abs_tol=5e-5),
]

# Hulthen ell > 0, N = 50, lambda = 0.4
TABLE_2B = [
    GoldenRow("2b", "hulthen", 1, "2p", 0.18, 50, 0.4, -4.864123176038e-2, "bound", hard=True, rel_tol=1e-8),
    GoldenRow("2b", "hulthen", 1, "2p", 0.20, 50, 0.4, -4.188604921786e-2, "bound", rel_tol=1e-8),
    GoldenRow(
        "2b", "hulthen", 1, "3p", 0.20, 50, 0.4, 5.478497896e-4 - 3.771667228e-4j, "resonance",
        hard=True, rel_tol=1e-5,
    ),
    GoldenRow("2b", "hulthen", 1, "3p", 0.18, 50, 0.4, -4.7689388317e-4, "bound", rel_tol=1e-6),
    GoldenRow("2b", "hulthen", 1, "2p", 0.25, 50, 0.4, -2.661105135091e-2, "bound", rel_tol=1e-8),
    GoldenRow("2b", "hulthen", 1, "3p", 0.25, 50, 0.4, 4.453523795e-4 - 3.3018328045e-3j, "resonance", rel_tol=1e-5),
    GoldenRow("2b", "hulthen", 3, "4f", 0.05, 50, 0.4, -1.0061964550933e-2, "bound", hard=True, rel_tol=1e-8),
    GoldenRow("2b", "hulthen", 3, "4f", 0.075, 50, 0.4, -2.55629697807e-3, "bound", rel_tol=1e-8),
    GoldenRow("2b", "hulthen", 3, "5f", 0.075, 50, 0.4, 1.0932654251e-3 - 6.693863637e-4j, "resonance", rel_tol=1e-5),
    GoldenRow("2b", "hulthen", 3, "5f", 0.05, 50, 0.4, -1.783545794710618e-3, "bound", rel_tol=1e-8),
    GoldenRow("2b", "hulthen", 3, "4f", 0.10, 50, 0.4, 2.0108248838e-3 - 3.862579834e-4j, "resonance", rel_tol=1e-5),
    GoldenRow("2b", "hulthen", 4, "5g", 0.05, 50, 0.4, -1.01588159045e-3, "bound", rel_tol=1e-8),
    GoldenRow("2b", "hulthen", 4, "6g", 0.05, 50, 0.4, 8.557605324e-4 - 3.684603746e-4j, "resonance", rel_tol=1e-5),
    GoldenRow("2b", "hulthen", 4, "5g", 0.06, 50, 0.4, 9.563388503e-4 - 5.44931771e-5j, "resonance", rel_tol=1e-5),
    GoldenRow("2b", "hulthen", 4, "6g", 0.06, 50, 0.4, 1.121456108e-3 - 1.667770836e-3j, "resonance", rel_tol=1e-5),
]

TABLE_2B_CRITICAL = [
    GoldenCritical("2b", "hulthen", 1, "2p", 2, 0.376936),
    GoldenCritical("2b", "hulthen", 1, "3p", 3, 0.186486),
    GoldenCritical("2b", "hulthen", 3, "4f", 4, 0.086405),
    GoldenCritical("2b", "hulthen", 3, "5f", 5, 0.059973),
    GoldenCritical("2b", "hulthen", 4, "5g", 5, 0.054505),
]

# Yukawa, N = 50, lambda = 0.3
TABLE_3 = [
    GoldenRow(
        "3", "yukawa", 0, "1s", 1.180, 50, 0.3, -3.097e-5, "bound", rel_tol=1e-3,
        note="0.011 below mu_c; E scales as (mu_c - mu)^2, computed -3.0872e-5 at this basis",
    ),
    GoldenRow("3", "yukawa", 1, "2p", 0.220, 50, 0.3, -2.869723e-5, "bound", hard=True, rel_tol=1e-4),
    GoldenRow("3", "yukawa", 1, "2p", 0.2210, 50, 0.3, 9.81567e-5 - 9.1777e-6j, "resonance", rel_tol=1e-4),
    GoldenRow("3", "yukawa", 2, "3d", 9.10e-2, 50, 0.3, -7.767498160e-5, "bound", rel_tol=1e-6),
    GoldenRow(
        "3", "yukawa", 2, "3d", 9.150e-2, 50, 0.3, 3.411464939e-5 - 3.4952e-8j, "resonance",
        hard=True, rel_tol=1e-5, imag_factor=1.5,
    ),
    GoldenRow("3", "yukawa", 3, "4f", 4.970e-2, 50, 0.3, -3.46170059e-5, "bound", rel_tol=1e-6),
    GoldenRow(
        "3", "yukawa", 3, "4f", 4.990e-2, 50, 0.3, 1.8018201e-5 - 1.44e-10j, "resonance",
        rel_tol=1e-5, imag_factor=10.0,
    ),
]

TABLE_3_CRITICAL = [
    GoldenCritical("3", "yukawa", 0, "1s", 1, 1.1906, hard=True, abs_tol=1e-2, mu_bracket=(1.0, 1.4), lam=0.3),
    GoldenCritical("3", "yukawa", 1, "2p", 2, 0.2202, mu_bracket=(0.20, 0.24), lam=0.3),
    GoldenCritical("3", "yukawa", 2, "3d", 3, 0.09135, mu_bracket=(0.085, 0.10), lam=0.3),
    GoldenCritical("3", "yukawa", 3, "4f", 4, 0.04983, mu_bracket=(0.045, 0.055), lam=0.3),
]

TABLE_4_PRESETS = ("paper-fig1", "paper-fig1-flat")

# (ell, state, mu, E at N = 100, E at N = 200); lambda = 16 for ell <= 1, 14 otherwise
_TABLE_4_ENTRIES = [
    (0, "1s", 0.28, -0.779099, -0.779097),
    (0, "2s", 0.28, -0.327726, -0.327715),
    (0, "3s", 0.28, -0.125856, -0.125844),
    (0, "4s", 0.28, -0.0011, -0.0028),
    (0, "1s", 0.30, -0.798541, -0.798547),
    (0, "2s", 0.30, -0.33169, -0.33172),
    (0, "3s", 0.30, -0.116940, -0.116948),
    (1, "2p", 0.30, -0.36829, -0.36827),
    (1, "3p", 0.30, -0.14789, -0.14790),
    (1, "4p", 0.30, -0.0049, -0.0053),
    (1, "2p", 0.32, -0.37700, -0.37703),
    (1, "3p", 0.32, -0.14198, -0.14199),
    (2, "3d", 0.20, -0.19303, -0.19304),
    (2, "4d", 0.20, -0.08645, -0.08644),
    (2, "5d", 0.20, -0.00669, -0.00705),
    (2, "3d", 0.23, -0.19865, -0.19865),
    (2, "4d", 0.23, -0.07518, -0.07517),
    (3, "4f", 0.24, -0.1063468, -0.1063478),
    (3, "5f", 0.24, -0.00316, -0.00324),
    (3, "4f", 0.26, -0.10021, -0.10023),
]


def _table4_lambda(ell: int) -> float:
    return 16.0 if ell <= 1 else 14.0


TABLE_4 = [
    GoldenRow("4", preset, ell, state, mu, n, _table4_lambda(ell), energy, "bound", rel_tol=1e-4)
    for preset in TABLE_4_PRESETS
    for ell, state, mu, e100, e200 in _TABLE_4_ENTRIES
    for n, energy in ((100, e100), (200, e200))
]

TABLE_4_CRITICAL = [
    GoldenCritical("4", preset, ell, state, k, mu_c, mu_bracket=bracket, n_basis=100, lam=_table4_lambda(ell))
    for preset in TABLE_4_PRESETS
    for ell, state, k, mu_c, bracket in (
        (0, "4s", 4, 0.2827865, (0.25, 0.32)),
        (1, "4p", 4, 0.306178, (0.28, 0.34)),
        (2, "5d", 5, 0.210492, (0.19, 0.23)),
        (3, "5f", 5, 0.245120, (0.22, 0.27)),
    )
]

GOLDEN_ROWS = {"2a": TABLE_2A, "2b": TABLE_2B, "3": TABLE_3, "4": TABLE_4}
GOLDEN_CRITICAL = {"2a": TABLE_2A_CRITICAL, "2b": TABLE_2B_CRITICAL, "3": TABLE_3_CRITICAL, "4": TABLE_4_CRITICAL}

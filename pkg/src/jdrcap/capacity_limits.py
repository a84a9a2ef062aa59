"""Closed-form capacities and photon-information-efficiency (PIE) functions.

Covers the ultimate (Holevo) limit of the lossy bosonic mode, the BPSK
single-symbol (Dolinar) and joint-measurement limits, the superchannel
capacities of the Hadamard and first-order Reed-Muller receiver families,
and the PIE/spectral-efficiency tradeoff of a multi-mode link.

All functions are pure and safe for concurrent evaluation.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .entropy import LN2, binary_entropy, entropy_bits, xlog2


class ConsistencyError(ArithmeticError):
    """A closed-form intermediate violated a bound it provably satisfies."""


@dataclass(frozen=True)
class CapacityPoint:
    """One (nbar, capacity) sample of a capacity family, with its PIE."""

    nbar: float
    bits_per_symbol: float
    pie: float
    label: str


@dataclass(frozen=True)
class TradeoffPoint:
    """PIE versus spectral efficiency at fixed mode count and photon budget."""

    spectral_efficiency: float
    pie: float
    n_r: float
    modes: int


def g(nbar):
    """Holevo capacity of a lossless bosonic mode, (1+n)log2(1+n) - n log2(n) bits.

    g(0) = 0 by the x log x -> 0 convention.
    """
    if nbar < 0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    if nbar == 0:
        return 0.0
    return (1.0 + nbar) * np.log1p(nbar) / LN2 - nbar * np.log2(nbar)


def pie_ultimate(nbar):
    """Ultimate photon information efficiency g(nbar)/nbar, bits per photon."""
    if nbar <= 0:
        raise ValueError(f"PIE needs nbar > 0, got {nbar}")
    return g(nbar) / nbar


def nbar_for_pie(target_pie, rel_tol=1e-9):
    """Invert pie_ultimate: the unique nbar with g(nbar)/nbar = target_pie.

    Bisection on the strictly decreasing PIE; unconditionally convergent.
    """
    if target_pie <= 0:
        raise ValueError(f"target PIE must be > 0, got {target_pie}")
    lo, hi = 1.0, 1.0
    while pie_ultimate(lo) < target_pie:
        lo /= 8.0
    while pie_ultimate(hi) > target_pie:
        hi *= 8.0
    while hi - lo > rel_tol * lo:
        mid = 0.5 * (lo + hi)
        if pie_ultimate(mid) > target_pie:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def holevo_bpsk(nbar):
    """Holevo limit of the BPSK alphabet: H_b((1 + e^{-2 nbar})/2) bits/symbol."""
    if nbar < 0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    # evaluate the entropy at the small branch (1 - e^{-2n})/2 for stability
    y = -np.expm1(-2.0 * nbar) / 2.0
    return binary_entropy(y)


def dolinar_error_q(nbar):
    """Helstrom/Dolinar BPSK error probability [1 - sqrt(1 - e^{-4 nbar})]/2."""
    if nbar < 0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    return 0.5 * (1.0 - np.sqrt(-np.expm1(-4.0 * nbar)))


def c1_bpsk_dolinar(nbar):
    """Single-symbol BPSK capacity 1 - H_b(q) of the Dolinar-receiver BSC."""
    if nbar < 0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    return 1.0 - binary_entropy(dolinar_error_q(nbar))


def f_integral(b):
    """The phase-information integral f(b) = 1/2 int_a^1 sqrt(1-(a/x)^4) dx, a = e^{-b}.

    The integrand has a sqrt(x - a) cusp at the lower endpoint; the
    substitution x = a + (1-a) t^2 removes it, after which adaptive
    Gauss-Kronrod quadrature reaches 1e-12 absolute cheaply.
    """
    if b < 0:
        raise ValueError(f"f is defined for b >= 0, got {b}")
    a = np.exp(-b)
    if a >= 1.0:
        return 0.0
    span = 1.0 - a

    def integrand(t):
        x = a + span * t * t
        r = (a / x) ** 2
        return np.sqrt(max(0.0, (1.0 - r) * (1.0 + r))) * 2.0 * span * t

    val, _ = quad(integrand, 0.0, 1.0, epsabs=1e-13, epsrel=1e-13, limit=200)
    return 0.5 * val


def hadamard_jdr_capacity(m, nbar):
    """Superchannel capacity of the Hadamard code + Green Machine + SPD array.

    (m / 2^m)(1 - e^{-2^m nbar}) bits/symbol with the pilot mode counted in
    the block length; PIE approaches m bits/photon at small nbar.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if nbar < 0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    n = 2 ** m
    return (m / n) * -np.expm1(-n * nbar)


def rm_gm_outcome_probs(m, nbar):
    """Outcome probabilities (p_plus, p_minus, p_erasure) of the RM(1,m) receiver.

    p0 = e^{-nP} with nP = 2^m nbar the pulse energy at the Green Machine
    output, and p_pm = (1 - p0)/2 +- f(nP).
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if nbar < 0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    n_pulse = (2 ** m) * nbar
    p0 = np.exp(-n_pulse)
    half = -np.expm1(-n_pulse) / 2.0
    f = f_integral(n_pulse)
    p_plus = half + f
    p_minus = half - f
    if p_minus < -1e-12:
        raise ConsistencyError(
            f"f({n_pulse}) = {f} exceeds (1-p0)/2 = {half}; quadrature bound violated"
        )
    p_minus = max(p_minus, 0.0)
    return p_plus, p_minus, p0


def rm_gm_jdr_capacity(m, nbar):
    """Superchannel capacity of the RM(1,m) code + Green Machine + SPD/Dolinar chain.

    [(1-p0)(m+1) + H(p0, 1-p0) - H(p+, p-, p0)] / 2^m bits/symbol.
    """
    p_plus, p_minus, p0 = rm_gm_outcome_probs(m, nbar)
    not_erased = -np.expm1(-(2 ** m) * nbar)
    num = (
        not_erased * (m + 1)
        + entropy_bits([p0, not_erased])
        - entropy_bits([p_plus, p_minus, p0])
    )
    return max(num, 0.0) / (2 ** m)


def rm_mpe_capacity(m, nbar):
    """Superchannel capacity of the minimum-error joint measurement on RM(1,m).

    Closed form in terms of c^2, gamma and a_pm; tends to (m+1)/2^m at large
    nbar. The discriminant gamma^2 - 4^m p0^2 factors exactly as
    (1-p0)^2 (gamma + 2^m p0), which is used to avoid cancellation.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if nbar < 0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    if nbar == 0:
        return 0.0
    n = 2 ** m
    K = 2 ** (m + 1)
    p0 = np.exp(-n * nbar)
    gamma = 1.0 + 2.0 * p0 * (2 ** (m - 1) - 1) + p0 * p0
    disc = (gamma - n * p0) * (gamma + n * p0)
    if disc < -1e-12:
        raise ConsistencyError(f"gamma^2 - 4^m p0^2 = {disc} < 0 at m={m}, nbar={nbar}")
    one_minus_p0 = -np.expm1(-n * nbar)
    sqrt_disc = one_minus_p0 * np.sqrt(gamma + n * p0)
    c2 = (n * p0) ** 2 / (2 ** (2 * m + 1) * (gamma + sqrt_disc))
    if c2 == 0.0:
        # deep orthogonal regime: corrections are O(p0 log p0), below double
        # precision once c^2 underflows
        return (m + 1) / n
    c = np.sqrt(c2)
    sym = (p0 - c2 * (K - 4)) / (2.0 * c)
    anti = np.sqrt(one_minus_p0 * (1.0 + p0))
    a_plus = 0.5 * (sym + anti)
    a_minus = 0.5 * (sym - anti)
    num = (m + 1) + xlog2(a_plus ** 2) + xlog2(a_minus ** 2) + (K - 2) * xlog2(c2)
    return max(float(num), 0.0) / n


_ENVELOPE_FAMILIES = {
    "hadamard": hadamard_jdr_capacity,
    "rm_gm": rm_gm_jdr_capacity,
}


def pie_envelope(nbar, family, m_range):
    """Best PIE over a code-size range: max_m I_m(nbar)/nbar.

    Returns (m_star, pie); ties break to the smaller m.
    """
    if nbar <= 0:
        raise ValueError(f"PIE envelope needs nbar > 0, got {nbar}")
    try:
        cap = _ENVELOPE_FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(_ENVELOPE_FAMILIES)}")
    ms = sorted(set(int(m) for m in m_range))
    if not ms:
        raise ValueError("empty m range")
    best_m, best_pie = ms[0], -np.inf
    for m in ms:
        pie = cap(m, nbar) / nbar
        if pie > best_pie:
            best_m, best_pie = m, pie
    return best_m, best_pie


def tradeoff_curve(modes, n_r_grid):
    """Ultimate PIE/spectral-efficiency tradeoff for M parallel modes.

    SE = M g(N_R / M) bits/sec/Hz and PIE = SE / N_R at each total received
    photon number N_R in the grid.
    """
    if modes < 1:
        raise ValueError(f"need at least one mode, got {modes}")
    points = []
    for n_r in n_r_grid:
        if n_r <= 0:
            raise ValueError(f"photon budget must be > 0, got {n_r}")
        se = modes * g(n_r / modes)
        points.append(TradeoffPoint(spectral_efficiency=se, pie=se / n_r,
                                    n_r=float(n_r), modes=int(modes)))
    return points

"""Coherent-state amplitude-domain receiver models.

Simulates the linear-optics front ends (beam splitters, the Green Machine
butterfly) acting on mode amplitudes, ideal single-photon detectors, and the
Dolinar receiver's outcome statistics, and assembles the transition matrices
of the joint-detection receivers.

Amplitudes are in sqrt(photon) units: |a|^2 is the mean photon number of a
mode. SPDs are ideal (unit efficiency, no dark counts). The beam-splitter
phase convention is the real (a +- b)/sqrt(2) form; all codeword amplitudes
here are real so no generality is lost.
"""

import numpy as np

from .capacity_limits import dolinar_error_q, rm_gm_outcome_probs
from .codes import hadamard_code, rm1_code, two_symbol_code
from .dmc import DiscreteChannel

_SQRT2 = np.sqrt(2.0)


def beam_splitter(a, b):
    """50-50 beam splitter: (a, b) -> ((a+b)/sqrt2, (a-b)/sqrt2)."""
    return (a + b) / _SQRT2, (a - b) / _SQRT2


def green_machine(amps):
    """Pass a power-of-two mode vector through the Green Machine.

    log2(n) butterfly stages of 50-50 beam splitters; equals the normalized
    Walsh-Hadamard transform of the amplitude vector, hence an involution
    and energy conserving. A BPSK Hadamard codeword (pilot included) maps to
    a single pulsed mode: the PPM unraveling.
    """
    v = np.array(amps, dtype=complex if np.iscomplexobj(amps) else float)
    n = v.shape[0]
    if n == 0 or n & (n - 1):
        raise ValueError(f"Green Machine needs a power-of-two mode count, got {n}")
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            a = v[start:start + h].copy()
            b = v[start + h:start + 2 * h]
            v[start:start + h], v[start + h:start + 2 * h] = beam_splitter(a, b)
        h *= 2
    return v


def spd_click_prob(a):
    """Ideal SPD click probability 1 - e^{-|a|^2} on a coherent pulse."""
    return -np.expm1(-abs(a) ** 2)


def dolinar_outcomes(hypothesis_energy, input_state):
    """P(decide "plus") of a Dolinar receiver set up for +-sqrt(E) hypotheses.

    Only the inputs {plus, minus, vacuum} are supported; the receiver's
    internal feedback is modeled by its outcome statistics alone. Vacuum is
    invariant under the sign flip that swaps the two equal-prior hypotheses,
    so it yields 1/2 by symmetry.
    """
    if hypothesis_energy < 0:
        raise ValueError(f"hypothesis energy must be >= 0, got {hypothesis_energy}")
    q = dolinar_error_q(hypothesis_energy)
    if input_state == "plus":
        return 1.0 - q
    if input_state == "minus":
        return q
    if input_state == "vacuum":
        return 0.5
    raise ValueError(f"unsupported Dolinar input {input_state!r}; use plus/minus/vacuum")


def two_symbol_receiver_channel(nbar):
    """Transition matrix of the Fig.-style two-symbol joint receiver.

    The two symbol modes of each (2,3,1) codeword interfere on a 50-50 beam
    splitter; an SPD watches the sum port and a Dolinar receiver (hypothesis
    energy 2 nbar) the difference port. 3 inputs x 4 outputs
    (SPD click/no-click x DR +/-).
    """
    if nbar < 0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    code = two_symbol_code()
    alpha = np.sqrt(nbar)
    rows = []
    for amps in code.amplitudes(alpha):
        sum_port, diff_port = beam_splitter(amps[0], amps[1])
        p_click = spd_click_prob(sum_port)
        if abs(diff_port) < 1e-15:
            dr_input = "vacuum"
        else:
            dr_input = "plus" if diff_port.real > 0 else "minus"
        p_plus = dolinar_outcomes(2.0 * nbar, dr_input)
        rows.append([p_click * p_plus, p_click * (1 - p_plus),
                     (1 - p_click) * p_plus, (1 - p_click) * (1 - p_plus)])
    inputs = ("00", "01", "10")
    outputs = ("click:+", "click:-", "noclick:+", "noclick:-")
    return DiscreteChannel(inputs=inputs, outputs=outputs, p=np.array(rows))


def _first_click_rows(click_probs):
    """Outcome distribution when SPDs are read in order and the first click wins.

    P(position i) = p_i prod_{j<i} (1 - p_j); the leftover product is the
    erasure (no clicks anywhere). Rows sum to 1 exactly by telescoping.
    """
    click_probs = np.asarray(click_probs, dtype=float)
    survive = np.concatenate([[1.0], np.cumprod(1.0 - click_probs)])
    return click_probs * survive[:-1], survive[-1]


def hadamard_jdr_channel(m, nbar):
    """Physically simulated Hadamard-code superchannel: 2^m inputs, 2^m + 1 outputs.

    Each codeword (pilot included, amplitude sqrt(nbar) per mode) passes
    through the Green Machine onto a 2^m-element SPD array. The pulse carries
    the whole codeword energy, so P(position k | codeword k) = 1 - e^{-2^m nbar}
    and the no-click outcome is the erasure.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if nbar < 0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    code = hadamard_code(m, with_ancilla=True)
    K = code.size
    rows = np.zeros((K, K + 1))
    for k, amps in enumerate(code.amplitudes(np.sqrt(nbar))):
        out = green_machine(amps)
        pos_probs, erase = _first_click_rows(spd_click_prob(np.abs(out)))
        rows[k, :K] = pos_probs
        rows[k, K] = erase
    inputs = tuple(f"cw{k}" for k in range(K))
    outputs = tuple(f"pos{j}" for j in range(K)) + ("erasure",)
    return DiscreteChannel(inputs=inputs, outputs=outputs, p=rows)


def rm_gm_jdr_channel(m, nbar):
    """RM(1,m) superchannel: 2^{m+1} inputs, 2^{m+1} + 1 outputs.

    The Green Machine stage is simulated to locate each codeword's pulse
    position and phase sign; the post-click statistics (first SPD to click
    hands the pulse remainder to a Dolinar receiver) enter through the
    outcome probabilities p+, p-, p0 of the closed-form model.
    """
    p_plus, p_minus, p0 = rm_gm_outcome_probs(m, nbar)
    code = rm1_code(m)
    K = code.size
    n_modes = 2 ** m
    rows = np.zeros((K, K + 1))
    for k, amps in enumerate(code.amplitudes(np.sqrt(nbar))):
        out = green_machine(amps)
        if nbar == 0:
            pos, sign = k % n_modes, +1 if k < n_modes else -1
        else:
            pos = int(np.argmax(np.abs(out)))
            sign = 1 if out[pos].real >= 0 else -1
        same = pos if sign > 0 else pos + n_modes
        flipped = pos + n_modes if sign > 0 else pos
        rows[k, same] = p_plus
        rows[k, flipped] = p_minus
        rows[k, K] = p0
    inputs = tuple(f"cw{k}" for k in range(K))
    outputs = tuple(f"cw{j}" for j in range(K)) + ("erasure",)
    return DiscreteChannel(inputs=inputs, outputs=outputs, p=rows)

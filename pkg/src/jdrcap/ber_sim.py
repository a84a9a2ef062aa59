"""Bit-error-rate curves for uncoded and Hadamard-coded BPSK.

Three schemes: uncoded symbols on the Dolinar receiver (analytic), the
(2^m - 1, 2^m, 2^{m-1}) Hadamard code detected symbol-by-symbol by Dolinar
receivers then ML-decoded (Monte Carlo), and the same code on the Green
Machine joint receiver (analytic, with erasures resolved by a uniformly
random codeword guess since a raw BER plot admits no outer code).

Monte Carlo runs stream from numpy's counter-based Philox generator keyed by
the recorded 64-bit seed, so identical (m, nbar, trials, seed) reproduce the
BerPoint bit for bit and grid points can be simulated independently.
"""

from dataclasses import dataclass

import numpy as np

from .capacity_limits import dolinar_error_q
from .codes import hadamard_code, sylvester_hadamard

_CHUNK = 50000


@dataclass(frozen=True)
class BerPoint:
    """One bit-error-rate sample; analytic points carry trials = 0."""

    nbar: float
    ber: float
    scheme: str
    trials: int
    seed: int | None = None
    bit_errors: int = 0
    total_bits: int = 0

    @property
    def stderr(self):
        """Binomial standard error of the estimate (0 for analytic points)."""
        if self.total_bits == 0:
            return 0.0
        return float(np.sqrt(self.ber * (1.0 - self.ber) / self.total_bits))


def uncoded_bpsk_ber(nbar):
    """Dolinar-receiver BER of a bare BPSK symbol: q(nbar), exact."""
    return BerPoint(nbar=float(nbar), ber=float(dolinar_error_q(nbar)),
                    scheme="uncoded_dr", trials=0)


def _decode_batch(received_pm1, H):
    """FWHT-correlation ML decode of a batch of +-1 rows (pilot position zeroed)."""
    padded = np.zeros((received_pm1.shape[0], H.shape[0]), dtype=np.float32)
    padded[:, 1:] = received_pm1
    return np.argmax(padded @ H.T, axis=1)


def hadamard_dr_ber(m, nbar, trials, seed):
    """Monte Carlo message-bit BER of the Hadamard code under symbol-wise detection.

    Each Dolinar receiver turns a symbol into a BSC(q) bit; the block is
    ML-decoded through the Walsh-Hadamard correlation. Message bits are the
    little-endian binary label of the codeword index, so bit errors are
    popcounts of index XORs.
    """
    if trials < 10 ** 4:
        raise ValueError(f"need at least 1e4 trials for a meaningful estimate, got {trials}")
    q = dolinar_error_q(nbar)
    code = hadamard_code(m, with_ancilla=False)
    H = sylvester_hadamard(m).astype(np.float32)
    codewords = code.codewords
    K = code.size
    rng = np.random.default_rng(np.random.SeedSequence(entropy=int(seed)))
    bit_errors = 0
    done = 0
    while done < trials:
        batch = min(_CHUNK, trials - done)
        msg = rng.integers(0, K, size=batch)
        flips = rng.random((batch, code.n)) < q
        received = codewords[msg] ^ flips
        decoded = _decode_batch(1.0 - 2.0 * received, H)
        bit_errors += int(np.bitwise_count(msg ^ decoded).sum())
        done += batch
    total_bits = trials * m
    return BerPoint(nbar=float(nbar), ber=bit_errors / total_bits, scheme="hadamard_dr",
                    trials=int(trials), seed=int(seed), bit_errors=bit_errors,
                    total_bits=total_bits)


def hadamard_jdr_ber(m, nbar):
    """Exact message-bit BER of the Hadamard code on the Green Machine receiver.

    A click identifies the codeword exactly; an erasure (probability
    e^{-2^m nbar}) forces a uniformly random codeword guess. The expected
    wrong-bit fraction of the guess is enumerated over the code's message
    labeling rather than assumed.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if nbar < 0:
        raise ValueError(f"mean photon number must be >= 0, got {nbar}")
    K = 2 ** m
    idx = np.arange(K)
    pair_popcounts = np.bitwise_count(idx[:, None] ^ idx[None, :])
    guess_error_fraction = pair_popcounts.mean() / m
    p_erase = np.exp(-(2 ** m) * nbar)
    return BerPoint(nbar=float(nbar), ber=float(p_erase * guess_error_fraction),
                    scheme="hadamard_jdr", trials=0)

"""Binary code families: Hadamard, first-order Reed-Muller, the (2,3,1) inner
code, and fast Walsh-Hadamard transform utilities.

Bit convention, fixed project-wide: bit 0 <-> amplitude +alpha, bit 1 <-> -alpha.
The pilot (ancilla) coordinate, when present, is prepended as coordinate 0.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class BinaryCode:
    """An (n, K, d) binary code with an optional message-bit labeling.

    ``codewords`` is the K x n bit matrix. For the Hadamard and Reed-Muller
    families the message labeling is affine: message bits big-endian select
    the codeword index (for RM the leading bit is the complement bit), so
    the message distance between indices i, j is popcount(i ^ j).
    """

    n: int
    size: int
    d: int
    codewords: np.ndarray = field(repr=False)
    family: str = "generic"
    message_bits: int | None = None

    def __post_init__(self):
        cw = np.ascontiguousarray(self.codewords, dtype=np.uint8)
        if cw.shape != (self.size, self.n):
            raise ValueError(f"codeword matrix shape {cw.shape} != ({self.size}, {self.n})")
        cw.setflags(write=False)
        object.__setattr__(self, "codewords", cw)

    def message_to_index(self, bits):
        """Map message bits (length message_bits, big-endian) to a codeword index."""
        if self.message_bits is None:
            raise ValueError(f"{self.family} code has no message labeling")
        bits = np.asarray(bits)
        if bits.shape != (self.message_bits,):
            raise ValueError(f"expected {self.message_bits} message bits, got {bits.shape}")
        weights = 1 << np.arange(self.message_bits - 1, -1, -1)
        return int(np.dot(bits.astype(np.int64), weights))

    def index_to_message(self, k):
        """Inverse of message_to_index."""
        if self.message_bits is None:
            raise ValueError(f"{self.family} code has no message labeling")
        if not 0 <= k < self.size:
            raise ValueError(f"codeword index {k} out of range")
        return (k >> np.arange(self.message_bits - 1, -1, -1)) & 1

    def encode(self, bits):
        """Encode message bits to a codeword row."""
        return self.codewords[self.message_to_index(bits)]

    def amplitudes(self, alpha):
        """BPSK mode amplitudes of every codeword: bit 0 -> +alpha, bit 1 -> -alpha."""
        return alpha * (1.0 - 2.0 * self.codewords.astype(float))


def sylvester_hadamard(m):
    """The 2^m x 2^m Sylvester-Hadamard matrix with +-1 entries, H H^T = 2^m I."""
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    H = np.array([[1]], dtype=np.int64)
    for _ in range(m):
        H = np.block([[H, H], [H, -H]])
    return H


def hadamard_code(m, with_ancilla=False):
    """The (2^m - 1, 2^m, 2^{m-1}) binary Hadamard code.

    Rows of the Sylvester matrix mapped +1 -> 0, -1 -> 1. With the ancilla
    (pilot) the constant first coordinate is kept, giving block length 2^m;
    without it that coordinate is deleted.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    bits = ((1 - sylvester_hadamard(m)) // 2).astype(np.uint8)
    if not with_ancilla:
        bits = bits[:, 1:]
    K = 2 ** m
    return BinaryCode(n=bits.shape[1], size=K, d=2 ** (m - 1), codewords=bits,
                      family="hadamard", message_bits=m)


def rm1_code(m):
    """The (2^m, 2^{m+1}, 2^{m-1}) first-order Reed-Muller code RM(1,m).

    The Hadamard code with the pilot coordinate, appended with all codewords
    bit-flipped. Message bits (u0, u1..um) map to u0*1 xor Hadamard row
    u1..um, so the first 2^m codewords are the Hadamard rows and the rest
    their complements.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    had = hadamard_code(m, with_ancilla=True).codewords
    bits = np.vstack([had, 1 - had])
    d = 1 if m == 1 else 2 ** (m - 1)
    return BinaryCode(n=2 ** m, size=2 ** (m + 1), d=d, codewords=bits,
                      family="rm1", message_bits=m + 1)


def two_symbol_code():
    """The nonlinear (2, 3, 1) inner code {00, 01, 10}.

    Symbol order matches the two-mode state set {|aa>, |a,-a>, |-a,a>}; the
    all-ones word is excluded. No message labeling (used for capacity only).
    """
    bits = np.array([[0, 0], [0, 1], [1, 0]], dtype=np.uint8)
    return BinaryCode(n=2, size=3, d=1, codewords=bits, family="two_symbol")


def fwht(v, normalized=False):
    """Fast Walsh-Hadamard transform via in-place butterflies.

    The normalized variant scales by 1/sqrt(2) per stage and is an
    involution; the plain variant equals multiplication by the Sylvester
    matrix. Input length must be a power of two.
    """
    v = np.array(v, dtype=complex if np.iscomplexobj(v) else float)
    n = v.shape[0]
    if n == 0 or n & (n - 1):
        raise ValueError(f"FWHT needs a power-of-two length, got {n}")
    h = 1
    while h < n:
        for start in range(0, n, 2 * h):
            a = v[start:start + h].copy()
            b = v[start + h:start + 2 * h]
            v[start:start + h] = a + b
            v[start + h:start + 2 * h] = a - b
        h *= 2
    if normalized:
        v /= np.sqrt(n)
    return v


def _correlations(code, received):
    """Agreement counts with every codeword, computed by FWHT correlation."""
    s = 1.0 - 2.0 * np.asarray(received, dtype=float)
    if code.family == "hadamard" and code.n & (code.n - 1):
        # pilot coordinate was deleted; re-insert a zero so the transform
        # returns exactly the correlations over the surviving coordinates
        s = np.concatenate([[0.0], s])
    corr = fwht(s)[: min(code.size, len(s))]
    if code.family == "rm1":
        corr = np.concatenate([corr, -corr])
    return (code.n + corr) / 2.0


def ml_decode_hard(code, received):
    """Maximum-likelihood (minimum Hamming distance) hard decoding.

    Hadamard/RM codes decode through an FWHT correlation; other codes fall
    back to brute force over all codewords. Ties break to the smallest index.
    """
    received = np.asarray(received)
    if received.shape != (code.n,):
        raise ValueError(f"received length {received.shape} != block length {code.n}")
    if code.family in ("hadamard", "rm1"):
        agreements = _correlations(code, received)
    else:
        agreements = code.n - np.sum(code.codewords != received.astype(np.uint8), axis=1)
    return int(np.argmax(agreements))


def dump_codebook(code):
    """Plain-text codebook: header line 'n K d', one 0/1 codeword per line."""
    lines = [f"{code.n} {code.size} {code.d}"]
    lines.extend("".join(str(int(b)) for b in row) for row in code.codewords)
    return "\n".join(lines) + "\n"

"""Encoding, BPSK/AWGN channel, sum-product decoding, BER campaigns.

Channel convention: bit 0 maps to +1, bit 1 to -1, noise variance
sigma^2 = 1/(2 R Eb/N0) with R the true code rate, and channel LLRs are
2y/sigma^2 (positive means bit 0).

The decoder is flooding-schedule sum-product in the log domain with the
tanh product rule; LLRs are clamped to +-30 before the tanh, which is
numerically immaterial at simulated SNRs but keeps arctanh finite. A
min-sum variant sits behind DecoderConfig(algorithm="min-sum").

Campaign frames are seeded by (campaign seed, frame index): results are
independent of execution order and batch size, and rerunning with the
same seed reproduces the CSV byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gf2
from .errors import DimensionMismatch, TooLarge
from .matrices import SparseBinaryMatrix
from .ra import RaParityCheck, accumulate


@dataclass(frozen=True)
class ChannelConfig:
    ebno_db: float
    rate: float
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.rate <= 1.0:
            raise ValueError(f"code rate must be in (0, 1], got {self.rate}")

    @property
    def noise_variance(self) -> float:
        return 1.0 / (2.0 * self.rate * 10.0 ** (self.ebno_db / 10.0))


@dataclass(frozen=True)
class DecoderConfig:
    max_iterations: int = 50
    llr_clamp: float = 30.0
    early_exit: bool = True
    algorithm: str = "sum-product"  # or "min-sum"

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.algorithm not in ("sum-product", "min-sum"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")


@dataclass(frozen=True)
class DecodeResult:
    bits: np.ndarray
    converged: bool
    iterations: int


@dataclass(frozen=True)
class BerRecord:
    ebno_db: float
    frames: int
    bit_errors: int
    frame_errors: int
    bits_total: int
    undetected_errors: int
    seed: int

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_total if self.bits_total else 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0


class EncoderState:
    """Systematic encoder for a parity-check matrix.

    Mode "ra" runs the accumulator recursion of an RA parity check
    (message bits first, parity after). Mode "ge" works for any H via
    column-pivoted elimination; pivot (parity) columns are recorded in
    column_permutation. Dependent rows simply enlarge K = N - rank; the
    adjusted dimension is exposed, not raised.
    """

    def __init__(self, h: SparseBinaryMatrix, mode: str, ra: RaParityCheck | None = None):
        self.h = h
        self.mode = mode
        self.n = h.cols
        if mode == "ra":
            if ra is None or ra.spec is None:
                raise ValueError("ra mode needs an RaParityCheck with a realized spec")
            self.ra = ra
            self.k = ra.k
            self.message_positions = list(range(ra.k))
            self.column_permutation = list(range(h.cols))
        elif mode == "ge":
            reduced, pivot_cols = gf2.rref(h.packed_rows())
            pivot_set = set(pivot_cols)
            free_cols = [j for j in range(h.cols) if j not in pivot_set]
            self.k = len(free_cols)
            self.message_positions = free_cols
            self.column_permutation = free_cols + pivot_cols
            self._pivot_cols = pivot_cols
            free_index = {c: i for i, c in enumerate(free_cols)}
            masks = []
            for row in reduced:
                mask = 0
                rest = row
                while rest:
                    b = rest & -rest
                    c = b.bit_length() - 1
                    rest ^= b
                    if c in free_index:
                        mask |= 1 << free_index[c]
                masks.append(mask)
            self._parity_masks = masks
        else:
            raise ValueError(f"unknown encoder mode {mode!r}")

    @classmethod
    def from_ra(cls, ra: RaParityCheck) -> "EncoderState":
        return cls(ra.h, "ra", ra=ra)

    @classmethod
    def from_parity_check(cls, h: SparseBinaryMatrix) -> "EncoderState":
        return cls(h, "ge")

    def encode(self, message) -> np.ndarray:
        """Codeword with zero syndrome; message bits sit at
        message_positions in their given order."""
        message = np.asarray(message, dtype=np.uint8)
        if len(message) != self.k:
            raise DimensionMismatch(f"message length {len(message)} != K={self.k}")
        if self.mode == "ra":
            r = np.zeros(self.ra.m, dtype=np.uint8)
            for j in np.nonzero(message)[0]:
                for row in self.ra.h1.col_rows[j]:
                    r[row] ^= 1
            return np.concatenate([message, accumulate(r, self.ra.spec)])
        m_int = 0
        for i, bit in enumerate(message):
            if bit:
                m_int |= 1 << i
        cw = np.zeros(self.n, dtype=np.uint8)
        cw[self.message_positions] = message
        for pc, mask in zip(self._pivot_cols, self._parity_masks):
            cw[pc] = (mask & m_int).bit_count() & 1
        return cw


def transmit(codeword, cfg: ChannelConfig, rng: np.random.Generator | None = None) -> np.ndarray:
    """BPSK over AWGN; returns channel LLRs 2y/sigma^2."""
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    c = np.asarray(codeword, dtype=np.uint8)
    sigma2 = cfg.noise_variance
    x = 1.0 - 2.0 * c.astype(np.float64)
    y = x + rng.normal(0.0, math.sqrt(sigma2), size=len(c))
    return 2.0 * y / sigma2


class BpGraph:
    """Edge-indexed Tanner graph with batched flooding updates.

    Message arrays are (batch, edges) and every update is elementwise
    per frame, so batched decoding is bit-identical to decoding frames
    one at a time.
    """

    def __init__(self, h: SparseBinaryMatrix):
        self.h = h
        self.n = h.cols
        self.m = h.rows
        check_of = []
        var_of = []
        for r, cs in enumerate(h.row_cols):
            for c in cs:
                check_of.append(r)
                var_of.append(c)
        self.e = len(check_of)
        self.check_of = np.array(check_of, dtype=np.int64)
        self.var_of = np.array(var_of, dtype=np.int64)
        counts = np.bincount(self.check_of, minlength=self.m) if self.e else np.zeros(self.m, int)
        nonempty = counts > 0
        # reduceat segment starts for the edge ranges of nonempty checks
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]]) if self.e else np.zeros(0, int)
        self.check_starts = starts[nonempty].astype(np.int64)
        self._check_seg_of_edge = np.repeat(np.arange(int(nonempty.sum())), counts[nonempty])
        var_perm = np.argsort(self.var_of, kind="stable")
        self._var_perm = var_perm
        vcounts = np.bincount(self.var_of, minlength=self.n) if self.e else np.zeros(self.n, int)
        vpresent = vcounts > 0
        vstarts = np.concatenate([[0], np.cumsum(vcounts)[:-1]]) if self.e else np.zeros(0, int)
        self._var_starts = vstarts[vpresent].astype(np.int64)
        self._present_vars = np.nonzero(vpresent)[0]

    def decode_batch(self, llrs: np.ndarray, cfg: DecoderConfig | None = None):
        """Decode (batch, n) channel LLRs.

        Returns (bits, converged, iterations); iterations counts BP
        rounds, 0 meaning the channel hard decision already satisfied
        every check. Ties (LLR exactly 0) decode to bit 0.
        """
        cfg = cfg or DecoderConfig()
        llrs = np.atleast_2d(np.asarray(llrs, dtype=np.float64))
        if llrs.shape[1] != self.n:
            raise DimensionMismatch(f"LLR length {llrs.shape[1]} != n={self.n}")
        # the magnitude bound applies to the channel values too, so even
        # absurdly confident inputs stay correctable and tanh-safe
        llrs = np.clip(llrs, -cfg.llr_clamp, cfg.llr_clamp)
        batch = llrs.shape[0]
        bits_out = np.zeros((batch, self.n), dtype=np.uint8)
        conv_out = np.zeros(batch, dtype=bool)
        iter_out = np.full(batch, cfg.max_iterations, dtype=np.int64)

        bits = (llrs < 0).astype(np.uint8)
        ok = self._syndrome_ok(bits)
        bits_out[ok] = bits[ok]
        conv_out[ok] = True
        iter_out[ok] = 0
        idx = np.nonzero(~ok)[0]
        if len(idx) == 0 or self.e == 0:
            bits_out[~conv_out] = bits[~conv_out]
            return bits_out, conv_out, iter_out

        channel = llrs[idx]
        q = channel[:, self.var_of]
        for iteration in range(1, cfg.max_iterations + 1):
            r = self._check_update(q, cfg)
            posterior = channel.copy()
            rv = r[:, self._var_perm]
            posterior[:, self._present_vars] += np.add.reduceat(rv, self._var_starts, axis=1)
            q = posterior[:, self.var_of] - r
            bits = (posterior < 0).astype(np.uint8)
            ok = self._syndrome_ok(bits)
            if ok.any():
                done = np.nonzero(ok)[0]
                g = idx[done]
                bits_out[g] = bits[done]
                conv_out[g] = True
                iter_out[g] = iteration
                keep = ~ok
                if not keep.any():
                    return bits_out, conv_out, iter_out
                idx = idx[keep]
                channel = channel[keep]
                q = q[keep]
                bits = bits[keep]
        bits_out[idx] = bits
        return bits_out, conv_out, iter_out

    def _check_update(self, q: np.ndarray, cfg: DecoderConfig) -> np.ndarray:
        qc = np.clip(q, -cfg.llr_clamp, cfg.llr_clamp)
        sgn = np.where(qc < 0, -1.0, 1.0)
        seg = self._check_seg_of_edge
        if cfg.algorithm == "min-sum":
            mag = np.abs(qc)
            m1 = np.minimum.reduceat(mag, self.check_starts, axis=1)
            m1e = m1[:, seg]
            tied = mag == m1e
            m2 = np.minimum.reduceat(np.where(tied, np.inf, mag), self.check_starts, axis=1)
            ties = np.add.reduceat(tied.astype(np.float64), self.check_starts, axis=1)
            excl_mag = np.where(tied & (ties[:, seg] == 1), m2[:, seg], m1e)
            excl_mag = np.where(np.isinf(excl_mag), 0.0, excl_mag)
        else:
            t = np.tanh(qc / 2.0)
            mag = np.clip(np.abs(t), 1e-300, 1.0 - 1e-15)
            logm = np.log(mag)
            tot = np.add.reduceat(logm, self.check_starts, axis=1)
            excl = np.minimum(np.exp(tot[:, seg] - logm), 1.0 - 1e-15)
            excl_mag = 2.0 * np.arctanh(excl)
        sprod = np.multiply.reduceat(sgn, self.check_starts, axis=1)
        excl_sgn = sprod[:, seg] * sgn
        return excl_sgn * excl_mag

    def _syndrome_ok(self, bits: np.ndarray) -> np.ndarray:
        if self.e == 0:
            return np.ones(bits.shape[0], dtype=bool)
        on_edges = bits[:, self.var_of].astype(np.int64)
        parity = np.add.reduceat(on_edges, self.check_starts, axis=1) & 1
        return ~(parity.astype(bool).any(axis=1))


def sum_product_decode(
    h: SparseBinaryMatrix, llr, cfg: DecoderConfig | None = None
) -> DecodeResult:
    """Flooding sum-product decoding of a single LLR vector."""
    cfg = cfg or DecoderConfig()
    llr = np.asarray(llr, dtype=np.float64)
    if llr.ndim != 1 or len(llr) != h.cols:
        raise DimensionMismatch(f"LLR length {llr.shape} != n={h.cols}")
    bits, conv, iters = BpGraph(h).decode_batch(llr[None, :], cfg)
    return DecodeResult(bits=bits[0], converged=bool(conv[0]), iterations=int(iters[0]))


_ML_K_LIMIT = 20


def ml_decode_exhaustive(h: SparseBinaryMatrix, llr) -> np.ndarray:
    """Maximum-likelihood decoding by codeword enumeration (K <= 20).

    Maximizes BPSK correlation, i.e. minimizes the summed LLR over set
    bits; Gray-code order breaks exact ties deterministically (first
    minimum wins, so the all-zero word wins a tie with anything).
    """
    llr = np.asarray(llr, dtype=np.float64)
    if len(llr) != h.cols:
        raise DimensionMismatch(f"LLR length {len(llr)} != n={h.cols}")
    basis = gf2.nullspace(h.packed_rows(), h.cols)
    k = len(basis)
    if k > _ML_K_LIMIT:
        raise TooLarge(f"dimension {k} exceeds ML enumeration limit {_ML_K_LIMIT}")
    basis_idx = []
    for vec in basis:
        idx = []
        rest = vec
        while rest:
            b = rest & -rest
            idx.append(b.bit_length() - 1)
            rest ^= b
        basis_idx.append(np.array(idx, dtype=np.int64))
    best_cost = 0.0
    best_cw = 0
    cw = 0
    cost = 0.0
    bits = np.zeros(h.cols, dtype=np.uint8)
    for i in range(1, 1 << k):
        j = (i & -i).bit_length() - 1
        flip = basis_idx[j]
        signs = 1.0 - 2.0 * bits[flip].astype(np.float64)  # +1 where a bit turns on
        cost += float(np.sum(llr[flip] * signs))
        bits[flip] ^= 1
        cw ^= basis[j]
        if cost < best_cost:
            best_cost = cost
            best_cw = cw
    out = np.zeros(h.cols, dtype=np.uint8)
    rest = best_cw
    while rest:
        b = rest & -rest
        out[b.bit_length() - 1] = 1
        rest ^= b
    return out


def frame_rng(seed: int, frame_index: int) -> np.random.Generator:
    """The per-frame generator contract: seeded by (seed, frame index)."""
    return np.random.default_rng([seed, frame_index])


def ber_campaign(
    h: SparseBinaryMatrix,
    snr_points_db,
    seed: int,
    min_frame_errors: int = 100,
    max_frames: int = 1_000_000,
    decoder: DecoderConfig | None = None,
    encoder: EncoderState | None = None,
    batch_size: int = 64,
) -> list[BerRecord]:
    """Monte Carlo BER over an SNR sweep.

    Frame f draws its message bits and channel noise from
    frame_rng(seed, f). A point stops once min_frame_errors frame
    errors accumulate or max_frames frames have been counted; frames
    are tallied in index order, so batch size cannot change the result.
    Bit and frame errors are counted on the message positions.
    """
    decoder = decoder or DecoderConfig()
    encoder = encoder or EncoderState.from_parity_check(h)
    if encoder.k < 1:
        raise ValueError("code has no message bits to simulate")
    graph = BpGraph(h)
    msg_pos = np.array(encoder.message_positions, dtype=np.int64)
    records = []
    for ebno_db in snr_points_db:
        cfg = ChannelConfig(ebno_db=float(ebno_db), rate=encoder.k / encoder.n, seed=seed)
        frames = bit_errors = frame_errors = undetected = 0
        frame_index = 0
        while frame_errors < min_frame_errors and frames < max_frames:
            todo = min(batch_size, max_frames - frames)
            msgs = np.zeros((todo, encoder.k), dtype=np.uint8)
            llrs = np.zeros((todo, encoder.n), dtype=np.float64)
            for b in range(todo):
                rng = frame_rng(seed, frame_index + b)
                m = rng.integers(0, 2, size=encoder.k, dtype=np.uint8)
                msgs[b] = m
                llrs[b] = transmit(encoder.encode(m), cfg, rng)
            bits, conv, _ = graph.decode_batch(llrs, decoder)
            err_matrix = bits[:, msg_pos] != msgs
            errs = err_matrix.sum(axis=1)
            for b in range(todo):
                frames += 1
                e = int(errs[b])
                bit_errors += e
                if e:
                    frame_errors += 1
                    if conv[b]:
                        undetected += 1
                if frame_errors >= min_frame_errors or frames >= max_frames:
                    break
            frame_index += b + 1
        records.append(
            BerRecord(
                ebno_db=float(ebno_db),
                frames=frames,
                bit_errors=bit_errors,
                frame_errors=frame_errors,
                bits_total=frames * encoder.k,
                undetected_errors=undetected,
                seed=seed,
            )
        )
    return records


CSV_HEADER = "ebno_db,frames,bit_errors,frame_errors,bits_total,ber,fer,seed"


def records_to_csv(records) -> str:
    """CSV with floats in shortest round-trip decimal form."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.ebno_db!r},{r.frames},{r.bit_errors},{r.frame_errors},"
            f"{r.bits_total},{r.ber!r},{r.fer!r},{r.seed}"
        )
    return "\n".join(lines) + "\n"

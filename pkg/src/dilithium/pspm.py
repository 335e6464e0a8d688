"""Sparse-times-small polynomial multiplication with packed radix-M digits.

A table row packs, for one coefficient index, the digits U + a_j of several
small polynomials a_j into one or more 32-bit-capable words (base M, with
2*tau*U < M so accumulation never carries). Rows 0..n-1 hold the negated
companions (digits U - a_j) so a challenge coefficient of either sign turns
into one contiguous slice add:

    acc[k] += table[n + k - p]            (sign +1)
    acc[k] += gamma - table[n + k - p]    (sign -1)

where gamma has 2U in every digit. After tau adds, digit j of acc[k] equals
(c * a_j)[k] + tau*U exactly.

The early-evaluation helpers interleave digit extraction with the signing
checks. The scalar backend honours per-coefficient early exit; the lane
backend evaluates every coefficient and applies the same accept/reject
decision, so both paths agree on the decision and, on acceptance, on every
output byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels
from .params import N, Q, ParamSet, PspmParams
from .rounding import lowbits
from .sampling import Challenge


def _digit_layout(pspm: PspmParams) -> list[list[int]]:
    """layout[w][d] = polynomial index held in digit d (LSB first) of word w.

    Extraction walks the last word to the first, each word LSB digit first,
    and that walk visits polynomials r-1 down to 0.
    """
    groups = pspm.group_sizes
    layout: list[list[int]] = [[] for _ in groups]
    t = 0
    for w in range(len(groups) - 1, -1, -1):
        for _ in range(groups[w]):
            layout[w].append(pspm.r - 1 - t)
            t += 1
    return layout


@dataclass(frozen=True)
class PspmTable:
    """Precomputed evaluation table for a fixed vector of small polynomials."""

    words: np.ndarray          # (2n, W) int64
    gamma: np.ndarray          # (W,) int64, 2U in every digit
    pspm: PspmParams

    @property
    def width(self) -> int:
        return self.words.shape[1]

    # plain-int copies for the scalar backend's per-index loops
    @cached_property
    def _word_rows(self) -> list[list[int]]:
        return self.words.tolist()

    @cached_property
    def _gamma_list(self) -> list[int]:
        return self.gamma.tolist()


def build_table(polys: np.ndarray, pspm: PspmParams) -> PspmTable:
    """Pack r small polynomials (shape (r, n), |coeff| <= U) into a table."""
    polys = np.asarray(polys, dtype=np.int64)
    if polys.shape != (pspm.r, N):
        raise ValueError(f"expected shape {(pspm.r, N)}, got {polys.shape}")
    if int(np.abs(polys).max()) > pspm.u:
        raise ValueError("coefficient magnitude exceeds the table's U")
    layout = _digit_layout(pspm)
    m = pspm.m
    pos = np.zeros((N, len(layout)), dtype=np.int64)
    neg = np.zeros((N, len(layout)), dtype=np.int64)
    for w, polys_in_word in enumerate(layout):
        for d, j in enumerate(polys_in_word):
            scale = np.int64(m) ** d
            pos[:, w] += (pspm.u + polys[j]) * scale
            neg[:, w] += (pspm.u - polys[j]) * scale
    words = np.concatenate([neg, pos], axis=0)
    gamma = np.array([pspm.gamma_words[w] for w in range(len(layout))],
                     dtype=np.int64)
    return PspmTable(words=words, gamma=gamma, pspm=pspm)


def _accumulate_lanes(chal: Challenge, table: PspmTable) -> np.ndarray:
    """acc[k, w] for every output coefficient k, via slice adds."""
    acc = np.zeros((N, table.width), dtype=np.int64)
    for p, sign in zip(chal.positions, chal.signs):
        window = table.words[N - p: 2 * N - p]
        if sign > 0:
            acc += window
        else:
            acc += table.gamma - window
    return acc


def _accumulate_index(chal: Challenge, table: PspmTable, i: int) -> list[int]:
    """acc words for the single output coefficient i (plain-int path)."""
    rows = table._word_rows
    acc = [0] * table.width
    for p, sign in zip(chal.positions, chal.signs):
        row = rows[N + i - p]
        if sign > 0:
            for w in range(len(acc)):
                acc[w] += row[w]
        else:
            gamma = table._gamma_list
            for w in range(len(acc)):
                acc[w] += gamma[w] - row[w]
    return acc


def _extract(acc: np.ndarray, table: PspmTable) -> np.ndarray:
    """Recover the r exact products from accumulated digits.

    acc has shape (..., W); the result has shape (r, ...) with
    result[j] = (c * a_j) and |coeff| <= tau * U.
    """
    pspm = table.pspm
    offset = pspm.tau * pspm.u
    out = np.empty((pspm.r,) + acc.shape[:-1], dtype=np.int64)
    for w, polys_in_word in enumerate(_digit_layout(pspm)):
        word = acc[..., w]
        for d, j in enumerate(polys_in_word):
            out[j] = ((word >> (d * pspm.log2_m)) & (pspm.m - 1)) - offset
    return out


def pspm_multiply(chal: Challenge, table: PspmTable) -> np.ndarray:
    """Exact products c * a_j for all r packed polynomials, shape (r, n)."""
    if chal.tau != table.pspm.tau:
        raise ValueError("challenge weight does not match the table")
    return _extract(_accumulate_lanes(chal, table), table)


def _z_ok(z: int, params: ParamSet) -> bool:
    return abs(z) < params.gamma1 - params.beta

def _r0_ok(r_full: int, params: ParamSet) -> bool:
    return abs(lowbits(r_full, params.gamma2)) < params.gamma2 - params.beta


def pspm_tee_combined(chal: Challenge, table: PspmTable, y: np.ndarray,
                      w: np.ndarray, params: ParamSet):
    """Early-evaluated z = y + c*s1 and r = w - c*s2 from one joint table.

    The table packs s1 (polynomials 0..l-1) and s2 (polynomials l..l+k-1);
    per coefficient the s2 digits extract first, so the low-bits checks run
    before the z checks. Returns (z, r_full) on acceptance, None otherwise.
    """
    l, k = params.l, params.k
    if table.pspm.r != l + k:
        raise ValueError("table does not pack s1 and s2 jointly")
    if not kernels.lanes_enabled():
        return _tee_combined_scalar(chal, table, y, w, params)
    prod = pspm_multiply(chal, table)
    z = y + prod[:l]
    r_full = (w - prod[l:]) % Q
    if np.any(np.abs(lowbits(r_full, params.gamma2)) >= params.gamma2 - params.beta):
        return None
    if np.any(np.abs(z) >= params.gamma1 - params.beta):
        return None
    return z, r_full


def _tee_combined_scalar(chal, table, y, w, params):
    l = params.l
    layout = _digit_layout(table.pspm)
    m, u, tau = table.pspm.m, table.pspm.u, table.pspm.tau
    bits = table.pspm.log2_m
    z = np.empty((l, N), dtype=np.int64)
    r_full = np.empty((params.k, N), dtype=np.int64)
    for i in range(N):
        acc = _accumulate_index(chal, table, i)
        for wd in range(len(layout) - 1, -1, -1):
            word = int(acc[wd])
            for d, j in enumerate(layout[wd]):
                val = ((word >> (d * bits)) & (m - 1)) - tau * u
                if j >= l:
                    r = (int(w[j - l, i]) - val) % Q
                    if not _r0_ok(r, params):
                        return None
                    r_full[j - l, i] = r
                else:
                    zi = int(y[j, i]) + val
                    if not _z_ok(zi, params):
                        return None
                    z[j, i] = zi
    return z, r_full


def pspm_tee_z(chal: Challenge, table: PspmTable, y: np.ndarray,
               params: ParamSet):
    """Early-evaluated z = y + c*s1; None as soon as any |z_i| is too large."""
    if not kernels.lanes_enabled():
        return _tee_vector_scalar(chal, table, lambda j, i, val:
                                  int(y[j, i]) + val,
                                  lambda v: _z_ok(v, params))
    z = y + pspm_multiply(chal, table)
    if np.any(np.abs(z) >= params.gamma1 - params.beta):
        return None
    return z


def pspm_tee_r0(chal: Challenge, table: PspmTable, w: np.ndarray,
                params: ParamSet):
    """Early-evaluated r = w - c*s2 with the low-bits rejection check."""
    if not kernels.lanes_enabled():
        return _tee_vector_scalar(chal, table, lambda j, i, val:
                                  (int(w[j, i]) - val) % Q,
                                  lambda v: _r0_ok(v, params))
    r_full = (w - pspm_multiply(chal, table)) % Q
    if np.any(np.abs(lowbits(r_full, params.gamma2)) >= params.gamma2 - params.beta):
        return None
    return r_full


def _tee_vector_scalar(chal, table, combine, ok):
    layout = _digit_layout(table.pspm)
    m, u, tau = table.pspm.m, table.pspm.u, table.pspm.tau
    bits = table.pspm.log2_m
    out = np.empty((table.pspm.r, N), dtype=np.int64)
    for i in range(N):
        acc = _accumulate_index(chal, table, i)
        for wd in range(len(layout) - 1, -1, -1):
            word = int(acc[wd])
            for d, j in enumerate(layout[wd]):
                val = ((word >> (d * bits)) & (m - 1)) - tau * u
                v = combine(j, i, val)
                if not ok(v):
                    return None
                out[j, i] = v
    return out

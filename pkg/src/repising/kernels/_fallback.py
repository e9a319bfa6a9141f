"""Numpy-vectorized kernels; used when the compiled extension is unavailable.

Same contracts as `_core`:

attach(table, slots, weights, h)
    Extend a frontier table by one vertex. Bit i of a table index holds the
    spin of boundary slot i (bit 0 -> spin +1, bit 1 -> spin -1). The new
    vertex becomes the highest bit; its interaction gain with the boundary is
    g = h + sum_e w_e * s_slot_e, and the two table halves are old +/- g.

release(table, j)
    Minimize the table over the spin bit at slot j. Returns the reduced
    table and a uint8 choice array (the minimizing bit per remaining index)
    for backtracking. Ties prefer bit 0 (spin +1).

brute(n, eu, ev, ew, h, tol)
    Exhaustive enumeration over all 2^n configurations of the energy
    sum_e ew*s*s + h.s with spin i = 1 - 2*bit_i(index). Returns
    (min_value, min_index, degeneracy within tol, gap to second level).
"""

from __future__ import annotations

import numpy as np

BACKEND = "fallback"

_SIGN_CACHE: dict[tuple[int, int], np.ndarray] = {}
_CACHE_MAX_BITS = 20


def _signs(bits: int, slot: int) -> np.ndarray:
    key = (bits, slot)
    s = _SIGN_CACHE.get(key)
    if s is None:
        idx = np.arange(1 << bits, dtype=np.int64)
        s = (1 - 2 * ((idx >> slot) & 1)).astype(np.int8)
        if bits <= _CACHE_MAX_BITS:
            _SIGN_CACHE[key] = s
    return s


def attach(table: np.ndarray, slots: np.ndarray, weights: np.ndarray, h: float) -> np.ndarray:
    n = table.shape[0]
    bits = n.bit_length() - 1
    g = np.full(n, h, dtype=np.float64)
    for slot, w in zip(slots, weights):
        g += w * _signs(bits, int(slot))
    out = np.empty(2 * n, dtype=np.float64)
    np.add(table, g, out=out[:n])
    np.subtract(table, g, out=out[n:])
    return out


def release(table: np.ndarray, j: int) -> tuple[np.ndarray, np.ndarray]:
    n = table.shape[0]
    half = n >> 1
    t = table.reshape(n >> (j + 1), 2, 1 << j)
    choices = np.argmin(t, axis=1).astype(np.uint8).reshape(half)
    reduced = np.minimum(t[:, 0, :], t[:, 1, :]).reshape(half)
    return reduced, choices


def _chunk_energies(start: int, stop: int, n, eu, ev, ew, h) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    spins = (1 - 2 * ((idx[:, None] >> np.arange(n)) & 1)).astype(np.int8)
    energies = spins.astype(np.float64) @ h
    for e in range(len(ew)):
        energies += ew[e] * (spins[:, eu[e]] * spins[:, ev[e]])
    return energies


def brute(
    n: int,
    eu: np.ndarray,
    ev: np.ndarray,
    ew: np.ndarray,
    h: np.ndarray,
    tol: float,
) -> tuple[float, int, int, float]:
    total = 1 << n
    chunk = 1 << min(n, 18)
    best = np.inf
    for start in range(0, total, chunk):
        best = min(best, float(_chunk_energies(start, start + chunk, n, eu, ev, ew, h).min()))
    count = 0
    best_index = -1
    second = np.inf
    for start in range(0, total, chunk):
        energies = _chunk_energies(start, start + chunk, n, eu, ev, ew, h)
        near = energies <= best + tol
        count += int(near.sum())
        if best_index < 0:
            hits = np.nonzero(energies == best)[0]
            if hits.size:
                best_index = start + int(hits[0])
        above = energies[~near]
        if above.size:
            second = min(second, float(above.min()))
    return best, best_index, count, second - best

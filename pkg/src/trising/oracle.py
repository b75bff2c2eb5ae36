"""Brute-force reference oracle.

Enumerates all 2^V spin states and applies the definitions directly (is any
kept face monochromatic? what is the energy?).  Vectorized with numpy but
algorithmically independent of both the backtracking solver and the
Gray-code kernels, so it can arbitrate either of them.
"""

from __future__ import annotations

import os
from typing import List, Optional, Tuple

import numpy as np

from .complex import SurfaceComplex
from .errors import ResourceLimit
from .spins import State, int_to_state, lex_key

_CHUNK_BITS = 20
_DEFAULT_MAX_VERTICES = 26


def _ceiling() -> int:
    return int(os.environ.get("TRI_ORACLE_CEILING", _DEFAULT_MAX_VERTICES))


def _check_size(c: SurfaceComplex):
    if c.vertex_count > _ceiling():
        raise ResourceLimit(
            f"oracle enumerates 2^{c.vertex_count} states; ceiling is {_ceiling()} vertices"
        )


def _chunks(n: int):
    total = 1 << n
    step = 1 << min(n, _CHUNK_BITS)
    for start in range(0, total, step):
        yield start, min(start + step, total)


def _bits(arr: np.ndarray, v: int) -> np.ndarray:
    return (arr >> np.uint64(v)) & np.uint64(1)


def satisfying_oracle(
    c: SurfaceComplex,
    pinned: Optional[dict] = None,
    required_mono: Tuple = (),
    required_non_mono: Tuple = (),
) -> Tuple[int, List[State], Optional[List]]:
    """Exact satisfying count, all satisfying states (lex order), and the
    serious edges (None when the count is 0)."""
    _check_size(c)
    n = c.vertex_count
    edges = c.edges
    serious = np.ones(len(edges), dtype=bool)
    count = 0
    states: List[State] = []
    for start, stop in _chunks(n):
        arr = np.arange(start, stop, dtype=np.uint64)
        bits = [_bits(arr, v) for v in range(n)]
        good = np.ones(arr.shape, dtype=bool)
        for a, b, cc in c.faces:
            good &= ~((bits[a] == bits[b]) & (bits[b] == bits[cc]))
        if pinned:
            for v, spin in pinned.items():
                good &= bits[v] == (0 if spin == 1 else 1)
        for u, v in required_mono:
            good &= bits[u] == bits[v]
        for u, v in required_non_mono:
            good &= bits[u] != bits[v]
        count += int(good.sum())
        for i, (u, v) in enumerate(edges):
            if serious[i]:
                serious[i] = bool(np.all(bits[u][good] == bits[v][good]))
        for x in arr[good]:
            states.append(int_to_state(int(x), n))
    states.sort(key=lex_key)
    serious_edges = [edges[i] for i in range(len(edges)) if serious[i]] if count else None
    return count, states, serious_edges


def groundstate_oracle(c: SurfaceComplex) -> Tuple[int, int, List[State]]:
    """Exact minimum energy, degeneracy, and all minimizing states (lex order)."""
    _check_size(c)
    n = c.vertex_count
    best: Optional[int] = None
    count = 0
    reps: List[State] = []
    for start, stop in _chunks(n):
        arr = np.arange(start, stop, dtype=np.uint64)
        bits = [_bits(arr, v) for v in range(n)]
        energy = np.zeros(arr.shape, dtype=np.int16)
        for u, v in c.edges:
            energy += np.where(bits[u] == bits[v], 1, -1).astype(np.int16)
        m = int(energy.min())
        if best is None or m < best:
            best = m
            count = 0
            reps = []
        if m == best:
            hit = energy == best
            count += int(hit.sum())
            for x in arr[hit]:
                reps.append(int_to_state(int(x), n))
    reps.sort(key=lex_key)
    return int(best), count, reps

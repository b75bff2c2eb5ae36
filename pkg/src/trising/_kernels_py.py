"""Pure-Python fallback for the exhaustive groundstate kernel.

Same contract as the compiled module trising._kernels: scan a contiguous
index block [start, stop) of the Gray-code sequence over ``nbits`` bits,
tracking the minimum energy, the number of states attaining it, and up to
``rep_cap`` attaining states (smallest packed values).  ``shift`` moves the
scanned bits left, so a caller can pin low bits (sign-symmetry halving).

States are packed ints with vertex i at bit i, bit 1 = spin -1.
"""

from __future__ import annotations

from bisect import insort
from typing import List, Sequence, Tuple

COMPILED = False


def scan_block(
    nbits: int,
    masks: Sequence[int],
    degrees: Sequence[int],
    start: int,
    stop: int,
    shift: int,
    rep_cap: int,
) -> Tuple[int, int, List[int]]:
    """Scan Gray-code states gray(start)..gray(stop-1) shifted by `shift`.

    masks[v] is the packed neighbour set of vertex v (post-shift vertex
    numbering); degrees[v] its degree.  Returns (min_energy, count, reps).
    """
    gray = (start ^ (start >> 1)) << shift
    energy = _energy(gray, masks)
    best = energy
    count = 1
    reps = [gray]
    for i in range(start + 1, stop):
        k = ((i & -i).bit_length() - 1) + shift
        bit_k = (gray >> k) & 1
        ones = (gray & masks[k]).bit_count()
        equal = ones if bit_k else degrees[k] - ones
        # flipping k negates every incident term
        energy -= 2 * (2 * equal - degrees[k])
        gray ^= 1 << k
        if energy < best:
            best = energy
            count = 1
            reps = [gray]
        elif energy == best:
            count += 1
            if len(reps) < rep_cap:
                insort(reps, gray)
            elif gray < reps[-1]:
                insort(reps, gray)
                reps.pop()
    return best, count, reps


def _energy(state: int, masks: Sequence[int]) -> int:
    """Direct energy of one packed state: sum over edges of spin products."""
    total = 0
    for v, m in enumerate(masks):
        sv = (state >> v) & 1
        ones = (state & m).bit_count()
        deg = m.bit_count()
        equal = ones if sv else deg - ones
        total += 2 * equal - deg
    return total // 2

"""Spin-state conventions.

A state is a tuple of +1/-1 ints, one per vertex.  The text form is a string
over ``+``/``-`` indexed by vertex id.  States are ordered lexicographically
with ``+1 < -1``; the integer packing puts vertex i at bit i with bit value 1
meaning spin -1 (so packed ints are *not* in lexicographic order, use
lex_key for sorting).
"""

from __future__ import annotations

from typing import Iterable, Tuple

State = Tuple[int, ...]


def state_to_text(s: Iterable[int]) -> str:
    return "".join("+" if x == 1 else "-" for x in s)


def text_to_state(text: str) -> State:
    if not set(text) <= {"+", "-"}:
        raise ValueError(f"state string {text!r} must consist of '+' and '-'")
    return tuple(1 if ch == "+" else -1 for ch in text)


def state_to_int(s: Iterable[int]) -> int:
    x = 0
    for i, v in enumerate(s):
        if v == -1:
            x |= 1 << i
    return x


def int_to_state(x: int, n: int) -> State:
    return tuple(-1 if (x >> i) & 1 else 1 for i in range(n))


def lex_key(s: Iterable[int]) -> Tuple[int, ...]:
    """Sort key realizing +1 < -1."""
    return tuple(0 if v == 1 else 1 for v in s)


def negate(s: State) -> State:
    return tuple(-v for v in s)


def canonical_pair_rep(s: State) -> State:
    """The lexicographically smaller of {s, -s}."""
    t = negate(s)
    return s if lex_key(s) <= lex_key(t) else t

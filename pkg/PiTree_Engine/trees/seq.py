"""
Finite sequences of naturals — the nodes of the Baire tree.

A Seq is a plain tuple of non-negative ints; ⟨⟩ is ().
"""

from __future__ import annotations

from typing import Iterable

from PiTree_Engine.errors import SeqError

Seq = tuple[int, ...]

EMPTY: Seq = ()


def as_seq(items: Iterable[int]) -> Seq:
    seq = tuple(int(v) for v in items)
    if any(v < 0 for v in seq):
        raise SeqError(f"Sequence {seq} has a negative entry.")
    return seq


def is_prefix(s: Seq, t: Seq) -> bool:
    """s ⊆ t: t restricted to len(s) equals s."""
    return len(s) <= len(t) and t[: len(s)] == s


def is_proper_prefix(s: Seq, t: Seq) -> bool:
    return len(s) < len(t) and t[: len(s)] == s


def comparable(s: Seq, t: Seq) -> bool:
    return is_prefix(s, t) or is_prefix(t, s)


def restrict(s: Seq, n: int) -> Seq:
    if n < 0 or n > len(s):
        raise SeqError(f"Cannot restrict {s} to length {n}.")
    return s[:n]


def seq_drop(x: Seq, l: int) -> Seq:
    """x_{-l}: x restricted to length len(x) - l."""
    if l < 0 or l > len(x):
        raise SeqError(f"Cannot drop {l} entries from {x} (length {len(x)}).")
    return x[: len(x) - l]


def extend(s: Seq, n: int) -> Seq:
    return s + (n,)


def common_prefix(seqs: Iterable[Seq]) -> Seq:
    seqs = list(seqs)
    if not seqs:
        return EMPTY
    first = seqs[0]
    k = len(first)
    for s in seqs[1:]:
        k = min(k, len(s))
        for i in range(k):
            if s[i] != first[i]:
                k = i
                break
    return first[:k]


def fmt_seq(s: Seq) -> str:
    return "⟨" + ",".join(str(v) for v in s) + "⟩"

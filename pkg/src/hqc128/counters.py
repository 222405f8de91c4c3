"""Primitive-invocation counters.

A counter context is activated per run (see :mod:`hqc128.costmodel`); when no
context is active every hook is a cheap no-op, and instrumentation never
changes any computed value.
"""

from __future__ import annotations

import contextlib
from contextvars import ContextVar
from dataclasses import dataclass


@dataclass
class Counters:
    keccak_permutations: int = 0
    gf_muls: int = 0
    ring_word_ops: int = 0      # accumulator words read+written in ring mults
    bytes_copied: int = 0       # bulk buffer traffic (squeezes, serialization, ...)
    samples_drawn: int = 0      # 24-bit candidates drawn, rejected ones included
    rm_blocks_decoded: int = 0


_active: ContextVar[Counters | None] = ContextVar("hqc128_counters", default=None)


@contextlib.contextmanager
def collecting(counters: Counters):
    """Route primitive counts into `counters` for the duration of the block."""
    token = _active.set(counters)
    try:
        yield counters
    finally:
        _active.reset(token)


def add_permutations(n: int) -> None:
    c = _active.get()
    if c is not None:
        c.keccak_permutations += n


def add_gf_muls(n: int) -> None:
    c = _active.get()
    if c is not None:
        c.gf_muls += n


def add_ring_word_ops(n: int) -> None:
    c = _active.get()
    if c is not None:
        c.ring_word_ops += n


def add_bytes_copied(n: int) -> None:
    c = _active.get()
    if c is not None:
        c.bytes_copied += n


def add_samples_drawn(n: int) -> None:
    c = _active.get()
    if c is not None:
        c.samples_drawn += n


def add_rm_blocks(n: int) -> None:
    c = _active.get()
    if c is not None:
        c.rm_blocks_decoded += n

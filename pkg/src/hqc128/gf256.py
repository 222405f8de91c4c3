"""Arithmetic in GF(2^8) = F2[x]/(x^8 + x^4 + x^3 + x^2 + 1).

The default multiplication backend is a branch-free carry-less multiply with
reduction folding, mirroring the fused multiply-add primitive of a
combinational field unit. A log/antilog table backend exists as an
independent oracle; because it indexes tables by its operands it is never
used on secret data by the KEM path.
"""

from __future__ import annotations

import numpy as np

from . import counters

FIELD_POLY = 0x11D   # x^8 + x^4 + x^3 + x^2 + 1
GENERATOR = 0x02
FIELD_ORDER = 255    # size of the multiplicative group


def clmul_fma(a: int, b: int) -> int:
    """Carry-less multiply-add: (a_hi * b) xor a_lo, no field reduction.

    `a` packs two operands: bits 15..8 are the multiplicand a_hi, bits 7..0
    the addend a_lo. `b` is 8 bits. The result has degree <= 14.
    """
    if not 0 <= a <= 0xFFFF:
        raise ValueError("a must be a 16-bit word")
    if not 0 <= b <= 0xFF:
        raise ValueError("b must be an 8-bit word")
    acc = a & 0xFF
    a_hi = a >> 8
    for t in range(8):
        acc ^= (a_hi << t) * ((b >> t) & 1)
    return acc


_FOLD = tuple(FIELD_POLY << (i - 8) for i in range(8, 15))


def gf_mul(a: int, b: int) -> int:
    """Field product a*b mod 0x11D: the clmul_fma carry-less multiply (with a
    zero addend), inlined, then reduction folding. Branch-free."""
    counters.add_gf_muls(1)
    p = 0
    x = a & 0xFF
    for t in range(8):
        p ^= x * ((b >> t) & 1)
        x <<= 1
    for i in range(14, 7, -1):
        p ^= ((p >> i) & 1) * _FOLD[i - 8]
    return p


def gf_inverse(a: int) -> int:
    """Multiplicative inverse a^254, by a fixed square-and-multiply chain."""
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(2^8)")
    # a^254 = a^2 * a^4 * ... * a^128
    result = 1
    sq = a
    for _ in range(7):
        sq = gf_mul(sq, sq)
        result = gf_mul(result, sq)
    return result


def build_exp_log_tables() -> tuple[list[int], list[int]]:
    """Antilog/log tables for alpha = 0x02: exp[i] = alpha^i, log[exp[i]] = i.

    exp has 256 entries and wraps with period 255 (exp[255] = exp[0] = 1);
    log[0] is unused and left at 0.
    """
    exp = [0] * 256
    log = [0] * 256
    x = 1
    for i in range(FIELD_ORDER):
        exp[i] = x
        log[x] = i
        x = gf_mul(x, GENERATOR)
    exp[FIELD_ORDER] = exp[0]
    return exp, log


_EXP, _LOG = build_exp_log_tables()


def gf_mul_table(a: int, b: int) -> int:
    """Oracle backend: product via log/antilog lookup. Test use only."""
    if a == 0 or b == 0:
        return 0
    return _EXP[(_LOG[a] + _LOG[b]) % FIELD_ORDER]


def gf_pow_alpha(e: int) -> int:
    """alpha^e for a public exponent (table-building helper)."""
    return _EXP[e % FIELD_ORDER]


def gf_mul_vec(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise field product of two uint8 arrays (broadcasting allowed).

    Same clmul-fold computation as :func:`gf_mul`, lifted to arrays; no
    secret-indexed lookups, only arithmetic on the operand values.
    """
    a16 = a.astype(np.uint16)
    bits = b.astype(np.uint16)
    p = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.uint16)
    for t in range(8):
        p ^= (a16 << t) * ((bits >> t) & 1)
    for i in range(14, 7, -1):
        p ^= ((p >> i) & 1) * (FIELD_POLY << (i - 8))
    counters.add_gf_muls(int(p.size))
    return p.astype(np.uint8)


def gf_inverse_vec(a: np.ndarray) -> np.ndarray:
    """Elementwise a^254; all entries must be nonzero."""
    if np.any(a == 0):
        raise ZeroDivisionError("0 has no inverse in GF(2^8)")
    result = np.ones_like(a)
    sq = a.copy()
    for _ in range(7):
        sq = gf_mul_vec(sq, sq)
        result = gf_mul_vec(result, sq)
    return result

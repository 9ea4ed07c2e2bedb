"""
Decimal conversion and size measures for integers beyond the interpreter's str() digit limit
"""
from math import floor, log10

# Well below the default int/str conversion limit of the interpreter
_CHUNK_BITS = 8000
_CHUNK_DIGITS = 2000


def int_to_decimal(n: int) -> str:
    """Exact decimal string of any integer, by divide and conquer on powers of ten"""
    if n < 0:
        return '-' + int_to_decimal(-n)
    if n.bit_length() <= _CHUNK_BITS:
        return str(n)
    half = decimal_digits(n) // 2
    high, low = divmod(n, 10 ** half)
    return int_to_decimal(high) + int_to_decimal(low).zfill(half)


def decimal_to_int(text: str) -> int:
    """Inverse of int_to_decimal"""
    text = text.strip()
    if text.startswith('-'):
        return -decimal_to_int(text[1:])
    if len(text) <= _CHUNK_DIGITS:
        return int(text)
    half = len(text) // 2
    return decimal_to_int(text[:-half]) * 10 ** half + decimal_to_int(text[-half:])


def decimal_digits(n: int) -> int:
    """Number of decimal digits of |n| (1 for zero)"""
    n = abs(n)
    if n < 10:
        return 1
    if n.bit_length() <= _CHUNK_BITS:
        return len(str(n))
    estimate = floor(log10(n)) + 1
    # log10 of a huge int can land on the wrong side of a power of ten
    if n >= 10 ** estimate:
        return estimate + 1
    if n < 10 ** (estimate - 1):
        return estimate - 1
    return estimate

"""Continued fractions of square roots of primes."""

from ._core import (
    cassini,
    cli,
    density,
    density_ak,
    expand,
    f_closed,
    g_closed,
    is_prime,
    main_d,
    nth_prime,
    period_length,
    prefix,
    scan_ak,
    scan_l0,
)

__all__ = [
    "cassini",
    "cli",
    "density",
    "density_ak",
    "expand",
    "f_closed",
    "g_closed",
    "is_prime",
    "main_d",
    "nth_prime",
    "period_length",
    "prefix",
    "scan_ak",
    "scan_l0",
]

"""
Counting Formulas

Features:
- beta(m): number of parity-preserving permutations of {1..(m-1)/2}
- Exact count of magic value 2mn+2 labelings up to symmetry
- Lower bounds for values 2mn+3 and 2mn+1, and for the total
"""

from math import factorial

from facemagic.errors import GridError
from facemagic.services.construct import ordered_factorizations, tau


__all__ = [
    "beta",
    "count_value_mid",
    "lower_bound_total",
    "lower_bound_value_minus",
    "lower_bound_value_plus",
    "ordered_factorizations",
    "tau",
]


def _require_odd(*values: int) -> None:
    for value in values:
        if value < 3 or value % 2 == 0:
            raise GridError(f"Counting formulas need odd dimensions >= 3, got {value}")


def beta(m: int) -> int:
    """
    ((m-1)/4)!^2 when m = 1 (mod 4), ((m-3)/4)! ((m+1)/4)! when m = 3 (mod 4).

    Args:
        m: odd dimension >= 3

    Returns:
        Number of parity-preserving permutations of {1..(m-1)/2}
    """
    _require_odd(m)
    if m % 4 == 1:
        return factorial((m - 1) // 4) ** 2
    return factorial((m - 3) // 4) * factorial((m + 1) // 4)


def _prefix(m: int, n: int) -> int:
    """Sequence count times the power of two shared by every formula."""
    if m == n:
        return tau(m, m) * 2 ** (m - 3)
    return (tau(m, n) + tau(n, m)) * 2 ** ((m + n) // 2 - 3)


def count_value_mid(m: int, n: int) -> int:
    """Labelings of P(m,n) with magic value 2mn+2, up to symmetry."""
    _require_odd(m, n)
    return _prefix(m, n) * factorial((m - 1) // 2) * factorial((n - 1) // 2)


def lower_bound_value_plus(m: int, n: int) -> int:
    """Lower bound on labelings with magic value 2mn+3, up to symmetry."""
    _require_odd(m, n)
    return _prefix(m, n) * beta(m) * beta(n)


def lower_bound_value_minus(m: int, n: int) -> int:
    """Same bound for 2mn+1: the complement pairs the two classes one-to-one."""
    return lower_bound_value_plus(m, n)


def lower_bound_total(m: int, n: int) -> int:
    """Lower bound on all C4-face-magic labelings of P(m,n), up to symmetry."""
    return count_value_mid(m, n) + 2 * lower_bound_value_plus(m, n)

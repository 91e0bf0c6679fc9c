"""Numerical invariants of the admissible fundamental group and the type recovery formula."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .errors import InputError
from .semigraph import CurveModel, betti_number

__all__ = ["TypeInvariants", "invariants_of", "recover_type", "c_constant", "avr_p", "avr_p_of_curve"]


def _check_type(g: int, n: int, require_stable: bool) -> None:
    if g < 0 or n < 0:
        raise InputError("g and n must be non-negative")
    if require_stable and 2 * g - 2 + n <= 0:
        raise InputError(f"type ({g}, {n}) is not stable")


@dataclass(frozen=True)
class TypeInvariants:
    g: int
    n: int
    b1: int
    b2: int
    gamma_max: int

    def to_json(self) -> dict:
        return {"g": self.g, "n": self.n, "b1": self.b1, "b2": self.b2, "gamma_max": self.gamma_max}


def invariants_of(g: int, n: int, *, require_stable: bool = True) -> TypeInvariants:
    """b2 = [n = 0], b1 = 2g + n - 1 + b2, gamma_max = g + n - 2 + b2."""
    _check_type(g, n, require_stable)
    b2 = 1 if n == 0 else 0
    return TypeInvariants(g, n, 2 * g + n - 1 + b2, b2, g + n - 2 + b2)


def recover_type(b1: int, b2: int, gamma_max: int) -> tuple[int, int]:
    if b2 not in (0, 1):
        raise InputError("b2 must be 0 or 1")
    g = b1 - gamma_max - 1
    n = 2 * gamma_max - b1 - b2 + 3
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise InputError(f"invariants ({b1}, {b2}, {gamma_max}) give no stable type: ({g}, {n})")
    if (n == 0) != (b2 == 1):
        raise InputError("b2 = 1 must go with n = 0")
    return g, n


def c_constant(N: int) -> int:
    """0 for N = 0, else 3^(N-1) N!."""
    if N < 0:
        raise InputError("N must be non-negative")
    return 0 if N == 0 else 3 ** (N - 1) * factorial(N)


def avr_p(g: int, n: int) -> int:
    """Average p-rank of prime-to-p cyclic covers of a smooth curve of type (g, n)."""
    _check_type(g, n, True)
    return g - 1 if n <= 1 else g


def avr_p_of_curve(c: CurveModel) -> int:
    """Only smooth curves are supported; the singular case depends on the dual graph."""
    if len(c.graph.vertices) != 1 or betti_number(c.graph) != 0:
        raise InputError("the average p-rank formula here covers smooth curves only")
    (v,) = c.graph.vertices
    return avr_p(c.vertex_genus[v], c.n_marked)

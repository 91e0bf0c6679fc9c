"""Finite fields GF(p^r) with log/antilog tables.

Elements are integers in ``[0, p^r)`` whose base-p digits are the coefficients
of a polynomial in the class of ``x`` (little-endian). The modulus is the
monic primitive polynomial of degree r whose lower coefficients, read as a
base-p integer, are smallest; ``x`` is then a generator of the multiplicative
group. For r = 1 the field is Z/p and the generator is the smallest primitive
root. Named points use the strings ``"0"``, ``"1"``, ``"inf"`` and ``"g^k"``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import InputError
from .semigraph import is_prime

__all__ = ["FiniteField", "gf", "rank_over_field"]

_ADD_TABLE_LIMIT = 1024


def _poly_x_powers(p: int, r: int, low: Sequence[int]) -> list[int] | None:
    """Powers of x modulo x^r + sum(low[i] x^i); None unless x has order p^r - 1."""
    q = p**r
    seq = []
    cur = [1] + [0] * (r - 1)
    for k in range(q - 1):
        value = 0
        for d in reversed(cur):
            value = value * p + d
        if k > 0 and value == 1:
            return None
        seq.append(value)
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [(c - top * l) % p for c, l in zip(cur, low)]
    return seq if len(set(seq)) == q - 1 else None


class FiniteField:
    def __init__(self, p: int, r: int = 1) -> None:
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
        if r < 1:
            raise InputError("field degree must be positive")
        self.p = p
        self.r = r
        self.q = p**r
        q = self.q
        if r == 1:
            gen = next(g for g in range(1, p) if self._order_mod_p(g) == p - 1) if p > 2 else 1
            exp = [pow(gen, k, p) for k in range(p - 1)]
            self.modulus = (1, (-gen) % p)  # x - gen, constant term last
        else:
            exp = None
            for code in range(q):
                low = [(code // p**i) % p for i in range(r)]
                if low[0] == 0:
                    continue
                exp = _poly_x_powers(p, r, low)
                if exp is not None:
                    self.modulus = tuple([1] + low[::-1])
                    break
            if exp is None:  # pragma: no cover - primitive polynomials always exist
                raise InputError("no primitive polynomial found")
        self.exp = np.array(exp + exp, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        for k, v in enumerate(exp):
            log[v] = k
        self.log = log
        self._exp_list = exp + exp
        self._log_list = log.tolist()
        self.digits = np.array([[(a // p**i) % p for i in range(r)] for a in range(q)], dtype=np.int64)
        self._weights = np.array([p**i for i in range(r)], dtype=np.int64)
        if p == 2:
            self._add_table = None
        elif q <= _ADD_TABLE_LIMIT:
            dsum = (self.digits[:, None, :] + self.digits[None, :, :]) % p
            self._add_table = (dsum * self._weights).sum(axis=2)
            self._add_list = self._add_table.tolist()
            dneg = (-self.digits) % p
            self._neg_list = (dneg * self._weights).sum(axis=1).tolist()
        else:
            self._add_table = None

    def _order_mod_p(self, g: int) -> int:
        k, x = 1, g % self.p
        while x != 1:
            x = x * g % self.p
            k += 1
        return k

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.r})"

    # arithmetic ---------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.r == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_list[a][b]
        da, db = self.digits_of(a), self.digits_of(b)
        return self.from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.r == 1:
            return (-a) % self.p
        if self._add_table is not None:
            return self._neg_list[a]
        return self.from_digits([(-x) % self.p for x in self.digits_of(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.r == 1:
            return a * b % self.p
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.r == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp_list[(self.q - 1 - self._log_list[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e > 0 else 1
        if self.r == 1:
            return pow(a, e % (self.p - 1), self.p)
        return self._exp_list[(self._log_list[a] * e) % (self.q - 1)]

    def frob(self, a: int, k: int = 1) -> int:
        """a^(p^k)."""
        return self.pow(a, self.p ** (k % self.r))

    def from_int(self, m: int) -> int:
        """Image of an integer in the prime field."""
        return m % self.p

    def digits_of(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.r)]

    def from_digits(self, ds: Sequence[int]) -> int:
        value = 0
        for d in reversed(ds):
            value = value * self.p + d
        return value

    def generator_power(self, k: int) -> int:
        return self._exp_list[k % (self.q - 1)]

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        if self.p == 2:
            return True
        return self._log_list[a] % 2 == 0 if self.r > 1 else pow(a, (self.p - 1) // 2, self.p) == 1

    def elements(self) -> range:
        return range(self.q)

    # naming -------------------------------------------------------------
    def parse_point(self, s: str) -> int | None:
        """``None`` stands for the point at infinity."""
        s = s.strip()
        if s == "inf":
            return None
        if s == "0":
            return 0
        if s == "1":
            return 1
        if s.startswith("g^"):
            return self.generator_power(int(s[2:]))
        raise InputError(f"cannot parse point {s!r}")

    def format_point(self, a: int | None) -> str:
        if a is None:
            return "inf"
        if a in (0, 1):
            return str(a)
        return f"g^{self._log_list[a]}"

    # polynomials --------------------------------------------------------
    def poly_mul(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        """Product of polynomials stored as (degree+1, r) digit arrays."""
        p, r = self.p, self.r
        out = np.zeros((f.shape[0] + g.shape[0] - 1, 2 * r - 1), dtype=np.int64)
        for a in range(r):
            fa = f[:, a]
            if not fa.any():
                continue
            for b in range(r):
                gb = g[:, b]
                if gb.any():
                    out[:, a + b] = (out[:, a + b] + np.convolve(fa, gb)) % p
        return self._reduce_digit_poly(out)

    def _reduce_digit_poly(self, arr: np.ndarray) -> np.ndarray:
        p, r = self.p, self.r
        if r == 1:
            return arr % p
        # x^r = -sum(low_i x^i)
        low = list(self.modulus[1:])[::-1]
        arr = arr % p
        for k in range(arr.shape[1] - 1, r - 1, -1):
            top = arr[:, k].copy()
            if not top.any():
                continue
            arr[:, k] = 0
            for i, l in enumerate(low):
                if l:
                    arr[:, k - r + i] = (arr[:, k - r + i] - top * l) % p
        return arr[:, :r] % p

    def poly_from_elements(self, coeffs: Sequence[int]) -> np.ndarray:
        return self.digits[np.asarray(coeffs, dtype=np.int64)].copy()

    def poly_to_elements(self, arr: np.ndarray) -> list[int]:
        return (arr @ self._weights).tolist()

    def poly_pow(self, f: np.ndarray, e: int) -> np.ndarray:
        result = self.poly_from_elements([1])
        base = f
        while e:
            if e & 1:
                result = self.poly_mul(result, base)
            e >>= 1
            if e:
                base = self.poly_mul(base, base)
        return result


@lru_cache(maxsize=None)
def gf(p: int, r: int = 1) -> FiniteField:
    return FiniteField(p, r)


def rank_over_field(F: FiniteField, rows: Sequence[Sequence[int]]) -> int:
    """Rank of a matrix with entries in ``F`` by Gaussian elimination."""
    m = [list(row) for row in rows]
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = F.inv(m[rank][col])
        prow = [F.mul(inv, x) for x in m[rank]]
        m[rank] = prow
        for i in range(n_rows):
            if i != rank and m[i][col]:
                factor = m[i][col]
                m[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(m[i], prow)]
        rank += 1
        if rank == n_rows:
            break
    return rank

"""Base-p digit calculus on ramification divisors with n = p^t - 1.

A divisor supported on the marked points is stored as a map from open-edge
id to a coefficient in ``{0, ..., n-1}``. Rotating the base-p digits of every
coefficient gives the Frobenius-shifted divisors, and multiplying by ``l``
modulo ``n`` gives the twisted divisors. All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .semigraph import is_prime

__all__ = [
    "DigitContext",
    "MarkedDivisor",
    "DigitBlock",
    "digit_shift",
    "divisor_shift",
    "s_of",
    "DigitReport",
    "necessary_condition",
    "shift_degrees_preserved",
    "shift_degrees_nondecreasing",
    "twist",
    "SplitReport",
    "cut_split",
    "interleave_coefficients",
    "interleave",
    "split_blocks",
    "digit_condition_witness",
]


@dataclass(frozen=True)
class DigitContext:
    p: int
    t: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InputError(f"{self.p} is not prime")
        if self.t < 1:
            raise InputError("t must be positive")

    @property
    def n(self) -> int:
        return self.p**self.t - 1

    def digits(self, u: int) -> list[int]:
        """Little-endian base-p digits of ``u`` padded to length t."""
        if not 0 <= u <= self.n:
            raise InputError(f"{u} is outside [0, {self.n}]")
        out = []
        for _ in range(self.t):
            u, r = divmod(u, self.p)
            out.append(r)
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        value = 0
        for d in reversed(digits):
            value = value * self.p + d
        return value


def digit_shift(ctx: DigitContext, u: int, i: int) -> int:
    """Rotate the digit vector: the j-th digit of the result is u_{i+j mod t}."""
    ds = ctx.digits(u)
    i %= ctx.t
    return ctx.from_digits(ds[i:] + ds[:i])


@dataclass(frozen=True)
class MarkedDivisor:
    ctx: DigitContext
    coeffs: Mapping[str, int]

    def __post_init__(self) -> None:
        clean = {}
        for x, c in sorted(self.coeffs.items()):
            c = int(c)
            if not 0 <= c < self.ctx.n:
                raise InputError(f"coefficient {c} at {x!r} is outside [0, {self.ctx.n - 1}]")
            clean[x] = c
        object.__setattr__(self, "coeffs", clean)

    @property
    def degree(self) -> int:
        return sum(self.coeffs.values())

    @property
    def in_kernel(self) -> bool:
        return self.degree % self.ctx.n == 0

    @property
    def support(self) -> list[str]:
        return [x for x, c in self.coeffs.items() if c]

    def vector(self, ordering: Sequence[str] | None = None) -> tuple[int, ...]:
        keys = list(self.coeffs) if ordering is None else list(ordering)
        return tuple(self.coeffs[x] for x in keys)

    def to_json(self) -> dict:
        return {"p": self.ctx.p, "t": self.ctx.t, "coeffs": dict(self.coeffs)}


@dataclass(frozen=True)
class DigitBlock:
    """Block divisor whose coefficients may reach ``n`` (all digits p-1)."""

    ctx: DigitContext
    coeffs: Mapping[str, int]

    def __post_init__(self) -> None:
        for x, c in self.coeffs.items():
            if not 0 <= c <= self.ctx.n:
                raise InputError(f"block coefficient {c} at {x!r} is outside [0, {self.ctx.n}]")
        object.__setattr__(self, "coeffs", dict(sorted(self.coeffs.items())))

    @property
    def degree(self) -> int:
        return sum(self.coeffs.values())


def divisor_shift(D: MarkedDivisor | DigitBlock, i: int) -> dict[str, int]:
    """Coefficient-wise digit rotation; values may equal n."""
    return {x: digit_shift(D.ctx, c, i) for x, c in D.coeffs.items()}


def s_of(D: MarkedDivisor, n_X: int | None = None) -> int:
    if not D.in_kernel:
        raise InputError(f"degree {D.degree} is not divisible by n = {D.ctx.n}")
    s = D.degree // D.ctx.n
    if n_X is not None and not 0 <= s <= max(0, n_X - 1):
        raise InputError(f"s(D) = {s} exceeds the range allowed by {n_X} marked points")
    return s


@dataclass(frozen=True)
class DigitReport:
    holds: bool
    target: int
    column_sums: tuple[int, ...]
    degree: int
    shifted_degrees: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "target_column_sum": self.target,
            "column_sums": list(self.column_sums),
            "degree": self.degree,
            "shifted_degrees": list(self.shifted_degrees),
        }


def _column_sums(D: MarkedDivisor | DigitBlock) -> tuple[int, ...]:
    sums = [0] * D.ctx.t
    for c in D.coeffs.values():
        for j, d in enumerate(D.ctx.digits(c)):
            sums[j] += d
    return tuple(sums)


def _shifted_degrees(D: MarkedDivisor | DigitBlock) -> tuple[int, ...]:
    return tuple(sum(divisor_shift(D, i).values()) for i in range(D.ctx.t))


def necessary_condition(D: MarkedDivisor, n_X: int) -> DigitReport:
    """Digit-column test: every column of base-p digits sums to (n_X-1)(p-1)."""
    if len(D.coeffs) != n_X:
        raise InputError(f"divisor lists {len(D.coeffs)} points, expected {n_X}")
    if s_of(D, n_X) != n_X - 1:
        raise InputError("the digit-column test needs s(D) = n_X - 1")
    target = (n_X - 1) * (D.ctx.p - 1)
    sums = _column_sums(D)
    return DigitReport(
        holds=all(s == target for s in sums),
        target=target,
        column_sums=sums,
        degree=D.degree,
        shifted_degrees=_shifted_degrees(D),
    )


def shift_degrees_preserved(D: MarkedDivisor) -> bool:
    return all(d == D.degree for d in _shifted_degrees(D))


def shift_degrees_nondecreasing(D: MarkedDivisor) -> bool:
    return all(d >= D.degree for d in _shifted_degrees(D))


def twist(D: MarkedDivisor, l: int) -> MarkedDivisor:
    n = D.ctx.n
    return MarkedDivisor(D.ctx, {x: (l * c) % n for x, c in D.coeffs.items()})


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    cut: int
    shift: int
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class SplitReport:
    ordering: tuple[str, ...]
    a: Mapping[int, int]
    b: Mapping[int, int]
    checks: tuple[IdentityCheck, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "ordering": list(self.ordering),
            "a": {str(k): v for k, v in self.a.items()},
            "b": {str(k): v for k, v in self.b.items()},
            "passed": self.passed,
            "failures": [c.__dict__ for c in self.checks if not c.passed],
        }


def cut_split(D: MarkedDivisor, ordering: Sequence[str]) -> SplitReport:
    """Suffix/prefix sums at every cut of an ordered chain of marked points.

    ``a[l]`` is the residue of the sum of coefficients after position l and
    ``b[l]`` of those up to l (positions are 1-based, l runs over 1..n_X-1).
    The report checks, for every digit shift, that each cut splits n exactly,
    that the end triples and every middle triple sum to 2n.
    """
    ordering = tuple(ordering)
    n_X = len(ordering)
    if sorted(ordering) != sorted(D.coeffs):
        raise InputError("ordering must list every marked point exactly once")
    if n_X < 3:
        raise InputError("cut splits need at least three marked points")
    n = D.ctx.n
    if any(deg != (n_X - 1) * n for deg in (D.degree, *_shifted_degrees(D))):
        raise InputError("every digit shift of D must have degree (n_X - 1) n")
    d = [D.coeffs[x] for x in ordering]
    a = {l: sum(d[l:]) % n for l in range(1, n_X)}
    b = {l: sum(d[:l]) % n for l in range(1, n_X)}
    ctx = D.ctx
    checks = []
    for i in range(ctx.t):
        sh = lambda u: digit_shift(ctx, u, i)  # noqa: E731
        for l in range(1, n_X):
            checks.append(IdentityCheck("cut_complement", l, i, sh(a[l]) + sh(b[l]), n))
        checks.append(IdentityCheck("first_triple", 2, i, sh(d[0]) + sh(d[1]) + sh(a[2]), 2 * n))
        checks.append(
            IdentityCheck("last_triple", n_X - 2, i, sh(b[n_X - 2]) + sh(d[n_X - 2]) + sh(d[n_X - 1]), 2 * n)
        )
        for l in range(2, n_X - 2):
            checks.append(IdentityCheck("middle_triple", l, i, sh(b[l]) + sh(d[l]) + sh(a[l + 1]), 2 * n))
    return SplitReport(ordering, a, b, tuple(checks))


def _validate_block(block: MarkedDivisor | DigitBlock) -> None:
    nj = block.ctx.n
    if block.degree != 2 * nj:
        raise InputError(f"block degree {block.degree} differs from 2 * {nj}")
    if any(c > nj for c in block.coeffs.values()):
        raise InputError("block coefficient exceeds its modulus")
    if not any(c == nj for c in block.coeffs.values()):
        raise InputError(f"no block coefficient reaches {nj}")


def interleave_coefficients(
    parts: Sequence[MarkedDivisor | DigitBlock], *, validate_blocks: bool = False
) -> tuple[DigitContext, dict[str, int]]:
    """Concatenate digit blocks: D = D_1 + p^{t_1} D_2 + p^{t_1+t_2} D_3 + ...

    Coefficients of the result may equal n; see :func:`interleave` for the
    range-checked version.
    """
    if not parts:
        raise InputError("nothing to interleave")
    p = parts[0].ctx.p
    keys = set(parts[0].coeffs)
    for part in parts:
        if part.ctx.p != p:
            raise InputError("all blocks must share the characteristic")
        if set(part.coeffs) != keys:
            raise InputError("all blocks must cover the same marked points")
        if validate_blocks:
            _validate_block(part)
    total_t = sum(part.ctx.t for part in parts)
    out = {x: 0 for x in sorted(keys)}
    offset = 0
    for part in parts:
        for x, c in part.coeffs.items():
            out[x] += p**offset * c
        offset += part.ctx.t
    return DigitContext(p, total_t), out


def interleave(parts: Sequence[MarkedDivisor | DigitBlock], *, validate_blocks: bool = False) -> MarkedDivisor:
    ctx, coeffs = interleave_coefficients(parts, validate_blocks=validate_blocks)
    bad = sorted(x for x, c in coeffs.items() if c >= ctx.n)
    if bad:
        raise InputError(f"interleaved coefficient reaches n = {ctx.n} at {bad}")
    return MarkedDivisor(ctx, coeffs)


def split_blocks(ctx: DigitContext, coeffs: Mapping[str, int], ts: Iterable[int]) -> list[dict[str, int]]:
    """Read interleaved coefficients back into blocks of t_j digits each."""
    ts = list(ts)
    if sum(ts) != ctx.t:
        raise InputError("block lengths must add up to t")
    blocks = []
    offset = 0
    for tj in ts:
        mod = ctx.p**tj
        blocks.append({x: (c // ctx.p**offset) % mod for x, c in coeffs.items()})
        offset += tj
    return blocks


def _remaining_feasible(needs: Sequence[int], k: int, p: int) -> bool:
    # k points still to place, each digit <= p-1, none allowed to be all p-1
    if k == 0:
        return all(r == 0 for r in needs)
    if any(r < 0 or r > k * (p - 1) for r in needs):
        return False
    return sum(k * (p - 1) - r for r in needs) >= k


def digit_condition_witness(ctx: DigitContext, points: Sequence[str]) -> MarkedDivisor | None:
    """Lexicographically smallest divisor with s = n_X - 1 passing the digit test.

    Returns ``None`` when no coefficient vector in ``[0, n)`` satisfies the
    column condition.
    """
    n_X = len(points)
    if n_X < 2:
        raise InputError("need at least two marked points")
    target = (n_X - 1) * (ctx.p - 1)
    needs = [target] * ctx.t
    if not _remaining_feasible(needs, n_X, ctx.p):
        return None
    chosen: list[int] = []
    for idx in range(n_X):
        left = n_X - idx - 1
        for c in range(ctx.n):
            ds = ctx.digits(c)
            rest = [r - d for r, d in zip(needs, ds)]
            if _remaining_feasible(rest, left, ctx.p):
                chosen.append(c)
                needs = rest
                break
        else:  # pragma: no cover - feasibility was established above
            return None
    return MarkedDivisor(ctx, dict(zip(points, chosen)))

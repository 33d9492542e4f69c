"""Cobordism invariants of fixed data and the Delta, Omega and sigma operations."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .errors import DimensionError, InputError, PreconditionError, ResourceError
from .f2algebra import (
    MAX_K,
    Automorphism,
    Character,
    CharMultiset,
    F2Polynomial,
    SymFnExpr,
    divmod_linear,
    eval_sym,
)
from .skeleton import FixedData

TUPLE_GUARD = 10**6


def prime_tangent_set(D: FixedData) -> FixedData:
    """Cancel equal vertex multisets in pairs; survivors in canonical order.

    Each survivor keeps the label of its first occurrence in D.
    """
    counts = Counter(D.multisets)
    first_label: dict[CharMultiset, str] = {}
    for label, S in D.vertices:
        first_label.setdefault(S, label)
    survivors = sorted(S for S, m in counts.items() if m % 2)
    return FixedData(D.k, D.n, [(first_label[S], S) for S in survivors])


def is_bounding(D: FixedData) -> bool:
    return len(prime_tangent_set(D)) == 0


# ---------------------------------------------------------------- tDKS test


@dataclass(frozen=True)
class Witness:
    """The division by ``form`` at 1-based ``stage`` left ``remainder``."""

    form: Character
    stage: int
    remainder: F2Polynomial

    def to_json(self) -> dict:
        return {"form": str(self.form), "stage": self.stage, "remainder": str(self.remainder)}


@dataclass(frozen=True)
class TdksVerdict:
    """Either the polynomial value of the localization sum or a witness."""

    polynomial: F2Polynomial | None = None
    witness: Witness | None = None

    @property
    def is_polynomial(self) -> bool:
        return self.witness is None

    def to_json(self) -> dict:
        if self.witness is None:
            return {"polynomial": str(self.polynomial)}
        return {"witness": self.witness.to_json()}


def _denominator_profile(D: FixedData) -> dict[Character, int]:
    profile: dict[Character, int] = {}
    for S in D.multisets:
        for c, m in S.counts().items():
            profile[c] = max(profile.get(c, 0), m)
    return profile


def tdks_f_hat(D: FixedData, f: SymFnExpr | str) -> TdksVerdict:
    """Sum over vertices of f(vertex forms) / Euler class, tested for polynomiality.

    The sum is brought over the least common denominator prod c^mu(c), then
    divided by each form c (bitstring order, mu(c) times each).
    """
    if isinstance(f, str):
        f = SymFnExpr.parse(f)
    profile = _denominator_profile(D)
    if any(c.is_zero() for c in profile):
        raise PreconditionError("fixed data contains the zero character")
    linear = {c: F2Polynomial.linear(c) for c in profile}
    numerator = F2Polynomial.zero(D.k)
    for S in D.multisets:
        term = eval_sym(f, S)
        if term.is_zero():
            continue
        own = S.counts()
        for c in sorted(profile):
            gap = profile[c] - own.get(c, 0)
            if gap:
                term = term * linear[c] ** gap
        numerator = numerator + term
    stage = 0
    for c in sorted(profile):
        for _ in range(profile[c]):
            stage += 1
            numerator, remainder = divmod_linear(numerator, c)
            if not remainder.is_zero():
                return TdksVerdict(witness=Witness(c, stage, remainder))
    return TdksVerdict(polynomial=numerator)


def _partitions(total: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def batch_functions(n: int, dmax: int) -> list[SymFnExpr]:
    """1 followed by every m[partition] of size 1..dmax with at most n parts."""
    out = [SymFnExpr.one()]
    for size in range(1, dmax + 1):
        for parts in sorted(_partitions(size, size)):
            if len(parts) <= n:
                out.append(SymFnExpr.monomial(parts))
    return out


@dataclass
class BatchReport:
    ok: bool
    tested: int
    failed_function: SymFnExpr | None = None
    verdict: TdksVerdict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"pass": self.ok, "tested": self.tested}
        if not self.ok:
            out["function"] = str(self.failed_function)
            out.update(self.verdict.to_json())
        return out


def tdks_batch(D: FixedData, dmax: int | None = None) -> BatchReport:
    """Run the polynomiality test for every monomial symmetric function up to degree dmax.

    The test is linear in f, so this covers all symmetric f of degree <= dmax.
    Stops at the first failure.
    """
    if dmax is None:
        dmax = D.n
    if dmax < 0:
        raise InputError("dmax must be >= 0")
    tested = 0
    for f in batch_functions(D.n, dmax):
        verdict = tdks_f_hat(D, f)
        tested += 1
        if not verdict.is_polynomial:
            return BatchReport(False, tested, f, verdict)
    return BatchReport(True, tested)


# --------------------------------------------------------------- operations


def delta_product(D: FixedData, i: int) -> FixedData:
    """Fixed data of the i-fold diagonal product action."""
    if i < 1:
        raise InputError("product order must be >= 1")
    if len(D) ** i > TUPLE_GUARD:
        raise ResourceError(f"{len(D)}^{i} vertex tuples exceed guard {TUPLE_GUARD}")
    vertices = []
    for combo in product(D.vertices, repeat=i):
        label = ".".join(label for label, _ in combo)
        chars = [c for _, S in combo for c in S]
        vertices.append((label, CharMultiset(chars, D.k)))
    return FixedData(D.k, D.n * i, vertices)


def delta_diagonal(D: FixedData, i: int) -> FixedData:
    """Each vertex multiset repeated i times; i must be a power of two."""
    if i < 1 or i & (i - 1):
        raise PreconditionError(f"{i} is not a power of 2")
    return FixedData(D.k, D.n * i, [(label, S.repeat(i)) for label, S in D.vertices])


def omega(D: FixedData) -> FixedData:
    """Double every character into copies with a new last coordinate 0 and 1."""
    if D.k + 1 > MAX_K:
        raise DimensionError(f"rank {D.k + 1} exceeds {MAX_K}")
    k = D.k + 1
    vertices = []
    for label, S in D.vertices:
        chars = [Character(k, (c.value << 1) | bit) for c in S for bit in (0, 1)]
        vertices.append((label, CharMultiset(chars, k)))
    return FixedData(k, 2 * D.n, vertices)


def sigma_map(D: FixedData, M: Automorphism) -> FixedData:
    """Relabel every character by the automorphism."""
    if M.k != D.k:
        raise DimensionError(f"matrix rank {M.k} vs data rank {D.k}")
    return FixedData(
        D.k, D.n, [(label, CharMultiset((M(c) for c in S), D.k)) for label, S in D.vertices]
    )

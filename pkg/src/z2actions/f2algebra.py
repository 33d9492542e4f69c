"""Characters of (Z_2)^k and polynomial arithmetic over F_2[r1, ..., rk].

A character is stored as an int whose most significant of k bits is the
coefficient of r1, so integer order equals bitstring order.  Polynomials are
frozensets of packed monomials: the exponent of variable i (1-based) occupies
the bit field starting at ``_W * (i - 1)``, which turns monomial
multiplication into integer addition.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import (
    DimensionError,
    InputError,
    InvalidRepresentationError,
    PreconditionError,
    ResourceError,
)

MAX_K = 16
DEGREE_GUARD = 10**6
TERM_GUARD = 5_000_000

_W = 24
_FIELD = (1 << _W) - 1


# ---------------------------------------------------------------- characters


@dataclass(frozen=True, order=True)
class Character:
    """A nonzero-or-zero vector in F_2^k; ``str`` gives the bitstring."""

    k: int
    value: int

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise InputError(f"rank k={self.k} outside 1..{MAX_K}")
        if not 0 <= self.value < (1 << self.k):
            raise InputError(f"value {self.value} does not fit in k={self.k} bits")

    @classmethod
    def parse(cls, text: str) -> Character:
        if not text or set(text) - {"0", "1"}:
            raise InputError(f"not a bitstring: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def basis(cls, k: int, i: int) -> Character:
        """The coordinate character r_i (1-based)."""
        if not 1 <= i <= k:
            raise InputError(f"basis index {i} outside 1..{k}")
        return cls(k, 1 << (k - i))

    def __str__(self):
        return format(self.value, f"0{self.k}b")

    def __repr__(self):
        return f"Character({str(self)!r})"

    def __add__(self, other: Character) -> Character:
        return char_add(self, other)

    def is_zero(self) -> bool:
        return self.value == 0

    def support(self) -> list[int]:
        """1-based indices of the variables with coefficient 1."""
        return [i for i in range(1, self.k + 1) if self.value >> (self.k - i) & 1]


def char_add(a: Character, b: Character) -> Character:
    if a.k != b.k:
        raise DimensionError(f"cannot add characters of rank {a.k} and {b.k}")
    return Character(a.k, a.value ^ b.value)


def _common_k(chars: Sequence[Character]) -> int | None:
    ks = {c.k for c in chars}
    if len(ks) > 1:
        raise DimensionError(f"mixed ranks {sorted(ks)}")
    return ks.pop() if ks else None


def _xor_rank(values: Iterable[int]) -> int:
    pivots: dict[int, int] = {}
    for v in values:
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return len(pivots)


def span_dim(chars: Iterable[Character]) -> int:
    chars = list(chars)
    _common_k(chars)
    return _xor_rank(c.value for c in chars)


def odd_sums(gens: Sequence[Character]) -> frozenset[Character]:
    """All sums of an odd number of the given independent generators."""
    gens = list(gens)
    k = _common_k(gens)
    if span_dim(gens) != len(gens):
        raise PreconditionError("generators are linearly dependent")
    out = set()
    for size in range(1, len(gens) + 1, 2):
        for subset in combinations(gens, size):
            acc = 0
            for g in subset:
                acc ^= g.value
            out.add(Character(k, acc))
    return frozenset(out)


# -------------------------------------------------------------- multisets


def _value_of(c: Character) -> int:
    return c.value


class CharMultiset:
    """Sorted multiset of characters of a common rank k."""

    __slots__ = ("k", "items", "_key")

    def __init__(self, chars: Iterable[Character], k: int | None = None):
        items = tuple(sorted(chars, key=_value_of))
        ck = _common_k(items)
        if ck is None:
            if k is None:
                raise InputError("rank k required for an empty multiset")
            ck = k
        elif k is not None and k != ck:
            raise DimensionError(f"characters have rank {ck}, expected {k}")
        self.k = ck
        self.items = items
        self._key = tuple(c.value for c in items)

    @classmethod
    def parse(cls, texts: Iterable[str], k: int | None = None) -> CharMultiset:
        return cls((Character.parse(t) for t in texts), k)

    @classmethod
    def from_counts(cls, counts: dict[Character, int], k: int) -> CharMultiset:
        return cls((c for c, m in counts.items() for _ in range(m)), k)

    def key(self) -> tuple[int, ...]:
        """Canonical sort key: sorted character values."""
        return self._key

    def __len__(self):
        return len(self.items)

    def __iter__(self) -> Iterator[Character]:
        return iter(self.items)

    def __eq__(self, other):
        return (
            isinstance(other, CharMultiset)
            and self.k == other.k
            and self._key == other._key
        )

    def __lt__(self, other: CharMultiset):
        return (self.k, self._key) < (other.k, other._key)

    def __hash__(self):
        return hash((self.k, self._key))

    def __repr__(self):
        return "{" + ",".join(str(c) for c in self.items) + "}"

    def counts(self) -> dict[Character, int]:
        return dict(Counter(self.items))

    def mult(self, c: Character) -> int:
        return self.items.count(c)

    def support(self) -> list[Character]:
        return sorted(set(self.items))

    def has_zero(self) -> bool:
        return any(c.value == 0 for c in self.items)

    def union(self, other: CharMultiset) -> CharMultiset:
        """Disjoint union (multiplicities add)."""
        if self.k != other.k:
            raise DimensionError("multisets of different rank")
        return CharMultiset(self.items + other.items, self.k)

    def intersection(self, other: CharMultiset) -> CharMultiset:
        """Multiplicity-wise minimum."""
        if self.k != other.k:
            raise DimensionError("multisets of different rank")
        return CharMultiset((Counter(self.items) & Counter(other.items)).elements(), self.k)

    def difference(self, other: CharMultiset) -> CharMultiset:
        """Multiplicity-wise truncated subtraction."""
        if self.k != other.k:
            raise DimensionError("multisets of different rank")
        return CharMultiset((Counter(self.items) - Counter(other.items)).elements(), self.k)

    def repeat(self, times: int) -> CharMultiset:
        return CharMultiset(self.items * times, self.k)

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.items]


# ------------------------------------------------------------- automorphisms


class Automorphism:
    """Invertible k x k matrix over F_2 acting on characters by M @ x.

    Rows are stored as ints in the character encoding (column 1 is the top
    bit).  The matrix acts on the character side, so it is the transpose of
    the corresponding automorphism of the group itself.
    """

    __slots__ = ("k", "rows", "_cols")

    def __init__(self, rows: Sequence):
        parsed = []
        for row in rows:
            if isinstance(row, str):
                row = [int(ch) for ch in row] if set(row) <= {"0", "1"} else None
            if row is None or any(b not in (0, 1) for b in row):
                raise InputError(f"matrix rows must be 0/1 entries, got {rows!r}")
            parsed.append(list(row))
        k = len(parsed)
        if k == 0 or any(len(r) != k for r in parsed):
            raise InputError("matrix must be square and nonempty")
        if k > MAX_K:
            raise InputError(f"rank k={k} exceeds {MAX_K}")
        self.k = k
        self.rows = tuple(int("".join(map(str, r)), 2) for r in parsed)
        if _xor_rank(self.rows) != k:
            raise PreconditionError("matrix is singular over F_2")
        self._cols = tuple(
            sum(((self.rows[i] >> (k - 1 - j)) & 1) << (k - 1 - i) for i in range(k))
            for j in range(k)
        )

    @classmethod
    def identity(cls, k: int) -> Automorphism:
        return cls([[int(i == j) for j in range(k)] for i in range(k)])

    @classmethod
    def swap(cls, k: int, i: int, j: int) -> Automorphism:
        """Exchange r_i and r_j (1-based)."""
        perm = list(range(k))
        perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
        return cls([[int(perm[r] == c) for c in range(k)] for r in range(k)])

    @classmethod
    def from_columns(cls, k: int, cols: Sequence[int]) -> Automorphism:
        """Build from the images of r_1..r_k given as character values."""
        return cls(
            [[(cols[j] >> (k - 1 - i)) & 1 for j in range(k)] for i in range(k)]
        )

    def matrix(self) -> list[list[int]]:
        return [[(r >> (self.k - 1 - j)) & 1 for j in range(self.k)] for r in self.rows]

    def apply_value(self, x: int) -> int:
        out = 0
        for j, col in enumerate(self._cols):
            if x >> (self.k - 1 - j) & 1:
                out ^= col
        return out

    def __call__(self, x: Character) -> Character:
        return apply_auto(self, x)

    def inverse(self) -> Automorphism:
        # the group is finite: invert by Gauss-Jordan on augmented rows
        k = self.k
        rows = [(self.rows[i] << k) | (1 << (k - 1 - i)) for i in range(k)]
        for col in range(k):
            bit = 1 << (2 * k - 1 - col)
            piv = next(r for r in range(col, k) if rows[r] & bit)
            rows[col], rows[piv] = rows[piv], rows[col]
            for r in range(k):
                if r != col and rows[r] & bit:
                    rows[r] ^= rows[col]
        mask = (1 << k) - 1
        return Automorphism([format(r & mask, f"0{k}b") for r in rows])

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        return ",".join(format(r, f"0{self.k}b") for r in self.rows)

    def __repr__(self):
        return f"Automorphism({str(self)!r})"


def apply_auto(M: Automorphism, x: Character) -> Character:
    if M.k != x.k:
        raise DimensionError(f"matrix rank {M.k} vs character rank {x.k}")
    return Character(x.k, M.apply_value(x.value))


def general_linear_group(k: int) -> Iterator[Automorphism]:
    """Every element of GL(k, F_2), built column by column."""

    def extend(cols: list[int], span: set[int]) -> Iterator[list[int]]:
        if len(cols) == k:
            yield cols
            return
        for v in range(1, 1 << k):
            if v not in span:
                yield from extend(cols + [v], span | {s ^ v for s in span})

    for cols in extend([], {0}):
        yield Automorphism.from_columns(k, cols)


# --------------------------------------------------------------- polynomials


def _pack(exps: Sequence[int]) -> int:
    m = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _FIELD:
            raise ResourceError(f"exponent {e} outside supported range")
        m |= e << (_W * i)
    return m


def _unpack(m: int, k: int) -> tuple[int, ...]:
    return tuple((m >> (_W * i)) & _FIELD for i in range(k))


def _mono_degree(m: int, k: int) -> int:
    total = 0
    while m:
        total += m & _FIELD
        m >>= _W
    return total


def _mul_terms(a: frozenset[int] | set[int], b: frozenset[int] | set[int]) -> frozenset[int]:
    if len(a) > len(b):
        a, b = b, a
    out: set[int] = set()
    for x in a:
        for y in b:
            m = x + y
            if m in out:
                out.remove(m)
            else:
                out.add(m)
    if len(out) > TERM_GUARD:
        raise ResourceError(f"polynomial exceeds {TERM_GUARD} terms")
    return frozenset(out)


def _var_unit(i: int) -> int:
    """Packed monomial r_i (1-based)."""
    return 1 << (_W * (i - 1))


def _linear_terms(c: Character) -> frozenset[int]:
    return frozenset(_var_unit(i) for i in c.support())


_MONO_RE = re.compile(r"^r(\d+)(?:\^(\d+))?$")


class F2Polynomial:
    """Polynomial with F_2 coefficients; immutable and hashable."""

    __slots__ = ("k", "terms", "_degree")

    def __init__(self, k: int, terms: Iterable[int] = ()):
        if not 1 <= k <= MAX_K:
            raise InputError(f"rank k={k} outside 1..{MAX_K}")
        self.k = k
        self.terms = terms if isinstance(terms, frozenset) else frozenset(terms)
        self._degree: int | None = None

    # constructors
    @classmethod
    def zero(cls, k: int) -> F2Polynomial:
        return cls(k)

    @classmethod
    def one(cls, k: int) -> F2Polynomial:
        return cls(k, (0,))

    @classmethod
    def variable(cls, k: int, i: int) -> F2Polynomial:
        if not 1 <= i <= k:
            raise InputError(f"variable index {i} outside 1..{k}")
        return cls(k, (_var_unit(i),))

    @classmethod
    def linear(cls, c: Character) -> F2Polynomial:
        """The degree-one form sum of r_i over the support of c."""
        return cls(c.k, _linear_terms(c))

    @classmethod
    def from_exponents(cls, k: int, exponent_vectors: Iterable[Sequence[int]]) -> F2Polynomial:
        """Sum of monomials; repeated vectors cancel in pairs."""
        out: set[int] = set()
        for exps in exponent_vectors:
            if len(exps) != k:
                raise DimensionError(f"exponent vector {tuple(exps)} has length != {k}")
            out ^= {_pack(exps)}
        return cls(k, out)

    @classmethod
    def parse(cls, text: str, k: int) -> F2Polynomial:
        """Read the '+'-joined text form, e.g. ``r1^2*r2+r3+1``."""
        text = text.replace(" ", "")
        if not text:
            raise InputError("empty polynomial text")
        vectors = []
        for term in text.split("+"):
            if term == "0":
                continue
            exps = [0] * k
            if term != "1":
                for factor in term.split("*"):
                    match = _MONO_RE.match(factor)
                    if not match:
                        raise InputError(f"bad monomial factor {factor!r}")
                    i = int(match.group(1))
                    if not 1 <= i <= k:
                        raise InputError(f"variable r{i} outside 1..{k}")
                    exps[i - 1] += int(match.group(2) or 1)
            vectors.append(exps)
        return cls.from_exponents(k, vectors)

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._degree is None:
            self._degree = max((_mono_degree(m, self.k) for m in self.terms), default=-1)
        return self._degree

    def monomials(self) -> list[tuple[int, ...]]:
        """Exponent vectors in graded-lex order, highest first."""
        vecs = [_unpack(m, self.k) for m in self.terms]
        vecs.sort(key=lambda v: (sum(v), v), reverse=True)
        return vecs

    def is_homogeneous(self) -> bool:
        return len({_mono_degree(m, self.k) for m in self.terms}) <= 1

    # arithmetic
    def _check(self, other: F2Polynomial):
        if not isinstance(other, F2Polynomial):
            return NotImplemented
        if other.k != self.k:
            raise DimensionError(f"polynomials of rank {self.k} and {other.k}")
        return None

    def __add__(self, other: F2Polynomial) -> F2Polynomial:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return F2Polynomial(self.k, self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: F2Polynomial) -> F2Polynomial:
        if self._check(other) is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return F2Polynomial(self.k)
        if self.degree + other.degree > DEGREE_GUARD:
            raise ResourceError(f"product degree exceeds guard {DEGREE_GUARD}")
        return F2Polynomial(self.k, _mul_terms(self.terms, other.terms))

    def square(self) -> F2Polynomial:
        """Frobenius: squaring doubles every exponent vector."""
        if 2 * max(self.degree, 0) > DEGREE_GUARD:
            raise ResourceError(f"square degree exceeds guard {DEGREE_GUARD}")
        return F2Polynomial(self.k, frozenset(2 * m for m in self.terms))

    def __pow__(self, e: int) -> F2Polynomial:
        if e < 0:
            raise InputError("negative exponent")
        if max(self.degree, 0) * e > DEGREE_GUARD:
            raise ResourceError(f"power degree exceeds guard {DEGREE_GUARD}")
        result = F2Polynomial.one(self.k)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.square()
        return result

    def __eq__(self, other):
        return (
            isinstance(other, F2Polynomial)
            and self.k == other.k
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.k, self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for vec in self.monomials():
            factors = [
                f"r{i + 1}" if e == 1 else f"r{i + 1}^{e}"
                for i, e in enumerate(vec)
                if e
            ]
            parts.append("*".join(factors) if factors else "1")
        return "+".join(parts)

    def __repr__(self):
        return f"F2Polynomial({self.k}, {str(self)!r})"


def poly_add(P: F2Polynomial, Q: F2Polynomial) -> F2Polynomial:
    return P + Q


def poly_mul(P: F2Polynomial, Q: F2Polynomial) -> F2Polynomial:
    return P * Q


def poly_pow(P: F2Polynomial, e: int) -> F2Polynomial:
    return P**e


def euler_class(S: CharMultiset) -> F2Polynomial:
    """Product of the characters of S viewed as linear forms."""
    if S.has_zero():
        raise InvalidRepresentationError("multiset contains the zero character")
    if len(S) > DEGREE_GUARD:
        raise ResourceError(f"degree {len(S)} exceeds guard {DEGREE_GUARD}")
    result = F2Polynomial.one(S.k)
    for c, mult in sorted(S.counts().items()):
        result = result * F2Polynomial.linear(c) ** mult
    return result


def _divmod_linear(
    terms: frozenset[int], form: Character, pivot: int
) -> tuple[frozenset[int], frozenset[int]]:
    """Synthetic division by (x + s), x the pivot variable, s the rest of the form."""
    shift = _W * (pivot - 1)
    unit = 1 << shift
    rest = [_var_unit(i) for i in form.support() if i != pivot]
    by_power: dict[int, set[int]] = {}
    for m in terms:
        e = (m >> shift) & _FIELD
        by_power.setdefault(e, set()).add(m - e * unit)
    if not by_power:
        return frozenset(), frozenset()
    top = max(by_power)
    quotient: set[int] = set()
    carry = set(by_power.get(top, ()))
    for j in range(top, 0, -1):
        # carry is the coefficient of x^(j-1) in the quotient
        quotient.update(m + (j - 1) * unit for m in carry)
        shifted: set[int] = set(by_power.get(j - 1, ()))
        for m in carry:
            for r in rest:
                shifted ^= {m + r}
        carry = shifted
    return frozenset(quotient), frozenset(carry)


def divide_by_linear(
    P: F2Polynomial, form: Character, pivot: int | None = None
) -> tuple[F2Polynomial, bool]:
    """Return (quotient, exact).  ``pivot`` overrides the default lowest-index variable."""
    q, r = divmod_linear(P, form, pivot)
    return q, r.is_zero()


def divmod_linear(
    P: F2Polynomial, form: Character, pivot: int | None = None
) -> tuple[F2Polynomial, F2Polynomial]:
    """Quotient and remainder; the remainder is P with the pivot variable eliminated."""
    if form.k != P.k:
        raise DimensionError(f"form rank {form.k} vs polynomial rank {P.k}")
    support = form.support()
    if not support:
        raise InputError("cannot divide by the zero form")
    if pivot is None:
        pivot = support[0]
    elif pivot not in support:
        raise InputError(f"pivot r{pivot} is not in the support of {form}")
    q, r = _divmod_linear(P.terms, form, pivot)
    return F2Polynomial(P.k, q), F2Polynomial(P.k, r)


# ------------------------------------------------------- symmetric functions

_FACTOR_RE = re.compile(r"^(?:e(\d+)|m\[(\d+(?:,\d+)*)\]|1)$")


@dataclass(frozen=True)
class SymFnExpr:
    """Formal sum of products of e_j and m[partition] generators.

    Each factor is ``("e", (j,))`` or ``("m", parts)`` with parts sorted
    descending; an empty product is the constant 1.
    """

    terms: tuple[tuple[tuple[str, tuple[int, ...]], ...], ...]

    @classmethod
    def parse(cls, text: str) -> SymFnExpr:
        text = text.replace(" ", "")
        if not text:
            raise InputError("empty symmetric-function expression")
        terms = []
        # commas only occur inside brackets, so splitting on '+' and '*' is safe
        for raw_term in text.split("+"):
            if not raw_term:
                raise InputError(f"empty term in {text!r}")
            factors = []
            for raw in raw_term.split("*"):
                match = _FACTOR_RE.match(raw)
                if not match:
                    raise InputError(f"bad factor {raw!r} in {text!r}")
                if match.group(1) is not None:
                    j = int(match.group(1))
                    if j < 1:
                        raise InputError("elementary index must be >= 1")
                    factors.append(("e", (j,)))
                elif match.group(2) is not None:
                    parts = tuple(sorted((int(p) for p in match.group(2).split(",")), reverse=True))
                    if min(parts) < 1:
                        raise InputError("partition parts must be >= 1")
                    factors.append(("m", parts))
            terms.append(tuple(factors))
        return cls(tuple(terms))

    @classmethod
    def one(cls) -> SymFnExpr:
        return cls(((),))

    @classmethod
    def elementary(cls, j: int) -> SymFnExpr:
        return cls.parse(f"e{j}")

    @classmethod
    def monomial(cls, parts: Sequence[int]) -> SymFnExpr:
        return cls.parse("m[" + ",".join(map(str, parts)) + "]")

    def __mul__(self, other: SymFnExpr) -> SymFnExpr:
        return SymFnExpr(tuple(a + b for a in self.terms for b in other.terms))

    def __add__(self, other: SymFnExpr) -> SymFnExpr:
        return SymFnExpr(self.terms + other.terms)

    @property
    def degree(self) -> int:
        return max(sum(sum(args) for _, args in term) for term in self.terms)

    def __str__(self):
        def fmt(factor):
            kind, args = factor
            return f"e{args[0]}" if kind == "e" else "m[" + ",".join(map(str, args)) + "]"

        return "+".join("*".join(fmt(f) for f in term) if term else "1" for term in self.terms)


def _elementary_all(forms: list[frozenset[int]], top: int) -> list[frozenset[int]]:
    e: list[frozenset[int]] = [frozenset((0,))] + [frozenset()] * top
    for count, x in enumerate(forms, start=1):
        for i in range(min(top, count), 0, -1):
            if e[i - 1]:
                e[i] = e[i] ^ _mul_terms(x, e[i - 1])
    return e


def _monomial_symmetric(forms: list[frozenset[int]], parts: tuple[int, ...]) -> frozenset[int]:
    # each variable takes one remaining part value or nothing; state = remaining counts
    counts = Counter(parts)
    values = sorted(counts)
    powers = []
    for x in forms:
        by_value = {}
        acc = frozenset((0,))
        for v in range(1, values[-1] + 1):
            acc = _mul_terms(acc, x)
            if v in counts:
                by_value[v] = acc
        powers.append(by_value)
    states: dict[tuple[int, ...], frozenset[int]] = {
        tuple(counts[v] for v in values): frozenset((0,))
    }
    remaining_vars = len(forms)
    for by_value in powers:
        remaining_vars -= 1
        nxt: dict[tuple[int, ...], frozenset[int]] = {}
        for state, poly in states.items():
            if sum(state) <= remaining_vars:
                nxt[state] = nxt.get(state, frozenset()) ^ poly
            for idx, v in enumerate(values):
                if state[idx] and sum(state) - 1 <= remaining_vars:
                    ns = state[:idx] + (state[idx] - 1,) + state[idx + 1 :]
                    nxt[ns] = nxt.get(ns, frozenset()) ^ _mul_terms(poly, by_value[v])
        states = nxt
    return states.get(tuple(0 for _ in values), frozenset())


def eval_sym(f: SymFnExpr, S: CharMultiset) -> F2Polynomial:
    """Evaluate f at the linear forms of S."""
    n = len(S)
    if S.has_zero():
        raise InvalidRepresentationError("multiset contains the zero character")
    for term in f.terms:
        for kind, args in term:
            if kind == "e" and args[0] > n:
                raise InputError(f"e{args[0]} needs at least {args[0]} variables, got {n}")
            if kind == "m" and len(args) > n:
                raise InputError(f"m{list(args)} needs at least {len(args)} variables, got {n}")
    if f.degree > DEGREE_GUARD:
        raise ResourceError(f"degree {f.degree} exceeds guard {DEGREE_GUARD}")
    forms = [_linear_terms(c) for c in S]
    top_e = max((args[0] for term in f.terms for kind, args in term if kind == "e"), default=0)
    elementary = _elementary_all(forms, top_e) if top_e else []
    cache: dict[tuple[int, ...], frozenset[int]] = {}
    total: frozenset[int] = frozenset()
    for term in f.terms:
        value = frozenset((0,))
        for kind, args in term:
            if kind == "e":
                factor = elementary[args[0]]
            else:
                if args not in cache:
                    cache[args] = _monomial_symmetric(forms, args)
                factor = cache[args]
            value = _mul_terms(value, factor)
            if not value:
                break
        total = total ^ value
    return F2Polynomial(S.k, total)

"""Generators, recognizers and counting results for actions with few fixed points.

Three fixed points: a basis b_1..b_{k-1}, g of F_2^k gives
    B = odd sums of the b's, G = {g + b_1 + b : b in B}, D = {g + b : b in B},
each repeated 2^(ell-k+1) times, and vertex data p = B+G, q = B+D, r = D+G.

Four fixed points: a basis b_1..b_{k-2}, g, d gives B (odd sums) and
    G = g+b_1+B, D = d+b_1+B, E = g+B, H = d+B, L = g+d+b_1+B,
each repeated 2^(ell-k+3) times, plus a shared part W on the points g+d+B
with multiplicities v.  Vertex data p = BGDW, q = BHEW, r = GELW, s = DHLW.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple, Sequence

from .cobordism import sigma_map
from .errors import InputError, PreconditionError, ResourceError
from .f2algebra import (
    DEGREE_GUARD,
    Character,
    CharMultiset,
    F2Polynomial,
    general_linear_group,
    odd_sums,
    span_dim,
)
from .skeleton import FixedData

# exhaustive GL(k) orbit search is the default only up to this rank
ORBIT_BRUTE_FORCE_MAX_K = 4


def _is_power_of_two(x: int) -> bool:
    return x >= 1 and not x & (x - 1)


def _log2(x: int) -> int:
    return x.bit_length() - 1


def _as_characters(basis: Sequence, k: int) -> tuple[Character, ...]:
    chars = tuple(Character.parse(b) if isinstance(b, str) else b for b in basis)
    if len(chars) != k or any(c.k != k for c in chars):
        raise InputError(f"basis must contain {k} characters of length {k}")
    if span_dim(chars) != k:
        raise InputError("basis vectors are linearly dependent")
    return chars


def _standard_basis(k: int) -> tuple[Character, ...]:
    return tuple(Character.basis(k, i) for i in range(1, k + 1))


# ---------------------------------------------------------------- bounds


def lower_bound(n: int, k: int) -> int:
    """Least possible number of fixed points for a nonbounding action."""
    if k < 2:
        raise InputError("rank k must be >= 2")
    if n < k:
        raise InputError(f"dimension n={n} is below rank k={k}")
    return 1 + -(-n // (n - k + 1))


def exists_three(n: int, k: int) -> bool:
    return k >= 2 and _is_power_of_two(n) and _log2(n) >= k - 1


def exists_four(n: int, k: int) -> bool:
    if k < 3 or n < 1:
        return False
    ell = max(0, k - 3)
    while 3 * 2**ell <= n:
        if n <= 5 * 2**ell:
            return True
        ell += 1
    return False


# --------------------------------------------------------- three fixed points


@dataclass(frozen=True)
class ThreePointStructure:
    k: int
    ell: int
    basis: tuple[Character, ...]

    def __post_init__(self):
        if self.k < 2:
            raise InputError("three fixed points need k >= 2")
        if self.ell < self.k - 1:
            raise InputError(f"ell={self.ell} must be >= k-1={self.k - 1}")
        object.__setattr__(self, "basis", _as_characters(self.basis, self.k))

    @classmethod
    def standard(cls, k: int, ell: int) -> ThreePointStructure:
        return cls(k, ell, _standard_basis(k))

    @property
    def n(self) -> int:
        return 2**self.ell

    @property
    def multiplicity_exponent(self) -> int:
        return self.ell - self.k + 1

    def to_json(self) -> dict:
        return {"kind": "three", "k": self.k, "ell": self.ell, "basis": [str(b) for b in self.basis]}


def generate_three(s: ThreePointStructure) -> FixedData:
    m = 2**s.multiplicity_exponent
    *betas, gamma = s.basis
    odd = sorted(odd_sums(betas))
    b1 = betas[0]
    part_b = odd * m
    part_g = [gamma + b1 + b for b in odd] * m
    part_d = [gamma + b for b in odd] * m
    k = s.k
    return FixedData(
        k,
        s.n,
        [
            ("p", CharMultiset(part_b + part_g, k)),
            ("q", CharMultiset(part_b + part_d, k)),
            ("r", CharMultiset(part_d + part_g, k)),
        ],
    )


def _greedy_independent(chars: Sequence[Character], count: int) -> list[Character] | None:
    chosen: list[Character] = []
    for c in sorted(chars):
        if span_dim(chosen + [c]) == len(chosen) + 1:
            chosen.append(c)
            if len(chosen) == count:
                return chosen
    return None


def _uniform_multiplicity(S: CharMultiset) -> int | None:
    mults = set(S.counts().values())
    if len(mults) != 1:
        return None
    m = mults.pop()
    return m if _is_power_of_two(m) else None


def recognize_three(D: FixedData) -> ThreePointStructure | None:
    """Extract canonical parameters; vertices are read in order as p, q, r."""
    if len(D) != 3 or D.k < 2:
        return None
    p, q, r = D.multisets
    shared = p.intersection(q)
    part_g = p.difference(shared)
    part_d = q.difference(shared)
    if r != part_g.union(part_d) or not len(shared):
        return None
    m = _uniform_multiplicity(shared)
    if m is None:
        return None
    betas = _greedy_independent(shared.support(), D.k - 1)
    if betas is None:
        return None
    ell = _log2(m) + D.k - 1
    for gamma in part_g.support():
        try:
            s = ThreePointStructure(D.k, ell, tuple(betas) + (gamma,))
        except InputError:
            continue
        if generate_three(s).multisets == D.multisets:
            return s
    return None


# ---------------------------------------------------------- four fixed points


@dataclass(frozen=True)
class FourPointStructure:
    k: int
    ell: int
    basis: tuple[Character, ...]
    v: tuple[int, ...] = ()

    def __post_init__(self):
        if self.k < 3:
            raise InputError("four fixed points need k >= 3")
        if self.ell < self.k - 3:
            raise InputError(f"ell={self.ell} must be >= k-3={self.k - 3}")
        object.__setattr__(self, "basis", _as_characters(self.basis, self.k))
        v = tuple(self.v) if self.v else (0,) * 2 ** (self.k - 3)
        if len(v) != 2 ** (self.k - 3):
            raise InputError(f"v must have length {2 ** (self.k - 3)}")
        cap = 2 ** (self.ell - self.k + 4)
        if any(x < 0 or x > cap for x in v):
            raise InputError(f"entries of v must lie in 0..{cap}")
        object.__setattr__(self, "v", v)

    @classmethod
    def standard(cls, k: int, ell: int, v: Sequence[int] = ()) -> FourPointStructure:
        return cls(k, ell, _standard_basis(k), tuple(v))

    @property
    def t(self) -> int:
        return sum(self.v)

    @property
    def n(self) -> int:
        return 3 * 2**self.ell + self.t

    @property
    def multiplicity_exponent(self) -> int:
        return self.ell - self.k + 3

    def shared_support(self) -> list[Character]:
        """Points carrying the shared part, in the order indexed by v."""
        *betas, gamma, delta = self.basis
        return sorted(gamma + delta + b for b in odd_sums(betas))

    def to_json(self) -> dict:
        return {
            "kind": "four",
            "k": self.k,
            "ell": self.ell,
            "basis": [str(b) for b in self.basis],
            "v": list(self.v),
        }


def generate_four(s: FourPointStructure) -> FixedData:
    m = 2**s.multiplicity_exponent
    *betas, gamma, delta = s.basis
    odd = sorted(odd_sums(betas))
    b1 = betas[0]
    part_b = odd * m
    part_g = [gamma + b1 + b for b in odd] * m
    part_d = [delta + b1 + b for b in odd] * m
    part_e = [gamma + b for b in odd] * m
    part_h = [delta + b for b in odd] * m
    part_l = [gamma + delta + b1 + b for b in odd] * m
    shared = [w for w, mult in zip(s.shared_support(), s.v) for _ in range(mult)]
    k = s.k
    return FixedData(
        k,
        s.n,
        [
            ("p", CharMultiset(part_b + part_g + part_d + shared, k)),
            ("q", CharMultiset(part_b + part_h + part_e + shared, k)),
            ("r", CharMultiset(part_g + part_e + part_l + shared, k)),
            ("s", CharMultiset(part_d + part_h + part_l + shared, k)),
        ],
    )


def recognize_four(D: FixedData) -> FourPointStructure | None:
    """Extract canonical parameters; vertices are read in order as p, q, r, s."""
    if len(D) != 4 or D.k < 3:
        return None
    p, q, r, s = D.multisets
    shared = p.intersection(q).intersection(r).intersection(s)
    pq = p.intersection(q).difference(shared)
    pr = p.intersection(r).difference(shared)
    ps = p.intersection(s).difference(shared)
    qr = q.intersection(r).difference(shared)
    qs = q.intersection(s).difference(shared)
    rs = r.intersection(s).difference(shared)
    if (
        p != pq.union(pr).union(ps).union(shared)
        or q != pq.union(qr).union(qs).union(shared)
        or r != pr.union(qr).union(rs).union(shared)
        or s != ps.union(qs).union(rs).union(shared)
        or not len(pq)
    ):
        return None
    m = _uniform_multiplicity(pq)
    if m is None:
        return None
    betas = _greedy_independent(pq.support(), D.k - 2)
    if betas is None:
        return None
    ell = _log2(m) + D.k - 3
    shared_counts = shared.counts()
    for gamma in pr.support():
        for delta in ps.support():
            try:
                probe = FourPointStructure(D.k, ell, tuple(betas) + (gamma, delta))
                points = probe.shared_support()
                if set(shared_counts) - set(points):
                    continue
                v = tuple(shared_counts.get(w, 0) for w in points)
                candidate = FourPointStructure(D.k, ell, probe.basis, v)
            except InputError:
                continue
            if generate_four(candidate).multisets == D.multisets:
                return candidate
    return None


def lattice_I(k: int, ell: int, t: int) -> list[tuple[int, ...]]:
    """Vectors of length 2^(k-3), entries in 0..2^(ell-k+4), summing to t, ascending."""
    if k < 3 or ell < k - 3 or t < 0:
        raise InputError("need k >= 3, ell >= k-3, t >= 0")
    length = 2 ** (k - 3)
    cap = 2 ** (ell - k + 4)
    if t > length * cap:
        return []
    out: list[tuple[int, ...]] = []

    def fill(prefix: list[int], left: int):
        slots = length - len(prefix)
        if slots == 0:
            if left == 0:
                out.append(tuple(prefix))
            return
        for x in range(max(0, left - (slots - 1) * cap), min(cap, left) + 1):
            fill(prefix + [x], left - x)

    fill([], t)
    return out


# -------------------------------------------------------------- orbit classes


def _canonical(D: FixedData) -> FixedData:
    labels = "pqrstuvw"
    return FixedData(D.k, D.n, list(zip(labels, D.family())))


def _subspaces(k: int, dim: int) -> Iterator[list[int]]:
    """Bases (reduced row echelon form) of every dim-dimensional subspace of F_2^k."""
    for pivots in combinations(range(k), dim):
        # free positions of row i: non-pivot columns to the right of its pivot
        free = [[c for c in range(p + 1, k) if c not in pivots] for p in pivots]
        slots = [(i, c) for i, cols in enumerate(free) for c in cols]
        for mask in range(1 << len(slots)):
            rows = [1 << (k - 1 - p) for p in pivots]
            for bit, (i, c) in enumerate(slots):
                if mask >> bit & 1:
                    rows[i] |= 1 << (k - 1 - c)
            yield rows


def _three_from_even_subspace(k: int, ell: int, rows: list[int]) -> FixedData:
    span = {0}
    for row in rows:
        span |= {x ^ row for x in span}
    a = next(x for x in range(1, 1 << k) if x not in span)
    b = next(x for x in range(1, 1 << k) if x not in span and x ^ a not in span)
    cosets = [sorted(x ^ shift for x in span) for shift in (a, b, a ^ b)]
    m = 2 ** (ell - k + 1)
    parts = [[Character(k, x) for x in coset] * m for coset in cosets]
    D = FixedData(
        k,
        2**ell,
        [
            ("p", CharMultiset(parts[0] + parts[1], k)),
            ("q", CharMultiset(parts[0] + parts[2], k)),
            ("r", CharMultiset(parts[1] + parts[2], k)),
        ],
    )
    return _canonical(D)


def enumerate_three_classes(k: int, ell: int, brute_force: bool | None = None) -> list[FixedData]:
    """Distinct three-point data in the GL(k, F_2) orbit of the standard one.

    Brute force applies every automorphism.  Otherwise each datum is built
    directly from its even-sum subspace (the span of pairwise sums inside
    p and q), since the data correspond one-to-one with subspaces of
    dimension k-2.  Each class is returned with its multisets sorted.
    """
    if not exists_three(2**ell, k):
        raise PreconditionError(f"no three-point data for n=2^{ell}, k={k}")
    if brute_force is None:
        brute_force = k <= ORBIT_BRUTE_FORCE_MAX_K
    classes: dict[tuple, FixedData] = {}
    if brute_force:
        base = generate_three(ThreePointStructure.standard(k, ell))
        raw = [S.key() for S in base.multisets]
        seen = set()
        for M in general_linear_group(k):
            family = tuple(sorted(tuple(sorted(M.apply_value(x) for x in S)) for S in raw))
            if family not in seen:
                seen.add(family)
                image = _canonical(sigma_map(base, M))
                classes[image.family()] = image
    else:
        for rows in _subspaces(k, k - 2):
            D = _three_from_even_subspace(k, ell, rows)
            classes.setdefault(D.family(), D)
    return [classes[key] for key in sorted(classes)]


# ------------------------------------------------------------------ counting


def conner_floyd_count(m: int) -> int:
    """Number of monomials in (r1 r2 + r2 r3 + r3 r1)^m over F_2."""
    if m < 1:
        raise InputError("m must be >= 1")
    if 2 * m > DEGREE_GUARD:
        raise ResourceError(f"degree {2 * m} exceeds guard {DEGREE_GUARD}")
    base = F2Polynomial.parse("r1*r2+r2*r3+r1*r3", 3)
    return len(base**m)


class MinFixedPoints(NamedTuple):
    """``status`` is "exact", "empty" (no nonbounding action) or "unknown"."""

    value: int | None
    status: str
    bound: int


def min_fixed_points(n: int, k: int) -> MinFixedPoints:
    bound = lower_bound(n, k)
    if exists_three(n, k):
        return MinFixedPoints(3, "exact", bound)
    if exists_four(n, k):
        return MinFixedPoints(4, "exact", bound)
    if k >= 4 and _is_power_of_two(n) and n >= 2 ** (k - 2):
        return MinFixedPoints(5, "exact", bound)
    if n == k:
        return MinFixedPoints(n + 1, "exact", bound)
    if k == 2:
        if n % 2:
            return MinFixedPoints(None, "empty", bound)
        return MinFixedPoints(3 ** bin(n).count("1"), "exact", bound)
    return MinFixedPoints(None, "unknown", bound)

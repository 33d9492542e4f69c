"""Fixed data, colored regular multigraphs, their validation and enumeration."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InputError, PreconditionError, ResourceError
from .f2algebra import (
    Automorphism,
    Character,
    CharMultiset,
    general_linear_group,
    span_dim,
)

STATE_GUARD = 10**6
# dedupe searches GL(k, F_2) exhaustively only up to this rank
DEDUPE_GL_MAX_K = 4


@dataclass
class Report:
    """Outcome of a check: ``ok`` plus human-readable problems."""

    ok: bool
    problems: list[str] = field(default_factory=list)
    offenders: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


class FixedData:
    """Rank k, dimension n, and an ordered list of labeled vertex multisets."""

    __slots__ = ("k", "n", "vertices", "_index")

    def __init__(self, k: int, n: int, vertices: Iterable[tuple[str, CharMultiset]]):
        self.k = k
        self.n = n
        self.vertices = tuple((str(label), S) for label, S in vertices)
        self._index = {}
        for i, (label, S) in enumerate(self.vertices):
            if label in self._index:
                raise InputError(f"duplicate vertex label {label!r}")
            if S.k != k:
                raise InputError(f"vertex {label!r} has rank {S.k}, expected {k}")
            if len(S) != n:
                raise InputError(f"vertex {label!r} has {len(S)} characters, expected {n}")
            self._index[label] = i

    @classmethod
    def from_strings(cls, k: int, n: int, vertices: dict[str, Sequence[str]]) -> FixedData:
        return cls(k, n, [(lab, CharMultiset.parse(chars, k)) for lab, chars in vertices.items()])

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.vertices]

    @property
    def multisets(self) -> list[CharMultiset]:
        return [S for _, S in self.vertices]

    def __len__(self):
        return len(self.vertices)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown vertex label {label!r}") from None

    def multiset(self, label: str) -> CharMultiset:
        return self.vertices[self.index(label)][1]

    def family(self) -> tuple[CharMultiset, ...]:
        """Vertex multisets sorted canonically, labels dropped."""
        return tuple(sorted(self.multisets))

    def same_family(self, other: FixedData) -> bool:
        return (self.k, self.n, self.family()) == (other.k, other.n, other.family())

    def colors(self) -> list[Character]:
        return sorted({c for S in self.multisets for c in S})

    def __eq__(self, other):
        return (
            isinstance(other, FixedData)
            and (self.k, self.n, self.vertices) == (other.k, other.n, other.vertices)
        )

    def __hash__(self):
        return hash((self.k, self.n, self.vertices))

    def __repr__(self):
        body = ", ".join(f"{label}:{S!r}" for label, S in self.vertices)
        return f"FixedData(k={self.k}, n={self.n}, [{body}])"


class Edge(NamedTuple):
    u: str
    v: str
    color: Character


class ColoredSkeleton:
    """Multigraph on the vertices of a FixedData with a character per edge.

    Edges are stored with endpoints in vertex order and sorted, so equal
    edge multisets compare equal.
    """

    __slots__ = ("fixed_data", "edges")

    def __init__(self, fixed_data: FixedData, edges: Iterable[tuple[str, str, Character]]):
        self.fixed_data = fixed_data
        normalized = []
        for u, v, color in edges:
            iu, iv = fixed_data.index(u), fixed_data.index(v)
            if color.k != fixed_data.k:
                raise InputError(f"edge color {color} has rank {color.k}, expected {fixed_data.k}")
            if iu > iv:
                u, v = v, u
            normalized.append(Edge(u, v, color))
        normalized.sort(key=lambda e: (fixed_data.index(e.u), fixed_data.index(e.v), e.color))
        self.edges = tuple(normalized)

    def key(self) -> tuple[tuple[int, int, int], ...]:
        index = self.fixed_data.index
        return tuple((index(e.u), index(e.v), e.color.value) for e in self.edges)

    def __eq__(self, other):
        return (
            isinstance(other, ColoredSkeleton)
            and self.fixed_data == other.fixed_data
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.fixed_data, self.edges))

    def __repr__(self):
        body = ", ".join(f"{e.u}-{e.v}:{e.color}" for e in self.edges)
        return f"ColoredSkeleton([{body}])"

    def pair_multiplicities(self) -> Counter:
        return Counter((e.u, e.v) for e in self.edges if e.u != e.v)

    def colors_at(self, label: str) -> CharMultiset:
        """Colors of the edges incident to a vertex (loops counted twice)."""
        chars = []
        for e in self.edges:
            chars += [e.color] * ((e.u == label) + (e.v == label))
        return CharMultiset(chars, self.fixed_data.k)

    def is_connected(self) -> bool:
        return _connected(len(self.fixed_data), self.key())

    def to_dot(self, name: str = "skeleton") -> str:
        lines = [f"graph {name} {{"]
        for label, S in self.fixed_data.vertices:
            tag = " ".join(S.to_strings())
            lines.append(f'  "{label}" [label="{label}\\n{tag}"];')
        for e in self.edges:
            lines.append(f'  "{e.u}" -- "{e.v}" [label="{e.color}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _connected(size: int, edges: Iterable[tuple[int, int, int]]) -> bool:
    if size <= 1:
        return True
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in edges:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(size)}) == 1


# ---------------------------------------------------------------- validation


def validate_fixed_data(D: FixedData) -> Report:
    """Every vertex multiset must avoid zero and span F_2^k."""
    report = Report(True)
    for label, S in D.vertices:
        if S.has_zero():
            report.problems.append(f"vertex {label}: contains the zero character")
            report.offenders.append(label)
        elif span_dim(S.support()) != D.k:
            report.problems.append(
                f"vertex {label}: characters span dimension {span_dim(S.support())} < {D.k}"
            )
            report.offenders.append(label)
    report.ok = not report.problems
    return report


def _p2_counts(a: dict[Character, int], b: dict[Character, int], c: Character) -> bool:
    for tau in set(a) | set(b):
        shifted = Character(c.k, tau.value ^ c.value)
        if a.get(tau, 0) + a.get(shifted, 0) != b.get(tau, 0) + b.get(shifted, 0):
            return False
    return True


def check_p2(D: FixedData, p: str, q: str, c: Character) -> bool:
    """Do the multisets at p and q agree modulo the color c?"""
    return _p2_counts(D.multiset(p).counts(), D.multiset(q).counts(), c)


def validate_skeleton(G: ColoredSkeleton) -> Report:
    D = G.fixed_data
    report = Report(True)
    for e in G.edges:
        if e.u == e.v:
            report.problems.append(f"loop at {e.u}")
            report.offenders.append(e)
        if e.color.is_zero():
            report.problems.append(f"edge {e.u}-{e.v} has the zero color")
            report.offenders.append(e)
    for label, S in D.vertices:
        seen = G.colors_at(label)
        if len(seen) != D.n:
            report.problems.append(f"vertex {label}: degree {len(seen)} != n={D.n}")
            report.offenders.append(label)
        elif seen != S:
            report.problems.append(
                f"vertex {label}: incident colors {seen!r} differ from vertex data {S!r}"
            )
            report.offenders.append(label)
    if not G.is_connected():
        report.problems.append("graph is disconnected")
    p1 = validate_fixed_data(D)
    report.problems += p1.problems
    report.offenders += p1.offenders
    for e in G.edges:
        if e.u != e.v and not check_p2(D, e.u, e.v, e.color):
            report.problems.append(f"edge {e.u}-{e.v} color {e.color}: endpoint data differ mod color")
            report.offenders.append(e)
    # each color class must be regular on each of its components
    for color in sorted({e.color for e in G.edges}):
        sub = [(D.index(e.u), D.index(e.v)) for e in G.edges if e.color == color]
        degree = Counter()
        for u, v in sub:
            degree[u] += 1
            degree[v] += 1
        for component in _components(len(D), sub):
            if len({degree[x] for x in component}) > 1:
                labels = [D.labels[x] for x in sorted(component)]
                report.problems.append(f"color {color}: non-constant degree on component {labels}")
    report.ok = not report.problems
    return report


def _components(size: int, pairs: list[tuple[int, int]]) -> list[set[int]]:
    adjacency: dict[int, set[int]] = {}
    for u, v in pairs:
        adjacency.setdefault(u, set()).add(v)
        adjacency.setdefault(v, set()).add(u)
    seen: set[int] = set()
    out = []
    for start in adjacency:
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adjacency[x] - comp)
        seen |= comp
        out.append(comp)
    return out


def edge_bound_check(G: ColoredSkeleton) -> Report:
    """Parallel edges between vertices with different data are at most n-k+1."""
    D = G.fixed_data
    bound = D.n - D.k + 1
    report = Report(True)
    for (u, v), mult in sorted(G.pair_multiplicities().items()):
        if D.multiset(u) != D.multiset(v) and mult > bound:
            report.problems.append(f"{u}-{v}: {mult} parallel edges > {bound}")
            report.offenders.append((u, v))
    report.ok = not report.problems
    return report


# ----------------------------------------------------------------- enumeration


class SkeletonList(list):
    """List of skeletons plus enumeration statistics."""

    def __init__(self, items=(), discarded_disconnected: int = 0, labeled_count: int = 0):
        super().__init__(items)
        self.discarded_disconnected = discarded_disconnected
        self.labeled_count = labeled_count


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise ResourceError(f"more than {self.limit} partial states during enumeration")


def _degree_realizations(
    degrees: list[int], allowed: set[tuple[int, int]], budget: _Budget
) -> list[tuple[tuple[int, int], ...]]:
    """Loopless multigraphs on allowed pairs with the given degree sequence."""
    out = []
    size = len(degrees)

    def place(residual: list[int], chosen: list[tuple[int, int]]):
        budget.tick()
        first = next((i for i in range(size) if residual[i]), None)
        if first is None:
            out.append(tuple(sorted(chosen)))
            return
        partners = [j for j in range(first + 1, size) if residual[j] and (first, j) in allowed]
        distribute(first, partners, 0, residual[first], residual, chosen)

    def distribute(i, partners, pos, left, residual, chosen):
        if left == 0:
            place(residual, chosen)
            return
        if pos == len(partners):
            return
        if sum(residual[j] for j in partners[pos:]) < left:
            return
        j = partners[pos]
        for amount in range(min(left, residual[j]), -1, -1):
            budget.tick()
            residual[i] -= amount
            residual[j] -= amount
            distribute(i, partners, pos + 1, left - amount, residual, chosen + [(i, j)] * amount)
            residual[i] += amount
            residual[j] += amount

    place(list(degrees), [])
    return sorted(set(out))


def enumerate_skeletons(D: FixedData, dedupe: bool = False) -> SkeletonList:
    """All connected colored skeletons realizing D, in deterministic order.

    With ``dedupe`` the list keeps one representative per orbit of the
    symmetries of D: vertex permutations paired with automorphisms of F_2^k
    that carry each vertex multiset to the multiset of its image.
    """
    if not validate_fixed_data(D).ok:
        raise PreconditionError("fixed data fails validation")
    budget = _Budget(STATE_GUARD)
    size = len(D)
    counts = [S.counts() for S in D.multisets]
    per_color = []
    for color in D.colors():
        degrees = [c.get(color, 0) for c in counts]
        allowed = {
            (i, j)
            for i in range(size)
            for j in range(i + 1, size)
            if degrees[i] and degrees[j] and _p2_counts(counts[i], counts[j], color)
        }
        options = _degree_realizations(degrees, allowed, budget)
        if not options:
            return SkeletonList()
        per_color.append((color, options))
    total = math.prod(len(opts) for _, opts in per_color)
    if total > STATE_GUARD:
        raise ResourceError(f"{total} cross-color combinations exceed guard {STATE_GUARD}")

    labels = D.labels
    kept, discarded = [], 0
    for combo in product(*(opts for _, opts in per_color)):
        key = [
            (u, v, color.value)
            for (color, _), pairs in zip(per_color, combo)
            for u, v in pairs
        ]
        if not _connected(size, key):
            discarded += 1
            continue
        kept.append(
            ColoredSkeleton(
                D,
                [
                    (labels[u], labels[v], color)
                    for (color, _), pairs in zip(per_color, combo)
                    for u, v in pairs
                ],
            )
        )
    labeled = len(kept)
    if dedupe:
        kept = _dedupe(D, kept)
    return SkeletonList(kept, discarded_disconnected=discarded, labeled_count=labeled)


def symmetries(D: FixedData) -> Iterator[tuple[tuple[int, ...], Automorphism]]:
    """Pairs (vertex permutation, automorphism) preserving D.

    The automorphism search is exhaustive for k <= DEDUPE_GL_MAX_K and
    restricted to the identity above that.
    """
    if D.k <= DEDUPE_GL_MAX_K:
        group: Iterable[Automorphism] = general_linear_group(D.k)
    else:
        group = [Automorphism.identity(D.k)]
    multisets = D.multisets
    positions: dict[CharMultiset, list[int]] = {}
    for i, S in enumerate(multisets):
        positions.setdefault(S, []).append(i)
    for theta in group:
        images = [CharMultiset((theta(c) for c in S), D.k) for S in multisets]
        if Counter(images) != Counter(multisets):
            continue
        # vertices with equal images may be matched to equal targets in any order
        choices = []
        for i, image in enumerate(images):
            choices.append(positions[image])
        for perm in _matchings(choices):
            yield perm, theta


def _matchings(choices: list[list[int]]) -> Iterator[tuple[int, ...]]:
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, targets in enumerate(choices):
        groups.setdefault(tuple(targets), []).append(i)
    grouped = [(sources, list(targets)) for targets, sources in groups.items()]
    for arrangement in product(*(permutations(t) for _, t in grouped)):
        perm = [0] * len(choices)
        for (sources, _), targets in zip(grouped, arrangement):
            for s, t in zip(sources, targets):
                perm[s] = t
        yield tuple(perm)


def _dedupe(D: FixedData, skeletons: list[ColoredSkeleton]) -> list[ColoredSkeleton]:
    syms = list(symmetries(D))
    seen: set[tuple] = set()
    out = []
    for G in skeletons:
        key = G.key()
        orbit_key = min(
            tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v]), theta.apply_value(c)) for u, v, c in key))
            for perm, theta in syms
        )
        if orbit_key not in seen:
            seen.add(orbit_key)
            out.append(G)
    return out


# ------------------------------------------------------------------- builtins


def builtin_rpn(n: int) -> tuple[FixedData, ColoredSkeleton]:
    """Linear action on real projective n-space: n+1 fixed points on K_{n+1}."""
    if n < 2:
        raise InputError("real projective space example needs n >= 2")
    rho = [Character.basis(n, i) for i in range(1, n + 1)]
    vertices = [("p0", CharMultiset(rho, n))]
    for i in range(n):
        chars = [rho[i]] + [rho[i] + rho[j] for j in range(n) if j != i]
        vertices.append((f"p{i + 1}", CharMultiset(chars, n)))
    D = FixedData(n, n, vertices)
    edges = [("p0", f"p{i + 1}", rho[i]) for i in range(n)]
    edges += [
        (f"p{i + 1}", f"p{j + 1}", rho[i] + rho[j]) for i in range(n) for j in range(i + 1, n)
    ]
    return D, ColoredSkeleton(D, edges)

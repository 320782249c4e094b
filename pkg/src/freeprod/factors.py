"""Factor groups: the two building blocks of a free product.

Four kinds are supported, each with a fixed plain-data element encoding:

- ``finite_table``:   element id (int), an index into an explicit n x n
                      multiplication table; id 0 is the identity.
- ``finite_cyclic``:  exponent (int) reduced mod n; 0 is the identity.
- ``infinite_cyclic``: exponent (int); 0 is the identity.
- ``free``:           freely reduced word, a tuple of nonzero signed
                      generator indices (1-based); () is the identity.

Every group declares a generating set E; word lengths are measured over the
symmetrized set E u E^-1.  For the finite kinds lengths come from a
breadth-first search of the Cayley graph, run once and memoized.  Elements
stay plain ints/tuples (no wrapper objects): normal forms hold many letters
and the growth enumerator hashes them constantly.
"""

from __future__ import annotations

import math
import random
import re
from abc import ABC, abstractmethod
from typing import Union

FactorElement = Union[int, tuple]

_NAME_OK = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class FactorGroupError(ValueError):
    """Invalid group data (bad table, bad generators) or a bad element."""


def _check_name(name: str) -> str:
    if not isinstance(name, str) or not _NAME_OK.match(name):
        raise FactorGroupError(f"invalid generator name {name!r}")
    return name


class FactorGroup(ABC):
    """One factor of a free product.

    Subclasses fix the element encoding and provide the group operations
    plus the metric/conjugacy layer used by the free-product calculus:
    ``word_length`` (over E u E^-1), ``are_conjugate``,
    ``conjugacy_representative`` (a canonical member of the conjugacy
    class) and ``element_key`` (a total order on elements, used to pick
    canonical rotations deterministically).
    """

    kind: str = "abstract"

    @property
    @abstractmethod
    def identity(self) -> FactorElement: ...

    @abstractmethod
    def multiply(self, x: FactorElement, y: FactorElement) -> FactorElement: ...

    @abstractmethod
    def inverse(self, x: FactorElement) -> FactorElement: ...

    def is_identity(self, x: FactorElement) -> bool:
        return x == self.identity

    def power(self, x: FactorElement, k: int) -> FactorElement:
        """x**k by repeated squaring; k may be negative or zero."""
        if k < 0:
            x, k = self.inverse(x), -k
        acc = self.identity
        while k:
            if k & 1:
                acc = self.multiply(acc, x)
            k >>= 1
            if k:
                x = self.multiply(x, x)
        return acc

    @abstractmethod
    def generators(self) -> tuple[FactorElement, ...]:
        """The declared generating set E, in declaration order."""

    @abstractmethod
    def generator_names(self) -> tuple[str, ...]:
        """Display names parallel to ``generators()``."""

    def symmetric_generators(self) -> tuple[FactorElement, ...]:
        """E u E^-1: declaration order, then missing inverses, no dups."""
        out: list[FactorElement] = []
        for g in self.generators():
            if g not in out:
                out.append(g)
        for g in self.generators():
            inv = self.inverse(g)
            if inv not in out:
                out.append(inv)
        return tuple(out)

    @abstractmethod
    def word_length(self, x: FactorElement) -> int:
        """Minimal m with x a product of m elements of E u E^-1; identity -> 0."""

    @abstractmethod
    def are_conjugate(self, x: FactorElement, y: FactorElement) -> bool: ...

    @abstractmethod
    def conjugacy_representative(self, x: FactorElement) -> FactorElement:
        """Canonical member of the conjugacy class of x (equal iff conjugate)."""

    @abstractmethod
    def element_key(self, x: FactorElement) -> tuple:
        """Sort key; injective on elements of this group."""

    @abstractmethod
    def format_element(self, x: FactorElement) -> str: ...

    @abstractmethod
    def validate_element(self, x: FactorElement) -> None: ...

    def name_map(self) -> dict[str, FactorElement]:
        """Token name -> element, for the word parser (at least the generators)."""
        return dict(zip(self.generator_names(), self.generators()))

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        return None


# Associativity is checked exhaustively only for small tables; beyond that a
# fixed-seed sample keeps validation reproducible.
_ASSOC_EXHAUSTIVE_MAX = 64
_ASSOC_SAMPLES = 10_000
_ASSOC_SEED = 0x5EED


class FiniteTableGroup(FactorGroup):
    """Finite group given by an explicit multiplication table.

    ``table[i][j]`` is the id of element i * j; id 0 must be the identity.
    ``generators`` are non-identity element ids.  Construction validates
    closure, the identity row/column, two-sided inverses, associativity
    (exhaustive up to order 64, then sampled) and that the generators
    generate; the generating BFS doubles as the word-length table.
    """

    kind = "finite_table"

    def __init__(
        self,
        table,
        generators,
        element_names=None,
    ) -> None:
        rows = tuple(tuple(row) for row in table)
        n = len(rows)
        if n == 0:
            raise FactorGroupError("multiplication table is empty")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise FactorGroupError(f"table row {i} has length {len(row)}, expected {n}")
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                    raise FactorGroupError(f"table entry {v!r} out of range 0..{n - 1}")
        for j in range(n):
            if rows[0][j] != j:
                raise FactorGroupError("id 0 is not a left identity")
            if rows[j][0] != j:
                raise FactorGroupError("id 0 is not a right identity")
        inverse_of = [0] * n
        for i in range(n):
            right = [j for j in range(n) if rows[i][j] == 0]
            if len(right) != 1 or rows[right[0]][i] != 0:
                raise FactorGroupError(f"element {i} lacks a two-sided inverse")
            inverse_of[i] = right[0]
        self._table = rows
        self._inverse = tuple(inverse_of)
        self._n = n
        self._check_associativity()

        if element_names is None:
            element_names = ["e"] + [f"g{i}" for i in range(1, n)]
        names = tuple(element_names)
        if len(names) != n:
            raise FactorGroupError(f"expected {n} element names, got {len(names)}")
        for nm in names:
            _check_name(nm)
        if len(set(names)) != n:
            raise FactorGroupError("element names are not distinct")
        self._names = names

        gens = tuple(generators)
        if not gens:
            raise FactorGroupError("generator list is empty")
        for g in gens:
            if not isinstance(g, int) or isinstance(g, bool) or not 0 < g < n:
                raise FactorGroupError(f"generator id {g!r} invalid (must be non-identity element id)")
        if len(set(gens)) != len(gens):
            raise FactorGroupError("duplicate generators")
        self._generators = gens
        self._distances = self._bfs_distances()  # also proves <E> = G
        self._class_rep: tuple[int, ...] | None = None

    def _check_associativity(self) -> None:
        rows, n = self._table, self._n
        if n <= _ASSOC_EXHAUSTIVE_MAX:
            triples = (
                (x, y, z) for x in range(n) for y in range(n) for z in range(n)
            )
        else:
            rng = random.Random(_ASSOC_SEED)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(_ASSOC_SAMPLES)
            )
        for x, y, z in triples:
            if rows[rows[x][y]][z] != rows[x][rows[y][z]]:
                raise FactorGroupError(f"table is not associative at ({x}, {y}, {z})")

    def _bfs_distances(self) -> tuple[int, ...]:
        dist = [-1] * self._n
        dist[0] = 0
        frontier = [0]
        steps = self.symmetric_generators()
        d = 0
        while frontier:
            d += 1
            nxt = []
            for x in frontier:
                for s in steps:
                    y = self._table[x][s]
                    if dist[y] < 0:
                        dist[y] = d
                        nxt.append(y)
            frontier = nxt
        if min(dist) < 0:
            missing = self._names[dist.index(-1)]
            raise FactorGroupError(f"generators do not generate: {missing!r} unreachable")
        return tuple(dist)

    @property
    def identity(self) -> int:
        return 0

    def multiply(self, x: int, y: int) -> int:
        return self._table[x][y]

    def inverse(self, x: int) -> int:
        return self._inverse[x]

    def generators(self) -> tuple[int, ...]:
        return self._generators

    def generator_names(self) -> tuple[str, ...]:
        return tuple(self._names[g] for g in self._generators)

    def word_length(self, x: int) -> int:
        return self._distances[x]

    def _class_reps(self) -> tuple[int, ...]:
        if self._class_rep is None:
            rows, inv, n = self._table, self._inverse, self._n
            self._class_rep = tuple(
                min(rows[rows[h][x]][inv[h]] for h in range(n)) for x in range(n)
            )
        return self._class_rep

    def are_conjugate(self, x: int, y: int) -> bool:
        reps = self._class_reps()
        return reps[x] == reps[y]

    def conjugacy_representative(self, x: int) -> int:
        return self._class_reps()[x]

    def element_key(self, x: int) -> tuple:
        return (x,)

    def format_element(self, x: int) -> str:
        return self._names[x]

    def validate_element(self, x: FactorElement) -> None:
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self._n:
            raise FactorGroupError(f"not an element id of this group: {x!r}")

    def name_map(self) -> dict[str, int]:
        # Every non-identity element is addressable by name, so formatted
        # output (which may contain non-generator elements) parses back.
        return {self._names[i]: i for i in range(1, self._n)}

    def order(self) -> int:
        return self._n


class FiniteCyclicGroup(FactorGroup):
    """Cyclic group of order n; elements are exponents of a fixed letter."""

    kind = "finite_cyclic"

    def __init__(self, n: int, generators=(1,), letter: str = "b") -> None:
        if not isinstance(n, int) or n < 2:
            raise FactorGroupError(f"order must be an integer >= 2, got {n!r}")
        gens = tuple(generators)
        if not gens:
            raise FactorGroupError("generator list is empty")
        for g in gens:
            if not isinstance(g, int) or isinstance(g, bool) or not 0 < g < n:
                raise FactorGroupError(f"generator exponent {g!r} out of range 1..{n - 1}")
        if len(set(gens)) != len(gens):
            raise FactorGroupError("duplicate generators")
        if math.gcd(n, *gens) != 1:
            raise FactorGroupError("generators do not generate")
        self._n = n
        self._generators = gens
        self._letter = _check_name(letter)
        self._distances: list[int] | None = None

    @property
    def identity(self) -> int:
        return 0

    @property
    def letter(self) -> str:
        return self._letter

    def multiply(self, x: int, y: int) -> int:
        return (x + y) % self._n

    def inverse(self, x: int) -> int:
        return (-x) % self._n

    def power(self, x: int, k: int) -> int:
        return (x * k) % self._n

    def generators(self) -> tuple[int, ...]:
        return self._generators

    def generator_names(self) -> tuple[str, ...]:
        return tuple(
            self._letter if g == 1 else f"{self._letter}^{g}" for g in self._generators
        )

    def word_length(self, x: int) -> int:
        if self._distances is None:
            dist = [-1] * self._n
            dist[0] = 0
            frontier = [0]
            steps = self.symmetric_generators()
            d = 0
            while frontier:
                d += 1
                nxt = []
                for v in frontier:
                    for s in steps:
                        w = (v + s) % self._n
                        if dist[w] < 0:
                            dist[w] = d
                            nxt.append(w)
                frontier = nxt
            self._distances = dist
        return self._distances[x]

    def are_conjugate(self, x: int, y: int) -> bool:
        return x == y  # abelian

    def conjugacy_representative(self, x: int) -> int:
        return x

    def element_key(self, x: int) -> tuple:
        return (x,)

    def format_element(self, x: int) -> str:
        return self._letter if x == 1 else f"{self._letter}^{x}"

    def validate_element(self, x: FactorElement) -> None:
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self._n:
            raise FactorGroupError(f"not an exponent mod {self._n}: {x!r}")

    def name_map(self) -> dict[str, int]:
        # The letter alone suffices: any element is letter^k in word syntax.
        return {self._letter: 1}

    def order(self) -> int:
        return self._n


class InfiniteCyclicGroup(FactorGroup):
    """Infinite cyclic group; elements are integer exponents of one letter."""

    kind = "infinite_cyclic"

    def __init__(self, letter: str = "t") -> None:
        self._letter = _check_name(letter)

    @property
    def identity(self) -> int:
        return 0

    @property
    def letter(self) -> str:
        return self._letter

    def multiply(self, x: int, y: int) -> int:
        return x + y

    def inverse(self, x: int) -> int:
        return -x

    def power(self, x: int, k: int) -> int:
        return x * k

    def generators(self) -> tuple[int, ...]:
        return (1,)  # the standard generator is fixed

    def generator_names(self) -> tuple[str, ...]:
        return (self._letter,)

    def word_length(self, x: int) -> int:
        return abs(x)

    def are_conjugate(self, x: int, y: int) -> bool:
        return x == y  # abelian

    def conjugacy_representative(self, x: int) -> int:
        return x

    def element_key(self, x: int) -> tuple:
        return (abs(x), 0 if x >= 0 else 1)

    def format_element(self, x: int) -> str:
        return self._letter if x == 1 else f"{self._letter}^{x}"

    def validate_element(self, x: FactorElement) -> None:
        if not isinstance(x, int) or isinstance(x, bool):
            raise FactorGroupError(f"not an integer exponent: {x!r}")

    def name_map(self) -> dict[str, int]:
        return {self._letter: 1}


class FreeFactorGroup(FactorGroup):
    """Free group of finite rank; elements are freely reduced signed words.

    A word is a tuple of nonzero ints in {-rank..-1, 1..rank} with no
    adjacent mutually-inverse pair; index i stands for the i-th standard
    generator, -i for its inverse.
    """

    kind = "free"

    def __init__(self, rank: int, names=None) -> None:
        if not isinstance(rank, int) or rank < 1:
            raise FactorGroupError(f"rank must be a positive integer, got {rank!r}")
        if names is None:
            names = [f"x{i}" for i in range(1, rank + 1)]
        name_tuple = tuple(names)
        if len(name_tuple) != rank:
            raise FactorGroupError(f"expected {rank} generator names, got {len(name_tuple)}")
        for nm in name_tuple:
            _check_name(nm)
        if len(set(name_tuple)) != rank:
            raise FactorGroupError("generator names are not distinct")
        self._rank = rank
        self._names = name_tuple

    @property
    def identity(self) -> tuple:
        return ()

    @property
    def rank(self) -> int:
        return self._rank

    def multiply(self, x: tuple, y: tuple) -> tuple:
        i, j = len(x), 0
        while i > 0 and j < len(y) and x[i - 1] == -y[j]:
            i -= 1
            j += 1
        return x[:i] + y[j:]

    def inverse(self, x: tuple) -> tuple:
        return tuple(-c for c in reversed(x))

    def generators(self) -> tuple[tuple, ...]:
        return tuple((i,) for i in range(1, self._rank + 1))

    def generator_names(self) -> tuple[str, ...]:
        return self._names

    def word_length(self, x: tuple) -> int:
        return len(x)

    def _cyclic_core(self, x: tuple) -> tuple:
        while len(x) >= 2 and x[0] == -x[-1]:
            x = x[1:-1]
        return x

    def _min_rotation(self, x: tuple) -> tuple:
        if not x:
            return x
        return min(x[s:] + x[:s] for s in range(len(x)))

    def are_conjugate(self, x: tuple, y: tuple) -> bool:
        return self.conjugacy_representative(x) == self.conjugacy_representative(y)

    def conjugacy_representative(self, x: tuple) -> tuple:
        return self._min_rotation(self._cyclic_core(x))

    def element_key(self, x: tuple) -> tuple:
        return (len(x),) + x

    def format_element(self, x: tuple) -> str:
        # Run-length grouping: (1, 1, -2) -> "x1^2 x2^-1".
        parts: list[str] = []
        i = 0
        while i < len(x):
            j = i
            while j < len(x) and x[j] == x[i]:
                j += 1
            base = self._names[abs(x[i]) - 1]
            exp = (j - i) * (1 if x[i] > 0 else -1)
            parts.append(base if exp == 1 else f"{base}^{exp}")
            i = j
        return " ".join(parts)

    def validate_element(self, x: FactorElement) -> None:
        if not isinstance(x, tuple):
            raise FactorGroupError(f"not a word tuple: {x!r}")
        for c in x:
            if not isinstance(c, int) or isinstance(c, bool) or c == 0 or abs(c) > self._rank:
                raise FactorGroupError(f"bad generator index {c!r} in word")
        for a, b in zip(x, x[1:]):
            if a == -b:
                raise FactorGroupError(f"word {x!r} is not freely reduced")

    def name_map(self) -> dict[str, tuple]:
        return {nm: (i + 1,) for i, nm in enumerate(self._names)}

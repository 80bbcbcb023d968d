"""Cartan data, root systems, Weyl groups, the form on weights and the twist form.

Weights are tuples of Fractions in the fundamental-weight basis, so that
coordinate ``i`` of a weight ``lam`` is ``lam(h_i)``.  Roots are also kept
in simple-root coordinates, where integrality and height are immediate.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Sequence

from .linalg import ONE, ZERO, as_fraction, determinant, inverse

Weight = tuple  # tuple[Fraction, ...] in fundamental coordinates


class CartanError(ValueError):
    """Base class for rejected Cartan matrices."""


class NotSymmetrizable(CartanError):
    pass


class NotFiniteType(CartanError):
    pass


class NotIndecomposable(CartanError):
    pass


class Lattice(str, enum.Enum):
    ROOT = "root"
    WEIGHT = "weight"

    @classmethod
    def parse(cls, value) -> "Lattice":
        if isinstance(value, Lattice):
            return value
        text = str(value).lower().removesuffix("_lattice")
        return cls(text)


def weight(*coords) -> Weight:
    return tuple(Fraction(c) for c in coords)


def wadd(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wneg(a: Weight) -> Weight:
    return tuple(-x for x in a)


def wscale(c, a: Weight) -> Weight:
    return tuple(c * x for x in a)


# ---------------------------------------------------------------- Cartan data


def _minimal_symmetrizer(a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    n = len(a)
    d: list[Fraction | None] = [None] * n
    d[0] = ONE
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if i != j and a[i][j] != 0:
                # d_i a_ij = d_j a_ji
                value = d[i] * Fraction(a[i][j], a[j][i])
                if d[j] is None:
                    d[j] = value
                    queue.append(j)
                elif d[j] != value:
                    raise NotSymmetrizable("no symmetrizer solves d_i a_ij = d_j a_ji")
    scale = lcm(*(x.denominator for x in d))
    ints = [int(x * scale) for x in d]
    common = gcd(*ints)
    return tuple(x // common for x in ints)


def _is_connected(a: Sequence[Sequence[int]]) -> bool:
    n = len(a)
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if j not in seen and a[i][j] != 0:
                seen.add(j)
                queue.append(j)
    return len(seen) == n


@dataclass(frozen=True)
class CartanDatum:
    """A validated finite-type indecomposable Cartan matrix with symmetrizers."""

    n: int
    a: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]
    lattice: Lattice = Lattice.WEIGHT
    name: str | None = field(default=None, compare=False)

    @cached_property
    def _a_inverse(self) -> list[list[Fraction]]:
        return inverse([[Fraction(x) for x in row] for row in self.a])

    def simple_root(self, i: int) -> Weight:
        """alpha_i in fundamental coordinates: alpha_i(h_k) = a_ki."""
        return tuple(Fraction(self.a[k][i]) for k in range(self.n))

    def fundamental(self, i: int) -> Weight:
        return tuple(ONE if k == i else ZERO for k in range(self.n))

    def zero(self) -> Weight:
        return (ZERO,) * self.n

    def from_root_coords(self, c: Sequence) -> Weight:
        return tuple(sum((Fraction(c[j]) * self.a[k][j] for j in range(self.n)), ZERO) for k in range(self.n))

    def to_root_coords(self, lam: Weight) -> tuple[Fraction, ...]:
        inv = self._a_inverse
        return tuple(sum((inv[j][k] * lam[k] for k in range(self.n)), ZERO) for j in range(self.n))

    def pair(self, lam: Weight, mu: Weight) -> Fraction:
        """The invariant form with (alpha_i|alpha_j) = d_i a_ij."""
        c = self.to_root_coords(lam)
        return sum((c[j] * self.d[j] * mu[j] for j in range(self.n)), ZERO)

    def is_integral(self, lam: Weight) -> bool:
        return all(Fraction(x).denominator == 1 for x in lam)

    def in_lattice(self, lam: Weight) -> bool:
        if self.lattice is Lattice.WEIGHT:
            return self.is_integral(lam)
        return all(x.denominator == 1 for x in self.to_root_coords(lam))

    def is_dominant(self, lam: Weight) -> bool:
        return self.is_integral(lam) and all(x >= 0 for x in lam)

    @cached_property
    def dominant_generators(self) -> tuple[Weight, ...]:
        """Minimal generators of the monoid of dominant weights in the lattice.

        For the weight lattice these are the fundamental weights.  For the root
        lattice the bounded search below finds the Hilbert basis, since
        det(a) times any fundamental weight lies in the root lattice.
        """
        if self.lattice is Lattice.WEIGHT:
            return tuple(self.fundamental(i) for i in range(self.n))
        bound = abs(int(determinant([[Fraction(x) for x in row] for row in self.a])))
        candidates = []
        for coords in itertools.product(range(bound + 1), repeat=self.n):
            if any(coords):
                lam = weight(*coords)
                if self.in_lattice(lam):
                    candidates.append(lam)
        found = set(candidates)
        generators = []
        for lam in sorted(candidates, key=lambda w: (sum(w), tuple(-x for x in w))):
            decomposable = any(
                other != lam and all(x <= y for x, y in zip(other, lam)) and wsub(lam, other) in found
                for other in candidates
            )
            if not decomposable:
                generators.append(lam)
        return tuple(generators)


def build_cartan(matrix: Sequence[Sequence[int]], lattice_choice=Lattice.WEIGHT, name: str | None = None) -> CartanDatum:
    """Validate a Cartan matrix and compute its minimal symmetrizers."""
    if not matrix or any(len(row) != len(matrix) for row in matrix):
        raise CartanError("Cartan matrix must be square and non-empty")
    for row in matrix:
        for x in row:
            if isinstance(x, bool) or Fraction(x).denominator != 1:
                raise CartanError("Cartan matrix entries must be integers")
    a = tuple(tuple(int(x) for x in row) for row in matrix)
    n = len(a)
    for i in range(n):
        if a[i][i] != 2:
            raise CartanError("diagonal entries must equal 2")
        for j in range(n):
            if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                raise CartanError("off-diagonal entries must be <= 0 with a_ij = 0 iff a_ji = 0")
    if not _is_connected(a):
        raise NotIndecomposable("Cartan matrix is decomposable")
    d = _minimal_symmetrizer(a)
    da = [[Fraction(d[i] * a[i][j]) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if determinant([row[:k] for row in da[:k]]) <= 0:
            raise NotFiniteType("symmetrized Cartan matrix is not positive definite")
    return CartanDatum(n=n, a=a, d=d, lattice=Lattice.parse(lattice_choice), name=name)


def cartan_matrix_for_type(type_name: str) -> list[list[int]]:
    """Cartan matrix of a named finite type such as ``"A2"`` or ``"G2"``.

    ``B2`` uses the ``[[2,-2],[-1,2]]`` labelling (long root second); the
    higher ``B_n``/``C_n`` follow the usual a_ij = <alpha_j, alpha_i^vee>.
    """
    text = type_name.strip().upper()
    if len(text) < 2 or not text[1:].isdigit():
        raise CartanError(f"unknown type {type_name!r}")
    letter, n = text[0], int(text[1:])
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def chain(length):
        for i in range(length - 1):
            a[i][i + 1] = a[i + 1][i] = -1

    if letter == "A" and n >= 1:
        chain(n)
    elif letter == "B" and n == 2:
        a = [[2, -2], [-1, 2]]
    elif letter == "B" and n >= 3:
        chain(n)
        a[n - 1][n - 2] = -2
    elif letter == "C" and n >= 2:
        chain(n)
        a[n - 2][n - 1] = -2
    elif letter == "D" and n >= 4:
        chain(n - 1)
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    elif letter == "G" and n == 2:
        a = [[2, -1], [-3, 2]]
    elif letter == "F" and n == 4:
        chain(4)
        a[1][2] = -2
    elif letter == "E" and n in (6, 7, 8):
        # Bourbaki labelling: 1-3-4-5-6(-7-8) with 2 attached to 4.
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
    else:
        raise CartanError(f"unknown type {type_name!r}")
    return a


# ---------------------------------------------------------------- roots


@dataclass(frozen=True)
class RootSystem:
    """Roots in simple-root coordinates; positives first, then their negatives."""

    cartan: CartanDatum
    positive_coords: tuple[tuple[int, ...], ...]
    reflection_table: tuple[tuple[int, ...], ...]  # [i][root index] -> root index

    @cached_property
    def all_coords(self) -> tuple[tuple[int, ...], ...]:
        return self.positive_coords + tuple(tuple(-x for x in c) for c in self.positive_coords)

    @property
    def num_positive(self) -> int:
        return len(self.positive_coords)

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        return tuple(self.cartan.from_root_coords(c) for c in self.positive_coords)

    @cached_property
    def all_roots(self) -> tuple[Weight, ...]:
        return tuple(self.cartan.from_root_coords(c) for c in self.all_coords)

    @cached_property
    def index_of_coords(self) -> dict[tuple[int, ...], int]:
        return {c: k for k, c in enumerate(self.all_coords)}

    @cached_property
    def index_of_weight(self) -> dict[Weight, int]:
        return {w: k for k, w in enumerate(self.all_roots)}

    def height(self, k: int) -> int:
        return sum(self.all_coords[k])

    def is_positive(self, k: int) -> bool:
        return k < self.num_positive

    def negative(self, k: int) -> int:
        p = self.num_positive
        return k + p if k < p else k - p

    def simple_index(self, i: int) -> int:
        return self.index_of_coords[tuple(1 if j == i else 0 for j in range(self.cartan.n))]

    def find(self, coords) -> int | None:
        return self.index_of_coords.get(tuple(int(x) for x in coords))

    def label(self, k: int) -> str:
        return "[" + ",".join(str(x) for x in self.all_coords[k]) + "]"


def generate_roots(cd: CartanDatum) -> RootSystem:
    """Close the simple roots under simple reflections."""
    n = cd.n

    def reflect(i, c):
        pairing = sum(c[j] * cd.a[i][j] for j in range(n))  # beta(h_i)
        return tuple(c[j] - (pairing if j == i else 0) for j in range(n))

    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        c = queue.popleft()
        for i in range(n):
            r = reflect(i, c)
            if r not in seen:
                seen.add(r)
                queue.append(r)
    positives = sorted(
        (c for c in seen if all(x >= 0 for x in c)),
        key=lambda c: (sum(c), tuple(-x for x in c)),
    )
    if 2 * len(positives) != len(seen) or any(not (all(x >= 0 for x in c) or all(x <= 0 for x in c)) for c in seen):
        raise NotFiniteType("root closure produced mixed-sign roots")
    all_coords = positives + [tuple(-x for x in c) for c in positives]
    index = {c: k for k, c in enumerate(all_coords)}
    table = tuple(tuple(index[reflect(i, c)] for c in all_coords) for i in range(n))
    return RootSystem(cartan=cd, positive_coords=tuple(positives), reflection_table=table)


# ---------------------------------------------------------------- Weyl group


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element: one reduced word and its integer action on weights.

    ``word = (i1, ..., ik)`` stands for ``s_{i1} ... s_{ik}``.
    """

    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def apply(self, lam: Weight) -> Weight:
        return tuple(sum((row[j] * lam[j] for j in range(len(lam))), ZERO) for row in self.matrix)

    def label(self) -> str:
        return "e" if not self.word else "".join(f"s{i + 1}" for i in self.word)


@dataclass(frozen=True)
class WeylGroup:
    roots: RootSystem
    elements: tuple[WeylElement, ...]
    longest: int

    @cached_property
    def _by_image(self) -> dict[tuple, int]:
        return {_rho_image(e.matrix): k for k, e in enumerate(self.elements)}

    def multiply(self, i: int, j: int) -> int:
        """Index of elements[i] * elements[j]."""
        return self._by_image[_rho_image(_matmul_int(self.elements[i].matrix, self.elements[j].matrix))]

    @cached_property
    def multiplication(self) -> tuple[tuple[int, ...], ...]:
        n = len(self.elements)
        return tuple(tuple(self.multiply(i, j) for j in range(n)) for i in range(n))

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def w0(self) -> WeylElement:
        return self.elements[self.longest]

    @cached_property
    def identity(self) -> int:
        return next(k for k, e in enumerate(self.elements) if not e.word)

    def inverse(self, k: int) -> int:
        return self.find_word(tuple(reversed(self.elements[k].word)))

    def apply_to_root(self, k: int, root_index: int) -> int:
        w = self.elements[k]
        return self.roots.index_of_weight[w.apply(self.roots.all_roots[root_index])]

    def find_word(self, word: Sequence[int]) -> int:
        current = self.identity
        for i in reversed(list(word)):
            current = self.multiply(self._simple[i], current)
        return current

    @cached_property
    def _simple(self) -> tuple[int, ...]:
        return tuple(next(k for k, e in enumerate(self.elements) if e.word == (i,)) for i in range(self.roots.cartan.n))


def _rho_image(m) -> tuple:
    return tuple(sum(row) for row in m)


def _matmul_int(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))) for i in range(len(a)))


def build_weyl(rs: RootSystem) -> WeylGroup:
    """Enumerate W by breadth-first search on the orbit of rho."""
    cd = rs.cartan
    n = cd.n
    reflections = []
    for i in range(n):
        # s_i(lam) = lam - lam_i alpha_i, alpha_i = column i of a
        reflections.append(
            tuple(tuple((1 if r == c else 0) - (cd.a[r][i] if c == i else 0) for c in range(n)) for r in range(n))
        )
    ident = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))

    image = _rho_image

    elements = [WeylElement(word=(), matrix=ident)]
    by_image = {image(ident): 0}
    frontier = [0]
    while frontier:
        nxt = []
        for k in frontier:
            w = elements[k]
            for i in range(n):
                m = _matmul_int(reflections[i], w.matrix)
                key = image(m)
                if key not in by_image:
                    by_image[key] = len(elements)
                    elements.append(WeylElement(word=(i,) + w.word, matrix=m))
                    nxt.append(by_image[key])
        frontier = nxt
    longest = max(range(len(elements)), key=lambda k: elements[k].length)
    return WeylGroup(roots=rs, elements=tuple(elements), longest=longest)


def weyl_dimension(rs: RootSystem, lam: Weight) -> int:
    """Weyl dimension formula: product over positive roots of (lam+rho|a)/(rho|a)."""
    cd = rs.cartan
    rho = tuple(ONE for _ in range(cd.n))
    shifted = wadd(lam, rho)
    value = ONE
    for beta in rs.positive_roots:
        value *= cd.pair(shifted, beta) / cd.pair(rho, beta)
    if value.denominator != 1:
        raise ArithmeticError("Weyl dimension is not an integer")
    return int(value)


# ---------------------------------------------------------------- twist form


@dataclass(frozen=True)
class TwistForm:
    """Skew form u(lam, mu) = sum u_ij lam(h_i) mu(h_j) and the maps Phi_+/-."""

    cartan: CartanDatum
    u: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = self.cartan.n
        if len(self.u) != n or any(len(row) != n for row in self.u):
            raise ValueError("twist matrix shape does not match the rank")
        for i in range(n):
            for j in range(n):
                if self.u[i][j] != -self.u[j][i]:
                    raise ValueError("twist matrix must be skew-symmetric")

    @classmethod
    def zero(cls, cd: CartanDatum) -> "TwistForm":
        return cls(cd, tuple(tuple(ZERO for _ in range(cd.n)) for _ in range(cd.n)))

    @classmethod
    def from_entries(cls, cd: CartanDatum, entries) -> "TwistForm":
        return cls(cd, tuple(tuple(as_fraction(x) for x in row) for row in entries))

    def is_zero(self) -> bool:
        return not any(x for row in self.u for x in row)

    def value(self, lam: Weight, mu: Weight) -> Fraction:
        n = self.cartan.n
        return sum((self.u[i][j] * lam[i] * mu[j] for i in range(n) for j in range(n) if self.u[i][j]), ZERO)

    def phi(self, sign: int, lam: Weight, mu: Weight) -> Fraction:
        """(Phi_sign lam | mu) = u(lam, mu) + sign (lam|mu), sign in {+1, -1}."""
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return self.value(lam, mu) + sign * self.cartan.pair(lam, mu)


def pair_hstar(cd: CartanDatum, lam: Weight, mu: Weight) -> Fraction:
    return cd.pair(lam, mu)


def phi_apply(tf: TwistForm, sign, lam: Weight, mu: Weight) -> Fraction:
    if sign in ("+", "-"):
        sign = 1 if sign == "+" else -1
    return tf.phi(sign, lam, mu)

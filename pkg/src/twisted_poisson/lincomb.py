"""Finite formal linear combinations with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping

ZERO = Fraction(0)


class LinComb(Mapping):
    """Immutable map key -> nonzero Fraction, with vector-space arithmetic.

    Keys are arbitrary hashable labels: basis vectors of a Lie algebra,
    tuples of them for tensors, or pairs of words for U x U.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | Iterable[tuple[Hashable, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for key, value in items:
            if value:
                acc[key] = acc.get(key, ZERO) + Fraction(value)
        self._terms = {k: v for k, v in acc.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LinComb":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def single(cls, key, coeff=1) -> "LinComb":
        return cls({key: coeff})

    def __getitem__(self, key) -> Fraction:
        return self._terms[key]

    def get(self, key, default=ZERO):
        return self._terms.get(key, default)

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LinComb._raw(out)

    def __neg__(self) -> "LinComb":
        return LinComb._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __mul__(self, scalar) -> "LinComb":
        scalar = Fraction(scalar)
        if not scalar:
            return LinComb()
        return LinComb._raw({k: v * scalar for k, v in self._terms.items()})

    __rmul__ = __mul__

    def map_keys(self, fn: Callable[[Hashable], Hashable]) -> "LinComb":
        return LinComb((fn(k), v) for k, v in self._terms.items())

    def sorted_items(self, key=None) -> list[tuple[Hashable, Fraction]]:
        return sorted(self._terms.items(), key=(lambda kv: key(kv[0])) if key else (lambda kv: kv[0]))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({v})*{k!r}" for k, v in self._terms.items())


def lin_sum(items: Iterable[LinComb]) -> LinComb:
    acc: dict = {}
    for item in items:
        for k, v in item.items():
            acc[k] = acc.get(k, ZERO) + v
    return LinComb._raw({k: v for k, v in acc.items() if v})

"""Divisor classes on a Picard lattice with a rational intersection form."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactnum import as_rat, rat_str

NEFNESS_CAVEAT = (
    "nefness and pseudoeffectivity are certified only against the supplied curve list"
)


class LatticeError(ValueError):
    pass


class DivisorClass(tuple):
    """Rational coefficient vector over a lattice basis."""

    def __new__(cls, coeffs: Sequence = ()):
        return super().__new__(cls, (as_rat(c) for c in coeffs))

    @classmethod
    def zero(cls, rank: int) -> DivisorClass:
        return cls([0] * rank)

    @classmethod
    def basis(cls, rank: int, i: int) -> DivisorClass:
        return cls([1 if j == i else 0 for j in range(rank)])

    def _check(self, other):
        if len(other) != len(self):
            raise LatticeError(f"rank mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other):
        self._check(other)
        return DivisorClass(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._check(other)
        return DivisorClass(a - b for a, b in zip(self, other))

    def __neg__(self):
        return DivisorClass(-a for a in self)

    def __mul__(self, c):
        if isinstance(c, (tuple, list)):
            return NotImplemented
        c = as_rat(c)
        return DivisorClass(a * c for a in self)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for a in self)

    def __repr__(self):
        return f"DivisorClass([{', '.join(rat_str(a) for a in self)}])"


@dataclass(frozen=True)
class IntersectionLattice:
    basis_labels: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    dimension_n: int = 2

    def __post_init__(self):
        labels = tuple(self.basis_labels)
        gram = tuple(tuple(as_rat(x) for x in row) for row in self.gram)
        object.__setattr__(self, "basis_labels", labels)
        object.__setattr__(self, "gram", gram)
        problems = gram_problems(labels, gram)
        if problems:
            raise LatticeError("; ".join(problems))
        if self.dimension_n < 1:
            raise LatticeError("dimension must be positive")

    @property
    def rank(self) -> int:
        return len(self.basis_labels)

    def cls(self, coeffs) -> DivisorClass:
        d = DivisorClass(coeffs)
        if len(d) != self.rank:
            raise LatticeError(f"class has {len(d)} coefficients, lattice rank is {self.rank}")
        return d

    def intersect(self, a: Sequence, b: Sequence) -> Fraction:
        if len(a) != self.rank or len(b) != self.rank:
            raise LatticeError(f"rank mismatch: lattice rank {self.rank}, got {len(a)} and {len(b)}")
        total = Fraction(0)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            row = self.gram[i]
            for j, bj in enumerate(b):
                if bj:
                    total += ai * row[j] * bj
        return total

    def square(self, a: Sequence) -> Fraction:
        return self.intersect(a, a)


def gram_problems(labels: Sequence[str], gram) -> list[str]:
    """Human-readable shape/symmetry problems of a Gram matrix."""
    out = []
    n = len(labels)
    if len(set(labels)) != n:
        out.append("basis labels must be distinct")
    if len(gram) != n or any(len(row) != n for row in gram):
        out.append(f"gram must be {n}x{n} to match the basis")
        return out
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i][j] != gram[j][i]:
                out.append(f"gram not symmetric at ({labels[i]}, {labels[j]}): "
                           f"{rat_str(gram[i][j])} != {rat_str(gram[j][i])}")
    return out


def intersect(L: IntersectionLattice, A, B) -> Fraction:
    return L.intersect(A, B)


@dataclass(frozen=True)
class SurfaceData:
    """A surface given by its Picard lattice, K_X, the boundary D and curve data.

    ``negative_curves`` are irreducible curves with negative self-intersection;
    ``extra_curves`` are further effective curves the user wants nefness
    tested against. ``ample`` is a reference ample class used to reject
    classes on the wrong side of the positive cone; it defaults to -K_X.
    """

    lattice: IntersectionLattice
    canonical: DivisorClass
    boundary: DivisorClass
    negative_curves: tuple[DivisorClass, ...] = ()
    curve_labels: tuple[str, ...] = ()
    extra_curves: tuple[DivisorClass, ...] = ()
    ample: DivisorClass | None = None

    def __post_init__(self):
        L = self.lattice
        object.__setattr__(self, "canonical", L.cls(self.canonical))
        object.__setattr__(self, "boundary", L.cls(self.boundary))
        curves = tuple(L.cls(c) for c in self.negative_curves)
        object.__setattr__(self, "negative_curves", curves)
        object.__setattr__(self, "extra_curves", tuple(L.cls(c) for c in self.extra_curves))
        labels = tuple(self.curve_labels) or tuple(f"C{i}" for i in range(len(curves)))
        if len(labels) != len(curves):
            raise LatticeError("one label per negative curve")
        object.__setattr__(self, "curve_labels", labels)
        if self.ample is not None:
            object.__setattr__(self, "ample", L.cls(self.ample))
        if L.dimension_n != 2:
            raise LatticeError("surface data needs a lattice of dimension 2")
        if self.boundary.is_zero():
            raise LatticeError("the boundary D must be a nonzero divisor")
        for lab, c in zip(labels, curves):
            if L.square(c) >= 0:
                raise LatticeError(f"curve {lab} has self-intersection {rat_str(L.square(c))} >= 0")

    @property
    def anticanonical(self) -> DivisorClass:
        return -self.canonical

    @property
    def reference_ample(self) -> DivisorClass:
        return self.ample if self.ample is not None else -self.canonical

    def divisor_ray(self, t) -> DivisorClass:
        """The class -K_X - t*D."""
        return self.anticanonical - self.boundary * t

    def all_test_curves(self) -> tuple[DivisorClass, ...]:
        return self.negative_curves + self.extra_curves


def is_nef_against(S: SurfaceData, A: Sequence) -> bool:
    L = S.lattice
    return all(L.intersect(A, C) >= 0 for C in S.all_test_curves())

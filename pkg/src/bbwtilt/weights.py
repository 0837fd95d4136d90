"""Exact arithmetic on the D4 weight lattice.

The lattice consists of 4-vectors whose entries are either all integers or
all half-odd-integers.  Coordinates are stored doubled, so everything below
runs in exact integer arithmetic.

Conventions, all hard-coded for rank 4:

* positive roots: ``e_i - e_j`` and ``e_i + e_j`` for ``1 <= i < j <= 4``,
  twelve in total; ``rho = (3, 2, 1, 0)`` is half their sum.
* *dominant*: ``a1 >= a2 >= a3 >= |a4|``.
* *Levi-dominant*: ``a2 >= a3 >= |a4|`` with the first coordinate free.
  These weights index the irreducible homogeneous bundles on the
  six-dimensional quadric, realised as the space of isotropic lines in an
  eight-dimensional quadratic space.
* the *dotted* Weyl action is ``s . w = s(w + rho) - rho``; in coordinates
  the four simple reflections act by

      s1 . (a, b, c, d) = (b - 1, a + 1, c, d)
      s2 . (a, b, c, d) = (a, c - 1, b + 1, d)
      s3 . (a, b, c, d) = (a, b, d - 1, c + 1)
      s4 . (a, b, c, d) = (a, b, -d - 1, -c - 1)

A weight is *singular* when ``w + rho`` is fixed by some reflection, i.e.
two of its entries agree up to sign.  For a regular Levi-dominant weight,
:func:`bbw_resolve` walks the dotted orbit into the dominant chamber and
reports the number of steps together with the dominant representative and
its dimension; this is precisely the datum needed to evaluate the sheaf
cohomology of an irreducible homogeneous bundle on the quadric, where the
step count is the unique cohomological degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Quadruple = tuple[int, int, int, int]


class LatticeError(ValueError):
    """Raised for 4-vectors that do not lie on the weight lattice."""


@dataclass(frozen=True, order=True)
class Weight:
    """A lattice point, stored as doubled integers (coordinate = twice/2)."""

    twice: Quadruple

    def __post_init__(self):
        t = self.twice
        if len(t) != 4 or not all(isinstance(x, int) for x in t):
            raise LatticeError("a weight needs four doubled integers, got %r" % (t,))
        if len({x & 1 for x in t}) != 1:
            raise LatticeError(
                "coordinates must be all integral or all half-integral: %s" % (self,)
            )

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(x, 2) for x in self.twice)

    def serialize(self) -> list[str]:
        """Coordinates as reduced fraction strings, e.g. ``["-1/2", ...]``."""
        return [str(c) for c in self.coords]

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.twice, other.twice)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.twice, other.twice)))


def weight(*coords) -> Weight:
    """Build a :class:`Weight` from ints, fractions or strings like ``"-7/2"``."""
    if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction)):
        coords = tuple(coords[0])
    doubled = []
    for c in coords:
        f = 2 * Fraction(c)
        if f.denominator != 1:
            raise LatticeError("quarter-integral coordinate %r" % (c,))
        doubled.append(int(f))
    return Weight(tuple(doubled))


def parse_weight(text: str) -> Weight:
    """Parse a comma-separated weight string such as ``-7/2,1/2,1/2,1/2``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise LatticeError("expected four comma-separated coordinates: %r" % text)
    return weight(*parts)


RHO = Weight((6, 4, 2, 0))

#: The twelve positive roots e_i - e_j, e_i + e_j (i < j), as integer vectors.
POSITIVE_ROOTS: list[Quadruple] = []
for _i in range(4):
    for _j in range(_i + 1, 4):
        for _s in (-1, 1):
            _v = [0, 0, 0, 0]
            _v[_i], _v[_j] = 1, _s
            POSITIVE_ROOTS.append(tuple(_v))

#: Positive roots of the Levi factor of the line-stabilising parabolic:
#: those supported on the last three coordinates.
LEVI_ROOTS: list[Quadruple] = [r for r in POSITIVE_ROOTS if r[0] == 0]


def is_dominant(w: Weight) -> bool:
    a, b, c, d = w.twice
    return a >= b >= c >= abs(d)


def is_levi_dominant(w: Weight) -> bool:
    _, b, c, d = w.twice
    return b >= c >= abs(d)


def dotted_reflect(i: int, w: Weight) -> Weight:
    """Apply the i-th simple dotted reflection, ``i`` in 1..4."""
    a, b, c, d = w.twice
    if i == 1:
        return Weight((b - 2, a + 2, c, d))
    if i == 2:
        return Weight((a, c - 2, b + 2, d))
    if i == 3:
        return Weight((a, b, d - 2, c + 2))
    if i == 4:
        return Weight((a, b, -d - 2, -c - 2))
    raise IndexError("simple reflection index out of range: %r" % i)


def is_singular(w: Weight) -> bool:
    """True when ``w + rho`` is fixed by a reflection.

    The reflections are exactly those of the roots ``e_i - e_j`` (which fix
    vectors with ``mu_i = mu_j``) and ``e_i + e_j`` (``mu_i = -mu_j``), so
    singularity amounts to two entries of ``w + rho`` sharing an absolute
    value.
    """
    mu = (w + RHO).twice
    vals = [abs(x) for x in mu]
    return len(set(vals)) < 4


@dataclass(frozen=True)
class BBWResult:
    """Outcome of resolving a weight: singular, or regular with a degree."""

    singular: bool
    degree: int | None = None
    dominant: Weight | None = None
    dim: int | None = None

    def __str__(self):
        if self.singular:
            return "singular"
        return "degree %d, dominant %s, dim %d" % (self.degree, self.dominant, self.dim)


def _failing_wall(w: Weight) -> int | None:
    """Smallest simple-root index whose chamber inequality fails for w + rho."""
    m = (w + RHO).twice
    pairings = (m[0] - m[1], m[1] - m[2], m[2] - m[3], m[2] + m[3])
    for i, p in enumerate(pairings, start=1):
        if p < 0:
            return i
    return None


@lru_cache(maxsize=None)
def bbw_resolve(w: Weight) -> BBWResult:
    """Resolve a Levi-dominant weight to its cohomological degree.

    Singular weights have vanishing cohomology in every degree.  Otherwise
    the dotted orbit meets the dominant chamber exactly once; the number of
    simple dotted reflections needed (taken greedily at the smallest failing
    wall) is the unique degree carrying cohomology, and the group there is
    the irreducible representation of the final dominant weight.
    """
    if not is_levi_dominant(w):
        raise ValueError("bbw_resolve needs a Levi-dominant weight, got %s" % w)
    if is_singular(w):
        return BBWResult(singular=True)
    v, degree = w, 0
    for _ in range(13):
        i = _failing_wall(v)
        if i is None:
            if degree > 6:
                raise RuntimeError(
                    "degree %d exceeds the dimension bound for %s" % (degree, w)
                )
            return BBWResult(False, degree, v, weyl_dim_d4(v))
        v = dotted_reflect(i, v)
        degree += 1
    raise RuntimeError("reflection loop did not terminate for %s" % w)


def _pairing_product(mu: Quadruple, roots) -> Fraction:
    prod = Fraction(1)
    for r in roots:
        prod *= sum(m * c for m, c in zip(mu, r))
    return prod


@lru_cache(maxsize=None)
def weyl_dim_d4(w: Weight) -> int:
    """Dimension of the irreducible representation with highest weight ``w``.

    Weyl dimension formula: the product of ``<w + rho, alpha> / <rho, alpha>``
    over the twelve positive roots, evaluated exactly.
    """
    if not is_dominant(w):
        raise ValueError("weyl_dim_d4 needs a dominant weight, got %s" % w)
    num = _pairing_product((w + RHO).twice, POSITIVE_ROOTS)
    den = _pairing_product(RHO.twice, POSITIVE_ROOTS)
    d = num / den
    if d.denominator != 1:
        raise RuntimeError("non-integral dimension for %s" % w)
    return int(d)


@lru_cache(maxsize=None)
def levi_rank(w: Weight) -> int:
    """Rank of the homogeneous bundle on the quadric indexed by ``w``.

    Same product formula as :func:`weyl_dim_d4` but over the six positive
    roots of the Levi factor, which do not see the first coordinate.
    """
    if not is_levi_dominant(w):
        raise ValueError("levi_rank needs a Levi-dominant weight, got %s" % w)
    num = _pairing_product((w + RHO).twice, LEVI_ROOTS)
    den = _pairing_product(RHO.twice, LEVI_ROOTS)
    r = num / den
    if r.denominator != 1:
        raise RuntimeError("non-integral rank for %s" % w)
    return int(r)


def serre_dual_weight(w: Weight) -> Weight:
    """Weight of the Serre-dual bundle ``F^dual (-6)`` on the six-quadric.

    In coordinates: ``(a, b, c, d) -> (-a - 6, b, c, -d)``.  Cohomology in
    degree ``i`` of a bundle matches cohomology in degree ``6 - i`` of its
    Serre dual, dimension for dimension.
    """
    if not is_levi_dominant(w):
        raise ValueError("serre_dual_weight needs a Levi-dominant weight")
    a, b, c, d = w.twice
    return Weight((-a - 12, b, c, -d))

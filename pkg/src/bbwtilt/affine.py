"""Symbolic weights affine in one or two integer parameters.

To certify a cohomology vanishing for *every* symmetric power at once, the
resolution of :mod:`bbwtilt.weights` is executed on weights whose
coordinates are affine forms ``a*k + b*j + c`` in an integer parameter
``k`` (and optionally a second parameter ``j``).  The executor partitions
the parameter domain into

* an explicit finite set of parameter points, each resolved concretely, and
* finitely many unbounded regions on which the outcome is uniform:
  singular everywhere, dominant (degree 0), or regular with one fixed
  degree and an affine dominant representative.

Every sign decision is made exactly.  On an integer interval an affine form
either has constant sign (decidable from its endpoints) or the interval is
split at the crossing; with two parameters the second one is eliminated
first, which works whenever it enters only the first coordinate with
positive slope -- the situation for twists of symmetric-power families,
where the first coordinate grows strictly faster than the Levi block.
Inputs outside that fragment raise :class:`Inconclusive` rather than guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .weights import BBWResult, Weight, bbw_resolve, weyl_dim_d4

_RHO = (Fraction(3), Fraction(2), Fraction(1), Fraction(0))


class Inconclusive(Exception):
    """The sign analysis could not decide a region soundly."""


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Aff:
    """Affine form ``k*ck + j*cj + c`` with exact rational coefficients."""

    ck: Fraction = Fraction(0)
    cj: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    @staticmethod
    def const(x) -> "Aff":
        return Aff(c=_fr(x))

    def __add__(self, other):
        if isinstance(other, Aff):
            return Aff(self.ck + other.ck, self.cj + other.cj, self.c + other.c)
        return Aff(self.ck, self.cj, self.c + _fr(other))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Aff):
            return Aff(self.ck - other.ck, self.cj - other.cj, self.c - other.c)
        return Aff(self.ck, self.cj, self.c - _fr(other))

    def __neg__(self):
        return Aff(-self.ck, -self.cj, -self.c)

    def __mul__(self, scalar):
        s = _fr(scalar)
        return Aff(self.ck * s, self.cj * s, self.c * s)

    __rmul__ = __mul__

    def subs(self, k=None, j=None) -> "Aff":
        out = self
        if k is not None:
            out = Aff(Fraction(0), out.cj, out.c + out.ck * _fr(k))
        if j is not None:
            out = Aff(out.ck, Fraction(0), out.c + out.cj * _fr(j))
        return out

    def at(self, k=0, j=0) -> Fraction:
        k = 0 if k is None else k
        j = 0 if j is None else j
        return self.ck * _fr(k) + self.cj * _fr(j) + self.c

    @property
    def is_const(self) -> bool:
        return self.ck == 0 and self.cj == 0

    def coeff(self, var: str) -> Fraction:
        return self.ck if var == "k" else self.cj

    def __str__(self):
        # render with a common denominator: (3k+2j-1)/2 style
        den = 1
        for f in (self.ck, self.cj, self.c):
            den = den * f.denominator // _gcd(den, f.denominator)
        terms = []
        for coef, name in ((self.ck * den, "k"), (self.cj * den, "j")):
            if coef == 0:
                continue
            if coef == 1:
                terms.append("+%s" % name)
            elif coef == -1:
                terms.append("-%s" % name)
            else:
                terms.append("%+d%s" % (coef, name))
        if self.c * den != 0 or not terms:
            terms.append("%+d" % (self.c * den,))
        body = "".join(terms).lstrip("+")
        if den == 1:
            return body
        if len(terms) == 1:
            return "%s/%d" % (body, den)
        return "(%s)/%d" % (body, den)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def aff(ck=0, cj=0, c=0) -> Aff:
    return Aff(_fr(ck), _fr(cj), _fr(c))


@dataclass(frozen=True)
class AffineWeight:
    """Four affine coordinate forms plus lower bounds of their domain."""

    coords: tuple[Aff, Aff, Aff, Aff]
    kmin: int | None = None
    jmin: int | None = None

    def __post_init__(self):
        for f in self.coords:
            for coef in (f.ck, f.cj, f.c):
                if (2 * coef).denominator != 1:
                    raise ValueError("coefficients must be half-integral: %s" % f)
        # the parity condition must hold at every integer parameter point,
        # which forces coefficient-wise parity agreement of the doubled forms
        for part in ("ck", "cj", "c"):
            doubled = [int(2 * getattr(f, part)) for f in self.coords]
            if len({d & 1 for d in doubled}) != 1:
                raise ValueError(
                    "parity of the doubled %s-coefficients disagrees: %s" % (part, self)
                )

    @property
    def vars(self) -> tuple[str, ...]:
        names = []
        if self.kmin is not None or any(f.ck != 0 for f in self.coords):
            names.append("k")
        if self.jmin is not None or any(f.cj != 0 for f in self.coords):
            names.append("j")
        return tuple(names)

    def at(self, k=0, j=0) -> Weight:
        return Weight(tuple(int(2 * f.at(k, j)) for f in self.coords))

    def subs(self, k=None, j=None) -> "AffineWeight":
        return AffineWeight(
            tuple(f.subs(k=k, j=j) for f in self.coords),
            kmin=None if k is not None else self.kmin,
            jmin=None if j is not None else self.jmin,
        )

    def __str__(self):
        dom = []
        if self.kmin is not None:
            dom.append("k >= %d" % self.kmin)
        if self.jmin is not None:
            dom.append("j >= %d" % self.jmin)
        body = "(" + ", ".join(str(f) for f in self.coords) + ")"
        return body + (" for " + ", ".join(dom) if dom else "")

    def validate_levi_dominant(self):
        """Check ``a2 >= a3 >= |a4|`` at every point of the domain."""
        _, b, c, d = self.coords
        for f in (b - c, c - d, c + d):
            for var in ("k", "j"):
                if f.coeff(var) < 0:
                    raise ValueError(
                        "Levi-dominance fails for large %s: %s" % (var, self)
                    )
            if f.at(self.kmin or 0, self.jmin or 0) < 0:
                raise ValueError("not Levi-dominant on its domain: %s" % self)


# ---------------------------------------------------------------------------
# outcome containers


@dataclass(frozen=True)
class PointOutcome:
    params: tuple[tuple[str, int], ...]
    result: BBWResult


@dataclass(frozen=True)
class RegionOutcome:
    """A uniform outcome on an unbounded part of the parameter domain."""

    fixed: tuple[tuple[str, int], ...]  # pinned parameters, e.g. (("j", -5),)
    lower: tuple[tuple[str, int], ...]  # lower bounds for the free parameters
    kind: str  # "singular" | "dominant" | "regular"
    degree: int
    dominant: tuple[Aff, Aff, Aff, Aff] | None

    def contains(self, **params) -> bool:
        for name, val in self.fixed:
            if params.get(name) != val:
                return False
        for name, lo in self.lower:
            if params.get(name) is None or params[name] < lo:
                return False
        return True

    def describe(self) -> str:
        parts = ["%s = %d" % kv for kv in self.fixed]
        parts += ["%s >= %d" % kv for kv in self.lower]
        where = ", ".join(parts) if parts else "everywhere"
        if self.kind == "singular":
            return "%s: singular" % where
        if self.kind == "dominant":
            return "%s: dominant (degree 0)" % where
        return "%s: regular, degree %d, dominant (%s)" % (
            where,
            self.degree,
            ", ".join(str(f) for f in self.dominant),
        )

    def result_at(self, **params) -> BBWResult:
        if self.kind == "singular":
            return BBWResult(singular=True)
        dom = Weight(
            tuple(int(2 * f.at(params.get("k", 0), params.get("j", 0))) for f in self.dominant)
        )
        return BBWResult(False, self.degree, dom, weyl_dim_d4(dom))


@dataclass
class AffineBBW:
    """Partition of the domain of an affine weight into points and regions."""

    weight: AffineWeight
    points: list[PointOutcome] = field(default_factory=list)
    regions: list[RegionOutcome] = field(default_factory=list)
    kstar: int = 0

    def outcome_at(self, **params) -> BBWResult:
        key = tuple(sorted((n, v) for n, v in params.items() if v is not None))
        for p in self.points:
            if p.params == key:
                return p.result
        for r in self.regions:
            if r.contains(**params):
                return r.result_at(**params)
        raise KeyError("parameter point %r outside the analysed domain" % (params,))


# ---------------------------------------------------------------------------
# one-parameter executor


class _NeedSplit(Exception):
    def __init__(self, form: Aff):
        self.form = form


def _sign_on(form: Aff, var: str, lo: int, hi: int | None):
    """Sign of an affine form on the integers of [lo, hi]; None if mixed."""
    s = form.coeff(var)
    v_lo = form.at(**{var: lo})
    if s == 0:
        return 0 if v_lo == 0 else (1 if v_lo > 0 else -1)
    if lo == hi:
        return 0 if v_lo == 0 else (1 if v_lo > 0 else -1)
    v_hi = s if hi is None else form.at(**{var: hi})
    if v_lo > 0 and v_hi > 0:
        return 1
    if v_lo < 0 and v_hi < 0:
        return -1
    return None


def _split_interval(lo: int, hi: int | None, form: Aff, var: str):
    """Split [lo, hi] at the crossing of ``form`` into sign-constant pieces."""
    s = form.coeff(var)
    root = -form.subs(**{var: 0}).at() / s
    pieces = []
    if root.denominator == 1:
        r = int(root)
        pieces = [(lo, r - 1), (r, r), (r + 1, hi)]
    else:
        r = root.numerator // root.denominator  # floor
        pieces = [(lo, r), (r + 1, hi)]
    out = []
    for a, b in pieces:
        a = max(a, lo)
        if b is not None and hi is not None:
            b = min(b, hi)
        elif b is None:
            b = hi
        if b is None or a <= b:
            out.append((a, b))
    return out


def _uniform_outcome(coords, var: str, lo: int, hi: int | None):
    """Resolve symbolically on an interval where every needed sign is fixed.

    Returns ("singular", None, None) or ("regular", degree, dominant coords);
    raises _NeedSplit when some sign is not constant on the interval.
    """
    mu = tuple(f + r for f, r in zip(coords, _RHO))
    # singularity screen over the twelve reflection hyperplanes
    for i in range(4):
        for j in range(i + 1, 4):
            for f in (mu[i] - mu[j], mu[i] + mu[j]):
                sgn = _sign_on(f, var, lo, hi)
                if sgn is None:
                    raise _NeedSplit(f)
                if sgn == 0:
                    return ("singular", None, None)
    v = coords
    degree = 0
    for _ in range(13):
        m = tuple(f + r for f, r in zip(v, _RHO))
        pairings = (m[0] - m[1], m[1] - m[2], m[2] - m[3], m[2] + m[3])
        failing = None
        for idx, p in enumerate(pairings, start=1):
            sgn = _sign_on(p, var, lo, hi)
            if sgn is None:
                raise _NeedSplit(p)
            if sgn == 0:
                raise RuntimeError("zero pairing on a screened regular region")
            if sgn < 0:
                failing = idx
                break
        if failing is None:
            return ("regular", degree, v)
        v = _dotted_affine(failing, v)
        degree += 1
    raise Inconclusive("more than 12 symbolic reflections on %s >= %d" % (var, lo))


def _dotted_affine(i: int, v):
    a, b, c, d = v
    if i == 1:
        return (b - 1, a + 1, c, d)
    if i == 2:
        return (a, c - 1, b + 1, d)
    if i == 3:
        return (a, b, d - 1, c + 1)
    return (a, b, -d - 1, -c - 1)


def _resolve_1param(coords, var: str, lo: int, fixed=(), concrete_floor: int | None = None):
    """Points and the unbounded tail region for a one-parameter weight."""
    points, regions = [], []
    stack = [(lo, None)]
    while stack:
        a, b = stack.pop()
        if b is not None and a > b:
            continue
        if a == b:
            res = bbw_resolve(_eval_coords(coords, var, a))
            points.append((a, res))
            continue
        try:
            kind, degree, dom = _uniform_outcome(coords, var, a, b)
        except _NeedSplit as e:
            for piece in _split_interval(a, b, e.form, var):
                stack.append(piece)
            continue
        if b is None:
            regions.append((a, kind, degree, dom))
        else:
            # bounded uniform piece: record its finitely many points explicitly
            for t in range(a, b + 1):
                points.append((t, bbw_resolve(_eval_coords(coords, var, t))))
    assert len(regions) == 1, "interval analysis must end in a single tail"
    tail_lo, kind, degree, dom = regions[0]
    if concrete_floor is not None and concrete_floor > tail_lo:
        for t in range(tail_lo, concrete_floor):
            points.append((t, bbw_resolve(_eval_coords(coords, var, t))))
        tail_lo = concrete_floor
    points.sort(key=lambda p: p[0])
    out_points = [
        PointOutcome(tuple(sorted(fixed + ((var, t),))), res) for t, res in points
    ]
    region = RegionOutcome(
        fixed=tuple(sorted(fixed)),
        lower=((var, tail_lo),),
        kind="dominant" if (kind == "regular" and degree == 0) else kind,
        degree=degree or 0,
        dominant=None if kind == "singular" else dom,
    )
    return out_points, region


def _eval_coords(coords, var: str, value: int) -> Weight:
    return Weight(tuple(int(2 * f.at(**{var: value})) for f in coords))


# ---------------------------------------------------------------------------
# public entry point


def bbw_resolve_affine(w: AffineWeight, kmax_concrete: int = 0) -> AffineBBW:
    """Resolve an affine weight over its whole parameter domain.

    One free parameter is handled by exact interval splitting.  With two
    parameters, the second (``j``) must enter only the first coordinate and
    every comparison form must grow in both parameters; the ``j``-range then
    splits into finitely many strips below a computed threshold, each a
    one-parameter problem, plus a uniformly dominant tail.  ``kmax_concrete``
    forces parameter points with ``k`` below it out of the tail region and
    into the explicit list.
    """
    w.validate_levi_dominant()
    names = w.vars
    if not names:
        res = bbw_resolve(w.at())
        return AffineBBW(w, points=[PointOutcome((), res)], kstar=0)
    if len(names) == 1:
        var = names[0]
        lo = w.kmin if var == "k" else w.jmin
        if lo is None:
            raise ValueError("missing domain bound for %s" % var)
        floor = kmax_concrete if var == "k" else None
        points, region = _resolve_1param(w.coords, var, lo, concrete_floor=floor)
        kstar = dict(region.lower).get("k", 0)
        return AffineBBW(w, points=points, regions=[region], kstar=kstar)
    return _resolve_2param(w, kmax_concrete)


def _resolve_2param(w: AffineWeight, kmax_concrete: int) -> AffineBBW:
    if w.kmin is None or w.jmin is None:
        raise ValueError("two-parameter weight needs both domain bounds")
    for f in w.coords[1:]:
        if f.cj != 0:
            raise Inconclusive(
                "second parameter appears outside the first coordinate: %s" % w
            )
    mu = tuple(f + r for f, r in zip(w.coords, _RHO))
    jstar = w.jmin
    for i in (1, 2, 3):
        for form in (mu[0] - mu[i], mu[0] + mu[i]):
            if form.cj <= 0 or form.ck < 0:
                raise Inconclusive("comparison form %s not monotone in the domain" % form)
            # least integer J with form > 0 for all k >= kmin, j >= J
            bound = (-form.c - form.ck * w.kmin) / form.cj
            jstar = max(jstar, bound.numerator // bound.denominator + 1)
    points: list[PointOutcome] = []
    regions: list[RegionOutcome] = []
    kstar = max(kmax_concrete, w.kmin)
    for jv in range(w.jmin, jstar):
        strip = w.subs(j=jv)
        strip_points, strip_region = _resolve_1param(
            strip.coords, "k", w.kmin, fixed=(("j", jv),), concrete_floor=kmax_concrete
        )
        points.extend(strip_points)
        regions.append(strip_region)
        kstar = max(kstar, dict(strip_region.lower)["k"])
    regions.append(
        RegionOutcome(
            fixed=(),
            lower=(("j", jstar), ("k", w.kmin)),
            kind="dominant",
            degree=0,
            dominant=w.coords,
        )
    )
    return AffineBBW(w, points=points, regions=regions, kstar=kstar)

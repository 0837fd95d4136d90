"""GL(4) highest-weight combinatorics and bundle expressions on the quadric.

Irreducible homogeneous bundles on the six-quadric (the space of isotropic
lines in an eight-dimensional quadratic space) restrict to irreducible
representations of a GL(4) sitting inside the Levi factor of the parabolic.
Tensor products are therefore governed by the Littlewood-Richardson rule
for GL(4); the resulting highest weights translate back to lattice weights
through the involutive half-integer matrix

    phi = 1/2 * [[ 1,  1,  1,  1],
                 [ 1,  1, -1, -1],
                 [ 1, -1,  1, -1],
                 [ 1, -1, -1,  1]]

together with a line-bundle twist that only moves the first coordinate.
The generators are ``O(t)``, the spinor bundle ``S`` (GL-weight (1,0,0,0),
twist -1), its dual ``Sv`` ((0,0,0,-1), twist +1) and symmetric powers of
either, with one symmetric-power exponent allowed to stay symbolic.

Symbolic decompositions exploit one-row stabilisation: the multiset of
"offsets" ``c - k*e1`` of the GL weights appearing in ``Sym^k x (small)``
is eventually independent of ``k``.  It is computed at ``k = 4`` and
re-checked at ``k = 5`` (four exceeds the box count of every admissible
small factor), and the grades below the threshold are decomposed one by
one, so the answer is self-verifying.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .affine import Aff, aff
from .weights import Weight

GL = tuple[int, int, int, int]


class StabilityFailure(RuntimeError):
    """The symbolic symmetric-power decomposition did not stabilise."""


class ExprError(ValueError):
    """Malformed bundle expression."""


# ---------------------------------------------------------------------------
# GL(4) weights


def gl_weight(*parts) -> GL:
    if len(parts) == 1 and not isinstance(parts[0], int):
        parts = tuple(parts[0])
    t = tuple(int(p) for p in parts)
    if len(t) != 4 or any(t[i] < t[i + 1] for i in range(3)):
        raise ValueError("a GL(4) weight is a weakly decreasing integer 4-tuple: %r" % (t,))
    return t


def gl_dim(a: GL) -> int:
    """Dimension of the irreducible GL(4) representation with weight ``a``."""
    d = Fraction(1)
    for i in range(4):
        for j in range(i + 1, 4):
            d *= Fraction(a[i] - a[j] + j - i, j - i)
    assert d.denominator == 1
    return int(d)


def _lr_tableaux(inner: GL, content: GL):
    """Yield outer shapes (with multiplicity) of LR skew tableaux.

    ``inner`` and ``content`` are partitions with at most four parts.  Each
    tableau is built by stacking horizontal strips of the values 1..4; the
    resulting filling is column-strict by construction, and the reverse
    reading word is checked against the ballot condition.
    """
    rows0 = [list() for _ in range(4)]

    def place(v, shapes, rows):
        # distribute content[v] boxes of value v+1 as a horizontal strip
        n = content[v]
        cur = shapes[-1]

        def rec(r, remaining, new_shape):
            if r == 4:
                if remaining == 0:
                    yield tuple(new_shape)
                return
            hi = remaining
            if r > 0:
                hi = min(hi, max(0, shapes[-1][r - 1] - cur[r]))  # strip condition
            for take in range(hi + 1):
                length = cur[r] + take
                if r > 0 and length > new_shape[r - 1]:
                    break
                yield from rec(r + 1, remaining - take, new_shape + [length])

        for shape in rec(0, n, []):
            new_rows = [rows[r] + [v + 1] * (shape[r] - cur[r]) for r in range(4)]
            yield shape, new_rows

    def walk(v, shapes, rows):
        if v == 4:
            if _ballot(rows):
                yield shapes[-1]
            return
        for shape, new_rows in place(v, shapes, rows):
            yield from walk(v + 1, shapes + [shape], new_rows)

    yield from walk(0, [inner], rows0)


def _ballot(rows) -> bool:
    """Ballot condition on the reverse reading word (rows top-down, right-left)."""
    counts = [0] * 5
    for row in rows:
        for v in reversed(row):
            counts[v] += 1
            if v > 1 and counts[v] > counts[v - 1]:
                return False
    return True


@lru_cache(maxsize=None)
def lr_decompose(a: GL, b: GL) -> tuple[tuple[GL, int], ...]:
    """Littlewood-Richardson decomposition of ``V_a (x) V_b`` for GL(4).

    Negative entries are handled by twisting with a power of the determinant
    character ``(1,1,1,1)``, computing with genuine partitions, and twisting
    back.  Returns sorted ``(weight, multiplicity)`` pairs.
    """
    sa = -min(min(a), 0)
    sb = -min(min(b), 0)
    pa = tuple(x + sa for x in a)
    pb = tuple(x + sb for x in b)
    out: dict[GL, int] = {}
    for shape in _lr_tableaux(pa, pb):
        c = tuple(x - sa - sb for x in shape)
        out[c] = out.get(c, 0) + 1
    return tuple(sorted(out.items()))


def phi(a: GL) -> Weight:
    """Translate a GL(4) weight into a lattice weight (doubled coordinates)."""
    a1, a2, a3, a4 = a
    return Weight(
        (a1 + a2 + a3 + a4, a1 + a2 - a3 - a4, a1 - a2 + a3 - a4, a1 - a2 - a3 + a4)
    )


# ---------------------------------------------------------------------------
# bundle expressions


@dataclass(frozen=True)
class BundleExpr:
    """Formal tensor product of irreducible factors on the six-quadric.

    ``gl`` collects the concrete GL(4) factors (the total twist has been
    separated out), ``twist`` is the accumulated line-bundle twist, affine
    in the parameters ``k`` and ``j``, and ``sym`` marks one optional
    symbolic factor ``Sym^k S`` or ``Sym^k Sv``.
    """

    gl: tuple[GL, ...] = ()
    twist: Aff = Aff()
    sym: str | None = None
    label: str = field(default="", compare=False)

    def __mul__(self, other: "BundleExpr") -> "BundleExpr":
        if self.sym and other.sym:
            raise ExprError("at most one symbolic symmetric power per expression")
        return BundleExpr(
            tuple(sorted(self.gl + other.gl)),
            self.twist + other.twist,
            self.sym or other.sym,
            label=_join(self.label, other.label),
        )

    @property
    def is_concrete(self) -> bool:
        return self.sym is None and self.twist.is_const

    def dual(self) -> "BundleExpr":
        return BundleExpr(
            tuple(sorted(tuple(-x for x in reversed(g)) for g in self.gl)),
            -self.twist,
            {None: None, "S": "Sv", "Sv": "S"}[self.sym],
            label="dual(%s)" % self.display() if self.label else "",
        )

    def at(self, k=None, j=None) -> "BundleExpr":
        """Substitute parameter values; ``k`` expands the symbolic factor."""
        gl, sym = self.gl, self.sym
        twist = self.twist.subs(k=k, j=j)
        if sym is not None and k is not None:
            if k < 0:
                raise ExprError("negative symmetric power")
            if k > 0:
                row = (k, 0, 0, 0) if sym == "S" else (0, 0, 0, -k)
                gl = tuple(sorted(gl + (row,)))
            sym = None
        return BundleExpr(gl, twist, sym, label=self.label)

    def rank(self) -> int:
        if not self.is_concrete:
            raise ExprError("rank of a symbolic expression")
        r = 1
        for g in self.gl:
            r *= gl_dim(g)
        return r

    def display(self) -> str:
        if self.label:
            return self.label
        parts = []
        if self.sym:
            parts.append("Sym^k(%s)" % self.sym)
        parts += ["F[%d,%d,%d,%d]" % g for g in self.gl]
        if not self.twist.is_const or self.twist.c != 0 or not parts:
            parts.append("O(%s)" % self.twist)
        return " * ".join(parts)

    def __str__(self):
        return self.display()


def _join(a: str, b: str) -> str:
    if a and b:
        return "%s * %s" % (a, b)
    return a or b


def O(t) -> BundleExpr:
    a = t if isinstance(t, Aff) else Aff.const(t)
    return BundleExpr((), a, None, label="O(%s)" % a)


def S() -> BundleExpr:
    return BundleExpr(((1, 0, 0, 0),), Aff.const(-1), None, label="S")


def Sv() -> BundleExpr:
    return BundleExpr(((0, 0, 0, -1),), Aff.const(1), None, label="Sv")


def sym_power(exponent, base: BundleExpr) -> BundleExpr:
    """``Sym^n`` of a single generator; ``exponent`` may be the symbol ``"k"``."""
    if len(base.gl) > 1 or base.sym is not None:
        raise ExprError("symmetric powers are only taken of a single generator")
    if exponent == "k":
        if not base.twist.is_const:
            raise ExprError("symbolic symmetric power of a symbolic twist")
        if base.gl == ((1, 0, 0, 0),):
            kind = "S"
        elif base.gl == ((0, 0, 0, -1),):
            kind = "Sv"
        elif base.gl == ():
            return O(aff(ck=base.twist.c))
        else:
            raise ExprError("unsupported base for a symbolic symmetric power")
        return BundleExpr((), aff(ck=base.twist.c), kind,
                          label="Sym^k(%s)" % base.display())
    n = int(exponent)
    if n < 0:
        raise ExprError("negative symmetric power")
    label = "Sym^%d(%s)" % (n, base.display())
    if base.gl == ():
        return BundleExpr((), base.twist * n, None, label=label)
    if n == 0:
        return BundleExpr((), Aff(), None, label=label)
    row = (n, 0, 0, 0) if base.gl == ((1, 0, 0, 0),) else (0, 0, 0, -n)
    return BundleExpr((row,), base.twist * n, None, label=label)


# ---------------------------------------------------------------------------
# expression grammar:  EXPR := TERM ('*' TERM)*
#                      TERM := 'O(' AFFINE ')' | 'S' | 'Sv'
#                            | 'Sym^' (INT|'k') '(' TERM ')' | 'dual(' EXPR ')'

_TOKEN = re.compile(r"(Sym\^|dual\(|O\(|O|Sv|S|[kj()*+-]|\d+)")


def _tokenize(text: str):
    text = re.sub(r"\s+", "", text)
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError("cannot tokenise %r at position %d" % (text, pos))
        out.append(m.group(1))
        pos = m.end()
    return out


def _parse_affine(tokens, i):
    """Parse a sum of terms like ``2k``, ``j``, ``-1`` starting at ``i``."""
    total = Aff()
    sign = 1
    expect_term = True
    while i < len(tokens):
        t = tokens[i]
        if t == "+":
            sign, i, expect_term = 1, i + 1, True
            continue
        if t == "-":
            sign, i, expect_term = -sign if expect_term else -1, i + 1, True
            continue
        if t.isdigit():
            n = int(t)
            if i + 1 < len(tokens) and tokens[i + 1] in ("k", "j"):
                total += aff(**{"c" + tokens[i + 1]: sign * n})
                i += 2
            else:
                total += Aff.const(sign * n)
                i += 1
            sign, expect_term = 1, False
            continue
        if t in ("k", "j"):
            total += aff(**{"c" + t: sign})
            i += 1
            sign, expect_term = 1, False
            continue
        break
    return total, i


def _parse_term(tokens, i):
    t = tokens[i]
    if t == "O(":
        a, i = _parse_affine(tokens, i + 1)
        if tokens[i] != ")":
            raise ExprError("expected ')' in O(...)")
        return O(a), i + 1
    if t == "O":
        return O(0), i + 1
    if t == "S":
        return S(), i + 1
    if t == "Sv":
        return Sv(), i + 1
    if t == "Sym^":
        exp = tokens[i + 1]
        if exp != "k" and not exp.isdigit():
            raise ExprError("symmetric power exponent must be an integer or 'k'")
        if tokens[i + 2] != "(":
            raise ExprError("expected '(' after Sym^%s" % exp)
        base, i = _parse_term(tokens, i + 3)
        if tokens[i] != ")":
            raise ExprError("expected ')' closing Sym")
        return sym_power(exp if exp == "k" else int(exp), base), i + 1
    if t == "dual(":
        e, i = _parse_expr(tokens, i + 1)
        if tokens[i] != ")":
            raise ExprError("expected ')' closing dual")
        return e.dual(), i + 1
    raise ExprError("unexpected token %r" % t)


def _parse_expr(tokens, i):
    e, i = _parse_term(tokens, i)
    while i < len(tokens) and tokens[i] == "*":
        f, i = _parse_term(tokens, i + 1)
        e = e * f
    return e, i


def parse_expr(text: str) -> BundleExpr:
    """Parse the expression grammar, e.g. ``Sym^k(S)*S*O(2k+j)``."""
    tokens = _tokenize(text)
    try:
        e, i = _parse_expr(tokens, 0)
    except IndexError:
        raise ExprError("unexpected end of expression in %r" % text) from None
    if i != len(tokens):
        raise ExprError("trailing tokens in %r" % text)
    return e


# ---------------------------------------------------------------------------
# decomposition into irreducible weights


def _lr_fold(parts) -> dict[GL, int]:
    acc = {(0, 0, 0, 0): 1}
    for p in parts:
        nxt: dict[GL, int] = {}
        for c, m in acc.items():
            for d, m2 in lr_decompose(c, p):
                nxt[d] = nxt.get(d, 0) + m * m2
        acc = nxt
    return acc


def decompose(e: BundleExpr) -> list[tuple[Weight, int]]:
    """Decompose a concrete expression into ``(weight, multiplicity)`` pairs."""
    if not e.is_concrete:
        raise ExprError("decompose needs a concrete expression: %s" % e)
    t = e.twist.c
    if t.denominator != 1:
        raise ExprError("non-integral twist %s" % e.twist)
    shift = Weight((2 * int(t), 0, 0, 0))
    out: dict[Weight, int] = {}
    for c, m in sorted(_lr_fold(e.gl).items()):
        w = phi(c) + shift
        out[w] = out.get(w, 0) + m
    return sorted(out.items())


@dataclass
class AffineDecomposition:
    """Symbolic decomposition of ``Sym^k S (x) small`` with threshold data.

    ``families`` hold affine weights valid for every ``k >= k0_stable``;
    grades below that are listed concretely in ``low`` (the entries stay
    affine in ``j`` when the twist involves it).
    """

    expr: BundleExpr
    families: list[tuple[tuple[Aff, Aff, Aff, Aff], int]]
    k0_stable: int
    low: dict[int, list[tuple[tuple[Aff, Aff, Aff, Aff], int]]]
    uses_j: bool

    def concrete_at(self, k: int) -> list[tuple[tuple[Aff, Aff, Aff, Aff], int]]:
        if k < self.k0_stable:
            return self.low[k]
        return [
            (tuple(f.subs(k=k) for f in coords), m) for coords, m in self.families
        ]


_STABLE_K = 4


def decompose_affine(e: BundleExpr) -> AffineDecomposition:
    """Decompose an expression with one symbolic ``Sym^k S`` factor.

    The remaining factors must be spinor generators (at most two) and line
    bundles.  Offsets are read off at ``k = 4`` and verified at ``k = 5``;
    disagreement raises :class:`StabilityFailure`.
    """
    if e.sym != "S":
        raise ExprError("decompose_affine expects one symbolic Sym^k(S) factor")
    if len(e.gl) > 2 or any(g not in ((1, 0, 0, 0), (0, 0, 0, -1)) for g in e.gl):
        raise ExprError("small factors must be spinor generators, at most two")

    def offsets(k: int):
        out = {}
        for c, m in _lr_fold(((k, 0, 0, 0),) + e.gl).items():
            off = (c[0] - k, c[1], c[2], c[3])
            out[off] = out.get(off, 0) + m
        return out

    stable = offsets(_STABLE_K)
    if stable != offsets(_STABLE_K + 1):
        raise StabilityFailure("offset multisets at k=4 and k=5 differ for %s" % e)

    def coords_for(c_gl, twist: Aff):
        ph = phi(c_gl).coords  # exact fractions
        base = [Aff.const(x) for x in ph]
        base[0] = base[0] + twist
        return tuple(base)

    families = []
    for off, m in sorted(stable.items()):
        ph = phi(off).coords
        coords = tuple(
            aff(ck=Fraction(1, 2)) + Aff.const(x) for x in ph
        )
        coords = (coords[0] + e.twist, coords[1], coords[2], coords[3])
        families.append((coords, m))
    low = {}
    for k in range(0, _STABLE_K):
        twist_k = e.twist.subs(k=k)
        entries: dict[tuple, int] = {}
        for c, m in sorted(_lr_fold(e.at(k=k).gl).items()):
            coords = coords_for(c, twist_k)
            entries[coords] = entries.get(coords, 0) + m
        low[k] = sorted(
            entries.items(), key=lambda kv: tuple((f.ck, f.cj, f.c) for f in kv[0])
        )
    return AffineDecomposition(
        expr=e,
        families=families,
        k0_stable=_STABLE_K,
        low=low,
        uses_j=e.twist.cj != 0,
    )


def symmetric_power_rank(k: int) -> int:
    """Rank of the k-th symmetric power of a rank-4 bundle."""
    return comb(k + 3, 3)

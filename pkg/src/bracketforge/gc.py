"""Symbolic Grassmann-Cayley algebra over a 3-space on point symbols.

Two representation layers:

* BracketCombo - a formal Q-linear combination of products of brackets
  [i j k] on point symbols.  This layer keeps the shape in which such
  polynomials are usually printed and is the working representation for the
  meet/join calculus and the rewriting procedure.
* BracketPoly (from .poly) - the fully expanded polynomial in the matrix
  variables.  Two formally different bracket combinations can expand to the
  same polynomial (bracket syzygies), so canonical comparison and evaluation
  happen at this layer.

Grades are the exterior-algebra grades in dimension 3: points are grade 1,
lines (2-extensors) grade 2, scalars grade 0.  Meet is implemented for the
one case needed in rank 3: two lines meet in the grade-1 expression
ab ^ cd = [a b c] d - [a b d] c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from .config import Config
from .poly import BracketPoly, bracket

# A bracket triple is stored sorted ascending; a combo monomial is a sorted
# tuple of such triples.
Triple = tuple
ComboMono = tuple


class GradeError(ValueError):
    pass


def _sort_triple(a: int, b: int, c: int) -> tuple[Optional[Triple], int]:
    """Canonical (sorted triple, permutation sign); (None, 0) if repeated."""
    if a == b or a == c or b == c:
        return None, 0
    t = (a, b, c)
    s = sorted(t)
    sign = 1
    # parity of the permutation taking t to sorted order
    perm = [s.index(v) for v in t]
    for i in range(3):
        for j in range(i + 1, 3):
            if perm[i] > perm[j]:
                sign = -sign
    return tuple(s), sign


class BracketCombo:
    """Formal Q-linear combination of products of point brackets."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self.terms = clean

    @staticmethod
    def zero() -> "BracketCombo":
        return BracketCombo()

    @staticmethod
    def const(c) -> "BracketCombo":
        c = Fraction(c)
        return BracketCombo({(): c} if c else {})

    @staticmethod
    def of_bracket(a: int, b: int, c: int) -> "BracketCombo":
        t, sign = _sort_triple(a, b, c)
        if t is None:
            return BracketCombo()
        return BracketCombo({(t,): Fraction(sign)})

    def __add__(self, other: "BracketCombo") -> "BracketCombo":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return BracketCombo(out)

    def __neg__(self) -> "BracketCombo":
        return BracketCombo({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "BracketCombo") -> "BracketCombo":
        return self + (-other)

    def __mul__(self, other: "BracketCombo") -> "BracketCombo":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return BracketCombo(out)

    def scale(self, c) -> "BracketCombo":
        c = Fraction(c)
        return BracketCombo({m: c * k for m, k in self.terms.items()}) if c else BracketCombo()

    def is_zero(self) -> bool:
        return not self.terms

    def points(self) -> set[int]:
        return {p for m in self.terms for t in m for p in t}

    def __eq__(self, other) -> bool:
        return isinstance(other, BracketCombo) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sign_normalized(self) -> "BracketCombo":
        if not self.terms:
            return self
        lead = min(self.terms)
        return -self if self.terms[lead] < 0 else self

    def expand(self) -> BracketPoly:
        out = BracketPoly.zero()
        for m, c in self.terms.items():
            term = BracketPoly.const(c)
            for t in m:
                term = term * bracket(*t)
            out = out + term
        return out

    def eval(self, gamma) -> Fraction:
        return self.expand().eval(gamma)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            body = "".join("[" + " ".join(map(str, t)) + "]" for t in m) or "1"
            lead = body if abs(c) == 1 and m else f"{abs(c)}*{body}"
            parts.append(("- " if c < 0 else "+ ") + lead)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"BracketCombo({self.to_text()})"


def parse_bracket_text(text: str) -> BracketCombo:
    """Parse forms like "[153][142]-[154][132]" (single-digit points)."""
    out = BracketCombo.zero()
    term = None
    sign = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in "+- ":
            if ch in "+-" and term is not None:
                out = out + term.scale(sign)
                term = None
            if ch == "-":
                sign = -1
            elif ch == "+":
                sign = 1
            i += 1
        elif ch == "[":
            j = text.index("]", i)
            digits = [int(d) for d in text[i + 1 : j] if d.strip()]
            if len(digits) != 3:
                raise ValueError(f"bad bracket in {text!r}")
            b = BracketCombo.of_bracket(*digits)
            term = b if term is None else term * b
            i = j + 1
        else:
            raise ValueError(f"unexpected character {ch!r} in {text!r}")
    if term is not None:
        out = out + term.scale(sign)
    return out


# ---------------------------------------------------------------------------
# Graded expressions


@dataclass(frozen=True)
class GCExpr:
    """Formal linear combination of grade-k extensors on point symbols.

    terms maps a sorted tuple of k distinct points to a BracketCombo
    coefficient; grade-0 expressions use the empty tuple.
    """

    grade: int
    terms: tuple  # tuple of (symbol tuple, BracketCombo) pairs, sorted

    @staticmethod
    def make(grade: int, mapping: dict) -> "GCExpr":
        items = tuple(sorted((k, v) for k, v in mapping.items() if not v.is_zero()))
        return GCExpr(grade, items)

    def mapping(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms


def point_expr(p: int) -> GCExpr:
    return GCExpr.make(1, {(p,): BracketCombo.const(1)})


def line_expr(a: int, b: int) -> GCExpr:
    if a == b:
        raise GradeError("a line needs two distinct points")
    sign = 1 if a < b else -1
    return GCExpr.make(2, {tuple(sorted((a, b))): BracketCombo.const(sign)})


def _merge_symbols(s1: Sequence[int], s2: Sequence[int]):
    merged = list(s1) + list(s2)
    if len(set(merged)) < len(merged):
        return None, 0
    sign = 1
    order = sorted(range(len(merged)), key=lambda i: merged[i])
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                sign = -sign
    return tuple(sorted(merged)), sign


def join(a: GCExpr, b: GCExpr) -> GCExpr:
    """Exterior product; grade-3 results collapse to scalar brackets."""
    g = a.grade + b.grade
    if g > 3:
        raise GradeError(f"join of grades {a.grade} and {b.grade} exceeds 3")
    out: dict = {}
    for s1, c1 in a.terms:
        for s2, c2 in b.terms:
            sym, sign = _merge_symbols(s1, s2)
            if sym is None:
                continue
            coeff = (c1 * c2).scale(sign)
            if g == 3:
                coeff = coeff * BracketCombo.of_bracket(*sym)
                sym = ()
            if sym in out:
                out[sym] = out[sym] + coeff
            else:
                out[sym] = coeff
    return GCExpr.make(0 if g == 3 else g, out)


def meet(a: GCExpr, b: GCExpr) -> GCExpr:
    """Meet of two lines: ab ^ cd = [a b c] d - [a b d] c, bilinear."""
    if a.grade != 2 or b.grade != 2:
        raise GradeError("meet is implemented for two grade-2 expressions")
    out: dict = {}
    for (x, y), c1 in a.terms:
        for (u, v), c2 in b.terms:
            for sym, other, sgn in (((u,), v, 1), ((v,), u, -1)):
                coeff = (c1 * c2 * BracketCombo.of_bracket(x, y, other)).scale(sgn)
                key = sym
                if key in out:
                    out[key] = out[key] + coeff
                else:
                    out[key] = coeff
    return GCExpr.make(1, out)


def flatten(e: GCExpr) -> BracketCombo:
    if e.grade != 0:
        raise GradeError("only grade-0 expressions flatten to a scalar")
    total = BracketCombo.zero()
    for _, c in e.terms:
        total = total + c
    return total


def concurrency_combo(l1: Sequence[int], l2: Sequence[int], l3: Sequence[int]) -> BracketCombo:
    """(l1 ^ l2) v l3, each line given by two distinct chosen points."""
    for l in (l1, l2, l3):
        if len(l) != 2 or l[0] == l[1]:
            raise GradeError(f"degenerate line spec {tuple(l)}")
    return flatten(join(meet(line_expr(*l1), line_expr(*l2)), line_expr(*l3)))


def concurrency_poly(l1: Sequence[int], l2: Sequence[int], l3: Sequence[int]) -> BracketPoly:
    """Polynomial vanishing whenever the three realized lines are concurrent."""
    return concurrency_combo(l1, l2, l3).expand()


# ---------------------------------------------------------------------------
# Rewriting: replace a point by the meet of two lines through it


def _check_rewrite_args(x: int, l1_pts: Sequence[int], l2_pts: Sequence[int]):
    p1, p2 = l1_pts
    p3, p4 = l2_pts
    pts = (p1, p2, p3, p4)
    if len(set(pts)) < 4 or x in pts:
        raise ValueError("rewrite needs four distinct points, none equal to x")
    if {p1, p2} == {p3, p4}:
        raise ValueError("the two lines of a rewrite must be distinct")
    return p1, p2, p3, p4


def gm_rewrite_combo(
    combo: BracketCombo, x: int, l1_pts: Sequence[int], l2_pts: Sequence[int]
) -> BracketCombo:
    """Replace x by [p1 p2 p3] p4 - [p1 p2 p4] p3 in every bracket of combo."""
    p1, p2, p3, p4 = _check_rewrite_args(x, l1_pts, l2_pts)
    if x not in combo.points():
        raise ValueError(f"point {x} does not occur in the combination")
    plus = BracketCombo.of_bracket(p1, p2, p3)
    minus = BracketCombo.of_bracket(p1, p2, p4)
    out = BracketCombo.zero()
    for m, c in combo.terms.items():
        acc = BracketCombo.const(c)
        for t in m:
            if x in t:
                rest = [p for p in t if p != x]
                pos = t.index(x)
                sign = (-1) ** pos  # move x to the front
                b = (
                    plus * BracketCombo.of_bracket(p4, *rest)
                    - minus * BracketCombo.of_bracket(p3, *rest)
                ).scale(sign)
            else:
                b = BracketCombo({(t,): Fraction(1)})
            acc = acc * b
        out = out + acc
    return out


def gm_rewrite(
    p: BracketPoly, x: int, l1_pts: Sequence[int], l2_pts: Sequence[int]
) -> BracketPoly:
    """Variable-level substitution of column x by the meet of two lines.

    Each variable x[r, x] is replaced by the r-th coordinate polynomial of
    [p1 p2 p3] gamma_{p4} - [p1 p2 p4] gamma_{p3} and the result re-expanded.
    """
    p1, p2, p3, p4 = _check_rewrite_args(x, l1_pts, l2_pts)
    if x not in p.columns():
        raise ValueError(f"column {x} does not occur in the polynomial")
    plus = bracket(p1, p2, p3)
    minus = bracket(p1, p2, p4)
    repl = {
        row: plus * BracketPoly.variable(("x", p4, row))
        - minus * BracketPoly.variable(("x", p3, row))
        for row in range(3)
    }
    out = BracketPoly.zero()
    for mono, coeff in p.terms.items():
        term = BracketPoly.const(coeff)
        for v, e in mono:
            factor = repl[v[2]] if (v[0] == "x" and v[1] == x) else BracketPoly.variable(v)
            for _ in range(e):
                term = term * factor
        out = out + term
    return out


def rewrite_choices(cfg: Config, points: Iterable[int]):
    """All (x, l1-pair, l2-pair) rewrite choices for the given points."""
    for x in points:
        through = cfg.lines_through(x)
        for l1, l2 in combinations(through, 2):
            for p1, p2 in combinations([p for p in l1 if p != x], 2):
                for p3, p4 in combinations([p for p in l2 if p != x], 2):
                    if len({p1, p2, p3, p4}) == 4:
                        yield x, (p1, p2), (p3, p4)


DEFAULT_TERM_CEILING = 64


def circuit_combos(cfg: Config) -> list[BracketCombo]:
    return [BracketCombo.of_bracket(*sorted(c)) for c in sorted(cfg.circuits3(), key=sorted)]


def gm_generators(
    cfg: Config, depth: int, term_ceiling: int = DEFAULT_TERM_CEILING
) -> list[BracketCombo]:
    """Bounded rewrite orbit of the circuit brackets.

    Stage 0 is the circuit brackets; each later stage applies every single
    point rewrite (point x replaced via a pair of distinct configuration
    lines through it) to the previous stage.  Results are deduplicated up to
    sign; combinations exceeding term_ceiling terms are dropped.  Returns
    the union of all stages up to depth.
    """
    cfg._require_simple()
    stage = circuit_combos(cfg)
    seen = {c.sign_normalized() for c in stage}
    collected = list(stage)
    for _ in range(depth):
        nxt = []
        for combo in stage:
            for x, l1p, l2p in rewrite_choices(cfg, sorted(combo.points())):
                if x not in combo.points():
                    continue
                r = gm_rewrite_combo(combo, x, l1p, l2p)
                if r.is_zero() or len(r.terms) > term_ceiling:
                    continue
                key = r.sign_normalized()
                if key not in seen:
                    seen.add(key)
                    nxt.append(r)
        collected.extend(nxt)
        stage = nxt
        if not stage:
            break
    return collected

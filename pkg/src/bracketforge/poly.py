"""Sparse multivariate polynomials over Q in generic matrix entries.

A configuration on d points is realized by a 3 x d matrix whose entries are
the variables x[r,c] (row r in 0..2, column c in 1..d).  Polynomials may also
mention the three coordinates q1..q3 of one extra symbolic vector.  The main
constructor is `bracket`, the fully expanded 3 x 3 determinant of chosen
columns.

Variables are keyed for sorting by (column, row) with the q vector last, and
monomials are compared graded-lex, so every polynomial has one canonical
serialized form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Optional, Sequence, Union

from .linalg import Realization, Vec3, det_exact, vec3

# A variable is ("x", col, row) or ("q", row).
Var = tuple
# A monomial maps variables to positive integer exponents; stored as a
# sorted tuple of (var, exp) pairs.
Monomial = tuple


def _var_key(v: Var):
    if v[0] == "x":
        return (0, v[1], v[2])
    return (1, 0, v[1])


def _mono_key(m: Monomial):
    degree = sum(e for _, e in m)
    return (degree, tuple((_var_key(v), e) for v, e in m))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    exps: dict = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda p: _var_key(p[0])))


def var_str(v: Var) -> str:
    if v[0] == "x":
        return f"x[{v[2]},{v[1]}]"
    return f"q{v[1] + 1}"


class BracketPoly:
    """Immutable sparse polynomial over Q; zero polynomial has no terms."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Fraction]] = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self.terms = clean

    # -- construction --------------------------------------------------

    @staticmethod
    def zero() -> "BracketPoly":
        return BracketPoly()

    @staticmethod
    def const(c) -> "BracketPoly":
        c = Fraction(c)
        return BracketPoly({(): c} if c else {})

    @staticmethod
    def variable(v: Var) -> "BracketPoly":
        return BracketPoly({((v, 1),): Fraction(1)})

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "BracketPoly") -> "BracketPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return BracketPoly(out)

    def __neg__(self) -> "BracketPoly":
        return BracketPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "BracketPoly") -> "BracketPoly":
        return self + (-other)

    def __mul__(self, other: "BracketPoly") -> "BracketPoly":
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return BracketPoly(out)

    def scale(self, c) -> "BracketPoly":
        c = Fraction(c)
        if not c:
            return BracketPoly()
        return BracketPoly({m: c * k for m, k in self.terms.items()})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def nterms(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e for _, e in m) for m in self.terms)

    def variables(self) -> set:
        out: set = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    def mentions_q(self) -> bool:
        return any(v[0] == "q" for v in self.variables())

    def columns(self) -> set:
        return {v[1] for v in self.variables() if v[0] == "x"}

    def __eq__(self, other) -> bool:
        return isinstance(other, BracketPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def eq_up_to_sign(self, other: "BracketPoly") -> bool:
        return self == other or self == -other

    def leading_coeff(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        m = max(self.terms, key=_mono_key)
        return self.terms[m]

    def sign_normalized(self) -> "BracketPoly":
        """Negated if needed so the graded-lex leading coefficient is > 0."""
        return -self if self.leading_coeff() < 0 else self

    # -- evaluation --------------------------------------------------------

    def eval(self, gamma: Realization, q: Optional[Vec3] = None) -> Fraction:
        if q is None and self.mentions_q():
            raise ValueError("polynomial mentions q but no q value given")

        def value(v: Var) -> Fraction:
            if v[0] == "x":
                return gamma.col(v[1])[v[2]]
            return q[v[1]]

        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= value(v) ** e
            total += t
        return total

    # -- printing ----------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_mono_key, reverse=True):
            c = self.terms[m]
            factors = []
            for v, e in m:
                factors.append(var_str(v) + (f"^{e}" if e > 1 else ""))
            body = "*".join(factors) if factors else "1"
            if abs(c) == 1 and factors:
                lead = body
            else:
                lead = f"{abs(c)}*{body}" if factors else str(abs(c))
            parts.append(("- " if c < 0 else "+ ") + lead)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"BracketPoly({self.to_text()})"


# ---------------------------------------------------------------------------
# Columns and brackets


@dataclass(frozen=True)
class ColumnSym:
    """Either a configuration point (generic column) or a constant column.

    The constant may be a concrete vector in Q^3 or the symbolic vector q.
    """

    point: Optional[int] = None
    const: Optional[Vec3] = None
    is_q: bool = False

    def __post_init__(self):
        kinds = sum(1 for f in (self.point is not None, self.const is not None, self.is_q) if f)
        if kinds != 1:
            raise ValueError("ColumnSym needs exactly one of point/const/q")
        if self.point is not None and self.point < 1:
            raise ValueError("point index must be >= 1")

    def entry(self, row: int) -> BracketPoly:
        if self.point is not None:
            return BracketPoly.variable(("x", self.point, row))
        if self.is_q:
            return BracketPoly.variable(("q", row))
        return BracketPoly.const(self.const[row])


def point(i: int) -> ColumnSym:
    return ColumnSym(point=i)


def const_col(v: Sequence) -> ColumnSym:
    return ColumnSym(const=vec3(*v))


Q_COL = ColumnSym(is_q=True)

ColumnLike = Union[int, ColumnSym]


def as_column(c: ColumnLike) -> ColumnSym:
    return ColumnSym(point=c) if isinstance(c, int) else c


def bracket(c1: ColumnLike, c2: ColumnLike, c3: ColumnLike) -> BracketPoly:
    """Fully expanded determinant of the 3 x 3 matrix with these columns."""
    cols = [as_column(c1), as_column(c2), as_column(c3)]
    if len({(c.point, c.const, c.is_q) for c in cols}) < 3:
        return BracketPoly.zero()
    out = BracketPoly.zero()
    for perm in permutations(range(3)):
        sign = _perm_sign(perm)
        term = BracketPoly.const(sign)
        for col, row in enumerate(perm):
            term = term * cols[col].entry(row)
        out = out + term
    return out


def _perm_sign(perm: Sequence[int]) -> int:
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inv % 2 else 1


# ---------------------------------------------------------------------------
# Minors of matrices with polynomial entries

PolyMatrix = Sequence[Sequence[BracketPoly]]


def _select(entries: PolyMatrix, rows: Sequence[int], cols: Sequence[int]):
    if len(rows) != len(cols):
        raise ValueError("minor needs equally many rows and columns")
    if not rows:
        raise ValueError("empty minor")
    n_rows = len(entries)
    n_cols = len(entries[0]) if n_rows else 0
    if any(not 0 <= r < n_rows for r in rows) or any(not 0 <= c < n_cols for c in cols):
        raise ValueError("minor indices out of range")
    return [[entries[r][c] for c in cols] for r in rows]


def symbolic_minor(entries: PolyMatrix, rows: Sequence[int], cols: Sequence[int]) -> BracketPoly:
    """Fully expanded determinant of the selected square submatrix.

    Intended for small minors (4 x 4 and below); cost is k! products.
    """
    sub = _select(entries, rows, cols)
    k = len(sub)
    out = BracketPoly.zero()
    for perm in permutations(range(k)):
        term = BracketPoly.const(_perm_sign(perm))
        for i in range(k):
            term = term * sub[i][perm[i]]
            if term.is_zero():
                break
        out = out + term
    return out


def lazy_minor_eval(
    entries: PolyMatrix,
    rows: Sequence[int],
    cols: Sequence[int],
    gamma: Realization,
    q: Optional[Vec3] = None,
) -> Fraction:
    """Evaluate entries first, then take an exact numeric determinant.

    Agrees with eval(symbolic_minor(...)) but stays cheap for large minors.
    """
    sub = _select(entries, rows, cols)
    numeric = [[p.eval(gamma, q) for p in row] for row in sub]
    return det_exact(numeric)

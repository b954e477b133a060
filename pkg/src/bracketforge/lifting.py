"""Liftability matrices, their minors, lifting dimensions, and liftings.

For a simple configuration the liftability matrix has one row per 3-circuit
{c1 < c2 < c3} and one column per point; the row carries the bracket
polynomials [c2 c3 q], -[c1 c3 q], [c1 c2 q] in columns c1, c2, c3.  Its
kernel at a planar collection gamma parametrizes the ways to lift gamma out
of its plane along the direction q while preserving the circuits to first
order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, Optional, Sequence

from .config import Config, ConfigError, admissible_ordering
from .linalg import (
    BASIS,
    Realization,
    Vec3,
    det3,
    kernel_basis,
    meet_lines,
    proportional,
    rank_vectors,
    vadd,
    vec3,
    vscale,
)
from .poly import BracketPoly, ColumnSym, Q_COL, bracket, const_col, lazy_minor_eval, symbolic_minor


class LiftingError(ValueError):
    pass


@dataclass(frozen=True)
class QScheme:
    """How the direction vector q enters the matrix entries.

    kind "symbolic": one symbolic q shared by every entry.
    kind "concrete": one fixed vector in Q^3.
    kind "per-column": one basis vector e1/e2/e3 per column; the brackets in
    column i use that column's vector.
    """

    kind: str
    value: Optional[Vec3] = None
    per_column: Optional[tuple[Vec3, ...]] = None

    def __post_init__(self):
        if self.kind == "symbolic":
            if self.value is not None or self.per_column is not None:
                raise LiftingError("symbolic scheme takes no vectors")
        elif self.kind == "concrete":
            if self.value is None or self.per_column is not None:
                raise LiftingError("concrete scheme needs one vector")
        elif self.kind == "per-column":
            if self.per_column is None or self.value is not None:
                raise LiftingError("per-column scheme needs a vector per column")
            if any(v not in BASIS for v in self.per_column):
                raise LiftingError("per-column vectors must be basis vectors")
        else:
            raise LiftingError(f"unknown scheme kind {self.kind!r}")

    @staticmethod
    def symbolic() -> "QScheme":
        return QScheme("symbolic")

    @staticmethod
    def concrete(v: Sequence) -> "QScheme":
        return QScheme("concrete", value=vec3(*v))

    @staticmethod
    def per_col(vectors: Sequence[Vec3]) -> "QScheme":
        return QScheme("per-column", per_column=tuple(vectors))

    def q_column(self, col: int) -> ColumnSym:
        if self.kind == "symbolic":
            return Q_COL
        if self.kind == "concrete":
            return const_col(self.value)
        return const_col(self.per_column[col - 1])


@dataclass(frozen=True)
class LiftMatrix:
    cfg: Config
    scheme: QScheme
    circuits: tuple[tuple[int, ...], ...]
    entries: tuple[tuple[BracketPoly, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.circuits), self.cfg.d

    def evaluate(self, gamma: Realization, q: Optional[Vec3] = None) -> list[list[Fraction]]:
        if gamma.d != self.cfg.d:
            raise LiftingError("realization size does not match configuration")
        return [[p.eval(gamma, q) for p in row] for row in self.entries]

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> BracketPoly:
        return symbolic_minor(self.entries, rows, cols)

    def minor_eval(
        self,
        rows: Sequence[int],
        cols: Sequence[int],
        gamma: Realization,
        q: Optional[Vec3] = None,
    ) -> Fraction:
        return lazy_minor_eval(self.entries, rows, cols, gamma, q)

    def to_text(self) -> list[list[str]]:
        return [[p.to_text() for p in row] for row in self.entries]

    def bracket_text(self) -> list[list[str]]:
        """Shorthand like "[23 q1]" mirroring how such matrices are printed."""
        out = []
        for circuit, _ in zip(self.circuits, self.entries):
            c1, c2, c3 = circuit
            row = ["0"] * self.cfg.d
            for col, pair, sign in ((c1, (c2, c3), ""), (c2, (c1, c3), "-"), (c3, (c1, c2), "")):
                qname = "q" if self.scheme.kind != "per-column" else f"q{col}"
                row[col - 1] = f"{sign}[{pair[0]}{pair[1]} {qname}]"
            out.append(row)
        return out


def lift_matrix(cfg: Config, scheme: QScheme) -> LiftMatrix:
    cfg._require_simple()
    if scheme.kind == "per-column" and len(scheme.per_column) != cfg.d:
        raise LiftingError("per-column scheme length must equal d")
    circuits = sorted(tuple(sorted(c)) for c in cfg.circuits3())
    rows = []
    for c1, c2, c3 in circuits:
        row = [BracketPoly.zero()] * cfg.d
        row[c1 - 1] = bracket(c2, c3, scheme.q_column(c1))
        row[c2 - 1] = -bracket(c1, c3, scheme.q_column(c2))
        row[c3 - 1] = bracket(c1, c2, scheme.q_column(c3))
        rows.append(tuple(row))
    return LiftMatrix(cfg, scheme, tuple(circuits), tuple(rows))


# ---------------------------------------------------------------------------
# Minor descriptors and counts

PRESET_MINOR_RECIPES = {
    # preset -> list of (matrix tag, deleted point or None, minor size, q mode)
    "pascal": [("full", None, 7, "basis")],
    "pappus": [("full", None, 7, "basis")]
    + [("delete", i, 6, "basis") for i in range(1, 10)],
    "qs": [("full", None, 4, "symbolic")],
}


@dataclass(frozen=True)
class MinorDescriptor:
    """One lifting generator: a minor position plus a q assignment.

    matrix_tag/deleted identify the liftability matrix; rows and cols are
    0-based indices into it; q_assignment gives the basis-vector index
    (1..3) per column of the matrix, or None for symbolic q.
    """

    preset: str
    matrix_tag: str
    deleted: Optional[int]
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    q_assignment: Optional[tuple[int, ...]]


def _preset_config(preset: str) -> Config:
    from .config import preset as preset_cfg

    return preset_cfg(preset)


def _recipe_matrices(preset: str):
    base = _preset_config(preset)
    for tag, deleted, size, qmode in PRESET_MINOR_RECIPES[preset]:
        cfg = base if deleted is None else base.delete({deleted})
        yield tag, deleted, size, qmode, cfg


def minor_count(preset: str) -> int:
    """Exact count of lifting generators for a preset.

    A minor position is a choice of `size` columns (for square matrices the
    omitted rows are the positionally matching ones, so positions are in
    bijection with column choices); each position is counted once per
    basis-vector assignment to all matrix columns, or once if q is symbolic.
    """
    if preset not in PRESET_MINOR_RECIPES:
        raise LiftingError(f"unknown lifting preset {preset!r}")
    total = 0
    for _tag, _deleted, size, qmode, cfg in _recipe_matrices(preset):
        ncols = len(cfg.nonloop_points)
        positions = _comb(ncols, size)
        assignments = 3 ** ncols if qmode == "basis" else 1
        total += positions * assignments
    return total


def _comb(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


def _positions(n_rows: int, n_cols: int, size: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Minor positions: column choices, rows matched positionally.

    For an r x c matrix with r == size, rows are all of them; for a square
    matrix with r == c > size, the rows omitted are those with the same
    indices as the omitted columns.
    """
    for cols in combinations(range(n_cols), size):
        if n_rows == size:
            rows = tuple(range(n_rows))
        elif n_rows == n_cols:
            rows = cols
        else:
            raise LiftingError("ambiguous minor position for this shape")
        yield rows, cols


def iter_descriptors(preset: str, limit: Optional[int] = None) -> Iterator[MinorDescriptor]:
    """Stream lifting generator descriptors in deterministic order."""
    if preset not in PRESET_MINOR_RECIPES:
        raise LiftingError(f"unknown lifting preset {preset!r}")
    emitted = 0
    for tag, deleted, size, qmode, cfg in _recipe_matrices(preset):
        n_rows = len(cfg.circuits3())
        n_cols = cfg.d
        for rows, cols in _positions(n_rows, n_cols, size):
            if qmode == "symbolic":
                assigns: Iterable = [None]
            else:
                assigns = product((1, 2, 3), repeat=n_cols)
            for a in assigns:
                yield MinorDescriptor(preset, tag, deleted, rows, cols, a)
                emitted += 1
                if limit is not None and emitted >= limit:
                    return


def sample_descriptors(preset: str, count: int, seed: int) -> list[MinorDescriptor]:
    """Uniform sample (with replacement) from the descriptor space."""
    rng = random.Random(seed)
    matrices = list(_recipe_matrices(preset))
    weights = []
    for _tag, _deleted, size, qmode, cfg in matrices:
        positions = _comb(cfg.d, size)
        weights.append(positions * (3 ** cfg.d if qmode == "basis" else 1))
    out = []
    for _ in range(count):
        (tag, deleted, size, qmode, cfg), = rng.choices(matrices, weights=weights, k=1)
        n_rows = len(cfg.circuits3())
        cols = tuple(sorted(rng.sample(range(cfg.d), size)))
        rows = tuple(range(n_rows)) if n_rows == size else cols
        assign = None if qmode == "symbolic" else tuple(rng.randrange(1, 4) for _ in range(cfg.d))
        out.append(MinorDescriptor(preset, tag, deleted, rows, cols, assign))
    return out


def descriptor_matrix(desc: MinorDescriptor) -> LiftMatrix:
    base = _preset_config(desc.preset)
    cfg = base if desc.deleted is None else base.delete({desc.deleted})
    if desc.q_assignment is None:
        scheme = QScheme.symbolic()
    else:
        scheme = QScheme.per_col(tuple(BASIS[i - 1] for i in desc.q_assignment))
    return lift_matrix(cfg, scheme)


def eval_descriptor(
    desc: MinorDescriptor, gamma: Realization, q: Optional[Vec3] = None
) -> Fraction:
    """Evaluate the descriptor's minor at gamma (gamma indexed by the
    descriptor's own configuration, i.e. already restricted if deleted)."""
    m = descriptor_matrix(desc)
    return m.minor_eval(desc.rows, desc.cols, gamma, q)


# ---------------------------------------------------------------------------
# Lifting dimensions


def in_circuit_variety_raw(cfg: Config, gamma: Realization) -> bool:
    for c in cfg.circuits3():
        a, b, d = sorted(c)
        if det3(gamma.col(a), gamma.col(b), gamma.col(d)) != 0:
            return False
    for p in cfg.loops:
        if any(gamma.col(p)):
            return False
    return True


def q_general_position(cfg: Config, gamma: Realization, q: Vec3) -> bool:
    """q outside every realized line and every point span."""
    if not any(q):
        return False
    for p in cfg.nonloop_points:
        v = gamma.col(p)
        if any(v) and proportional(v, q):
            return False
    for l in cfg.lines:
        pts = [gamma.col(p) for p in l]
        for a, b in combinations(pts, 2):
            if rank_vectors([a, b]) == 2 and det3(a, b, q) == 0:
                return False
    return True


def lift_dim(cfg: Config, gamma: Realization, q: Vec3) -> int:
    cfg._require_simple()
    if not in_circuit_variety_raw(cfg, gamma):
        raise LiftingError("realization violates a circuit of the configuration")
    if not q_general_position(cfg, gamma, q):
        raise LiftingError("q is not in general position for this realization")
    m = lift_matrix(cfg, QScheme.concrete(q))
    numeric = m.evaluate(gamma)
    if not numeric:
        return cfg.d
    return len(kernel_basis(numeric))


# ---------------------------------------------------------------------------
# Constructing liftings


def _lifted(gamma: Realization, z: Sequence[Fraction], q: Vec3) -> Realization:
    cols = [vadd(gamma.col(i + 1), vscale(z[i], q)) for i in range(gamma.d)]
    return Realization(tuple(cols))


def construct_lifting(cfg: Config, gamma: Realization, q: Vec3) -> Optional[Realization]:
    """Lift a rank <= 2 collection out of its plane along q, if possible.

    Picks the kernel vector of the evaluated liftability matrix whose lifted
    collection has maximal rank, skipping the trivial (rank <= 2) liftings;
    returns None when every kernel vector lifts degenerately.
    """
    cfg._require_simple()
    if gamma.rank() > 2:
        raise LiftingError("construct_lifting expects a planar (rank <= 2) collection")
    if not in_circuit_variety_raw(cfg, gamma):
        raise LiftingError("realization violates a circuit of the configuration")
    if not q_general_position(cfg, gamma, q):
        raise LiftingError("q is not in general position for this realization")
    m = lift_matrix(cfg, QScheme.concrete(q))
    numeric = m.evaluate(gamma)
    kernel = (
        kernel_basis(numeric)
        if numeric
        else [tuple(Fraction(int(i == j)) for j in range(cfg.d)) for i in range(cfg.d)]
    )
    best = None
    best_rank = 2
    for z in kernel:
        lifted = _lifted(gamma, z, q)
        r = lifted.rank()
        if r > best_rank:
            best, best_rank = lifted, r
    if best is None:
        return None
    if not in_circuit_variety_raw(cfg, best):
        raise LiftingError("lifted collection violates a circuit; kernel not exact")
    return best


def trivial_lifting_dim(cfg: Config, gamma: Realization, q: Vec3) -> int:
    """Dimension of the kernel vectors that lift gamma to rank <= 2."""
    m = lift_matrix(cfg, QScheme.concrete(q))
    numeric = m.evaluate(gamma)
    kernel = kernel_basis(numeric) if numeric else []
    # the degenerate liftings form a subspace; measure its span directly
    span: list[list[Fraction]] = []
    for z in kernel:
        if _lifted(gamma, z, q).rank() <= 2:
            span.append(list(z))
    if not span:
        return 0
    from .linalg import rank as mat_rank

    return mat_rank(span)


def extend_point_deg_le2(
    cfg: Config,
    gamma_rest: Realization,
    lifted_rest: Realization,
    p: int,
    q: Vec3,
    target_line: Sequence[int],
) -> Vec3:
    """Place the new point p of degree <= 2 compatibly with a lifting.

    gamma_rest and lifted_rest are realizations of cfg with column p ignored
    (its value is irrelevant); returns the new column for p.  Degree 0/1:
    a point on the lifted target line (or the lifted first basis direction
    when p lies on no line).  Degree 2: the projection from q onto the
    lifted target line of the meet of p's two lifted lines.
    """
    cfg._require_simple()
    deg = cfg.degree(p)
    if deg >= 3:
        raise LiftingError(
            "non-constructive case: extension of a point of degree >= 3 "
            "requires the nilpotent-extension hypothesis check"
        )
    lines = cfg.lines_through(p)
    if deg == 0:
        return vec3(1, 0, 0)
    if deg == 1:
        l = lines[0]
        others = [x for x in l if x != p][:2]
        a, b = lifted_rest.col(others[0]), lifted_rest.col(others[1])
        return vadd(a, b)
    l1, l2 = lines
    a1, a2 = (lifted_rest.col(x) for x in [x for x in l1 if x != p][:2])
    b1, b2 = (lifted_rest.col(x) for x in [x for x in l2 if x != p][:2])
    meet_pt = meet_lines(a1, a2, b1, b2)
    if target_line is not None and set(target_line) != set(l1) and set(target_line) != set(l2):
        # project the meet from q onto the realized target line
        t = [x for x in target_line if x != p][:2]
        return meet_lines(meet_pt, q, lifted_rest.col(t[0]), lifted_rest.col(t[1]))
    return meet_pt


def nilpotent_extension_hypothesis(cfg: Config, p: int) -> tuple[bool, int]:
    """Check dim(cfg minus p) >= 1 + deg(p); returns (verdict, margin)."""
    cfg._require_simple()
    deg = cfg.degree(p)
    rest = cfg.delete({p})
    ordering = admissible_ordering(rest)
    if ordering is None:
        raise ConfigError("configuration minus the point is not nilpotent")
    margin = ordering.dim - (1 + deg)
    return margin >= 0, margin

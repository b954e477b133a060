"""Rank-three point-line configurations and their combinatorics.

A configuration is a simple-or-not rank-<=3 matroid given by its ground set
1..d, its lines (maximal collinear sets of >= 3 points), its loops, and its
parallel classes. All operations are pure; Config instances are immutable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence

import networkx as nx


class ConfigError(ValueError):
    pass


def _canon_lines(lines: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(set(l))) for l in lines))


@dataclass(frozen=True)
class Config:
    """A point-line configuration on ground set {1, ..., d}."""

    d: int
    lines: tuple[tuple[int, ...], ...]
    loops: frozenset[int] = frozenset()
    parallel: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lines", _canon_lines(self.lines))
        object.__setattr__(self, "loops", frozenset(self.loops))
        par = tuple(sorted(tuple(sorted(set(c))) for c in self.parallel if len(c) > 1))
        object.__setattr__(self, "parallel", par)
        self._validate()

    def _validate(self):
        ground = set(range(1, self.d + 1))
        if not self.loops <= ground:
            raise ConfigError("loop labels outside ground set")
        covered: set[int] = set()
        for cls in self.parallel:
            if not set(cls) <= ground - self.loops:
                raise ConfigError("parallel class outside non-loop points")
            if covered & set(cls):
                raise ConfigError("parallel classes must be disjoint")
            covered |= set(cls)
        rep = self._parallel_rep_map()
        for l in self.lines:
            if len(l) < 3:
                raise ConfigError(f"line {l} has fewer than 3 points")
            if not set(l) <= ground - self.loops:
                raise ConfigError(f"line {l} not within non-loop points")
        collapsed = [frozenset(rep[p] for p in l) for l in self.lines]
        for (i, a), (j, b) in combinations(enumerate(collapsed), 2):
            if len(a & b) > 1:
                raise ConfigError(
                    f"lines {self.lines[i]} and {self.lines[j]} share more than one point"
                )
        for a, b in combinations(self.lines, 2):
            if set(a) <= set(b) or set(b) <= set(a):
                raise ConfigError("no line may contain another")

    def _parallel_rep_map(self) -> dict[int, int]:
        rep = {p: p for p in range(1, self.d + 1)}
        for cls in self.parallel:
            for p in cls:
                rep[p] = cls[0]
        return rep

    # -- basic queries -----------------------------------------------------

    @property
    def points(self) -> tuple[int, ...]:
        return tuple(range(1, self.d + 1))

    @property
    def nonloop_points(self) -> tuple[int, ...]:
        return tuple(p for p in self.points if p not in self.loops)

    def is_simple(self) -> bool:
        return not self.loops and not self.parallel

    def lines_through(self, p: int) -> tuple[tuple[int, ...], ...]:
        return tuple(l for l in self.lines if p in l)

    def degree(self, p: int) -> int:
        if not 1 <= p <= self.d:
            raise ConfigError(f"point {p} outside ground set")
        if p in self.loops:
            raise ConfigError(f"point {p} is a loop and has no degree")
        return len(self.lines_through(p))

    # -- dependencies ------------------------------------------------------

    def circuits3(self) -> frozenset[frozenset[int]]:
        """All size-3 circuits: the 3-subsets of lines."""
        self._require_simple()
        out: set[frozenset[int]] = set()
        for l in self.lines:
            for t in combinations(l, 3):
                out.add(frozenset(t))
        return frozenset(out)

    def is_dependent_triple(self, t: Iterable[int]) -> bool:
        t = set(t)
        if t & self.loops:
            return True
        rep = self._parallel_rep_map()
        if len({rep[p] for p in t}) < len(t):
            return True
        return any(t <= set(l) for l in self.lines)

    def bases(self) -> list[tuple[int, int, int]]:
        """All independent 3-subsets of the ground set."""
        return [
            t
            for t in combinations(range(1, self.d + 1), 3)
            if not self.is_dependent_triple(t)
        ]

    def dependency_signature(self) -> frozenset[frozenset[int]]:
        """All dependent subsets of size <= 3 (determines all dependencies)."""
        sig: set[frozenset[int]] = {frozenset({p}) for p in self.loops}
        rep = self._parallel_rep_map()
        for p, q in combinations(self.nonloop_points, 2):
            if rep[p] == rep[q]:
                sig.add(frozenset({p, q}))
        for t in combinations(range(1, self.d + 1), 3):
            if self.is_dependent_triple(t):
                sig.add(frozenset(t))
        return frozenset(sig)

    def _require_simple(self):
        if not self.is_simple():
            raise ConfigError("requires simple configuration")

    # -- constructions -----------------------------------------------------

    def restrict(self, subset: Iterable[int]) -> "Config":
        """Restriction to `subset`, relabeled to 1..|subset| in label order."""
        keep = sorted(set(subset))
        if not set(keep) <= set(self.points):
            raise ConfigError("restriction set outside ground set")
        relabel = {p: i + 1 for i, p in enumerate(keep)}
        lines = [
            tuple(relabel[p] for p in l if p in relabel)
            for l in self.lines
            if len(set(l) & set(keep)) >= 3
        ]
        loops = {relabel[p] for p in self.loops if p in relabel}
        par = [
            tuple(relabel[p] for p in cls if p in relabel)
            for cls in self.parallel
            if len(set(cls) & set(keep)) >= 2
        ]
        return Config(len(keep), lines, loops, par)

    def delete(self, subset: Iterable[int]) -> "Config":
        return self.restrict(set(self.points) - set(subset))

    def make_loops(self, subset: Iterable[int]) -> "Config":
        """Turn the points of `subset` into loops, keeping d fixed."""
        j = set(subset)
        if not j <= set(self.points):
            raise ConfigError("loop set outside ground set")
        lines = [
            tuple(p for p in l if p not in j)
            for l in self.lines
            if len(set(l) - j) >= 3
        ]
        par = [
            tuple(p for p in cls if p not in j)
            for cls in self.parallel
            if len(set(cls) - j) >= 2
        ]
        return Config(self.d, lines, self.loops | j, par)

    def simplification_labels(self) -> list[int]:
        """Non-loop parallel-class representatives, in label order."""
        rep = self._parallel_rep_map()
        return sorted({rep[p] for p in self.nonloop_points})

    def to_json(self) -> str:
        return json.dumps(
            {
                "d": self.d,
                "lines": [list(l) for l in self.lines],
                "loops": sorted(self.loops),
                "parallel": [list(c) for c in self.parallel],
            }
        )

    @staticmethod
    def from_json(text: str) -> "Config":
        data = json.loads(text)
        return Config(
            int(data["d"]),
            data.get("lines", []),
            set(data.get("loops", [])),
            data.get("parallel", []),
        )


# ---------------------------------------------------------------------------
# Free gluing


def free_glue(a: Config, b: Config, p: int, q: int) -> Config:
    """Glue b onto a, identifying b's point q with a's point p.

    b's labels are offset by a.d; the glued point keeps label p, and labels
    above the removed copy of q are compacted to stay contiguous.
    """
    if not a.is_simple() or not b.is_simple():
        raise ConfigError("free gluing requires simple configurations")
    if not 1 <= p <= a.d:
        raise ConfigError(f"glue point {p} outside first ground set")
    if not 1 <= q <= b.d:
        raise ConfigError(f"glue point {q} outside second ground set")

    def b_label(j: int) -> int:
        if j == q:
            return p
        shifted = a.d + j
        return shifted - 1 if j > q else shifted

    lines = [tuple(l) for l in a.lines]
    lines += [tuple(sorted(b_label(j) for j in l)) for l in b.lines]
    return Config(a.d + b.d - 1, lines)


# ---------------------------------------------------------------------------
# Chains (nilpotency / solvability)


@dataclass(frozen=True)
class ChainReport:
    kind: str  # "S" or "Q"
    stages: tuple[tuple[int, ...], ...]
    verdict: str  # "nilpotent" / "solvable" / "neither"

    @property
    def terminates(self) -> bool:
        return self.verdict != "neither"


def _high_degree_points(cfg: Config, min_degree: int) -> list[int]:
    return [p for p in cfg.nonloop_points if cfg.degree(p) >= min_degree]


def _chain(cfg: Config, min_degree: int, kind: str) -> ChainReport:
    ok_verdict = "nilpotent" if kind == "S" else "solvable"
    stages: list[tuple[int, ...]] = []
    current = cfg
    labels = list(cfg.points)  # original labels of current's points
    while True:
        keep_local = _high_degree_points(current, min_degree)
        stage = tuple(labels[i - 1] for i in keep_local)
        if not stage:
            stages.append(stage)
            return ChainReport(kind, tuple(stages), ok_verdict)
        if stages and stage == stages[-1]:
            return ChainReport(kind, tuple(stages), "neither")
        stages.append(stage)
        current = current.restrict(keep_local)
        labels = [labels[i - 1] for i in keep_local]


def chains(cfg: Config) -> tuple[ChainReport, ChainReport]:
    """S-chain (degree >= 2) and Q-chain (degree >= 3) until stabilization."""
    cfg._require_simple()
    return _chain(cfg, 2, "S"), _chain(cfg, 3, "Q")


def is_nilpotent(cfg: Config) -> bool:
    return chains(cfg)[0].verdict == "nilpotent"


def q_points(cfg: Config) -> frozenset[int]:
    """Points of degree >= 3."""
    return frozenset(_high_degree_points(cfg, 3))


# ---------------------------------------------------------------------------
# Admissible orderings


@dataclass(frozen=True)
class Ordering:
    perm: tuple[int, ...]
    weights: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.perm) - sum(self.weights)

    def is_admissible(self) -> bool:
        return all(w <= 1 for w in self.weights)


def _degree_in_restriction(cfg: Config, present: set[int], p: int) -> int:
    return sum(1 for l in cfg.lines if p in l and len(set(l) & present) >= 3)


def admissible_ordering(cfg: Config) -> Optional[Ordering]:
    """Greedy reverse peeling: repeatedly remove a point of current degree
    <= 1 (smallest label first). Succeeds exactly when cfg is nilpotent;
    returns None otherwise.
    """
    cfg._require_simple()
    present = set(cfg.points)
    peeled: list[tuple[int, int]] = []  # (point, weight at removal)
    while present:
        candidate = None
        for p in sorted(present):
            if _degree_in_restriction(cfg, present, p) <= 1:
                candidate = p
                break
        if candidate is None:
            return None
        peeled.append((candidate, _degree_in_restriction(cfg, present, candidate)))
        present.remove(candidate)
    peeled.reverse()
    return Ordering(tuple(p for p, _ in peeled), tuple(w for _, w in peeled))


def nilpotent_dim(cfg: Config) -> int:
    """d - sum(w_i) for an admissible ordering; defined for nilpotent cfgs."""
    ordering = admissible_ordering(cfg)
    if ordering is None:
        raise ConfigError("configuration is not nilpotent")
    return ordering.dim


# ---------------------------------------------------------------------------
# Cactus recognition


def incidence_graph(cfg: Config) -> nx.Graph:
    """G(M): vertices are points of degree >= 2, edges join co-linear pairs."""
    cfg._require_simple()
    g = nx.Graph()
    verts = [p for p in cfg.points if cfg.degree(p) >= 2]
    g.add_nodes_from(verts)
    vset = set(verts)
    for l in cfg.lines:
        on_line = sorted(set(l) & vset)
        for u, v in combinations(on_line, 2):
            g.add_edge(u, v)
    return g


@dataclass(frozen=True)
class CactusReport:
    is_cactus: bool
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    blocks: tuple[tuple[int, ...], ...]
    offending_block: Optional[tuple[int, ...]] = None


def cactus_check(cfg: Config) -> CactusReport:
    """True iff every biconnected component of G(M) is an edge or a cycle."""
    g = incidence_graph(cfg)
    blocks = [tuple(sorted(b)) for b in nx.biconnected_components(g)]
    offending = None
    ok = True
    for block in blocks:
        sub = g.subgraph(block)
        n, m = sub.number_of_nodes(), sub.number_of_edges()
        if m == 1:
            continue
        # a biconnected block is a simple cycle iff every vertex has degree 2
        if m == n and all(deg == 2 for _, deg in sub.degree()):
            continue
        ok = False
        offending = block
        break
    return CactusReport(
        is_cactus=ok,
        vertices=tuple(sorted(g.nodes)),
        edges=tuple(sorted(tuple(sorted(e)) for e in g.edges)),
        blocks=tuple(sorted(blocks)),
        offending_block=offending,
    )


def subset_has_cycle(cfg: Config, subset: Iterable[int]) -> bool:
    """True iff distinct points x_1..x_k of `subset` and distinct lines
    l_1..l_k exist with {x_i, x_{i+1}} inside l_i, cyclically.

    Equivalently: the bipartite incidence graph between the subset's points
    and the lines meeting >= 2 of them contains a cycle (union-find check).
    """
    pts = sorted(set(subset))
    if not set(pts) <= set(cfg.nonloop_points):
        raise ConfigError("subset must consist of non-loop points")
    nodes: dict = {("p", p): ("p", p) for p in pts}
    parent = {k: k for k in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for li, l in enumerate(cfg.lines):
        members = [p for p in pts if p in l]
        if len(members) < 2:
            continue
        key = ("l", li)
        parent[key] = key
        for p in members:
            a, b = find(key), find(("p", p))
            if a == b:
                return True
            parent[a] = b
    return False


def subset_has_cycle_dfs(cfg: Config, subset: Iterable[int]) -> bool:
    """Independent cross-check of subset_has_cycle via networkx forests."""
    pts = sorted(set(subset))
    g = nx.Graph()
    g.add_nodes_from(("p", p) for p in pts)
    for li, l in enumerate(cfg.lines):
        members = [p for p in pts if p in l]
        if len(members) >= 2:
            for p in members:
                g.add_edge(("l", li), ("p", p))
    return any(
        g.subgraph(c).number_of_edges() >= len(c)
        for c in nx.connected_components(g)
    )


# ---------------------------------------------------------------------------
# Presets


def _line_config(n: int) -> Config:
    if n < 3:
        raise ConfigError("a line needs at least 3 points")
    return Config(n, [tuple(range(1, n + 1))])


def _cycle_config(k: int, pts_per_line: int) -> Config:
    """k lines of `pts_per_line` points; consecutive lines share one point."""
    if k < 3:
        raise ConfigError("a cycle needs at least 3 lines")
    if pts_per_line < 3:
        raise ConfigError("each line needs at least 3 points")
    free = pts_per_line - 2
    lines = []
    for i in range(1, k + 1):
        joint_a, joint_b = i, (i % k) + 1
        extras = [k + (i - 1) * free + j for j in range(1, free + 1)]
        lines.append(tuple(sorted([joint_a, joint_b] + extras)))
    return Config(k + k * free, lines)


_FIXED_PRESETS: dict[str, Config] = {}


def _register_fixed():
    _FIXED_PRESETS["qs"] = Config(6, [(1, 2, 3), (1, 5, 6), (2, 4, 6), (3, 4, 5)])
    _FIXED_PRESETS["three-concurrent"] = Config(7, [(1, 2, 7), (3, 4, 7), (5, 6, 7)])
    _FIXED_PRESETS["pascal"] = Config(
        9,
        [(1, 6, 8), (1, 5, 7), (2, 4, 7), (2, 6, 9), (3, 4, 8), (3, 5, 9), (7, 8, 9)],
    )
    _FIXED_PRESETS["pappus"] = Config(
        9,
        [
            (1, 2, 3),
            (1, 6, 8),
            (1, 5, 7),
            (2, 4, 7),
            (2, 6, 9),
            (7, 8, 9),
            (4, 5, 6),
            (3, 4, 8),
            (3, 5, 9),
        ],
    )
    _FIXED_PRESETS["grid3x3"] = Config(
        9,
        [(1, 2, 3), (4, 5, 6), (7, 8, 9), (1, 4, 7), (2, 5, 8), (3, 6, 9)],
    )
    _FIXED_PRESETS["fano"] = Config(
        7,
        [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)],
    )
    # 14-point cactus: a triangle on {1,2,3} plus four pendant lines.
    # Exactly the points 1, 2, 3 have degree >= 3.
    _FIXED_PRESETS["cactus14"] = Config(
        14,
        [
            (1, 2, 4),
            (2, 3, 5),
            (1, 3, 6),
            (1, 7, 8),
            (1, 9, 10),
            (3, 11, 12),
            (2, 13, 14),
        ],
    )


_register_fixed()

PRESET_NAMES = tuple(sorted(_FIXED_PRESETS)) + ("line:<n>", "cycle:<k>:<pts-per-line>")


def preset(name: str) -> Config:
    if name in _FIXED_PRESETS:
        return _FIXED_PRESETS[name]
    if name.startswith("line:"):
        return _line_config(int(name.split(":")[1]))
    if name.startswith("cycle:"):
        _, k, m = name.split(":")
        return _cycle_config(int(k), int(m))
    raise ConfigError(f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}")

"""Small cuts, links, covers, and brute-force core discovery.

A cut S is *small* when its crossing multiplicity in the base graph is below
the threshold k.  A link covers S when exactly one of its endpoints lies in
S.  A set of links is a cover when every small cut is covered; equivalently,
adding each selected link as a capacity-k edge lifts the global minimum cut
of the augmented graph to at least k.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Protocol, Sequence

from .errors import BoundExceededError, InfeasibleError, InvalidParameterError
from .multigraph import Cut, MultiGraph, cut_degree, global_min_cut

LINK_TAGS = (None, "red", "blue")

DEFAULT_ENUM_BOUND = 22
_ENUM_BOUND_VAR = "SCC_ENUM_BOUND"


def enumeration_bound() -> int:
    """Node-count ceiling for exhaustive cut enumeration.

    Controlled by the SCC_ENUM_BOUND environment variable; anything above it
    raises BoundExceededError instead of silently degrading.
    """
    raw = os.environ.get(_ENUM_BOUND_VAR)
    if raw is None:
        return DEFAULT_ENUM_BOUND
    try:
        bound = int(raw)
    except ValueError:
        raise InvalidParameterError(f"{_ENUM_BOUND_VAR} must be an integer, got {raw!r}")
    if bound < 2:
        raise InvalidParameterError(f"{_ENUM_BOUND_VAR} must be at least 2, got {bound}")
    return bound


def _check_enum_ok(n: int, what: str) -> None:
    bound = enumeration_bound()
    if n > bound:
        raise BoundExceededError(
            f"{what} enumerates all cuts over {n} nodes, above the bound {bound}; "
            f"raise {_ENUM_BOUND_VAR} to allow it"
        )


def as_cost(value: object) -> Fraction:
    """Normalize a cost to an exact nonnegative Fraction.

    Accepts int, Fraction, and strings like "3", "5/2", or "0.01" (decimal
    strings are exact).  Float objects are rejected: costs feed exact dual
    arithmetic and must not arrive already rounded to binary.
    """
    if isinstance(value, bool):
        raise InvalidParameterError(f"cost must be a number, got {value!r}")
    if isinstance(value, float):
        raise InvalidParameterError(f"float cost {value!r} rejected; pass an exact fraction")
    if isinstance(value, (int, Fraction)):
        cost = Fraction(value)
    elif isinstance(value, str):
        try:
            cost = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise InvalidParameterError(f"cannot parse cost {value!r}")
    else:
        raise InvalidParameterError(f"cost must be int, Fraction, or string, got {type(value).__name__}")
    if cost < 0:
        raise InvalidParameterError(f"negative cost {cost} is not allowed")
    return cost


@dataclass(frozen=True)
class Link:
    """A purchasable edge between two distinct nodes with an exact cost.

    The optional tag records which family a generated link belongs to and is
    what tie policies key on; arbitrary instances leave it None.
    """

    u: int
    v: int
    cost: Fraction
    tag: str | None = None

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise InvalidParameterError(f"link endpoints must differ, got ({self.u},{self.v})")
        if self.u < 0 or self.v < 0:
            raise InvalidParameterError(f"link endpoints must be nonnegative: ({self.u},{self.v})")
        if self.tag not in LINK_TAGS:
            raise InvalidParameterError(f"unknown link tag {self.tag!r}")
        object.__setattr__(self, "cost", as_cost(self.cost))

    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)


@dataclass(frozen=True)
class Instance:
    """A covering problem: base graph, threshold k, and candidate links."""

    graph: MultiGraph
    k: int
    links: tuple[Link, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidParameterError(f"threshold k must be at least 1, got k={self.k}")
        links = tuple(self.links)
        for ln in links:
            if ln.u >= self.graph.n or ln.v >= self.graph.n:
                raise InvalidParameterError(
                    f"link ({ln.u},{ln.v}) endpoints out of range for {self.graph.n} nodes"
                )
        object.__setattr__(self, "links", links)

    @property
    def n(self) -> int:
        return self.graph.n

    def default_root(self) -> int:
        """Node to exclude when enumerating one representative per cut side."""
        r = self.graph.node_by_label("r")
        return r if r is not None else 0


def link_crosses(link: Link, s: Cut) -> bool:
    return s.contains(link.u) != s.contains(link.v)


def is_small_cut(inst: Instance, s: Cut) -> bool:
    return cut_degree(inst.graph, s) < inst.k


def _cut_degrees_excluding(g: MultiGraph, root: int) -> list[int]:
    """Crossing multiplicity for every node subset avoiding `root`.

    Returns dp indexed by masks over the compacted id order (root removed).
    dp[mask | lowbit] extends dp[mask] by one node in O(n) via the identity
    d(S + v) = d(S) + deg(v) - 2 * mult(v, S).
    """
    order = [v for v in range(g.n) if v != root]
    m = len(order)
    deg = [g.node_degree(v) for v in order]
    inner = [[0] * m for _ in range(m)]
    pos = {v: i for i, v in enumerate(order)}
    for u, v, mult in g.edges:
        if u != root and v != root:
            inner[pos[u]][pos[v]] = mult
            inner[pos[v]][pos[u]] = mult
    dp = [0] * (1 << m)
    for mask in range(1, 1 << m):
        low = (mask & -mask).bit_length() - 1
        prev = mask & (mask - 1)
        cross = 0
        row = inner[low]
        rest = prev
        while rest:
            j = (rest & -rest).bit_length() - 1
            cross += row[j]
            rest &= rest - 1
        dp[mask] = dp[prev] + deg[low] - 2 * cross
    return dp


def _expand_mask(mask: int, order: Sequence[int], n: int) -> int:
    out = 0
    for i, v in enumerate(order):
        if mask >> i & 1:
            out |= 1 << v
    return out


def violated_cuts(inst: Instance, selected: Iterable[Link]) -> list[Cut]:
    """All small cuts not covered by `selected`, one representative per side.

    Exhaustive over subsets avoiding the default root, so each cut appears
    as the side excluding the root.  Results sorted by (size, mask).
    """
    n = inst.n
    _check_enum_ok(n, "violated_cuts")
    root = inst.default_root()
    order = [v for v in range(n) if v != root]
    dp = _cut_degrees_excluding(inst.graph, root)
    sel = list(selected)
    epmasks = []
    for ln in sel:
        ep = 0
        if ln.u != root:
            ep |= 1 << order.index(ln.u)
        if ln.v != root:
            ep |= 1 << order.index(ln.v)
        epmasks.append(ep)
    out = []
    for mask in range(1, 1 << (n - 1)):
        if dp[mask] >= inst.k:
            continue
        if any((mask & ep).bit_count() == 1 for ep in epmasks):
            continue
        out.append(Cut(_expand_mask(mask, order, n), n))
    out.sort(key=lambda s: (s.size(), s.mask))
    return out


def covers_by_enumeration(inst: Instance, selected: Iterable[Link]) -> bool:
    """Reference coverage check: no violated cut survives enumeration."""
    return not violated_cuts(inst, selected)


def covers(inst: Instance, selected: Iterable[Link]) -> bool:
    """Coverage via min cut of the augmented graph, no cut enumeration.

    Each selected link is added with multiplicity k, which covers every
    small cut it crosses and creates no new small cut.  Selected links
    cannot rescue an isolated-by-degree node they do not touch, so the
    cheap per-node degree screen runs first.
    """
    sel = list(selected)
    g = inst.graph
    k = inst.k
    if g.n < 2:
        return True
    touched = [0] * g.n
    for ln in sel:
        touched[ln.u] = 1
        touched[ln.v] = 1
    for v in range(g.n):
        if not touched[v] and g.node_degree(v) < k:
            return False
    aug_edges = list(g.edges) + [(ln.u, ln.v, k) for ln in sel]
    aug = MultiGraph(g.n, aug_edges)
    value, _ = global_min_cut(aug)
    return value >= k


def is_minimal_cover(inst: Instance, selected: Sequence[Link]) -> bool:
    """True when `selected` covers and no single link can be dropped."""
    sel = list(selected)
    if not covers(inst, sel):
        return False
    for i in range(len(sel)):
        if covers(inst, sel[:i] + sel[i + 1 :]):
            return False
    return True


class CoreOracle(Protocol):
    """Produces the inclusion-minimal uncovered small cuts of an instance."""

    def cores(self, inst: Instance, selected: Sequence[Link]) -> list[Cut]: ...


def cores_bruteforce(inst: Instance, selected: Sequence[Link] = ()) -> list[Cut]:
    """Inclusion-minimal violated cuts by exhaustive enumeration.

    Representatives from violated_cuts are rejoined with their complements
    before the minimality sweep, since a cut and its complement are violated
    together but minimality is a property of node sets.  The returned cores
    are pairwise disjoint; that is asserted, not assumed.
    """
    full = (1 << inst.n) - 1
    reps = violated_cuts(inst, selected)
    family = set()
    for s in reps:
        family.add(s.mask)
        family.add(s.mask ^ full)
    cores: list[int] = []
    for mask in sorted(family, key=lambda m: (m.bit_count(), m)):
        if not any(mask & c == c for c in cores):
            cores.append(mask)
    for i, a in enumerate(cores):
        for b in cores[i + 1 :]:
            assert a & b == 0, "minimal violated cuts must be pairwise disjoint"
    return [Cut(mask, inst.n) for mask in sorted(cores)]


class BruteForceCoreOracle:
    """CoreOracle backed by exhaustive enumeration; exact but exponential."""

    def cores(self, inst: Instance, selected: Sequence[Link]) -> list[Cut]:
        return cores_bruteforce(inst, selected)


def require_feasible(inst: Instance) -> None:
    """Raise InfeasibleError unless selecting every link yields a cover."""
    if not covers(inst, inst.links):
        raise InfeasibleError("no feasible cover: even selecting every link leaves a small cut uncovered")

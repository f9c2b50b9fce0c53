"""Two-phase primal-dual cover construction with exact rational duals.

Phase 1 grows a dual solution: each iteration raises y_S uniformly on the
active cores (the inclusion-minimal uncovered small cuts), by the largest
increment that keeps every link's dual load within its cost, then appends
every link whose slack hit zero.  Phase 2 walks the appended links in exact
reverse order and drops each one whose removal keeps the selection feasible.

The order tight links are appended within one iteration is the only slack in
the procedure; a TiePolicy pins it down, and on instances built to be
adversarial it is what separates the cheap cover from the expensive one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .covering import BruteForceCoreOracle, CoreOracle, Instance, Link, covers, link_crosses
from .errors import InfeasibleError, VerificationError
from .multigraph import Cut, cut_degree


class TiePolicy(str, enum.Enum):
    """How to order links that go tight in the same iteration.

    Appending later means being considered earlier in reverse delete.
    ADVERSARIAL appends blue-tagged links last so they are deleted first;
    HELPFUL is the mirror image; INPUT_ORDER and COST_ASCENDING ignore tags.
    """

    ADVERSARIAL = "adversarial"
    HELPFUL = "helpful"
    INPUT_ORDER = "input-order"
    COST_ASCENDING = "cost-ascending"


_TAG_RANKS = {
    TiePolicy.ADVERSARIAL: {"red": 0, None: 1, "blue": 2},
    TiePolicy.HELPFUL: {"blue": 0, None: 1, "red": 2},
}


def _append_key(policy: TiePolicy, links: Sequence[Link]) -> Callable[[int], object]:
    if policy is TiePolicy.COST_ASCENDING:
        return lambda i: (links[i].cost, i)
    ranks = _TAG_RANKS.get(policy)
    if ranks is None:
        return lambda i: i
    return lambda i: (ranks[links[i].tag], i)


@dataclass(frozen=True)
class DualSolution:
    """Dual variables keyed by cut, all exact Fractions."""

    entries: dict[Cut, Fraction] = field(default_factory=dict)

    def objective(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def load(self, link: Link) -> Fraction:
        """Total dual weight of cuts this link crosses."""
        return sum(
            (y for s, y in self.entries.items() if link_crosses(link, s)),
            Fraction(0),
        )


@dataclass(frozen=True)
class IterationRecord:
    index: int
    active_cores: tuple[Cut, ...]
    delta: Fraction
    newly_tight: tuple[int, ...]


@dataclass(frozen=True)
class RunResult:
    """Everything both phases produced, enough to replay or audit the run."""

    policy: TiePolicy
    added: tuple[int, ...]
    iterations: tuple[IterationRecord, ...]
    dual: DualSolution
    deleted: tuple[int, ...]
    final: tuple[int, ...]

    def final_links(self, inst: Instance) -> list[Link]:
        return [inst.links[i] for i in self.final]

    def final_cost(self, inst: Instance) -> Fraction:
        return cost_of(inst, self.final)


def cost_of(inst: Instance, indices: Sequence[int]) -> Fraction:
    return sum((inst.links[i].cost for i in indices), Fraction(0))


def phase1(
    inst: Instance,
    policy: TiePolicy = TiePolicy.INPUT_ORDER,
    oracle: CoreOracle | None = None,
) -> tuple[list[int], DualSolution, list[IterationRecord]]:
    """Grow duals until the appended links cover every small cut.

    Returns (added link indices in append order, dual solution, iteration
    records).  Raises InfeasibleError when some core is crossed by no
    remaining link and so can never be covered.
    """
    if oracle is None:
        oracle = BruteForceCoreOracle()
    links = inst.links
    key = _append_key(policy, links)
    added: list[int] = []
    in_added = [False] * len(links)
    load = [Fraction(0)] * len(links)
    y: dict[Cut, Fraction] = {}
    records: list[IterationRecord] = []
    it = 0
    while True:
        selected = [links[i] for i in added]
        # Termination is decided by the exact min-cut coverage test, so the
        # oracle is only consulted while violated cuts actually exist.  That
        # keeps analytic oracles usable on instances too large to enumerate.
        if covers(inst, selected):
            break
        cores = oracle.cores(inst, selected)
        assert cores, "coverage test found a violated cut but the oracle returned no cores"
        it += 1
        remaining = [i for i in range(len(links)) if not in_added[i]]
        crossings = [sum(1 for s in cores if link_crosses(links[i], s)) for i in remaining]
        for s in cores:
            if not any(link_crosses(links[i], s) for i in remaining):
                raise InfeasibleError(
                    f"small cut {s} is crossed by no available link; no feasible cover exists"
                )
        delta = min(
            (links[i].cost - load[i]) / c
            for i, c in zip(remaining, crossings)
            if c > 0
        )
        assert delta >= 0, "dual increment went negative, loads exceeded costs earlier"
        for s in cores:
            y[s] = y.get(s, Fraction(0)) + delta
        newly = []
        for i, c in zip(remaining, crossings):
            load[i] += delta * c
            assert load[i] <= links[i].cost, "dual load exceeded cost, increment was too large"
            if load[i] == links[i].cost:
                newly.append(i)
        newly.sort(key=key)
        for i in newly:
            in_added[i] = True
            added.append(i)
        records.append(
            IterationRecord(index=it, active_cores=tuple(cores), delta=delta, newly_tight=tuple(newly))
        )
    return added, DualSolution(dict(y)), records


def reverse_delete(inst: Instance, added: Sequence[int]) -> tuple[list[int], list[int]]:
    """Drop links in exact reverse append order when removal stays feasible.

    Returns (kept indices in original append order, deleted indices in the
    order they were removed).
    """
    kept = list(added)
    deleted: list[int] = []
    for idx in reversed(list(added)):
        trial = [j for j in kept if j != idx]
        if covers(inst, [inst.links[j] for j in trial]):
            kept = trial
            deleted.append(idx)
    return kept, deleted


def run(
    inst: Instance,
    policy: TiePolicy = TiePolicy.INPUT_ORDER,
    oracle: CoreOracle | None = None,
) -> RunResult:
    """Both phases end to end; the result's final set is a minimal cover."""
    added, dual, records = phase1(inst, policy=policy, oracle=oracle)
    final, deleted = reverse_delete(inst, added)
    assert covers(inst, [inst.links[i] for i in final])
    return RunResult(
        policy=policy,
        added=tuple(added),
        iterations=tuple(records),
        dual=dual,
        deleted=tuple(deleted),
        final=tuple(final),
    )


def dual_objective(dual: DualSolution) -> Fraction:
    return dual.objective()


def dual_feasible(inst: Instance, dual: DualSolution) -> bool:
    """Check the dual: supported on small cuts, nonnegative, within costs.

    A dual supported on a non-small cut is malformed rather than merely
    infeasible, so that raises; negative values or an overloaded link
    return False.
    """
    for s in dual.entries:
        if cut_degree(inst.graph, s) >= inst.k:
            raise VerificationError(f"dual is supported on {s}, which is not a small cut")
    if any(v < 0 for v in dual.entries.values()):
        return False
    return all(dual.load(ln) <= ln.cost for ln in inst.links)

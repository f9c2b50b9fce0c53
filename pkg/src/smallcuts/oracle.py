"""Ground-truth machinery: exhaustive optima, lemma verifiers, gap runs.

Everything here recomputes from first principles; nothing trusts the
generator's bookkeeping.  Verifiers return reports that name each check, so
a regression points at the exact identity or cut that broke.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .covering import (
    Instance,
    cores_bruteforce,
    covers,
    is_minimal_cover,
    link_crosses,
    violated_cuts,
)
from .errors import BoundExceededError, InfeasibleError, VerificationError
from .multigraph import Cut, cut_degree
from .tightgen import (
    AnalyticCoreOracle,
    GadgetParams,
    LabeledInstance,
    expected_family_slices,
    generate_instance,
)
from .wgmv import RunResult, TiePolicy, dual_feasible, run

DEFAULT_LINK_BOUND = 20


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerifierReport:
    title: str
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


@dataclass(frozen=True)
class GapResult:
    params: GadgetParams
    policy: TiePolicy
    alg_cost: Fraction
    opt_cost: Fraction
    dual_obj: Fraction
    ratio: Fraction
    opt_is_analytic: bool
    run: RunResult


@dataclass(frozen=True)
class SweepRow:
    k: int
    p: int
    ratio: Fraction
    formula_value: Fraction
    matches: bool
    opt_is_analytic: bool


def _scan_combos(
    inst: Instance,
    combos: Sequence[tuple[int, ...]],
    bound: Fraction | None,
) -> tuple[Fraction, tuple[int, ...]] | None:
    """Best (cost, combo) among feasible combos strictly under bound.

    Scans in the given (lexicographic) order, so the returned combo is the
    lexicographically first one attaining the chunk's best cost.
    """
    links = inst.links
    best: tuple[Fraction, tuple[int, ...]] | None = None
    for combo in combos:
        cost = sum((links[i].cost for i in combo), Fraction(0))
        if bound is not None and cost >= bound:
            continue
        if best is not None and cost >= best[0]:
            continue
        if covers(inst, [links[i] for i in combo]):
            best = (cost, combo)
    return best


def brute_force_optimum(
    inst: Instance,
    link_bound: int = DEFAULT_LINK_BOUND,
    jobs: int = 1,
) -> tuple[Fraction, tuple[int, ...]]:
    """Exact minimum-cost cover by subset enumeration.

    Deterministic tie break: cheapest cost, then fewest links, then
    lexicographically smallest index tuple.  Enumeration runs in increasing
    subset size; once the sum of the `size` smallest link costs cannot beat
    the incumbent, no larger subset can either, and the search stops.
    """
    m = len(inst.links)
    if m > link_bound:
        raise BoundExceededError(
            f"{m} links exceed the enumeration bound {link_bound}; raise link_bound to force it"
        )
    if covers(inst, []):
        return Fraction(0), ()
    if not covers(inst, inst.links):
        raise InfeasibleError("no feasible cover exists: all links together leave a small cut")
    prefix = [Fraction(0)] + list(itertools.accumulate(sorted(ln.cost for ln in inst.links)))
    best: tuple[Fraction, tuple[int, ...]] | None = None
    for size in range(1, m + 1):
        if best is not None and prefix[size] >= best[0]:
            break
        bound = best[0] if best is not None else None
        combos = list(itertools.combinations(range(m), size))
        if jobs > 1 and len(combos) > 1:
            step = (len(combos) + jobs - 1) // jobs
            chunks = [combos[i : i + step] for i in range(0, len(combos), step)]
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_scan_combos, itertools.repeat(inst), chunks, itertools.repeat(bound)))
            found = [r for r in results if r is not None]
            level_best = min(found) if found else None
        else:
            level_best = _scan_combos(inst, combos, bound)
        if level_best is not None and (best is None or level_best[0] < best[0]):
            best = level_best
    assert best is not None, "feasible overall but no subset found; enumeration is broken"
    cost, combo = best
    assert covers(inst, [inst.links[i] for i in combo])
    return cost, tuple(combo)


def _fmt_cut(s: Cut, inst: Instance) -> str:
    return "{" + ",".join(inst.graph.label_of(v) for v in s.nodes()) + "}"


def _fmt_cuts(cuts: Sequence[Cut], inst: Instance) -> str:
    return "[" + ", ".join(_fmt_cut(s, inst) for s in cuts) + "]"


def _degree_checks(labeled: LabeledInstance) -> list[Check]:
    """The degree identities quoted in the core characterizations, rechecked."""
    params = labeled.params
    q, p, k = params.q, params.p, params.k
    g = labeled.instance.graph
    n = g.n
    z, b, r = 4 * p, 4 * p + 1, 4 * p + 2

    out: list[Check] = []

    def check(name: str, got: int, want: int) -> None:
        out.append(Check(name, got == want, f"got {got}, want {want}"))

    check("d(r) = k-p", g.node_degree(r), k - p)
    check("d(b) = 2k-2pq-1", g.node_degree(b), 2 * k - 2 * p * q - 1)
    c_nodes = [z]
    for i in range(p):
        t, a, x, y = 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3
        s = f"_{i + 1}" if p > 1 else ""
        check(f"d(t{s}) = k-1", g.node_degree(t), k - 1)
        check(f"d(a{s}) = k", g.node_degree(a), k)
        check(f"d(x{s}) = k", g.node_degree(x), k)
        check(f"d(y{s}) = 2k-2q", g.node_degree(y), 2 * k - 2 * q)
        check(f"d(A{s}) = 2q-1", cut_degree(g, Cut.of((t, a), n)), 2 * q - 1)
        check(f"d(X{s}) = k-1", cut_degree(g, Cut.of((t, a, x), n)), k - 1)
        check(f"d(Y{s}) = k-1", cut_degree(g, Cut.of((t, a, x, y), n)), k - 1)
        c_nodes += [x, y]
    check("d(C) = k-1", cut_degree(g, Cut.of(tuple(c_nodes), n)), k - 1)
    if p == 1:
        check("d(z) = 2k-2q-1", g.node_degree(z), 2 * k - 2 * q - 1)
        check("d({x,y}) = k", cut_degree(g, Cut.of((2, 3), n)), k)
        check("d({y,z}) = 2k-2q-1", cut_degree(g, Cut.of((3, z), n)), 2 * k - 2 * q - 1)
    return out


def _non_membership_checks(labeled: LabeledInstance) -> list[Check]:
    """Degree facts the characterizations use to exclude cuts from the family."""
    params = labeled.params
    q, p, k = params.q, params.p, params.k
    inst = labeled.instance
    g = inst.graph
    n = g.n
    z, b = 4 * p, 4 * p + 1

    out: list[Check] = []
    out.append(
        Check("d(b) >= k", g.node_degree(b) >= k, f"d(b)={g.node_degree(b)}, k={k}")
    )
    for i in range(p):
        a = 4 * i + 1
        s = f"_{i + 1}" if p > 1 else ""
        got = cut_degree(g, Cut.of((a, b), n))
        want = g.node_degree(a) + g.node_degree(b)
        out.append(Check(f"d({{a{s},b}}) = d(a{s})+d(b)", got == want, f"got {got}, want {want}"))
    if p == 1:
        got = cut_degree(g, Cut.of((2, z), n))
        want = g.node_degree(2) + g.node_degree(z)
        out.append(Check("d({x,z}) = d(x)+d(z)", got == want, f"got {got}, want {want}"))
    bad = []
    for size in range(1, p + 1):
        for subset in itertools.combinations(range(p), size):
            mask = 0
            for i in subset:
                mask |= 0b11 << (4 * i)
            d = cut_degree(g, Cut(mask, n))
            if d != size * (2 * q - 1) or d >= k:
                bad.append((subset, d))
    out.append(
        Check(
            "d(union of A_i over I) = |I|(2q-1) < k",
            not bad,
            "all unions pass" if not bad else f"failed at {bad[0]}",
        )
    )
    return out


def verify_cores_lemma(
    params: GadgetParams, labeled: LabeledInstance | None = None
) -> VerifierReport:
    """Check the core characterization against exhaustive enumeration.

    Passing `labeled` overrides the generated instance, which is how
    mutation tests feed in a corrupted build.
    """
    if labeled is None:
        labeled = generate_instance(params.q, params.p, params.k, params.epsilon)
    inst = labeled.instance
    n = inst.n
    checks: list[Check] = []
    checks += _degree_checks(labeled)

    expected = expected_family_slices(params)
    got_cores = cores_bruteforce(inst, ())
    want_cores = list(expected.cores)
    checks.append(
        Check(
            "cores of the empty selection",
            got_cores == want_cores,
            f"got {_fmt_cuts(got_cores, inst)}, want {_fmt_cuts(want_cores, inst)}",
        )
    )

    c_mask = 1 << (4 * params.p)
    for i in range(params.p):
        c_mask |= 0b11 << (4 * i + 2)
    fr = violated_cuts(inst, ())
    got_slice = sorted(
        (s for s in fr if s.mask & c_mask != c_mask), key=lambda s: (s.size(), s.mask)
    )
    want_slice = list(expected.fr_minus_frc)
    missing = [s for s in want_slice if s not in got_slice]
    extra = [s for s in got_slice if s not in want_slice]
    detail = f"{len(got_slice)} enumerated, {len(want_slice)} predicted"
    if missing:
        detail += f"; missing {_fmt_cuts(missing, inst)}"
    if extra:
        detail += f"; extra {_fmt_cuts(extra, inst)}"
    checks.append(Check("small cuts avoiding r and not containing C", not missing and not extra, detail))

    if params.p >= 2:
        union = Cut(0b11 | 0b11 << 4, n)
        checks.append(
            Check(
                "A_1 u A_2 appears in the enumerated family",
                any(s == union for s in fr),
                _fmt_cut(union, inst),
            )
        )
    checks += _non_membership_checks(labeled)
    title = f"cores lemma at q={params.q}, p={params.p}, k={params.k}"
    return VerifierReport(title, tuple(checks))


def _unique_cover_check(
    inst: Instance,
    name: str,
    cut: Cut,
    pool: Sequence[int],
    expect: int,
) -> Check:
    crossing = [i for i in pool if link_crosses(inst.links[i], cut)]
    return Check(name, crossing == [expect], f"crossing links {crossing}, expected [{expect}]")


def verify_feasibility_lemma(
    params: GadgetParams, labeled: LabeledInstance | None = None
) -> VerifierReport:
    """Check minimal feasibility of both solutions and the uniqueness facts."""
    if labeled is None:
        labeled = generate_instance(params.q, params.p, params.k, params.epsilon)
    inst = labeled.instance
    p = params.p
    n = inst.n
    red = labeled.red()
    blue = labeled.blue()
    checks: list[Check] = []

    all_indices = sorted(labeled.red_links + labeled.blue_links)
    checks.append(
        Check(
            "red and blue partition the link set",
            all_indices == list(range(len(inst.links)))
            and not set(labeled.red_links) & set(labeled.blue_links),
            f"red {labeled.red_links}, blue {labeled.blue_links}",
        )
    )
    checks.append(Check("red is feasible", covers(inst, red)))
    checks.append(Check("blue is feasible", covers(inst, blue)))
    checks.append(Check("red is inclusion-minimal", is_minimal_cover(inst, red)))
    checks.append(Check("blue is inclusion-minimal", is_minimal_cover(inst, blue)))

    r = 4 * p + 2
    for i in range(p):
        t = 4 * i
        s = f"_{i + 1}" if p > 1 else ""
        t_sing = Cut.of((t,), n)
        x_cut = Cut.of((t, t + 1, t + 2), n)
        y_cut = Cut.of((t, t + 1, t + 2, t + 3), n)
        tx_i, ay_i, yr_i = p + 1 + 3 * i, p + 2 + 3 * i, p + 3 + 3 * i
        checks.append(
            _unique_cover_check(inst, f"only red link covering {{t{s}}} is t{s}x{s}", t_sing, labeled.red_links, tx_i)
        )
        checks.append(
            _unique_cover_check(inst, f"only red link covering X{s} is a{s}y{s}", x_cut, labeled.red_links, ay_i)
        )
        checks.append(
            _unique_cover_check(inst, f"only red link covering Y{s} is y{s}r", y_cut, labeled.red_links, yr_i)
        )
        checks.append(
            _unique_cover_check(inst, f"only blue link covering {{t{s}}} is t{s}b", t_sing, labeled.blue_links, i)
        )
    checks.append(
        _unique_cover_check(
            inst, "only blue link covering the complement of {r} is rz", Cut.of((r,), n), labeled.blue_links, p
        )
    )
    title = f"feasibility lemma at q={params.q}, p={params.p}, k={params.k}"
    return VerifierReport(title, tuple(checks))


def gap_experiment(
    params: GadgetParams,
    policy: TiePolicy = TiePolicy.ADVERSARIAL,
    link_bound: int = DEFAULT_LINK_BOUND,
    jobs: int = 1,
) -> GapResult:
    """Run the two-phase algorithm against the exact optimum.

    The optimum is enumerated when the link count is within bound.  Above
    the bound the exact-cost family still has a closed-form optimum p+2,
    used only in the unperturbed case and flagged as analytic.
    """
    labeled = generate_instance(params.q, params.p, params.k, params.epsilon)
    inst = labeled.instance
    result = run(inst, policy=policy, oracle=AnalyticCoreOracle(labeled))
    alg_cost = result.final_cost(inst)
    if len(inst.links) <= link_bound:
        opt_cost, _ = brute_force_optimum(inst, link_bound=link_bound, jobs=jobs)
        analytic = False
    elif params.epsilon == 0:
        opt_cost = Fraction(params.p + 2)
        analytic = True
    else:
        raise BoundExceededError(
            f"{len(inst.links)} links exceed the bound {link_bound} and the perturbed "
            "variant has no closed-form optimum here; raise link_bound"
        )
    dual_obj = result.dual.objective()
    if not dual_feasible(inst, result.dual):
        raise VerificationError("phase 1 produced an infeasible dual")
    if dual_obj > opt_cost:
        raise VerificationError(f"dual objective {dual_obj} exceeds the optimum {opt_cost}")
    if alg_cost > 5 * dual_obj:
        raise VerificationError(f"cost {alg_cost} exceeds 5 times the dual bound {dual_obj}")
    return GapResult(
        params=params,
        policy=policy,
        alg_cost=alg_cost,
        opt_cost=opt_cost,
        dual_obj=dual_obj,
        ratio=alg_cost / opt_cost,
        opt_is_analytic=analytic,
        run=result,
    )


def gap_sweep(
    k_list: Sequence[int],
    link_bound: int = DEFAULT_LINK_BOUND,
    jobs: int = 1,
) -> list[SweepRow]:
    """Worst-case ratio per threshold: q=1 and the largest admissible p.

    p = floor((k-1)/2), so odd k lands on 5(k-1)/(k+3) and even k on
    5(k-2)/(k+2); both are just 5p/(p+2) after substituting p.
    """
    rows = []
    for k in k_list:
        p = (k - 1) // 2
        params = GadgetParams(q=1, p=p, k=k)
        res = gap_experiment(params, policy=TiePolicy.ADVERSARIAL, link_bound=link_bound, jobs=jobs)
        if k % 2 == 1:
            formula = Fraction(5 * (k - 1), k + 3)
        else:
            formula = Fraction(5 * (k - 2), k + 2)
        rows.append(
            SweepRow(
                k=k,
                p=p,
                ratio=res.ratio,
                formula_value=formula,
                matches=res.ratio == formula,
                opt_is_analytic=res.opt_is_analytic,
            )
        )
    return rows

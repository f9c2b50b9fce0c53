import dataclasses
import itertools
import random
from fractions import Fraction

import pytest

from smallcuts.covering import Instance, Link, covers_by_enumeration
from smallcuts.errors import BoundExceededError, InfeasibleError
from smallcuts.multigraph import MultiGraph
from smallcuts.oracle import (
    brute_force_optimum,
    gap_experiment,
    gap_sweep,
    verify_cores_lemma,
    verify_feasibility_lemma,
)
from smallcuts.tightgen import GadgetParams, generate_instance, glued_instance, single_gadget
from smallcuts.wgmv import TiePolicy


def test_optimum_single_gadget():
    cost, witness = brute_force_optimum(single_gadget(1, 3).instance)
    assert cost == 3
    assert witness == (0, 1)


def test_optimum_glued_is_blue():
    cost, witness = brute_force_optimum(glued_instance(1, 2, 5).instance)
    assert cost == 4
    assert witness == (0, 1, 2)


def test_optimum_trivial_when_already_connected():
    g = MultiGraph(3, [(0, 1, 3), (1, 2, 3), (0, 2, 3)])
    inst = Instance(graph=g, k=3, links=(Link(0, 2, 5),))
    assert brute_force_optimum(inst) == (Fraction(0), ())


def test_optimum_infeasible():
    g = MultiGraph(3, [(0, 1, 1), (1, 2, 1)])
    inst = Instance(graph=g, k=3, links=(Link(0, 1, 1),))
    with pytest.raises(InfeasibleError):
        brute_force_optimum(inst)


def test_optimum_link_bound():
    inst = glued_instance(1, 2, 5).instance
    with pytest.raises(BoundExceededError):
        brute_force_optimum(inst, link_bound=5)


def test_optimum_deterministic_tiebreak():
    g = MultiGraph(2, [(0, 1, 1)])
    inst = Instance(graph=g, k=2, links=(Link(0, 1, 1), Link(0, 1, 1), Link(0, 1, 2)))
    cost, witness = brute_force_optimum(inst)
    assert cost == 1
    assert witness == (0,)


def test_optimum_jobs_agree():
    inst = glued_instance(1, 2, 5).instance
    assert brute_force_optimum(inst, jobs=2) == brute_force_optimum(inst, jobs=1)


def _naive_optimum(inst: Instance):
    """Blind scan over all subsets using the enumeration route for coverage,
    keeping (cost, popcount, lex) order by construction of the scan."""
    m = len(inst.links)
    best = None
    for size in range(0, m + 1):
        for combo in itertools.combinations(range(m), size):
            if not covers_by_enumeration(inst, [inst.links[i] for i in combo]):
                continue
            cost = sum((inst.links[i].cost for i in combo), Fraction(0))
            if best is None or cost < best[0]:
                best = (cost, combo)
    return best


def test_optimum_matches_naive_on_random_instances():
    rng = random.Random(424242)
    checked = 0
    for _ in range(60):
        n = rng.randint(2, 5)
        edges = [
            (u, v, rng.randint(1, 3))
            for u, v in itertools.combinations(range(n), 2)
            if rng.random() < 0.6
        ]
        links = tuple(
            Link(u, v, rng.randint(0, 3))
            for u, v in itertools.combinations(range(n), 2)
            if rng.random() < 0.6
        )
        inst = Instance(graph=MultiGraph(n, edges), k=rng.randint(1, 4), links=links)
        naive = _naive_optimum(inst)
        if naive is None:
            with pytest.raises(InfeasibleError):
                brute_force_optimum(inst)
            continue
        got = brute_force_optimum(inst)
        assert got == naive
        checked += 1
    assert checked >= 20


@pytest.mark.parametrize("q,p,k", [(1, 1, 3), (1, 2, 5), (2, 2, 9)])
def test_cores_lemma_verifier_passes(q, p, k):
    report = verify_cores_lemma(GadgetParams(q=q, p=p, k=k))
    assert report.passed, report.failures()


def test_cores_lemma_verifier_catches_br_mutation():
    lab = glued_instance(1, 2, 5)
    edges = [(u, v, m + (1 if (u, v) == (9, 10) else 0)) for u, v, m in lab.instance.graph.edges]
    graph = MultiGraph(11, edges, labels=lab.instance.graph.labels)
    mutated = dataclasses.replace(lab, instance=dataclasses.replace(lab.instance, graph=graph))
    report = verify_cores_lemma(lab.params, mutated)
    assert not report.passed
    names = {c.name for c in report.failures()}
    assert "d(r) = k-p" in names
    assert "d(b) = 2k-2pq-1" in names


def test_mutation_sensitivity_every_sampled_edge():
    lab = glued_instance(1, 2, 5)
    base = lab.instance.graph.edges
    sampled = [(0, 1), (2, 3), (8, 9), (9, 10), (3, 8)]
    for target in sampled:
        for delta in (+1, -1):
            mult = dict(((u, v), m) for u, v, m in base)[target]
            if mult + delta < 0:
                continue
            edges = [
                (u, v, m + (delta if (u, v) == target else 0)) for u, v, m in base
            ]
            graph = MultiGraph(11, edges, labels=lab.instance.graph.labels)
            mutated = dataclasses.replace(
                lab, instance=dataclasses.replace(lab.instance, graph=graph)
            )
            report = verify_cores_lemma(lab.params, mutated)
            assert not report.passed, (target, delta)


@pytest.mark.parametrize("q,p,k", [(1, 1, 3), (1, 2, 5), (2, 2, 9)])
def test_feasibility_lemma_verifier_passes(q, p, k):
    report = verify_feasibility_lemma(GadgetParams(q=q, p=p, k=k))
    assert report.passed, report.failures()


def test_red_without_yr_leaves_y_cut_uncovered():
    from smallcuts.covering import covers, violated_cuts
    from smallcuts.multigraph import Cut

    lab = glued_instance(1, 2, 5)
    inst = lab.instance
    red = lab.red()
    short = [ln for ln in red if (ln.u, ln.v) != (3, 10)]  # drop y_1 r
    assert len(short) == len(red) - 1
    assert not covers(inst, short)
    leftovers = violated_cuts(inst, short)
    assert Cut.of([0, 1, 2, 3], 11) in leftovers  # Y_1


def test_gap_experiment_values():
    adv = gap_experiment(GadgetParams(q=1, p=2, k=5), TiePolicy.ADVERSARIAL)
    assert (adv.alg_cost, adv.opt_cost, adv.dual_obj) == (10, 4, 4)
    assert adv.ratio == Fraction(5, 2)
    assert not adv.opt_is_analytic
    hlp = gap_experiment(GadgetParams(q=1, p=2, k=5), TiePolicy.HELPFUL)
    assert hlp.ratio == 1
    assert hlp.alg_cost == 4
    three = gap_experiment(GadgetParams(q=1, p=3, k=7), TiePolicy.ADVERSARIAL)
    assert three.ratio == 3


def test_gap_experiment_perturbed_optimum_is_exact():
    res = gap_experiment(
        GadgetParams(q=1, p=2, k=5, epsilon=Fraction(1, 100)), TiePolicy.HELPFUL
    )
    # cheapest perturbed cover swaps rz out for a single y_i r link
    assert res.opt_cost == 4 + Fraction(2, 100)
    assert res.alg_cost == 10


def test_gap_sweep_rows():
    rows = gap_sweep([5, 6, 9, 11])
    by_k = {row.k: row for row in rows}
    assert by_k[5].ratio == Fraction(5, 2) and by_k[5].p == 2
    assert by_k[6].ratio == Fraction(5, 2)
    assert by_k[9].ratio == Fraction(10, 3) and by_k[9].p == 4
    assert by_k[11].ratio == Fraction(25, 7) and by_k[11].opt_is_analytic
    assert all(row.matches for row in rows)
    assert not by_k[9].opt_is_analytic


def test_gap_sweep_even_odd_formulas():
    for k in (5, 7, 9, 11):
        (row,) = gap_sweep([k])
        assert row.formula_value == Fraction(5 * (k - 1), k + 3)
    for k in (6, 8, 10):
        (row,) = gap_sweep([k])
        assert row.formula_value == Fraction(5 * (k - 2), k + 2)


def test_generated_optimum_is_p_plus_2():
    for q, p, k in [(1, 1, 3), (2, 1, 5), (1, 2, 5), (1, 3, 7), (2, 2, 9)]:
        inst = generate_instance(q, p, k).instance
        cost, witness = brute_force_optimum(inst)
        assert cost == p + 2
        assert witness == tuple(range(p + 1))  # the blue links

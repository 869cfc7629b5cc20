import math
import random

import numpy as np
import pytest

from ufgdepth import (
    DavidsonModel,
    Degenerate,
    PairCounts,
    counts_from_posets,
    davidson_fit,
    davidson_prob,
    poset_from_edges,
    trivial_poset,
)
from ufgdepth.davidson import counts_from_sum_statistics


def _random_model(rng, k):
    pi = np.array([rng.uniform(0.2, 3.0) for _ in range(k)])
    pi = pi / pi.sum()
    return DavidsonModel(tuple(f"m{i}" for i in range(k)), tuple(pi),
                         rng.uniform(0.2, 2.0), 0.0, 0.0, True)


def _simulate(rng, model, n_per_pair):
    k = len(model.labels)
    wins = [[0] * k for _ in range(k)]
    ties = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            pw, pt, _ = model.prob(model.labels[i], model.labels[j])
            for _ in range(n_per_pair):
                r = rng.random()
                if r < pw:
                    wins[i][j] += 1
                elif r < pw + pt:
                    ties[i][j] += 1
                    ties[j][i] += 1
                else:
                    wins[j][i] += 1
    return PairCounts.from_lists(model.labels, wins, ties)


def test_probabilities_sum_to_one():
    rng = random.Random(2)
    for _ in range(50):
        model = _random_model(rng, rng.randint(2, 5))
        for a in model.labels:
            for b in model.labels:
                if a == b:
                    continue
                pw, pt, pl = model.prob(a, b)
                assert abs(pw + pt + pl - 1) < 1e-12
                # symmetry of the tie probability
                assert abs(pt - model.prob(b, a)[1]) < 1e-12


def test_probabilities_invariant_to_worth_scaling():
    m1 = DavidsonModel(("a", "b"), (0.2, 0.8), 0.7, 0.0, 0.0, True)
    m2 = DavidsonModel(("a", "b"), (2.0, 8.0), 0.7, 0.0, 0.0, True)
    assert m1.prob("a", "b") == pytest.approx(m2.prob("a", "b"), abs=1e-15)


def test_parameter_recovery():
    rng = random.Random(7)
    model = _random_model(rng, 3)
    counts = _simulate(rng, model, 10_000)
    fit = davidson_fit(counts)
    assert fit.converged and fit.grad_norm <= 1e-8
    for got, true in zip(fit.worths, model.worths):
        assert abs(got - true) / true < 0.05
    assert abs(fit.theta - model.theta) / model.theta < 0.05
    assert abs(sum(fit.worths) - 1) < 1e-12


def test_reference_probability_example():
    # two-algorithm fit reported as log-worth coefficients -1.24203 and
    # 0.68258 (each half the log worth) with log tie parameter 0.37166;
    # implied win/tie probabilities for the stronger algorithm: 0.81 / 0.17
    pi = np.exp([2 * 0.68258, 2 * -1.24203])
    model = DavidsonModel(("gbm", "cart"), tuple(pi / pi.sum()),
                          math.exp(0.37166), 0.0, 0.0, True)
    pw, pt, _ = model.prob("gbm", "cart")
    assert abs(pw - 0.81) < 0.005
    assert abs(pt - 0.17) < 0.005


def test_fit_matches_poisson_glm():
    # the likelihood is equivalently a Poisson log-linear model with a free
    # per-pair intercept; cross-check worth ratios and tie parameter
    pytest.importorskip("statsmodels")
    import statsmodels.api as sm

    rng = random.Random(13)
    counts = _simulate(rng, _random_model(rng, 3), 2000)
    fit = davidson_fit(counts)

    labels = counts.labels
    k = len(labels)
    rows, y = [], []
    pair_ids = [(i, j) for i in range(k) for j in range(i + 1, k)]
    npair = len(pair_ids)
    for pid, (i, j) in enumerate(pair_ids):
        for kind, count in (("ij", counts.wins[i][j]), ("ji", counts.wins[j][i]),
                            ("tie", counts.ties[i][j])):
            x = [0.0] * (npair + (k - 1) + 1)
            x[pid] = 1.0  # mu_ij
            half = {"ij": (i, j), "ji": (j, i)}.get(kind)
            if half is not None:
                a, b = half
                if a < k - 1:
                    x[npair + a] += 0.5
                if b < k - 1:
                    x[npair + b] -= 0.5
            else:
                x[-1] = 1.0  # log theta
            rows.append(x)
            y.append(count)
    glm = sm.GLM(np.array(y), np.array(rows),
                 family=sm.families.Poisson()).fit(tol=1e-12)
    lam_glm = np.append(glm.params[npair:npair + k - 1], 0.0)
    pi_glm = np.exp(lam_glm)
    pi_glm /= pi_glm.sum()
    theta_glm = math.exp(glm.params[-1])
    assert np.allclose(pi_glm, fit.worths, atol=1e-6)
    assert abs(theta_glm - fit.theta) < 1e-6


def test_counts_from_posets(u3, worked_sample):
    sample, (p1, p2, p3) = worked_sample
    counts = counts_from_posets(u3.labels, sample.observations())
    assert counts.wins[0][1] == 2  # y1 above y2 in p1 and p2
    assert counts.wins[0][2] == 2
    assert counts.ties[0][1] == 1  # incomparable in p3
    assert counts.ties[1][2] == 2


def test_counts_from_sum_statistics(worked_sample):
    from ufgdepth import sum_statistics

    sample, _ = worked_sample
    stats = sum_statistics(sample)
    counts = counts_from_posets(sample.universe.labels, sample.observations())
    adapted = counts_from_sum_statistics(stats, counts.ties)
    assert adapted == counts
    fit = davidson_fit(stats, counts.ties)
    assert fit.converged


def test_degenerate_inputs():
    with pytest.raises(Degenerate):
        davidson_fit(PairCounts.from_lists(("a", "b"), [[0, 5], [0, 0]],
                                           [[0, 0], [0, 0]]))
    with pytest.raises(Degenerate):
        davidson_fit(PairCounts.from_lists(("a", "b", "c"),
                                           [[0, 1, 0], [1, 0, 0], [0, 0, 0]],
                                           [[0] * 3] * 3))


def test_all_ties_and_no_ties():
    all_ties = PairCounts.from_lists(("a", "b"), [[0, 0], [0, 0]], [[0, 9], [9, 0]])
    with pytest.raises(Degenerate):
        davidson_fit(all_ties)  # tie parameter would diverge
    no_ties = PairCounts.from_lists(("a", "b"), [[0, 7], [3, 0]], [[0, 0], [0, 0]])
    fit = davidson_fit(no_ties)
    assert fit.theta == 0.0
    assert abs(fit.prob("a", "b")[0] - 0.7) < 1e-6


def test_davidson_prob_helper():
    model = DavidsonModel(("a", "b"), (0.5, 0.5), 1.0, 0.0, 0.0, True)
    assert davidson_prob(model, "a", "b") == model.prob("a", "b")

"""Paired-comparison model with ties (Davidson's extension of Bradley-Terry).

For worths pi_i > 0 and tie parameter theta >= 0:

    P(i beats j) = pi_i / (pi_i + pi_j + theta * sqrt(pi_i * pi_j))
    P(i ties j)  = theta * sqrt(pi_i * pi_j) / (same denominator)

Fitted by direct maximum likelihood with analytic gradients; the last
algorithm's log-worth is pinned to zero for identifiability.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize, root

from .errors import Degenerate, EmptyInput

GRAD_TOL = 1e-8


@dataclass(frozen=True)
class PairCounts:
    """Aggregated outcomes: wins[i][j] = times i beat j; ties symmetric."""

    labels: tuple[str, ...]
    wins: tuple[tuple[int, ...], ...]
    ties: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k = len(self.labels)
        if k < 2:
            raise EmptyInput("need at least two algorithms to compare")
        for i in range(k):
            for j in range(k):
                if self.ties[i][j] != self.ties[j][i]:
                    raise ValueError("tie counts must be symmetric")
                if self.wins[i][j] < 0 or self.ties[i][j] < 0:
                    raise ValueError("negative count")

    @classmethod
    def from_lists(cls, labels, wins, ties) -> "PairCounts":
        return cls(tuple(labels),
                   tuple(tuple(int(x) for x in row) for row in wins),
                   tuple(tuple(int(x) for x in row) for row in ties))


@dataclass(frozen=True)
class DavidsonModel:
    labels: tuple[str, ...]
    worths: tuple[float, ...]      # normalized to sum 1
    theta: float
    log_likelihood: float
    grad_norm: float
    converged: bool

    def prob(self, a: str, b: str) -> tuple[float, float, float]:
        """(P(a beats b), P(tie), P(b beats a))."""
        i, j = self.labels.index(a), self.labels.index(b)
        pi, pj = self.worths[i], self.worths[j]
        s = self.theta * math.sqrt(pi * pj)
        den = pi + pj + s
        return pi / den, s / den, pj / den

    def to_json(self) -> str:
        return json.dumps({
            "labels": list(self.labels),
            "worths": list(self.worths),
            "theta": self.theta,
            "log_likelihood": self.log_likelihood,
            "grad_norm": self.grad_norm,
            "converged": self.converged,
        }, indent=2)


def counts_from_posets(labels, posets) -> PairCounts:
    """Tally pairwise outcomes across a sample of posets: a strict edge is a
    win, incomparability is a tie."""
    k = len(labels)
    wins = [[0] * k for _ in range(k)]
    ties = [[0] * k for _ in range(k)]
    for p in posets:
        for i in range(k):
            for j in range(i + 1, k):
                a, b = labels[i], labels[j]
                if p.has(a, b):
                    wins[i][j] += 1
                elif p.has(b, a):
                    wins[j][i] += 1
                else:
                    ties[i][j] += 1
                    ties[j][i] += 1
    return PairCounts.from_lists(labels, wins, ties)


def counts_from_sum_statistics(stats, ties) -> PairCounts:
    """Adapt an edge-count matrix plus a symmetric tie matrix; the win count
    for (i, j) is the number of observations whose relation has that edge."""
    labels = stats.universe.labels
    k = len(labels)
    wins = [[0 if i == j else stats.w(labels[i], labels[j]) for j in range(k)]
            for i in range(k)]
    return PairCounts.from_lists(labels, wins, ties)


def davidson_fit(counts, ties=None, grad_tol: float = GRAD_TOL) -> DavidsonModel:
    """Maximum-likelihood fit; raises Degenerate when the likelihood has no
    interior maximum (an algorithm with no wins or losses at all, or no
    comparisons involving it).

    Accepts either aggregated PairCounts, or an edge-count matrix together
    with a tie-count matrix.
    """
    if ties is not None:
        counts = counts_from_sum_statistics(counts, ties)
    k = len(counts.labels)
    W = np.array(counts.wins, dtype=float)
    T = np.array(counts.ties, dtype=float)
    total_ties = T.sum() / 2

    if W.sum() == 0:
        # only ties: the tie parameter diverges, no interior maximum
        raise Degenerate("no decisive comparisons at all")
    played = W + W.T + T
    for i in range(k):
        if played[i].sum() == 0:
            raise Degenerate(f"{counts.labels[i]} has no comparisons")
        if (W[i].sum() + T[i].sum() / 2) == 0:
            raise Degenerate(f"{counts.labels[i]} never wins or ties")
        if (W[:, i].sum() + T[i].sum() / 2) == 0:
            raise Degenerate(f"{counts.labels[i]} never loses or ties")

    if total_ties == 0:
        # theta's ML estimate is 0: plain Bradley-Terry on the wins
        return _fit(counts, W, T, fit_theta=False, grad_tol=grad_tol)
    return _fit(counts, W, T, fit_theta=True, grad_tol=grad_tol)


def _fit(counts: PairCounts, W: np.ndarray, T: np.ndarray,
         fit_theta: bool, grad_tol: float) -> DavidsonModel:
    k = len(counts.labels)
    # parameters: log-worths for items 0..k-2 (last pinned to 0), then
    # log(theta) when ties are present
    npar = (k - 1) + (1 if fit_theta else 0)

    def unpack(x):
        lam = np.append(x[:k - 1], 0.0)
        theta = math.exp(x[k - 1]) if fit_theta else 0.0
        return lam, theta

    def negll_grad(x):
        lam, theta = unpack(x)
        pi = np.exp(lam)
        ll = 0.0
        glam = np.zeros(k)
        gtheta = 0.0
        for i in range(k):
            for j in range(i + 1, k):
                w_ij, w_ji, t = W[i, j], W[j, i], T[i, j]
                n_tot = w_ij + w_ji + t
                if n_tot == 0:
                    continue
                a, b = pi[i], pi[j]
                s = math.sqrt(a * b)
                den = a + b + theta * s
                ll += w_ij * lam[i] + w_ji * lam[j] \
                    + t * (math.log(theta * s) if t else 0.0) \
                    - n_tot * math.log(den)
                common = n_tot / den
                glam[i] += w_ij + t / 2 - common * (a + theta * s / 2)
                glam[j] += w_ji + t / 2 - common * (b + theta * s / 2)
                gtheta += t - common * theta * s
        g = np.empty(npar)
        g[:k - 1] = -glam[:k - 1]
        if fit_theta:
            g[k - 1] = -gtheta
        return -ll, g

    x0 = np.zeros(npar)
    res = minimize(negll_grad, x0, jac=True, method="BFGS",
                   options={"gtol": grad_tol / 10, "maxiter": 2000})
    x = res.x
    fun = res.fun
    # polish: BFGS stops on step size at large count scales; finish the last
    # digits by solving the stationarity condition directly
    if np.linalg.norm(negll_grad(x)[1]) > grad_tol:
        sol = root(lambda z: negll_grad(z)[1], x, tol=1e-14)
        cand_fun, cand_grad = negll_grad(sol.x)
        if np.linalg.norm(cand_grad) < np.linalg.norm(negll_grad(x)[1]) \
                and cand_fun <= fun + 1e-9 * abs(fun):
            x, fun = sol.x, cand_fun
    gnorm = float(np.linalg.norm(negll_grad(x)[1]))
    lam, theta = unpack(x)
    pi = np.exp(lam)
    worths = tuple(float(v) for v in pi / pi.sum())  # probabilities are scale-free
    return DavidsonModel(counts.labels, worths, float(theta),
                         float(-fun), gnorm, gnorm <= grad_tol)


def davidson_prob(model: DavidsonModel, a: str, b: str) -> tuple[float, float, float]:
    return model.prob(a, b)

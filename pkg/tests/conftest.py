"""Shared generators and reference implementations for the test suite.

The references here are deliberately slow and literal: growing enumerates
every candidate condition one by one, pruning re-evaluates every removal
from scratch, and the survival statistics are redone in exact Fraction
arithmetic. Production code must agree with them bitwise for
classification, exactly for integer-label regression, and to 1e-9 for
survival scores.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from csmine.contrast import ConfusionMatrix, condition_mask
from csmine.data import Attribute, CoverageSet, DataSet, derive_groups_survival
from csmine.diversity import MULTIPLIER_FLOOR, PenaltyState
from csmine.induction import possible_conditions
from csmine.quality import _LogRankScorer, measure_for_task


# ---------------------------------------------------------------------------
# dataset generators

def random_classification(seed, n_min=40, n_max=240, max_attrs=6, n_groups=None,
                          missing_rate=0.02):
    """Random mixed-attribute dataset with a mild planted signal on group 0.

    Numeric values come from small quantized grids so candidate counts stay
    bounded and cross-seed structure is comparable.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_min, n_max + 1))
    k_attrs = int(rng.integers(2, max_attrs + 1))
    g = int(n_groups if n_groups is not None else rng.integers(2, 5))
    codes = np.concatenate([np.arange(g), rng.integers(0, g, n - g)]).astype(np.int32)
    rng.shuffle(codes)
    attrs, cols = [], []
    for i in range(k_attrs):
        bias = (codes == 0) & (rng.random(n) < 0.7)
        if rng.random() < 0.5:
            grid = np.unique(np.round(rng.uniform(-3, 3, int(rng.integers(3, 9))), 1))
            col = rng.choice(grid, n)
            col[bias] = rng.choice(grid[: max(1, grid.size // 2)], int(bias.sum()))
            if missing_rate:
                col[rng.random(n) < missing_rate] = np.nan
            attrs.append(Attribute(f"x{i}", "numeric"))
        else:
            k = int(rng.integers(2, 5))
            col = rng.integers(0, k, n).astype(np.int32)
            col[bias] = 0
            if missing_rate:
                col[rng.random(n) < missing_rate] = -1
            attrs.append(Attribute(f"x{i}", "nominal", tuple(f"v{j}" for j in range(k))))
        cols.append(col)
    return DataSet(
        attrs, cols,
        relation=f"random{seed}",
        task="classification",
        group_names=tuple(f"g{j}" for j in range(g)),
        group_codes=codes,
    )


def random_regression(seed, n_min=40, n_max=160, max_attrs=5):
    """Two-group dataset with integer labels, so label sums are exact."""
    base = random_classification(seed + 1000, n_min, n_max, max_attrs, n_groups=2)
    rng = np.random.default_rng(seed + 1000)
    n = base.n_examples
    labels = rng.integers(0, 10, n) + 5 * (base.group_codes == 0)
    return DataSet(
        base.attributes,
        [base.column(i) for i in range(len(base.attributes))],
        relation=base.relation,
        task="regression",
        group_names=base.group_names,
        group_codes=base.group_codes,
        labels=labels.astype(np.float64),
    )


def random_survival(seed, n_min=40, n_max=160, max_attrs=5):
    """Two-group dataset with integer event times and ~30% censoring."""
    base = random_classification(seed + 2000, n_min, n_max, max_attrs, n_groups=2)
    rng = np.random.default_rng(seed + 2000)
    n = base.n_examples
    times = rng.integers(1, 40, n).astype(np.float64)
    times[base.group_codes == 0] = rng.integers(1, 15, int((base.group_codes == 0).sum()))
    status = (rng.random(n) < 0.7).astype(np.int8)
    return DataSet(
        base.attributes,
        [base.column(i) for i in range(len(base.attributes))],
        relation=base.relation,
        task="survival",
        group_names=base.group_names,
        group_codes=base.group_codes,
        times=times,
        status=status,
    )


def bimodal_survival(seed=7, n=260):
    """Survival data with two prognosis regimes tied to the attributes.

    A risk score over biomarker and stage decides whether an observation
    draws its time from a short or a long exponential; follow-up is cut off
    administratively, censoring the long tail. Groups are then derived from
    the median observation time, giving an early-event group against a
    long-survivor group.
    """
    rng = np.random.default_rng(seed)
    biomarker = np.round(rng.normal(0.0, 1.0, n), 1)
    stage = rng.integers(0, 3, n)
    noise = np.round(rng.normal(0.0, 1.0, n), 1)
    risk = biomarker + 0.8 * (stage == 2) - 0.4 * (stage == 0) + 0.3 * rng.normal(size=n)
    poor = risk > 0.2
    times = np.where(poor, rng.exponential(4.0, n), rng.exponential(40.0, n))
    times = np.round(times, 1) + 0.1
    cutoff = 60.0
    status = (times <= cutoff).astype(np.int8)
    times = np.minimum(times, cutoff)
    attrs = (
        Attribute("biomarker", "numeric"),
        Attribute("noise", "numeric"),
        Attribute("stage", "nominal", ("I", "II", "III")),
    )
    ds = DataSet(
        attrs,
        [biomarker, noise, stage.astype(np.int32)],
        relation="prognosis",
        task="survival",
        times=times,
        status=status,
    )
    return derive_groups_survival(ds)


# ---------------------------------------------------------------------------
# exact survival oracles

def km_oracle(pairs):
    """Kaplan-Meier table in Fraction arithmetic, one row per event time.

    Computed by direct counting per event time rather than a removal sweep,
    so it shares no structure with the production estimator.
    """
    pairs = [(float(t), int(s)) for t, s in pairs]
    rows = []
    surv = Fraction(1)
    for t in sorted({t for t, s in pairs if s == 1}):
        n_at = sum(1 for ti, _ in pairs if ti >= t)
        d = sum(1 for ti, si in pairs if ti == t and si == 1)
        surv *= 1 - Fraction(d, n_at)
        rows.append((t, surv, n_at, d))
    return rows


def log_rank_oracle(a, b):
    """Two-sample log-rank chi-square as an exact Fraction."""
    a = [(float(t), int(s)) for t, s in a]
    b = [(float(t), int(s)) for t, s in b]
    observed = Fraction(0)
    expected = Fraction(0)
    variance = Fraction(0)
    for t in sorted({t for t, s in a + b if s == 1}):
        n1 = sum(1 for ti, _ in a if ti >= t)
        n2 = sum(1 for ti, _ in b if ti >= t)
        d1 = sum(1 for ti, si in a if ti == t and si == 1)
        d2 = sum(1 for ti, si in b if ti == t and si == 1)
        n, d = n1 + n2, d1 + d2
        if n == 0 or d == 0:
            continue
        observed += d1
        expected += Fraction(n1 * d, n)
        if n > 1:
            variance += Fraction(n1 * n2 * d * (n - d), n * n * (n - 1))
    if variance <= 0:
        return Fraction(0)
    return (observed - expected) ** 2 / variance


# ---------------------------------------------------------------------------
# literal grow / prune references

def _naive_modifier(s, b, pi, p, rew):
    spi = s * pi
    if spi >= 1.0:
        return MULTIPLIER_FLOOR
    x = rew / p if p > 0 else 0.0
    slope = 1.0 / (1.0 - spi) - 1.0
    phi = 1.0 if x <= b else 1.0 + ((x - b) / (1.0 - b)) * slope
    m = (1.0 - spi) * phi
    return m if m > MULTIPLIER_FLOOR else MULTIPLIER_FLOOR


def _naive_raw_quality(ds, params, pos, P, N):
    """Per-coverage raw quality function for the reference implementations.

    Survival scoring reuses the production rank-grid scorer on purpose: its
    correctness is pinned separately against log_rank, and sharing it keeps
    the grow/prune comparison exact instead of within-tolerance.
    """
    measure = params.measure or measure_for_task(ds.task)
    if measure == "correlation":
        def raw_q(mask, p, n):
            fp, fn, fP, fN = float(p), float(n), float(P), float(N)
            den_sq = fP * fN * (fp + fn) * (fP - fp + fN - fn)
            if den_sq > 0:
                return (fp * fN - fP * fn) / math.sqrt(den_sq)
            return 0.0
        return raw_q
    if measure == "regression":
        labels = ds.labels
        pos_mean = float(np.mean(labels[pos]))

        def raw_q(mask, p, n):
            idx = np.flatnonzero(mask)
            if idx.size == 0:
                return float("-inf")
            return -abs(float(labels[idx].sum()) / idx.size - pos_mean)
        return raw_q
    scorer = _LogRankScorer(ds, pos)

    def raw_q(mask, p, n):
        return -scorer.score(np.flatnonzero(mask))
    return raw_q


def naive_grow(ds, group, params, uncovered, reward_uncovered=None, penalty=None,
               minsupp_all=None):
    """Candidate-by-candidate replication of the growing loop.

    Returns the grown condition list, or None when growing fails either
    support gate at the start or the final negative-to-positive ceiling.
    """
    pos = ds.group_mask(group).mask
    neg = ~pos
    P = int(np.count_nonzero(pos))
    N = int(np.count_nonzero(neg))
    d_u = np.asarray(uncovered, dtype=bool)
    r_u = d_u if reward_uncovered is None else np.asarray(reward_uncovered, dtype=bool)
    penalty = penalty if penalty is not None else PenaltyState(len(ds.attributes))
    minsupp_all = params.minsupps[0] if minsupp_all is None else minsupp_all
    raw_q = _naive_raw_quality(ds, params, pos, P, N)
    s, b = params.penalty_strength, params.reward_saturation

    if np.count_nonzero(d_u) / P < params.minsupp_new:
        return None
    cov = np.ones(ds.n_examples, dtype=bool)
    conditions = []
    attr_set = set()
    while True:
        cov_count = int(np.count_nonzero(cov))
        best_q = best_cov = best_cond = None
        for cond in possible_conditions(CoverageSet(cov), ds):
            cmask = cov & condition_mask(cond, ds)
            covc = int(np.count_nonzero(cmask))
            if covc >= cov_count:
                continue
            p = int(np.count_nonzero(cmask & pos))
            if p / P < minsupp_all:
                continue
            p_new = int(np.count_nonzero(cmask & d_u))
            if p_new / P < params.minsupp_new:
                continue
            n = int(np.count_nonzero(cmask & neg))
            rew = int(np.count_nonzero(cmask & r_u))
            pi = penalty.premise_penalty(attr_set | {cond.attr_index})
            q = raw_q(cmask, p, n)
            m = _naive_modifier(s, b, pi, p, rew)
            qmod = q * m if q >= 0 else q / m
            if best_q is None or qmod > best_q or (qmod == best_q and covc > best_cov):
                best_q, best_cov, best_cond = qmod, covc, cond
        if best_cond is None:
            break
        cov = cov & condition_mask(best_cond, ds)
        conditions.append(best_cond)
        attr_set.add(best_cond.attr_index)
    if not conditions:
        return None
    p = int(np.count_nonzero(cov & pos))
    n = int(np.count_nonzero(cov & neg))
    if ConfusionMatrix(p, n, P, N).neg2pos > params.max_neg2pos:
        return None
    return conditions


def naive_prune(ds, group, conditions, params, uncovered=None, reward_uncovered=None,
                penalty=None):
    """From-scratch replication of the pruning rounds."""
    pos = ds.group_mask(group).mask
    neg = ~pos
    P = int(np.count_nonzero(pos))
    N = int(np.count_nonzero(neg))
    unc = pos if uncovered is None else np.asarray(uncovered, dtype=bool)
    r_u = unc if reward_uncovered is None else np.asarray(reward_uncovered, dtype=bool)
    penalty = penalty if penalty is not None else PenaltyState(len(ds.attributes))
    raw_q = _naive_raw_quality(ds, params, pos, P, N)
    s, b = params.penalty_strength, params.reward_saturation

    conditions = list(conditions)
    masks = [condition_mask(c, ds) for c in conditions]

    def cov_of(mks):
        m = np.ones(ds.n_examples, dtype=bool)
        for msk in mks:
            m = m & msk
        return m

    def modq(mask, attrs):
        p = int(np.count_nonzero(mask & pos))
        n = int(np.count_nonzero(mask & neg))
        q = raw_q(mask, p, n)
        pi = penalty.premise_penalty(attrs)
        rew = int(np.count_nonzero(mask & r_u))
        m = _naive_modifier(s, b, pi, p, rew)
        return q * m if q >= 0 else q / m

    while len(conditions) > 1:
        q_best = modq(cov_of(masks), set(c.attr_index for c in conditions))
        remove = -1
        for i in range(len(conditions)):
            cov_i = cov_of(masks[:i] + masks[i + 1:])
            p = int(np.count_nonzero(cov_i & pos))
            n = int(np.count_nonzero(cov_i & neg))
            if ConfusionMatrix(p, n, P, N).neg2pos > params.max_neg2pos:
                continue
            attrs = set(c.attr_index for j, c in enumerate(conditions) if j != i)
            qmod = modq(cov_i, attrs)
            if qmod >= q_best:
                remove = i
                q_best = qmod
        if remove < 0:
            break
        del conditions[remove]
        del masks[remove]
    return conditions


def condition_tuples(conditions):
    """Comparable view of a premise: (attr, op, value) with exact values."""
    return [(c.attr_index, c.op, c.value) for c in conditions]

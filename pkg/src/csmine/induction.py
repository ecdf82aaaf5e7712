"""Separate-and-conquer induction of contrast sets.

Each group of interest is mined over a descending ladder of minimum
support levels. At every level the miner runs repeated covering passes:
grow a premise condition by condition (every candidate must keep overall
support and new-example support above the level's floors), prune it back
greedily, then mark its positives as covered and continue until growing
fails. Attribute penalties accumulate across a level and push later passes
toward unused attributes; rewards cancel the penalty for sets that still
cover fresh positives. A level ends early once a pass yields nothing new.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .contrast import (
    EQ,
    GE,
    LT,
    NE,
    Condition,
    ConfusionMatrix,
    ContrastSet,
    canonicalize,
    condition_mask,
)
from .data import CoverageSet, DataSet
from .diversity import MULTIPLIER_FLOOR, PenaltyState
from .quality import MEASURES, _LogRankScorer, correlation, measure_for_task

__all__ = [
    "MiningParams",
    "AnnotatedContrastSet",
    "MiningEvent",
    "numeric_split_points",
    "possible_conditions",
    "grow",
    "prune",
    "mine_group",
    "mine_all",
]

WORKERS_ENV = "CSMINE_WORKERS"


@dataclass(frozen=True)
class MiningParams:
    """Induction parameters.

    ``minsupps`` is the descending ladder of minimum overall support
    fractions; ``minsupp_new`` the minimum fraction of positives a grown
    premise must take from the pass's uncovered pool; ``max_neg2pos`` the
    acceptance ceiling on (n/N)/(p/P). ``penalty_strength`` (s) and
    ``reward_saturation`` (b) steer the diversity modifier. ``measure``
    defaults to the task's own measure.
    """

    minsupps: tuple[float, ...] = (0.8, 0.5, 0.2, 0.1)
    minsupp_new: float = 0.1
    max_neg2pos: float = 0.5
    max_passes: int = 5
    penalty_strength: float = 0.5
    reward_saturation: float = 0.2
    mode: str = "one-vs-all"
    negative_group: str | None = None
    measure: str | None = None

    def __post_init__(self) -> None:
        if not self.minsupps:
            raise ValueError("minsupps must not be empty")
        for v in self.minsupps:
            if not 0 < v <= 1:
                raise ValueError("minsupp levels must be in (0, 1]")
        if any(a <= b for a, b in zip(self.minsupps, self.minsupps[1:])):
            raise ValueError("minsupp levels must be strictly descending")
        if not 0 < self.minsupp_new <= 1:
            raise ValueError("minsupp_new must be in (0, 1]")
        if self.max_neg2pos < 0:
            raise ValueError("max_neg2pos must be non-negative")
        if self.max_passes < 1:
            raise ValueError("max_passes must be at least 1")
        if self.penalty_strength < 0:
            raise ValueError("penalty_strength must be non-negative")
        if not 0 < self.reward_saturation <= 1:
            raise ValueError("reward_saturation must be in (0, 1]")
        if self.mode not in ("one-vs-all", "one-vs-one"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.measure is not None and self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}")


@dataclass(frozen=True)
class AnnotatedContrastSet:
    """An emitted, canonical contrast set with its acceptance statistics."""

    contrast_set: ContrastSet
    group: str
    pass_index: int
    minsupp_all: float
    p: int
    n: int
    p_new: int
    P: int
    N: int
    quality: float
    redundancy: float
    redundancy_with: int | None

    @property
    def support(self) -> float:
        return self.p / self.P if self.P else 0.0

    @property
    def precision(self) -> float:
        return self.p / (self.p + self.n) if (self.p + self.n) else 0.0


@dataclass(frozen=True)
class MiningEvent:
    """One acceptance during mining, duplicates included."""

    minsupp_all: float
    pass_index: int
    contrast_set: ContrastSet
    duplicate: bool
    p: int
    n: int
    p_new: int
    usage_after: tuple[int, ...]
    usage_total_after: int


def numeric_split_points(values: np.ndarray) -> np.ndarray:
    """Midpoints between consecutive distinct finite values, ascending.

    Midpoints that round down onto the lower value cannot separate anything
    and are dropped.
    """
    vals = np.asarray(values, dtype=np.float64)
    vals = np.unique(vals[~np.isnan(vals)])
    if vals.size < 2:
        return np.empty(0, dtype=np.float64)
    mids = (vals[:-1] + vals[1:]) / 2.0
    return mids[mids > vals[:-1]]


def possible_conditions(covered: CoverageSet, ds: DataSet) -> Iterator[Condition]:
    """Candidate conditions over the currently covered region.

    Numeric attributes yield ``< m`` then ``>= m`` for each midpoint between
    consecutive distinct covered values; nominal attributes yield ``= v``
    then ``!= v`` for each value observed among covered examples. Candidates
    come out in deterministic order: attribute declaration order, ascending
    threshold or category, ``<`` before ``>=``, ``=`` before ``!=``.
    """
    idx = covered.indices()
    for ai, attr in enumerate(ds.attributes):
        col = ds.column(ai)[idx]
        if attr.is_numeric:
            for m in numeric_split_points(col):
                yield Condition(ai, LT, float(m))
                yield Condition(ai, GE, float(m))
        else:
            observed = np.unique(col[col >= 0])
            for v in observed:
                yield Condition(ai, EQ, int(v))
                yield Condition(ai, NE, int(v))


@dataclass
class _Context:
    """Per-group mining state shared by grow and prune."""

    ds: DataSet
    params: MiningParams
    measure: str
    pos: np.ndarray           # bool mask of the group of interest
    neg: np.ndarray
    P: int
    N: int
    penalty: PenaltyState
    d_u: np.ndarray           # pass-local uncovered positives (minsupp-new gate)
    r_u: np.ndarray           # level-local reward baseline
    minsupp_all: float
    labels: np.ndarray | None = None
    pos_label_mean: float = 0.0
    survival_scorer: _LogRankScorer | None = None

    @classmethod
    def build(
        cls,
        ds: DataSet,
        group: str,
        params: MiningParams,
        measure: str,
        d_u: np.ndarray,
        r_u: np.ndarray,
        penalty: PenaltyState,
        minsupp_all: float,
    ) -> "_Context":
        pos = ds.group_mask(group).mask
        neg = ~pos
        P = int(np.count_nonzero(pos))
        N = int(np.count_nonzero(neg))
        if P == 0:
            raise ValueError(f"group {group!r} has no examples")
        if N == 0:
            raise ValueError(f"group {group!r} has no contrasting examples")
        ctx = cls(
            ds=ds,
            params=params,
            measure=measure,
            pos=pos,
            neg=neg,
            P=P,
            N=N,
            penalty=penalty,
            d_u=d_u,
            r_u=r_u,
            minsupp_all=minsupp_all,
        )
        if measure == "regression":
            if ds.labels is None:
                raise ValueError("regression measure needs a bound label column")
            ctx.labels = ds.labels
            ctx.pos_label_mean = float(np.mean(ds.labels[pos]))
        elif measure == "survival":
            ctx.survival_scorer = _LogRankScorer(ds, pos)
        return ctx

    def modifier(self, pi: float, p: np.ndarray, p_new_reward: np.ndarray) -> np.ndarray:
        """Diversity multiplier per candidate: (1 - s*pi) * phi, floored."""
        s = self.params.penalty_strength
        b = self.params.reward_saturation
        spi = s * pi
        p_arr = np.asarray(p, dtype=np.float64)
        if spi >= 1.0:
            return np.full(p_arr.shape, MULTIPLIER_FLOOR)
        x = np.divide(
            np.asarray(p_new_reward, dtype=np.float64),
            p_arr,
            out=np.zeros(p_arr.shape),
            where=p_arr > 0,
        )
        slope = 1.0 / (1.0 - spi) - 1.0
        phi = np.where(x <= b, 1.0, 1.0 + ((x - b) / (1.0 - b)) * slope)
        return np.maximum((1.0 - spi) * phi, MULTIPLIER_FLOOR)

    def modified(self, q: np.ndarray, m: np.ndarray) -> np.ndarray:
        q = np.asarray(q, dtype=np.float64)
        return np.where(q >= 0, q * m, q / m)


@dataclass
class _Candidates:
    """Scored candidates of one attribute, in canonical order."""

    attr_index: int
    numeric: bool
    values: np.ndarray        # thresholds or category codes, one per candidate
    sides: np.ndarray         # 0 = lt / eq, 1 = ge / ne
    p: np.ndarray
    n: np.ndarray
    p_new_pass: np.ndarray
    p_new_reward: np.ndarray
    covc: np.ndarray
    q: np.ndarray = field(default_factory=lambda: np.empty(0))


def _interleave(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.empty(a.size + b.size, dtype=np.result_type(a, b))
    out[0::2] = a
    out[1::2] = b
    return out


def _sweep_attribute(ctx: _Context, ai: int, cov_idx: np.ndarray) -> _Candidates | None:
    """Candidate statistics for one attribute over the covered region."""
    ds = ctx.ds
    col = ds.column(ai)[cov_idx]
    attr = ds.attributes[ai]
    if attr.is_numeric:
        fin = ~np.isnan(col)
        if not fin.any():
            return None
        vv = col[fin]
        sidx = cov_idx[fin]
        order = np.argsort(vv, kind="stable")
        sv = vv[order]
        sidx = sidx[order]
        bnd = np.flatnonzero(sv[1:] != sv[:-1])
        if bnd.size == 0:
            return None
        mids = (sv[bnd] + sv[bnd + 1]) / 2.0
        keep = mids > sv[bnd]
        bnd = bnd[keep]
        mids = mids[keep]
        if bnd.size == 0:
            return None
        cpos = np.cumsum(ctx.pos[sidx].astype(np.int64))
        cneg = np.cumsum(ctx.neg[sidx].astype(np.int64))
        cnew = np.cumsum(ctx.d_u[sidx].astype(np.int64))
        crew = np.cumsum(ctx.r_u[sidx].astype(np.int64))
        m = sv.size
        tot_pos, tot_neg, tot_new, tot_rew = cpos[-1], cneg[-1], cnew[-1], crew[-1]
        p_lt, p_ge = cpos[bnd], tot_pos - cpos[bnd]
        n_lt, n_ge = cneg[bnd], tot_neg - cneg[bnd]
        new_lt, new_ge = cnew[bnd], tot_new - cnew[bnd]
        rew_lt, rew_ge = crew[bnd], tot_rew - crew[bnd]
        c_lt = bnd + 1
        c_ge = m - c_lt
        cand = _Candidates(
            attr_index=ai,
            numeric=True,
            values=np.repeat(mids, 2),
            sides=np.tile(np.array([0, 1], dtype=np.int8), bnd.size),
            p=_interleave(p_lt, p_ge),
            n=_interleave(n_lt, n_ge),
            p_new_pass=_interleave(new_lt, new_ge),
            p_new_reward=_interleave(rew_lt, rew_ge),
            covc=_interleave(c_lt, c_ge),
        )
        cand.q = _score_candidates(ctx, cand, sidx=sidx, bnd=bnd)
        return cand
    valid = col >= 0
    if not valid.any():
        return None
    cc = col[valid].astype(np.int64)
    cidx = cov_idx[valid]
    k = len(attr.domain)
    cnt = np.bincount(cc, minlength=k)
    cnt_pos = np.bincount(cc, weights=ctx.pos[cidx].astype(np.float64), minlength=k).astype(np.int64)
    cnt_neg = np.bincount(cc, weights=ctx.neg[cidx].astype(np.float64), minlength=k).astype(np.int64)
    cnt_new = np.bincount(cc, weights=ctx.d_u[cidx].astype(np.float64), minlength=k).astype(np.int64)
    cnt_rew = np.bincount(cc, weights=ctx.r_u[cidx].astype(np.float64), minlength=k).astype(np.int64)
    observed = np.flatnonzero(cnt > 0)
    if observed.size == 0:
        return None
    m = cc.size
    tp, tn = cnt_pos.sum(), cnt_neg.sum()
    tnew, trew = cnt_new.sum(), cnt_rew.sum()
    p_eq, p_ne = cnt_pos[observed], tp - cnt_pos[observed]
    n_eq, n_ne = cnt_neg[observed], tn - cnt_neg[observed]
    new_eq, new_ne = cnt_new[observed], tnew - cnt_new[observed]
    rew_eq, rew_ne = cnt_rew[observed], trew - cnt_rew[observed]
    c_eq = cnt[observed]
    c_ne = m - c_eq
    cand = _Candidates(
        attr_index=ai,
        numeric=False,
        values=np.repeat(observed, 2),
        sides=np.tile(np.array([0, 1], dtype=np.int8), observed.size),
        p=_interleave(p_eq, p_ne),
        n=_interleave(n_eq, n_ne),
        p_new_pass=_interleave(new_eq, new_ne),
        p_new_reward=_interleave(rew_eq, rew_ne),
        covc=_interleave(c_eq, c_ne),
    )
    cand.q = _score_candidates(ctx, cand, cidx=cidx, cc=cc)
    return cand


def _score_candidates(
    ctx: _Context,
    cand: _Candidates,
    *,
    sidx: np.ndarray | None = None,
    bnd: np.ndarray | None = None,
    cidx: np.ndarray | None = None,
    cc: np.ndarray | None = None,
) -> np.ndarray:
    """Raw task-measure score per candidate."""
    if ctx.measure == "correlation":
        p = cand.p.astype(np.float64)
        n = cand.n.astype(np.float64)
        P, N = float(ctx.P), float(ctx.N)
        den_sq = P * N * (p + n) * (P - p + N - n)
        num = p * N - P * n
        with np.errstate(invalid="ignore", divide="ignore"):
            q = np.where(den_sq > 0, num / np.sqrt(den_sq), 0.0)
        return q
    if ctx.measure == "regression":
        assert ctx.labels is not None
        if cand.numeric:
            lab = np.cumsum(ctx.labels[sidx])
            tot = lab[-1]
            sums = _interleave(lab[bnd], tot - lab[bnd])
        else:
            k = len(ctx.ds.attributes[cand.attr_index].domain)
            per = np.bincount(cc, weights=ctx.labels[cidx], minlength=k)
            observed = cand.values[0::2]
            tot = per.sum()
            sums = _interleave(per[observed], tot - per[observed])
        covc = cand.covc.astype(np.float64)
        with np.errstate(invalid="ignore", divide="ignore"):
            means = np.where(covc > 0, sums / covc, 0.0)
        return -np.abs(means - ctx.pos_label_mean)
    assert ctx.survival_scorer is not None
    q = np.empty(cand.p.size, dtype=np.float64)
    if cand.numeric:
        for j in range(bnd.size):
            cut = bnd[j] + 1
            q[2 * j] = -ctx.survival_scorer.score(sidx[:cut])
            q[2 * j + 1] = -ctx.survival_scorer.score(sidx[cut:])
    else:
        observed = cand.values[0::2]
        for j, v in enumerate(observed):
            q[2 * j] = -ctx.survival_scorer.score(cidx[cc == v])
            q[2 * j + 1] = -ctx.survival_scorer.score(cidx[cc != v])
    return q


@dataclass
class _Grown:
    conditions: list[Condition]
    masks: list[np.ndarray]
    cov: np.ndarray


def _grow(ctx: _Context) -> _Grown | None:
    """Grow a premise until no candidate passes both support gates.

    Every iteration scores each candidate extension with the diversity
    modifier applied and adds the best one; ties go to the larger coverage,
    then to the earliest candidate in enumeration order. The finished
    premise must pass the negative-to-positive ceiling or growing fails.
    """
    params = ctx.params
    n_examples = ctx.ds.n_examples
    # same division form as the per-candidate gate so boundaries agree
    if np.count_nonzero(ctx.d_u) / ctx.P < params.minsupp_new:
        return None
    cov = np.ones(n_examples, dtype=bool)
    cov_count = n_examples
    conditions: list[Condition] = []
    masks: list[np.ndarray] = []
    attr_set: set[int] = set()
    while True:
        cov_idx = np.flatnonzero(cov)
        best: tuple[float, int] | None = None
        best_cond: Condition | None = None
        for ai in range(len(ctx.ds.attributes)):
            cand = _sweep_attribute(ctx, ai, cov_idx)
            if cand is None:
                continue
            valid = (
                (cand.p / ctx.P >= ctx.minsupp_all)
                & (cand.p_new_pass / ctx.P >= params.minsupp_new)
                & (cand.covc < cov_count)
            )
            if not valid.any():
                continue
            pi = ctx.penalty.premise_penalty(attr_set | {ai})
            m = ctx.modifier(pi, cand.p, cand.p_new_reward)
            qmod = ctx.modified(cand.q, m)
            vidx = np.flatnonzero(valid)
            qv = qmod[vidx]
            cv = cand.covc[vidx]
            top = float(qv.max())
            at_top = np.flatnonzero(qv == top)
            top_cov = int(cv[at_top].max())
            local = int(vidx[at_top[cv[at_top] == top_cov][0]])
            if best is None or top > best[0] or (top == best[0] and top_cov > best[1]):
                best = (top, top_cov)
                side = int(cand.sides[local])
                if cand.numeric:
                    op = LT if side == 0 else GE
                    best_cond = Condition(ai, op, float(cand.values[local]))
                else:
                    op = EQ if side == 0 else NE
                    best_cond = Condition(ai, op, int(cand.values[local]))
        if best_cond is None:
            break
        mask = condition_mask(best_cond, ctx.ds)
        cov = cov & mask
        cov_count = int(np.count_nonzero(cov))
        conditions.append(best_cond)
        masks.append(mask)
        attr_set.add(best_cond.attr_index)
    if not conditions:
        return None
    cm = _counts(ctx, cov)
    if cm.neg2pos > params.max_neg2pos:
        return None
    return _Grown(conditions, masks, cov)


def _counts(ctx: _Context, cov: np.ndarray) -> ConfusionMatrix:
    return ConfusionMatrix(
        p=int(np.count_nonzero(cov & ctx.pos)),
        n=int(np.count_nonzero(cov & ctx.neg)),
        P=ctx.P,
        N=ctx.N,
        p_new=int(np.count_nonzero(cov & ctx.d_u)),
    )


def _raw_quality(ctx: _Context, cov: np.ndarray, cm: ConfusionMatrix | None = None) -> float:
    if ctx.measure == "correlation":
        return correlation(cm if cm is not None else _counts(ctx, cov))
    if ctx.measure == "regression":
        idx = np.flatnonzero(cov)
        if idx.size == 0:
            return float("-inf")
        return -abs(float(np.mean(ctx.labels[idx])) - ctx.pos_label_mean)
    return -ctx.survival_scorer.score(np.flatnonzero(cov))


def _modified_quality_of(ctx: _Context, cov: np.ndarray, attrs: Iterable[int]) -> float:
    cm = _counts(ctx, cov)
    q = _raw_quality(ctx, cov, cm)
    pi = ctx.penalty.premise_penalty(attrs)
    p_new_reward = int(np.count_nonzero(cov & ctx.r_u))
    m = ctx.modifier(pi, np.asarray([cm.p]), np.asarray([p_new_reward]))
    return float(ctx.modified(np.asarray([q]), m)[0])


def _prune(ctx: _Context, grown: _Grown) -> _Grown:
    """Greedily remove conditions while the modified quality does not drop.

    Each round scans the premise in order; a removal candidate must keep
    the negative-to-positive ratio within bounds, and the last scanned
    removal with quality >= the running best wins the round. Stops when no
    removal qualifies or one condition remains.
    """
    conditions = list(grown.conditions)
    masks = list(grown.masks)
    cov = grown.cov
    params = ctx.params
    while len(conditions) > 1:
        q_best = _modified_quality_of(ctx, cov, (c.attr_index for c in conditions))
        k = len(conditions)
        prefix = [np.ones(ctx.ds.n_examples, dtype=bool)]
        for msk in masks:
            prefix.append(prefix[-1] & msk)
        suffix = [np.ones(ctx.ds.n_examples, dtype=bool)]
        for msk in reversed(masks):
            suffix.append(suffix[-1] & msk)
        suffix.reverse()
        remove = -1
        for i in range(k):
            cov_i = prefix[i] & suffix[i + 1]
            cm = _counts(ctx, cov_i)
            if cm.neg2pos > params.max_neg2pos:
                continue
            attrs = set(c.attr_index for j, c in enumerate(conditions) if j != i)
            q = _raw_quality(ctx, cov_i, cm)
            pi = ctx.penalty.premise_penalty(attrs)
            rew = int(np.count_nonzero(cov_i & ctx.r_u))
            m = ctx.modifier(pi, np.asarray([cm.p]), np.asarray([rew]))
            qmod = float(ctx.modified(np.asarray([q]), m)[0])
            if qmod >= q_best:
                remove = i
                q_best = qmod
        if remove < 0:
            break
        del conditions[remove]
        del masks[remove]
        cov = prefix[remove] & suffix[remove + 1]
    return _Grown(conditions, masks, cov)


def _resolve_measure(ds: DataSet, params: MiningParams) -> str:
    measure = params.measure or measure_for_task(ds.task)
    if measure == "regression" and ds.labels is None:
        raise ValueError("regression measure needs a bound label column")
    if measure == "survival" and (ds.times is None or ds.status is None):
        raise ValueError("survival measure needs bound time and status columns")
    return measure


def grow(
    ds: DataSet,
    group: str,
    uncovered: CoverageSet,
    params: MiningParams,
    penalty: PenaltyState | None = None,
    reward_uncovered: CoverageSet | None = None,
    minsupp_all: float | None = None,
) -> ContrastSet | None:
    """Grow one premise for ``group``; None when nothing satisfiable.

    ``uncovered`` is the pass's uncovered-positive pool, frozen for the
    whole call. The reward baseline defaults to the same pool.
    """
    measure = _resolve_measure(ds, params)
    ctx = _Context.build(
        ds,
        group,
        params,
        measure,
        d_u=uncovered.mask.copy(),
        r_u=(reward_uncovered or uncovered).mask.copy(),
        penalty=penalty or PenaltyState(len(ds.attributes)),
        minsupp_all=minsupp_all if minsupp_all is not None else params.minsupps[0],
    )
    grown = _grow(ctx)
    if grown is None:
        return None
    return ContrastSet(tuple(grown.conditions), group)


def prune(
    cs: ContrastSet,
    ds: DataSet,
    params: MiningParams,
    uncovered: CoverageSet | None = None,
    penalty: PenaltyState | None = None,
    reward_uncovered: CoverageSet | None = None,
) -> ContrastSet:
    """Prune a premise; single-condition input returns unchanged."""
    if len(cs.conditions) <= 1:
        return cs
    measure = _resolve_measure(ds, params)
    pos = ds.group_mask(cs.group)
    unc = uncovered if uncovered is not None else pos
    ctx = _Context.build(
        ds,
        cs.group,
        params,
        measure,
        d_u=unc.mask.copy(),
        r_u=(reward_uncovered or unc).mask.copy(),
        penalty=penalty or PenaltyState(len(ds.attributes)),
        minsupp_all=params.minsupps[0],
    )
    masks = [condition_mask(c, ds) for c in cs.conditions]
    cov = np.ones(ds.n_examples, dtype=bool)
    for msk in masks:
        cov = cov & msk
    pruned = _prune(ctx, _Grown(list(cs.conditions), masks, cov))
    return ContrastSet(tuple(pruned.conditions), cs.group)


def mine_group(
    ds: DataSet,
    group: str,
    params: MiningParams | None = None,
    *,
    events: list[MiningEvent] | None = None,
) -> list[AnnotatedContrastSet]:
    """Mine all contrast sets for one group of interest.

    Returns the emitted sets in generation order, duplicates filtered.
    Pass ``events`` to also record every acceptance, duplicates included,
    with the penalty counters after each update.
    """
    params = params or MiningParams()
    measure = _resolve_measure(ds, params)
    if group not in ds.groups:
        raise KeyError(f"no group named {group!r}")
    pos_mask = ds.group_mask(group).mask
    penalty = PenaltyState(len(ds.attributes))
    ctx = _Context.build(
        ds, group, params, measure,
        d_u=pos_mask.copy(), r_u=pos_mask.copy(),
        penalty=penalty, minsupp_all=params.minsupps[0],
    )
    pool: list[AnnotatedContrastSet] = []
    pool_keys: set = set()
    pool_attrs: list[frozenset[int]] = []
    pool_pos_cov: list[np.ndarray] = []

    for level in params.minsupps:
        penalty.reset()
        r_u = pos_mask.copy()
        ctx.minsupp_all = level
        ctx.r_u = r_u
        for pass_index in range(1, params.max_passes + 1):
            d_u = pos_mask.copy()
            ctx.d_u = d_u
            new_in_pass = 0
            while True:
                grown = _grow(ctx)
                if grown is None:
                    break
                pruned = _prune(ctx, grown)
                cov = pruned.cov
                canon = canonicalize(ContrastSet(tuple(pruned.conditions), group))
                cm = _counts(ctx, cov)
                quality = _raw_quality(ctx, cov, cm)
                key = canon.key()
                duplicate = key in pool_keys
                d_u &= ~cov
                r_u &= ~cov
                penalty.update(canon.attribute_indices)
                if events is not None:
                    events.append(
                        MiningEvent(
                            minsupp_all=level,
                            pass_index=pass_index,
                            contrast_set=canon,
                            duplicate=duplicate,
                            p=cm.p,
                            n=cm.n,
                            p_new=cm.p_new,
                            usage_after=tuple(penalty.counts),
                            usage_total_after=penalty.total,
                        )
                    )
                if not duplicate:
                    attrs = canon.attribute_indices
                    pos_cov = cov & pos_mask
                    red, red_i = 0.0, None
                    for i, (pa, pc) in enumerate(zip(pool_attrs, pool_pos_cov)):
                        aj = _jaccard_sets(attrs, pa)
                        sim = 0.0
                        if aj > 0.0:
                            sim = aj * _jaccard_masks(pos_cov, pc)
                        if red_i is None or sim > red:
                            red, red_i = sim, i
                    if red_i is None:
                        red = 0.0
                    pool.append(
                        AnnotatedContrastSet(
                            contrast_set=canon,
                            group=group,
                            pass_index=pass_index,
                            minsupp_all=level,
                            p=cm.p,
                            n=cm.n,
                            p_new=cm.p_new,
                            P=cm.P,
                            N=cm.N,
                            quality=quality,
                            redundancy=red,
                            redundancy_with=red_i,
                        )
                    )
                    pool_keys.add(key)
                    pool_attrs.append(attrs)
                    pool_pos_cov.append(pos_cov)
                    new_in_pass += 1
            if new_in_pass == 0:
                break
    return pool


def _jaccard_sets(a: frozenset, b: frozenset) -> float:
    union = len(a | b)
    return len(a & b) / union if union else 0.0


def _jaccard_masks(a: np.ndarray, b: np.ndarray) -> float:
    union = int(np.count_nonzero(a | b))
    if union == 0:
        return 0.0
    return int(np.count_nonzero(a & b)) / union


def _mine_one(args) -> tuple[str, list[AnnotatedContrastSet]]:
    ds, group, params = args
    return group, mine_group(ds, group, params)


def mine_all(
    ds: DataSet,
    params: MiningParams | None = None,
    groups: Sequence[str] | None = None,
    *,
    workers: int | None = None,
) -> dict[str, list[AnnotatedContrastSet]]:
    """Mine every requested group of interest.

    One-vs-all contrasts each group against all others; one-vs-one keeps
    only the group of interest and ``params.negative_group``, dropping the
    rest of the dataset entirely. ``workers`` (default from the
    CSMINE_WORKERS environment variable) fans groups out across processes;
    output order stays deterministic either way.
    """
    params = params or MiningParams()
    if len(ds.groups) < 2:
        raise ValueError("mining needs at least two groups")
    if params.mode == "one-vs-one":
        negative = params.negative_group
        if negative is None:
            raise ValueError("one-vs-one mode needs negative_group")
        if negative not in ds.groups:
            raise KeyError(f"no group named {negative!r}")
        targets = list(groups) if groups is not None else [g for g in ds.groups if g != negative]
        if negative in targets:
            raise ValueError("the negative group cannot also be a group of interest")
        jobs = []
        for g in targets:
            sel = (ds.group_mask(g) | ds.group_mask(negative)).mask
            jobs.append((ds.subset(sel), g, params))
    else:
        targets = list(groups) if groups is not None else list(ds.groups)
        for g in targets:
            if g not in ds.groups:
                raise KeyError(f"no group named {g!r}")
        jobs = [(ds, g, params) for g in targets]
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or "1")
    results: dict[str, list[AnnotatedContrastSet]] = {}
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for g, sets in pool.map(_mine_one, jobs):
                results[g] = sets
    else:
        for job in jobs:
            g, sets = _mine_one(job)
            results[g] = sets
    return results

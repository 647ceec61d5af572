"""Aggregation used in the evaluation: geometric means and performance profiles."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping


class NonPositive(ValueError):
    pass


class MissingCell(KeyError):
    pass


def geometric_mean(values: Iterable[float]) -> float:
    vals = list(values)
    if not vals:
        raise ValueError("geometric mean of an empty sequence")
    if any(v <= 0 for v in vals):
        raise NonPositive("geometric mean needs strictly positive values")
    prod = math.prod(vals)
    if 0.0 < prod < math.inf:
        # exact on small integer inputs, unlike exp(mean(log))
        return prod ** (1.0 / len(vals))
    return math.exp(math.fsum(map(math.log, vals)) / len(vals))


@dataclass(frozen=True)
class ProfilePoint:
    tau: float
    fraction: float


def performance_profile(results: Mapping[str, Mapping[str, float]]) -> dict[str, list[ProfilePoint]]:
    """Fraction of instances each algorithm solves within ``tau`` times the best.

    ``results[algorithm][instance]`` holds a metric where lower is better.
    Every curve is evaluated at ``tau = 1`` and at every finite ratio realised
    by any algorithm, so all curves share their abscissae.  A zero metric
    counts as ratio 1 when the best is also zero and never qualifies otherwise.
    """
    algos = list(results)
    if not algos:
        return {}
    instances = sorted(set().union(*(results[a].keys() for a in algos)))
    for a in algos:
        for inst in instances:
            if inst not in results[a]:
                raise MissingCell(f"{a!r} has no value for instance {inst!r}")
            if results[a][inst] < 0:
                raise NonPositive(f"negative metric for {a!r} on {inst!r}")

    ratios: dict[str, list[float]] = {a: [] for a in algos}
    for inst in instances:
        best = min(results[a][inst] for a in algos)
        for a in algos:
            val = results[a][inst]
            if val == best:
                r = 1.0
            elif best == 0:
                r = math.inf
            else:
                r = val / best
            ratios[a].append(r)

    taus = sorted({1.0} | {r for rs in ratios.values() for r in rs if math.isfinite(r)})
    total = len(instances)
    out: dict[str, list[ProfilePoint]] = {}
    for a in algos:
        rs = sorted(ratios[a])
        points = []
        k = 0
        for tau in taus:
            while k < total and rs[k] <= tau:
                k += 1
            points.append(ProfilePoint(tau, k / total))
        out[a] = points
    return out


def profile_value(points: list[ProfilePoint], tau: float) -> float:
    """Evaluate a right-continuous step profile at ``tau``."""
    val = 0.0
    for p in points:
        if p.tau <= tau:
            val = p.fraction
        else:
            break
    return val

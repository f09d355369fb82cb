"""Sample audits of the coarse-group axioms for a magma with a metric.

Every number reported here is a supremum over a finite sample, so it can
refute a uniform bound but only ever confirms one up to the audited radius.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .cancel import cancellation_distance
from .errors import BicoarseError, SampleNotClosed
from .words import Word, ball, commutator, invert, parse, power, reduced_product_text


@dataclass
class MeteredMagma:
    """A finite sample plus callbacks; nothing here assumes a genuine group."""

    sample: list
    op: Callable
    inv: Callable
    unit: object
    metric: Callable
    name: str = "custom"
    show: Callable = str

    def mul(self, x, y):
        try:
            out = self.op(x, y)
        except Exception as exc:  # noqa: BLE001 - callbacks are user code
            raise SampleNotClosed(f"op({self.show(x)}, {self.show(y)}) failed: {exc}") from None
        if out is None:
            raise SampleNotClosed(f"op({self.show(x)}, {self.show(y)}) is undefined")
        return out

    def inverse(self, x):
        try:
            out = self.inv(x)
        except Exception as exc:  # noqa: BLE001
            raise SampleNotClosed(f"inv({self.show(x)}) failed: {exc}") from None
        if out is None:
            raise SampleNotClosed(f"inv({self.show(x)}) is undefined")
        return out


@dataclass
class Clause:
    value: object = 0
    witness: tuple | None = None

    def offer(self, value, witness):
        # strict improvement only, so the first witness in sample order wins
        if value > self.value:
            self.value, self.witness = value, witness

    def to_json(self, show=str):
        return {"value": _num(self.value),
                "witness": None if self.witness is None else [show(x) for x in self.witness]}


@dataclass
class DefectReport:
    sample: str
    size: int
    assoc: Clause = field(default_factory=Clause)
    unit: Clause = field(default_factory=Clause)
    inverse: Clause = field(default_factory=Clause)
    abelian: Clause = field(default_factory=Clause)
    equi_left: dict = field(default_factory=dict)
    equi_right: dict = field(default_factory=dict)
    metric_violations: list = field(default_factory=list)

    def rho(self, r):
        return max(self.equi_left[r].value, self.equi_right[r].value)

    def to_json(self, show=str) -> dict:
        return {
            "sample": self.sample,
            "size": self.size,
            "lower_bounds": True,
            "assoc": self.assoc.to_json(show),
            "unit": self.unit.to_json(show),
            "inverse": self.inverse.to_json(show),
            "abelian": self.abelian.to_json(show),
            "rho": {str(r): _num(self.rho(r)) for r in sorted(self.equi_left)},
            "equi_left": {str(r): c.to_json(show) for r, c in sorted(self.equi_left.items())},
            "equi_right": {str(r): c.to_json(show) for r, c in sorted(self.equi_right.items())},
            "metric_violations": self.metric_violations,
        }


def _num(x):
    if isinstance(x, float) and x.is_integer():
        return int(x)
    if isinstance(x, (int, float)):
        return x
    return str(x)


def check_metric(m: MeteredMagma, limit: int = 5) -> list:
    """Spot-check the metric axioms on the sample; returns up to ``limit`` violations."""
    bad = []
    pts = m.sample
    for x, y in itertools.product(pts, repeat=2):
        dxy = m.metric(x, y)
        if dxy < 0 or (dxy == 0) != (x == y) or dxy != m.metric(y, x):
            bad.append({"axiom": "positivity/symmetry", "points": [m.show(x), m.show(y)]})
            if len(bad) >= limit:
                return bad
    return bad


def audit(m: MeteredMagma, radii) -> DefectReport:
    """Exact suprema of each coarse-group clause over the sample.

    ``rho(r) = sup { d(gh, gh'), d(hg, h'g) : d(h, h') <= r }``.
    """
    radii = sorted(set(radii))
    pts = m.sample
    e = m.unit
    rep = DefectReport(sample=m.name, size=len(pts))
    rep.metric_violations = check_metric(m)
    d = m.metric
    mul = m.mul
    prod = {(i, j): mul(x, y) for i, x in enumerate(pts) for j, y in enumerate(pts)}
    for i, g in enumerate(pts):
        rep.unit.offer(d(mul(e, g), g), (e, g))
        rep.unit.offer(d(mul(g, e), g), (g, e))
        gi = m.inverse(g)
        rep.inverse.offer(d(mul(g, gi), e), (g,))
        rep.inverse.offer(d(mul(gi, g), e), (g,))
        for j, h in enumerate(pts):
            gh = prod[i, j]
            rep.abelian.offer(d(gh, prod[j, i]), (g, h))
            for k, x in enumerate(pts):
                rep.assoc.offer(d(mul(g, prod[j, k]), mul(gh, x)), (g, h, x))
    for r in radii:
        rep.equi_left[r] = Clause()
        rep.equi_right[r] = Clause()
    close = [(j, k, d(pts[j], pts[k])) for j in range(len(pts)) for k in range(len(pts)) if j != k]
    close = [c for c in close if c[2] <= radii[-1]] if radii else []
    for i, g in enumerate(pts):
        for j, k, dist in close:
            left = d(prod[i, j], prod[i, k])
            right = d(prod[j, i], prod[k, i])
            for r in radii:
                if dist <= r:
                    rep.equi_left[r].offer(left, (g, pts[j], pts[k]))
                    rep.equi_right[r].offer(right, (g, pts[j], pts[k]))
    return rep


def conjugation_defect(m: MeteredMagma, H: list, G: list):
    """``sup_{g, h} min_{h'} d(g h g^-1, h')``; returns ``(value, (g, h, h'))``."""
    best, witness = 0, None
    for g in G:
        gi = m.inverse(g)
        for h in H:
            c = m.mul(m.mul(g, h), gi)
            dist, near = min((m.metric(c, h2), i) for i, h2 in enumerate(H))
            if dist > best:
                best, witness = dist, (g, h, H[near])
    return best, witness


def abelian_growth(n_max: int, rank: int = 2, x: str = "a", y: str = "b") -> dict:
    """``{n: d([x^n, y^n], 1)}`` for ``n = 1..n_max``."""
    if n_max > 12:
        raise BicoarseError("n_max must be at most 12")
    gx, gy = parse(x, rank), parse(y, rank)
    one = Word("", rank)
    return {n: cancellation_distance(commutator(power(gx, n), power(gy, n)), one)
            for n in range(1, n_max + 1)}


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------


def f2_cancel(radius: int, rank: int = 2) -> MeteredMagma:
    """Reduced words of length <= radius with the cancellation metric."""
    pts = [w.text for w in ball(rank, radius)]

    @lru_cache(maxsize=None)
    def metric(x, y):
        return cancellation_distance(Word(x, rank), Word(y, rank))

    return MeteredMagma(pts, reduced_product_text, lambda t: invert(Word(t, rank)).text, "",
                        metric, name=f"F{rank} ball radius {radius}, cancellation metric",
                        show=lambda t: t or "1")


def z2_euclid(radius: int) -> MeteredMagma:
    pts = [(x, y) for x in range(-radius, radius + 1) for y in range(-radius, radius + 1)]
    return MeteredMagma(pts, lambda p, q: (p[0] + q[0], p[1] + q[1]), lambda p: (-p[0], -p[1]),
                        (0, 0), lambda p, q: math.hypot(p[0] - q[0], p[1] - q[1]),
                        name=f"Z^2 box radius {radius}, euclidean metric",
                        show=lambda p: f"({p[0]},{p[1]})")


def perturbed(radius: int) -> MeteredMagma:
    """Z with ``x * y = x + y + 1``, unit 0 and ``x^-1 = -x``."""
    return MeteredMagma(list(range(-radius, radius + 1)), lambda x, y: x + y + 1, lambda x: -x, 0,
                        lambda x, y: abs(x - y), name=f"Z window radius {radius}, op x+y+1",
                        show=str)


PRESETS = {"f2-cancel": f2_cancel, "z2-euclid": z2_euclid, "perturbed": perturbed}


def preset(name: str, radius: int) -> MeteredMagma:
    try:
        return PRESETS[name](radius)
    except KeyError:
        raise BicoarseError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


__all__ = [
    "Clause",
    "DefectReport",
    "MeteredMagma",
    "PRESETS",
    "abelian_growth",
    "audit",
    "check_metric",
    "conjugation_defect",
    "f2_cancel",
    "perturbed",
    "preset",
    "z2_euclid",
]

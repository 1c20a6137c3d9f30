"""Tables reproducing the counterexample phenomena, ready for CSV export.

Each demo returns a :class:`DemoTable` whose ``holds`` flag says whether the
phenomenon's defining inequality is satisfied by the produced rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import hartogs
from .balanced import MaxOf, Monomial, WeightedNorm, convex_envelope, minkowski_eval
from .domains import BalancedDomain
from .foundations import ComplexVector, MetricKind, vec
from .reinhardt import ExponentVector, eval_function, monomial_modulus

__all__ = ["DemoTable", "DEMOS", "run_demo"]


@dataclass(frozen=True)
class DemoTable:
    name: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    holds: bool


def demo_nonusc(k_max: int = 100, z: ComplexVector | None = None) -> DemoTable:
    """s(0, z) against s((1/k, 0, 0), z) on D_(1,2,2): the limit along 1/k -> 0 jumps."""
    alpha = ExponentVector.integers(1, 2, 2)
    z = z or vec(0.5, 0.5, 0.5)
    kind = MetricKind.sibony_function(2)
    modulus = monomial_modulus(alpha, z)
    s0 = eval_function(alpha, kind, ComplexVector.zeros(3), z).value
    rows = []
    holds = 0 < modulus < 1
    for k in range(1, k_max + 1):
        sk = eval_function(alpha, kind, vec(1 / k, 0, 0), z).value
        rows.append((k, 1 / k, modulus, s0, sk, sk / s0))
        holds = holds and sk > s0
    return DemoTable("nonusc", ("k", "base_z1", "z_alpha_modulus", "s_origin", "s_base", "ratio"),
                     tuple(rows), holds)


def demo_regularization(p: int = 2) -> DemoTable:
    """Slice values on D vanish while regularized values on G stay above |b| e^phi(0,0)."""
    G, D = hartogs.HartogsDomain.exam1(), hartogs.HartogsDomain.exam1_slice()
    phi00, err = hartogs.phi_eval(G.phi, (0, 0))
    radius = math.exp(-phi00 - err)
    fn, metric = MetricKind.sibony_function(p), MetricKind.sibony_metric(2 * p)
    rows = []
    holds = True
    for frac in (0.1, 0.5, 0.9):
        b = frac * radius
        slice_fn = hartogs.proven_value(D, fn, vec(0, 0), vec(b, 0)).value
        slice_metric = hartogs.proven_value(D, metric, vec(0, 0), vec(1, 0)).value
        for t in (0.5, 0.1, 0.01, 0.001):
            ct = vec(0, 0, t)
            lower_fn = hartogs.candidate_lower_bound(G, ct, p, vec(b, 0, 0), fn)
            lower_metric = hartogs.candidate_lower_bound(G, ct, p, vec(1, 0, 0), metric)
            rows.append((b, t, slice_fn, lower_fn, slice_metric, lower_metric))
            holds = holds and lower_fn > slice_fn and lower_metric > slice_metric
    return DemoTable("regularization",
                     ("b", "t", "slice_function_value", "embedded_function_lower_bound",
                      "slice_metric_value", "embedded_metric_lower_bound"),
                     tuple(rows), holds)


def demo_increasing(z2: float = 0.1, k_max: int = 50, p: int = 2) -> DemoTable:
    """Lower bounds on the G_k stay above |z2| e^phi(0) while the value on G is 0."""
    rows = hartogs.increasing_family_table(k_max, z2, p)
    holds = all(r.lower_bound >= r.limit_value > r.proven_G_value for r in rows)
    holds = holds and all(a.exp_phi_k_0 > b.exp_phi_k_0 for a, b in zip(rows, rows[1:]))
    return DemoTable("increasing",
                     ("k", "phi_k_0", "exp_phi_k_0", "lower_bound", "limit_value", "proven_G_value"),
                     tuple((r.k, r.phi_k_0, r.exp_phi_k_0, r.lower_bound, r.limit_value,
                            r.proven_G_value) for r in rows),
                     holds)


def demo_chain(samples: int = 20) -> DemoTable:
    """m < s < g on D_(2,3) at a = 0, where sigma = mu = 2."""
    alpha = ExponentVector.integers(2, 3)
    a = vec(0, 0)
    rows = []
    holds = True
    for i in range(1, samples + 1):
        t = i / (samples + 1)
        z = vec(t, t * 1j)
        m = eval_function(alpha, MetricKind.mobius(), a, z).value
        s = eval_function(alpha, MetricKind.sibony_function(2), a, z).value
        g = eval_function(alpha, MetricKind.green(), a, z).value
        rows.append((t, monomial_modulus(alpha, z), m, s, g))
        holds = holds and m < s < g
    return DemoTable("chain", ("t", "z_alpha_modulus", "mobius", "sibony", "green"),
                     tuple(rows), holds)


def demo_balanced() -> DemoTable:
    """gamma = S = h of the convex hull <= A = h on balanced pseudoconvex domains at 0."""
    families = {
        "monomial": Monomial((0.5, 0.5)),
        "euclidean": WeightedNorm((1.0, 1.0)),
        "max-monomial": MaxOf((WeightedNorm((1.0, 1.0), float("inf")), Monomial((0.5, 0.5), 2.0))),
    }
    directions = [vec(1, 1), vec(1, 0), vec(1, 0.5j), vec(0.3, -1)]
    rows = []
    holds = True
    strict = False
    for name, h in families.items():
        dom = BalancedDomain(h)
        for X in directions:
            gamma = dom.metric(MetricKind.caratheodory(), vec(0, 0), X)
            S = dom.metric(MetricKind.sibony_metric(2), vec(0, 0), X)
            A = dom.metric(MetricKind.azukawa(), vec(0, 0), X)
            env = convex_envelope(h, X)
            h_val = minkowski_eval(h, X)
            rows.append((name, X.moduli()[0], X.moduli()[1], gamma.upper, S.upper,
                         env.value, env.certificate_gap, A.upper, h_val))
            holds = holds and gamma.is_exact and S.is_exact and gamma.value == S.value
            holds = holds and env.value <= A.value + 1e-12 and A.value == h_val
            strict = strict or env.value < h_val - 1e-6
        if name == "monomial":
            holds = holds and rows[0][3] <= 1e-9 and rows[0][7] == 1.0
    return DemoTable("balanced",
                     ("h", "abs_X1", "abs_X2", "gamma", "sibony", "envelope", "certificate_gap",
                      "azukawa", "h_value"),
                     tuple(rows), holds and strict)


def demo_hartogs_gap(p: int = 2) -> DemoTable:
    """gamma_G(0; X0) = 0 while S^(2p) = A = e^phi(0,t) at c_t."""
    G = hartogs.HartogsDomain.exam1()
    X0 = vec(1, 0, 0)
    gamma0 = hartogs.proven_value(G, MetricKind.caratheodory(), vec(0, 0, 0), X0).value
    phi00, _ = hartogs.phi_eval(G.phi, (0, 0))
    rows = []
    holds = True
    for t in (0.5, 0.2, 0.1, 0.01, 0.001):
        ct = vec(0, 0, t)
        lower = hartogs.candidate_lower_bound(G, ct, p, X0, MetricKind.sibony_metric(2 * p))
        A = hartogs.proven_value(G, MetricKind.azukawa(), ct, X0)
        rows.append((t, gamma0, lower, A.value, A.certified_error, math.exp(phi00)))
        holds = holds and gamma0 < lower and abs(A.value - lower) <= 2 * A.certified_error + 1e-15
        holds = holds and A.value >= math.exp(phi00) * (1 - 1e-9)
    return DemoTable("hartogs-gap",
                     ("t", "gamma_origin", "sibony_lower_bound", "azukawa_value",
                      "certified_error", "exp_phi_00"),
                     tuple(rows), holds)


DEMOS: dict[str, Callable[..., DemoTable]] = {
    "nonusc": demo_nonusc,
    "regularization": demo_regularization,
    "increasing": demo_increasing,
    "chain": demo_chain,
    "balanced": demo_balanced,
    "hartogs-gap": demo_hartogs_gap,
}


def run_demo(name: str) -> DemoTable:
    return DEMOS[name]()

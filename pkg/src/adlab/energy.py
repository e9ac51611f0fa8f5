"""Higher additive energies T_k and relative dimension dim_{alpha,k}.

T_k(A) counts 2k-tuples with equal k-fold sums; it equals the sum of squared
k-fold representation counts.  Multiplicative energies are computed through
the prime-exponent embedding, which is an exact isomorphism onto vector
addition.  All values are unbounded Python integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .budget import as_meter
from .dissociation import (
    DimensionBounds,
    dim_bounds,
    dim_k_exact,
    is_k_dissociated,
)
from .errors import PreconditionError
from .groundset import GroundSet, mult_embed, rep_fn


@dataclass(frozen=True)
class EnergyValue:
    """Exact energy count with its parameters."""

    value: int
    k: int
    operation: str  # "+" or "*"

    def to_json(self) -> dict:
        # Decimal string keeps arbitrary precision intact in JSON.
        return {"value_dec": str(self.value), "k": self.k, "op": self.operation}


def _additive_tk(a: GroundSet, k: int, size_cap: int | None) -> int:
    if len(a) == 0:
        return 0
    if k == 1:
        return len(a)
    r = rep_fn([(a, "+")] * k, size_cap=size_cap)
    return r.square_sum()


def t_k(a: GroundSet, k: int, op: str = "+", size_cap: int | None = None) -> EnergyValue:
    """k-fold energy T_k(A) under + or * (positive integers only for *).

    k = 1 degenerates to |A| and is allowed because the chained energy
    arguments in the decomposition routines start there.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if op == "+":
        return EnergyValue(_additive_tk(a, k, size_cap), k, "+")
    if op == "*":
        emb = mult_embed(a)
        return EnergyValue(_additive_tk(emb.image, k, size_cap), k, "*")
    raise ValueError("op must be '+' or '*'")


def additive_energy(a: GroundSet, b: GroundSet, size_cap: int | None = None) -> EnergyValue:
    """E(A,B) = sum_x r_{A-B}(x)^2; E(A,A) recovers T_2(A)."""
    if len(a) == 0 or len(b) == 0:
        return EnergyValue(0, 2, "+")
    r = rep_fn([(a, "+"), (b, "-")], size_cap=size_cap)
    return EnergyValue(r.square_sum(), 2, "+")


def t_k_multi(parts: Sequence[GroundSet], op: str = "+", size_cap: int | None = None) -> EnergyValue:
    """Mixed energy: tuples whose first-half sum equals the second-half sum.

    ``parts`` must have even length 2k.  Computed as the inner product of the
    two k-fold representation functions.
    """
    if len(parts) == 0 or len(parts) % 2 != 0:
        raise ValueError("t_k_multi needs an even, positive number of parts")
    k = len(parts) // 2
    work = list(parts)
    if op == "*":
        merged = work[0]
        for p in work[1:]:
            merged = merged.union(p)
        emb = mult_embed(merged)
        target = emb.image.ambient
        work = [
            GroundSet.of(target, (emb.vector(x) for x in p.elements)) for p in work
        ]
    elif op != "+":
        raise ValueError("op must be '+' or '*'")
    if any(len(p) == 0 for p in work):
        return EnergyValue(0, k, op)
    left = rep_fn([(p, "+") for p in work[:k]], size_cap=size_cap)
    right = rep_fn([(p, "+") for p in work[k:]], size_cap=size_cap)
    small, big = (left.entries, right.entries)
    if len(big) < len(small):
        small, big = big, small
    value = sum(c * big.get(x, 0) for x, c in small.items())
    return EnergyValue(value, k, op)


# ---------------------------------------------------------------------------
# Relative dimension


def dim_alpha_k(
    a: GroundSet,
    alpha,
    k: int = 2,
    budget: int | None = None,
    exact_threshold: int = 16,
) -> DimensionBounds:
    """min dim(B) over B subset of A with T_k(B) >= alpha * T_k(A).

    Exact subset enumeration up to ``exact_threshold`` elements; beyond that
    a sound upper bound is produced by probing energy-heavy subsets obtained
    from block peeling, with the threshold inequality re-checked exactly.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1:
        raise PreconditionError("alpha must lie in (0, 1]")
    total = t_k(a, k).value
    n = len(a)
    if n == 0:
        raise PreconditionError("dim_alpha_k needs a nonempty set")
    meter = as_meter(budget)
    if n <= exact_threshold:
        elems = a.elements
        best: int | None = None
        best_witness: GroundSet | None = None
        # Subsets grouped by size: small subsets give small dimensions first.
        qualifying = []
        for mask in range(1, 1 << n):
            meter.tick()
            sub = GroundSet(a.ambient, tuple(elems[i] for i in range(n) if mask >> i & 1))
            tb = _additive_tk(sub, k, None)
            if tb * alpha.denominator >= alpha.numerator * total:
                qualifying.append((len(sub), sub))
        qualifying.sort(key=lambda item: (item[0], item[1].elements))
        for size, sub in qualifying:
            if best is not None and _floor_log(size, 3) + 1 > best:
                # dim(B) >= ceil(log_3 |B|) cannot beat the current optimum.
                continue
            db = dim_k_exact(sub, 1, budget=meter)
            if best is None or db.value < best:
                best = db.value
                best_witness = sub
                if best <= 1:
                    break
        assert best is not None  # B = A always qualifies at alpha <= 1
        return DimensionBounds(
            "dim_alpha_k", k, best, best, True, best_witness, None, meter.states
        )
    # Heuristic mode: find an energy-retaining subset with certified small dim.
    from .decompose import dissociated_peeling  # local import avoids a cycle

    kappa = (total / (n ** (2 * k))) ** (1.0 / k)
    margin = (1.0 - float(alpha) ** (1.0 / (2 * k))) ** 2
    l = max(2, math.ceil(k / max(kappa * margin, 1e-9)))
    upper = None
    witness = None
    while l <= n:
        peel = dissociated_peeling(a, l, budget=meter)
        rem = peel.remainder
        if len(rem) > 0:
            t_rem = _additive_tk(rem, k, None)
            if t_rem * alpha.denominator >= alpha.numerator * total:
                rem_dim = peel.remainder_dim
                if rem_dim is not None and rem_dim.exact:
                    upper = rem_dim.value
                else:
                    upper = min(l - 1, len(rem))
                witness = rem
                break
        l *= 2
    if upper is None:
        da = dim_bounds(a, 1, budget=meter)
        upper = da.upper
        witness = a
    return DimensionBounds(
        "dim_alpha_k", k, 1, max(1, upper), False, None, witness, meter.states,
        note="heuristic mode: upper from an energy-retaining subset",
    )


def _floor_log(n: int, base: int) -> int:
    v = 0
    while base ** (v + 1) <= n:
        v += 1
    return v


# ---------------------------------------------------------------------------
# Rudin ratio for dissociated sets


def rudin_ratio(lam: GroundSet, k: int, budget: int | None = None) -> Fraction:
    """T_k(L) / (k^k |L|^k) for a verified dissociated set L.

    The classical bound says this stays below C^k for an absolute C; the
    suite reports the fitted value, never asserting any particular constant.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    cert = is_k_dissociated(lam, 1, budget)
    if not cert.is_dissociated:
        raise PreconditionError(f"set is not dissociated (relation {cert.relation})")
    if len(lam) == 0:
        raise PreconditionError("empty set has no Rudin ratio")
    value = t_k(lam, k).value
    return Fraction(value, (k ** k) * (len(lam) ** k))

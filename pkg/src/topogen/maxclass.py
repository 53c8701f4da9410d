"""Maximal-dimension prime-order classes over finite fields.

The field size q enters only through the multiplicative-order parameter i
(the least i with r | q^i - 1); the optimization itself is an exact finite
search over eigenvalue-orbit shapes (or unipotent partitions when r = p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra_core import (
    ClassDescriptor,
    GroupSpec,
    is_prime,
    semisimple,
    unipotent,
    validate_class,
)
from .errors import Infeasible, NotApplicable, SchemaError, UnsupportedCase
from .invariants import class_dim


@dataclass(frozen=True)
class QContext:
    r: int  # prime order of the elements considered
    i: int = 1  # least i >= 1 with r dividing q^i - 1
    is_p: bool = False  # r equals the field characteristic

    def __post_init__(self):
        if not is_prime(self.r):
            raise SchemaError("r must be prime")
        if self.is_p:
            return
        if self.i < 1 or (self.r > 2 and (self.r - 1) % self.i != 0):
            raise SchemaError("i must divide r - 1")

    @property
    def t(self) -> int:
        return (self.r - 1) // self.i


def exchange_gain(i: int, e: int, a1: int) -> Fraction:
    """Class-dimension change when one orbit block of size i leaves the
    1-eigenspace: i * (e - a1 - i/2)."""
    return Fraction(i * (2 * (e - a1) - i), 2)


def _argmax(candidates):
    best = None
    for cls, dim in candidates:
        if best is None or dim > best[1] or (dim == best[1] and repr(cls) < repr(best[0])):
            best = (cls, dim)
    if best is None:
        raise Infeasible("no class of the requested order exists")
    return best


def _unipotent_max(group: GroupSpec, p_order: int):
    from .stabilizers import enumerate_class_shapes

    shapes = enumerate_class_shapes(group, constraints={"kind": "unipotent"})
    cands = []
    for cls in shapes:
        if cls.unip.decoration is None and max(cls.unip.partition) > p_order:
            continue
        try:
            cands.append((cls, class_dim(group, cls).dim_class))
        except UnsupportedCase:
            continue
    return _argmax(cands)


def _involution_max(group: GroupSpec):
    if group.family == "SL":
        cands = []
        for b in range(2, group.n, 2):
            cls = validate_class(
                group, semisimple(ones=group.n - b, minus_ones=b, order=2)
            )
            cands.append((cls, class_dim(group, cls).dim_class))
        if group.n % 2 == 0:
            cls = validate_class(
                group,
                semisimple(
                    pairs=[("l1", group.n // 2)],
                    relations={"l1": "square_is_minus_one"},
                    order=2,
                ),
            )
            cands.append((cls, class_dim(group, cls).dim_class))
        return _argmax(cands)
    from .stabilizers import enumerate_class_shapes

    shapes = enumerate_class_shapes(
        group, constraints={"kind": "semisimple", "order": 2}
    )
    shapes = [c for c in shapes if c.order == 2]
    return _argmax((c, class_dim(group, c).dim_class) for c in shapes)


def _mult_vectors(total_slots: int, weight: int, budget: int):
    """Nonincreasing tuples (a_1 >= ... >= a_k), k <= total_slots, with
    weight * sum(a) <= budget and sum(a) >= 1."""
    out = []

    def rec(prefix, remaining_slots, cap):
        if prefix:
            out.append(tuple(prefix))
        if remaining_slots == 0:
            return
        used = weight * sum(prefix)
        top = min(cap, (budget - used) // weight)
        for a in range(1, top + 1):
            rec(prefix + [a], remaining_slots - 1, a)

    rec([], total_slots, budget // weight if weight else 0)
    return out


def _semisimple_max(group: GroupSpec, ctx: QContext):
    n = group.n
    r, i = ctx.r, ctx.i
    fam = group.family
    if fam == "SL":
        slots, weight, labels_per_slot = ctx.t, i, i
        pairing = "free"
    elif i % 2 == 0:
        slots, weight, labels_per_slot = ctx.t, i, i // 2
        pairing = "pairs"
    else:
        slots, weight, labels_per_slot = ctx.t // 2, 2 * i, i
        pairing = "pairs"
    if slots == 0:
        raise Infeasible(f"no order-{r} torus element with i = {i}")
    cands = []
    for mults in _mult_vectors(slots, weight, n):
        e = n - weight * sum(mults)
        if e < 0:
            continue
        if fam == "Sp" and e % 2:
            continue
        if group.is_orthogonal and e % 2 != n % 2:
            continue
        labels = []
        for j, a in enumerate(mults):
            for k in range(labels_per_slot):
                labels.append((f"l{j + 1}_{k + 1}", a))
        relations = {lab: f"order:{r}" for lab, _ in labels}
        kwargs = {"relations": relations, "order": r}
        if pairing == "pairs":
            cls = semisimple(ones=e, pairs=labels, **kwargs)
        else:
            cls = semisimple(free=labels, ones=e, **kwargs)
        try:
            cls = validate_class(group, cls)
        except UnsupportedCase:
            continue
        cands.append((cls, class_dim(group, cls).dim_class))
    return _argmax(cands)


def max_class(group: GroupSpec, ctx: QContext) -> tuple[ClassDescriptor, int]:
    """The maximal-dimension class of elements of order r modulo the center,
    together with its dimension, by exact search."""
    target = group.class_group()
    if ctx.is_p:
        if target.p == 0:
            raise SchemaError("r = p needs positive characteristic")
        return _unipotent_max(target, target.p)
    if ctx.r == target.p:
        raise SchemaError("set is_p when r equals the characteristic")
    if ctx.r == 2:
        return _involution_max(target)
    return _semisimple_max(target, ctx)


def rs_limit(family: str, n: int, p: int, r: int, s: int) -> Fraction:
    """Limit of the probability that a random (order r, order s) pair
    topologically generates, along the family at fixed (r, s)."""
    if not (is_prime(r) and is_prime(s) and s > 2):
        raise NotApplicable("r, s must be prime with s > 2")
    GroupSpec(family, n, p)  # validates the family
    key = tuple(sorted((r, s)))
    if family == "Sp" and n == 4:
        if key == (2, 3):
            return Fraction(0) if p in (2, 3) else Fraction(1, 2)
        if key == (3, 3):
            if p == 3:
                return Fraction(0)
            return Fraction(1, 2) if p == 2 else Fraction(3, 4)
    return Fraction(1)

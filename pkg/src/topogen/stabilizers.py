"""Generic-stabilizer utilities.

The generically-free dimension thresholds d(G) and d'(G), exhaustive
enumeration of prime-order-mod-center class shapes, and the constant
c(G) = max{r * dim C} over shapes C with their minimal generator counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .algebra_core import (
    ClassDescriptor,
    GroupSpec,
    semisimple,
    unipotent,
    validate_class,
)
from .errors import BoundExceeded, UnsupportedCase, UnsupportedGroup

# Exceptional-type thresholds are pure data lookups keyed by type name.
_EXCEPTIONAL = {
    "G2": (Fraction(36), Fraction(48)),
    "F4": (Fraction(144), Fraction(240)),
    "E6": (Fraction(216), Fraction(360)),
    "E7": (Fraction(378), Fraction(630)),
    "E8": (Fraction(720), Fraction(1200)),
}


def _thresholds(group: Union[GroupSpec, str]) -> tuple[Fraction, Fraction]:
    """(d(G), d'(G)) as exact rationals."""
    if isinstance(group, str):
        if group in _EXCEPTIONAL:
            return _EXCEPTIONAL[group]
        raise UnsupportedGroup(f"no threshold row for {group!r}")
    n, p = group.n, group.p
    fam = group.family
    if fam == "SL":
        if n == 2:
            return Fraction(6), Fraction(9)
        d = Fraction(9, 4) * n * n
        return d, d
    if fam == "Sp":
        d = Fraction(9, 8) * n * n
        if n == 4 or (n, p) == (6, 2):
            d += 2
        return d, Fraction(3, 2) * n * n
    if fam in ("SO", "Spin8"):
        if fam == "SO" and n < 7:
            raise UnsupportedGroup("orthogonal threshold row needs n >= 7")
        return Fraction(9, 8) * n * n, Fraction(2) * (n - 1) * (n - 1)
    raise UnsupportedGroup(f"no threshold row for {fam}")


def d_value(group: Union[GroupSpec, str]) -> Fraction:
    return _thresholds(group)[0]


def dprime_value(group: Union[GroupSpec, str]) -> Fraction:
    return _thresholds(group)[1]


def generically_free(
    group: Union[GroupSpec, str], dimV: int, dimVG: int
) -> bool:
    """True iff dim V - dim V^G strictly exceeds d(G)."""
    if dimVG > dimV:
        raise UnsupportedGroup("fixed space cannot exceed the module")
    return Fraction(dimV - dimVG) > d_value(group)


# ---------------------------------------------------------------------------
# shape enumeration
# ---------------------------------------------------------------------------


def _unipotent_shapes(target: GroupSpec) -> list[ClassDescriptor]:
    from .closure import enumerate_unipotent_partitions

    n, p = target.n, target.p
    out = []
    if p == 2 and target.family in ("Sp", "SO", "Spin8"):
        # prime order at p = 2 means involutions; enumerate decorations
        natural = 8 if target.family == "Spin8" else n
        vchoices = (0, 2) if target.is_orthogonal else (0, 1, 2)
        for s in range(1, natural // 2 + 1):
            for v in vchoices:
                if v > s or (s - v) % 2:
                    continue
                dec = []
                if v:
                    dec.append({"V": 2, "mult": v})
                if s - v:
                    dec.append({"W": 2, "mult": (s - v) // 2})
                if natural - 2 * s:
                    dec.append({"W": 1, "mult": (natural - 2 * s) // 2})
                try:
                    out.append(validate_class(target, unipotent(decoration=dec, order=2)))
                except UnsupportedCase:
                    continue
        return out
    cap = p if p else None
    for pi in enumerate_unipotent_partitions(target, max_part=cap):
        out.append(validate_class(target, unipotent(partition=pi)))
    return out


def _pair_multisets(total: int):
    """Multisets of positive pair multiplicities summing to total."""
    from .closure import _partitions

    return list(_partitions(total))


def _semisimple_shapes(target: GroupSpec) -> list[ClassDescriptor]:
    n, p = target.n, target.p
    fam = target.family
    out = []
    if fam == "SL":
        # multiplicity pattern of symbolically independent eigenvalues
        from .closure import _partitions

        for mults in _partitions(n):
            if len(mults) < 2:
                continue
            free = [(f"l{i + 1}", m) for i, m in enumerate(mults)]
            out.append(validate_class(target, semisimple(free=free)))
        return out
    # symplectic / orthogonal: eigenvalues come in {1, -1} and inverse pairs
    # involutions (order 2 mod center)
    if p != 2:
        step = 2
        for b in range(step, n, step):
            a = n - b
            if target.is_orthogonal and target.n % 2 == 1 and b % 2:
                continue
            try:
                out.append(validate_class(target, semisimple(ones=a, minus_ones=b, order=2)))
            except UnsupportedCase:
                continue
        if n % 2 == 0 and (fam == "Sp" or target.is_orthogonal):
            # (lam I_{n/2}, lam^{-1} I_{n/2}) with lam^2 = -1: order 2 mod center
            out.append(
                validate_class(
                    target,
                    semisimple(
                        pairs=[("l1", n // 2)],
                        relations={"l1": "square_is_minus_one"},
                        order=2,
                    ),
                )
            )
    # odd prime order (order tag left generic): 1-eigenspace plus pairs
    for pair_total in range(1, n // 2 + 1):
        a = n - 2 * pair_total
        for mults in _pair_multisets(pair_total):
            pairs = [(f"l{i + 1}", m) for i, m in enumerate(mults)]
            try:
                out.append(validate_class(target, semisimple(ones=a, pairs=pairs)))
            except UnsupportedCase:
                continue
    return out


def enumerate_class_shapes(
    group: GroupSpec, constraints: Optional[dict] = None, bound: int = 12
) -> list[ClassDescriptor]:
    """Duplicate-free canonical shapes of prime-order-mod-center classes.

    Semisimple shapes are enumerated up to renaming of the symbolic
    eigenvalue labels. `constraints` may fix "kind" and/or "order".
    """
    target = group.class_group()
    if (8 if group.family == "Spin8" else target.n) > bound:
        raise BoundExceeded(f"shape enumeration bounded at n = {bound}")
    constraints = constraints or {}
    want_kind = constraints.get("kind")
    want_order = constraints.get("order")
    shapes: list[ClassDescriptor] = []
    if want_kind in (None, "unipotent"):
        shapes.extend(_unipotent_shapes(target))
    if want_kind in (None, "semisimple"):
        shapes.extend(_semisimple_shapes(target))
    if want_order is not None:
        shapes = [c for c in shapes if c.order in (want_order, None)]
    # canonical dedup
    seen = set()
    unique = []
    for c in shapes:
        key = repr(c)
        if key not in seen:
            seen.add(key)
            unique.append(c)
    return unique


# ---------------------------------------------------------------------------
# c(G)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CValue:
    c: int
    witness: ClassDescriptor
    r: int
    skipped: bool  # some shapes were skipped for lack of dimension data


def _shape_sort_key(cls: ClassDescriptor) -> str:
    return repr(cls)


def c_value(group: GroupSpec, bound: int = 12) -> CValue:
    """max{r * dim C} over class shapes C, r = minimal generator count."""
    from .invariants import class_dim
    from .oracle import min_generators

    best: Optional[tuple] = None
    skipped = False
    for cls in sorted(enumerate_class_shapes(group, bound=bound), key=_shape_sort_key):
        try:
            dim = class_dim(group, cls).dim_class
            r = min_generators(group, cls)
        except UnsupportedCase:
            skipped = True
            continue
        cand = (r * dim, cls, r)
        if best is None or cand[0] > best[0]:
            best = cand
    if best is None:
        raise UnsupportedCase("no shape with computable dimension data")
    return CValue(c=best[0], witness=best[1], r=best[2], skipped=skipped)

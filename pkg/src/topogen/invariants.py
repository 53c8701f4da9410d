"""Numerical class invariants: eigenspace profiles, class dimensions,
induced Jordan block counts, exterior/symmetric square fixed spaces, and the
catalog of fixed-point dimensions on isotropic Grassmannians.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .algebra_core import (
    ClassDescriptor,
    GroupSpec,
    conjugate_partition,
    dim_and_rank,
)
from .errors import NotApplicable, UnsupportedChar2Class


@dataclass(frozen=True)
class EigenProfile:
    d: int  # largest eigenspace dimension on the natural module
    e: int  # dimension of the 1-eigenspace
    spin8: Optional[tuple] = None  # (d1, d3, d4) across the three 8-dim modules


@dataclass(frozen=True)
class ClassDim:
    dim_class: int
    dim_centralizer: int


def eigen_profile(group: GroupSpec, cls: ClassDescriptor) -> EigenProfile:
    if cls.kind == "unipotent":
        blocks = len(cls.unip.partition)
        return EigenProfile(d=blocks, e=blocks)
    pat = cls.eigen
    d = max(pat.mults())
    return EigenProfile(d=d, e=pat.mult_one)


def is_quadratic(cls: ClassDescriptor) -> bool:
    """Minimal polynomial on the natural module has degree 2."""
    if cls.kind == "unipotent":
        parts = cls.unip.partition
        return max(parts) == 2
    return len(cls.eigen.mults()) == 2


def _semisimple_centralizer_dim(group: GroupSpec, cls: ClassDescriptor) -> int:
    pat = cls.eigen
    a, b = pat.mult_one, pat.mult_minus_one
    pair_sq = sum(m * m for _, m in pat.pairs)
    fam = group.family
    if fam == "Sp":
        return a * (a + 1) // 2 + b * (b + 1) // 2 + pair_sq
    if fam in ("SO", "Spin8"):
        return a * (a - 1) // 2 + b * (b - 1) // 2 + pair_sq
    # SL: sum of squared multiplicities over all distinct eigenvalues, minus 1
    return sum(m * m for m in pat.mults()) - 1


def _unipotent_centralizer_dim_odd(fam: str, partition: tuple) -> int:
    lam = conjugate_partition(partition)
    sq = sum(c * c for c in lam)
    odd = sum(1 for a in partition if a % 2)
    if fam == "Sp":
        return (sq + odd) // 2
    if fam in ("SO", "Spin8"):
        return (sq - odd) // 2
    return sq - 1


def _unipotent_centralizer_dim_char2(group: GroupSpec, cls: ClassDescriptor) -> int:
    """Calibrated rule set for decorated involutions.

    For Jordan type (2^s, 1^(n-2s)) in Sp_n: the odd-characteristic formula,
    plus s exactly when the decoration is a-type. For SO_n (a/c types only):
    the Sp_n value minus the number of Jordan blocks.
    """
    data = cls.unip
    partition = data.partition
    if max(partition) > 2 or data.decoration is None:
        raise UnsupportedChar2Class(
            "characteristic-2 dimensions implemented for decorated involutions only"
        )
    fam = group.family
    base = _unipotent_centralizer_dim_odd("Sp", partition)
    if data.as_type == "a":
        base += sum(1 for a in partition if a == 2)
    if fam == "Sp":
        return base
    if fam in ("SO", "Spin8"):
        return base - len(partition)
    raise UnsupportedChar2Class("no decorated classes in SL")


def class_dim(group: GroupSpec, cls: ClassDescriptor) -> ClassDim:
    target = group.class_group()
    dim_g, _ = dim_and_rank(target)
    if cls.kind == "semisimple":
        cent = _semisimple_centralizer_dim(target, cls)
    elif target.p == 2 and target.family in ("Sp", "SO", "Spin8"):
        cent = _unipotent_centralizer_dim_char2(target, cls)
    else:
        cent = _unipotent_centralizer_dim_odd(target.family, cls.unip.partition)
    return ClassDim(dim_class=dim_g - cent, dim_centralizer=cent)


def induced_block_count(kind: str, a: int, b: Optional[int] = None, p: int = 0) -> int:
    """Jordan block counts of J_a (x) J_b, wedge^2(J_a), S^2(J_a)."""
    if kind == "tensor":
        if b is None:
            raise NotApplicable("tensor needs two block sizes")
        return min(a, b)
    if kind == "wedge2":
        return a // 2
    if kind == "sym2":
        eps = 1 if (a % 2 == 0 and p == 2) else 0
        return (a + 1) // 2 + eps
    raise NotApplicable(f"unknown functor {kind!r}")


def _wedge2_blocks(partition: tuple) -> int:
    parts = list(partition)
    total = sum(a // 2 for a in parts)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            total += min(parts[i], parts[j])
    return total


def sym2_fixed_dim(partition, p: int = 0) -> int:
    """Fixed-space dimension (= block count) of a unipotent g on S^2(W)."""
    parts = list(partition)
    total = sum(induced_block_count("sym2", a, p=p) for a in parts)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            total += min(parts[i], parts[j])
    return total


def wedge2_fixed_dim(n: int, cls: ClassDescriptor) -> tuple[Optional[int], int]:
    """(exact, upper) for dim of the fixed space on the exterior square."""
    if cls.kind == "unipotent":
        parts = cls.unip.partition
        if cls.unip.decoration is not None and max(parts) > 2:
            raise UnsupportedChar2Class(
                "exterior-square fixed spaces need involutions in characteristic 2"
            )
        d = len(parts)
        exact: Optional[int] = _wedge2_blocks(parts)
        tighten = False
    else:
        pat = cls.eigen
        d = max(pat.mults())
        exact = (
            pat.mult_one * (pat.mult_one - 1) // 2
            + pat.mult_minus_one * (pat.mult_minus_one - 1) // 2
            + sum(m * m for _, m in pat.pairs)
        )
        tighten = pat.mult_one > 0 and pat.mult_minus_one > 0
    upper = d * (n // 2)
    if tighten:
        # strictly below d(n-1)/2 when both +-1 occur as eigenvalues
        upper = min(upper, (d * (n - 1) - 1) // 2)
    return exact, upper


def _unip_key(cls: ClassDescriptor) -> tuple:
    return ("u",) + cls.unip.partition


def _ss_key(cls: ClassDescriptor) -> tuple:
    pat = cls.eigen
    return ("s", pat.mult_one, pat.mult_minus_one, tuple(m for _, m in pat.pairs))


# Hard-coded fixed-point dimensions on the k-dimensional totally singular
# Grassmannian, keyed by (family, n, k, class key).
_GRASS_CATALOG = {
    # 9-dimensional orthogonal, 4-dimensional totally singular subspaces
    ("SO", 9, 4, ("u", 3, 3, 3)): 3,
    ("SO", 9, 4, ("s", 3, 0, (3,))): 3,
    ("SO", 9, 4, ("u", 2, 2, 2, 2, 1)): 6,
    # Sp6, Lagrangian (k = 3)
    ("Sp", 6, 3, ("s", 4, 2, ())): 4,
    ("Sp", 6, 3, ("s", 2, 4, ())): 4,
    ("Sp", 6, 3, ("u", 2, 1, 1, 1, 1)): 3,
    ("Sp", 6, 3, ("u", 2, 2, 2)): 3,
    ("Sp", 6, 3, ("u", 2, 2, 1, 1)): 3,
    ("Sp", 6, 3, ("s", 4, 0, (1,))): 3,
    ("Sp", 6, 3, ("s", 0, 0, (3,))): 2,
    ("Sp", 6, 3, ("u", 3, 3)): 2,
    # Sp8, k = 4
    ("Sp", 8, 4, ("s", 6, 2, ())): 7,
    ("Sp", 8, 4, ("s", 2, 6, ())): 7,
    ("Sp", 8, 4, ("s", 4, 4, ())): 6,
    ("Sp", 8, 4, ("u", 3, 3, 1, 1)): 4,
    ("Sp", 8, 4, ("u", 3, 3, 2)): 3,
}


def grassmannian_fixed_dim(
    group: GroupSpec, cls: ClassDescriptor, k: int, subspace_type: str = "totally_singular"
) -> Optional[int]:
    if subspace_type != "totally_singular":
        return None
    if cls.kind == "unipotent":
        key = _unip_key(cls)
        # Levi unipotent elements in Sp on the Lagrangian Grassmannian: the
        # fixed-point dimension equals the S^2 fixed space of the half
        # partition.
        if group.family == "Sp" and 2 * k == group.n:
            from collections import Counter

            counts = Counter(cls.unip.partition)
            if all(c % 2 == 0 for c in counts.values()):
                half = []
                for a, c in counts.items():
                    half.extend([a] * (c // 2))
                return sym2_fixed_dim(tuple(sorted(half, reverse=True)), group.p)
    else:
        key = _ss_key(cls)
    return _GRASS_CATALOG.get((group.family, group.n, k, key))

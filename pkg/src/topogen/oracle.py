"""The central decision engine.

Given a group and a tuple of prime-order-mod-center classes, decide whether
the set of topologically generating tuples in the product of the classes is
empty, and report which obstruction fired. Also: the exterior-square
transfer for the 6-dimensional orthogonal group, triality profiles for
Spin8, the adjoint-module necessary condition, and the minimal generator
count search.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra_core import (
    REL_SQUARE_MINUS_ONE,
    ClassDescriptor,
    GroupSpec,
    dim_and_rank,
    validate_class,
)
from .errors import (
    BadCharacteristic,
    MissingSpin8Profile,
    OutsideCatalog,
    SchemaError,
)
from .invariants import EigenProfile, class_dim, eigen_profile, is_quadratic


@dataclass(frozen=True)
class Verdict:
    empty: bool
    reason: str  # DimObstruction | SpChar2FixedVector | QuadraticPair |
    #              TableRow | FamilyTheoremCase | Generic
    case_id: Optional[str] = None
    witnesses: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# pattern matching helpers
# ---------------------------------------------------------------------------


def _ss_sig(cls: ClassDescriptor) -> Optional[tuple]:
    if cls.kind != "semisimple" or cls.eigen.free:
        return None
    pat = cls.eigen
    return (
        pat.mult_one,
        pat.mult_minus_one,
        tuple(sorted((m for _, m in pat.pairs), reverse=True)),
    )


def _is_ss(cls: ClassDescriptor, a: int, b: int, pair_mults=(), twist=True) -> bool:
    """Match a semisimple pattern, optionally up to the central -1 twist."""
    sig = _ss_sig(cls)
    if sig is None:
        return False
    want = tuple(sorted(pair_mults, reverse=True))
    if sig == (a, b, want):
        return True
    return twist and sig == (b, a, want)


def _is_unip(cls: ClassDescriptor, partition, a_type_if_char2=False) -> bool:
    if cls.kind != "unipotent":
        return False
    if cls.unip.partition != tuple(sorted(partition, reverse=True)):
        return False
    if a_type_if_char2 and cls.unip.decoration is not None:
        return cls.unip.as_type == "a"
    return True


def _count(classes, pred) -> int:
    return sum(1 for c in classes if pred(c))


# ---------------------------------------------------------------------------
# symbolic eigenvalue arithmetic for the exterior-square transfer
# ---------------------------------------------------------------------------


def _symbols(pat) -> list:
    """Distinct eigenvalues as (sign, exponent-vector) symbols with mults."""
    syms = []
    if pat.mult_one:
        syms.append(((1, ()), pat.mult_one))
    if pat.mult_minus_one:
        syms.append(((-1, ()), pat.mult_minus_one))
    for lab, m in pat.pairs:
        syms.append(((1, ((lab, 1),)), m))
        syms.append(((1, ((lab, -1),)), m))
    for lab, m in pat.free:
        syms.append(((1, ((lab, 1),)), m))
    return syms


def _mul_symbols(pat, s1, s2):
    sign = s1[0] * s2[0]
    exps = dict(s1[1])
    for lab, e in s2[1]:
        exps[lab] = exps.get(lab, 0) + e
    out = []
    for lab, e in sorted(exps.items()):
        rel = pat.relation_of(lab)
        if rel == REL_SQUARE_MINUS_ONE:
            e %= 4
            if e >= 2:
                e -= 2
                sign = -sign
        elif rel and rel.startswith("order:"):
            e %= int(rel.split(":", 1)[1])
        if e:
            out.append((lab, e))
    return (sign, tuple(out))


def so6_transfer(sl4_class: ClassDescriptor) -> EigenProfile:
    """Profile of an SL4 class on the 6-dimensional exterior square.

    Unknown relations between distinct labels are resolved generically
    (distinct untagged labels are treated as multiplicatively independent).
    """
    if sl4_class.kind == "unipotent":
        parts = sl4_class.unip.partition
        if sum(parts) != 4:
            raise SchemaError("transfer expects a 4-dimensional class")
        from .invariants import _wedge2_blocks

        blocks = _wedge2_blocks(parts)
        return EigenProfile(d=blocks, e=blocks)
    pat = sl4_class.eigen
    if pat.total() != 4:
        raise SchemaError("transfer expects a 4-dimensional class")
    products = _so6_products(pat)
    return EigenProfile(d=max(products.values()), e=products.get((1, ()), 0))


def _so6_products(pat) -> Counter:
    """Multiset of pairwise eigenvalue products (symbols with multiplicity)."""
    syms = _symbols(pat)
    products: Counter = Counter()
    for i, (s1, m1) in enumerate(syms):
        products[_mul_symbols(pat, s1, s1)] += m1 * (m1 - 1) // 2
        for s2, m2 in syms[i + 1 :]:
            products[_mul_symbols(pat, s1, s2)] += m1 * m2
    return +products


def _so6_quadratic(cls: ClassDescriptor, p: int) -> bool:
    """Minimal polynomial degree 2 on the 6-dimensional natural module."""
    if cls.kind == "semisimple":
        return len(_so6_products(cls.eigen)) == 2
    parts = cls.unip.partition
    # exterior-square Jordan types of the partitions of 4
    if parts == (2, 1, 1):
        return True
    if parts == (2, 2):
        return p == 2
    return False


# ---------------------------------------------------------------------------
# Spin8 triality profiles
# ---------------------------------------------------------------------------


def spin8_profile(cls: ClassDescriptor) -> tuple:
    """Largest-eigenspace dimensions across the three 8-dimensional modules."""
    if cls.kind == "unipotent":
        parts = cls.unip.partition
        char2 = cls.unip.decoration is not None
        if parts == (2, 2, 2, 2):
            if char2:
                if cls.unip.as_type == "c":
                    return (4, 4, 4)
                raise OutsideCatalog("only c-type (2^4) involutions are catalogued")
            return (4, 6, 4)
        if char2 and parts == (2, 2, 1, 1, 1, 1) and cls.unip.as_type == "c":
            return (6, 6, 6)
        table = {
            (3, 3, 1, 1): (4, 4, 4),
            (5, 3): (2, 2, 2),
            (7, 1): (2, 2, 2),
            (3, 1, 1, 1, 1, 1): (6, 4, 4),
        }
        if not char2 and parts in table:
            return table[parts]
        raise OutsideCatalog(f"no catalogued profile for partition {parts}")
    sig = _ss_sig(cls)
    table = {
        (4, 4, ()): (4, 4, 4),
        (6, 0, (1,)): (6, 4, 4),
        (2, 0, (3,)): (3, 4, 4),
        (4, 0, (2,)): (4, 3, 4),
        (4, 0, (1, 1)): (4, 2, 2),
        (0, 0, (2, 2)): (2, 4, 2),
    }
    if sig in table:
        return table[sig]
    raise OutsideCatalog(f"no catalogued profile for pattern {sig}")


# ---------------------------------------------------------------------------
# family-specific emptiness cases (rules (0)-(2) already checked)
# ---------------------------------------------------------------------------


def _sl_case(group, classes) -> Optional[str]:
    if group.n == 2:
        if len(classes) == 2 and all(c.order == 2 for c in classes):
            return "sl2"
    return None


def _so_even_case(group, classes) -> Optional[str]:
    n = group.n
    m = n // 2
    p = group.p
    if len(classes) != 2 or m < 5:
        return None
    if m % 2:  # m >= 5 odd
        x1_opts = [
            lambda c: _is_ss(c, 2, 0, (m - 1,)),
            lambda c: p != 2 and _is_unip(c, (3, 3) + (2,) * (m - 3)),
        ]
        x2 = lambda c: _is_unip(c, (2,) * (m - 1) + (1, 1), a_type_if_char2=True)
        case = "so2nodd"
    else:  # m >= 6 even
        x1_opts = [
            lambda c: _is_ss(c, 2, 0, (m - 1,)),
            lambda c: p != 2 and _is_unip(c, (3, 3) + (2,) * (m - 4) + (1, 1)),
            lambda c: p != 2 and _is_unip(c, (3,) + (2,) * (m - 2) + (1,)),
        ]
        x2 = lambda c: _is_unip(c, (2,) * m, a_type_if_char2=True)
        case = "so2neven"
    for a, b in (classes, classes[::-1]):
        if x2(b) and any(opt(a) for opt in x1_opts):
            return case
    return None


def _so_odd_case(group, classes) -> Optional[str]:
    n = group.n
    m = n // 2
    r = len(classes)
    if r == 3 and m == 2 and all(_is_unip(c, (2, 2, 1)) for c in classes):
        return "oddorth-i"
    if r == 2 and m % 2 == 0:
        for a, b in (classes, classes[::-1]):
            if _is_unip(a, (2,) * m + (1,)) and _is_ss(b, 1, 0, (m,), twist=False):
                return "oddorth-ii"
    return None


def _sp_odd_case(group, classes) -> Optional[str]:
    n = group.n
    r = len(classes)
    minus = lambda c, ell: _is_ss(c, n - ell, ell, ())  # (-I_ell, I_{n-ell})
    if n == 4:
        if r == 2:
            for a, b in (classes, classes[::-1]):
                if minus(a, 2) and eigen_profile(group, b).d >= 2:
                    return "sp4odd-ii"
        if r == 3 and _count(classes, lambda c: minus(c, 2)) >= 2:
            rest = [c for c in classes if not minus(c, 2)]
            others_quadratic = all(is_quadratic(c) for c in rest)
            if others_quadratic:
                return "sp4odd-iii"
        if r == 4 and all(minus(c, 2) for c in classes):
            return "sp4odd-iv"
    elif n == 6:
        if r == 2:
            for a, b in (classes, classes[::-1]):
                if minus(a, 2) and (_is_unip(b, (3, 3)) or _is_ss(b, 2, 0, (2,))):
                    return "sp6odd-ii"
        if r == 3 and all(minus(c, 2) for c in classes):
            return "sp6odd-iii"
    elif n == 8:
        if r == 2:
            for a, b in (classes, classes[::-1]):
                if minus(a, 4) and (
                    _is_ss(b, 4, 0, (2,))
                    or _is_ss(b, 4, 0, (1, 1))
                    or _is_unip(b, (3, 3, 1, 1))
                ):
                    return "spodd-ii"
        if r == 3:
            if _count(classes, lambda c: minus(c, 2)) == 2 and _count(
                classes, lambda c: minus(c, 4)
            ) == 1:
                return "spodd-iii"
    return None


def _sp_even_case(group, classes) -> Optional[str]:
    if group.n != 4:
        return None
    r = len(classes)
    a2 = lambda c: _is_unip(c, (2, 2)) and c.unip.as_type == "a"
    if r == 3 and _count(classes, a2) >= 2:
        rest = [c for c in classes if not a2(c)]
        if all(is_quadratic(c) for c in rest):
            return "sp4even-ii"
    if r == 4 and all(a2(c) for c in classes):
        return "sp4even-iii"
    return None


def _family_case(group, classes) -> Optional[str]:
    fam = group.family
    if fam == "SL":
        return _sl_case(group, classes)
    if fam == "SO":
        if group.n % 2 == 0:
            return _so_even_case(group, classes)
        return _so_odd_case(group, classes)
    if fam == "Sp":
        if group.p == 2:
            return _sp_even_case(group, classes)
        return _sp_odd_case(group, classes)
    return None


def _table_row(group, classes) -> Optional[str]:
    """Identifier of the matching published table row, if any."""
    fam, n, p, r = group.family, group.n, group.p, len(classes)
    m = n // 2
    if fam == "SO" and n % 2 == 0 and r == 2 and m >= 5:
        if _so_even_case(group, classes):
            return f"SO{n}-r2"
    if fam == "SO" and n % 2 == 1:
        if r == 2 and _so_odd_case(group, classes) == "oddorth-ii":
            return f"SO{n}-r2"
        if r == 3 and _so_odd_case(group, classes) == "oddorth-i":
            return "SO5-r3"
    if fam == "Sp" and p != 2:
        case = _sp_odd_case(group, classes)
        if case == "sp4odd-ii":
            return "Sp4-r2"
        if case == "sp4odd-iii":
            return "Sp4-r3"
        if case == "sp4odd-iv":
            return "Sp4-r4"
        if case == "sp6odd-iii":
            return "Sp6-r3"
        if case == "spodd-iii":
            return "Sp8-r3"
    if fam == "Sp" and p == 2 and n == 4:
        case = _sp_even_case(group, classes)
        if case == "sp4even-ii":
            return "Sp4-r3"
        if case == "sp4even-iii":
            return "Sp4-r4"
    return None


# ---------------------------------------------------------------------------
# decide
# ---------------------------------------------------------------------------


def _decide_spin8(group, classes, spin8_profiles) -> Verdict:
    r = len(classes)
    if spin8_profiles is not None:
        if len(spin8_profiles) != r:
            raise SchemaError("need one profile triple per class")
        profiles = [tuple(t) for t in spin8_profiles]
    else:
        profiles = []
        for c in classes:
            try:
                profiles.append(spin8_profile(c))
            except OutsideCatalog as exc:
                raise MissingSpin8Profile(str(exc)) from exc
    witnesses = {
        "r": r,
        "n": 8,
        "profiles": [list(t) for t in profiles],
        "sum_d_by_module": [sum(t[j] for t in profiles) for j in range(3)],
    }
    for j in range(3):
        total = sum(t[j] for t in profiles)
        if total > 8 * (r - 1):
            return Verdict(
                True,
                "DimObstruction",
                case_id=f"module-{(1, 3, 4)[j]}",
                witnesses=witnesses,
            )
    if r == 2 and all(is_quadratic(c) for c in classes):
        return Verdict(True, "QuadraticPair", case_id="so8", witnesses=witnesses)
    return Verdict(False, "Generic", witnesses=witnesses)


def _decide_so6(group, classes) -> Verdict:
    r = len(classes)
    v_profiles = [so6_transfer(c) for c in classes]
    w_profiles = [eigen_profile(GroupSpec("SL", 4, group.p), c) for c in classes]
    witnesses = {
        "r": r,
        "n": 6,
        "d_on_V": [pr.d for pr in v_profiles],
        "d_on_W": [pr.d for pr in w_profiles],
        "sum_d": sum(pr.d for pr in v_profiles),
    }
    if sum(pr.d for pr in v_profiles) > 6 * (r - 1):
        return Verdict(True, "DimObstruction", witnesses=witnesses)
    if r == 2 and all(_so6_quadratic(c, group.p) for c in classes):
        return Verdict(True, "QuadraticPair", case_id="so6", witnesses=witnesses)
    if sum(pr.d for pr in w_profiles) > 4 * (r - 1):
        return Verdict(True, "FamilyTheoremCase", case_id="so6", witnesses=witnesses)
    return Verdict(False, "Generic", witnesses=witnesses)


def decide(
    group: GroupSpec,
    classes: Sequence[ClassDescriptor],
    spin8_profiles: Optional[Sequence] = None,
) -> Verdict:
    classes = [validate_class(group, c) for c in classes]
    r = len(classes)
    if r < 2:
        raise SchemaError("need at least two classes")
    if group.family == "Spin8":
        return _decide_spin8(group, classes, spin8_profiles)
    if group.family == "SO" and group.n == 6:
        return _decide_so6(group, classes)
    n = group.n
    profiles = [eigen_profile(group, c) for c in classes]
    ds = [pr.d for pr in profiles]
    es = [pr.e for pr in profiles]
    witnesses = {"r": r, "n": n, "d": ds, "e": es, "sum_d": sum(ds), "sum_e": sum(es)}
    if sum(ds) > n * (r - 1):
        return Verdict(True, "DimObstruction", witnesses=witnesses)
    if group.family == "Sp" and group.p == 2 and sum(es) >= n * (r - 1):
        return Verdict(True, "SpChar2FixedVector", witnesses=witnesses)
    if n >= 3 and r == 2 and all(is_quadratic(c) for c in classes):
        return Verdict(True, "QuadraticPair", witnesses=witnesses)
    case = _family_case(group, classes)
    if case is not None:
        row = _table_row(group, classes)
        if row is not None:
            return Verdict(True, "TableRow", case_id=row, witnesses=witnesses)
        return Verdict(True, "FamilyTheoremCase", case_id=case, witnesses=witnesses)
    return Verdict(False, "Generic", witnesses=witnesses)


# ---------------------------------------------------------------------------
# adjoint-module necessary condition and generator counts
# ---------------------------------------------------------------------------


def scott_lower_bound(group: GroupSpec, classes: Sequence[ClassDescriptor]):
    # dimension-formula evaluation only: no family admissibility validation,
    # so the bound can also be evaluated on companion/auxiliary Jordan data
    target = group.class_group()
    for c in classes:
        total = sum(c.unip.partition) if c.kind == "unipotent" else c.eigen.total()
        if total != target.n:
            raise SchemaError(f"class lives in dimension {total}, expected {target.n}")
    if group.family != "SL" and group.p == 2:
        raise BadCharacteristic(
            "adjoint-module bound implemented for good characteristic only"
        )
    dim_g, rank = dim_and_rank(group)
    z = 1 if (group.family == "SL" and group.p and group.n % group.p == 0) else 0
    lhs = sum(class_dim(group, c).dim_class for c in classes)
    rhs = dim_g + rank - z
    return (lhs >= rhs, lhs, rhs)


def min_generators(group: GroupSpec, cls: ClassDescriptor) -> int:
    cls = validate_class(group, cls)
    n = group.class_group().n if group.family != "Spin8" else 8
    for r in range(2, n + 2):
        if not decide(group, [cls] * r).empty:
            return r
    raise AssertionError("every class generates with at most n+1 conjugates")

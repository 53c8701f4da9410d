"""Symbolic data model: groups, prime-order-mod-center conjugacy classes.

Classes are described symbolically: semisimple classes by an eigenvalue
multiplicity pattern over opaque labels (with optional order tags), unipotent
classes by a Jordan partition, decorated in characteristic 2 by the V/W
form-module decomposition. No field elements appear at this layer.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    CentralClass,
    DimensionMismatch,
    OrderViolation,
    ParityViolation,
    SchemaError,
    UnsupportedGroup,
)

FAMILIES = ("SL", "Sp", "SO", "Spin8")

UNIPOTENT_CHAR_0 = "unipotent-char-0"

# Relation tags attachable to an eigenvalue label.
REL_SQUARE_MINUS_ONE = "square_is_minus_one"


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def conjugate_partition(partition: Sequence[int]) -> tuple[int, ...]:
    if not partition:
        return ()
    top = max(partition)
    return tuple(sum(1 for a in partition if a >= j) for j in range(1, top + 1))


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    p: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedGroup(f"unknown family {self.family!r}")
        if self.p != 0 and not is_prime(self.p):
            raise SchemaError(f"characteristic must be 0 or prime, got {self.p}")
        if self.n < 1:
            raise SchemaError("n must be positive")
        f, n = self.family, self.n
        if f == "SL" and n < 2:
            raise UnsupportedGroup("SL requires n >= 2")
        if f == "Sp" and (n % 2 or n < 4):
            raise UnsupportedGroup("Sp requires even n >= 4")
        if f == "SO":
            if n < 5:
                raise UnsupportedGroup("SO requires n >= 5")
            if n == 8:
                raise UnsupportedGroup("use family Spin8 for the 8-dimensional orthogonal group")
            if n % 2 and self.p == 2:
                raise UnsupportedGroup("odd orthogonal groups require p != 2")
        if f == "Spin8" and n != 8:
            raise UnsupportedGroup("Spin8 fixes n = 8")

    @property
    def is_orthogonal(self) -> bool:
        return self.family in ("SO", "Spin8")

    def class_group(self) -> "GroupSpec":
        """The group whose descriptor conventions classes of self follow.

        SO6 carries companion SL4 data (its natural module is the exterior
        square of the 4-dimensional linear module); everything else is
        self-describing.
        """
        if self.family == "SO" and self.n == 6:
            return GroupSpec("SL", 4, self.p)
        return self


@dataclass(frozen=True)
class EigenPattern:
    mult_one: int = 0
    mult_minus_one: int = 0
    pairs: tuple = ()  # ((label, mult), ...): eigenvalues {label, label^-1}
    free: tuple = ()  # ((label, mult), ...): unpaired eigenvalues (SL only)
    relations: tuple = ()  # ((label, tag), ...)
    variant: str = "unspecified"  # plus | minus | unspecified (SO even)

    def total(self) -> int:
        return (
            self.mult_one
            + self.mult_minus_one
            + 2 * sum(m for _, m in self.pairs)
            + sum(m for _, m in self.free)
        )

    def mults(self) -> list[int]:
        """Multiplicities of all distinct eigenvalues."""
        out = []
        if self.mult_one:
            out.append(self.mult_one)
        if self.mult_minus_one:
            out.append(self.mult_minus_one)
        for _, m in self.pairs:
            out.extend((m, m))
        for _, m in self.free:
            out.append(m)
        return out

    def relation_of(self, label: str) -> Optional[str]:
        for lab, tag in self.relations:
            if lab == label:
                return tag
        return None


@dataclass(frozen=True)
class UnipotentData:
    partition: tuple = ()
    decoration: Optional[tuple] = None  # (("V", size, mult) | ("W", size, mult), ...)
    as_type: str = "none"  # a | b | c | none


@dataclass(frozen=True)
class ClassDescriptor:
    kind: str  # "semisimple" | "unipotent"
    order: Union[int, str, None] = None
    eigen: Optional[EigenPattern] = None
    unip: Optional[UnipotentData] = None


def _norm_labelled(items, what: str) -> tuple:
    """Normalize [(label, mult)] (also plain ints -> auto labels)."""
    merged: dict[str, int] = {}
    auto = 0
    for item in items:
        if isinstance(item, int):
            auto += 1
            lab, m = f"l{auto}", item
        else:
            lab, m = item
        if not isinstance(m, int) or m < 1:
            raise SchemaError(f"{what} multiplicity must be a positive integer")
        merged[str(lab)] = merged.get(str(lab), 0) + m
    return tuple(sorted(merged.items(), key=lambda t: (-t[1], t[0])))


def semisimple(
    order: Union[int, None] = None,
    ones: int = 0,
    minus_ones: int = 0,
    pairs: Iterable = (),
    free: Iterable = (),
    relations: Union[Mapping[str, str], Iterable, None] = None,
    variant: str = "unspecified",
) -> ClassDescriptor:
    if isinstance(relations, Mapping):
        rels = tuple(sorted(relations.items()))
    else:
        rels = tuple(sorted(tuple(t) for t in (relations or ())))
    pat = EigenPattern(
        mult_one=ones,
        mult_minus_one=minus_ones,
        pairs=_norm_labelled(pairs, "pair"),
        free=_norm_labelled(free, "free eigenvalue"),
        relations=rels,
        variant=variant,
    )
    return ClassDescriptor(kind="semisimple", order=order, eigen=pat)


def _norm_decoration(decoration) -> Optional[tuple]:
    if decoration is None:
        return None
    merged: dict[tuple, int] = {}
    for item in decoration:
        if isinstance(item, Mapping):
            mult = int(item.get("mult", 1))
            if "V" in item:
                kind, size = "V", int(item["V"])
            elif "W" in item:
                kind, size = "W", int(item["W"])
            else:
                raise SchemaError(f"bad decoration record {item!r}")
        else:
            kind, size, mult = item
        if kind not in ("V", "W") or size < 1 or mult < 1:
            raise SchemaError(f"bad decoration record {item!r}")
        if kind == "V" and size % 2:
            raise SchemaError("V summands have even dimension")
        merged[(kind, size)] = merged.get((kind, size), 0) + mult
    return tuple(
        (k, s, m) for (k, s), m in sorted(merged.items(), key=lambda t: (t[0][0], -t[0][1]))
    )


def unipotent(
    partition: Optional[Sequence[int]] = None,
    order: Union[int, str, None] = None,
    decoration=None,
) -> ClassDescriptor:
    dec = _norm_decoration(decoration)
    parts: tuple[int, ...]
    if dec is not None:
        derived = []
        for kind, size, mult in dec:
            if kind == "V":
                derived.extend([size] * mult)
            else:
                derived.extend([size] * (2 * mult))
        parts = tuple(sorted(derived, reverse=True))
        if partition is not None and tuple(sorted(partition, reverse=True)) != parts:
            raise DimensionMismatch("partition inconsistent with decoration")
    elif partition is not None:
        parts = tuple(sorted((int(a) for a in partition), reverse=True))
        if any(a < 1 for a in parts):
            raise SchemaError("partition parts must be positive")
    else:
        raise SchemaError("unipotent class needs a partition or a decoration")
    return ClassDescriptor(
        kind="unipotent", order=order, unip=UnipotentData(partition=parts, decoration=dec)
    )


def _derive_as_type(dec: tuple, partition: tuple) -> str:
    if not partition or max(partition) > 2:
        return "none"
    v2 = sum(mult for kind, size, mult in dec if kind == "V" and size == 2)
    return {0: "a", 1: "b", 2: "c"}[v2]


def _validate_semisimple(group: GroupSpec, cls: ClassDescriptor) -> ClassDescriptor:
    pat = cls.eigen
    n = group.n
    if pat.mult_one < 0 or pat.mult_minus_one < 0:
        raise SchemaError("negative multiplicity")
    if pat.total() != n:
        raise DimensionMismatch(f"eigenvalue multiplicities sum to {pat.total()}, expected {n}")
    if group.p == 2 and pat.mult_minus_one:
        raise ParityViolation("no -1 eigenvalue in characteristic 2")
    labels = [lab for lab, _ in pat.pairs] + [lab for lab, _ in pat.free]
    if len(set(labels)) != len(labels):
        raise SchemaError("labels must be pairwise distinct")
    known = set(labels)
    for lab, tag in pat.relations:
        if lab not in known:
            raise SchemaError(f"relation on unknown label {lab!r}")
        if not (tag == REL_SQUARE_MINUS_ONE or tag.startswith("order:")):
            raise SchemaError(f"unknown relation tag {tag!r}")
    if group.family in ("Sp", "SO", "Spin8"):
        if pat.free:
            raise ParityViolation("eigenvalues must come in inverse pairs for Sp/SO")
        a, b = pat.mult_one, pat.mult_minus_one
        if group.family == "Sp" or n % 2 == 0:
            if a % 2 or b % 2:
                raise ParityViolation("+-1 eigenspaces must be even-dimensional")
        else:
            if a % 2 == 0 or b % 2:
                raise ParityViolation(
                    "odd orthogonal: 1-eigenspace odd, -1-eigenspace even"
                )
    # central iff a single eigenvalue carries everything
    if pat.mult_one == n or pat.mult_minus_one == n or any(m == n for _, m in pat.free):
        raise CentralClass("scalar eigenvalue pattern")
    # light order compatibility checks
    r = cls.order
    if r is not None:
        if not isinstance(r, int) or not is_prime(r):
            raise OrderViolation(f"semisimple order must be a prime, got {r!r}")
        if r == group.p:
            raise OrderViolation("semisimple class cannot have order p")
        for lab, tag in pat.relations:
            if tag == REL_SQUARE_MINUS_ONE:
                if group.p == 2:
                    raise OrderViolation("square_is_minus_one is vacuous at p = 2")
                if r != 2:
                    raise OrderViolation("square_is_minus_one forces order 2 mod center")
            else:
                k = int(tag.split(":", 1)[1])
                if k < 3:
                    raise OrderViolation("label order tag must be >= 3 (labels are != +-1)")
                if k not in (r, 2 * r):
                    raise OrderViolation(
                        f"label order {k} incompatible with class order {r} mod center"
                    )
    rels = tuple(sorted((lab, tag) for lab, tag in pat.relations))
    pat = replace(pat, relations=rels)
    return replace(cls, eigen=pat)


def _check_admissible_partition(group: GroupSpec, partition: tuple) -> None:
    fam = group.family
    if fam == "SL":
        return
    from collections import Counter

    counts = Counter(partition)
    if fam == "Sp":
        bad = [a for a, c in counts.items() if a % 2 == 1 and c % 2 == 1]
        if bad:
            raise ParityViolation(f"odd parts {bad} need even multiplicity in Sp")
    else:
        bad = [a for a, c in counts.items() if a % 2 == 0 and c % 2 == 1]
        if bad:
            raise ParityViolation(f"even parts {bad} need even multiplicity in SO")


def _validate_unipotent(group: GroupSpec, cls: ClassDescriptor) -> ClassDescriptor:
    data = cls.unip
    n = group.n
    if sum(data.partition) != n:
        raise DimensionMismatch(f"partition sums to {sum(data.partition)}, expected {n}")
    if all(a == 1 for a in data.partition):
        raise CentralClass("trivial partition")
    order = cls.order
    if group.p == 0:
        if data.decoration is not None:
            raise ParityViolation("decorations only exist in characteristic 2")
        if order is None:
            order = UNIPOTENT_CHAR_0
        elif order != UNIPOTENT_CHAR_0:
            raise OrderViolation("characteristic-0 unipotent classes use the symbolic order")
        _check_admissible_partition(group, data.partition)
    elif group.p == 2 and group.family in ("Sp", "SO", "Spin8"):
        if data.decoration is None:
            raise ParityViolation("characteristic-2 Sp/SO classes need a V/W decoration")
        for kind, size, mult in data.decoration:
            if kind == "V" and mult > 2:
                raise ParityViolation("V summands have multiplicity at most 2")
        if group.is_orthogonal:
            v_total = sum(m for k, _, m in data.decoration if k == "V")
            if v_total % 2:
                raise ParityViolation("SO needs an even number of V summands")
        if order is None and max(data.partition) <= 2:
            order = 2
        if order is not None:
            if order != group.p:
                raise OrderViolation("unipotent classes have order p")
            if max(data.partition) > 2:
                raise OrderViolation("parts exceed p = 2 for an order-2 class")
    else:
        if data.decoration is not None:
            raise ParityViolation("decorations only apply to Sp/SO in characteristic 2")
        _check_admissible_partition(group, data.partition)
        if order is None and max(data.partition) <= group.p:
            order = group.p
        if order is not None:
            if order != group.p:
                raise OrderViolation("unipotent classes have order p")
            if max(data.partition) > group.p:
                raise OrderViolation(f"parts exceed p = {group.p} for a prime-order class")
    as_type = "none"
    if data.decoration is not None:
        as_type = _derive_as_type(data.decoration, data.partition)
    return replace(cls, order=order, unip=replace(data, as_type=as_type))


def validate_class(group: GroupSpec, raw: ClassDescriptor) -> ClassDescriptor:
    """Canonicalize and check a descriptor against a group; raises on failure."""
    target = group.class_group()
    if raw.kind == "semisimple":
        if raw.eigen is None:
            raise SchemaError("semisimple descriptor without a pattern")
        return _validate_semisimple(target, raw)
    if raw.kind == "unipotent":
        if raw.unip is None:
            raise SchemaError("unipotent descriptor without a partition")
        return _validate_unipotent(target, raw)
    raise SchemaError(f"unknown class kind {raw.kind!r}")


_DIM_RANK = {
    "SL": lambda n: (n * n - 1, n - 1),
    "Sp": lambda n: (n * (n + 1) // 2, n // 2),
    "SO": lambda n: (n * (n - 1) // 2, n // 2),
    "Spin8": lambda n: (28, 4),
}


def dim_and_rank(group: GroupSpec) -> tuple[int, int]:
    return _DIM_RANK[group.family](group.n)

"""Degeneration (closure) order on unipotent classes.

Odd characteristic: dominance order restricted to admissible partitions.
Characteristic 2: an explicit rewriting engine over V/W decompositions,
sound but possibly incomplete (documented); dominance is used among the
W-summands, two local rules trade V-summands.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator

from .algebra_core import ClassDescriptor, GroupSpec, unipotent, validate_class
from .errors import MixedKinds, NoSuchClass, NotApplicable, SizeMismatch


def dominates(pi1: Iterable[int], pi2: Iterable[int]) -> bool:
    a = sorted(pi1, reverse=True)
    b = sorted(pi2, reverse=True)
    if sum(a) != sum(b):
        raise SizeMismatch("partitions of different sizes")
    sa = sb = 0
    for i in range(max(len(a), len(b))):
        sa += a[i] if i < len(a) else 0
        sb += b[i] if i < len(b) else 0
        if sa < sb:
            return False
    return True


def _partitions(n: int, cap: int | None = None) -> Iterator[tuple]:
    cap = cap or n
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _dec_state(cls: ClassDescriptor) -> tuple:
    """(sorted V sizes, sorted W sizes) with multiplicity."""
    vs: list[int] = []
    ws: list[int] = []
    for kind, size, mult in cls.unip.decoration:
        (vs if kind == "V" else ws).extend([size] * mult)
    return tuple(sorted(vs, reverse=True)), tuple(sorted(ws, reverse=True))


def _state_valid(group: GroupSpec, vs: tuple, ws: tuple) -> bool:
    if any(Counter(vs)[s] > 2 for s in set(vs)):
        return False
    if group.is_orthogonal and len(vs) % 2:
        return False
    return True


def _char2_successors(group: GroupSpec, state: tuple) -> Iterator[tuple]:
    vs, ws = state
    vlist = list(vs)
    # rule: a pair of V summands (a phantom V(0) is allowed as the second)
    # shifts weight (V(2m1), V(2m2)) -> (V(2m1-2), V(2m2+2)) for m1 > m2
    choices = set()
    for i in range(len(vlist)):
        for j in range(len(vlist)):
            if i != j and vlist[i] > vlist[j]:
                choices.add((vlist[i], vlist[j]))
        if vlist[i] > 2:
            choices.add((vlist[i], 0))
    for big, small in choices:
        rest = list(vlist)
        rest.remove(big)
        if small:
            rest.remove(small)
        new = [x for x in rest + [big - 2, small + 2] if x > 0]
        cand = (tuple(sorted(new, reverse=True)), ws)
        if _state_valid(group, *cand):
            yield cand
    # rule: V(2m1) + V(2m2) -> W(m1 + m2)
    for i in range(len(vlist)):
        for j in range(i + 1, len(vlist)):
            rest = [x for k, x in enumerate(vlist) if k not in (i, j)]
            new_w = tuple(sorted(list(ws) + [(vlist[i] + vlist[j]) // 2], reverse=True))
            cand = (tuple(sorted(rest, reverse=True)), new_w)
            if _state_valid(group, *cand):
                yield cand
    # rule: dominance among the W summands, V summands carried along
    total = sum(ws)
    for pi in _partitions(total):
        if pi != ws and dominates(ws, pi):
            cand = (vs, pi)
            if _state_valid(group, *cand):
                yield cand


def in_closure(group: GroupSpec, upper: ClassDescriptor, lower: ClassDescriptor) -> bool:
    if upper.kind != "unipotent" or lower.kind != "unipotent":
        raise MixedKinds("closure order is defined on unipotent classes")
    target = group.class_group()
    if target.p != 2 or target.family == "SL":
        return dominates(upper.unip.partition, lower.unip.partition)
    start = _dec_state(upper)
    goal = _dec_state(lower)
    if sum(start[0]) + 2 * sum(start[1]) != sum(goal[0]) + 2 * sum(goal[1]):
        raise SizeMismatch("classes live in different dimensions")
    seen = {start}
    frontier = [start]
    while frontier:
        if goal in seen:
            return True
        nxt = []
        for state in frontier:
            for cand in _char2_successors(target, state):
                if cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return goal in seen


def _near_equal_partition(n: int, m: int) -> tuple:
    q, s = divmod(n, m)
    return (q + 1,) * s + (q,) * (m - s)


def _admissible(group: GroupSpec, partition: tuple) -> bool:
    counts = Counter(partition)
    if group.family == "Sp":
        return all(c % 2 == 0 for a, c in counts.items() if a % 2)
    if group.is_orthogonal:
        return all(c % 2 == 0 for a, c in counts.items() if a % 2 == 0)
    return True


def smallest_class_with_blocks(group: GroupSpec, m: int) -> ClassDescriptor:
    target = group.class_group()
    n = target.n
    if not 1 <= m < n:
        raise NoSuchClass(f"no noncentral class with {m} blocks in dimension {n}")
    if target.family == "SL" or target.p != 2:
        if target.is_orthogonal and (n - m) % 2:
            raise NoSuchClass("block count must match n mod 2 for SO")
        pi = _near_equal_partition(n, m)
        assert _admissible(target, pi), pi
        # uniqueness check: the returned class is dominance-below every
        # admissible class with m blocks
        for other in _partitions(n):
            if len(other) == m and _admissible(target, other):
                assert dominates(other, pi), (other, pi)
        return validate_class(target, unipotent(partition=pi))
    # characteristic 2, Sp/SO: the unique smallest class exists for m even
    # and is the all-W class with near-equal W parts
    if m % 2:
        raise NoSuchClass("no unique smallest class with an odd block count at p = 2")
    half = _near_equal_partition(n // 2, m // 2)
    dec = [("W", size, count) for size, count in Counter(half).items()]
    return validate_class(target, unipotent(decoration=dec))


def splits_in_G(group: GroupSpec, cls: ClassDescriptor) -> bool:
    target = group.class_group()
    if not target.is_orthogonal:
        raise NotApplicable("class splitting concerns orthogonal groups")
    if cls.kind == "semisimple":
        return cls.eigen.mult_one == 0 and cls.eigen.mult_minus_one == 0
    if target.p == 2:
        dec = cls.unip.decoration
        return all(kind == "W" and size % 2 == 0 for kind, size, _ in dec)
    return all(a % 2 == 0 for a in cls.unip.partition)


def enumerate_unipotent_partitions(group: GroupSpec, max_part: int | None = None):
    """All admissible noncentral unipotent partitions (odd characteristic)."""
    target = group.class_group()
    cap = max_part or target.n
    out = []
    for pi in _partitions(target.n, cap):
        if max(pi) > 1 and _admissible(target, pi):
            out.append(pi)
    return out


def closure_poset_dot(group: GroupSpec) -> str:
    """DOT rendering of the closure order on prime-order unipotent classes."""
    from .stabilizers import enumerate_class_shapes

    shapes = enumerate_class_shapes(group, constraints={"kind": "unipotent"})

    def name(c):
        if c.unip.decoration:
            return "|".join(f"{k}{s}x{m}" for k, s, m in c.unip.decoration)
        return ",".join(map(str, c.unip.partition))

    lines = ["digraph closure {"]
    for c in shapes:
        lines.append(f'  "{name(c)}";')
    for a in shapes:
        for b in shapes:
            if a is b or not in_closure(group, a, b):
                continue
            # transitive reduction: skip if an intermediate class exists
            if any(
                c is not a
                and c is not b
                and in_closure(group, a, c)
                and in_closure(group, c, b)
                for c in shapes
            ):
                continue
            lines.append(f'  "{name(a)}" -> "{name(b)}";')
    lines.append("}")
    return "\n".join(lines)

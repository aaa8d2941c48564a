"""Exhaustive searches used as independent oracles for the CNF encodings.

Enumeration respects the converse coupling (choose one label per
{x, -x} orbit, symmetric atoms only on self-inverse sites) and then checks
forbidden triangles and needs directly, mirroring the formula semantics:
atom nonemptiness is deliberately not required here, exactly as in the
encodings.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator

from .algebra import AlgebraSpec, needs_of
from .repcheck import LabelingRep, PointLabeling


def _group_labelings(spec: AlgebraSpec, n: int) -> Iterator[tuple[int, ...]]:
    kc = spec.atom_count
    sym_atoms = [k for k in range(kc) if spec.is_symmetric_atom(k)]
    reps = [x for x in range(1, n) if x < (n - x) % n or x == (n - x) % n]
    choices = []
    for x in reps:
        if x == (n - x) % n:
            choices.append([(x, k) for k in sym_atoms])
        else:
            choices.append([(x, k) for k in range(kc)])
    for combo in product(*choices):
        label = [-1] * n
        for x, k in combo:
            label[x] = k
            label[(n - x) % n] = spec.conv(k)
        yield tuple(label)


def _group_label_ok(spec: AlgebraSpec, n: int, label: tuple[int, ...]) -> bool:
    fset = spec.forbidden
    for y in range(1, n):
        for z in range(1, n):
            s = (y + z) % n
            if s and (label[s], label[y], label[z]) in fset:
                return False
    needs = needs_of(spec)
    for x in range(1, n):
        got = {(label[y], label[(x - y) % n]) for y in range(1, n) if y != x}
        if not needs[label[x]] <= got:
            return False
    return True


def group_satisfiable(spec: AlgebraSpec, n: int) -> bool:
    """Does any converse-respecting labeling of Z/n avoid forbidden triangles
    and meet every need?  Exhaustive; intended for small n."""
    if n < 2:
        return False
    return any(_group_label_ok(spec, n, lab) for lab in _group_labelings(spec, n))


def group_solutions(spec: AlgebraSpec, n: int) -> list[LabelingRep]:
    return [
        LabelingRep(n=n, label=lab)
        for lab in _group_labelings(spec, n)
        if _group_label_ok(spec, n, lab)
    ]


def _point_labelings(spec: AlgebraSpec, n: int) -> Iterator[dict[tuple[int, int], int]]:
    kc = spec.atom_count
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for combo in product(range(kc), repeat=len(pairs)):
        label: dict[tuple[int, int], int] = {}
        for (i, j), k in zip(pairs, combo):
            label[(i, j)] = k
            label[(j, i)] = spec.conv(k)
        yield label


def _point_label_ok(spec: AlgebraSpec, n: int, label: dict) -> bool:
    fset = spec.forbidden
    for (u, v), c in label.items():
        for w in range(n):
            if w != u and w != v and (c, label[(u, w)], label[(w, v)]) in fset:
                return False
    needs = needs_of(spec)
    for (u, v), c in label.items():
        got = {(label[(u, w)], label[(w, v)]) for w in range(n) if w != u and w != v}
        if not needs[c] <= got:
            return False
    return True


def points_satisfiable(spec: AlgebraSpec, n: int) -> bool:
    if n < 2:
        return False
    return any(_point_label_ok(spec, n, lab) for lab in _point_labelings(spec, n))


def point_solutions(spec: AlgebraSpec, n: int) -> list[PointLabeling]:
    return [
        PointLabeling(n=n, label=dict(lab))
        for lab in _point_labelings(spec, n)
        if _point_label_ok(spec, n, lab)
    ]

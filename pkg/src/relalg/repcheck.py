"""Exact verification of candidate representations.

Two candidate shapes are checked against an AlgebraSpec: labelings of the
nonzero elements of Z/n by diversity atoms (edge u -> v carries the label of
v - u), and coset-union groupings over a prime-field partition.  Checks are
exact; a report either certifies validity or lists witnesses per failure
category, capped at WITNESS_CAP with full counts alongside.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .algebra import AlgebraSpec, Triple, needs_of
from .comer import CosetPartition, CycleTable, converse_index, coset_partition, cycle_table

WITNESS_CAP = 10


def _atom_alias(name: str) -> str:
    return name.replace("'", "_conv")


@dataclass(frozen=True)
class LabelingRep:
    """Total atom labeling of Z/n \\ {0}; label[0] is a -1 sentinel."""

    n: int
    label: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("modulus must be at least 2")
        if len(self.label) != self.n:
            raise ValueError(f"label array must have length {self.n}")
        if any(self.label[x] < 0 for x in range(1, self.n)):
            raise ValueError("partial labeling: every nonzero residue needs an atom")


@dataclass(frozen=True)
class GroupingRep:
    """Atom assignment to each coset of a partition of F_p^x."""

    part: CosetPartition
    group: tuple[int, ...]

    def __post_init__(self):
        if len(self.group) != self.part.m:
            raise ValueError(f"grouping must assign all {self.part.m} cosets")
        if any(g < 0 for g in self.group):
            raise ValueError("partial grouping")


@dataclass(frozen=True)
class PointLabeling:
    """Atom labeling of every directed edge of a complete graph on n points."""

    n: int
    label: dict[tuple[int, int], int]

    def __post_init__(self):
        expected = {(i, j) for i in range(self.n) for j in range(self.n) if i != j}
        if set(self.label) != expected:
            raise ValueError("point labeling must cover every directed edge exactly")


def _capped(items: list) -> list:
    return sorted(items)[:WITNESS_CAP]


@dataclass
class VerifyReport:
    valid: bool
    converse_violations: list = field(default_factory=list)
    forbidden_hits: list = field(default_factory=list)
    unmet_needs: list = field(default_factory=list)
    empty_atoms: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    incoherences: list = field(default_factory=list)

    @classmethod
    def from_witnesses(cls, converse, forbidden, needs, empty, incoherences=()):
        counts = {
            "converse_violations": len(converse),
            "forbidden_hits": len(forbidden),
            "unmet_needs": len(needs),
            "empty_atoms": len(empty),
        }
        return cls(
            valid=not (converse or forbidden or needs or empty),
            converse_violations=_capped(converse),
            forbidden_hits=_capped(forbidden),
            unmet_needs=_capped(needs),
            empty_atoms=_capped(empty),
            counts=counts,
            incoherences=_capped(list(incoherences)),
        )

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "converse_violations": [list(w) for w in self.converse_violations],
            "forbidden_hits": [list(w) for w in self.forbidden_hits],
            "unmet_needs": [list(w) for w in self.unmet_needs],
            "empty_atoms": list(self.empty_atoms),
            "incoherences": [list(w) for w in self.incoherences],
            "counts": self.counts,
        }


def verify_labeling(spec: AlgebraSpec, rep: LabelingRep) -> VerifyReport:
    """Check converse pairing, atom nonemptiness, forbidden triangles, needs.

    Differences from 0 suffice: the construction is translation invariant,
    so the triangle on (u, v, w) looks like the one on (0, v-u, w-u).
    """
    n, label = rep.n, rep.label
    k_count = spec.atom_count
    if any(label[x] >= k_count for x in range(1, n)):
        raise ValueError("label uses an atom index outside the algebra")

    converse = []
    for x in range(1, n):
        want = spec.conv(label[x])
        if label[n - x] != want:
            converse.append((x, label[x], n - x, label[n - x]))

    present_atoms = set(label[1:])
    empty = [k for k in range(k_count) if k not in present_atoms]

    forbidden = []
    fset = spec.forbidden
    for y in range(1, n):
        ly = label[y]
        for z in range(1, n):
            s = (y + z) % n
            if s == 0:
                continue
            t = (label[s], ly, label[z])
            if t in fset:
                forbidden.append((y, z, s) + t)

    needs = needs_of(spec)
    unmet = []
    for x in range(1, n):
        got = {(label[y], label[(x - y) % n]) for y in range(1, n) if y != x}
        for c1, c2 in needs[label[x]] - got:
            unmet.append((x, c1, c2))

    return VerifyReport.from_witnesses(converse, forbidden, unmet, empty)


@dataclass
class InducedResult:
    forbidden: frozenset[Triple]
    mandatory: frozenset[Triple]
    coherent: bool
    incoherences: list  # (x, y, z, covered_coset, uncovered_coset)


def induced_triples(rep: GroupingRep, table: CycleTable | None = None) -> InducedResult:
    """Forbidden-triple set of the grouped cosets, plus a coherence check.

    Triple (x, y, z) is mandatory when every coset of rho(x) lies inside
    X_i + X_j for some i in rho(y), j in rho(z); forbidden when no coset
    does.  A mix means the grouping is not a subalgebra: composition of the
    grouped relations would cut an atom in half.
    """
    part = rep.part
    if table is None:
        table = cycle_table(part)
    k_count = max(rep.group) + 1
    members: list[list[int]] = [[] for _ in range(k_count)]
    for i, atom in enumerate(rep.group):
        members[atom].append(i)

    forbidden: set[Triple] = set()
    mandatory: set[Triple] = set()
    incoherences = []
    for x, y, z in product(range(k_count), repeat=3):
        covered_one = uncovered_one = None
        for k in members[x]:
            if any(table.contains(i, j, k) for i in members[y] for j in members[z]):
                covered_one = k
            else:
                uncovered_one = k
            if covered_one is not None and uncovered_one is not None:
                break
        if uncovered_one is None:
            mandatory.add((x, y, z))
        elif covered_one is None:
            forbidden.add((x, y, z))
        else:
            incoherences.append((x, y, z, covered_one, uncovered_one))
    return InducedResult(
        forbidden=frozenset(forbidden),
        mandatory=frozenset(mandatory),
        coherent=not incoherences,
        incoherences=incoherences,
    )


def verify_grouping(spec: AlgebraSpec, rep: GroupingRep) -> VerifyReport:
    """Grouping is valid iff converse-compatible, coherent, and the induced
    forbidden set equals the algebra's exactly."""
    part = rep.part
    k_count = spec.atom_count
    if any(g >= k_count for g in rep.group):
        raise ValueError("grouping uses an atom index outside the algebra")

    converse = []
    for i in range(part.m):
        j = converse_index(part, i)
        want = spec.conv(rep.group[i])
        if rep.group[j] != want:
            converse.append((i, rep.group[i], j, rep.group[j]))

    used = set(rep.group)
    empty = [k for k in range(k_count) if k not in used]

    induced = induced_triples(rep)
    forbidden_hits = sorted(t for t in spec.forbidden if t not in induced.forbidden)
    unmet = sorted(
        t
        for t in product(range(k_count), repeat=3)
        if t not in spec.forbidden and t not in induced.mandatory
    )
    return VerifyReport.from_witnesses(
        converse, forbidden_hits, unmet, empty, induced.incoherences
    )


def grouping_to_labeling(rep: GroupingRep) -> LabelingRep:
    """Expand cosets to element labels over Z/p."""
    part = rep.part
    label = [-1] * part.p
    for u in range(1, part.p):
        label[u] = rep.group[part.coset_index[u]]
    return LabelingRep(n=part.p, label=tuple(label))


def scale_labeling(rep: LabelingRep, u: int) -> LabelingRep:
    """Relabel x -> label(u*x); an automorphism of Z/n when gcd(u, n) = 1."""
    import math

    if math.gcd(u, rep.n) != 1:
        raise ValueError(f"{u} is not a unit mod {rep.n}")
    label = [-1] * rep.n
    for x in range(1, rep.n):
        label[x] = rep.label[u * x % rep.n]
    return LabelingRep(n=rep.n, label=tuple(label))


def verify_points(
    spec: AlgebraSpec, pl: PointLabeling, require_nonempty: bool = False
) -> VerifyReport:
    """Point-graph mirror of verify_labeling: converse, triangles, needs."""
    n, label = pl.n, pl.label
    k_count = spec.atom_count

    converse = []
    for (i, j), c in label.items():
        if label[(j, i)] != spec.conv(c):
            converse.append((i, j, c, label[(j, i)]))

    empty = []
    if require_nonempty:
        used = set(label.values())
        empty = [k for k in range(k_count) if k not in used]

    forbidden = []
    fset = spec.forbidden
    for (u, v), c in label.items():
        for w in range(n):
            if w == u or w == v:
                continue
            t = (c, label[(u, w)], label[(w, v)])
            if t in fset:
                forbidden.append((u, v, w) + t)

    needs = needs_of(spec)
    unmet = []
    for (u, v), c in label.items():
        got = {(label[(u, w)], label[(w, v)]) for w in range(n) if w != u and w != v}
        for c1, c2 in needs[c] - got:
            unmet.append((u, v, c1, c2))

    return VerifyReport.from_witnesses(converse, forbidden, unmet, empty)


# --- JSON fixture formats ----------------------------------------------------


def _render_json(value, indent: int = 0) -> str:
    """json.dumps with dicts broken across lines but arrays kept inline."""
    if isinstance(value, dict):
        pad = " " * (indent + 1)
        items = ",\n".join(
            f"{pad}{json.dumps(key)}: {_render_json(val, indent + 1)}"
            for key, val in sorted(value.items())
        )
        return "{\n" + items + "\n" + " " * indent + "}"
    return json.dumps(value)


def _atom_lookup(spec: AlgebraSpec) -> dict[str, int]:
    lookup = {}
    for i, atom in enumerate(spec.atoms):
        lookup[atom.name] = i
        lookup[_atom_alias(atom.name)] = i
    return lookup


def labeling_to_json(spec: AlgebraSpec, rep: LabelingRep) -> str:
    atoms: dict[str, list[int]] = {_atom_alias(a.name): [] for a in spec.atoms}
    for x in range(1, rep.n):
        atoms[_atom_alias(spec.atoms[rep.label[x]].name)].append(x)
    return _render_json({"modulus": rep.n, "atoms": atoms})


def labeling_from_json(spec: AlgebraSpec, text: str) -> LabelingRep:
    data = json.loads(text)
    n = int(data["modulus"])
    lookup = _atom_lookup(spec)
    label = [-1] * n
    for name, elements in data["atoms"].items():
        if name not in lookup:
            raise ValueError(f"unknown atom {name!r} for algebra {spec.name!r}")
        for x in elements:
            x = int(x)
            if not 1 <= x < n:
                raise ValueError(f"element {x} outside 1..{n - 1}")
            if label[x] != -1:
                raise ValueError(f"element {x} labeled twice")
            label[x] = lookup[name]
    return LabelingRep(n=n, label=tuple(label))


def grouping_to_json(spec: AlgebraSpec, rep: GroupingRep) -> str:
    groups: dict[str, list[int]] = {_atom_alias(a.name): [] for a in spec.atoms}
    for i, atom in enumerate(rep.group):
        groups[_atom_alias(spec.atoms[atom].name)].append(i)
    return _render_json({"p": rep.part.p, "m": rep.part.m, "groups": groups})


def grouping_from_json(spec: AlgebraSpec, text: str) -> GroupingRep:
    data = json.loads(text)
    part = coset_partition(int(data["p"]), int(data["m"]))
    lookup = _atom_lookup(spec)
    group = [-1] * part.m
    for name, cosets in data["groups"].items():
        if name not in lookup:
            raise ValueError(f"unknown atom {name!r} for algebra {spec.name!r}")
        for i in cosets:
            i = int(i)
            if not 0 <= i < part.m:
                raise ValueError(f"coset index {i} outside 0..{part.m - 1}")
            if group[i] != -1:
                raise ValueError(f"coset {i} grouped twice")
            group[i] = lookup[name]
    return GroupingRep(part=part, group=tuple(group))


def points_to_json(spec: AlgebraSpec, pl: PointLabeling) -> str:
    atoms: dict[str, list[list[int]]] = {_atom_alias(a.name): [] for a in spec.atoms}
    for (i, j), c in sorted(pl.label.items()):
        atoms[_atom_alias(spec.atoms[c].name)].append([i, j])
    return _render_json({"points": pl.n, "atoms": atoms})


def points_from_json(spec: AlgebraSpec, text: str) -> PointLabeling:
    data = json.loads(text)
    n = int(data["points"])
    lookup = _atom_lookup(spec)
    label: dict[tuple[int, int], int] = {}
    for name, edges in data["atoms"].items():
        if name not in lookup:
            raise ValueError(f"unknown atom {name!r} for algebra {spec.name!r}")
        for i, j in edges:
            label[(int(i), int(j))] = lookup[name]
    return PointLabeling(n=n, label=label)


def parse_rep_json(spec: AlgebraSpec, text: str):
    """Dispatch on the JSON shape: labeling, grouping, or point labeling."""
    data = json.loads(text)
    if "modulus" in data:
        return labeling_from_json(spec, text)
    if "groups" in data:
        return grouping_from_json(spec, text)
    if "points" in data:
        return points_from_json(spec, text)
    raise ValueError("unrecognized representation JSON: expected modulus, groups, or points")

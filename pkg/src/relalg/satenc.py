"""CNF encodings of representability questions, DIMACS emission, decoding.

Two encodings share the clause scheme Phi0-Phi3 (exactly-one per site,
converse coupling, needs met, forbidden triangles excluded):

* group mode labels the nonzero elements of Z/n, var(x, k) = (x-1)*K + k + 1;
* point mode labels the directed edges of a complete graph on n points,
  ordered pairs enumerated lexicographically, var(i, j, k) = rank*K + k + 1.

Need witnesses are materialized through auxiliary AND-definition variables
(three clauses each) numbered after all primary variables, keeping the
primary numbering canonical and clause growth linear per need.  Exactly-one
is the pairwise encoding: each site contributes 1 + K(K-1)/2 clauses, so
group mode emits (n-1) * (1 + K(K-1)/2) of them; the builders track clause
counts per constraint family in ``section_counts``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import combinations

from .algebra import AlgebraSpec, catalog_get, needs_of
from .repcheck import LabelingRep, PointLabeling


class EncodingError(ValueError):
    pass


class DecodeError(ValueError):
    pass


REJECT_SMALL = "no representation: diversity atoms must be nonempty"


@dataclass
class CnfFormula:
    var_count: int
    clauses: list[list[int]]
    decode: dict[int, tuple] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)
    section_counts: dict[str, int] = field(default_factory=dict)

    def sha256(self) -> str:
        return hashlib.sha256(emit_dimacs(self).encode("utf-8")).hexdigest()


class _Builder:
    def __init__(self, primary_count: int):
        self.var_count = primary_count
        self.clauses: list[list[int]] = []
        self.section_counts: dict[str, int] = {}
        self._section = ""

    def section(self, name: str) -> None:
        self._section = name
        self.section_counts.setdefault(name, 0)

    def add(self, clause: list[int]) -> None:
        self.clauses.append(clause)
        self.section_counts[self._section] = self.section_counts.get(self._section, 0) + 1

    def new_var(self) -> int:
        self.var_count += 1
        return self.var_count

    def define_and(self, a: int, b: int) -> int:
        """Fresh w with w <-> (a and b)."""
        w = self.new_var()
        if a == b:
            self.add([-w, a])
            self.add([w, -a])
        else:
            self.add([-w, a])
            self.add([-w, b])
            self.add([w, -a, -b])
        return w

    def exactly_one(self, lits: list[int]) -> None:
        self.add(list(lits))
        for a, b in combinations(lits, 2):
            self.add([-a, -b])


def _need_pair_union(spec: AlgebraSpec) -> list[tuple[int, int]]:
    needs = needs_of(spec)
    union = set()
    for k in range(spec.atom_count):
        union |= needs[k]
    return sorted(union)


def encode_group(
    spec: AlgebraSpec, n: int, nonempty_atoms: bool = False
) -> CnfFormula:
    """Labelings of Z/n \\ {0} that would represent the algebra."""
    if n < 2:
        raise EncodingError(REJECT_SMALL)
    kc = spec.atom_count
    needs = needs_of(spec)
    pair_union = _need_pair_union(spec)

    def var(x: int, k: int) -> int:
        return (x - 1) * kc + k + 1

    b = _Builder(primary_count=(n - 1) * kc)

    b.section("exactly_one")
    for x in range(1, n):
        b.exactly_one([var(x, k) for k in range(kc)])

    b.section("converse")
    for x in range(1, n):
        for k in range(kc):
            src, dst = var(x, k), var(n - x, spec.conv(k))
            if src != dst:
                b.add([-src, dst])

    b.section("needs_aux")
    witness: dict[tuple[int, int, int], list[int]] = {}
    for x in range(1, n):
        for c1, c2 in pair_union:
            ws = []
            for y in range(1, n):
                if y == x:
                    continue
                z = (x - y) % n
                ws.append(b.define_and(var(y, c1), var(z, c2)))
            witness[(x, c1, c2)] = ws

    b.section("needs")
    for x in range(1, n):
        for k in range(kc):
            for c1, c2 in sorted(needs[k]):
                b.add([-var(x, k)] + witness[(x, c1, c2)])

    b.section("forbidden")
    for y in range(1, n):
        for z in range(1, n):
            s = (y + z) % n
            if s == 0:
                continue
            for cx, cy, cz in sorted(spec.forbidden):
                lits = [-var(y, cy), -var(z, cz), -var(s, cx)]
                dedup = list(dict.fromkeys(lits))
                b.add(dedup)

    if nonempty_atoms:
        b.section("nonempty")
        for k in range(kc):
            b.add([var(x, k) for x in range(1, n)])

    decode = {var(x, k): (x, k) for x in range(1, n) for k in range(kc)}
    return CnfFormula(
        var_count=b.var_count,
        clauses=b.clauses,
        decode=decode,
        meta={"algebra": spec.name, "mode": "group", "n": n, "numbering": "v1"},
        section_counts=b.section_counts,
    )


def _edge_ranks(n: int) -> dict[tuple[int, int], int]:
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    return {pair: rank for rank, pair in enumerate(pairs)}


def encode_points(
    spec: AlgebraSpec,
    n: int,
    symmetry_break: bool = False,
    fixed_edge_atom: int = 0,
    degree_bounds: bool = False,
    nonempty_atoms: bool = False,
) -> CnfFormula:
    """Labelings of the complete directed graph on n points."""
    if n < 2:
        raise EncodingError(REJECT_SMALL)
    kc = spec.atom_count
    needs = needs_of(spec)
    pair_union = _need_pair_union(spec)
    rank = _edge_ranks(n)

    def var(i: int, j: int, k: int) -> int:
        return rank[(i, j)] * kc + k + 1

    b = _Builder(primary_count=n * (n - 1) * kc)

    b.section("exactly_one")
    for (i, j) in sorted(rank, key=rank.get):
        b.exactly_one([var(i, j, k) for k in range(kc)])

    b.section("converse")
    for (i, j) in sorted(rank, key=rank.get):
        for k in range(kc):
            b.add([-var(i, j, k), var(j, i, spec.conv(k))])

    b.section("needs_aux")
    witness: dict[tuple[int, int, int, int], list[int]] = {}
    for (i, j) in sorted(rank, key=rank.get):
        for c1, c2 in pair_union:
            ws = []
            for k in range(n):
                if k == i or k == j:
                    continue
                ws.append(b.define_and(var(i, k, c1), var(k, j, c2)))
            witness[(i, j, c1, c2)] = ws

    b.section("needs")
    for (i, j) in sorted(rank, key=rank.get):
        for k in range(kc):
            for c1, c2 in sorted(needs[k]):
                b.add([-var(i, j, k)] + witness[(i, j, c1, c2)])

    b.section("forbidden")
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for c1, c2, c3 in sorted(spec.forbidden):
                    b.add([-var(i, j, c1), -var(i, k, c2), -var(k, j, c3)])

    if symmetry_break:
        b.section("symmetry_break")
        b.add([var(0, 1, fixed_edge_atom)])

    if degree_bounds:
        derivation = point_bound(spec)
        if derivation.bound is None:
            raise EncodingError(
                f"no degree bounds derived for algebra {spec.name!r}"
            )
        b.section("degree_bounds")
        for v in range(n):
            others = [u for u in range(n) if u != v]
            for atom, limit in sorted(derivation.degree_limits.items()):
                k = spec.atom_index(atom)
                _at_most_k(b, [var(v, u, k) for u in others], limit)

    if nonempty_atoms:
        b.section("nonempty")
        for k in range(kc):
            b.add([var(i, j, k) for (i, j) in sorted(rank, key=rank.get)])

    decode = {
        var(i, j, k): ((i, j), k) for (i, j) in rank for k in range(kc)
    }
    return CnfFormula(
        var_count=b.var_count,
        clauses=b.clauses,
        decode=decode,
        meta={"algebra": spec.name, "mode": "points", "n": n, "numbering": "v1"},
        section_counts=b.section_counts,
    )


def _at_most_k(b: _Builder, lits: list[int], k: int) -> None:
    """Sequential-counter cardinality constraint sum(lits) <= k."""
    n = len(lits)
    if k >= n:
        return
    if k == 0:
        for lit in lits:
            b.add([-lit])
        return
    s = [[b.new_var() for _ in range(k)] for _ in range(n - 1)]
    b.add([-lits[0], s[0][0]])
    for j in range(1, k):
        b.add([-s[0][j]])
    for i in range(1, n - 1):
        b.add([-lits[i], s[i][0]])
        b.add([-s[i - 1][0], s[i][0]])
        for j in range(1, k):
            b.add([-lits[i], -s[i - 1][j - 1], s[i][j]])
            b.add([-s[i - 1][j], s[i][j]])
        b.add([-lits[i], -s[i - 1][k - 1]])
    b.add([-lits[n - 1], -s[n - 2][k - 1]])


# --- DIMACS ------------------------------------------------------------------


def emit_dimacs(cnf: CnfFormula) -> str:
    """Byte-deterministic DIMACS text; metadata becomes comment lines."""
    lines = []
    meta = cnf.meta
    if meta:
        lines.append(
            "c algebra={algebra} mode={mode} n={n} numbering={numbering}".format(**meta)
        )
    lines.append(f"p cnf {cnf.var_count} {len(cnf.clauses)}")
    for clause in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines)


def write_dimacs(cnf: CnfFormula, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_dimacs(cnf))
        fh.write("\n")


# --- model decoding ----------------------------------------------------------


def decode_group_model(cnf: CnfFormula, model: frozenset[int]) -> LabelingRep:
    if cnf.meta.get("mode") != "group":
        raise DecodeError("formula was not built in group mode")
    n = cnf.meta["n"]
    label = [-1] * n
    for v, (x, k) in cnf.decode.items():
        if v in model:
            if label[x] != -1:
                raise DecodeError(f"element {x} labeled twice: exactly-one violated")
            label[x] = k
    if any(label[x] == -1 for x in range(1, n)):
        raise DecodeError("element left unlabeled: exactly-one violated")
    return LabelingRep(n=n, label=tuple(label))


def decode_points_model(cnf: CnfFormula, model: frozenset[int]) -> PointLabeling:
    if cnf.meta.get("mode") != "points":
        raise DecodeError("formula was not built in points mode")
    n = cnf.meta["n"]
    label: dict[tuple[int, int], int] = {}
    for v, (edge, k) in cnf.decode.items():
        if v in model:
            if edge in label:
                raise DecodeError(f"edge {edge} labeled twice: exactly-one violated")
            label[edge] = k
    return PointLabeling(n=n, label=label)


# --- degree bound derivation -------------------------------------------------

RAMSEY = {"R(3,3)": 6, "R(3,4)": 9, "R(3,3,4)": 30}


@dataclass
class BoundDerivation:
    algebra: str
    bound: int | None
    coarse_bound: int | None
    degree_limits: dict[str, int]
    constants: dict[str, int]
    steps: list[str]

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "bound": self.bound,
            "coarse_bound": self.coarse_bound,
            "degree_limits": self.degree_limits,
            "constants": self.constants,
            "steps": self.steps,
        }


def _matches_catalog(spec: AlgebraSpec, name: str) -> bool:
    ref = catalog_get(name)
    return (
        spec.atom_count == ref.atom_count
        and tuple(a.converse for a in spec.atoms) == tuple(a.converse for a in ref.atoms)
        and spec.forbidden == ref.forbidden
    )


def point_bound(spec: AlgebraSpec) -> BoundDerivation:
    """Vertex-degree point bound; derived only for the 1311_1316 shape.

    Any vertex: an a-neighborhood of size R(3,4) = 9 forces a monochromatic
    a- or b-triangle or a one-way r-clique on 4 points, all excluded, so the
    a-degree (and by the a/b symmetry the b-degree) is at most 8; an r-out
    neighborhood of size R(3,3) = 6 forces an excluded pattern the same way,
    so r-out and r-in degrees are at most 5.  Total degree <= 26 on any
    vertex caps representations at 27 points, sharpening the coarse
    R(3,3,4) - 1 = 29 cap.
    """
    if not _matches_catalog(spec, "1311_1316"):
        return BoundDerivation(
            algebra=spec.name,
            bound=None,
            coarse_bound=None,
            degree_limits={},
            constants=dict(RAMSEY),
            steps=["no bound derived"],
        )
    limits = {"a": 8, "b": 8, "r": 5, "r'": 5}
    steps = [
        f"directed K4 one-way cliques contain an excluded chain, so n < R(3,3,4) = {RAMSEY['R(3,3,4)']}",
        f"a-degree <= R(3,4) - 1 = {RAMSEY['R(3,4)'] - 1}",
        f"b-degree <= R(3,4) - 1 = {RAMSEY['R(3,4)'] - 1}",
        f"r-out-degree <= R(3,3) - 1 = {RAMSEY['R(3,3)'] - 1}",
        f"r-in-degree <= R(3,3) - 1 = {RAMSEY['R(3,3)'] - 1}",
        "total degree <= 5+5+8+8 = 26, hence n <= 27",
    ]
    return BoundDerivation(
        algebra=spec.name,
        bound=27,
        coarse_bound=29,
        degree_limits=limits,
        constants=dict(RAMSEY),
        steps=steps,
    )

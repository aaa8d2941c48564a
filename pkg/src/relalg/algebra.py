"""Finite integral relation algebras given by their forbidden diversity triples.

A triple (x, y, z) of diversity-atom indices asserts x . (y ; z) = 0, i.e. no
edge labeled x has a witness path labeled y then z.  The identity atom is
implicit and never stored; every triple not listed as forbidden is mandatory.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable

Triple = tuple[int, int, int]
Pair = tuple[int, int]


class UnknownAlgebraError(KeyError):
    pass


@dataclass(frozen=True)
class AtomSig:
    """A diversity atom: its display name and the index of its converse."""

    name: str
    converse: int


@dataclass(frozen=True)
class AlgebraSpec:
    name: str
    atoms: tuple[AtomSig, ...]
    forbidden: frozenset[Triple]

    @property
    def atom_count(self) -> int:
        return len(self.atoms)

    def conv(self, k: int) -> int:
        return self.atoms[k].converse

    def atom_index(self, name: str) -> int:
        for i, atom in enumerate(self.atoms):
            if atom.name == name:
                return i
        raise KeyError(f"algebra {self.name!r} has no atom named {name!r}")

    def is_symmetric_atom(self, k: int) -> bool:
        return self.atoms[k].converse == k


@dataclass(frozen=True)
class NeedsTable:
    """Per atom x, the pairs (y, z) with (x, y, z) mandatory."""

    needs: tuple[frozenset[Pair], ...]

    def __getitem__(self, atom: int) -> frozenset[Pair]:
        return self.needs[atom]

    def all_pairs(self) -> frozenset[Pair]:
        k = len(self.needs)
        return frozenset((y, z) for y in range(k) for z in range(k))


def peircean_transforms(triple: Triple, conv: Iterable[int]) -> set[Triple]:
    """The six readings of one labeled triangle."""
    conv = tuple(conv)
    x, y, z = triple
    xc, yc, zc = conv[x], conv[y], conv[z]
    return {
        (x, y, z),
        (xc, zc, yc),
        (y, x, zc),
        (yc, z, xc),
        (z, yc, x),
        (zc, xc, y),
    }


def peircean_closure(triples: Iterable[Triple], atoms: tuple[AtomSig, ...]) -> frozenset[Triple]:
    """Smallest superset closed under the six triangle readings."""
    conv = tuple(a.converse for a in atoms)
    n = len(atoms)
    closed: set[Triple] = set()
    pending = list(triples)
    for t in pending:
        if any(i < 0 or i >= n for i in t):
            raise IndexError(f"triple {t} out of range for {n} atoms")
    while pending:
        t = pending.pop()
        if t in closed:
            continue
        closed.add(t)
        pending.extend(peircean_transforms(t, conv) - closed)
    return frozenset(closed)


def needs_of(spec: AlgebraSpec) -> NeedsTable:
    k = spec.atom_count
    all_pairs = {(y, z) for y in range(k) for z in range(k)}
    excluded: list[set[Pair]] = [set() for _ in range(k)]
    for (x, y, z) in spec.forbidden:
        excluded[x].add((y, z))
    return NeedsTable(tuple(frozenset(all_pairs - excluded[x]) for x in range(k)))


@dataclass
class SpecReport:
    valid: bool
    problems: list[str] = field(default_factory=list)


def validate_spec(spec: AlgebraSpec) -> SpecReport:
    """Check converse involution, index ranges, and Peircean closure."""
    problems = []
    n = spec.atom_count
    for i, atom in enumerate(spec.atoms):
        if not 0 <= atom.converse < n:
            problems.append(f"atom {atom.name}: converse index {atom.converse} out of range")
    if not problems:
        for i, atom in enumerate(spec.atoms):
            if spec.atoms[atom.converse].converse != i:
                problems.append(f"converse not involutive at atom {atom.name}")
    bad_index = [t for t in spec.forbidden if any(not 0 <= c < n for c in t)]
    if bad_index:
        problems.append(f"forbidden triples out of range: {sorted(bad_index)}")
    elif not problems:
        closure = peircean_closure(spec.forbidden, spec.atoms)
        missing = closure - spec.forbidden
        if missing:
            problems.append(f"forbidden set not Peircean-closed, missing {sorted(missing)}")
    return SpecReport(valid=not problems, problems=problems)


def _symmetric_atoms(names: str | list[str]) -> tuple[AtomSig, ...]:
    if isinstance(names, str):
        names = names.split()
    return tuple(AtomSig(name, i) for i, name in enumerate(names))


def _split_atoms(sym_names: str) -> tuple[AtomSig, ...]:
    """Symmetric atoms followed by one converse pair r, r'."""
    sym = sym_names.split()
    k = len(sym)
    atoms = [AtomSig(name, i) for i, name in enumerate(sym)]
    atoms.append(AtomSig("r", k + 1))
    atoms.append(AtomSig("r'", k))
    return tuple(atoms)


def _all_triples_over(indices: tuple[int, ...]) -> frozenset[Triple]:
    return frozenset((x, y, z) for x in indices for y in indices for z in indices)


_COLOR_NAMES = "abcdefghijklmnopqrstuvwxyz"


def color_algebra(k: int) -> AlgebraSpec:
    """E(k): k symmetric colors, forbidden triples exactly the 1-cycles."""
    if k < 1:
        raise UnknownAlgebraError(f"E(k) needs k >= 1, got {k}")
    if k <= len(_COLOR_NAMES):
        names = list(_COLOR_NAMES[:k])
    else:
        names = [f"c{i}" for i in range(k)]
    return AlgebraSpec(
        name=f"E({k})",
        atoms=_symmetric_atoms(names),
        forbidden=frozenset((i, i, i) for i in range(k)),
    )


def _build_catalog() -> dict[str, AlgebraSpec]:
    catalog: dict[str, AlgebraSpec] = {}

    # Three atoms: a symmetric, r/r' a converse pair.
    a3 = _split_atoms("a")
    catalog["33_37"] = AlgebraSpec("33_37", a3, peircean_closure({(2, 1, 1)}, a3))
    catalog["31_37"] = AlgebraSpec("31_37", a3, _all_triples_over((1, 2)))

    # Three symmetric atoms.
    s3 = _symmetric_atoms("a b c")
    catalog["32_65"] = AlgebraSpec("32_65", s3, frozenset({(1, 1, 1), (2, 2, 2)}))

    # Four atoms: a, b symmetric, r/r' a converse pair.
    a4 = _split_atoms("a b")
    one_cycles = frozenset({(0, 0, 0), (1, 1, 1)})
    catalog["1306_1314"] = AlgebraSpec(
        "1306_1314", a4, frozenset({(1, 1, 1)}) | _all_triples_over((2, 3))
    )
    catalog["1308_1316"] = AlgebraSpec(
        "1308_1316", a4, one_cycles | peircean_closure({(3, 2, 2)}, a4)
    )
    catalog["1311_1316"] = AlgebraSpec(
        "1311_1316", a4, one_cycles | peircean_closure({(2, 2, 2)}, a4)
    )
    catalog["1314_1316"] = AlgebraSpec("1314_1316", a4, one_cycles)
    return catalog


_CATALOG = _build_catalog()
_COLOR_RE = re.compile(r"^E\((\d+)\)$")


def catalog_names() -> list[str]:
    return sorted(_CATALOG) + ["E(k)"]


def catalog_get(name: str) -> AlgebraSpec:
    m = _COLOR_RE.match(name.strip())
    if m:
        return color_algebra(int(m.group(1)))
    try:
        return _CATALOG[name.strip()]
    except KeyError:
        raise UnknownAlgebraError(
            f"unknown algebra {name!r}; known: {', '.join(catalog_names())}"
        ) from None


# --- serialization ----------------------------------------------------------
#
# Text form:  atoms: a b r r'; conv: a=a b=b r=r'; forbid: aaa bbb rrr
# The forbid words are generators; the stored set is their Peircean closure.
# JSON form carries the full closed forbidden set as index triples.


def _tokenize_cycle(word: str, names: list[str]) -> Triple:
    by_length = sorted(names, key=len, reverse=True)
    out: list[int] = []
    pos = 0
    while pos < len(word):
        for name in by_length:
            if word.startswith(name, pos):
                out.append(names.index(name))
                pos += len(name)
                break
        else:
            raise ValueError(f"cannot read atom name at {word[pos:]!r} in cycle {word!r}")
    if len(out) != 3:
        raise ValueError(f"cycle {word!r} does not name exactly three atoms")
    return (out[0], out[1], out[2])


def parse_algebra_text(text: str, name: str = "") -> AlgebraSpec:
    sections: dict[str, str] = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, _, rest = part.partition(":")
        sections[key.strip()] = rest.strip()
    for required in ("atoms", "conv", "forbid"):
        if required not in sections:
            raise ValueError(f"missing {required!r} section")
    names = sections["atoms"].split()
    if len(set(names)) != len(names):
        raise ValueError("duplicate atom names")
    conv = {n: n for n in names}
    for item in sections["conv"].split():
        left, _, right = item.partition("=")
        if left not in conv or right not in conv:
            raise ValueError(f"conv mentions unknown atom in {item!r}")
        conv[left] = right
        conv[right] = left
    atoms = tuple(AtomSig(n, names.index(conv[n])) for n in names)
    generators = [_tokenize_cycle(w, names) for w in sections["forbid"].split()]
    return AlgebraSpec(name=name, atoms=atoms, forbidden=peircean_closure(generators, atoms))


def format_algebra_text(spec: AlgebraSpec) -> str:
    names = [a.name for a in spec.atoms]
    conv_items = []
    for i, atom in enumerate(spec.atoms):
        if atom.converse >= i:
            conv_items.append(f"{atom.name}={spec.atoms[atom.converse].name}")
    # One generator per Peircean orbit, smallest triple first.
    remaining = set(spec.forbidden)
    generators = []
    while remaining:
        t = min(remaining)
        generators.append(t)
        remaining -= peircean_closure({t}, spec.atoms)
    words = ["".join(names[i] for i in t) for t in sorted(generators)]
    return (
        f"atoms: {' '.join(names)}; conv: {' '.join(conv_items)}; forbid: {' '.join(words)}"
    )


def parse_algebra_json(text: str, name: str = "") -> AlgebraSpec:
    data = json.loads(text)
    names = data["atoms"]
    converse = data["converse"]
    if len(converse) != len(names):
        raise ValueError("converse array length does not match atoms")
    atoms = tuple(AtomSig(n, int(c)) for n, c in zip(names, converse))
    forbidden = frozenset((int(x), int(y), int(z)) for x, y, z in data["forbidden"])
    return AlgebraSpec(name=data.get("name", name), atoms=atoms, forbidden=forbidden)


def format_algebra_json(spec: AlgebraSpec) -> str:
    payload = {
        "name": spec.name,
        "atoms": [a.name for a in spec.atoms],
        "converse": [a.converse for a in spec.atoms],
        "forbidden": [list(t) for t in sorted(spec.forbidden)],
    }
    return json.dumps(payload, sort_keys=True)


def parse_algebra(text: str, name: str = "") -> AlgebraSpec:
    """Accept either the text or the JSON form."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_algebra_json(text, name)
    return parse_algebra_text(text, name)

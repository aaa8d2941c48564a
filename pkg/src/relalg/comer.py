"""Coset partitions of F_p^x and their mandatory-cycle structure.

For m | p-1 and a generator g, the cosets X_i = g^i * X_0 of the index-m
subgroup X_0 = H partition F_p^x.  The difference relations R_i = {(u, v) :
u - v in X_i} form an integral relation algebra whose composition facts are
captured by the m x m table T[d][e] <=> X_0 + X_d >= X_e: by translation
symmetry, X_i + X_j >= X_k iff T[(j-i) mod m][(k-i) mod m], so the atom
triple (x, y, z) is mandatory iff T[(z-y) mod m][(x-y) mod m].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .primes import is_prime, is_primitive_root, smallest_primitive_root

Triple = tuple[int, int, int]

ORACLE_MAX_P = 10_000


@dataclass(frozen=True)
class CosetPartition:
    p: int
    m: int
    g: int
    coset_index: tuple[int, ...]  # length p; entry for 0 is -1
    coset_size: int
    powers: tuple[int, ...] = field(repr=False)  # powers[t] = g^t mod p

    def coset(self, i: int) -> tuple[int, ...]:
        return self.powers[i % self.m :: self.m]

    def cosets(self) -> Iterator[tuple[int, ...]]:
        return (self.coset(i) for i in range(self.m))


@dataclass(frozen=True)
class CycleTable:
    m: int
    rows: tuple[tuple[bool, ...], ...]  # rows[d][e] <=> X_0 + X_d >= X_e

    def contains(self, i: int, j: int, k: int) -> bool:
        """X_i + X_j >= X_k, by translation to the d = j-i, e = k-i entry."""
        return self.rows[(j - i) % self.m][(k - i) % self.m]

    def mandatory(self, x: int, y: int, z: int) -> bool:
        """Atom triple (x, y, z): some y-then-z path realizes an x-edge."""
        return self.rows[(z - y) % self.m][(x - y) % self.m]

    def forbidden_pairs(self) -> set[tuple[int, int]]:
        return {
            (d, e) for d in range(self.m) for e in range(self.m) if not self.rows[d][e]
        }

    def forbidden_triples(self) -> set[Triple]:
        """Expand the missing table entries to all m^3 readings."""
        out = set()
        for d, e in self.forbidden_pairs():
            for y in range(self.m):
                out.add(((y + e) % self.m, y, (y + d) % self.m))
        return out


def coset_partition(p: int, m: int, generator: int | None = None) -> CosetPartition:
    """Partition F_p^x into the m cosets of its index-m subgroup.

    The generator defaults to the smallest primitive root so that coset
    indices, and everything derived from them, are reproducible.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 1 or (p - 1) % m != 0:
        raise ValueError(f"m={m} does not divide p-1={p - 1}")
    if generator is None:
        g = smallest_primitive_root(p)
    else:
        if not is_primitive_root(generator, p):
            raise ValueError(f"{generator} is not a primitive root mod {p}")
        g = generator % p
    index = [-1] * p
    powers = [0] * (p - 1)
    u = 1
    for t in range(p - 1):
        powers[t] = u
        index[u] = t % m
        u = u * g % p
    return CosetPartition(
        p=p,
        m=m,
        g=g,
        coset_index=tuple(index),
        coset_size=(p - 1) // m,
        powers=tuple(powers),
    )


def is_symmetric(part: CosetPartition) -> bool:
    """All cosets closed under negation; holds iff the coset size is even."""
    return part.coset_size % 2 == 0


def converse_index(part: CosetPartition, i: int) -> int:
    """Index j with -X_i = X_j, read off from the membership table."""
    return part.coset_index[(part.p - part.powers[i % part.m]) % part.p]


def cycle_table(part: CosetPartition) -> CycleTable:
    """Representative test: T[d][e] <=> g^e - a lands in X_d for some a in X_0.

    X_0 + X_d is fixed setwise by multiplication by X_0, so it contains the
    whole coset X_e as soon as it contains the single representative g^e.
    One pass over a in X_0 per column e collects every coset index hit.
    """
    m, p = part.m, part.p
    index = part.coset_index
    x0 = part.coset(0)
    cols = []
    for e in range(m):
        ge = part.powers[e]
        hit = [False] * m
        for a in x0:
            d = index[(ge - a) % p]
            if d >= 0:
                hit[d] = True
        cols.append(hit)
    return CycleTable(m=m, rows=tuple(tuple(cols[e][d] for e in range(m)) for d in range(m)))


def sumset(part: CosetPartition, i: int, j: int) -> set[int]:
    """Full X_i + X_j over F_p, zero included if it occurs."""
    xi, xj = part.coset(i), part.coset(j)
    p = part.p
    return {(a + b) % p for a in xi for b in xj}


def cycle_table_oracle(part: CosetPartition) -> CycleTable:
    """Brute force: materialize each X_0 + X_d and test every element of X_e."""
    if part.p > ORACLE_MAX_P:
        raise ValueError(f"oracle guard: p={part.p} exceeds {ORACLE_MAX_P}")
    m = part.m
    rows = []
    for d in range(m):
        s = sumset(part, 0, d)
        rows.append(tuple(all(x in s for x in part.coset(e)) for e in range(m)))
    return CycleTable(m=m, rows=tuple(rows))


def mandatory_triples_oracle(part: CosetPartition) -> set[Triple]:
    """All mandatory (x, y, z) from explicit sumsets, without the translation identity."""
    if part.p > ORACLE_MAX_P:
        raise ValueError(f"oracle guard: p={part.p} exceeds {ORACLE_MAX_P}")
    m = part.m
    out = set()
    for y in range(m):
        for z in range(m):
            s = sumset(part, y, z)
            for x in range(m):
                if all(u in s for u in part.coset(x)):
                    out.add((x, y, z))
    return out


# --- classification ---------------------------------------------------------

PATTERN_COLOR = "color"
PATTERN_SPLIT_SYM = "split-sym"
PATTERN_SPLIT_ASYM = "split-asym"
PATTERN_OTHER = "other"

_DEVIATION_CAP = 20


@dataclass
class ClassifyReport:
    p: int
    m: int
    g: int
    symmetric: bool
    pattern: str
    colors: int | None
    pairing_shift: int | None
    deviations: list[Triple]
    deviation_count: int

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "g": self.g,
            "symmetric": self.symmetric,
            "pattern": self.pattern,
            "colors": self.colors,
            "pairing_shift": self.pairing_shift,
            "deviations": [list(t) for t in self.deviations],
            "deviation_count": self.deviation_count,
        }


def _expand_pairs(pairs: set[tuple[int, int]], m: int, cap: int) -> tuple[list[Triple], int]:
    triples = sorted(
        ((y + e) % m, y, (y + d) % m) for d, e in pairs for y in range(m)
    )
    return triples[:cap], len(triples)


def classify(part: CosetPartition, table: CycleTable | None = None) -> ClassifyReport:
    """Match the algebra's forbidden triples against the three named shapes.

    Forbidden triples of a coset algebra are translates of the missing table
    entries: (d, e) absent yields (y+e, y, y+d) for every y.  The color shape
    is exactly {(i,i,i)}, i.e. the single missing entry (0,0); a split shape
    pairing i with i+c forbids all triples inside each class, i.e. missing
    entries exactly {0,c} x {0,c} with 2c = 0 mod m.
    """
    if table is None:
        table = cycle_table(part)
    m = part.m
    symmetric = is_symmetric(part)
    nf = table.forbidden_pairs()

    if symmetric and nf == {(0, 0)}:
        return ClassifyReport(
            part.p, m, part.g, symmetric, PATTERN_COLOR, m, None, [], 0
        )

    shift_candidates = sorted(e for (d, e) in nf if d == 0 and e != 0)
    for c in shift_candidates:
        if 2 * c % m != 0:
            continue
        if nf == {(d, e) for d in (0, c) for e in (0, c)}:
            if symmetric:
                return ClassifyReport(
                    part.p, m, part.g, symmetric, PATTERN_SPLIT_SYM, m // 2, c, [], 0
                )
            if c == converse_index(part, 0):
                return ClassifyReport(
                    part.p, m, part.g, symmetric, PATTERN_SPLIT_ASYM, m // 2, c, [], 0
                )

    expected = {(0, 0)} if symmetric else {
        (d, e)
        for d in (0, converse_index(part, 0))
        for e in (0, converse_index(part, 0))
    }
    deviations, count = _expand_pairs(nf ^ expected, m, _DEVIATION_CAP)
    return ClassifyReport(
        part.p, m, part.g, symmetric, PATTERN_OTHER, None, None, deviations, count
    )


# --- prime scanning ---------------------------------------------------------

MODE_COLOR = "color"
MODE_SPLIT_SYM = "split-sym"
MODE_SPLIT_ASYM = "split-asym"


def _scan_mode_params(colors: int, mode: str) -> tuple[int, bool, str]:
    if mode == MODE_COLOR:
        return colors, True, PATTERN_COLOR
    if mode == MODE_SPLIT_SYM:
        return 2 * colors, True, PATTERN_SPLIT_SYM
    if mode == MODE_SPLIT_ASYM:
        return 2 * colors, False, PATTERN_SPLIT_ASYM
    raise ValueError(f"unknown scan mode {mode!r}")


def _scan_range(colors: int, mode: str, lo: int, hi: int) -> list[int]:
    """Witness primes in [lo, hi); self-contained so workers share nothing."""
    m, want_even, pattern = _scan_mode_params(colors, mode)
    hits = []
    for p in range(max(lo, 2), hi):
        if not is_prime(p) or (p - 1) % m != 0:
            continue
        if (((p - 1) // m) % 2 == 0) != want_even:
            continue
        report = classify(coset_partition(p, m))
        if report.pattern == pattern and report.colors == colors:
            hits.append(p)
    return hits


def scan(
    colors: int,
    mode: str = MODE_COLOR,
    max_p: int | None = None,
    workers: int = 1,
) -> list[int]:
    """Primes p <= max_p whose coset algebra matches the requested shape.

    Congruence filters per mode: color needs m = colors cosets of even size;
    split-asym m = 2*colors of odd size; split-sym m = 2*colors of even size.
    With workers > 1, disjoint prime ranges are scanned in parallel and the
    hits merged in ascending order regardless of completion order.
    """
    if colors < 1:
        raise ValueError("colors must be >= 1")
    _scan_mode_params(colors, mode)  # validate mode before defaulting max_p
    if max_p is None:
        if mode != MODE_COLOR:
            raise ValueError(f"max_p is required for mode {mode!r}")
        max_p = colors**4 + 5

    if workers <= 1:
        return _scan_range(colors, mode, 2, max_p + 1)

    from concurrent.futures import ProcessPoolExecutor

    chunks = []
    step = max(1000, (max_p - 1) // (workers * 4) + 1)
    lo = 2
    while lo <= max_p:
        chunks.append((lo, min(lo + step, max_p + 1)))
        lo += step
    hits: list[int] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(
            _scan_range,
            [colors] * len(chunks),
            [mode] * len(chunks),
            [c[0] for c in chunks],
            [c[1] for c in chunks],
        ):
            hits.extend(part)
    return sorted(hits)


def table_csv(table: CycleTable) -> str:
    """CSV of the m x m matrix: row d, column e, values 0/1."""
    return "\n".join(",".join("1" if v else "0" for v in row) for row in table.rows)

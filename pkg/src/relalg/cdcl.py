"""Self-contained CDCL SAT solver speaking the DIMACS conventions.

Used as the default backend when no external solver is configured: the
module runs as a process (``python -m relalg.cdcl file.cnf``), prints
``s``/``v`` result lines, and exits 10 for SAT, 20 for UNSAT, 0 otherwise,
so it is driven through exactly the same interface as any other solver.

Search: two-watched-literal propagation with a dedicated binary implication
table, first-UIP learning with basic minimization, exponential VSIDS over a
lazy heap, phase saving, LBD-driven restarts, and LBD-based learned-clause
reduction.  Before search, a simplifier runs unit propagation, merges
equivalent literals (SCCs of the binary implication graph), structurally
hashes AND gates, and drops duplicate clauses; models are reconstructed in
the original numbering afterwards.
"""

from __future__ import annotations

import sys
import time
from heapq import heappop, heappush

SAT = "sat"
UNSAT = "unsat"
UNKNOWN = "unknown"

_VAR_DECAY = 0.95
_RESCALE = 1e100
_RESTART_MIN = 50
_RESTART_MARGIN = 0.8


class Solver:
    """CDCL over literals encoded as 2*var (positive) / 2*var+1 (negative)."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        size = 2 * nvars + 2
        self.value = bytearray(size)  # 0 unset, 1 true, 2 false; indexed by literal
        self.watches: list[list] = [[] for _ in range(size)]
        self.bins: list[list[int]] = [[] for _ in range(size)]
        self.level = [0] * (nvars + 1)
        self.reason: list = [None] * (nvars + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.clauses: list[list[int]] = []
        self.learned: list[list[int]] = []
        self.lbd: dict[int, int] = {}
        self.activity = [0.0] * (nvars + 1)
        self.var_inc = 1.0
        self.heap: list[tuple[float, int]] = [(0.0, v) for v in range(1, nvars + 1)]
        self.polarity = bytearray(nvars + 1)
        self.seen = bytearray(nvars + 1)
        self.ok = True
        self.conflicts = 0
        self.propagations = 0
        self.reductions = 0

    # -- clause input ----------------------------------------------------------

    @staticmethod
    def _encode(lit: int) -> int:
        return 2 * lit if lit > 0 else -2 * lit + 1

    def add_clause(self, lits: list[int]) -> None:
        if not self.ok:
            return
        seen: set[int] = set()
        enc: list[int] = []
        for lit in lits:
            e = self._encode(lit)
            if e ^ 1 in seen:
                return  # tautology
            if e not in seen:
                seen.add(e)
                enc.append(e)
        if not enc:
            self.ok = False
            return
        if len(enc) == 1:
            self._enqueue_root(enc[0])
        elif len(enc) == 2:
            a, b = enc
            self.bins[a ^ 1].append(b)
            self.bins[b ^ 1].append(a)
        else:
            self.clauses.append(enc)
            self.watches[enc[0]].append(enc)
            self.watches[enc[1]].append(enc)

    def _enqueue_root(self, lit: int) -> None:
        v = self.value[lit]
        if v == 2:
            self.ok = False
        elif v == 0:
            self.value[lit] = 1
            self.value[lit ^ 1] = 2
            self.level[lit >> 1] = 0
            self.reason[lit >> 1] = None
            self.trail.append(lit)

    # -- propagation -----------------------------------------------------------

    def _propagate(self):
        """Exhaust the queue; return a falsified clause (list) or None."""
        value = self.value
        watches = self.watches
        bins = self.bins
        trail = self.trail
        level = self.level
        reason = self.reason
        polarity = self.polarity
        dl = len(self.trail_lim)
        qhead = self.qhead
        props = 0
        try:
            while qhead < len(trail):
                lit = trail[qhead]
                qhead += 1
                props += 1
                for b in bins[lit]:
                    vb = value[b]
                    if vb == 0:
                        value[b] = 1
                        value[b ^ 1] = 2
                        var = b >> 1
                        level[var] = dl
                        reason[var] = lit ^ 1
                        polarity[var] = 1 - (b & 1)
                        trail.append(b)
                    elif vb == 2:
                        return [b, lit ^ 1]
                false_lit = lit ^ 1
                ws = watches[false_lit]
                i = j = 0
                end = len(ws)
                while i < end:
                    c = ws[i]
                    i += 1
                    if c[0] == false_lit:
                        c[0] = c[1]
                        c[1] = false_lit
                    first = c[0]
                    if value[first] == 1:
                        ws[j] = c
                        j += 1
                        continue
                    for k in range(2, len(c)):
                        if value[c[k]] != 2:
                            c[1] = c[k]
                            c[k] = false_lit
                            watches[c[1]].append(c)
                            break
                    else:
                        ws[j] = c
                        j += 1
                        if value[first] == 2:
                            while i < end:
                                ws[j] = ws[i]
                                j += 1
                                i += 1
                            del ws[j:]
                            return c
                        value[first] = 1
                        value[first ^ 1] = 2
                        var = first >> 1
                        level[var] = dl
                        reason[var] = c
                        polarity[var] = 1 - (first & 1)
                        trail.append(first)
                del ws[j:]
            return None
        finally:
            self.qhead = qhead
            self.propagations += props

    # -- conflict analysis -------------------------------------------------------

    def _reason_clause(self, var: int):
        r = self.reason[var]
        if isinstance(r, int):
            lit = 2 * var if self.value[2 * var] == 1 else 2 * var + 1
            return (lit, r)
        return r

    def _bump(self, var: int) -> None:
        act = self.activity[var] + self.var_inc
        self.activity[var] = act
        if act > _RESCALE:
            scale = 1.0 / _RESCALE
            for v in range(1, self.nvars + 1):
                self.activity[v] *= scale
            self.var_inc *= scale
            self.heap = [
                (-self.activity[v], v)
                for v in range(1, self.nvars + 1)
                if self.value[2 * v] == 0
            ]
            self.heap.sort()
            return
        heappush(self.heap, (-act, var))

    def _analyze(self, confl) -> tuple[list[int], int, int]:
        """First-UIP learned clause, backtrack level, and LBD."""
        seen = self.seen
        trail = self.trail
        levels = self.level
        cur = len(self.trail_lim)
        learnt = [0]
        path = 0
        p = -1
        index = len(trail)
        cleanup = []
        while True:
            for k in range(0 if p == -1 else 1, len(confl)):
                q = confl[k]
                v = q >> 1
                if not seen[v] and levels[v] > 0:
                    seen[v] = 1
                    cleanup.append(v)
                    self._bump(v)
                    if levels[v] >= cur:
                        path += 1
                    else:
                        learnt.append(q)
            while True:
                index -= 1
                p = trail[index]
                if seen[p >> 1]:
                    break
            path -= 1
            if path == 0:
                break
            confl = self._reason_clause(p >> 1)
        learnt[0] = p ^ 1

        # Basic minimization: drop literals whose whole reason is already seen.
        if len(learnt) > 2:
            kept = [learnt[0]]
            for q in learnt[1:]:
                r = self._reason_clause(q >> 1)
                if r is not None and all(
                    seen[o >> 1] or levels[o >> 1] == 0 for o in r[1:]
                ):
                    continue
                kept.append(q)
            learnt = kept

        if len(learnt) == 1:
            bt = 0
        else:
            max_i = 1
            for k in range(2, len(learnt)):
                if levels[learnt[k] >> 1] > levels[learnt[max_i] >> 1]:
                    max_i = k
            learnt[1], learnt[max_i] = learnt[max_i], learnt[1]
            bt = levels[learnt[1] >> 1]
        lbd = len({levels[q >> 1] for q in learnt})
        for v in cleanup:
            seen[v] = 0
        return learnt, bt, lbd

    def _backtrack(self, target: int) -> None:
        if len(self.trail_lim) <= target:
            return
        bound = self.trail_lim[target]
        value = self.value
        heap = self.heap
        activity = self.activity
        for k in range(len(self.trail) - 1, bound - 1, -1):
            lit = self.trail[k]
            value[lit] = 0
            value[lit ^ 1] = 0
            var = lit >> 1
            self.reason[var] = None
            heappush(heap, (-activity[var], var))
        del self.trail[bound:]
        del self.trail_lim[target:]
        self.qhead = bound

    def _decide(self) -> int | None:
        value = self.value
        heap = self.heap
        activity = self.activity
        while heap:
            act, var = heappop(heap)
            if value[2 * var] == 0 and -act == activity[var]:
                return 2 * var + (0 if self.polarity[var] else 1)
        for var in range(1, self.nvars + 1):
            if value[2 * var] == 0:
                return 2 * var + (0 if self.polarity[var] else 1)
        return None

    # -- learned clause management ------------------------------------------------

    def _reduce_db(self) -> None:
        self.reductions += 1
        keep: list[list[int]] = []
        cands: list[list[int]] = []
        for c in self.learned:
            if self.reason[c[0] >> 1] is c or self.lbd.get(id(c), 9) <= 3:
                keep.append(c)
            else:
                cands.append(c)
        cands.sort(key=lambda c: (self.lbd.get(id(c), 9), len(c)))
        keep.extend(cands[: len(cands) // 2])
        kept_ids = {id(c) for c in keep}
        self.lbd = {i: v for i, v in self.lbd.items() if i in kept_ids}
        self.learned = keep
        size = 2 * self.nvars + 2
        self.watches = [[] for _ in range(size)]
        for c in self.clauses:
            self.watches[c[0]].append(c)
            self.watches[c[1]].append(c)
        for c in self.learned:
            self.watches[c[0]].append(c)
            self.watches[c[1]].append(c)

    # -- main search ----------------------------------------------------------------

    def solve(
        self,
        conflict_limit: int | None = None,
        time_limit: float | None = None,
    ) -> str:
        if not self.ok:
            return UNSAT
        if self._propagate() is not None:
            self.ok = False
            return UNSAT
        deadline = time.monotonic() + time_limit if time_limit else None
        lbd_sum = 0
        recent = [0] * _RESTART_MIN  # ring buffer of the last few LBDs
        recent_sum = 0
        recent_fill = 0
        recent_pos = 0
        max_learned = 4000
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                if not self.trail_lim:
                    return UNSAT
                learnt, bt, lbd = self._analyze(confl)
                self._backtrack(bt)
                if len(learnt) == 1:
                    self._enqueue_root(learnt[0])
                    if not self.ok:
                        return UNSAT
                elif len(learnt) == 2:
                    a, b = learnt
                    self.bins[a ^ 1].append(b)
                    self.bins[b ^ 1].append(a)
                    self.value[a] = 1
                    self.value[a ^ 1] = 2
                    self.level[a >> 1] = len(self.trail_lim)
                    self.reason[a >> 1] = b
                    self.trail.append(a)
                else:
                    self.learned.append(learnt)
                    self.lbd[id(learnt)] = lbd
                    self.watches[learnt[0]].append(learnt)
                    self.watches[learnt[1]].append(learnt)
                    self.value[learnt[0]] = 1
                    self.value[learnt[0] ^ 1] = 2
                    self.level[learnt[0] >> 1] = len(self.trail_lim)
                    self.reason[learnt[0] >> 1] = learnt
                    self.trail.append(learnt[0])
                self.var_inc /= _VAR_DECAY
                lbd_sum += lbd
                recent_sum += lbd - recent[recent_pos]
                recent[recent_pos] = lbd
                recent_pos = (recent_pos + 1) % _RESTART_MIN
                if recent_fill < _RESTART_MIN:
                    recent_fill += 1
                if conflict_limit is not None and self.conflicts >= conflict_limit:
                    self._backtrack(0)
                    return UNKNOWN
                if deadline is not None and self.conflicts % 128 == 0:
                    if time.monotonic() > deadline:
                        self._backtrack(0)
                        return UNKNOWN
            else:
                if (
                    recent_fill >= _RESTART_MIN
                    and recent_sum * self.conflicts * _RESTART_MARGIN
                    > lbd_sum * _RESTART_MIN
                ):
                    recent_fill = 0
                    recent_sum = 0
                    recent = [0] * _RESTART_MIN
                    recent_pos = 0
                    self._backtrack(0)
                if len(self.learned) > max_learned:
                    self._reduce_db()
                    max_learned = 4000 + 1000 * self.reductions
                lit = self._decide()
                if lit is None:
                    return SAT
                self.trail_lim.append(len(self.trail))
                self.value[lit] = 1
                self.value[lit ^ 1] = 2
                var = lit >> 1
                self.level[var] = len(self.trail_lim)
                self.reason[var] = None
                self.polarity[var] = 1 - (lit & 1)
                self.trail.append(lit)

    def model(self) -> frozenset[int]:
        return frozenset(v for v in range(1, self.nvars + 1) if self.value[2 * v] == 1)


# -- simplifier ------------------------------------------------------------------


class Simplifier:
    """Root-level simplification with model reconstruction.

    Sound transformations only: unit propagation, equivalent-literal merging
    from binary-implication SCCs, structural hashing of AND gates, duplicate
    and tautology removal.  Equisatisfiable output; ``extend`` maps a model
    of the reduced formula back to the original variables.
    """

    def __init__(self, nvars: int, clauses: list[list[int]]):
        self.nvars = nvars
        self.parent: dict[int, int] = {}
        self.fixed: dict[int, bool] = {}  # by representative variable
        self.clauses = [list(c) for c in clauses]
        self.status = UNKNOWN
        self.new_nvars = 0
        self.var_map: dict[int, int] = {}

    def _find(self, lit: int) -> int:
        path = []
        while True:
            nxt = self.parent.get(lit, lit)
            if nxt == lit:
                break
            path.append(lit)
            lit = nxt
        for q in path:
            self.parent[q] = lit
            self.parent[-q] = -lit
        return lit

    def _union(self, a: int, b: int) -> bool:
        """Merge literal classes of a and b; False on a = -b contradiction."""
        ra, rb = self._find(a), self._find(b)
        if ra == rb:
            return True
        if ra == -rb:
            return False
        if abs(rb) < abs(ra) or (abs(rb) == abs(ra) and rb > ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.parent[-rb] = -ra
        fb = self.fixed.pop(abs(rb), None)
        if fb is not None:
            want = fb if rb > 0 else not fb
            return self._fix(ra, want)
        return True

    def _fix(self, lit: int, val: bool) -> bool:
        r = self._find(lit)
        want = val if r > 0 else not val
        old = self.fixed.get(abs(r))
        if old is None:
            self.fixed[abs(r)] = want
            return True
        return old == want

    def _lit_value(self, lit: int):
        r = self._find(lit)
        v = self.fixed.get(abs(r))
        if v is None:
            return None
        return v if r > 0 else not v

    def run(self, max_rounds: int = 12) -> str:
        for _ in range(max_rounds):
            if not self._normalize():
                self.status = UNSAT
                return UNSAT
            changed = self._merge_sccs()
            if changed is None:
                self.status = UNSAT
                return UNSAT
            gates = self._hash_gates()
            if gates is None:
                self.status = UNSAT
                return UNSAT
            if not (changed or gates):
                break
        if not self._normalize():
            self.status = UNSAT
            return UNSAT
        self._compact()
        self.status = "ok"
        return "ok"

    def _normalize(self) -> bool:
        """Substitute, drop satisfied and duplicate clauses, propagate units."""
        while True:
            out = []
            dedup: set[frozenset[int]] = set()
            new_unit = False
            for c in self.clauses:
                lits = []
                seen = set()
                sat = False
                for lit in c:
                    r = self._find(lit)
                    v = self.fixed.get(abs(r))
                    if v is not None:
                        if (v and r > 0) or (not v and r < 0):
                            sat = True
                            break
                        continue
                    if -r in seen:
                        sat = True
                        break
                    if r not in seen:
                        seen.add(r)
                        lits.append(r)
                if sat:
                    continue
                if not lits:
                    return False
                if len(lits) == 1:
                    if not self._fix(lits[0], True):
                        return False
                    new_unit = True
                    continue
                key = frozenset(lits)
                if key in dedup:
                    continue
                dedup.add(key)
                out.append(lits)
            self.clauses = out
            if not new_unit:
                return True

    def _binary_graph(self):
        adj: dict[int, list[int]] = {}
        for c in self.clauses:
            if len(c) == 2:
                a, b = c
                adj.setdefault(-a, []).append(b)
                adj.setdefault(-b, []).append(a)
                adj.setdefault(a, [])
                adj.setdefault(b, [])
        return adj

    def _merge_sccs(self):
        """Tarjan over the binary implication graph; returns merge count."""
        adj = self._binary_graph()
        index: dict[int, int] = {}
        low: dict[int, int] = {}
        on: set[int] = set()
        stack: list[int] = []
        counter = 0
        merges = 0
        for start in adj:
            if start in index:
                continue
            work: list[list] = [[start, 0]]
            while work:
                frame = work[-1]
                node, ptr = frame
                if ptr == 0:
                    index[node] = low[node] = counter
                    counter += 1
                    stack.append(node)
                    on.add(node)
                children = adj.get(node, ())
                advanced = False
                while frame[1] < len(children):
                    w = children[frame[1]]
                    frame[1] += 1
                    if w not in index:
                        work.append([w, 0])
                        advanced = True
                        break
                    if w in on and index[w] < low[node]:
                        low[node] = index[w]
                if advanced:
                    continue
                work.pop()
                if low[node] == index[node]:
                    scc = []
                    while True:
                        w = stack.pop()
                        on.discard(w)
                        scc.append(w)
                        if w == node:
                            break
                    if len(scc) > 1:
                        head = scc[0]
                        for other in scc[1:]:
                            if not self._union(head, other):
                                return None
                            merges += 1
                if work:
                    parent = work[-1][0]
                    if low[node] < low[parent]:
                        low[parent] = low[node]
        return merges

    def _hash_gates(self):
        """Merge output literals of identical AND-gate definitions."""
        bin_set = {frozenset(c) for c in self.clauses if len(c) == 2}
        defs: dict[tuple[int, int], int] = {}
        merges = 0
        for c in self.clauses:
            if len(c) != 3:
                continue
            for i in range(3):
                w = c[i]
                a = -c[(i + 1) % 3]
                b = -c[(i + 2) % 3]
                if frozenset((-w, a)) in bin_set and frozenset((-w, b)) in bin_set:
                    key = (a, b) if a < b else (b, a)
                    prev = defs.get(key)
                    if prev is None:
                        defs[key] = w
                    elif self._find(prev) != self._find(w):
                        if not self._union(prev, w):
                            return None
                        merges += 1
        return merges

    def _compact(self) -> None:
        for c in self.clauses:
            for lit in c:
                var = abs(lit)
                if var not in self.var_map:
                    self.var_map[var] = len(self.var_map) + 1
        self.new_nvars = len(self.var_map)
        self.clauses = [
            [self.var_map[l] if l > 0 else -self.var_map[-l] for l in c]
            for c in self.clauses
        ]

    def extend(self, model: frozenset[int]) -> frozenset[int]:
        """Lift a reduced-formula model to the original variables."""
        out = set()
        for v in range(1, self.nvars + 1):
            r = self._find(v)
            rv = abs(r)
            fixed = self.fixed.get(rv)
            if fixed is not None:
                val = fixed
            elif rv in self.var_map:
                val = self.var_map[rv] in model
            else:
                val = False
            if r < 0:
                val = not val
            if val:
                out.add(v)
        return frozenset(out)


def solve(
    nvars: int,
    clauses: list[list[int]],
    conflict_limit: int | None = None,
    time_limit: float | None = None,
    preprocess: bool = True,
) -> tuple[str, frozenset[int] | None]:
    if preprocess:
        simp = Simplifier(nvars, clauses)
        if simp.run() == UNSAT:
            return UNSAT, None
        solver = Solver(simp.new_nvars)
        for c in simp.clauses:
            solver.add_clause(c)
        status = solver.solve(conflict_limit=conflict_limit, time_limit=time_limit)
        if status == SAT:
            return SAT, simp.extend(solver.model())
        return status, None
    solver = Solver(nvars)
    for c in clauses:
        solver.add_clause(c)
    status = solver.solve(conflict_limit=conflict_limit, time_limit=time_limit)
    return status, solver.model() if status == SAT else None


# -- DIMACS process interface ------------------------------------------------------


def parse_dimacs(text: str) -> tuple[int, list[list[int]]]:
    nvars = 0
    clauses: list[list[int]] = []
    pending: list[int] = []
    saw_header = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ValueError(f"bad DIMACS header: {line!r}")
            nvars = int(fields[2])
            saw_header = True
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(pending)
                pending = []
            else:
                pending.append(lit)
                nvars = max(nvars, abs(lit))
    if pending:
        clauses.append(pending)
    if not saw_header and not clauses:
        raise ValueError("no DIMACS header found")
    return nvars, clauses


def main(argv: list[str] | None = None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    time_limit = None
    if "--timeout" in args:
        k = args.index("--timeout")
        time_limit = float(args[k + 1])
        del args[k : k + 2]
    if len(args) != 1:
        print("usage: relalg-sat [--timeout SECS] FILE.cnf", file=sys.stderr)
        return 1
    with open(args[0], "r", encoding="utf-8") as fh:
        nvars, clauses = parse_dimacs(fh.read())
    status, model = solve(nvars, clauses, time_limit=time_limit)
    if status == SAT:
        print("s SATISFIABLE")
        lits = [v if model and v in model else -v for v in range(1, nvars + 1)]
        for base in range(0, len(lits), 20):
            print("v " + " ".join(str(x) for x in lits[base : base + 20]))
        print("v 0")
        return 10
    if status == UNSAT:
        print("s UNSATISFIABLE")
        return 20
    print("s UNKNOWN")
    return 0


if __name__ == "__main__":
    sys.exit(main())

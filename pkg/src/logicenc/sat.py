"""Small CDCL SAT solver: two watched literals, first-UIP learning, VSIDS,
geometric restarts. Deterministic for a given clause set.

Clauses use DIMACS conventions: literals are nonzero signed ints, variable
indices start at 1. A DIMACS export hook is provided for external solvers,
but nothing in the package requires one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from heapq import heappush, heappop
from typing import Dict, List, Optional, Sequence, Tuple


@dataclass
class CNF:
    num_vars: int
    clauses: List[List[int]] = field(default_factory=list)

    def add(self, *lits: int) -> None:
        self.clauses.append(list(lits))

    def new_var(self) -> int:
        self.num_vars += 1
        return self.num_vars


@dataclass
class SatResult:
    status: str  # "sat" | "unsat" | "budget"
    model: Optional[Dict[int, bool]] = None
    conflicts: int = 0


def to_dimacs(cnf: CNF) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    for c in cnf.clauses:
        lines.append(" ".join(str(l) for l in c) + " 0")
    return "\n".join(lines) + "\n"


class _Solver:
    UNASSIGNED = 0

    def __init__(self, cnf: CNF):
        self.nv = cnf.num_vars
        self.value = [0] * (self.nv + 1)  # 0 unassigned, 1 true, -1 false
        self.level = [0] * (self.nv + 1)
        self.reason: List[Optional[List[int]]] = [None] * (self.nv + 1)
        self.activity = [0.0] * (self.nv + 1)
        self.phase = [False] * (self.nv + 1)
        self.var_inc = 1.0
        self.trail: List[int] = []
        self.trail_lim: List[int] = []
        self.qhead = 0
        self.watches: Dict[int, List[List[int]]] = {}
        self.clauses: List[List[int]] = []
        self.heap: List[Tuple[float, int]] = []
        self.ok = True
        for c in cnf.clauses:
            if not self._add_clause(sorted(set(c), key=abs)):
                self.ok = False
                break
        for v in range(1, self.nv + 1):
            heappush(self.heap, (-self.activity[v], v))

    def _lit_value(self, lit: int) -> int:
        v = self.value[abs(lit)]
        return v if lit > 0 else -v

    def _add_clause(self, lits: List[int]) -> bool:
        # drop tautologies, strip duplicate/false handling is minimal here
        s = set(lits)
        if any(-l in s for l in lits):
            return True
        if not lits:
            return False
        if len(lits) == 1:
            return self._enqueue(lits[0], None)
        clause = list(lits)
        self.clauses.append(clause)
        self._watch(clause)
        for l in lits:
            self.activity[abs(l)] += 1.0
        return True

    def _watch(self, clause: List[int]) -> None:
        self.watches.setdefault(-clause[0], []).append(clause)
        self.watches.setdefault(-clause[1], []).append(clause)

    def _enqueue(self, lit: int, reason: Optional[List[int]]) -> bool:
        val = self._lit_value(lit)
        if val == 1:
            return True
        if val == -1:
            return False
        v = abs(lit)
        self.value[v] = 1 if lit > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.phase[v] = lit > 0
        self.trail.append(lit)
        return True

    def _propagate(self) -> Optional[List[int]]:
        while self.qhead < len(self.trail):
            lit = self.trail[self.qhead]
            self.qhead += 1
            watchers = self.watches.get(lit)
            if not watchers:
                continue
            i = 0
            while i < len(watchers):
                clause = watchers[i]
                # normalize: watched lits sit at positions 0 and 1
                if clause[0] == -lit:
                    clause[0], clause[1] = clause[1], clause[0]
                first = clause[0]
                if self._lit_value(first) == 1:
                    i += 1
                    continue
                moved = False
                for k in range(2, len(clause)):
                    if self._lit_value(clause[k]) != -1:
                        clause[1], clause[k] = clause[k], clause[1]
                        self.watches.setdefault(-clause[1], []).append(clause)
                        watchers[i] = watchers[-1]
                        watchers.pop()
                        moved = True
                        break
                if moved:
                    continue
                # unit or conflicting
                if not self._enqueue(first, clause):
                    return clause
                i += 1
        return None

    def _bump(self, var: int) -> None:
        self.activity[var] += self.var_inc
        if self.activity[var] > 1e100:
            for v in range(1, self.nv + 1):
                self.activity[v] *= 1e-100
            self.var_inc *= 1e-100
        heappush(self.heap, (-self.activity[var], var))

    def _analyze(self, conflict: List[int]) -> Tuple[List[int], int]:
        learnt = []
        seen = [False] * (self.nv + 1)
        counter = 0
        lit0 = 0
        reason = conflict
        idx = len(self.trail) - 1
        cur_level = len(self.trail_lim)
        while True:
            for l in reason:
                v = abs(l)
                if not seen[v] and self.level[v] > 0:
                    seen[v] = True
                    self._bump(v)
                    if self.level[v] == cur_level:
                        counter += 1
                    else:
                        learnt.append(l)
            while not seen[abs(self.trail[idx])]:
                idx -= 1
            lit0 = self.trail[idx]
            v = abs(lit0)
            seen[v] = False
            counter -= 1
            idx -= 1
            if counter == 0:
                break
            reason = [l for l in (self.reason[v] or []) if abs(l) != v]
        learnt.insert(0, -lit0)
        back = 0
        if len(learnt) > 1:
            back = max(self.level[abs(l)] for l in learnt[1:])
            # put a literal of the backtrack level in watch position 1
            for k in range(1, len(learnt)):
                if self.level[abs(learnt[k])] == back:
                    learnt[1], learnt[k] = learnt[k], learnt[1]
                    break
        return learnt, back

    def _backtrack(self, level: int) -> None:
        while len(self.trail_lim) > level:
            start = self.trail_lim.pop()
            for lit in self.trail[start:]:
                v = abs(lit)
                self.value[v] = 0
                self.reason[v] = None
                heappush(self.heap, (-self.activity[v], v))
            del self.trail[start:]
        self.qhead = min(self.qhead, len(self.trail))

    def _decide(self) -> Optional[int]:
        while self.heap:
            _, v = heappop(self.heap)
            if self.value[v] == 0:
                return v if self.phase[v] else -v
        for v in range(1, self.nv + 1):
            if self.value[v] == 0:
                return v if self.phase[v] else -v
        return None

    def solve(self, max_conflicts: int) -> SatResult:
        if not self.ok:
            return SatResult("unsat")
        conflicts = 0
        restart_limit = 100
        since_restart = 0
        conflict = self._propagate()
        if conflict is not None:
            return SatResult("unsat")
        while True:
            lit = self._decide()
            if lit is None:
                model = {
                    v: self.value[v] == 1 for v in range(1, self.nv + 1)
                }
                return SatResult("sat", model, conflicts)
            self.trail_lim.append(len(self.trail))
            self._enqueue(lit, None)
            while True:
                conflict = self._propagate()
                if conflict is None:
                    break
                conflicts += 1
                since_restart += 1
                if conflicts >= max_conflicts:
                    return SatResult("budget", None, conflicts)
                if not self.trail_lim:
                    return SatResult("unsat", None, conflicts)
                learnt, back = self._analyze(conflict)
                self._backtrack(back)
                self.var_inc /= 0.95
                if len(learnt) == 1:
                    if not self._enqueue(learnt[0], None):
                        return SatResult("unsat", None, conflicts)
                else:
                    self.clauses.append(learnt)
                    self._watch(learnt)
                    if not self._enqueue(learnt[0], learnt):
                        return SatResult("unsat", None, conflicts)
            if since_restart >= restart_limit:
                since_restart = 0
                restart_limit = int(restart_limit * 1.5)
                self._backtrack(0)


def sat_solve(cnf: CNF, max_conflicts: int = 200_000) -> SatResult:
    """Solve a CNF; returns sat (with model), unsat, or budget."""
    result = _Solver(cnf).solve(max_conflicts)
    if result.status == "sat":
        for c in cnf.clauses:  # paranoia: every model must satisfy the input
            if not any(
                result.model[abs(l)] == (l > 0) for l in c
            ):
                raise RuntimeError("solver produced a bad model")
    return result

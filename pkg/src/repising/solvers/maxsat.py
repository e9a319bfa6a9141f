"""Weighted MAX-2-SAT reduction of the Ising minimization, and an exact
depth-first branch-and-bound maximizer.

The reduction substitutes s_i = 1 - 2*X_i. Each coupling J on edge (u, v)
becomes the clause pair {(u or v), (not u or not v)} for J > 0, or
{(u or not v), (not u or v)} for J < 0, each with weight 2|J|; each field h
becomes a unit clause on X (h > 0) or not-X (h < 0) with weight 2|h|. With
exact coefficients the identity

    E(s) = offset - objective(X(s)) / scale

holds for every assignment, with offset = sum_i |h_i| + 3 * sum_e |J_e|.
Integer clause weights are fixed-point roundings of 2|coefficient|*scale and
the offset is kept as the exact rational implied by the rounded weights, so
the identity stays exact for the rounded coefficients and within the rounding
bound for the originals.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..model import IsingModel, energy
from .exact import GroundResult

DEFAULT_SCALE = 10**6

Clause = tuple[int, tuple[int, ...]]  # (weight, literals); literal = +-(var+1)


@dataclass
class MaxSatInstance:
    var_count: int
    clauses: list[Clause]
    offset: Fraction = Fraction(0)
    scale: int = 1

    def __post_init__(self) -> None:
        for w, lits in self.clauses:
            if w <= 0:
                raise ValueError("clause weights must be positive")
            if not 1 <= len(lits) <= 2:
                raise ValueError("clauses must have 1 or 2 literals")
            if len(lits) == 2 and abs(lits[0]) == abs(lits[1]):
                raise ValueError("duplicate variable within a clause")
            for lit in lits:
                if lit == 0 or abs(lit) > self.var_count:
                    raise ValueError(f"literal {lit} out of range")

    @property
    def total_weight(self) -> int:
        return sum(w for w, _ in self.clauses)


def qubo_to_max2sat(m: IsingModel, scale: int = DEFAULT_SCALE) -> MaxSatInstance:
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    clauses: list[Clause] = []
    offset = Fraction(0)
    for (u, v), j in sorted(m.couplings.items()):
        w = round(2 * abs(j) * scale)
        if w == 0:
            continue
        a, b = u + 1, v + 1
        if j > 0:
            clauses.append((w, (a, b)))
            clauses.append((w, (-a, -b)))
        else:
            clauses.append((w, (a, -b)))
            clauses.append((w, (-a, b)))
        offset += Fraction(3 * w, 2 * scale)
    for i, h in sorted(m.fields.items()):
        w = round(2 * abs(h) * scale)
        if w == 0:
            continue
        clauses.append((w, (i + 1 if h > 0 else -(i + 1),)))
        offset += Fraction(w, 2 * scale)
    return MaxSatInstance(m.graph.vertex_count, clauses, offset, scale)


def assignment_from_spins(s) -> np.ndarray:
    """X_i = (1 - s_i) / 2: spin -1 maps to X true."""
    return np.asarray(s) == -1


def spins_from_assignment(x) -> np.ndarray:
    return np.where(np.asarray(x, dtype=bool), -1, 1).astype(np.int8)


def objective(inst: MaxSatInstance, x) -> int:
    """Total weight of satisfied clauses under boolean assignment x."""
    x = np.asarray(x, dtype=bool)
    total = 0
    for w, lits in inst.clauses:
        if any(bool(x[abs(l) - 1]) == (l > 0) for l in lits):
            total += w
    return total


@dataclass
class BnbResult:
    assignment: np.ndarray
    objective: int
    exact: bool
    nodes: int


class _Budget(Exception):
    pass


class _BnbState:
    def __init__(self, inst: MaxSatInstance, node_budget: int | None):
        self.n = inst.var_count
        self.weights = [w for w, _ in inst.clauses]
        self.lits = [lits for _, lits in inst.clauses]
        self.total = inst.total_weight
        self.occ: dict[int, list[int]] = {}
        for ci, lits in enumerate(self.lits):
            for lit in lits:
                self.occ.setdefault(lit, []).append(ci)
        self.assigned = [0] * self.n  # 0 unknown, +1 true, -1 false
        self.sat = [False] * len(self.lits)
        self.unassigned = [len(lits) for lits in self.lits]
        self.falsified = 0
        self.nodes = 0
        self.node_budget = node_budget
        self.best_obj = -1
        self.best_assign = [False] * self.n
        # static variable order by incident weight
        score = [0] * self.n
        for w, lits in zip(self.weights, self.lits):
            for lit in lits:
                score[abs(lit) - 1] += w
        self.static_order = sorted(range(self.n), key=lambda v: -score[v])

    def assign(self, lit: int) -> list[tuple[str, int]]:
        trail: list[tuple[str, int]] = []
        v = abs(lit) - 1
        self.assigned[v] = 1 if lit > 0 else -1
        for ci in self.occ.get(lit, ()):
            self.unassigned[ci] -= 1
            if not self.sat[ci]:
                self.sat[ci] = True
                trail.append(("sat", ci))
        for ci in self.occ.get(-lit, ()):
            self.unassigned[ci] -= 1
            if not self.sat[ci] and self.unassigned[ci] == 0:
                self.falsified += self.weights[ci]
                trail.append(("fals", ci))
        return trail

    def undo(self, lit: int, trail: list[tuple[str, int]]) -> None:
        for kind, ci in trail:
            if kind == "sat":
                self.sat[ci] = False
            else:
                self.falsified -= self.weights[ci]
        for ci in self.occ.get(lit, ()):
            self.unassigned[ci] += 1
        for ci in self.occ.get(-lit, ()):
            self.unassigned[ci] += 1
        self.assigned[abs(lit) - 1] = 0

    def _unit_literal(self, ci: int) -> int:
        for lit in self.lits[ci]:
            if self.assigned[abs(lit) - 1] == 0:
                return lit
        raise AssertionError("unit clause without free literal")

    def lower_bound_pairs(self) -> int:
        """Weight guaranteed lost among active unit clauses: for each variable
        with pending units of both polarities, min(pos weight, neg weight)."""
        pos: dict[int, int] = {}
        neg: dict[int, int] = {}
        for ci, lits in enumerate(self.lits):
            if self.sat[ci] or self.unassigned[ci] != 1:
                continue
            lit = self._unit_literal(ci)
            (pos if lit > 0 else neg)[abs(lit)] = (
                (pos if lit > 0 else neg).get(abs(lit), 0) + self.weights[ci]
            )
        return sum(min(w, neg[v]) for v, w in pos.items() if v in neg)

    def pick_branch(self) -> int:
        """Literal to try first: heaviest pending unit clause, else the next
        static-order variable with its heavier polarity."""
        best_lit, best_w = 0, -1
        for ci, lits in enumerate(self.lits):
            if not self.sat[ci] and self.unassigned[ci] == 1 and self.weights[ci] > best_w:
                best_w = self.weights[ci]
                best_lit = self._unit_literal(ci)
        if best_lit:
            return best_lit
        for v in self.static_order:
            if self.assigned[v] == 0:
                pos_w = sum(
                    self.weights[ci]
                    for ci in self.occ.get(v + 1, ())
                    if not self.sat[ci]
                )
                neg_w = sum(
                    self.weights[ci]
                    for ci in self.occ.get(-(v + 1), ())
                    if not self.sat[ci]
                )
                return (v + 1) if pos_w >= neg_w else -(v + 1)
        raise AssertionError("no unassigned variable")

    def search(self, depth: int) -> None:
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise _Budget
        if self.total - self.falsified - self.lower_bound_pairs() <= self.best_obj:
            return
        if depth == self.n:
            obj = self.total - self.falsified
            if obj > self.best_obj:
                self.best_obj = obj
                self.best_assign = [a > 0 for a in self.assigned]
            return
        lit = self.pick_branch()
        for chosen in (lit, -lit):
            trail = self.assign(chosen)
            self.search(depth + 1)
            self.undo(chosen, trail)


def solve_bnb(inst: MaxSatInstance, node_budget: int | None = None) -> BnbResult:
    """Exact maximum-weight assignment (anytime under a node budget)."""
    state = _BnbState(inst, node_budget)
    # greedy incumbent: heavier polarity per variable
    greedy = np.zeros(inst.var_count, dtype=bool)
    polarity = [0] * inst.var_count
    for w, lits in inst.clauses:
        for lit in lits:
            polarity[abs(lit) - 1] += w if lit > 0 else -w
    greedy[:] = [p >= 0 for p in polarity]
    state.best_obj = objective(inst, greedy)
    state.best_assign = list(greedy)
    exact = True
    try:
        state.search(0)
    except _Budget:
        exact = False
    return BnbResult(
        np.array(state.best_assign, dtype=bool), state.best_obj, exact, state.nodes
    )


def solve_via_maxsat(
    m: IsingModel, scale: int = DEFAULT_SCALE, node_budget: int | None = None
) -> GroundResult:
    """Ground state through the MAX-2-SAT reduction and branch and bound."""
    start = time.perf_counter()
    inst = qubo_to_max2sat(m, scale)
    result = solve_bnb(inst, node_budget)
    config = spins_from_assignment(result.assignment)
    wall = time.perf_counter() - start
    return GroundResult(
        config,
        energy(m, config),
        "bnb",
        exact=result.exact,
        stats={
            "nodes_explored": result.nodes,
            "objective": result.objective,
            "reduced_value": float(inst.offset - Fraction(result.objective, inst.scale)),
            "wall_time": wall,
        },
    )

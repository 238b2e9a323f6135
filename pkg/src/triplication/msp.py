"""Finite-domain constraint problems over triplication tables.

:func:`compile_instance` turns a table plus a discrimination scenario into a
3-valued constraint problem: one variable per component position, a
three-value candidate domain per variable, and small pairwise-distinct
groups derived from the rows, weak sets, and monochrome sets of the table.
:func:`solve` runs chronological backtracking with forward checking over
those domains.  ``unsat`` is reported only after the search space is
exhausted; running out of budget is a distinct ``aborted`` outcome.

Variable numbering: position ``<i, l>`` of the table (pair ``i``, component
``l``) is variable ``2*i + l``, so ``U_i`` is even and ``V_i`` odd.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .errors import BudgetExceeded, InvalidInput, ScenarioMismatch
from .tables import TriplicationTable, validate

__all__ = [
    "CongruityReport",
    "CongruousTable",
    "ConstraintGroup",
    "Expr",
    "MspInstance",
    "SolveOutcome",
    "SolveStats",
    "check_congruous",
    "compile_instance",
    "random_tt",
    "solution_from_json",
    "solution_to_json",
    "solve",
]

VAR, DIFF, SUM = 0, 1, 2


@dataclass(frozen=True)
class Expr:
    """An atomic quantity constrained by a group.

    ``op == VAR``: the value of variable ``idx``.
    ``op == DIFF``: ``(U_i - V_i + adj) mod r`` for pair ``i = idx``.
    ``op == SUM``: ``(U_i + V_i + adj) mod r`` for pair ``i = idx``.

    ``adj`` carries the precomputed carry correction (``-delta_i`` or
    ``+sigma_i``) in the carry scenario and is 0 otherwise.
    """

    op: int
    idx: int
    adj: int = 0

    def variables(self) -> tuple[int, ...]:
        if self.op == VAR:
            return (self.idx,)
        return (2 * self.idx, 2 * self.idx + 1)


@dataclass(frozen=True)
class ConstraintGroup:
    """All expressions pairwise distinct; if ``forbid_zero``, also nonzero."""

    label: str
    exprs: tuple[Expr, ...]
    forbid_zero: bool


@dataclass(frozen=True)
class MspInstance:
    m: int
    kind: str
    r: int
    domains: tuple[tuple[int, ...], ...]
    groups: tuple[ConstraintGroup, ...]

    @property
    def n_vars(self) -> int:
        return len(self.domains)

    @property
    def n_pairs(self) -> int:
        return len(self.domains) // 2


@dataclass(frozen=True)
class CongruousTable:
    """A candidate (or verified) solution table, aligned index-by-index with
    its source triplication table."""

    kind: str
    r: int
    values: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SolveStats:
    nodes: int
    backtracks: int
    elapsed: float


@dataclass(frozen=True)
class SolveOutcome:
    """``status`` is ``"solution"``, ``"unsat"`` (search exhausted, nothing
    found), or ``"aborted"`` (budget hit; ``tables``/``count`` are partial)."""

    status: str
    tables: tuple[CongruousTable, ...]
    count: int
    stats: SolveStats


def compile_instance(tt: TriplicationTable, sc) -> MspInstance:
    """Compile ``tt`` under scenario ``sc`` into a 3-valued instance.

    Domains come from the scenario (three candidates per position), which
    realizes the range and consistency constraints structurally; the
    remaining constraints are emitted as distinctness groups.
    """
    if sc.m != tt.m:
        raise ScenarioMismatch(f"scenario modulus {sc.m} != table order {tt.m}")
    domains: list[tuple[int, ...]] = []
    for u, v in tt.pairs:
        domains.append(sc.variable_domain(u))
        domains.append(sc.variable_domain(v))

    carries = tt.carry_tables
    if sc.kind == "carry":
        dadj = tuple(-d for d in carries.delta)
        sadj = carries.sigma
    else:
        dadj = (0,) * len(tt.pairs)
        sadj = (0,) * len(tt.pairs)

    groups: list[ConstraintGroup] = [
        ConstraintGroup("row0", (Expr(DIFF, 0, dadj[0]),), True)
    ]
    for d in range(1, tt.q + 1):
        groups.append(
            ConstraintGroup(
                f"row{d}",
                tuple(Expr(DIFF, i, dadj[i]) for i in range(3 * d - 2, 3 * d + 1)),
                False,
            )
        )
    for s, idx in tt.weak_sets.by_sum.items():
        groups.append(
            ConstraintGroup(
                f"weak{s}", tuple(Expr(SUM, i, sadj[i]) for i in idx), s == 0
            )
        )
    for c, positions in tt.monochrome_sets.items():
        groups.append(
            ConstraintGroup(
                f"color{c}",
                tuple(Expr(VAR, 2 * i + l) for i, l in positions),
                c == 0,
            )
        )
    return MspInstance(
        m=tt.m, kind=sc.kind, r=sc.r, domains=tuple(domains), groups=tuple(groups)
    )


class _Search:
    """Backtracking with forward checking over 3-value selector domains.

    Variable order: fewest remaining candidates first, ties broken by lowest
    variable id.  Value order: domain order, or a per-variable seeded shuffle
    when sampling.  Deterministic for a fixed seed.
    """

    def __init__(self, inst: MspInstance, seed=None):
        self.inst = inst
        nv = inst.n_vars
        self.assign = [-1] * nv
        self.domain = [0b111] * nv
        self.var_groups: list[list[int]] = [[] for _ in range(nv)]
        for gi, g in enumerate(inst.groups):
            touched = set()
            for e in g.exprs:
                touched.update(e.variables())
            for v in touched:
                self.var_groups[v].append(gi)
        if seed is None:
            self.value_order = [(0, 1, 2)] * nv
        else:
            rng = random.Random(seed)
            self.value_order = [
                tuple(rng.sample((0, 1, 2), 3)) for _ in range(nv)
            ]
        self.trail: list[tuple[int, int]] = []
        self.nodes = 0
        self.backtracks = 0
        self._setup_ok = self._prune_unary()

    def _value(self, v: int, sel: int) -> int:
        return self.inst.domains[v][sel]

    def _eval(self, e: Expr, hypo_var: int = -1, hypo_sel: int = -1) -> int:
        r = self.inst.r

        def val(v: int) -> int:
            sel = hypo_sel if v == hypo_var else self.assign[v]
            return self.inst.domains[v][sel]

        if e.op == VAR:
            return val(e.idx)
        a, b = val(2 * e.idx), val(2 * e.idx + 1)
        if e.op == DIFF:
            return (a - b + e.adj) % r
        return (a + b + e.adj) % r

    def _prune_unary(self) -> bool:
        # Zero-forbidding groups kill selectors that map a single-variable
        # expression to 0 before the search starts.
        for g in self.inst.groups:
            if not g.forbid_zero:
                continue
            for e in g.exprs:
                if e.op != VAR:
                    continue
                v = e.idx
                for sel in (0, 1, 2):
                    if (self.domain[v] >> sel) & 1 and self._value(v, sel) == 0:
                        self.domain[v] &= ~(1 << sel)
                if self.domain[v] == 0:
                    return False
        return True

    def _select(self) -> int:
        best, best_size = -1, 4
        for v in range(self.inst.n_vars):
            if self.assign[v] >= 0:
                continue
            size = bin(self.domain[v]).count("1")
            if size < best_size:
                best, best_size = v, size
                if size == 1:
                    break
        return best

    def _propagate(self, var: int) -> bool:
        for gi in self.var_groups[var]:
            g = self.inst.groups[gi]
            complete: list[int] = []
            pending: list[tuple[Expr, int]] = []
            for e in g.exprs:
                unassigned = [v for v in e.variables() if self.assign[v] < 0]
                if not unassigned:
                    complete.append(self._eval(e))
                elif len(unassigned) == 1:
                    pending.append((e, unassigned[0]))
            seen: set[int] = set()
            for w in complete:
                if w in seen or (g.forbid_zero and w == 0):
                    return False
                seen.add(w)
            if g.forbid_zero:
                seen.add(0)
            for e, u in pending:
                mask = self.domain[u]
                for sel in (0, 1, 2):
                    if (mask >> sel) & 1 and self._eval(e, u, sel) in seen:
                        mask &= ~(1 << sel)
                        self.trail.append((u, sel))
                if mask == 0:
                    return False
                self.domain[u] = mask
        return True

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            v, sel = self.trail.pop()
            self.domain[v] |= 1 << sel

    def run(self, mode: str, budget, limit):
        found: list[tuple[int, ...]] = []
        count = 0
        aborted = False
        if not self._setup_ok:
            return found, 0, False

        def dfs() -> bool:
            # True means: unwind the whole search now.
            nonlocal count, aborted
            var = self._select()
            if var < 0:
                count += 1
                if mode != "count":
                    found.append(tuple(self.assign))
                if mode == "first":
                    return True
                if limit is not None and count >= limit:
                    aborted = True
                    return True
                return False
            for sel in self.value_order[var]:
                if not (self.domain[var] >> sel) & 1:
                    continue
                self.nodes += 1
                if budget is not None and self.nodes > budget:
                    aborted = True
                    return True
                mark = len(self.trail)
                self.assign[var] = sel
                if self._propagate(var) and dfs():
                    self.assign[var] = -1
                    self._undo(mark)
                    return True
                self.assign[var] = -1
                self._undo(mark)
                self.backtracks += 1
            return False

        dfs()
        return found, count, aborted


def _table_from_assignment(inst: MspInstance, selectors: tuple[int, ...]) -> CongruousTable:
    values = tuple(
        (
            inst.domains[2 * i][selectors[2 * i]],
            inst.domains[2 * i + 1][selectors[2 * i + 1]],
        )
        for i in range(inst.n_pairs)
    )
    return CongruousTable(kind=inst.kind, r=inst.r, values=values)


def solve(
    inst: MspInstance,
    mode: str = "first",
    budget: int | None = None,
    seed: int | None = None,
    limit: int | None = None,
) -> SolveOutcome:
    """Solve the instance.

    ``mode="first"`` stops at one solution; ``"all"`` enumerates every
    solution (``limit`` guards runaway enumeration); ``"count"`` counts
    without materializing tables.  ``budget`` caps expanded nodes.
    """
    if mode not in ("first", "all", "count"):
        raise InvalidInput(f"unknown mode {mode!r}")
    search = _Search(inst, seed=seed)
    t0 = time.perf_counter()
    found, count, aborted = search.run(mode, budget, limit)
    stats = SolveStats(
        nodes=search.nodes,
        backtracks=search.backtracks,
        elapsed=time.perf_counter() - t0,
    )
    tables = tuple(_table_from_assignment(inst, sel) for sel in found)
    if aborted:
        status = "aborted"
    elif count > 0:
        status = "solution"
    else:
        status = "unsat"
    return SolveOutcome(status=status, tables=tables, count=count, stats=stats)


@dataclass(frozen=True)
class CongruityReport:
    """Outcome of :func:`check_congruous`; truthy iff no violations."""

    ok: bool
    violations: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def check_congruous(tt: TriplicationTable, ct: CongruousTable, sc) -> CongruityReport:
    """Re-verify every constraint directly from the definitions.

    Independent of the solver; used to cross-check solver output and
    externally supplied solution tables.
    """
    violations: list[str] = []
    if sc.m != tt.m:
        raise ScenarioMismatch(f"scenario modulus {sc.m} != table order {tt.m}")
    if ct.kind != sc.kind or ct.r != sc.r:
        raise ScenarioMismatch(
            f"solution is {ct.kind}/r={ct.r}, scenario is {sc.kind}/r={sc.r}"
        )
    if len(ct.values) != len(tt.pairs):
        raise ScenarioMismatch(
            f"solution has {len(ct.values)} pairs, table has {len(tt.pairs)}"
        )

    # ((0)) ranges and ((4)) consistency: each value must discriminate some
    # lift of its residue, i.e. (residue, value) must be in the image of the
    # encoding map.
    for i, ((u, v), (bu, bv)) in enumerate(zip(tt.pairs, ct.values)):
        for residue, value, name in ((u, bu, "U"), (v, bv, "V")):
            if not (0 <= value < sc.r):
                violations.append(f"(0) {name}_{i}={value} outside 0..{sc.r - 1}")
            elif value not in sc.variable_domain(residue):
                violations.append(
                    f"(4) ({residue}, {value}) not an encoded pair at position {name}_{i}"
                )
    if violations:
        return CongruityReport(False, tuple(violations))

    carries = tt.carry_tables

    def boxdiff(i: int) -> int:
        return sc.box_sub(
            (tt.pairs[i][0], ct.values[i][0]),
            (tt.pairs[i][1], ct.values[i][1]),
            carries.delta[i],
        )

    def boxsum(i: int) -> int:
        return sc.box_add(
            (tt.pairs[i][0], ct.values[i][0]),
            (tt.pairs[i][1], ct.values[i][1]),
            carries.sigma[i],
        )

    # ((1)) rows
    if boxdiff(0) == 0:
        violations.append("(1) special-pair difference is 0")
    for d in range(1, tt.q + 1):
        vals = [boxdiff(i) for i in range(3 * d - 2, 3 * d + 1)]
        if len(set(vals)) != 3:
            violations.append(f"(1) row {d} differences {vals} not distinct")

    # ((2)) weak sets
    for s, idx in tt.weak_sets.by_sum.items():
        vals = [boxsum(i) for i in idx]
        if len(set(vals)) != len(vals):
            violations.append(f"(2) weak set {s} sums {vals} not distinct")
        if s == 0 and any(w == 0 for w in vals):
            violations.append(f"(2) weak set 0 contains a zero sum")

    # ((3)) colors
    for c, positions in tt.monochrome_sets.items():
        vals = [ct.values[i][l] for i, l in positions]
        if len(set(vals)) != len(vals):
            violations.append(f"(3) color {c} values {vals} not distinct")
        if c == 0 and any(w == 0 for w in vals):
            violations.append(f"(3) color 0 contains value 0")

    return CongruityReport(not violations, tuple(violations))


def random_tt(
    m: int, seed: int | None = None, budget: int | None = 100_000
) -> TriplicationTable:
    """Sample a general triplication table by randomized construction.

    Pairs are placed row by row with sign ``+d`` fixed; a pair in row ``d``
    is determined by its first component ``u`` (the second is ``u + d``).
    Candidates are filtered by the remaining value multiplicities, the sum
    caps, and within-row dedup; dead ends restart with a fresh permutation
    rather than backtracking, which keeps sampling fast.  The output always
    validates.  Raises :class:`BudgetExceeded` if ``budget`` placements are
    exhausted.
    """
    if m < 5 or m % 2 == 0:
        raise InvalidInput(f"order must be odd and >= 5, got {m}")
    rng = random.Random(seed)
    q = (m - 1) // 2
    steps = 0
    while True:
        key = rng.randrange(1, m)
        counts = [2 if c == 0 else 3 for c in range(m)]
        counts[key] -= 2
        sum_counts = [0] * m
        sum_counts[(2 * key) % m] += 1
        pairs: list[tuple[int, int]] = [(key, key)]
        dead = False
        for d in range(1, q + 1):
            row_us: set[int] = set()
            for _ in range(3):
                candidates = [
                    u
                    for u in range(m)
                    if u not in row_us
                    and counts[u] > 0
                    and counts[(u + d) % m] > 0
                    and sum_counts[(2 * u + d) % m]
                    < (2 if (2 * u + d) % m == 0 else 3)
                ]
                if not candidates:
                    dead = True
                    break
                u = rng.choice(candidates)
                v = (u + d) % m
                counts[u] -= 1
                counts[v] -= 1
                sum_counts[(u + v) % m] += 1
                row_us.add(u)
                pairs.append((u, v))
                steps += 1
                if budget is not None and steps > budget:
                    raise BudgetExceeded(
                        f"random table sampling for m={m} exceeded {budget} placements"
                    )
            if dead:
                break
        if not dead:
            return validate(pairs, m)


def solution_to_json(ct: CongruousTable) -> dict:
    """JSON-ready dict aligned with the table JSON row layout."""
    n = len(ct.values)
    q = (n - 1) // 3
    rows: list[list[list[int]]] = [[list(ct.values[0])]]
    for d in range(1, q + 1):
        rows.append([list(ct.values[i]) for i in range(3 * d - 2, 3 * d + 1)])
    return {"scenario": ct.kind, "r": ct.r, "rows": rows}


def solution_from_json(data: dict) -> CongruousTable:
    try:
        kind = data["scenario"]
        r = int(data["r"])
        rows = data["rows"]
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed solution JSON: {exc}") from exc
    values = tuple((int(a), int(b)) for row in rows for a, b in row)
    return CongruousTable(kind=kind, r=r, values=values)

"""Exhaustive search for line sets covering the internal points of C.

Exact mode is an exact-cover problem (columns: internal points, rows:
secant and external lines) solved with dancing links.  Cover mode asks for
line sets of a fixed size meeting every internal point at least once; it is
solved by a separate bitset enumeration.

``brute_force_solve`` is a deliberately naive oracle for tiny instances.
"""

from __future__ import annotations

import enum
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .conic import standard_conic
from .errors import InstanceTooLarge
from .families import LineSet, Provenance
from .plane import plane_of

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10 ** 9
PROGRESS_EVERY = 1_000_000


class Mode(enum.Enum):
    EXACT = "exact"
    AT_LEAST_ONCE = "cover"


@dataclass
class CoverInstance:
    field: object
    columns: list
    rows: list
    row_to_columns: list
    mode: Mode = Mode.EXACT
    size_filter: int | None = None

    @property
    def n_columns(self):
        return len(self.columns)

    def to_json(self):
        plane = plane_of(self.field)
        return {
            "field": self.field.describe(),
            "mode": self.mode.value,
            "size_filter": self.size_filter,
            "columns": self.columns,
            "column_points": [plane.point(p).label() for p in self.columns],
            "rows": self.rows,
            "row_lines": [plane.line(l).label() for l in self.rows],
            "row_to_columns": [list(c) for c in self.row_to_columns],
        }


@dataclass
class SolutionSet:
    solutions: list
    stats: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.solutions)

    def id_lists(self):
        return [L.line_ids for L in self.solutions]

    def size_counts(self):
        out = {}
        for L in self.solutions:
            out[len(L)] = out.get(len(L), 0) + 1
        return dict(sorted(out.items()))

    def to_json(self, timings=False):
        stats = dict(self.stats)
        if not timings:
            stats.pop("elapsed_seconds", None)
        return {
            "stats": stats,
            "size_counts": {str(k): v for k, v in self.size_counts().items()},
            "solutions": [L.to_json() for L in self.solutions],
        }


def build_instance(spec, mode=Mode.EXACT, size_filter=None):
    """Internal points as columns, non-tangent lines as rows, both in id order."""
    mode = Mode(mode)
    plane = plane_of(spec)
    t = standard_conic(spec).tables
    columns = [int(p) for p in np.flatnonzero(t.point_code == 1)]
    col_index = {p: i for i, p in enumerate(columns)}
    rows, row_cols = [], []
    for lid in range(plane.n):
        cols = [col_index[int(p)] for p in plane.points_on_line[lid] if int(p) in col_index]
        if cols:
            rows.append(lid)
            row_cols.append(tuple(sorted(cols)))
    if mode is Mode.AT_LEAST_ONCE and size_filter is None:
        size_filter = spec.q - 1
    return CoverInstance(spec, columns, rows, row_cols, mode, size_filter)


# -- dancing links ------------------------------------------------------------

class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise InstanceTooLarge(f"node budget {self.limit} exceeded", self.nodes)
        if self.nodes % PROGRESS_EVERY == 0:
            log.info("search: %d nodes", self.nodes)


class DancingLinks:
    """Knuth's Algorithm X on a toroidal doubly linked node array."""

    def __init__(self, n_columns, rows):
        n = n_columns
        self.L = list(range(-1, n)) + []
        self.R = list(range(1, n + 2))
        self.L[0] = n
        self.R[n] = 0
        self.U = list(range(n + 1))
        self.D = list(range(n + 1))
        self.C = list(range(n + 1))
        self.row_of = [-1] * (n + 1)
        self.S = [0] * (n + 1)
        self.row_first = []
        for r, cols in enumerate(rows):
            first = None
            for c in cols:
                c += 1
                x = len(self.C)
                self.C.append(c)
                self.row_of.append(r)
                self.U.append(self.U[c])
                self.D.append(c)
                self.D[self.U[c]] = x
                self.U[c] = x
                self.S[c] += 1
                if first is None:
                    first = x
                    self.L.append(x)
                    self.R.append(x)
                else:
                    self.L.append(self.L[first])
                    self.R.append(first)
                    self.R[self.L[first]] = x
                    self.L[first] = x
            self.row_first.append(first)

    def cover(self, c):
        L, R, U, D, C, S = self.L, self.R, self.U, self.D, self.C, self.S
        R[L[c]] = R[c]
        L[R[c]] = L[c]
        i = D[c]
        while i != c:
            j = R[i]
            while j != i:
                D[U[j]] = D[j]
                U[D[j]] = U[j]
                S[C[j]] -= 1
                j = R[j]
            i = D[i]

    def uncover(self, c):
        L, R, U, D, C, S = self.L, self.R, self.U, self.D, self.C, self.S
        i = U[c]
        while i != c:
            j = L[i]
            while j != i:
                S[C[j]] += 1
                D[U[j]] = j
                U[D[j]] = j
                j = L[j]
            i = U[i]
        R[L[c]] = c
        L[R[c]] = c

    def choose_column(self):
        R, S = self.R, self.S
        best, best_size = None, None
        c = R[0]
        while c != 0:
            if best is None or S[c] < best_size:
                best, best_size = c, S[c]
                if best_size <= 1:
                    break
            c = R[c]
        return best

    def select_row(self, r):
        """Cover every column of row r (used to seed a subproblem)."""
        x = self.row_first[r]
        self.cover(self.C[x])
        j = self.R[x]
        while j != x:
            self.cover(self.C[j])
            j = self.R[j]

    def search(self, budget, max_depth=None, partial=None):
        partial = list(partial or [])
        out = []
        self._search(partial, out, budget, max_depth)
        return out

    def _search(self, partial, out, budget, max_depth):
        budget.tick()
        R, D, C = self.R, self.D, self.C
        if R[0] == 0:
            out.append(list(partial))
            return
        if max_depth is not None and len(partial) >= max_depth:
            return
        c = self.choose_column()
        if self.S[c] == 0:
            return
        self.cover(c)
        r = D[c]
        while r != c:
            partial.append(self.row_of[r])
            j = R[r]
            while j != r:
                self.cover(C[j])
                j = R[j]
            self._search(partial, out, budget, max_depth)
            j = self.L[r]
            while j != r:
                self.uncover(C[j])
                j = self.L[j]
            partial.pop()
            r = D[r]
        self.uncover(c)


def _exact_subproblem(args):
    n_columns, row_to_columns, seed_row, max_depth, budget = args
    dlx = DancingLinks(n_columns, row_to_columns)
    b = _Budget(budget)
    partial = []
    if seed_row is not None:
        dlx.select_row(seed_row)
        partial = [seed_row]
    found = dlx.search(b, max_depth, partial)
    return found, b.nodes


def _root_rows(instance):
    dlx = DancingLinks(instance.n_columns, instance.row_to_columns)
    c = dlx.choose_column()
    rows = []
    r = dlx.D[c]
    while r != c:
        rows.append(dlx.row_of[r])
        r = dlx.D[r]
    return rows


def _solve_exact(instance, node_budget, threads):
    depth = instance.size_filter
    if threads <= 1 or instance.n_columns == 0:
        return _exact_subproblem((instance.n_columns, instance.row_to_columns, None,
                                  depth, node_budget))
    # every solution contains exactly one row through the root column
    tasks = [(instance.n_columns, instance.row_to_columns, r, depth, node_budget)
             for r in _root_rows(instance)]
    found, nodes = [], 1
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part, n in pool.map(_exact_subproblem, tasks):
            found.extend(part)
            nodes += n
    if nodes > node_budget:
        raise InstanceTooLarge(f"node budget {node_budget} exceeded", nodes)
    return found, nodes


# -- bounded cover enumeration --------------------------------------------------

def _cover_enumerate(n_columns, row_to_columns, size, budget):
    """All row sets of exactly ``size`` rows covering every column.

    Branches on an uncovered column with fewest live rows; the rows tried
    before the chosen one are excluded from that branch, so each set is
    produced once.  Only rows hitting a still-uncovered column are ever
    added, which enumerates every cover of minimum cardinality.
    """
    masks = [sum(1 << c for c in cols) for cols in row_to_columns]
    col_rows = [[] for _ in range(n_columns)]
    for r, cols in enumerate(row_to_columns):
        for c in cols:
            col_rows[c].append(r)
    full = (1 << n_columns) - 1
    widest = max((len(c) for c in row_to_columns), default=0)
    out = []

    def rec(covered, chosen, excluded):
        budget.tick()
        if covered == full:
            if len(chosen) == size:
                out.append(list(chosen))
            return
        left = size - len(chosen)
        missing = full & ~covered
        if left == 0 or missing.bit_count() > left * widest:
            return
        best_rows = None
        m = missing
        while m:
            low = m & -m
            c = low.bit_length() - 1
            m ^= low
            live = [r for r in col_rows[c] if not (excluded >> r) & 1]
            if best_rows is None or len(live) < len(best_rows):
                best_rows = live
                if len(live) <= 1:
                    break
        if not best_rows:
            return
        excl = excluded
        for r in best_rows:
            chosen.append(r)
            rec(covered | masks[r], chosen, excl | (1 << r))
            chosen.pop()
            excl |= 1 << r

    rec(0, [], 0)
    return out


# -- public entry points -------------------------------------------------------

def _emit(instance, raw_solutions, nodes, started):
    spec = instance.field
    sols = []
    for rows in raw_solutions:
        if instance.size_filter is not None and len(rows) != instance.size_filter:
            continue
        L = LineSet(spec, tuple(instance.rows[r] for r in rows), Provenance.SEARCH_RESULT)
        hits = np.zeros(instance.n_columns, dtype=np.int64)
        for r in rows:
            hits[list(instance.row_to_columns[r])] += 1
        ok = bool(np.all(hits == 1) if instance.mode is Mode.EXACT else np.all(hits >= 1))
        if not ok:
            raise AssertionError(f"search produced an invalid solution {L.line_ids}")
        sols.append(L)
    sols.sort(key=lambda L: (len(L), L.line_ids))
    stats = {
        "nodes": nodes,
        "elapsed_seconds": round(time.perf_counter() - started, 6),
        "solution_count": len(sols),
        "mode": instance.mode.value,
        "size_filter": instance.size_filter,
    }
    return SolutionSet(sols, stats)


def solve_all(instance, node_budget=DEFAULT_NODE_BUDGET, threads=1):
    """Complete enumeration; output order is sorted by (size, ids)."""
    started = time.perf_counter()
    if instance.mode is Mode.EXACT:
        raw, nodes = _solve_exact(instance, node_budget, threads)
    else:
        budget = _Budget(node_budget)
        raw = _cover_enumerate(instance.n_columns, instance.row_to_columns,
                               instance.size_filter, budget)
        nodes = budget.nodes
    log.info("search finished: %d solutions, %d nodes", len(raw), nodes)
    return _emit(instance, raw, nodes, started)


def brute_force_solve(instance, node_budget=10 ** 7):
    """Naive include/exclude backtracking over rows, for tiny instances only."""
    started = time.perf_counter()
    budget = _Budget(node_budget)
    sets = [frozenset(c) for c in instance.row_to_columns]
    universe = frozenset(range(instance.n_columns))
    exact = instance.mode is Mode.EXACT
    out = []

    def rec(i, chosen, covered):
        budget.tick()
        if i == len(sets):
            if covered == universe:
                out.append(list(chosen))
            return
        if exact and covered == universe:
            # every further row would overlap
            out.append(list(chosen))
            return
        if not exact and len(chosen) == instance.size_filter:
            if covered == universe:
                out.append(list(chosen))
            return
        if not exact or not (sets[i] & covered):
            chosen.append(i)
            rec(i + 1, chosen, covered | sets[i])
            chosen.pop()
        rec(i + 1, chosen, covered)

    rec(0, [], frozenset())
    return _emit(instance, out, budget.nodes, started)

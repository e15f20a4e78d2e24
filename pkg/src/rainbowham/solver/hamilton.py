"""
Exact Transversal Hamilton Search
=================================

Backtracking search for rainbow Hamilton cycles in collections with
exactly n colors, and for rainbow Hamilton paths (n - 1 colors) through
the reduction that adjoins a complete graph as an extra color.

Search shape:

- vertex 0 is fixed on the cycle; the first neighbour w placed after it
  is required to be smaller than its other neighbour, so each undirected
  cycle is met in exactly one orientation
- the partial path grows at whichever end has fewer (neighbour, color)
  continuations
- placed edges are kept matched to distinct colors by an incremental
  matching; colors that have no edge left inside the open region
  (unvisited vertices plus the two ends) must be coverable by placed edges
- union-graph degrees inside the open region prune dead ends
- an optional parity-certificate precheck settles certified instances
  before any search
"""

import multiprocessing
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from typing import Any, List, Optional, Sequence, Tuple

from ..core.collection import (
    GraphCollection,
    TransversalSubgraph,
    bits,
    complete_rows,
    cycle_from_sequence,
    full_mask,
    path_from_sequence,
    validate,
    walk_sequence,
)
from ..core.exceptions import InvalidInputError
from ..core.structured_logger import get_logger
from ..core.types import SearchStatus, SubgraphKind
from .budget import BudgetExceeded, BudgetTracker, SearchBudget, SearchOutcome, SearchStats
from .matching import ColorMatcher

logger = get_logger("solver.hamilton")


def pair_color_table(g: GraphCollection) -> List[List[int]]:
    """table[u][v] = bitmask of colors c with uv in G_c"""
    table = [[0] * g.n for _ in range(g.n)]
    for c, graph_rows in enumerate(g.rows):
        flag = 1 << c
        for u, row in enumerate(graph_rows):
            for v in bits(row):
                table[u][v] |= flag
    return table


class _CycleSearch:
    """Mutable state of one cycle search over a fixed collection"""

    def __init__(self, g: GraphCollection, tracker: BudgetTracker, stats: SearchStats):
        self.g = g
        self.n = g.n
        self.tracker = tracker
        self.stats = stats
        self.pairs = pair_color_table(g)
        self.union = g.union_rows()
        self.matcher = ColorMatcher(g.colors)
        self.all_colors = full_mask(g.colors)
        self.left: List[int] = []
        self.right: List[int] = []
        self.remaining = full_mask(self.n) & ~1
        self.first = -1
        self.placed: List[Tuple[int, int]] = []
        self.witness: Optional[TransversalSubgraph] = None

    # -------------------------------------------------------------------------
    # Pruning
    # -------------------------------------------------------------------------

    def _ends(self) -> Tuple[int, int]:
        lo = self.left[-1] if self.left else 0
        hi = self.right[-1] if self.right else 0
        return lo, hi

    def _forced_colors(self, open_mask: int) -> int:
        """Colors with no edge inside the open region"""
        forced = 0
        for c, graph_rows in enumerate(self.g.rows):
            if not any(graph_rows[v] & open_mask for v in bits(open_mask)):
                forced |= 1 << c
        return forced

    def _degrees_ok(self, lo: int, hi: int) -> bool:
        remaining = self.remaining
        if not remaining:
            return True
        open_mask = remaining | (1 << lo) | (1 << hi)
        for v in bits(remaining):
            if (self.union[v] & open_mask & ~(1 << v)).bit_count() < 2:
                return False
        return bool(self.union[lo] & remaining) and bool(self.union[hi] & remaining)

    def _independent_ok(self, lo: int, hi: int, open_mask: int) -> bool:
        """
        The rest of the cycle is a path from lo to hi through the open
        region (m vertices). An independent set I of the union graph there
        satisfies 2|I| <= m + e - 1, where e counts the ends lying in I.
        """
        m = open_mask.bit_count()
        order = sorted(bits(open_mask), key=lambda v: ((self.union[v] & open_mask).bit_count(), v))
        chosen = blocked = 0
        for v in order:
            if not (blocked >> v) & 1:
                chosen |= 1 << v
                blocked |= self.union[v] | (1 << v)
        ends_inside = ((chosen >> lo) & 1) + ((chosen >> hi) & 1)
        return 2 * chosen.bit_count() <= m + ends_inside - 1

    def _capacity(self, mask: int, limit: int) -> int:
        """How many extra edges with admissible colors ``mask`` fit next to the placed ones"""
        pushed = 0
        while pushed < limit and self.matcher.push(mask):
            pushed += 1
        for _ in range(pushed):
            self.matcher.pop()
        return pushed

    def _cut_ok(self, side: int, open_mask: int, lo: int, hi: int) -> bool:
        """
        The remaining path crosses (side, open \\ side) an odd number of
        times when exactly one end lies in ``side`` and an even, nonzero
        number otherwise. Crossing edges need colors with an edge across
        the cut, the other future edges colors with an edge on one side.
        """
        other = open_mask & ~side
        odd = ((side >> lo) & 1) + ((side >> hi) & 1) == 1
        future = self.remaining.bit_count() + 1
        across = within = 0
        for c, graph_rows in enumerate(self.g.rows):
            if any(graph_rows[v] & other for v in bits(side)):
                across |= 1 << c
            if any(graph_rows[v] & side for v in bits(side)) or any(
                graph_rows[v] & other for v in bits(other)
            ):
                within |= 1 << c
        crossing_max = self._capacity(across, future)
        inner_max = self._capacity(within, future)
        least = max(1 if odd else 2, future - inner_max)
        if (least % 2 == 1) != odd:
            least += 1
        return least <= crossing_max

    def _cuts_ok(self, lo: int, hi: int, open_mask: int) -> bool:
        """Check the cut condition on every split of the open region into
        components of a single color"""
        seen = set()
        for graph_rows in self.g.rows:
            rest = open_mask
            while rest:
                start = (rest & -rest).bit_length() - 1
                component = frontier = 1 << start
                while frontier:
                    reach = 0
                    for v in bits(frontier):
                        reach |= graph_rows[v]
                    frontier = reach & open_mask & ~component
                    component |= frontier
                rest &= ~component
                if component == open_mask:
                    break
                side = min(component, open_mask & ~component)
                if side in seen:
                    continue
                seen.add(side)
                if not self._cut_ok(side, open_mask, lo, hi):
                    return False
        return True

    def _feasible(self) -> bool:
        lo, hi = self._ends()
        if not self._degrees_ok(lo, hi):
            self.stats.degree_prunes += 1
            return False
        open_mask = self.remaining | (1 << lo) | (1 << hi)
        if not self._independent_ok(lo, hi, open_mask):
            self.stats.independent_set_prunes += 1
            return False
        if not self.matcher.can_cover(self._forced_colors(open_mask)):
            self.stats.forced_color_prunes += 1
            return False
        if not self._cuts_ok(lo, hi, open_mask):
            self.stats.cut_prunes += 1
            return False
        return True

    # -------------------------------------------------------------------------
    # Branching
    # -------------------------------------------------------------------------

    def _continuations(self, end: int) -> List[int]:
        free = self.all_colors & ~self.matcher.matched_colors()
        options = []
        for w in bits(self.union[end] & self.remaining):
            mask = self.pairs[end][w]
            if mask:
                onward = (self.union[w] & self.remaining).bit_count()
                options.append((onward, -(mask & free).bit_count(), w))
        options.sort()
        return [w for _, _, w in options]

    def _place(self, a: int, b: int) -> bool:
        self.tracker.tick()
        if not self.matcher.push(self.pairs[a][b]):
            self.stats.matching_prunes += 1
            return False
        return True

    def _close(self) -> bool:
        lo, hi = self._ends()
        # Orientation: the second neighbour of 0 must exceed the first.
        if not self.left and hi <= self.first:
            return False
        if not self._place(hi, lo):
            return False
        self.placed.append((hi, lo))
        self._record()
        return True

    def _record(self) -> None:
        color_of = {
            frozenset(edge): c for edge, c in zip(self.placed, self.matcher.item_color)
        }
        walk = list(reversed(self.left)) + [0] + self.right
        k = len(walk)
        colors = [color_of[frozenset((walk[i], walk[(i + 1) % k]))] for i in range(k)]
        self.witness = cycle_from_sequence(walk, colors)

    def _advance(self, end: int, w: int, side: List[int]) -> bool:
        """Place edge (end, w), recurse, and undo on failure"""
        if not self._place(end, w):
            return False
        self.placed.append((end, w))
        side.append(w)
        self.remaining &= ~(1 << w)
        if self._feasible() and self.extend():
            return True
        self.remaining |= 1 << w
        side.pop()
        self.placed.pop()
        self.matcher.pop()
        return False

    def _start(self, w: int) -> bool:
        self.first = w
        if self._advance(0, w, self.right):
            return True
        self.first = -1
        return False

    def extend(self) -> bool:
        if not self.remaining:
            return self._close()

        if not self.right:
            return any(self._start(w) for w in self._continuations(0))

        lo, hi = self._ends()
        left_options = self._continuations(lo)
        if not self.left:
            left_options = [w for w in left_options if w > self.first]
        right_options = self._continuations(hi)
        if len(left_options) < len(right_options):
            return any(self._advance(lo, w, self.left) for w in left_options)
        return any(self._advance(hi, w, self.right) for w in right_options)

    def run(self, first_neighbors: Optional[Sequence[int]] = None) -> bool:
        if first_neighbors is None:
            return self.extend()
        return any(self._start(w) for w in first_neighbors)


# =============================================================================
# PUBLIC API
# =============================================================================


def _trivially_impossible(g: GraphCollection) -> bool:
    union = g.union_rows()
    return any(row.bit_count() < 2 for row in union)


def _search(
    g: GraphCollection,
    budget: SearchBudget,
    first_neighbors: Optional[Sequence[int]] = None,
    stop: Optional[Any] = None,
) -> SearchOutcome:
    tracker = BudgetTracker(budget, stop=stop)
    stats = SearchStats()
    search = _CycleSearch(g, tracker, stats)
    try:
        found = search.run(first_neighbors)
        status = SearchStatus.FOUND if found else SearchStatus.EXHAUSTED
    except BudgetExceeded:
        status = SearchStatus.BUDGET_EXCEEDED
    stats.nodes = tracker.nodes
    stats.elapsed_ms = tracker.elapsed_ms()
    witness = search.witness if status == SearchStatus.FOUND else None
    return SearchOutcome(status, witness, stats)


# set in each pool process by _bind_stop_event
_stop_event: Optional[Any] = None


def _bind_stop_event(event: Any) -> None:
    global _stop_event
    _stop_event = event


def _branch_worker(
    n: int, rows: Tuple[Tuple[int, ...], ...], budget: SearchBudget, first: int
) -> Tuple[str, Optional[List[Tuple[int, int, int]]], int]:
    outcome = _search(GraphCollection(n, rows), budget, [first], stop=_stop_event)
    edges = list(outcome.witness.edges) if outcome.witness else None
    return outcome.status.value, edges, outcome.stats.nodes


def _parallel_search(g: GraphCollection, budget: SearchBudget) -> SearchOutcome:
    """
    Split the first branching level across a process pool; first witness wins.

    The winning branch sets a shared event that the other branches poll,
    so the pool is joined only after every worker has unwound.
    """
    stats = SearchStats()
    statuses = []
    context = multiprocessing.get_context()
    stop = context.Event()
    pool = ProcessPoolExecutor(
        max_workers=budget.threads,
        mp_context=context,
        initializer=_bind_stop_event,
        initargs=(stop,),
    )
    try:
        pending = {
            pool.submit(_branch_worker, g.n, g.rows, budget, w) for w in bits(g.union_rows()[0])
        }
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for future in done:
                status, edges, nodes = future.result()
                stats.nodes += nodes
                statuses.append(status)
                if edges is not None:
                    witness = TransversalSubgraph(
                        tuple(tuple(e) for e in edges), SubgraphKind.CYCLE
                    )
                    return SearchOutcome(SearchStatus.FOUND, witness, stats)
    finally:
        stop.set()
        pool.shutdown(wait=True, cancel_futures=True)
    if SearchStatus.BUDGET_EXCEEDED.value in statuses:
        return SearchOutcome(SearchStatus.BUDGET_EXCEEDED, None, stats)
    return SearchOutcome(SearchStatus.EXHAUSTED, None, stats)


def find_transversal_hamilton_cycle(
    g: GraphCollection, budget: Optional[SearchBudget] = None
) -> SearchOutcome:
    """
    Decide whether ``g`` has a rainbow Hamilton cycle.

    Args:
        g: collection with exactly n colors, n >= 3
        budget: search limits; defaults to unlimited, deterministic

    Returns:
        SearchOutcome: ``found`` with a validated witness, ``exhausted``
        (no such cycle exists) or ``budget_exceeded``

    Raises:
        InvalidInputError: if colors != n or n < 3
    """
    budget = budget or SearchBudget()
    if g.n < 3:
        raise InvalidInputError(f"Hamilton cycles need n >= 3, got n = {g.n}")
    if g.colors != g.n:
        raise InvalidInputError(f"cycle search needs exactly n = {g.n} colors, got {g.colors}")

    if _trivially_impossible(g):
        logger.debug("Union graph has a vertex of degree < 2", n=g.n)
        return SearchOutcome(SearchStatus.EXHAUSTED, None, SearchStats(backing="union_degree"))

    if budget.parity_precheck:
        from ..closeness.certificates import parity_certificate, verify_certificate

        certificate = parity_certificate(g)
        if certificate is not None and verify_certificate(g, certificate):
            logger.debug("Parity certificate settles instance", b=certificate.crossing_count)
            return SearchOutcome(SearchStatus.EXHAUSTED, None, SearchStats(backing="parity_certificate"))

    if not budget.deterministic and budget.threads > 1:
        outcome = _parallel_search(g, budget)
    else:
        outcome = _search(g, budget)

    if outcome.witness is not None:
        check = validate(g, outcome.witness)
        if not check:
            raise AssertionError(f"solver produced an invalid witness: {check.reason}")
    logger.debug(
        "Cycle search finished", n=g.n, status=outcome.status.value, nodes=outcome.stats.nodes
    )
    return outcome


def find_transversal_hamilton_path(
    g: GraphCollection, budget: Optional[SearchBudget] = None
) -> SearchOutcome:
    """
    Decide whether ``g`` (n - 1 colors) has a rainbow Hamilton path.

    A complete graph is adjoined as color n - 1; the extended collection
    has a rainbow Hamilton cycle exactly when ``g`` has a rainbow Hamilton
    path, and deleting the adjoined edge from the cycle yields the path.
    """
    budget = budget or SearchBudget()
    n = g.n
    if g.colors != n - 1:
        raise InvalidInputError(f"path search needs exactly n - 1 = {n - 1} colors, got {g.colors}")

    if n == 2:
        if g.has_edge(0, 0, 1):
            witness = path_from_sequence([0, 1], [0])
            return SearchOutcome(SearchStatus.FOUND, witness, SearchStats())
        return SearchOutcome(SearchStatus.EXHAUSTED, None, SearchStats())

    extended = g.with_color(complete_rows(n))
    # The adjoined color is neither internal nor crossing on any partition.
    cycle_budget = SearchBudget(
        node_limit=budget.node_limit,
        time_limit_ms=budget.time_limit_ms,
        deterministic=budget.deterministic,
        threads=budget.threads,
        parity_precheck=False,
    )
    outcome = find_transversal_hamilton_cycle(extended, cycle_budget)
    if outcome.witness is None:
        return SearchOutcome(outcome.status, None, outcome.stats)

    vertices, colors = walk_sequence(outcome.witness)
    cut = colors.index(n - 1)
    k = len(vertices)
    order = [vertices[(cut + 1 + i) % k] for i in range(k)]
    path_colors = [colors[(cut + 1 + i) % k] for i in range(k - 1)]
    witness = path_from_sequence(order, path_colors)
    check = validate(g, witness)
    if not check:
        raise AssertionError(f"path reduction produced an invalid witness: {check.reason}")
    return SearchOutcome(SearchStatus.FOUND, witness, outcome.stats)


__all__ = [
    "pair_color_table",
    "find_transversal_hamilton_cycle",
    "find_transversal_hamilton_path",
]

"""Turn-based games on coloured arenas: the parity reduction, strategy
synthesis and verification, and searches for small memory structures."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (Alphabet, Automaton, MalformedInput, MullerCondition,
                   PreconditionViolation, PropertyViolation, ScaleGuard,
                   condition_from_json, condition_to_json,
                   strongly_connected_components, submasks)
from .rabin import canonical_structures
from .zielonka import parity_automaton


@dataclass(frozen=True)
class Arena:
    """Finite arena with vertex owners and optionally-coloured edges.

    Edges are (source, target, colour position or None) triples; an edge with
    colour None is silent.  Every vertex needs at least one outgoing edge and
    cycles of silent edges only are rejected, so every infinite play produces
    infinitely many colours.  Edge ids are positions in the edge tuple.
    """

    colours: Alphabet
    eve: tuple[bool, ...]
    initial: int
    edges: tuple[tuple[int, int, Optional[int]], ...]

    def __post_init__(self) -> None:
        n = len(self.eve)
        if n == 0:
            raise MalformedInput("arena needs at least one vertex")
        if not 0 <= self.initial < n:
            raise MalformedInput("initial vertex out of range")
        out: list[list[int]] = [[] for _ in range(n)]
        for e, (src, dst, colour) in enumerate(self.edges):
            if not (0 <= src < n and 0 <= dst < n):
                raise MalformedInput(f"edge {e} endpoint out of range")
            if colour is not None and not 0 <= colour < len(self.colours):
                raise MalformedInput(f"edge {e} colour out of range")
            out[src].append(e)
        for v in range(n):
            if not out[v]:
                raise MalformedInput(f"vertex {v} has no outgoing edge")
        silent = [(src, dst) for src, dst, colour in self.edges if colour is None]
        for _, internal in strongly_connected_components(range(n), silent):
            if internal:
                raise MalformedInput("arena has a cycle of silent edges only")
        object.__setattr__(self, "_out", tuple(tuple(lst) for lst in out))

    @property
    def n_vertices(self) -> int:
        return len(self.eve)

    def out_edges(self, v: int) -> tuple[int, ...]:
        return self._out[v]  # type: ignore[attr-defined]

    @property
    def epsilon_free(self) -> bool:
        return all(colour is not None for _, _, colour in self.edges)


@dataclass(frozen=True)
class MemoryStructure:
    """Deterministic memory: 'general' reads edge ids, 'chromatic' reads
    colours only and stands still on silent edges."""

    kind: str
    size: int
    initial: int
    update: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.kind not in ("general", "chromatic"):
            raise MalformedInput("memory kind must be 'general' or 'chromatic'")
        if self.size < 1:
            raise MalformedInput("memory needs at least one state")
        if not 0 <= self.initial < self.size:
            raise MalformedInput("initial memory state out of range")
        if len(self.update) != self.size:
            raise MalformedInput("memory update needs one row per state")
        for row in self.update:
            for m in row:
                if not 0 <= m < self.size:
                    raise MalformedInput("memory update target out of range")

    def width_matches(self, arena: Arena) -> bool:
        wanted = len(arena.edges) if self.kind == "general" else len(arena.colours)
        return all(len(row) == wanted for row in self.update)

    def step(self, mstate: int, edge_id: int, colour: Optional[int]) -> int:
        if self.kind == "general":
            return self.update[mstate][edge_id]
        if colour is None:
            return mstate
        return self.update[mstate][colour]


@dataclass(frozen=True)
class StrategyTable:
    """Positional-in-(vertex, memory) choices for the colour player."""

    moves: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        lookup = {}
        for vertex, mstate, edge in self.moves:
            if (vertex, mstate) in lookup:
                raise MalformedInput(
                    f"duplicate strategy entry for vertex {vertex}, memory {mstate}")
            lookup[(vertex, mstate)] = edge
        object.__setattr__(self, "_lookup", lookup)

    @classmethod
    def from_dict(cls, moves: dict[tuple[int, int], int]) -> "StrategyTable":
        return cls(tuple(sorted((v, m, e) for (v, m), e in moves.items())))

    def move(self, vertex: int, mstate: int) -> int:
        try:
            return self._lookup[(vertex, mstate)]  # type: ignore[attr-defined]
        except KeyError:
            raise MalformedInput(
                f"strategy has no move for vertex {vertex}, memory {mstate}") from None


# ---------------------------------------------------------------------------
# Parity games with priorities on edges (max-even convention).

@dataclass(frozen=True)
class ParityGame:
    eve: tuple[bool, ...]
    initial: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        n = len(self.eve)
        if n == 0:
            raise MalformedInput("parity game needs at least one vertex")
        if not 0 <= self.initial < n:
            raise MalformedInput("initial vertex out of range")
        out: list[list[int]] = [[] for _ in range(n)]
        for e, (src, dst, priority) in enumerate(self.edges):
            if not (0 <= src < n and 0 <= dst < n):
                raise MalformedInput(f"edge {e} endpoint out of range")
            if priority < 0:
                raise MalformedInput(f"edge {e} has a negative priority")
            out[src].append(e)
        for v in range(n):
            if not out[v]:
                raise MalformedInput(f"vertex {v} has no outgoing edge")
        object.__setattr__(self, "_out", tuple(tuple(lst) for lst in out))

    def out_edges(self, v: int) -> tuple[int, ...]:
        return self._out[v]  # type: ignore[attr-defined]


@dataclass(frozen=True)
class ParitySolution:
    """Winning regions and positional strategies, per original vertex."""

    eve_region: frozenset[int]
    adam_region: frozenset[int]
    eve_strategy: dict[int, int]
    adam_strategy: dict[int, int]


def _attract(player: int, owner_is_player: list[bool], succ: list[list[int]],
             pred: list[list[int]], targets: set[int], active: set[int]):
    """Player's attractor to targets within active, with a choice map for the
    player's vertices pulled in along the way."""
    attr = set(targets)
    strat: dict[int, int] = {}
    counter: dict[int, int] = {}
    queue = sorted(targets)
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for u in pred[v]:
            if u not in active or u in attr:
                continue
            if owner_is_player[u]:
                attr.add(u)
                strat[u] = v
                queue.append(u)
            else:
                if u not in counter:
                    counter[u] = sum(1 for w in succ[u] if w in active)
                counter[u] -= 1
                if counter[u] == 0:
                    attr.add(u)
                    queue.append(u)
    return attr, strat


def _solve_max_even(owner_eve: list[bool], succ: list[list[int]],
                    priority: list[int]):
    """Recursive attractor decomposition for vertex-priority games.

    Returns per-node winner regions and, for each player, a successor choice
    on every node they own and win.
    """
    n = len(owner_eve)
    pred: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for w in succ[v]:
            pred[w].append(v)
    for v in range(n):
        pred[v] = sorted(set(pred[v]))

    owners = [owner_eve, [not o for o in owner_eve]]

    def solve(active: set[int]):
        if not active:
            return set(), set(), {}, {}
        top = max(priority[v] for v in active)
        j = 0 if top % 2 == 0 else 1
        targets = {v for v in active if priority[v] == top}
        attr, attr_strat = _attract(j, owners[j], succ, pred, targets, active)
        w0, w1, s0, s1 = solve(active - attr)
        opponent = w1 if j == 0 else w0
        if not opponent:
            mine = dict(s0 if j == 0 else s1)
            mine.update(attr_strat)
            for v in sorted(targets):
                if owners[j][v] and v not in mine:
                    mine[v] = min(w for w in succ[v] if w in active)
            if j == 0:
                return set(active), set(), mine, {}
            return set(), set(active), {}, mine
        other = 1 - j
        block, block_strat = _attract(other, owners[other], succ, pred,
                                      opponent, active)
        w0b, w1b, s0b, s1b = solve(active - block)
        theirs = dict(s1 if j == 0 else s0)
        theirs = {v: theirs[v] for v in theirs if v in opponent}
        theirs.update(block_strat)
        if j == 0:
            theirs.update(s1b)
            return w0b, w1b | block, s0b, theirs
        theirs.update(s0b)
        return w0b | block, w1b, theirs, s1b

    return solve(set(range(n)))


def solve_parity_game(game: ParityGame) -> ParitySolution:
    """Winning regions and positional strategies of an edge-priority game.

    Each edge is subdivided through a node carrying the edge's priority while
    original vertices carry the global minimum (so they never decide a
    cycle's maximum), reducing to the classic vertex-priority recursion.
    """
    n = len(game.eve)
    m = len(game.edges)
    lowest = min(priority for _, _, priority in game.edges)
    owner_eve = [bool(game.eve[v]) for v in range(n)] + [False] * m
    priority = [lowest] * n + [priority for _, _, priority in game.edges]
    succ: list[list[int]] = [[] for _ in range(n + m)]
    for v in range(n):
        succ[v] = [n + e for e in game.out_edges(v)]
    for e, (_, dst, _) in enumerate(game.edges):
        succ[n + e] = [dst]
    w0, w1, s0, s1 = _solve_max_even(owner_eve, succ, priority)
    eve_region = frozenset(v for v in range(n) if v in w0)
    adam_region = frozenset(v for v in range(n) if v in w1)
    eve_strategy = {v: s0[v] - n for v in s0 if v < n}
    adam_strategy = {v: s1[v] - n for v in s1 if v < n}
    return ParitySolution(eve_region, adam_region, eve_strategy, adam_strategy)


# ---------------------------------------------------------------------------
# Product of an arena with a deterministic parity automaton over its colours.

@dataclass(frozen=True)
class ParityProduct:
    game: ParityGame
    n_automaton_states: int
    edge_origin: tuple[int, ...]  # product edge -> arena edge id

    def vertex(self, arena_vertex: int, automaton_state: int) -> int:
        return arena_vertex * self.n_automaton_states + automaton_state


def product_with_parity(arena: Arena, aut: Automaton) -> ParityProduct:
    """Expand an arena with the state of a parity automaton reading the
    produced colours; silent edges keep the state and carry the automaton's
    minimum priority, which never decides a cycle.

    The arena's colours must all appear in the automaton's input alphabet.
    The product covers every (vertex, state) pair so winning regions can be
    read off for any starting vertex.
    """
    if aut.acceptance.kind != "parity":
        raise PreconditionViolation("product needs a parity automaton")
    remap = [aut.input_alphabet.position(sym) for sym in arena.colours.symbols]
    priorities = aut.acceptance.priorities
    neutral = min(priorities)
    nq = aut.n_states
    eve = tuple(arena.eve[v] for v in range(arena.n_vertices) for _ in range(nq))
    edges: list[tuple[int, int, int]] = []
    origin: list[int] = []
    for e, (src, dst, colour) in enumerate(arena.edges):
        for q in range(nq):
            if colour is None:
                edges.append((src * nq + q, dst * nq + q, neutral))
            else:
                q2, out_colour = aut.delta[q][remap[colour]]
                edges.append((src * nq + q, dst * nq + q2,
                              priorities[out_colour]))
            origin.append(e)
    game = ParityGame(eve, arena.initial * nq + aut.initial, tuple(edges))
    return ParityProduct(game, nq, tuple(origin))


# ---------------------------------------------------------------------------
# Solving games with an explicit Muller condition on the colours.

def solve_muller_game(arena: Arena, cond: MullerCondition):
    """Winner from the initial vertex and, when the colour player wins, a
    strategy built on the colour-tracking memory of the condition's parity
    automaton.

    Returns (winner, memory, table) with memory and table set to None when
    the opponent wins.  The memory is chromatic: its states are the states of
    the parity automaton for the condition and it advances by reading colours.
    """
    for sym in arena.colours.symbols:
        if sym not in cond.alphabet:
            raise MalformedInput(f"arena colour {sym!r} missing from the condition")
    aut = parity_automaton(cond)
    product = product_with_parity(arena, aut)
    solution = solve_parity_game(product.game)
    if product.game.initial not in solution.eve_region:
        return "adam", None, None
    nq = aut.n_states
    remap = [aut.input_alphabet.position(sym) for sym in arena.colours.symbols]
    update = tuple(tuple(aut.delta[m][remap[c]][0] for c in range(len(arena.colours)))
                   for m in range(nq))
    memory = MemoryStructure("chromatic", nq, aut.initial, update)
    moves: dict[tuple[int, int], int] = {}
    for v in range(arena.n_vertices):
        if not arena.eve[v]:
            continue
        for m in range(nq):
            node = product.vertex(v, m)
            if node in solution.eve_strategy:
                moves[(v, m)] = product.edge_origin[solution.eve_strategy[node]]
            else:
                moves[(v, m)] = arena.out_edges(v)[0]
    return "eve", memory, StrategyTable.from_dict(moves)


def _config_graph(arena: Arena, memory: MemoryStructure, move):
    """Reachable (vertex, memory) graph under a strategy lookup function."""
    start = (arena.initial, memory.initial)
    index: dict[tuple[int, int], int] = {start: 0}
    queue = [start]
    edges: list[tuple[int, int, Optional[int]]] = []
    while queue:
        v, m = queue.pop(0)
        src = index[(v, m)]
        if arena.eve[v]:
            chosen = move(v, m)
            if chosen not in arena.out_edges(v):
                raise MalformedInput(
                    f"strategy picks edge {chosen} which does not leave vertex {v}")
            options = [chosen]
        else:
            options = list(arena.out_edges(v))
        for e in options:
            _, dst, colour = arena.edges[e]
            m2 = memory.step(m, e, colour)
            key = (dst, m2)
            if key not in index:
                index[key] = len(index)
                queue.append(key)
            edges.append((src, index[key], colour))
    return index, edges


def _all_cycle_sets_accepting(cond: MullerCondition, arena: Arena,
                              edges, n_nodes: int,
                              max_colour_bits: int = 14) -> bool:
    """Check every realizable colour set of the graph against the condition."""
    for _, internal in strongly_connected_components(range(n_nodes), edges):
        if not internal:
            continue
        cover = 0
        for _, _, colour in internal:
            if colour is not None:
                cover |= 1 << colour
        if cover.bit_count() > max_colour_bits:
            raise ScaleGuard("too many distinct colours in one component")
        comp_edges = internal
        for colour_set in submasks(cover):
            sub = [e for e in comp_edges
                   if e[2] is None or (1 << e[2]) & colour_set]
            for _, inner in strongly_connected_components(range(n_nodes), sub):
                actual = 0
                for _, _, colour in inner:
                    if colour is not None:
                        actual |= 1 << colour
                if actual == colour_set:
                    # translate arena colour positions into condition bits
                    bits = 0
                    for c in range(len(arena.colours)):
                        if (colour_set >> c) & 1:
                            bits |= cond.alphabet.bit(arena.colours.symbols[c])
                    if not cond.admits(bits):
                        return False
                    break
    return True


def verify_strategy(arena: Arena, cond: MullerCondition,
                    memory: MemoryStructure, table: StrategyTable, *,
                    max_configs: int = 20000) -> bool:
    """Check a strategy: every cycle of the strategy-restricted configuration
    graph must produce an accepting colour set.

    Structural problems (wrong table domain, wrong memory width) raise
    malformed-input errors; a losing strategy simply returns False.
    """
    if not memory.width_matches(arena):
        raise MalformedInput("memory update width does not match the arena")
    for sym in arena.colours.symbols:
        if sym not in cond.alphabet:
            raise MalformedInput(f"arena colour {sym!r} missing from the condition")
    index, edges = _config_graph(arena, memory, table.move)
    if len(index) > max_configs:
        raise ScaleGuard(f"configuration graph above {max_configs} nodes")
    return _all_cycle_sets_accepting(cond, arena, edges, len(index))


def min_chromatic_memory_exhaustive(arena: Arena, cond: MullerCondition,
                                    max_size: int) -> Optional[int]:
    """Least memory size winning the game with colour-driven updates.

    For each size, every canonical colour-update structure is paired with a
    depth-first search over strategy tables on the reachable configurations;
    the first size admitting a verified winning pair is returned, or None
    when none up to max_size works.
    """
    g = len(arena.colours)
    if g > 8 or arena.n_vertices * max_size > 400:
        raise ScaleGuard("exhaustive memory search limited to small games")
    for size in range(1, max_size + 1):
        for flat in canonical_structures(size, g):
            update = tuple(tuple(flat[m * g + c] for c in range(g))
                           for m in range(size))
            memory = MemoryStructure("chromatic", size, 0, update)
            if _exists_winning_table(arena, cond, memory):
                return size
    return None


def _exists_winning_table(arena: Arena, cond: MullerCondition,
                          memory: MemoryStructure) -> bool:
    """Depth-first search over strategy tables on reachable configurations.

    Configurations are discovered as choices are made; the opponent's moves
    are expanded eagerly, the colour player's lazily.  After every choice the
    partial graph is checked: a rejecting realizable colour set can only
    survive further choices (edges are only ever added), so any violation
    prunes the whole subtree.
    """
    index: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []  # discovery order, for undo
    eve_configs: list[tuple[int, int]] = []
    edges: list[tuple[int, int, Optional[int]]] = []
    assignment: dict[tuple[int, int], int] = {}

    def discover(cfg) -> None:
        if cfg in index:
            return
        index[cfg] = len(index)
        order.append(cfg)
        v, m = cfg
        if arena.eve[v]:
            eve_configs.append(cfg)
            return
        for e in arena.out_edges(v):
            _, dst, colour = arena.edges[e]
            nxt = (dst, memory.step(m, e, colour))
            discover(nxt)
            edges.append((index[cfg], index[nxt], colour))

    def explore(cursor: int) -> bool:
        while cursor < len(eve_configs) and eve_configs[cursor] in assignment:
            cursor += 1
        if cursor == len(eve_configs):
            return True  # the check after the last choice covered the graph
        cfg = eve_configs[cursor]
        v, m = cfg
        for e in arena.out_edges(v):
            saved_nodes, saved_edges = len(order), len(edges)
            saved_eve = len(eve_configs)
            _, dst, colour = arena.edges[e]
            nxt = (dst, memory.step(m, e, colour))
            discover(nxt)
            edges.append((index[cfg], index[nxt], colour))
            assignment[cfg] = e
            if (_all_cycle_sets_accepting(cond, arena, edges, len(index))
                    and explore(cursor + 1)):
                return True
            del assignment[cfg]
            for gone in order[saved_nodes:]:
                del index[gone]
            del order[saved_nodes:]
            del eve_configs[saved_eve:]
            del edges[saved_edges:]
        return False

    discover((arena.initial, memory.initial))
    if not _all_cycle_sets_accepting(cond, arena, edges, len(index)):
        return False
    return explore(0)


# ---------------------------------------------------------------------------
# Condition families and named arenas used across examples and experiments.

def exactly_two_colours(symbols) -> MullerCondition:
    """Accepting sets are exactly the two-element colour sets."""
    alphabet = symbols if isinstance(symbols, Alphabet) else Alphabet(tuple(symbols))
    family = frozenset(bits for bits in range(1, alphabet.full_mask + 1)
                       if bits.bit_count() == 2)
    return MullerCondition(alphabet, family)


def at_least_two_colours(symbols) -> MullerCondition:
    """Accepting sets are the colour sets with two or more elements."""
    alphabet = symbols if isinstance(symbols, Alphabet) else Alphabet(tuple(symbols))
    family = frozenset(bits for bits in range(1, alphabet.full_mask + 1)
                       if bits.bit_count() >= 2)
    return MullerCondition(alphabet, family)


def separation_game() -> Arena:
    """Arena separating colour-driven from unrestricted memory.

    The opponent once picks one of three loop gadgets; each gadget offers two
    loops through private middle vertices, and the colour player must keep
    alternating the gadget's two loop colours forever.  Two memory states
    driven by colours cannot do it, two driven by edges can.
    """
    colours = Alphabet(("a", "b", "c"))
    a, b, c = 0, 1, 2
    eve = (False, True, True, True, True, True, True, True, True, True)
    edges = (
        (0, 1, a), (0, 2, a), (0, 3, a),
        (1, 4, a), (1, 5, b),
        (2, 6, b), (2, 7, c),
        (3, 8, a), (3, 9, c),
        (4, 1, a), (5, 1, b),
        (6, 2, b), (7, 2, c),
        (8, 3, a), (9, 3, c),
    )
    return Arena(colours, eve, 0, edges)


def separation_condition() -> MullerCondition:
    return exactly_two_colours(("a", "b", "c"))


def separation_chromatic_memory() -> tuple[MemoryStructure, StrategyTable]:
    """Three colour-driven memory states (the last colour read) winning the
    separation arena: always leave by the smallest loop colour different
    from the memorised one."""
    memory = MemoryStructure("chromatic", 3, 0, ((0, 1, 2), (0, 1, 2), (0, 1, 2)))
    moves = {
        (1, 0): 4, (1, 1): 3, (1, 2): 3,
        (2, 0): 5, (2, 1): 6, (2, 2): 5,
        (3, 0): 8, (3, 1): 7, (3, 2): 7,
        (4, 0): 9, (4, 1): 9, (4, 2): 9,
        (5, 0): 10, (5, 1): 10, (5, 2): 10,
        (6, 0): 11, (6, 1): 11, (6, 2): 11,
        (7, 0): 12, (7, 1): 12, (7, 2): 12,
        (8, 0): 13, (8, 1): 13, (8, 2): 13,
        (9, 0): 14, (9, 1): 14, (9, 2): 14,
    }
    return memory, StrategyTable.from_dict(moves)


def separation_general_memory() -> tuple[MemoryStructure, StrategyTable]:
    """Two edge-driven memory states winning the separation arena: flip on
    every return edge of a gadget, and let the flip choose the next loop."""
    flips = {9, 10, 11, 12, 13, 14}
    row0 = tuple(1 if e in flips else 0 for e in range(15))
    row1 = tuple(0 if e in flips else 1 for e in range(15))
    memory = MemoryStructure("general", 2, 0, (row0, row1))
    moves = {
        (1, 0): 3, (1, 1): 4,
        (2, 0): 5, (2, 1): 6,
        (3, 0): 7, (3, 1): 8,
        (4, 0): 9, (4, 1): 9,
        (5, 0): 10, (5, 1): 10,
        (6, 0): 11, (6, 1): 11,
        (7, 0): 12, (7, 1): 12,
        (8, 0): 13, (8, 1): 13,
        (9, 0): 14, (9, 1): 14,
    }
    return memory, StrategyTable.from_dict(moves)


def two_cycle_game(first_colours, second_colours, symbols) -> Arena:
    """One choice vertex with two coloured cycles hanging off it."""
    alphabet = symbols if isinstance(symbols, Alphabet) else Alphabet(tuple(symbols))
    first = [alphabet.position(s) for s in first_colours]
    second = [alphabet.position(s) for s in second_colours]
    if not first or not second:
        raise MalformedInput("both cycles need at least one colour")
    edges: list[tuple[int, int, Optional[int]]] = []
    n = 1

    def add_cycle(colour_list):
        nonlocal n
        prev = 0
        for i, c in enumerate(colour_list):
            last = i == len(colour_list) - 1
            target = 0 if last else n
            edges.append((prev, target, c))
            if not last:
                prev = n
                n += 1

    add_cycle(first)
    add_cycle(second)
    eve = tuple(True for _ in range(n))
    return Arena(alphabet, eve, 0, tuple(edges))


# ---------------------------------------------------------------------------
# Two memory states suffice for "at least two colours" without silent edges.

def two_state_memory_min2(arena: Arena, n_colours: Optional[int] = None
                          ) -> tuple[MemoryStructure, StrategyTable]:
    """Build a two-state edge-driven winning memory for the condition
    'at least two distinct colours appear infinitely often'.

    Only defined on arenas without silent edges that the colour player wins
    from the initial vertex.  Each winning vertex of the colour player gets a
    base edge; in state zero she plays it and switches to state one, where
    she follows a uniform reachability strategy chasing a colour different
    from the base one.  The memory drops back to state zero when her move
    produces such a colour, and also whenever any edge arrives at one of her
    vertices whose base colour differs from the colour just produced, so a
    play that keeps showing a single colour would keep replaying base edges
    of exactly that colour and drive the chase ranking down forever.
    """
    if not arena.epsilon_free:
        raise PreconditionViolation("arena must have no silent edges")
    g = len(arena.colours)
    if n_colours is not None and n_colours != g:
        raise MalformedInput("declared colour count does not match the arena")
    if g < 2:
        raise PreconditionViolation("need at least two colours in the arena")
    cond = at_least_two_colours(arena.colours)
    aut = parity_automaton(cond)
    product = product_with_parity(arena, aut)
    solution = solve_parity_game(product.game)
    nq = aut.n_states
    region = {v for v in range(arena.n_vertices)
              if product.vertex(v, aut.initial) in solution.eve_region}
    if arena.initial not in region:
        raise PropertyViolation("the colour player loses from the initial vertex")
    inside: dict[int, list[int]] = {}
    for v in sorted(region):
        kept = []
        for e in arena.out_edges(v):
            _, dst, _ = arena.edges[e]
            if dst in region:
                kept.append(e)
            elif not arena.eve[v]:
                raise PropertyViolation(
                    "winning region is not closed under the opponent's moves")
        if not kept:
            raise PropertyViolation(
                f"vertex {v} of the winning region has no edge staying inside it")
        inside[v] = kept
    base_edge = {v: inside[v][0] for v in inside}
    base_colour = {v: arena.edges[base_edge[v]][2] for v in inside}

    def chase_strategy(avoid: int) -> dict[int, int]:
        """Uniform positional strategy whose every play, from every region
        vertex, keeps traversing edges coloured differently from avoid."""
        done: dict[int, int] = {}
        while len(done) < len(inside):
            progressed = False
            for v in sorted(inside):
                if v in done:
                    continue
                good = [e for e in inside[v]
                        if arena.edges[e][2] != avoid or arena.edges[e][1] in done]
                if arena.eve[v]:
                    if good:
                        done[v] = good[0]
                        progressed = True
                elif len(good) == len(inside[v]):
                    done[v] = -1
                    progressed = True
            if not progressed:
                raise PropertyViolation(
                    "a region vertex cannot force a colour other than"
                    f" {arena.colours.symbols[avoid]!r}; the region is wrong")
        return done

    chase = {x: chase_strategy(x) for x in range(g)}
    n_edges = len(arena.edges)
    row0 = [0] * n_edges
    row1 = [1] * n_edges
    for e, (src, dst, colour) in enumerate(arena.edges):
        # restart the base phase on arrival at a colour-player vertex whose
        # base colour disagrees with the colour just produced: its base edge
        # is played next, so a disagreeing colour is produced immediately
        if arena.eve[dst] and dst in region and base_colour[dst] != colour:
            row0[e] = 0
            row1[e] = 0
        elif arena.eve[src] and src in region:
            row0[e] = 1  # base edge played, start chasing
            row1[e] = 0 if colour != base_colour[src] else 1
        # anything else (the opponent's moves in particular) keeps the state
    memory = MemoryStructure("general", 2, 0, (tuple(row0), tuple(row1)))
    moves: dict[tuple[int, int], int] = {}
    for v in range(arena.n_vertices):
        if not arena.eve[v]:
            continue
        if v in region:
            moves[(v, 0)] = base_edge[v]
            moves[(v, 1)] = chase[base_colour[v]][v]
        else:
            moves[(v, 0)] = arena.out_edges(v)[0]
            moves[(v, 1)] = arena.out_edges(v)[0]
    return memory, StrategyTable.from_dict(moves)


# ---------------------------------------------------------------------------
# JSON encoding of arenas, memories and strategies.

def arena_to_json(arena: Arena, cond: Optional[MullerCondition] = None) -> dict:
    data = {
        "vertices": [{"id": v, "owner": "eve" if arena.eve[v] else "adam"}
                     for v in range(arena.n_vertices)],
        "initial": arena.initial,
        "edges": [{"from": src, "to": dst,
                   "colour": None if colour is None else arena.colours.symbols[colour]}
                  for src, dst, colour in arena.edges],
    }
    if cond is not None:
        data["condition"] = condition_to_json(cond)
    return data


def arena_from_json(data: object) -> tuple[Arena, Optional[MullerCondition]]:
    if not isinstance(data, dict):
        raise MalformedInput("game must be a JSON object")
    for field_name in ("vertices", "initial", "edges"):
        if field_name not in data:
            raise MalformedInput(f"game is missing field '{field_name}'")
    vertices = data["vertices"]
    if not isinstance(vertices, list):
        raise MalformedInput("field 'vertices' must be a list")
    eve = []
    for i, entry in enumerate(vertices):
        if not isinstance(entry, dict) or entry.get("id") != i:
            raise MalformedInput("vertex ids must be 0,1,... in order")
        owner = entry.get("owner")
        if owner not in ("eve", "adam"):
            raise MalformedInput(f"vertex {i} owner must be 'eve' or 'adam'")
        eve.append(owner == "eve")
    cond = None
    if "condition" in data and data["condition"] is not None:
        cond = condition_from_json(data["condition"])
    raw_edges = data["edges"]
    if not isinstance(raw_edges, list):
        raise MalformedInput("field 'edges' must be a list")
    colour_names: list[str] = []
    if cond is not None:
        colour_names = list(cond.alphabet.symbols)
    else:
        for entry in raw_edges:
            if isinstance(entry, dict) and isinstance(entry.get("colour"), str):
                if entry["colour"] not in colour_names:
                    colour_names.append(entry["colour"])
    if not colour_names:
        raise MalformedInput("game uses no colours at all")
    alphabet = Alphabet(tuple(colour_names))
    edges = []
    for entry in raw_edges:
        if not isinstance(entry, dict):
            raise MalformedInput("each edge must be an object")
        src, dst = entry.get("from"), entry.get("to")
        if not isinstance(src, int) or not isinstance(dst, int):
            raise MalformedInput("edge endpoints must be integers")
        colour = entry.get("colour")
        edges.append((src, dst,
                      None if colour is None else alphabet.position(colour)))
    if not isinstance(data["initial"], int):
        raise MalformedInput("field 'initial' must be an integer")
    return Arena(alphabet, tuple(eve), data["initial"], tuple(edges)), cond


def strategy_to_json(memory: MemoryStructure, table: StrategyTable,
                     arena: Arena) -> dict:
    if memory.kind == "chromatic":
        update = [[m, arena.colours.symbols[c], memory.update[m][c]]
                  for m in range(memory.size) for c in range(len(arena.colours))]
    else:
        update = [[m, e, memory.update[m][e]]
                  for m in range(memory.size) for e in range(len(arena.edges))]
    return {
        "memory": {"states": memory.size, "initial": memory.initial,
                   "kind": memory.kind, "update": update},
        "table": [{"vertex": v, "mstate": m, "edge": e}
                  for v, m, e in table.moves],
    }


def strategy_from_json(data: object, arena: Arena
                       ) -> tuple[MemoryStructure, StrategyTable]:
    if not isinstance(data, dict) or "memory" not in data or "table" not in data:
        raise MalformedInput("strategy needs 'memory' and 'table' fields")
    mem = data["memory"]
    if not isinstance(mem, dict):
        raise MalformedInput("field 'memory' must be an object")
    for field_name in ("states", "initial", "kind", "update"):
        if field_name not in mem:
            raise MalformedInput(f"memory is missing field '{field_name}'")
    size = mem["states"]
    kind = mem["kind"]
    if kind not in ("general", "chromatic"):
        raise MalformedInput("memory kind must be 'general' or 'chromatic'")
    width = len(arena.colours) if kind == "chromatic" else len(arena.edges)
    rows = [[None] * width for _ in range(size)]
    if not isinstance(mem["update"], list):
        raise MalformedInput("memory field 'update' must be a list")
    for entry in mem["update"]:
        if not isinstance(entry, list) or len(entry) != 3:
            raise MalformedInput("each update entry must be [state, key, state]")
        m, key, m2 = entry
        if kind == "chromatic":
            column = arena.colours.position(key)
        else:
            if not isinstance(key, int) or not 0 <= key < len(arena.edges):
                raise MalformedInput(f"update key {key!r} is not an edge id")
            column = key
        if not (isinstance(m, int) and isinstance(m2, int)
                and 0 <= m < size and 0 <= m2 < size):
            raise MalformedInput("update states out of range")
        if rows[m][column] is not None:
            raise MalformedInput("duplicate update entry")
        rows[m][column] = m2
    for m in range(size):
        for column in range(width):
            if rows[m][column] is None:
                raise MalformedInput(f"memory update row {m} is incomplete")
    memory = MemoryStructure(kind, size, mem["initial"],
                             tuple(tuple(row) for row in rows))
    if not isinstance(data["table"], list):
        raise MalformedInput("field 'table' must be a list")
    moves = {}
    for entry in data["table"]:
        if not isinstance(entry, dict):
            raise MalformedInput("each table entry must be an object")
        v, m, e = entry.get("vertex"), entry.get("mstate"), entry.get("edge")
        if not all(isinstance(x, int) for x in (v, m, e)):
            raise MalformedInput("table entries need integer vertex, mstate, edge")
        if (v, m) in moves:
            raise MalformedInput(f"duplicate table entry for vertex {v}, memory {m}")
        moves[(v, m)] = e
    return memory, StrategyTable.from_dict(moves)

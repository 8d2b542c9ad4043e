"""Deterministic complete transition-based automata over coloured transitions.

States are integers, alphabets are ordered tuples of symbol names, and colour
sets are plain int bitsets indexed by alphabet position.  Acceptance only
depends on the set of colours produced infinitely often, so every semantic
question reduces to questions about cycles and their colour sets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

MAX_ALPHABET = 64


class MullerToolsError(Exception):
    """Base class for errors raised by this package."""


class MalformedInput(MullerToolsError):
    """Input data (file, symbol, structure) does not satisfy its schema."""


class PreconditionViolation(MullerToolsError):
    """An operation was called outside its stated domain."""


class UnsupportedOperation(MullerToolsError):
    """The acceptance kind does not support the requested operation."""


class ScaleGuard(MullerToolsError):
    """The instance exceeds the documented size limits for this operation."""


class PropertyViolation(MullerToolsError):
    """A required semantic property fails; carries a witness when available."""


def bit_indices(bits: int) -> Iterator[int]:
    """Yield the set bit positions of a bitset, ascending."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def submasks(mask: int) -> Iterator[int]:
    """Yield all non-empty submasks of a bitset, descending."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of symbol names with bitset encoding."""

    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.symbols, tuple):
            object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise MalformedInput("alphabet must not be empty")
        if len(self.symbols) > MAX_ALPHABET:
            raise MalformedInput(
                f"alphabet has {len(self.symbols)} symbols, limit is {MAX_ALPHABET}")
        index: dict[str, int] = {}
        for i, sym in enumerate(self.symbols):
            if not isinstance(sym, str) or not sym:
                raise MalformedInput(f"symbol {sym!r} must be a non-empty string")
            if sym in index:
                raise MalformedInput(f"duplicate symbol {sym!r}")
            index[sym] = i
        object.__setattr__(self, "_index", index)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __contains__(self, symbol: str) -> bool:
        return symbol in self._index  # type: ignore[attr-defined]

    @property
    def full_mask(self) -> int:
        return (1 << len(self.symbols)) - 1

    def position(self, symbol: str) -> int:
        try:
            return self._index[symbol]  # type: ignore[attr-defined]
        except KeyError:
            raise MalformedInput(f"unknown symbol {symbol!r}") from None

    def bit(self, symbol: str) -> int:
        return 1 << self.position(symbol)

    def bits(self, symbols: Iterable[str]) -> int:
        out = 0
        for sym in symbols:
            out |= self.bit(sym)
        return out

    def names(self, bits: int) -> tuple[str, ...]:
        if bits & ~self.full_mask:
            raise MalformedInput("bitset refers to symbols outside the alphabet")
        return tuple(self.symbols[i] for i in bit_indices(bits))


@dataclass(frozen=True)
class MullerCondition:
    """Explicit family of accepting colour sets over a finite alphabet."""

    alphabet: Alphabet
    accepting: frozenset[int]

    def __post_init__(self) -> None:
        full = self.alphabet.full_mask
        for bits in self.accepting:
            if bits == 0:
                raise MalformedInput("accepting family must not contain the empty set")
            if bits & ~full:
                raise MalformedInput("accepting set uses symbols outside the alphabet")

    @classmethod
    def make(cls, symbols: Iterable[str],
             accepting_sets: Iterable[Iterable[str]]) -> "MullerCondition":
        alphabet = symbols if isinstance(symbols, Alphabet) else Alphabet(tuple(symbols))
        family = set()
        for group in accepting_sets:
            bits = alphabet.bits(group)
            if bits:  # the empty set can never be produced infinitely often
                family.add(bits)
        return cls(alphabet, frozenset(family))

    def admits(self, bits: int) -> bool:
        if bits <= 0:
            raise PreconditionViolation("membership query on an empty colour set")
        if bits & ~self.alphabet.full_mask:
            raise MalformedInput("colour set uses symbols outside the alphabet")
        return bits in self.accepting

    def sets_as_names(self) -> list[tuple[str, ...]]:
        return [self.alphabet.names(bits) for bits in sorted(self.accepting)]


def complement_condition(cond: MullerCondition) -> MullerCondition:
    """Family complement over the non-empty subsets of the alphabet."""
    full = cond.alphabet.full_mask
    rest = frozenset(s for s in submasks(full) if s not in cond.accepting)
    return MullerCondition(cond.alphabet, rest)


@dataclass(frozen=True)
class MullerAcceptance:
    condition: MullerCondition
    kind = "muller"


@dataclass(frozen=True)
class ParityAcceptance:
    """One priority per output symbol; a colour set wins if its top priority is even."""

    priorities: tuple[int, ...]
    kind = "parity"

    def __post_init__(self) -> None:
        if not self.priorities:
            raise MalformedInput("parity acceptance needs at least one priority")
        for p in self.priorities:
            if not isinstance(p, int) or p < 0:
                raise MalformedInput(f"priority {p!r} must be a non-negative integer")


@dataclass(frozen=True)
class RabinAcceptance:
    """Pairs of colour bitsets; a set wins if it meets some pair's first
    component and avoids that pair's second component."""

    pairs: tuple[tuple[int, int], ...]
    kind = "rabin"


@dataclass(frozen=True)
class StreettAcceptance:
    """Pairs of colour bitsets; a set wins if for every pair, meeting the
    first component implies meeting the second."""

    pairs: tuple[tuple[int, int], ...]
    kind = "streett"


@dataclass(frozen=True)
class GenBuchiAcceptance:
    """A set wins if it meets every listed bitset (an empty member is unsatisfiable)."""

    sets: tuple[int, ...]
    kind = "genbuchi"


@dataclass(frozen=True)
class GenCoBuchiAcceptance:
    """A set wins if it avoids some listed bitset entirely."""

    sets: tuple[int, ...]
    kind = "gencobuchi"


Acceptance = Union[MullerAcceptance, ParityAcceptance, RabinAcceptance,
                   StreettAcceptance, GenBuchiAcceptance, GenCoBuchiAcceptance]


def accepting_colour_set(acceptance: Acceptance, bits: int) -> bool:
    """Decide whether a non-empty colour bitset satisfies the acceptance."""
    if bits <= 0:
        raise PreconditionViolation("acceptance query on an empty colour set")
    kind = acceptance.kind
    if kind == "muller":
        return acceptance.condition.admits(bits)
    if kind == "parity":
        if bits >> len(acceptance.priorities):
            raise MalformedInput("colour set uses symbols outside the alphabet")
        return max(acceptance.priorities[i] for i in bit_indices(bits)) % 2 == 0
    if kind == "rabin":
        return any(bits & first and not bits & second
                   for first, second in acceptance.pairs)
    if kind == "streett":
        return all(not bits & first or bits & second
                   for first, second in acceptance.pairs)
    if kind == "genbuchi":
        return all(bits & s for s in acceptance.sets)
    if kind == "gencobuchi":
        return any(not bits & s for s in acceptance.sets)
    raise UnsupportedOperation(f"unknown acceptance kind {kind!r}")


def dualise(acceptance: Acceptance) -> Acceptance:
    """Swap an acceptance with its complement-language counterpart.

    Rabin pairs become the same pairs read as Streett and conversely; a
    conjunction of met sets becomes a disjunction of avoided sets and
    conversely.  Applying the function twice returns the original value.
    """
    kind = acceptance.kind
    if kind == "rabin":
        return StreettAcceptance(acceptance.pairs)
    if kind == "streett":
        return RabinAcceptance(acceptance.pairs)
    if kind == "genbuchi":
        return GenCoBuchiAcceptance(acceptance.sets)
    if kind == "gencobuchi":
        return GenBuchiAcceptance(acceptance.sets)
    raise UnsupportedOperation(f"no dual form implemented for kind {kind!r}")


@dataclass(frozen=True)
class Automaton:
    """Deterministic complete automaton with one output colour per transition.

    delta[q][a] is a (next_state, output_position) pair; rows are indexed by
    input alphabet position.  Instances built through build_automaton are in
    canonical form: states are numbered in breadth-first discovery order from
    the initial state and unreachable states are dropped.
    """

    n_states: int
    initial: int
    input_alphabet: Alphabet
    output_alphabet: Alphabet
    delta: tuple[tuple[tuple[int, int], ...], ...]
    acceptance: Acceptance

    def __post_init__(self) -> None:
        if self.n_states <= 0:
            raise MalformedInput("automaton needs at least one state")
        if not 0 <= self.initial < self.n_states:
            raise MalformedInput("initial state out of range")
        if len(self.delta) != self.n_states:
            raise MalformedInput("transition table must have one row per state")
        width = len(self.input_alphabet)
        n_out = len(self.output_alphabet)
        for row in self.delta:
            if len(row) != width:
                raise MalformedInput("transition row width must match the input alphabet")
            for target, colour in row:
                if not 0 <= target < self.n_states:
                    raise MalformedInput("transition target out of range")
                if not 0 <= colour < n_out:
                    raise MalformedInput("transition colour out of range")

    def successor(self, state: int, symbol: str) -> tuple[int, int]:
        return self.delta[state][self.input_alphabet.position(symbol)]

    def edges(self) -> Iterator[tuple[int, int, int, int]]:
        """Yield (state, input_position, target, output_position) for every transition."""
        for q, row in enumerate(self.delta):
            for a, (target, colour) in enumerate(row):
                yield q, a, target, colour

    def used_output_bits(self) -> int:
        bits = 0
        for row in self.delta:
            for _, colour in row:
                bits |= 1 << colour
        return bits


def build_automaton(*, initial: int,
                    transitions: Mapping[tuple[int, str], tuple[int, str]],
                    input_symbols: Iterable[str],
                    output_symbols: Iterable[str],
                    acceptance: Acceptance) -> Automaton:
    """Assemble an automaton and normalise it.

    transitions maps (state, input symbol) to (state, output symbol) and must
    be complete on every state reachable from the initial one.  Reachable
    states are renumbered in breadth-first discovery order, input symbols
    taken in alphabet order, and unreachable states are discarded.
    """
    inp = input_symbols if isinstance(input_symbols, Alphabet) else Alphabet(tuple(input_symbols))
    out = output_symbols if isinstance(output_symbols, Alphabet) else Alphabet(tuple(output_symbols))
    order: dict[int, int] = {initial: 0}
    queue = [initial]
    rows: list[tuple[tuple[int, int], ...]] = []
    while queue:
        state = queue.pop(0)
        row: list[tuple[int, int]] = []
        for sym in inp.symbols:
            try:
                target, colour = transitions[(state, sym)]
            except KeyError:
                raise MalformedInput(
                    f"missing transition from state {state} on {sym!r}") from None
            if target not in order:
                order[target] = len(order)
                queue.append(target)
            row.append((order[target], out.position(colour)))
        rows.append(row)
    # rows were produced in discovery order, so the table is already canonical
    return Automaton(len(rows), 0, inp, out,
                     tuple(tuple(row) for row in rows), acceptance)


def normalise(aut: Automaton) -> Automaton:
    """Renumber states in breadth-first discovery order and drop unreachable ones."""
    transitions = {}
    for q, a, target, colour in aut.edges():
        transitions[(q, aut.input_alphabet.symbols[a])] = (
            target, aut.output_alphabet.symbols[colour])
    return build_automaton(initial=aut.initial, transitions=transitions,
                           input_symbols=aut.input_alphabet,
                           output_symbols=aut.output_alphabet,
                           acceptance=aut.acceptance)


def strongly_connected_components(
        vertices: Iterable[int],
        edges: Sequence[tuple],
) -> list[tuple[tuple[int, ...], tuple[tuple, ...]]]:
    """Tarjan strongly connected components of a directed multigraph.

    edges are (src, dst) or (src, dst, payload) tuples.  Returns a list of
    (sorted vertex tuple, internal edge tuple) pairs ordered by smallest
    vertex; internal edges keep their given order.
    """
    verts = sorted(set(vertices))
    succ: dict[int, list[int]] = {v: [] for v in verts}
    for e in edges:
        src, dst = e[0], e[1]
        if src in succ and dst in succ:
            succ[src].append(dst)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comp_of: dict[int, int] = {}
    counter = 0
    n_comps = 0
    for root in verts:
        if root in index:
            continue
        # iterative Tarjan: (vertex, iterator position)
        work = [(root, 0)]
        while work:
            v, pos = work[-1]
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            advanced = False
            children = succ[v]
            while pos < len(children):
                w = children[pos]
                pos += 1
                if w not in index:
                    work[-1] = (v, pos)
                    work.append((w, 0))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp_of[w] = n_comps
                    if w == v:
                        break
                n_comps += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    members: list[list[int]] = [[] for _ in range(n_comps)]
    for v, c in comp_of.items():
        members[c].append(v)
    internal: list[list[tuple]] = [[] for _ in range(n_comps)]
    for e in edges:
        src, dst = e[0], e[1]
        if src in comp_of and comp_of[src] == comp_of.get(dst, -1):
            internal[comp_of[src]].append(e)
    comps = [(tuple(sorted(m)), tuple(internal[c])) for c, m in enumerate(members)]
    comps.sort(key=lambda pair: pair[0][0])
    return comps


def ergodic_components(
        vertices: Iterable[int],
        edges: Sequence[tuple],
) -> list[tuple[tuple[int, ...], tuple[tuple, ...]]]:
    """Strongly connected components with no edge leaving them."""
    comps = strongly_connected_components(vertices, edges)
    comp_of: dict[int, int] = {}
    for i, (mem, _) in enumerate(comps):
        for v in mem:
            comp_of[v] = i
    leaky: set[int] = set()
    for e in edges:
        src, dst = e[0], e[1]
        if src in comp_of and dst in comp_of and comp_of[src] != comp_of[dst]:
            leaky.add(comp_of[src])
    return [comps[i] for i in range(len(comps)) if i not in leaky]


def _realizable_sets_all(n_states: int,
                         edges: Sequence[tuple[int, int, int]],
                         *, guard_bits: int = 20) -> list[set[int]]:
    """Colour bitsets realizable as cycles, per state.

    edges are (src, dst, colour_bit) with colour_bit a single-bit bitset.  A
    bitset C is realizable at a state when some strongly connected set of
    edges through that state uses exactly the colours in C.
    """
    used = 0
    for _, _, bit in edges:
        used |= bit
    if used.bit_count() > guard_bits:
        raise ScaleGuard(
            f"{used.bit_count()} distinct colours on cycles exceeds the"
            f" 2^{guard_bits} subset enumeration limit")
    result: list[set[int]] = [set() for _ in range(n_states)]
    for colour_set in submasks(used):
        sub = [e for e in edges if e[2] & colour_set]
        if not sub:
            continue
        for comp, internal in strongly_connected_components(range(n_states), sub):
            if not internal:
                continue
            coverage = 0
            for _, _, bit in internal:
                coverage |= bit
            if coverage == colour_set:
                for v in comp:
                    result[v].add(colour_set)
    return result


def realizable_cycle_sets(aut: Automaton, state: int, *, over: str = "output") -> frozenset[int]:
    """All colour bitsets realizable as cycles through the given state.

    over selects whether edge colours are taken from the output colouring
    (default) or from the input symbols.
    """
    if not 0 <= state < aut.n_states:
        raise MalformedInput("state out of range")
    if over not in ("output", "input"):
        raise MalformedInput("over must be 'output' or 'input'")
    edges = []
    for q, a, target, colour in aut.edges():
        bit = 1 << (colour if over == "output" else a)
        edges.append((q, target, bit))
    return frozenset(_realizable_sets_all(aut.n_states, edges)[state])


@dataclass(frozen=True)
class PeriodicWord:
    """An ultimately periodic word: finite prefix followed by a repeated block."""

    prefix: tuple[str, ...]
    period: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.period:
            raise MalformedInput("periodic word needs a non-empty period")


def accepts_up_word(aut: Automaton, word: PeriodicWord) -> bool:
    """Run the automaton on prefix . period^infinity and test the acceptance.

    This is the reference language oracle: it finds the entry point of the
    lasso the run settles into, collects the output colours produced along
    that loop, and evaluates the acceptance on them.
    """
    state = aut.initial
    for sym in word.prefix:
        state, _ = aut.successor(state, sym)
    # iterate the period until the state at the start of a block repeats
    seen = {state: 0}
    states_at_block = [state]
    while True:
        for sym in word.period:
            state, _ = aut.successor(state, sym)
        if state in seen:
            loop_start = seen[state]
            break
        seen[state] = len(states_at_block)
        states_at_block.append(state)
    colours = 0
    state = states_at_block[loop_start]
    for _ in range(loop_start, len(states_at_block)):
        for sym in word.period:
            state, colour = aut.successor(state, sym)
            colours |= 1 << colour
    return accepting_colour_set(aut.acceptance, colours)


def max_inclusion(family: Iterable[int]) -> list[int]:
    """Inclusion-maximal bitsets of a family, ascending, duplicates removed."""
    items = sorted(set(family))
    out = []
    for i, s in enumerate(items):
        if not any(t != s and s & t == s for t in items):
            out.append(s)
    return out


# ---------------------------------------------------------------------------
# JSON encoding.  All emitters produce deterministic key and element orders so
# repeated runs are byte-identical.

def condition_to_json(cond: MullerCondition) -> dict:
    return {
        "alphabet": list(cond.alphabet.symbols),
        "accepting": [list(cond.alphabet.names(bits)) for bits in sorted(cond.accepting)],
    }


def condition_from_json(data: object) -> MullerCondition:
    if not isinstance(data, dict):
        raise MalformedInput("condition must be a JSON object")
    alphabet = data.get("alphabet")
    accepting = data.get("accepting")
    if not isinstance(alphabet, list) or not all(isinstance(s, str) for s in alphabet):
        raise MalformedInput("condition field 'alphabet' must be a list of strings")
    if not isinstance(accepting, list) or not all(isinstance(g, list) for g in accepting):
        raise MalformedInput("condition field 'accepting' must be a list of lists")
    return MullerCondition.make(alphabet, accepting)


def acceptance_to_json(acceptance: Acceptance, output_alphabet: Alphabet) -> dict:
    kind = acceptance.kind
    if kind == "muller":
        return {"kind": "muller", **condition_to_json(acceptance.condition)}
    if kind == "parity":
        return {"kind": "parity",
                "priorities": {sym: acceptance.priorities[i]
                               for i, sym in enumerate(output_alphabet.symbols)}}
    if kind in ("rabin", "streett"):
        return {"kind": kind,
                "pairs": [[list(output_alphabet.names(first)),
                           list(output_alphabet.names(second))]
                          for first, second in acceptance.pairs]}
    if kind in ("genbuchi", "gencobuchi"):
        return {"kind": kind,
                "sets": [list(output_alphabet.names(s)) for s in acceptance.sets]}
    raise UnsupportedOperation(f"unknown acceptance kind {kind!r}")


def acceptance_from_json(data: object, output_alphabet: Alphabet) -> Acceptance:
    if not isinstance(data, dict) or "kind" not in data:
        raise MalformedInput("acceptance must be an object with a 'kind' field")
    kind = data["kind"]
    if kind == "muller":
        return MullerAcceptance(condition_from_json(
            {"alphabet": data.get("alphabet"), "accepting": data.get("accepting")}))
    if kind == "parity":
        prios = data.get("priorities")
        if not isinstance(prios, dict):
            raise MalformedInput("parity acceptance needs a 'priorities' object")
        try:
            table = tuple(int(prios[sym]) for sym in output_alphabet.symbols)
        except KeyError as missing:
            raise MalformedInput(f"missing priority for symbol {missing}") from None
        return ParityAcceptance(table)
    if kind in ("rabin", "streett"):
        pairs = data.get("pairs")
        if not isinstance(pairs, list):
            raise MalformedInput(f"{kind} acceptance needs a 'pairs' list")
        parsed = []
        for pair in pairs:
            if not isinstance(pair, list) or len(pair) != 2:
                raise MalformedInput("each pair must be a two-element list")
            parsed.append((output_alphabet.bits(pair[0]), output_alphabet.bits(pair[1])))
        cls = RabinAcceptance if kind == "rabin" else StreettAcceptance
        return cls(tuple(parsed))
    if kind in ("genbuchi", "gencobuchi"):
        sets = data.get("sets")
        if not isinstance(sets, list):
            raise MalformedInput(f"{kind} acceptance needs a 'sets' list")
        cls = GenBuchiAcceptance if kind == "genbuchi" else GenCoBuchiAcceptance
        return cls(tuple(output_alphabet.bits(s) for s in sets))
    raise MalformedInput(f"unknown acceptance kind {kind!r}")


def automaton_to_json(aut: Automaton) -> dict:
    return {
        "states": aut.n_states,
        "initial": aut.initial,
        "input": list(aut.input_alphabet.symbols),
        "output": list(aut.output_alphabet.symbols),
        "delta": [[q, aut.input_alphabet.symbols[a],
                   target, aut.output_alphabet.symbols[colour]]
                  for q, a, target, colour in aut.edges()],
        "acceptance": acceptance_to_json(aut.acceptance, aut.output_alphabet),
    }


def automaton_from_json(data: object) -> Automaton:
    if not isinstance(data, dict):
        raise MalformedInput("automaton must be a JSON object")
    for field_name in ("states", "initial", "input", "output", "delta", "acceptance"):
        if field_name not in data:
            raise MalformedInput(f"automaton is missing field '{field_name}'")
    n = data["states"]
    initial = data["initial"]
    if not isinstance(n, int) or not isinstance(initial, int):
        raise MalformedInput("fields 'states' and 'initial' must be integers")
    inp = Alphabet(tuple(data["input"]))
    out = Alphabet(tuple(data["output"]))
    transitions: dict[tuple[int, str], tuple[int, str]] = {}
    if not isinstance(data["delta"], list):
        raise MalformedInput("field 'delta' must be a list")
    for entry in data["delta"]:
        if not isinstance(entry, list) or len(entry) != 4:
            raise MalformedInput("each delta entry must be [state, input, next, output]")
        q, sym, target, colour = entry
        if not isinstance(q, int) or not isinstance(target, int):
            raise MalformedInput("delta states must be integers")
        if not 0 <= q < n or not 0 <= target < n:
            raise MalformedInput("delta state out of range")
        if (q, sym) in transitions:
            raise MalformedInput(f"duplicate transition from state {q} on {sym!r}")
        inp.position(sym)
        out.position(colour)
        transitions[(q, sym)] = (target, colour)
    acceptance = acceptance_from_json(data["acceptance"], out)
    return build_automaton(initial=initial, transitions=transitions,
                           input_symbols=inp, output_symbols=out,
                           acceptance=acceptance)

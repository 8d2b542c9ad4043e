"""Rabin-shaped acceptance: typeness checking, pair synthesis, language
equivalence and the search for the smallest transition structure that makes
an explicit Muller condition Rabin-expressible."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .core import (Alphabet, Automaton, MalformedInput, MullerAcceptance,
                   MullerCondition, PropertyViolation, RabinAcceptance,
                   ScaleGuard, UnsupportedOperation, _realizable_sets_all,
                   accepting_colour_set, bit_indices,
                   strongly_connected_components, submasks)


@dataclass(frozen=True)
class RabinTypenessReport:
    """Outcome of the union-of-rejecting-cycles test.

    When not typeable, witness holds (state, first colour bitset, second
    colour bitset): both bitsets are rejecting and realizable as cycles
    through the state, while their union is accepting.
    """

    typeable: bool
    witness: Optional[tuple[int, int, int]]


class NotRabinTypeable(PropertyViolation):
    def __init__(self, aut: Automaton, report: RabinTypenessReport):
        state, first, second = report.witness
        names = aut.output_alphabet.names
        super().__init__(
            f"state {state} carries rejecting cycles over {list(names(first))} and"
            f" {list(names(second))} whose union is accepting")
        self.report = report


def check_rabin_typeable(aut: Automaton) -> RabinTypenessReport:
    """Test whether the language of the automaton has a Rabin acceptance on
    the same transition structure.

    This holds exactly when rejecting realizable cycle sets are closed under
    union at every state.  Unions of realizable sets through one state are
    realizable, so a failing pair exists exactly when some colour set's union
    of rejecting realizable subsets is accepting; that union is found for
    every set at once by a subset-or sweep instead of comparing pairs.
    """
    edges = [(q, target, 1 << colour) for q, _, target, colour in aut.edges()]
    realizable = _realizable_sets_all(aut.n_states, edges)
    used = 0
    for _, _, bit in edges:
        used |= bit
    positions = list(bit_indices(used))
    width = len(positions)
    place = {bit_position: i for i, bit_position in enumerate(positions)}

    def compress(bits: int) -> int:
        out = 0
        for i in bit_indices(bits):
            out |= 1 << place[i]
        return out

    for state in range(aut.n_states):
        rejecting = [bits for bits in realizable[state]
                     if not accepting_colour_set(aut.acceptance, bits)]
        covered = [0] * (1 << width)
        for bits in rejecting:
            covered[compress(bits)] = bits
        for i in range(width):
            step = 1 << i
            for m in range(1 << width):
                if m & step:
                    covered[m] |= covered[m ^ step]
        for m in range(1 << width):  # ascending, for a deterministic witness
            union = covered[m]
            if union and accepting_colour_set(aut.acceptance, union):
                return RabinTypenessReport(
                    False, _failing_pair(aut, state, union, rejecting))
    return RabinTypenessReport(True, None)


def _failing_pair(aut: Automaton, state: int, union: int,
                  rejecting: list[int]) -> tuple[int, int, int]:
    # union is accepting and covered by its rejecting realizable subsets;
    # grow a running union until one more part tips it over to accepting
    parts = sorted(bits for bits in rejecting if bits & ~union == 0)
    running = parts[0]
    for bits in parts[1:]:
        if accepting_colour_set(aut.acceptance, running | bits):
            return (state, running, bits)
        running |= bits
    raise AssertionError("covered accepting set without a tipping pair")


def _strongly_connected_edge_subsets(
        n_states: int, edge_ends: list[tuple[int, int]]) -> Iterator[int]:
    """Yield bitmasks over the edge list whose edges form one strongly
    connected sub-multigraph covering all their endpoints."""
    m = len(edge_ends)
    for subset in range(1, 1 << m):
        verts = 0
        adj = [0] * n_states
        rest = subset
        while rest:
            e = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            src, dst = edge_ends[e]
            verts |= (1 << src) | (1 << dst)
            adj[src] |= 1 << dst
        reach = list(adj)
        for t in range(n_states):
            if not (verts >> t) & 1:
                continue
            rt = reach[t]
            tb = 1 << t
            for q in range(n_states):
                if reach[q] & tb:
                    reach[q] |= rt
        ok = True
        probe = verts
        while probe:
            v = (probe & -probe).bit_length() - 1
            probe &= probe - 1
            if reach[v] & verts != verts:
                ok = False
                break
        if ok:
            yield subset


def synthesize_rabin_pairs(aut: Automaton, *, max_edges: int = 20) -> Automaton:
    """Rabin pairs over a per-transition recolouring of a Muller automaton.

    The output keeps the transition structure and recolours every transition
    with its own name "state:input".  Each accepting cycle contributes one
    pair: the cycle's edges minus every rejecting cycle inside it, against
    the complement of the cycle.  Raises NotRabinTypeable (with the witness)
    when no Rabin acceptance exists on this structure.
    """
    report = check_rabin_typeable(aut)
    if not report.typeable:
        raise NotRabinTypeable(aut, report)
    width = len(aut.input_alphabet)
    m = aut.n_states * width
    if m > max_edges:
        raise ScaleGuard(f"{m} transitions exceed the {max_edges}-edge"
                         " limit for cycle enumeration")
    edge_ends = []
    edge_colour_bits = []
    for q, _, target, colour in aut.edges():
        edge_ends.append((q, target))
        edge_colour_bits.append(1 << colour)
    accepting_cycles: list[int] = []
    is_rejecting_cycle = bytearray(1 << m)
    for subset in _strongly_connected_edge_subsets(aut.n_states, edge_ends):
        colours = 0
        rest = subset
        while rest:
            e = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            colours |= edge_colour_bits[e]
        if accepting_colour_set(aut.acceptance, colours):
            accepting_cycles.append(subset)
        else:
            is_rejecting_cycle[subset] = 1
    # union of rejecting cycles inside each edge subset, by subset recursion
    union_inside = [0] * (1 << m)
    for subset in range(1, 1 << m):
        acc = subset if is_rejecting_cycle[subset] else 0
        rest = subset
        while rest:
            low = rest & -rest
            rest &= rest - 1
            acc |= union_inside[subset ^ low]
        union_inside[subset] = acc
    all_edges = (1 << m) - 1
    pairs: list[tuple[int, int]] = []
    seen = set()
    for cycle in accepting_cycles:
        first = cycle & ~union_inside[cycle]
        if first == 0:
            raise PropertyViolation("accepting cycle fully covered by rejecting"
                                    " cycles despite a positive typeness check")
        pair = (first, all_edges & ~cycle)
        if pair not in seen:
            seen.add(pair)
            pairs.append(pair)
    out_symbols = tuple(f"{q}:{sym}" for q in range(aut.n_states)
                        for sym in aut.input_alphabet.symbols)
    rows = tuple(tuple((aut.delta[q][a][0], q * width + a) for a in range(width))
                 for q in range(aut.n_states))
    return Automaton(aut.n_states, aut.initial, aut.input_alphabet,
                     Alphabet(out_symbols), rows, RabinAcceptance(tuple(pairs)))


def _input_positions(a1: Automaton, a2: Automaton) -> list[int]:
    """Position of each of a1's input symbols inside a2's input alphabet."""
    if set(a1.input_alphabet.symbols) != set(a2.input_alphabet.symbols):
        raise MalformedInput("automata read different input alphabets")
    return [a2.input_alphabet.position(sym) for sym in a1.input_alphabet.symbols]


def _reachable_product(a1: Automaton, a2: Automaton, max_states: int):
    """Synchronous product reachable from the initial pair.

    Returns (number of product states, edges) where each edge is
    (src, dst, colour bit of a1, colour bit of a2).
    """
    remap = _input_positions(a1, a2)
    index: dict[tuple[int, int], int] = {(a1.initial, a2.initial): 0}
    queue = [(a1.initial, a2.initial)]
    edges: list[tuple[int, int, int, int]] = []
    while queue:
        p, q = queue.pop(0)
        src = index[(p, q)]
        for a in range(len(a1.input_alphabet)):
            p2, c1 = a1.delta[p][a]
            q2, c2 = a2.delta[q][remap[a]]
            key = (p2, q2)
            if key not in index:
                if len(index) >= max_states:
                    raise ScaleGuard(f"product exceeds {max_states} states")
                index[key] = len(index)
                queue.append(key)
            edges.append((src, index[key], 1 << c1, 1 << c2))
    return len(index), edges


def _exists_accepted_rejected(edges, meet_bits: int, streett_pairs) -> bool:
    """Search for a strongly connected edge set meeting meet_bits on the left
    colours while failing every Streett pair on the right colours."""
    verts = set()
    for src, dst, _, _ in edges:
        verts.add(src)
        verts.add(dst)
    for _, internal in strongly_connected_components(verts, edges):
        if not internal:
            continue
        right = 0
        for _, _, _, c2 in internal:
            right |= c2
        violated = [first for first, second in streett_pairs
                    if right & first and not right & second]
        if not violated:
            if any(c1 & meet_bits for _, _, c1, _ in internal):
                return True
        else:
            drop = 0
            for first in violated:
                drop |= first
            rest = [e for e in internal if not e[3] & drop]
            if rest and _exists_accepted_rejected(rest, meet_bits, streett_pairs):
                return True
    return False


def _rabin_containment_fails(a1: Automaton, a2: Automaton, max_states: int) -> bool:
    """True when some word is accepted by a1 but rejected by a2."""
    _, edges = _reachable_product(a1, a2, max_states)
    for meet, avoid in a1.acceptance.pairs:
        kept = [e for e in edges if not e[2] & avoid]
        if kept and _exists_accepted_rejected(kept, meet, a2.acceptance.pairs):
            return True
    return False


def rabin_equivalent(a1: Automaton, a2: Automaton, *, max_states: int = 4000) -> bool:
    """Language equality of two deterministic Rabin automata.

    Checks both containments on the synchronous product; a missing word shows
    up as a strongly connected edge set accepted by one side (meets a pair's
    first component, avoids its second) on which the other side fails every
    one of its pairs read as Streett constraints.
    """
    for aut in (a1, a2):
        if aut.acceptance.kind != "rabin":
            raise UnsupportedOperation("rabin_equivalent needs Rabin acceptance"
                                       " on both sides")
    return not (_rabin_containment_fails(a1, a2, max_states)
                or _rabin_containment_fails(a2, a1, max_states))


def muller_equivalent(a1: Automaton, a2: Automaton, *,
                      max_states: int = 200, max_colour_bits: int = 14) -> bool:
    """Language equality for any two acceptance kinds, by cycle enumeration.

    Enumerates, over the reachable synchronous product, the colour sets each
    side can realize on cycles; for every pair judged differently by the two
    acceptances it looks for one cycle realizing both sets at once.
    """
    n, edges = _reachable_product(a1, a2, max_states)
    used1 = used2 = 0
    for _, _, c1, c2 in edges:
        used1 |= c1
        used2 |= c2
    for used, label in ((used1, "left"), (used2, "right")):
        if used.bit_count() > max_colour_bits:
            raise ScaleGuard(f"{label} side uses {used.bit_count()} colours,"
                             f" above the 2^{max_colour_bits} enumeration limit")

    def realizable(side: int, used: int) -> list[int]:
        found = []
        for colour_set in submasks(used):
            sub = [e for e in edges if e[side] & colour_set]
            for _, internal in strongly_connected_components(range(n), sub):
                cover = 0
                for e in internal:
                    cover |= e[side]
                if cover == colour_set:
                    found.append(colour_set)
                    break
        return found

    left = realizable(2, used1)
    right = realizable(3, used2)
    for c1 in left:
        ok1 = accepting_colour_set(a1.acceptance, c1)
        for c2 in right:
            if ok1 == accepting_colour_set(a2.acceptance, c2):
                continue
            sub = [e for e in edges if e[2] & c1 and e[3] & c2]
            for _, internal in strongly_connected_components(range(n), sub):
                cover1 = cover2 = 0
                for e in internal:
                    cover1 |= e[2]
                    cover2 |= e[3]
                if cover1 == c1 and cover2 == c2:
                    return False
    return True


def acceptance_to_condition(aut: Automaton) -> MullerCondition:
    """Explicit accepting family of the automaton's acceptance, over the
    output colours that actually occur on transitions."""
    used = aut.used_output_bits()
    if used.bit_count() > 14:
        raise ScaleGuard("too many used output colours to expand explicitly")
    family = [bits for bits in submasks(used)
              if accepting_colour_set(aut.acceptance, bits)]
    alphabet_positions = list(bit_indices(used))
    symbols = tuple(aut.output_alphabet.symbols[i] for i in alphabet_positions)
    remap = {position: j for j, position in enumerate(alphabet_positions)}
    packed = []
    for bits in family:
        out = 0
        for i in bit_indices(bits):
            out |= 1 << remap[i]
        packed.append(out)
    return MullerCondition(Alphabet(symbols), frozenset(packed))


# ---------------------------------------------------------------------------
# Smallest transition structure making a condition Rabin-expressible.

def canonical_structures(num_states: int, num_letters: int) -> Iterator[tuple[int, ...]]:
    """Complete deterministic transition tables, one per isomorphism class.

    Tables are flat tuples in row-major order (state major, letter minor).
    State ids appear in first-reference order starting from state 0, and
    every yielded table references all states, so each reachable structure on
    exactly num_states states shows up exactly once.
    """
    k, g = num_states, num_letters
    total = k * g
    flat = [0] * total

    def rec(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == total:
            if top == k - 1:
                yield tuple(flat)
            return
        q = i // g
        if q > top:
            return  # this state was never referenced, nor will it be
        if (k - 1 - top) > (total - i):
            return  # not enough cells left to reference the missing states
        limit = min(top + 1, k - 1)
        for v in range(limit + 1):
            flat[i] = v
            yield from rec(i + 1, v if v > top else top)

    yield from rec(0, 0)


def _acceptance_table(cond: MullerCondition) -> bytearray:
    table = bytearray(1 << len(cond.alphabet))
    for bits in cond.accepting:
        table[bits] = 1
    return table


def _letters_lists(g: int) -> list[list[int]]:
    return [[a for a in range(g) if (c >> a) & 1] for c in range(1 << g)]


def _structure_violation(k: int, g: int, flat, rows: int, acc: bytearray,
                         letters_of: list[list[int]]) -> bool:
    """Typeness failure of the structure restricted to its first filled rows.

    Edges of unfilled rows are absent; since finishing the table only adds
    edges, a failure found here persists in every completion.
    """
    rejecting: list[list[int]] = [[] for _ in range(k)]
    for colour_set in range(1, 1 << g):
        letters = letters_of[colour_set]
        adj = [0] * k
        for q in range(rows):
            base = q * g
            mask = 0
            for a in letters:
                mask |= 1 << flat[base + a]
            adj[q] = mask
        reach = list(adj)
        for t in range(k):
            rt = reach[t]
            tb = 1 << t
            for q in range(k):
                if reach[q] & tb:
                    reach[q] |= rt
        done = 0
        for q in range(k):
            if (done >> q) & 1 or not (reach[q] >> q) & 1:
                continue
            comp = 0
            for t in range(k):
                if (reach[q] >> t) & 1 and (reach[t] >> q) & 1:
                    comp |= 1 << t
            done |= comp
            cover = 0
            members = comp
            while members:
                u = (members & -members).bit_length() - 1
                members &= members - 1
                if u < rows:
                    base = u * g
                    for a in letters:
                        if (comp >> flat[base + a]) & 1:
                            cover |= 1 << a
            if cover == colour_set and not acc[colour_set]:
                members = comp
                while members:
                    u = (members & -members).bit_length() - 1
                    members &= members - 1
                    rejecting[u].append(colour_set)
    for q in range(k):
        sets = rejecting[q]
        for i, first in enumerate(sets):
            for second in sets[i + 1:]:
                if acc[first | second]:
                    return True
    return False


def _input_determined_tables(k: int, g: int) -> Iterator[tuple[int, ...]]:
    """Tables where the target only depends on the letter, all states used."""
    if k > g + 1:
        return  # g letters can introduce at most g states beyond the initial one
    assignment = [0] * g

    def rec(a: int, top: int) -> Iterator[tuple[int, ...]]:
        if a == g:
            if top == k - 1:
                yield tuple(assignment) * k
            return
        if (k - 1 - top) > (g - a):
            return
        limit = min(top + 1, k - 1)
        for v in range(limit + 1):
            assignment[a] = v
            yield from rec(a + 1, v if v > top else top)

    yield from rec(0, 0)


def _search_with_prefix(k: int, g: int, acc: bytearray, prefix: tuple[int, ...],
                        letters_of: list[list[int]]) -> Optional[tuple[int, ...]]:
    """Depth-first completion of a table whose first row is fixed."""
    total = k * g
    flat = list(prefix) + [0] * (total - g)
    top0 = max(prefix)

    result: Optional[tuple[int, ...]] = None

    def rec(i: int, top: int) -> bool:
        nonlocal result
        if i == total:
            if top == k - 1 and not _structure_violation(k, g, flat, k, acc, letters_of):
                result = tuple(flat)
                return True
            return False
        q, a = divmod(i, g)
        if q > top:
            return False
        if (k - 1 - top) > (total - i):
            return False
        if a == 0 and _structure_violation(k, g, flat, q, acc, letters_of):
            return False
        limit = min(top + 1, k - 1)
        for v in range(limit + 1):
            flat[i] = v
            if rec(i + 1, v if v > top else top):
                return True
        return False

    rec(g, top0)
    return result


def _row_prefixes(k: int, g: int) -> list[tuple[int, ...]]:
    """Canonical assignments of the first table row."""
    prefixes: list[tuple[int, ...]] = []
    row = [0] * g

    def rec(a: int, top: int) -> None:
        if a == g:
            prefixes.append(tuple(row))
            return
        limit = min(top + 1, k - 1)
        for v in range(limit + 1):
            row[a] = v
            rec(a + 1, v if v > top else top)

    rec(0, 0)
    return prefixes


def _search_worker(args) -> Optional[tuple[int, ...]]:
    k, g, acc_bytes, prefix = args
    return _search_with_prefix(k, g, bytearray(acc_bytes), prefix, _letters_lists(g))


def _find_structure(k: int, g: int, acc: bytearray, threads: int) -> Optional[tuple[int, ...]]:
    letters_of = _letters_lists(g)
    # letter-determined tables first: they cover proper-colouring style
    # witnesses immediately and keep the returned structure small and tidy
    for flat in _input_determined_tables(k, g):
        if not _structure_violation(k, g, flat, k, acc, letters_of):
            return flat
    prefixes = _row_prefixes(k, g)
    if threads > 1 and k * g > 6:
        import multiprocessing

        jobs = [(k, g, bytes(acc), prefix) for prefix in prefixes]
        with multiprocessing.Pool(threads) as pool:
            for result in pool.imap(_search_worker, jobs):
                if result is not None:
                    pool.terminate()
                    return result
        return None
    for prefix in prefixes:
        result = _search_with_prefix(k, g, acc, prefix, letters_of)
        if result is not None:
            return result
    return None


def min_rabin_size(cond: MullerCondition, max_states: int, *,
                   threads: int = 1) -> tuple[Optional[int], Optional[Automaton]]:
    """Fewest states of a deterministic structure over the condition's own
    colours on which the condition becomes Rabin-expressible.

    Tries every reachable transition structure with 1, 2, ... states (one
    representative per isomorphism class, letter-determined tables first) and
    returns the first size admitting a typeable structure, together with the
    witness as a Muller automaton whose transitions output the letter they
    read.  Returns (None, None) when no structure up to max_states works.
    """
    g = len(cond.alphabet)
    if g > 16:
        raise ScaleGuard("condition alphabet above 16 symbols")
    if max_states * g > 36:
        raise ScaleGuard("max_states times alphabet size above 36; the"
                         " structure search would not finish at desk scale")
    acc = _acceptance_table(cond)
    for k in range(1, max_states + 1):
        flat = _find_structure(k, g, acc, threads)
        if flat is not None:
            rows = tuple(tuple((flat[q * g + a], a) for a in range(g))
                         for q in range(k))
            witness = Automaton(k, 0, cond.alphabet, cond.alphabet, rows,
                                MullerAcceptance(cond))
            return k, witness
    return None, None


def chromatic_memory(cond: MullerCondition, max_states: int, *,
                     threads: int = 1) -> Optional[int]:
    """Smallest memory keyed on colours alone that suffices for the
    condition over every arena; coincides with the smallest Rabin-expressible
    transition structure."""
    size, _ = min_rabin_size(cond, max_states, threads=threads)
    return size

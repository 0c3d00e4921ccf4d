"""Homotopy moves on nanowords and a bounded equivalence oracle.

The three base moves (with their inverses) are:

* M1:  x A A y -> x y
* M2:  x A B y B A z -> x y z          when |A| = tau(|B|)
* M3:  x A B y A C z B C t -> x B A y C A z C B t   when (|A|,|B|,|C|) in S

Derived moves are consequences of the base moves and serve as search
accelerators:

* L1_1: x A B y C A z B C t <-> x B A y A C z C B t   when (|A|, tau|B|, |C|) in S
* L1_2: x A B y C A z C B t <-> x B A y A C z B C t   when (tau|A|, tau|B|, |C|) in S
* L1_3: x A B y A C z C B t <-> x B A y C A z B C t   when (|A|, tau|B|, tau|C|) in S
* L2:   x A B y A B z -> x y z   when |A| = tau(|B|) and (e,|B|,|B|) in S for some e

The L2 macro expands into the four-step witness
(inverse M1, reversed L1_2, M2, M1); the L1 moves are atomic.

SHIFT moves the last letter of the word to the first position; it extends
homotopy to the non-pointed setting and is disabled unless requested.

Equivalence of nanowords is only semi-decidable at fixed bounds, so the
search returns EQUIVALENT (with a replayable witness) or UNKNOWN, never a
negative verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .alphabet import AlphabetSpec
from .words import CanonicalNanoword, Nanoword, canonical_form, empty_nanoword

BASE_KINDS = ("M1", "M2", "M3", "M1inv", "M2inv", "M3inv")
DERIVED_KINDS = ("L1_1", "L1_2", "L1_3", "L1_1inv", "L1_2inv", "L1_3inv", "L2", "L2inv")

# 6-slot rewrite templates: kind -> (source shape, target shape).
# A shape spells the three adjacent letter pairs; applying the move rewrites
# the six slots from the source shape to the target shape.  The *inv kinds
# rewrite target to source under the same side condition.
_TEMPLATES: dict[str, tuple[str, str]] = {
    "M3": ("PQPRQR", "QPRPRQ"),
    "L1_1": ("PQRPQR", "QPPRRQ"),
    "L1_2": ("PQRPRQ", "QPPRQR"),
    "L1_3": ("PQPRRQ", "QPRPQR"),
}


def _template_condition(kind: str, spec: AlphabetSpec, pa: str, qa: str, ra: str) -> bool:
    if kind == "M3":
        return spec.allows_triple(pa, qa, ra)
    if kind == "L1_1":
        return spec.allows_triple(pa, spec.tau(qa), ra)
    if kind == "L1_2":
        return spec.allows_triple(spec.tau(pa), spec.tau(qa), ra)
    if kind == "L1_3":
        return spec.allows_triple(pa, spec.tau(qa), spec.tau(ra))
    raise ValueError(kind)


def _l2_partner(spec: AlphabetSpec, b: str) -> str | None:
    """Smallest e with (e, b, b) in S, or None."""
    best = None
    for (x, y, z) in spec.triple_set:
        if y == b and z == b and (best is None or x < best):
            best = x
    return best


@dataclass(frozen=True)
class MoveInstance:
    """A single move application.

    ``positions`` are 0-based indices into the word the move applies to
    (pattern anchors for forward moves, insertion points for inverse moves);
    ``intro`` carries the projections assigned to letters an inverse move
    introduces.  Positions are isomorphism-invariant, so an instance recorded
    on one word replays on any isomorphic word.
    """

    kind: str
    positions: tuple[int, ...]
    intro: tuple[str, ...] = ()

    def __str__(self) -> str:
        pos = ",".join(str(p) for p in self.positions)
        s = f"{self.kind} @ ({pos})"
        if self.intro:
            s += " intro " + ",".join(self.intro)
        return s


@dataclass(frozen=True)
class SearchStats:
    states_explored: int
    frontier_peak: int
    max_len: int
    max_states: int


@dataclass(frozen=True)
class SearchOutcome:
    verdict: str  # "EQUIVALENT" or "UNKNOWN"
    witness: tuple[MoveInstance, ...] | None
    stats: SearchStats

    @property
    def equivalent(self) -> bool:
        return self.verdict == "EQUIVALENT"


def _fresh_names(n: Nanoword, count: int) -> list[str]:
    taken = {name for name, _ in n.letters}
    out: list[str] = []
    k = 1
    while len(out) < count:
        name = f"N{k}"
        if name not in taken:
            taken.add(name)
            out.append(name)
        k += 1
    return out


def _delete_letters(n: Nanoword, names: set[str]) -> Nanoword:
    letters = tuple((nm, pr) for nm, pr in n.letters if nm not in names)
    word = tuple(nm for nm in n.word if nm not in names)
    return Nanoword(n.spec, letters, word)


def apply_move(n: Nanoword, move: MoveInstance) -> tuple[Nanoword, MoveInstance]:
    """Apply ``move`` to ``n``; return the result and the inverse instance.

    Raises ValueError when the pattern or side condition does not hold.
    """
    w = n.word
    spec = n.spec
    proj = n.proj
    kind = move.kind

    if kind == "M1":
        (p,) = move.positions
        if not (0 <= p < len(w) - 1 and w[p] == w[p + 1]):
            raise ValueError(f"M1 pattern absent at {p}")
        name = w[p]
        return _delete_letters(n, {name}), MoveInstance("M1inv", (p,), (proj[name],))

    if kind == "M1inv":
        (p,) = move.positions
        (c,) = move.intro
        spec.require_letter(c)
        if not 0 <= p <= len(w):
            raise ValueError(f"insertion point {p} out of range")
        (x,) = _fresh_names(n, 1)
        letters = n.letters + ((x, c),)
        word = w[:p] + (x, x) + w[p:]
        return Nanoword(spec, letters, word), MoveInstance("M1", (p,))

    if kind in ("M2", "L2"):
        p, q = move.positions
        if not (0 <= p and p + 1 < q and q + 1 < len(w)):
            raise ValueError("positions out of range")
        a, b = w[p], w[p + 1]
        occ = n.occurrences
        if a == b or occ[a][0] != p or occ[b][0] != p + 1:
            raise ValueError(f"{kind} pattern absent at {move.positions}")
        if kind == "M2" and (occ[b][1], occ[a][1]) != (q, q + 1):
            raise ValueError(f"M2 pattern absent at {move.positions}")
        if kind == "L2" and (occ[a][1], occ[b][1]) != (q, q + 1):
            raise ValueError(f"L2 pattern absent at {move.positions}")
        if proj[a] != spec.tau(proj[b]):
            raise ValueError(f"{kind} requires |A| = tau(|B|)")
        if kind == "L2" and _l2_partner(spec, proj[b]) is None:
            raise ValueError("L2 requires (e,|B|,|B|) in S for some e")
        inv = MoveInstance(kind + "inv", (p, q - 2), (proj[b],))
        return _delete_letters(n, {a, b}), inv

    if kind in ("M2inv", "L2inv"):
        p, q = move.positions
        (c,) = move.intro
        spec.require_letter(c)
        if not (0 <= p <= q <= len(w)):
            raise ValueError("insertion points out of range")
        if kind == "L2inv" and _l2_partner(spec, c) is None:
            raise ValueError("L2inv requires (e,c,c) in S for some e")
        x, y = _fresh_names(n, 2)
        letters = n.letters + ((x, spec.tau(c)), (y, c))
        second = (y, x) if kind == "M2inv" else (x, y)
        word = w[:p] + (x, y) + w[p:q] + second + w[q:]
        return Nanoword(spec, letters, word), MoveInstance(kind[:-3], (p, q + 2))

    base = kind[:-3] if kind.endswith("inv") else kind
    if base in _TEMPLATES:
        src, tgt = _TEMPLATES[base]
        if kind.endswith("inv"):
            src, tgt = tgt, src
        p, q, r = move.positions
        if not (0 <= p and p + 1 < q and q + 1 < r and r + 1 < len(w)):
            raise ValueError("positions out of range")
        slots = (w[p], w[p + 1], w[q], w[q + 1], w[r], w[r + 1])
        roles: dict[str, str] = {}
        for role, letter in zip(src, slots):
            if roles.setdefault(role, letter) != letter:
                raise ValueError(f"{kind} pattern absent at {move.positions}")
        if len(set(roles.values())) != 3:
            raise ValueError(f"{kind} pattern absent at {move.positions}")
        pa, qa, ra = (proj[roles[x]] for x in "PQR")
        if not _template_condition(base, spec, pa, qa, ra):
            raise ValueError(f"{kind} side condition fails at {move.positions}")
        new = list(w)
        for pos, role in zip((p, p + 1, q, q + 1, r, r + 1), tgt):
            new[pos] = roles[role]
        inv_kind = base if kind.endswith("inv") else base + "inv"
        return Nanoword(spec, n.letters, tuple(new)), MoveInstance(inv_kind, (p, q, r))

    if kind == "SHIFT":
        if not w:
            raise ValueError("SHIFT needs a nonempty word")
        return Nanoword(spec, n.letters, w[-1:] + w[:-1]), MoveInstance("SHIFTinv", ())

    if kind == "SHIFTinv":
        if not w:
            raise ValueError("SHIFTinv needs a nonempty word")
        return Nanoword(spec, n.letters, w[1:] + w[:1]), MoveInstance("SHIFT", ())

    raise ValueError(f"unknown move kind {kind!r}")


def _pattern_moves(n: Nanoword, derived: bool) -> Iterator[MoveInstance]:
    """Forward M1/M2 plus all 6-slot rewrites present in the word."""
    w = n.word
    L = len(w)
    proj = n.proj
    spec = n.spec
    occ = n.occurrences
    for p in range(L - 1):
        if w[p] == w[p + 1]:
            yield MoveInstance("M1", (p,))
            continue
        a, b = w[p], w[p + 1]
        if occ[a][0] == p and occ[b][0] == p + 1:
            if proj[a] == spec.tau(proj[b]):
                if occ[b][1] + 1 == occ[a][1]:
                    yield MoveInstance("M2", (p, occ[b][1]))
                if derived and occ[a][1] + 1 == occ[b][1] and _l2_partner(spec, proj[b]) is not None:
                    yield MoveInstance("L2", (p, occ[a][1]))
    pairs = [p for p in range(L - 1) if w[p] != w[p + 1]]
    for i, p in enumerate(pairs):
        for q in (x for x in pairs[i + 1:] if x >= p + 2):
            for r in (x for x in pairs if x >= q + 2):
                slots = (w[p], w[p + 1], w[q], w[q + 1], w[r], w[r + 1])
                if len(set(slots)) != 3:
                    continue
                for base, (src, tgt) in _TEMPLATES.items():
                    if not derived and base != "M3":
                        continue
                    for kind, shape in ((base, src), (base + "inv", tgt)):
                        roles: dict[str, str] = {}
                        ok = True
                        for role, letter in zip(shape, slots):
                            if roles.setdefault(role, letter) != letter:
                                ok = False
                                break
                        if not ok or len(set(roles.values())) != 3:
                            continue
                        pa, qa, ra = (proj[roles[x]] for x in "PQR")
                        if _template_condition(base, spec, pa, qa, ra):
                            yield MoveInstance(kind, (p, q, r))


def _insertion_moves(n: Nanoword, max_len: int, derived: bool) -> Iterator[MoveInstance]:
    L = len(n.word)
    letters = n.spec.letters
    if L + 2 <= max_len:
        for p in range(L + 1):
            for c in letters:
                yield MoveInstance("M1inv", (p,), (c,))
    if L + 4 <= max_len:
        for p in range(L + 1):
            for q in range(p, L + 1):
                for c in letters:
                    yield MoveInstance("M2inv", (p, q), (c,))
                    if derived and _l2_partner(n.spec, c) is not None:
                        yield MoveInstance("L2inv", (p, q), (c,))


def applicable_moves(
    n: Nanoword,
    max_len: int | None = None,
    *,
    include_shift: bool = False,
) -> list[MoveInstance]:
    """Every base-move application whose result has length <= max_len."""
    if max_len is None:
        max_len = len(n.word)
    if max_len < len(n.word):
        raise ValueError("max_len must be at least the current length")
    moves = list(_pattern_moves(n, derived=False))
    moves.extend(_insertion_moves(n, max_len, derived=False))
    if include_shift and n.word:
        moves.append(MoveInstance("SHIFT", ()))
        moves.append(MoveInstance("SHIFTinv", ()))
    return moves


def derived_move_check(n: Nanoword) -> list[MoveInstance]:
    """Applicable derived-move (L1/L2) macro instances."""
    return [m for m in _pattern_moves(n, derived=True) if m.kind.startswith("L")]


def all_moves(
    n: Nanoword,
    max_len: int,
    *,
    derived: bool = True,
    include_shift: bool = False,
) -> list[MoveInstance]:
    moves = list(_pattern_moves(n, derived=derived))
    moves.extend(_insertion_moves(n, max_len, derived=derived))
    if include_shift and n.word:
        moves.append(MoveInstance("SHIFT", ()))
        moves.append(MoveInstance("SHIFTinv", ()))
    return moves


def expand_macro(n: Nanoword, move: MoveInstance) -> list[MoveInstance]:
    """Rewrite an L2 macro into its four-step witness; other moves are atomic.

    The expansion inserts EE with |E| = tau(e) for the smallest e with
    (e, |B|, |B|) in S, reverses an L1_2 step, then removes A, B by M2 and EE
    by M1.
    """
    if move.kind != "L2":
        return [move]
    p, q = move.positions
    b = n.proj[n.word[p + 1]]
    e = _l2_partner(n.spec, b)
    if e is None:
        raise ValueError("L2 side condition fails")
    return [
        MoveInstance("M1inv", (p + 1,), (n.spec.tau(e),)),
        MoveInstance("L1_2inv", (p, p + 2, q + 2)),
        MoveInstance("M2", (p + 1, q + 2)),
        MoveInstance("M1", (p,)),
    ]


def replay(n: Nanoword, witness: Iterable[MoveInstance]) -> Nanoword:
    """Apply a witness move by move, validating every intermediate."""
    cur = n
    for move in witness:
        cur, _ = apply_move(cur, move)
    return cur


@dataclass
class _Node:
    word: Nanoword
    parent: CanonicalNanoword | None
    move: MoveInstance | None       # applied to the parent to reach this node
    inv_move: MoveInstance | None   # applied to this node to return to the parent


def _trace_moves(side: dict[CanonicalNanoword, _Node], key: CanonicalNanoword) -> list[MoveInstance]:
    """Moves along the parent chain from the root down to ``key``."""
    chain: list[MoveInstance] = []
    node = side[key]
    while node.parent is not None:
        chain.append(node.move)  # type: ignore[arg-type]
        node = side[node.parent]
    chain.reverse()
    return chain


def _trace_inverse(side: dict[CanonicalNanoword, _Node], key: CanonicalNanoword) -> list[MoveInstance]:
    """Inverse moves from ``key`` back up to the root, in application order."""
    chain: list[MoveInstance] = []
    node = side[key]
    while node.parent is not None:
        chain.append(node.inv_move)  # type: ignore[arg-type]
        node = side[node.parent]
    return chain


def equivalent_bounded(
    n1: Nanoword,
    n2: Nanoword,
    *,
    max_len: int | None = None,
    max_states: int = 200_000,
    derived: bool = True,
    include_shift: bool = False,
) -> SearchOutcome:
    """Bidirectional breadth-first search over canonical forms.

    Returns EQUIVALENT with a witness replaying from ``n1`` to an isomorph of
    ``n2`` when the two move graphs meet within the bounds, otherwise UNKNOWN
    (bound exhaustion is reported in the stats, never as an error).  The
    expansion order is deterministic, so the returned witness is as well.
    """
    if n1.spec != n2.spec:
        raise ValueError("nanowords over different alphabets")
    if max_len is None:
        max_len = max(len(n1.word), len(n2.word)) + 4
    if max_len < max(len(n1.word), len(n2.word)):
        raise ValueError("max_len must cover both input lengths")

    k1, k2 = canonical_form(n1), canonical_form(n2)
    stats_peak = 2
    if k1 == k2:
        return SearchOutcome("EQUIVALENT", (), SearchStats(0, 1, max_len, max_states))

    sides: tuple[dict[CanonicalNanoword, _Node], ...] = (
        {k1: _Node(n1, None, None, None)},
        {k2: _Node(n2, None, None, None)},
    )
    frontiers: list[list[CanonicalNanoword]] = [[k1], [k2]]
    explored = 0

    def assemble(meet: CanonicalNanoword) -> tuple[MoveInstance, ...]:
        forward = _trace_moves(sides[0], meet)
        backward = _trace_inverse(sides[1], meet)
        return tuple(forward + backward)

    while frontiers[0] and frontiers[1]:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        visited = sides[side]
        other = sides[1 - side]
        new_frontier: list[CanonicalNanoword] = []
        for key in frontiers[side]:
            if explored >= max_states:
                return SearchOutcome(
                    "UNKNOWN", None, SearchStats(explored, stats_peak, max_len, max_states)
                )
            explored += 1
            node = visited[key]
            for move in all_moves(node.word, max_len, derived=derived, include_shift=include_shift):
                try:
                    result, inv = apply_move(node.word, move)
                except ValueError:
                    continue
                rkey = canonical_form(result)
                if rkey in visited:
                    continue
                visited[rkey] = _Node(result, key, move, inv)
                new_frontier.append(rkey)
                if rkey in other:
                    stats = SearchStats(explored, stats_peak, max_len, max_states)
                    return SearchOutcome("EQUIVALENT", assemble(rkey), stats)
        frontiers[side] = new_frontier
        stats_peak = max(stats_peak, len(new_frontier), len(frontiers[1 - side]))

    return SearchOutcome("UNKNOWN", None, SearchStats(explored, stats_peak, max_len, max_states))


def is_contractible_bounded(
    n: Nanoword,
    *,
    max_len: int | None = None,
    max_states: int = 200_000,
    derived: bool = True,
    include_shift: bool = False,
) -> SearchOutcome:
    """Search for a homotopy to the empty nanoword."""
    return equivalent_bounded(
        n,
        empty_nanoword(n.spec),
        max_len=max_len,
        max_states=max_states,
        derived=derived,
        include_shift=include_shift,
    )


def format_witness(witness: Sequence[MoveInstance]) -> str:
    return "\n".join(str(m) for m in witness)

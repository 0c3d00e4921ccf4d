"""Alphabets with involution and homotopy data.

An alphabet is a finite ordered set of letters together with an involution
``tau`` and a set of ordered triples gating the third homotopy move.  The
triple set may be the symbolic marker :data:`DIAGONAL`, which stands for
``{(a, a, a) for every letter a}`` and is kept symbolic so that presets print
the way they were declared.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

#: Symbolic marker for the diagonal triple set {(a, a, a)}.
DIAGONAL = "diagonal"

Triple = tuple[str, str, str]


@dataclass(frozen=True)
class AlphabetSpec:
    """A finite alphabet with involution ``tau`` and triple data.

    ``tau_pairs`` lists the involution as ``(letter, image)`` pairs covering
    every letter (fixed points appear as ``(a, a)``).  ``triples`` is either a
    frozenset of ordered triples or ``None`` for the diagonal marker.
    """

    letters: tuple[str, ...]
    tau_pairs: tuple[tuple[str, str], ...]
    triples: frozenset[Triple] | None

    def __post_init__(self) -> None:
        declared = set(self.letters)
        if len(declared) != len(self.letters):
            raise ValueError("duplicate letter in alphabet")
        tau = dict(self.tau_pairs)
        if set(tau) != declared:
            raise ValueError("involution must be defined on exactly the declared letters")
        for a, b in self.tau_pairs:
            if b not in declared:
                raise ValueError(f"involution image {b!r} is not a declared letter")
            if tau[b] != a:
                raise ValueError(f"tau is not an involution at {a!r}")
        if self.triples is not None:
            for t in self.triples:
                for c in t:
                    if c not in declared:
                        raise ValueError(f"triple {t} references undeclared letter {c!r}")

    @cached_property
    def _tau(self) -> dict[str, str]:
        return dict(self.tau_pairs)

    def tau(self, a: str) -> str:
        try:
            return self._tau[a]
        except KeyError:
            raise ValueError(f"unknown letter {a!r}") from None

    @property
    def is_diagonal(self) -> bool:
        return self.triples is None

    def allows_triple(self, a: str, b: str, c: str) -> bool:
        """Whether ``(a, b, c)`` belongs to the triple set (move-3 gate)."""
        if self.triples is None:
            return a == b == c
        return (a, b, c) in self.triples

    @cached_property
    def triple_set(self) -> frozenset[Triple]:
        """The triple set with the DIAGONAL marker expanded."""
        if self.triples is None:
            return frozenset((a, a, a) for a in self.letters)
        return self.triples

    def require_letter(self, a: str) -> None:
        if a not in self._tau:
            raise ValueError(f"unknown letter {a!r}")


def make_alphabet(
    letters: Sequence[str],
    involution_pairs: Iterable[tuple[str, str]] = (),
    fixed_points: Iterable[str] = (),
    triples_or_diagonal: Iterable[Triple] | str = DIAGONAL,
) -> AlphabetSpec:
    """Build a validated :class:`AlphabetSpec`.

    ``involution_pairs`` and ``fixed_points`` must partition the letters; a
    letter in two orbits (or in none) is an error.
    """
    letters = tuple(letters)
    seen: dict[str, str] = {}
    pairs: list[tuple[str, str]] = []
    for a, b in involution_pairs:
        for c in (a, b):
            if c not in letters:
                raise ValueError(f"letter {c!r} in involution pair is not declared")
            if c in seen:
                raise ValueError(f"letter {c!r} lies in two orbits")
            seen[c] = c
        if a == b:
            raise ValueError(f"pair ({a!r}, {b!r}) is not a 2-element orbit; declare it fixed")
        pairs.append((a, b))
        pairs.append((b, a))
    for a in fixed_points:
        if a not in letters:
            raise ValueError(f"fixed point {a!r} is not declared")
        if a in seen:
            raise ValueError(f"letter {a!r} lies in two orbits")
        seen[a] = a
        pairs.append((a, a))
    missing = [a for a in letters if a not in seen]
    if missing:
        raise ValueError(f"letters {missing} not covered by the involution")
    if isinstance(triples_or_diagonal, str):
        if triples_or_diagonal != DIAGONAL:
            raise ValueError(f"unknown triple marker {triples_or_diagonal!r}")
        triples = None
    else:
        triples = frozenset(tuple(t) for t in triples_or_diagonal)
        for t in triples:
            if len(t) != 3:
                raise ValueError(f"triple {t} does not have three entries")
    return AlphabetSpec(letters=letters, tau_pairs=tuple(pairs), triples=triples)


def alpha_zero() -> AlphabetSpec:
    """Two-letter alphabet with tau swapping a, b and S = {(a,a,a), (b,b,b)}.

    This is the preset under which nanoword classes correspond to pointed
    curves on surfaces (open virtual strings).
    """
    return make_alphabet(
        "ab", involution_pairs=[("a", "b")],
        triples_or_diagonal=[("a", "a", "a"), ("b", "b", "b")],
    )


def alpha_star() -> AlphabetSpec:
    """Four-letter alphabet encoding long virtual knot diagrams.

    Letters ``a+ a- b+ b-`` with ``tau(a+)=b-`` and ``tau(a-)=b+``; the triple
    set gates move 3 on same-family sign patterns (+++, ++-, -++).
    """
    letters = ("a+", "a-", "b+", "b-")

    def fam(s: str, x: str) -> str:
        return f"{x}{s}"

    triples: list[Triple] = []
    for x in ("a", "b"):
        for s in ("+", "-"):
            t = "-" if s == "+" else "+"
            triples.append((fam(s, x), fam(s, x), fam(s, x)))
            triples.append((fam(s, x), fam(s, x), fam(t, x)))
            triples.append((fam(t, x), fam(s, x), fam(s, x)))
    return make_alphabet(
        letters,
        involution_pairs=[("a+", "b-"), ("a-", "b+")],
        triples_or_diagonal=triples,
    )


def parse_alphabet(text: str) -> AlphabetSpec:
    """Parse the line-oriented alphabet format.

    Lines: ``letter <id>``, ``tau <id> <id>``, ``fixed <id>``,
    ``triple <id> <id> <id>``, ``S diagonal``.  ``#`` starts a comment.
    """
    letters: list[str] = []
    pairs: list[tuple[str, str]] = []
    fixed: list[str] = []
    triples: list[Triple] = []
    saw_diagonal = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        try:
            if kind == "letter" and len(args) == 1:
                letters.append(args[0])
            elif kind == "tau" and len(args) == 2:
                pairs.append((args[0], args[1]))
            elif kind == "fixed" and len(args) == 1:
                fixed.append(args[0])
            elif kind == "triple" and len(args) == 3:
                triples.append((args[0], args[1], args[2]))
            elif kind == "S" and args == [DIAGONAL]:
                saw_diagonal = True
            else:
                raise ValueError(f"unrecognized directive {line!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if saw_diagonal and triples:
        raise ValueError("both 'S diagonal' and explicit triples given")
    data: Iterable[Triple] | str = DIAGONAL if (saw_diagonal or not triples) else triples
    return make_alphabet(letters, pairs, fixed, data)


def load_alphabet(path: str) -> AlphabetSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_alphabet(fh.read())


def format_alphabet(spec: AlphabetSpec) -> str:
    """Serialize back to the line format (inverse of :func:`parse_alphabet`)."""
    out = [f"letter {a}" for a in spec.letters]
    done: set[str] = set()
    for a in spec.letters:
        if a in done:
            continue
        b = spec.tau(a)
        if b == a:
            out.append(f"fixed {a}")
        else:
            out.append(f"tau {a} {b}")
        done.update((a, b))
    if spec.is_diagonal:
        out.append("S diagonal")
    else:
        for t in sorted(spec.triples or ()):
            out.append(f"triple {t[0]} {t[1]} {t[2]}")
    return "\n".join(out) + "\n"

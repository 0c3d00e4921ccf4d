"""Etale words and nanowords: structure, desingularization, canonical forms.

An etale word over an alphabet ``alpha`` is a word in a letter set that
projects to ``alpha``; a nanoword is an etale word in which every letter
occurs exactly twice (a Gauss word over its letter set).  Nanowords are
compared up to isomorphism: a projection-preserving bijective renaming of the
letter set.  All values here are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from .alphabet import AlphabetSpec


@dataclass(frozen=True)
class EtaleWord:
    """A word over a projected letter set.

    ``letters`` lists ``(name, projection)`` pairs in declaration order;
    ``word`` is the sequence of letter names.  Letter names are arbitrary
    strings and never affect invariants (canonical forms rename them).
    """

    spec: AlphabetSpec
    letters: tuple[tuple[str, str], ...]
    word: tuple[str, ...]

    def __post_init__(self) -> None:
        names = [name for name, _ in self.letters]
        if len(set(names)) != len(names):
            raise ValueError("duplicate letter name")
        for name, proj in self.letters:
            self.spec.require_letter(proj)
        declared = set(names)
        for name in self.word:
            if name not in declared:
                raise ValueError(f"word uses undeclared letter {name!r}")

    @cached_property
    def proj(self) -> dict[str, str]:
        return dict(self.letters)

    @cached_property
    def multiplicity(self) -> dict[str, int]:
        m = {name: 0 for name, _ in self.letters}
        for name in self.word:
            m[name] += 1
        return m

    def __len__(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class Nanoword(EtaleWord):
    """An etale word in which every declared letter occurs exactly twice."""

    def __post_init__(self) -> None:
        super().__post_init__()
        for name, count in self.multiplicity.items():
            if count != 2:
                raise ValueError(f"letter {name!r} occurs {count} times, expected 2")
        if len(self.word) != 2 * len(self.letters):
            raise ValueError("word length must be twice the letter count")

    @cached_property
    def occurrences(self) -> dict[str, tuple[int, int]]:
        """0-based (first, second) positions of each letter."""
        occ: dict[str, list[int]] = {}
        for pos, name in enumerate(self.word):
            occ.setdefault(name, []).append(pos)
        return {name: (ps[0], ps[1]) for name, ps in occ.items()}


def etale_word(spec: AlphabetSpec, letters: Iterable[tuple[str, str]], word: Iterable[str]) -> EtaleWord:
    return EtaleWord(spec, tuple(letters), tuple(word))


def nanoword(spec: AlphabetSpec, letters: Iterable[tuple[str, str]], word: Iterable[str]) -> Nanoword:
    return Nanoword(spec, tuple(letters), tuple(word))


def empty_nanoword(spec: AlphabetSpec) -> Nanoword:
    return Nanoword(spec, (), ())


def from_plain_word(spec: AlphabetSpec, text: str) -> EtaleWord:
    """Interpret a word on alpha itself (each alpha letter is its own name)."""
    used: list[str] = []
    for ch in text:
        spec.require_letter(ch)
        if ch not in used:
            used.append(ch)
    return EtaleWord(spec, tuple((c, c) for c in used), tuple(text))


def opposite(w: EtaleWord) -> EtaleWord:
    """Reverse the word; letters and projections are unchanged."""
    return type(w)(w.spec, w.letters, tuple(reversed(w.word)))


def _fresh_name(base: str, taken: set[str]) -> str:
    if base not in taken:
        return base
    k = 2
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def product(w1: EtaleWord, w2: EtaleWord) -> EtaleWord:
    """Concatenate over the disjoint union of letter sets.

    Colliding names from ``w2`` are renamed deterministically by suffixing.
    """
    if w1.spec != w2.spec:
        raise ValueError("etale words over different alphabets")
    taken = {name for name, _ in w1.letters}
    rename: dict[str, str] = {}
    new_letters = list(w1.letters)
    for name, proj in w2.letters:
        fresh = _fresh_name(name, taken)
        taken.add(fresh)
        rename[name] = fresh
        new_letters.append((fresh, proj))
    word = w1.word + tuple(rename[name] for name in w2.word)
    out = EtaleWord(w1.spec, tuple(new_letters), word)
    if isinstance(w1, Nanoword) and isinstance(w2, Nanoword):
        return Nanoword(out.spec, out.letters, out.word)
    return out


def desingularize(w: EtaleWord) -> Nanoword:
    """Expand an etale word into a nanoword.

    Letters of multiplicity 1 are deleted.  A letter A of multiplicity m >= 2
    becomes m(m-1)/2 letters ``A_i_j`` (1 <= i < j <= m) with the same
    projection; the i-th entry of A is replaced by
    ``A_1_i ... A_{i-1}_i A_i_{i+1} ... A_i_m``.
    """
    mult = w.multiplicity
    letters: list[tuple[str, str]] = []
    for name, proj in w.letters:
        m = mult[name]
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                letters.append((f"{name}_{i}_{j}", proj))
    seen: dict[str, int] = {name: 0 for name, _ in w.letters}
    out: list[str] = []
    for name in w.word:
        m = mult[name]
        if m < 2:
            continue
        seen[name] += 1
        i = seen[name]
        for k in range(1, i):
            out.append(f"{name}_{k}_{i}")
        for k in range(i + 1, m + 1):
            out.append(f"{name}_{i}_{k}")
    return Nanoword(w.spec, tuple(letters), tuple(out))


class CanonicalNanoword(NamedTuple):
    """Total-order key for nanowords up to isomorphism.

    Letters are renamed 1, 2, 3, ... in order of first occurrence; ``ranks``
    rewrites the word over these ranks and ``projections`` records the alpha
    letter of each rank.  Two nanowords are isomorphic iff their canonical
    forms are equal.
    """

    ranks: tuple[int, ...]
    projections: tuple[str, ...]


def canonical_form(n: Nanoword) -> CanonicalNanoword:
    rank: dict[str, int] = {}
    ranks: list[int] = []
    projs: list[str] = []
    proj = n.proj
    for name in n.word:
        if name not in rank:
            rank[name] = len(rank) + 1
            projs.append(proj[name])
        ranks.append(rank[name])
    return CanonicalNanoword(tuple(ranks), tuple(projs))


def from_canonical(spec: AlphabetSpec, key: CanonicalNanoword) -> Nanoword:
    """Materialize a canonical form as a nanoword with rank-derived names."""
    letters = tuple((f"X{r}", p) for r, p in enumerate(key.projections, start=1))
    word = tuple(f"X{r}" for r in key.ranks)
    return Nanoword(spec, letters, word)


def is_isomorphic(n1: Nanoword, n2: Nanoword) -> bool:
    return canonical_form(n1) == canonical_form(n2)


def project_word(w: EtaleWord, f: Mapping[str, str], target: AlphabetSpec) -> EtaleWord:
    """Change of alphabet: push the projections through ``f: alpha -> alpha'``."""
    letters = []
    for name, proj in w.letters:
        if proj not in f:
            raise ValueError(f"map does not cover letter {proj!r}")
        letters.append((name, f[proj]))
    out = EtaleWord(target, tuple(letters), w.word)
    if isinstance(w, Nanoword):
        return Nanoword(target, out.letters, out.word)
    return out


def parse_word_literal(spec: AlphabetSpec, text: str) -> Nanoword:
    """Parse ``A:a B:b :: A B A B`` (declarations, then the word).

    The empty literal (or one with no declarations) is the empty nanoword.
    """
    text = text.strip()
    if not text:
        return empty_nanoword(spec)
    if "::" in text:
        decl_part, word_part = text.split("::", 1)
    else:
        raise ValueError("nanoword literal must contain '::'")
    letters: list[tuple[str, str]] = []
    for tok in decl_part.split():
        if ":" not in tok:
            raise ValueError(f"declaration {tok!r} is not of the form Name:proj")
        name, proj = tok.split(":", 1)
        letters.append((name, proj))
    word = tuple(word_part.split())
    return Nanoword(spec, tuple(letters), word)


def format_word_literal(n: EtaleWord) -> str:
    decls = " ".join(f"{name}:{proj}" for name, proj in n.letters)
    return f"{decls} :: {' '.join(n.word)}" if n.letters else "::"

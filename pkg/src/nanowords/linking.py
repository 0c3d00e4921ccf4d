"""The gamma invariant, interlacement, letter classes, and self-linking.

These invariants are proven homotopy-invariant only when the triple set is
the diagonal, so ``gamma`` and ``self_linking`` refuse to run under any other
homotopy data.  Interlacement and letter classes are raw combinatorial
quantities and are computed for any alphabet.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .alphabet import AlphabetSpec
from .groups import Orbits, PiWord, Vec, ZPi, freeze
from .words import Nanoword, desingularize, from_plain_word


@lru_cache(maxsize=None)
def orbit_table(spec: AlphabetSpec) -> Orbits:
    return Orbits(spec)


def _require_diagonal(n: Nanoword, what: str) -> None:
    if not n.spec.is_diagonal:
        raise ValueError(
            f"{what} is only a homotopy invariant for diagonal homotopy data; "
            "this alphabet has a custom triple set"
        )


def gamma(n: Nanoword) -> PiWord:
    """Product over the word of z_|letter|, inverted at second occurrences."""
    _require_diagonal(n, "gamma")
    ctx = orbit_table(n.spec)
    seen: set[str] = set()
    out = ctx.pi_identity
    proj = n.proj
    for name in n.word:
        exp = -1 if name in seen else 1
        seen.add(name)
        out = ctx.pi_mul(out, ctx.pi_gen(proj[name], exp))
    return out


@dataclass(frozen=True)
class InterlacementMatrix:
    """Skew-symmetric matrix n_w over the nanoword's letters.

    Entry +1 when the two letters alternate row-first (A..B..A..B), -1 for
    the reversed pattern, 0 otherwise.
    """

    names: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def entry(self, a: str, b: str) -> int:
        return self.entries[self.names.index(a)][self.names.index(b)]


def interlacement_value(n: Nanoword, a: str, b: str) -> int:
    ia, ja = n.occurrences[a]
    ib, jb = n.occurrences[b]
    if ia < ib < ja < jb:
        return 1
    if ib < ia < jb < ja:
        return -1
    return 0


def interlacement(n: Nanoword) -> InterlacementMatrix:
    names = tuple(name for name, _ in n.letters)
    entries = tuple(
        tuple(interlacement_value(n, a, b) for b in names) for a in names
    )
    return InterlacementMatrix(names, entries)


def letter_class(n: Nanoword, a: str) -> Vec:
    """[A]_w: product over letters B of |B| ** n_w(A, B), in pi."""
    if a not in n.proj:
        raise ValueError(f"unknown letter {a!r}")
    ctx = orbit_table(n.spec)
    out = ctx.vec_identity
    for name, proj in n.letters:
        e = interlacement_value(n, a, name)
        if e:
            out = ctx.vec_mul(out, ctx.vec_gen(proj, e))
    return out


@dataclass(frozen=True)
class SelfLinkingReport:
    """Letter classes, the per-alpha-letter sums, and the protected fields.

    ``by_alpha`` has an entry for every alpha letter, including letters with
    no occurrences (value 0): the per-orbit difference needs [tau(a)]_w even
    when nothing projects to tau(a).  ``differences`` maps each free-orbit
    representative a to [a]_w - [tau(a)]_w; ``mod2`` maps each fixed letter a
    to [a]_w over Z/2.  Only those last two families are homotopy invariants.
    """

    letter_classes: tuple[tuple[str, Vec], ...]
    by_alpha: tuple[tuple[str, tuple], ...]
    differences: tuple[tuple[str, tuple], ...]
    mod2: tuple[tuple[str, tuple], ...]

    def protected(self) -> tuple:
        """Hashable fingerprint of the invariant fields."""
        return (self.differences, self.mod2)

    def is_trivial(self) -> bool:
        return all(not v for _, v in self.differences) and all(not v for _, v in self.mod2)


def self_linking(n: Nanoword) -> SelfLinkingReport:
    _require_diagonal(n, "self-linking")
    ctx = orbit_table(n.spec)
    classes = [(name, letter_class(n, name)) for name, _ in n.letters]
    class_of = dict(classes)
    by_alpha: dict[str, ZPi] = {a: ctx.zpi_zero() for a in n.spec.letters}
    for (name, proj) in n.letters:
        v = class_of[name]
        if v != ctx.vec_identity:
            by_alpha[proj] = ctx.zpi_add(by_alpha[proj], ctx.zpi_embed(v))
    differences = []
    mod2 = []
    for k, orbit in enumerate(ctx.orbits):
        if ctx.fixed[k]:
            mod2.append((orbit[0], freeze(ctx.zpi_mod2(by_alpha[orbit[0]]))))
        else:
            a, b = orbit
            diff = ctx.zpi_add(by_alpha[a], ctx.zpi_scale(by_alpha[b], -1))
            differences.append((a, freeze(diff)))
    return SelfLinkingReport(
        letter_classes=tuple(classes),
        by_alpha=tuple(sorted((a, freeze(v)) for a, v in by_alpha.items())),
        differences=tuple(differences),
        mod2=tuple(mod2),
    )


def monoliteral_distinguish(spec: AlphabetSpec, a: str, m: int, b: str, n: int) -> str:
    """Compare the monoliteral words a^m and b^n via self-linking.

    Returns NOT_HOMOTOPIC when the protected self-linking fields of the
    desingularizations differ, INCONCLUSIVE otherwise; homotopy is never
    asserted.  Requires tau-free letters and m, n >= 3.
    """
    for c in (a, b):
        if spec.tau(c) == c:
            raise ValueError(f"letter {c!r} is fixed by tau")
    if m < 3 or n < 3:
        raise ValueError("monoliteral comparison needs exponents >= 3")
    wa = desingularize(from_plain_word(spec, a * m))
    wb = desingularize(from_plain_word(spec, b * n))
    if self_linking(wa).protected() != self_linking(wb).protected():
        return "NOT_HOMOTOPIC"
    return "INCONCLUSIVE"

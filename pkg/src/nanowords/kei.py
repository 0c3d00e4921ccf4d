"""Alpha-keis: axioms, abelian keis over Lambda-modules, the free kei on the
set Psi, kei outputs of nanowords, and characteristic sequences.

A kei here is a carrier with a unary action x -> ax and a binary x *_a y per
alpha letter, subject to five axioms; any left Lambda-module is one via
x *_a y = a. x + (1 - a. a) y.  The free kei F is the free group on the
underlying set of Psi: the letter actions relabel generators by left
Psi-multiplication, and the star operations are fixed word formulas that
depend on a choice of alpha_+ (one letter per tau-orbit), so they exist only
when tau is fixed-point-free.

Evaluating the dash relations of a nanoword in F sends the input generator
underline(1) to an output word whose reduced signed generator sequence is
the characteristic sequence; its signed sum in Lambda recovers lambda.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .alphabet import AlphabetSpec
from .groups import Lam, Orbits, PsiWord
from .linking import orbit_table
from .words import Nanoword

FreeKeiElement = tuple[tuple[PsiWord, int], ...]
SignedSequence = tuple[tuple[int, PsiWord], ...]


def _resolve_alpha_plus(spec: AlphabetSpec, alpha_plus: Iterable[str] | None) -> frozenset[str]:
    ctx = orbit_table(spec)
    for a in spec.letters:
        if spec.tau(a) == a:
            raise ValueError(
                "free-kei constructions need a fixed-point-free involution; "
                f"tau fixes {a!r}"
            )
    if alpha_plus is None:
        return frozenset(ctx.reps)
    chosen = frozenset(alpha_plus)
    for a in chosen:
        spec.require_letter(a)
    for orbit in ctx.orbits:
        hits = [a for a in orbit if a in chosen]
        if len(hits) != 1:
            raise ValueError(f"alpha_+ must meet orbit {orbit} exactly once")
    return chosen


class FreeKei:
    """The free alpha-kei on the underlying set of Psi.

    Elements are reduced words in the free group whose generators are
    Psi-elements in normal form; ``unit`` is the length-1 word on the
    generator indexed by the Psi identity.
    """

    def __init__(self, spec: AlphabetSpec, alpha_plus: Iterable[str] | None = None):
        self.spec = spec
        self.ctx = orbit_table(spec)
        self.alpha_plus = _resolve_alpha_plus(spec, alpha_plus)

    @property
    def unit(self) -> FreeKeiElement:
        return (((), 1),)

    @staticmethod
    def reduce(seq: Iterable[tuple[PsiWord, int]]) -> FreeKeiElement:
        stack: list[tuple[PsiWord, int]] = []
        for g, e in seq:
            if stack and stack[-1][0] == g and stack[-1][1] == -e:
                stack.pop()
            else:
                stack.append((g, e))
        return tuple(stack)

    def mul(self, *parts: FreeKeiElement) -> FreeKeiElement:
        out: list[tuple[PsiWord, int]] = []
        for part in parts:
            out.extend(part)
        return self.reduce(out)

    @staticmethod
    def inv(x: FreeKeiElement) -> FreeKeiElement:
        return tuple((g, -e) for g, e in reversed(x))

    def act_psi(self, psi: PsiWord, x: FreeKeiElement) -> FreeKeiElement:
        """Relabel every generator by left Psi-multiplication."""
        return self.reduce((self.ctx.psi_mul(psi, g), e) for g, e in x)

    def act(self, a: str, x: FreeKeiElement) -> FreeKeiElement:
        return self.act_psi(self.ctx.psi_gen(a), x)

    def star(self, a: str, x: FreeKeiElement, y: FreeKeiElement) -> FreeKeiElement:
        """x *_a y, split by whether a is the alpha_+ letter of its orbit."""
        ctx = self.ctx
        gen = ctx.psi_gen(a)
        gen_b = ctx.psi_gen(a, bullet=True)
        if a in self.alpha_plus:
            # y (a. x) (a. a y)^-1
            return self.mul(
                y,
                self.act_psi(gen_b, x),
                self.inv(self.act_psi(ctx.psi_mul(gen_b, gen), y)),
            )
        # (a. a y)^-1 (a. x) y; the middle factor is forced by axiom (5),
        # which this formula inverts against the alpha_+ branch
        head = self.act_psi(ctx.psi_mul(gen_b, gen), y)
        return self.mul(self.inv(head), self.act_psi(gen_b, x), y)


@dataclass(frozen=True)
class KeiStructure:
    """A carrier with kei operations, for axiom checking.

    ``act(a, x)`` and ``star(a, x, y)`` operate on carrier elements;
    ``samples`` supplies elements to test on and ``key`` maps elements to a
    comparable canonical form (identity when omitted).
    """

    spec: AlphabetSpec
    act: Callable
    star: Callable
    samples: tuple
    key: Callable = lambda v: v


def abelian_kei(spec: AlphabetSpec, samples: Sequence[tuple[Lam, ...]]) -> KeiStructure:
    """The kei structure of a free Lambda-module: x *_a y = a. x + (1 - a. a) y."""
    ctx = orbit_table(spec)

    def scale(psi: PsiWord, x: tuple[Lam, ...]) -> tuple[Lam, ...]:
        mono = ctx.lam_mono(psi)
        return tuple(ctx.lam_mul(mono, c) for c in x)

    def add(x: tuple[Lam, ...], y: tuple[Lam, ...]) -> tuple[Lam, ...]:
        return tuple(ctx.lam_add(a, b) for a, b in zip(x, y))

    def act(a: str, x: tuple[Lam, ...]) -> tuple[Lam, ...]:
        return scale(ctx.psi_gen(a), x)

    def star(a: str, x: tuple[Lam, ...], y: tuple[Lam, ...]) -> tuple[Lam, ...]:
        gen, gen_b = ctx.psi_gen(a), ctx.psi_gen(a, bullet=True)
        one_minus = ctx.lam_sub(ctx.lam_one(), ctx.lam_mul(ctx.lam_mono(gen_b), ctx.lam_mono(gen)))
        return add(scale(gen_b, x), tuple(ctx.lam_mul(one_minus, c) for c in y))

    def freeze_elt(x: tuple[Lam, ...]) -> tuple:
        return tuple(tuple(sorted(c.items())) for c in x)

    return KeiStructure(spec, act, star, tuple(samples), freeze_elt)


def free_kei_structure(kei: FreeKei, samples: Sequence[FreeKeiElement]) -> KeiStructure:
    return KeiStructure(kei.spec, kei.act, kei.star, tuple(samples))


AXIOMS = (
    "ax *_a x = x",
    "a(x *_a y) = ax *_a ay",
    "(x *_a y) *_a z = (x *_a az) *_a (y *_a z)",
    "a tau(a) x = x",
    "(x *_a y) *_tau(a) ay = x",
)


def find_axiom_violation(k: KeiStructure):
    """First violated axiom over all letters and sample triples, or None."""
    ident = k.key
    spec, act, star = k.spec, k.act, k.star
    samples = k.samples
    for a in spec.letters:
        t = spec.tau(a)
        for x in samples:
            if ident(star(a, act(a, x), x)) != ident(x):
                return (1, a, (x,))
            if ident(act(a, act(t, x))) != ident(x):
                return (4, a, (x,))
            for y in samples:
                if ident(act(a, star(a, x, y))) != ident(star(a, act(a, x), act(a, y))):
                    return (2, a, (x, y))
                if ident(star(t, star(a, x, y), act(a, y))) != ident(x):
                    return (5, a, (x, y))
                for z in samples:
                    lhs = star(a, star(a, x, y), z)
                    rhs = star(a, star(a, x, act(a, z)), star(a, y, z))
                    if ident(lhs) != ident(rhs):
                        return (3, a, (x, y, z))
    return None


def check_kei_axioms(k: KeiStructure) -> bool:
    return find_axiom_violation(k) is None


def kei_output(n: Nanoword, alpha_plus: Iterable[str] | None = None) -> FreeKeiElement:
    """Evaluate the dash relations (beta = alpha) in the free kei.

    X_0 = underline(1); a first occurrence of A at position i sets
    X_{i+1} = a X_i and the second occurrence at j sets X_{j+1} = X_j *_a X_i.
    Returns X_n.
    """
    kei = FreeKei(n.spec, alpha_plus)
    xs: list[FreeKeiElement] = [kei.unit]
    for pos, name in enumerate(n.word):
        a = n.proj[name]
        i, _ = n.occurrences[name]
        if pos == i:
            xs.append(kei.act(a, xs[pos]))
        else:
            xs.append(kei.star(a, xs[pos], xs[i]))
    return xs[-1]


def characteristic_sequence(
    n: Nanoword, alpha_plus: Iterable[str] | None = None
) -> SignedSequence:
    """The reduced signed generator sequence of the kei output."""
    return tuple((e, g) for g, e in kei_output(n, alpha_plus))


def sequence_sum(spec: AlphabetSpec, seq: SignedSequence) -> Lam:
    """Signed sum of the sequence in Lambda (equals lambda of the word)."""
    ctx = orbit_table(spec)
    out: Lam = {}
    for e, g in seq:
        out = ctx.lam_add(out, ctx.lam_mono(g, e))
    return out


def format_sequence(spec: AlphabetSpec, seq: SignedSequence) -> str:
    ctx = orbit_table(spec)
    parts = []
    for e, g in seq:
        body = ctx.fmt_psi(g)
        parts.append(body if e > 0 else f"-{body}")
    return "(" + ", ".join(parts) + ")"


def emit_kei_presentation(n: Nanoword, beta: frozenset[str]) -> str:
    """Generators X_0..X_n and the two relations per letter, as text."""
    lines = [f"generators X_0 .. X_{len(n.word)}"]
    order = sorted((name for name, _ in n.letters), key=lambda nm: n.occurrences[nm][0])
    for name in order:
        a = n.proj[name]
        i, j = n.occurrences[name]
        i1, j1 = i + 1, j + 1
        if a in beta:
            lines.append(f"X_{i1} = {a} X_{i1 - 1}")
            lines.append(f"X_{j1} = X_{j1 - 1} *_{a} X_{i1 - 1}")
        else:
            lines.append(f"X_{i1} = X_{i1 - 1} *_{a} X_{j1 - 1}")
            lines.append(f"X_{j1} = {a} X_{j1 - 1}")
    return "\n".join(lines) + "\n"

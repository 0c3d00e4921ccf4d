"""Exact arithmetic in the groups Pi, pi, Psi and the rings Zpi and Lambda.

All three groups are determined by the alphabet's involution tau:

* ``Pi``  = free product, over tau-orbits, of Z (free orbit {a, tau(a)}) or
  Z/2 (fixed orbit {a}); the generator of an orbit is its representative
  letter and the partner letter is its inverse.
* ``pi``  = abelianization of Pi: exponent vectors, Z per free orbit and
  Z/2 per fixed orbit.
* ``Psi`` = free product, over tau-orbits, of Z^2 or (Z/2)^2: each orbit
  contributes a plain generator and a commuting "bullet" partner; nothing
  commutes across orbits.

Elements are plain tuples in a unique normal form, with all operations
provided by an :class:`Orbits` context built from the alphabet:

* Pi words: ``((orbit, exp), ...)`` with adjacent orbits distinct, exp in
  Z - {0} on free orbits and exp == 1 on fixed orbits;
* pi vectors: one integer per orbit (0/1 on fixed orbits);
* Psi words: ``((orbit, p, q), ...)`` with adjacent orbits distinct and
  (p, q) != (0, 0), reduced mod 2 on fixed orbits.

``Zpi`` and ``Lambda`` elements are dicts mapping pi vectors / Psi words to
nonzero integer coefficients; :func:`freeze` turns them into hashable sorted
tuples.  The ring ``Lambda`` carries the reversal anti-automorphism ``iota``
and a (Z/2)^2 grading by parities of plain and bullet exponents.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .alphabet import AlphabetSpec

PiWord = tuple[tuple[int, int], ...]
Vec = tuple[int, ...]
PsiWord = tuple[tuple[int, int, int], ...]
ZPi = dict[Vec, int]
Lam = dict[PsiWord, int]


class Orbits:
    """Orbit table of an alphabet plus arithmetic for Pi, pi, Psi, Zpi, Lambda.

    Free orbits carry the lexicographically least letter as representative
    (its generators print with positive exponent; the partner letter is the
    representative's inverse).
    """

    def __init__(self, spec: AlphabetSpec):
        self.spec = spec
        orbits: list[tuple[str, ...]] = []
        index: dict[str, tuple[int, int]] = {}
        for a in sorted(spec.letters):
            if a in index:
                continue
            b = spec.tau(a)
            k = len(orbits)
            if b == a:
                orbits.append((a,))
                index[a] = (k, 1)
            else:
                orbits.append((a, b))
                index[a] = (k, 1)
                index[b] = (k, -1)
        self.orbits = tuple(orbits)
        self.index = index
        self.fixed = tuple(len(o) == 1 for o in self.orbits)
        self.n = len(self.orbits)

    def rep(self, k: int) -> str:
        return self.orbits[k][0]

    @cached_property
    def reps(self) -> tuple[str, ...]:
        """Default alpha_+ : the representative letter of each orbit."""
        return tuple(o[0] for o in self.orbits)

    def letter_orbit(self, a: str) -> tuple[int, int]:
        """(orbit index, sign); the sign is -1 on a free orbit's partner letter."""
        try:
            return self.index[a]
        except KeyError:
            raise ValueError(f"letter {a!r} is not in this alphabet") from None

    # ------------------------------------------------------------------ Pi

    pi_identity: PiWord = ()

    def _pi_guard(self, x: PiWord) -> None:
        for orb, _ in x:
            if not 0 <= orb < self.n:
                raise ValueError("element does not belong to this alphabet's group")

    def _pi_push(self, stack: list[tuple[int, int]], orb: int, exp: int) -> None:
        if self.fixed[orb]:
            exp %= 2
        if exp == 0:
            return
        if stack and stack[-1][0] == orb:
            if self.fixed[orb]:
                stack.pop()
                return
            merged = stack[-1][1] + exp
            stack.pop()
            if merged:
                stack.append((orb, merged))
            return
        stack.append((orb, 1 if self.fixed[orb] else exp))

    def pi_gen(self, a: str, exp: int = 1) -> PiWord:
        """The generator z_a (to the given power) in normal form."""
        orb, sign = self.letter_orbit(a)
        stack: list[tuple[int, int]] = []
        self._pi_push(stack, orb, sign * exp)
        return tuple(stack)

    def pi_mul(self, x: PiWord, y: PiWord) -> PiWord:
        self._pi_guard(x)
        self._pi_guard(y)
        stack = list(x)
        for orb, exp in y:
            self._pi_push(stack, orb, exp)
        return tuple(stack)

    def pi_inv(self, x: PiWord) -> PiWord:
        self._pi_guard(x)
        return tuple((orb, exp if self.fixed[orb] else -exp) for orb, exp in reversed(x))

    def pi_product(self, factors: Iterable[PiWord]) -> PiWord:
        out: PiWord = ()
        for f in factors:
            out = self.pi_mul(out, f)
        return out

    def pi_abelianize(self, x: PiWord) -> Vec:
        v = [0] * self.n
        for orb, exp in x:
            v[orb] += exp
        return self._vec_norm(v)

    def pi_is_in_commutator(self, x: PiWord) -> bool:
        return self.pi_abelianize(x) == self.vec_identity

    # ------------------------------------------------------------------ pi

    @cached_property
    def vec_identity(self) -> Vec:
        return (0,) * self.n

    def _vec_norm(self, v: Sequence[int]) -> Vec:
        return tuple(x % 2 if f else x for x, f in zip(v, self.fixed))

    def vec_gen(self, a: str, exp: int = 1) -> Vec:
        orb, sign = self.letter_orbit(a)
        v = [0] * self.n
        v[orb] = sign * exp
        return self._vec_norm(v)

    def vec_mul(self, u: Vec, v: Vec) -> Vec:
        if len(u) != self.n or len(v) != self.n:
            raise ValueError("vector does not belong to this alphabet's group")
        return self._vec_norm([a + b for a, b in zip(u, v)])

    def vec_inv(self, u: Vec) -> Vec:
        return self._vec_norm([-a for a in u])

    def vec_pow(self, u: Vec, k: int) -> Vec:
        return self._vec_norm([a * k for a in u])

    # ----------------------------------------------------------------- Zpi

    @staticmethod
    def zpi_zero() -> ZPi:
        return {}

    def zpi_embed(self, u: Vec) -> ZPi:
        return {u: 1}

    @staticmethod
    def zpi_add(x: ZPi, y: ZPi) -> ZPi:
        out = dict(x)
        for k, c in y.items():
            c2 = out.get(k, 0) + c
            if c2:
                out[k] = c2
            else:
                out.pop(k, None)
        return out

    @staticmethod
    def zpi_scale(x: ZPi, c: int) -> ZPi:
        if c == 0:
            return {}
        return {k: v * c for k, v in x.items()}

    @staticmethod
    def zpi_mod2(x: ZPi) -> ZPi:
        return {k: 1 for k, v in x.items() if v % 2}

    # ----------------------------------------------------------------- Psi

    psi_identity: PsiWord = ()

    def _psi_guard(self, x: PsiWord) -> None:
        for orb, _, _ in x:
            if not 0 <= orb < self.n:
                raise ValueError("element does not belong to this alphabet's group")

    def _psi_push(self, stack: list[tuple[int, int, int]], orb: int, p: int, q: int) -> None:
        if self.fixed[orb]:
            p %= 2
            q %= 2
        if stack and stack[-1][0] == orb:
            _, p0, q0 = stack.pop()
            p, q = p0 + p, q0 + q
            if self.fixed[orb]:
                p %= 2
                q %= 2
            if p or q:
                stack.append((orb, p, q))
            return
        if p or q:
            stack.append((orb, p, q))

    def psi_gen(self, a: str, bullet: bool = False, exp: int = 1) -> PsiWord:
        orb, sign = self.letter_orbit(a)
        stack: list[tuple[int, int, int]] = []
        if bullet:
            self._psi_push(stack, orb, 0, sign * exp)
        else:
            self._psi_push(stack, orb, sign * exp, 0)
        return tuple(stack)

    def psi_mul(self, x: PsiWord, y: PsiWord) -> PsiWord:
        self._psi_guard(x)
        self._psi_guard(y)
        stack = list(x)
        for orb, p, q in y:
            self._psi_push(stack, orb, p, q)
        return tuple(stack)

    def psi_inv(self, x: PsiWord) -> PsiWord:
        self._psi_guard(x)
        stack: list[tuple[int, int, int]] = []
        for orb, p, q in reversed(x):
            self._psi_push(stack, orb, -p, -q)
        return tuple(stack)

    def psi_product(self, factors: Iterable[PsiWord]) -> PsiWord:
        out: PsiWord = ()
        for f in factors:
            out = self.psi_mul(out, f)
        return out

    @staticmethod
    def psi_grade(x: PsiWord) -> tuple[int, int]:
        """Parities (plain degree mod 2, bullet degree mod 2) of a monomial."""
        return (sum(p for _, p, _ in x) % 2, sum(q for _, _, q in x) % 2)

    # -------------------------------------------------------------- Lambda

    @staticmethod
    def lam_zero() -> Lam:
        return {}

    @staticmethod
    def lam_one() -> Lam:
        return {(): 1}

    def lam_mono(self, x: PsiWord, c: int = 1) -> Lam:
        return {x: c} if c else {}

    @staticmethod
    def lam_add(x: Lam, y: Lam) -> Lam:
        out = dict(x)
        for k, c in y.items():
            c2 = out.get(k, 0) + c
            if c2:
                out[k] = c2
            else:
                out.pop(k, None)
        return out

    @staticmethod
    def lam_scale(x: Lam, c: int) -> Lam:
        if c == 0:
            return {}
        return {k: v * c for k, v in x.items()}

    def lam_sub(self, x: Lam, y: Lam) -> Lam:
        return self.lam_add(x, self.lam_scale(y, -1))

    def lam_mul(self, x: Lam, y: Lam) -> Lam:
        out: Lam = {}
        for kx, cx in x.items():
            for ky, cy in y.items():
                k = self.psi_mul(kx, ky)
                c = out.get(k, 0) + cx * cy
                if c:
                    out[k] = c
                else:
                    out.pop(k, None)
        return out

    def lam_iota(self, x: Lam) -> Lam:
        """Reversal anti-automorphism: reads each monomial right to left.

        Generators are kept fixed, so on normal forms iota just reverses the
        syllable sequence (a syllable is already palindromic: a and its
        bullet partner commute).
        """
        out: Lam = {}
        for k, c in x.items():
            r = tuple(reversed(k))
            c2 = out.get(r, 0) + c
            if c2:
                out[r] = c2
            else:
                out.pop(r, None)
        return out

    def lam_grade(self, x: Lam) -> dict[tuple[int, int], Lam]:
        """Split into the four graded pieces; the pieces sum back to ``x``."""
        parts: dict[tuple[int, int], Lam] = {(0, 0): {}, (0, 1): {}, (1, 0): {}, (1, 1): {}}
        for k, c in x.items():
            parts[self.psi_grade(k)][k] = c
        return parts

    # ---------------------------------------------------------- formatting

    def _fmt_power(self, name: str, exp: int) -> str:
        return name if exp == 1 else f"{name}^{exp}"

    def fmt_vec(self, u: Vec) -> str:
        parts = [self._fmt_power(self.rep(k), e) for k, e in enumerate(u) if e]
        return " ".join(parts) if parts else "1"

    def fmt_pi(self, x: PiWord) -> str:
        parts = [self._fmt_power(self.rep(orb), exp) for orb, exp in x]
        return " ".join(parts) if parts else "1"

    def fmt_psi(self, x: PsiWord) -> str:
        parts: list[str] = []
        for orb, p, q in x:
            name = self.rep(orb)
            if p:
                parts.append(self._fmt_power(name, p))
            if q:
                parts.append(self._fmt_power(name + ".", q))
        return " ".join(parts) if parts else "1"

    def _fmt_sum(self, terms: list[tuple[str, int]]) -> str:
        if not terms:
            return "0"
        chunks: list[str] = []
        for mono, c in terms:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag} {mono}"
            if not chunks:
                chunks.append(body if c > 0 else f"-{body}")
            else:
                chunks.append(f"{sign} {body}")
        return " ".join(chunks)

    def fmt_zpi(self, x: ZPi) -> str:
        terms = [(self.fmt_vec(k), c) for k, c in sorted(x.items())]
        return self._fmt_sum(terms)

    def fmt_lam(self, x: Lam) -> str:
        terms = [(self.fmt_psi(k), c) for k, c in sorted(x.items())]
        return self._fmt_sum(terms)

    # ------------------------------------------------------------- parsing

    def _tokens(self, text: str) -> Iterator[tuple[str, object]]:
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch in "+-":
                yield ("sign", -1 if ch == "-" else 1)
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                yield ("int", int(text[i:j]))
                i = j
            elif ch == "^":
                j = i + 1
                if j < n and text[j] == "-":
                    j += 1
                k = j
                while k < n and text[k].isdigit():
                    k += 1
                if k == j:
                    raise ValueError(f"expected integer exponent at {text[i:]!r}")
                yield ("exp", int(text[i + 1:k]))
                i = k
            else:
                j = i
                while j < n and (text[j].isalnum() or text[j] in "_'+"):
                    j += 1
                if j == i:
                    raise ValueError(f"unexpected character {ch!r}")
                name = text[i:j]
                bullet = j < n and text[j] == "."
                if bullet:
                    j += 1
                yield ("gen", (name, bullet))
                i = j

    def _parse_terms(self, text: str) -> Iterator[tuple[int, list[tuple[str, bool, int]]]]:
        """Yield (coefficient, [(letter, bullet, exponent), ...]) per term."""
        toks = list(self._tokens(text))
        i, n = 0, len(toks)
        while i < n:
            coeff = 1
            while i < n and toks[i][0] == "sign":
                coeff *= toks[i][1]  # type: ignore[operator]
                i += 1
            if i < n and toks[i][0] == "int":
                coeff *= toks[i][1]  # type: ignore[operator]
                i += 1
            factors: list[tuple[str, bool, int]] = []
            while i < n and toks[i][0] == "gen":
                name, bullet = toks[i][1]  # type: ignore[misc]
                exp = 1
                if i + 1 < n and toks[i + 1][0] == "exp":
                    exp = toks[i + 1][1]  # type: ignore[assignment]
                    i += 1
                factors.append((name, bullet, exp))
                i += 1
            if i < n and toks[i][0] not in ("sign",):
                raise ValueError(f"unexpected token {toks[i]!r} in {text!r}")
            yield coeff, factors

    def parse_lam(self, text: str) -> Lam:
        out: Lam = {}
        for coeff, factors in self._parse_terms(text):
            mono = self.psi_product(
                self.psi_gen(name, bullet=bullet, exp=exp) for name, bullet, exp in factors
            )
            c = out.get(mono, 0) + coeff
            if c:
                out[mono] = c
            else:
                out.pop(mono, None)
        return out

    def parse_vec(self, text: str) -> Vec:
        terms = list(self._parse_terms(text))
        if len(terms) != 1 or terms[0][0] != 1:
            raise ValueError(f"{text!r} is not a single group element")
        v = self.vec_identity
        for name, bullet, exp in terms[0][1]:
            if bullet:
                raise ValueError("bullet generators do not live in pi")
            v = self.vec_mul(v, self.vec_gen(name, exp))
        return v

    def parse_zpi(self, text: str) -> ZPi:
        out: ZPi = {}
        for coeff, factors in self._parse_terms(text):
            v = self.vec_identity
            for name, bullet, exp in factors:
                if bullet:
                    raise ValueError("bullet generators do not live in pi")
                v = self.vec_mul(v, self.vec_gen(name, exp))
            c = out.get(v, 0) + coeff
            if c:
                out[v] = c
            else:
                out.pop(v, None)
        return out

    def parse_pi(self, text: str) -> PiWord:
        terms = list(self._parse_terms(text))
        if len(terms) != 1 or terms[0][0] != 1:
            raise ValueError(f"{text!r} is not a single group element")
        out = self.pi_identity
        for name, bullet, exp in terms[0][1]:
            if bullet:
                raise ValueError("bullet generators do not live in Pi")
            out = self.pi_mul(out, self.pi_gen(name, exp))
        return out


def freeze(x: Mapping) -> tuple:
    """Hashable canonical form of a Zpi / Lambda element."""
    return tuple(sorted(x.items()))

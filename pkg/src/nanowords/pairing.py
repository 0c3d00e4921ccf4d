"""Linking pairings of nanowords and their primitive reduction.

A pairing is a basepointed finite set with a projection to alpha on the
non-basepoint part and a skew-symmetric pi-valued matrix (b(X,Y) is the
inverse of b(Y,X), diagonal 1).  The pairing b_w of a nanoword is built from
the interlacement matrix, the letter classes, and the w-linking lk_w; its
class under deletion of annihilating elements and twins is a homotopy
invariant, and the primitive form in each class is unique up to isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Mapping, Sequence

from .alphabet import AlphabetSpec
from .groups import Orbits, Vec
from .linking import interlacement_value, letter_class, orbit_table
from .words import Nanoword

BASEPOINT = "s"


@dataclass(frozen=True)
class AlphaPairing:
    """Basepointed skew-symmetric pairing with values in pi.

    Row/column 0 is the basepoint; ``names`` and ``proj`` describe the
    remaining elements in order.
    """

    spec: AlphabetSpec
    names: tuple[str, ...]
    proj: tuple[str, ...]
    matrix: tuple[tuple[Vec, ...], ...]

    def __post_init__(self) -> None:
        ctx = orbit_table(self.spec)
        size = len(self.names) + 1
        if BASEPOINT in self.names:
            raise ValueError(f"{BASEPOINT!r} is reserved for the basepoint")
        if len(self.proj) != len(self.names) or len(self.matrix) != size:
            raise ValueError("inconsistent pairing dimensions")
        for p in self.proj:
            self.spec.require_letter(p)
        for i, row in enumerate(self.matrix):
            if len(row) != size:
                raise ValueError("pairing matrix is not square")
            for j, v in enumerate(row):
                if self.matrix[j][i] != ctx.vec_inv(v):
                    raise ValueError("pairing matrix is not skew-symmetric")
            if row[i] != ctx.vec_identity:
                raise ValueError("pairing diagonal must be 1")

    @property
    def size(self) -> int:
        """Number of non-basepoint elements."""
        return len(self.names)

    def row_of(self, name: str) -> tuple[Vec, ...]:
        return self.matrix[self.names.index(name) + 1]

    def proj_of(self, name: str) -> str:
        return self.proj[self.names.index(name)]


def trivial_pairing(spec: AlphabetSpec) -> AlphaPairing:
    ctx = orbit_table(spec)
    return AlphaPairing(spec, (), (), ((ctx.vec_identity,),))


def circ(n: Nanoword, d: str, e: str) -> Vec:
    """D o E: product of |F| over letters F opening inside D and closing inside E."""
    ctx = orbit_table(n.spec)
    occ = n.occurrences
    for name in (d, e):
        if name not in occ:
            raise ValueError(f"unknown letter {name!r}")
    i_d, j_d = occ[d]
    i_e, j_e = occ[e]
    out = ctx.vec_identity
    for name, proj in n.letters:
        i_f, j_f = occ[name]
        if i_d < i_f < j_d and i_e < j_f < j_e:
            out = ctx.vec_mul(out, ctx.vec_gen(proj))
    return out


def linking(n: Nanoword, d: str, e: str) -> Vec:
    """lk_w(D, E) = (D o E)(E o D)^-1."""
    ctx = orbit_table(n.spec)
    return ctx.vec_mul(circ(n, d, e), ctx.vec_inv(circ(n, e, d)))


def build_pairing(n: Nanoword) -> AlphaPairing:
    """The pairing b_w with rows/columns (basepoint, letters in declaration order).

    b(A, s) = [A]_w, and b(A, B) = lk_w(A,B)^2 |A|^n(A,B) |B|^n(A,B).
    """
    if not n.spec.is_diagonal:
        raise ValueError("the pairing is a homotopy invariant only for diagonal homotopy data")
    ctx = orbit_table(n.spec)
    names = tuple(name for name, _ in n.letters)
    proj = tuple(p for _, p in n.letters)
    classes = {name: letter_class(n, name) for name in names}
    size = len(names) + 1
    m: list[list[Vec]] = [[ctx.vec_identity] * size for _ in range(size)]
    for i, a in enumerate(names, start=1):
        m[i][0] = classes[a]
        m[0][i] = ctx.vec_inv(classes[a])
    for i, a in enumerate(names, start=1):
        for j, b in enumerate(names, start=1):
            if i == j:
                continue
            e = interlacement_value(n, a, b)
            v = ctx.vec_pow(linking(n, a, b), 2)
            v = ctx.vec_mul(v, ctx.vec_gen(n.proj[a], e))
            v = ctx.vec_mul(v, ctx.vec_gen(n.proj[b], e))
            m[i][j] = v
    return AlphaPairing(n.spec, names, proj, tuple(tuple(row) for row in m))


def find_annihilating(p: AlphaPairing) -> list[str]:
    """Elements whose row is identically 1."""
    ctx = orbit_table(p.spec)
    one = ctx.vec_identity
    return [name for i, name in enumerate(p.names) if all(v == one for v in p.matrix[i + 1])]


def find_twins(p: AlphaPairing) -> list[tuple[str, str]]:
    """Unordered pairs with equal rows and tau-paired projections."""
    out = []
    for i in range(len(p.names)):
        for j in range(i + 1, len(p.names)):
            if p.proj[i] != p.spec.tau(p.proj[j]):
                continue
            if p.matrix[i + 1] == p.matrix[j + 1]:
                out.append((p.names[i], p.names[j]))
    return out


def delete_elements(p: AlphaPairing, names: Iterable[str]) -> AlphaPairing:
    drop = set(names)
    keep = [0] + [i + 1 for i, name in enumerate(p.names) if name not in drop]
    matrix = tuple(tuple(p.matrix[i][j] for j in keep) for i in keep)
    names_out = tuple(name for name in p.names if name not in drop)
    proj_out = tuple(pr for name, pr in zip(p.names, p.proj) if name not in drop)
    return AlphaPairing(p.spec, names_out, proj_out, matrix)


ReductionStep = tuple[str, tuple[str, ...]]


def reduce_primitive_with_steps(p: AlphaPairing) -> tuple[AlphaPairing, list[ReductionStep]]:
    """Delete annihilators, then twins, leftmost first, until primitive.

    The deletion order does not affect the result up to isomorphism; the
    greedy order just makes runs reproducible.
    """
    steps: list[ReductionStep] = []
    while True:
        ann = find_annihilating(p)
        if ann:
            p = delete_elements(p, [ann[0]])
            steps.append(("annihilator", (ann[0],)))
            continue
        twins = find_twins(p)
        if twins:
            p = delete_elements(p, twins[0])
            steps.append(("twins", twins[0]))
            continue
        return p, steps


def reduce_primitive(p: AlphaPairing) -> AlphaPairing:
    return reduce_primitive_with_steps(p)[0]


def is_primitive(p: AlphaPairing) -> bool:
    return not find_annihilating(p) and not find_twins(p)


def _row_signature(p: AlphaPairing, i: int) -> tuple:
    row = p.matrix[i + 1]
    return (p.proj[i], row[0], tuple(sorted(row)))


def pairing_isomorphic(p: AlphaPairing, q: AlphaPairing) -> bool:
    """Basepoint-, projection-, and b-preserving bijection search."""
    if p.spec != q.spec or p.size != q.size:
        return False
    n = p.size
    sig_p = [_row_signature(p, i) for i in range(n)]
    sig_q = [_row_signature(q, i) for i in range(n)]
    if sorted(sig_p) != sorted(sig_q):
        return False
    candidates = [[j for j in range(n) if sig_q[j] == sig_p[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def consistent(i: int, j: int) -> bool:
        if p.matrix[i + 1][0] != q.matrix[j + 1][0]:
            return False
        for i2, j2 in assignment.items():
            if p.matrix[i + 1][i2 + 1] != q.matrix[j + 1][j2 + 1]:
                return False
        return True

    def backtrack(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in candidates[i]:
            if j in used or not consistent(i, j):
                continue
            assignment[i] = j
            used.add(j)
            if backtrack(k + 1):
                return True
            del assignment[i]
            used.discard(j)
        return False

    return backtrack(0)


def norm_lower_bound(n: Nanoword) -> int:
    """card(primitive form of b_w) - 1: a lower bound for the length norm."""
    return reduce_primitive(build_pairing(n)).size


def _check_equivariant(spec: AlphabetSpec, f: Mapping[str, str]) -> None:
    for a in spec.letters:
        if a not in f:
            raise ValueError(f"map does not cover letter {a!r}")
        if f[a] not in ("a", "b"):
            raise ValueError(f"map must take values in the two-letter alphabet, got {f[a]!r}")
        expect = "b" if f[a] == "a" else "a"
        if f[spec.tau(a)] != expect:
            raise ValueError(f"map is not equivariant at {a!r}")


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Exact rank over the integers by fraction-free elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for i in range(rank + 1, n_rows):
            if m[i][col]:
                factor = m[i][col]
                m[i] = [x * pv - y * factor for x, y in zip(m[i], m[rank])]
                g = 0
                for x in m[i]:
                    g = gcd(g, x)
                if g > 1:
                    m[i] = [x // g for x in m[i]]
        rank += 1
    return rank


def integer_image(p: AlphaPairing, f: Mapping[str, str]) -> list[list[int]]:
    """Image of the pairing matrix under the exponent-sum map pi -> Z.

    Generators mapping to 'a' go to +1 and those mapping to 'b' go to -1;
    equivariance makes this well defined (and rules out fixed points).
    """
    _check_equivariant(p.spec, f)
    ctx = orbit_table(p.spec)
    signs = []
    for k in range(ctx.n):
        if ctx.fixed[k]:
            raise ValueError("no equivariant map exists when tau has a fixed point")
        signs.append(1 if f[ctx.rep(k)] == "a" else -1)

    def img(v: Vec) -> int:
        return sum(s * e for s, e in zip(signs, v))

    return [[img(v) for v in row] for row in p.matrix]


def genus_lower_bound(n: Nanoword, f: Mapping[str, str]) -> int:
    """rank/2 of the integer image of b_w: a genus bound for the curves under f.

    The image matrix is skew-symmetric, so its exact integer rank is even.
    """
    p = build_pairing(n)
    m = integer_image(p, f)
    r = integer_rank(m)
    if r % 2:
        raise AssertionError("skew-symmetric integer matrix must have even rank")
    return r // 2


def format_pairing(p: AlphaPairing) -> str:
    """Serialize: header, projection lines, then comma-separated matrix rows."""
    ctx = orbit_table(p.spec)
    lines = ["S: " + " ".join((BASEPOINT,) + p.names)]
    for name, pr in zip(p.names, p.proj):
        lines.append(f"proj {name} {pr}")
    for row in p.matrix:
        lines.append("row " + ", ".join(ctx.fmt_vec(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_pairing(spec: AlphabetSpec, text: str) -> AlphaPairing:
    ctx = orbit_table(spec)
    names: tuple[str, ...] | None = None
    proj: dict[str, str] = {}
    rows: list[tuple[Vec, ...]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("S:"):
            parts = line[2:].split()
            if not parts or parts[0] != BASEPOINT:
                raise ValueError("element list must start with the basepoint")
            names = tuple(parts[1:])
        elif line.startswith("proj "):
            _, name, pr = line.split()
            proj[name] = pr
        elif line.startswith("row "):
            entries = [ctx.parse_vec(chunk) for chunk in line[4:].split(",")]
            rows.append(tuple(entries))
        else:
            raise ValueError(f"unrecognized pairing line {line!r}")
    if names is None:
        raise ValueError("missing 'S:' header")
    return AlphaPairing(
        spec, names, tuple(proj[name] for name in names), tuple(rows)
    )

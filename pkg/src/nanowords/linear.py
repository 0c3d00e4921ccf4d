"""Beta-parameterized linear invariants: tricolorings, the Lambda-presentation
matrix, and the lambda invariant computed two independent ways.

Dashes of a length-n word are numbered 0..n.  A tricoloring assigns a residue
mod 3 to every dash; a letter A at positions i < j (0-based) with a = |A|
imposes, writing x_d for the dash values:

* a in beta:          x_{i+1} = x_i   and   x_j + x_{j+1} + x_{i+1} = 0
* a in alpha - beta:  x_{j+1} = x_j   and   x_i + x_{i+1} + x_{j+1} = 0

For beta = alpha the same dashes generate a rank-one free Lambda-module with
relations x_{i+1} = a x_i and x_{j+1} = a. x_j + (1 - a a.) x_i, and lambda
is iota of the coefficient expressing the last dash in the first.  The
path-sum picture re-derives lambda as a sum over monotone paths in a graph
whose chain edges are labeled a / a. and whose per-letter arcs are labeled
1 - a a.; both computations must agree and the path route asserts this.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .alphabet import AlphabetSpec
from .groups import Lam, Orbits, PsiWord
from .linking import orbit_table
from .words import Nanoword


def beta_set(spec: AlphabetSpec, letters: Iterable[str]) -> frozenset[str]:
    """A tau-stable subset of alpha."""
    beta = frozenset(letters)
    for a in beta:
        spec.require_letter(a)
        if spec.tau(a) not in beta:
            raise ValueError(f"beta is not tau-stable: missing {spec.tau(a)!r}")
    return beta


# ------------------------------------------------------------- tricolorings

Census = tuple[tuple[int, int, int], ...]


def _gf3_solve(rows: list[list[int]], n_vars: int) -> list[list[int]]:
    """Kernel basis of a homogeneous system over GF(3)."""
    m = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(n_vars):
        pivot = next((i for i in range(r, len(m)) if m[i][c] % 3), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 if m[r][c] % 3 == 1 else 2
        m[r] = [(x * inv) % 3 for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % 3:
                f = m[i][c] % 3
                m[i] = [(x - f * y) % 3 for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n_vars) if c not in pivots]
    basis = []
    for c in free:
        v = [0] * n_vars
        v[c] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-m[i][c]) % 3
        basis.append(v)
    return basis


def coloring_equations(n: Nanoword, beta: frozenset[str]) -> list[list[int]]:
    """Homogeneous GF(3) equations on the dash variables x_0..x_n."""
    n_vars = len(n.word) + 1
    rows: list[list[int]] = []

    def row(*pairs: tuple[int, int]) -> list[int]:
        r = [0] * n_vars
        for idx, coeff in pairs:
            r[idx] = (r[idx] + coeff) % 3
        return r

    for name, proj in n.letters:
        i, j = n.occurrences[name]
        if proj in beta:
            rows.append(row((i + 1, 1), (i, -1)))
            rows.append(row((j, 1), (j + 1, 1), (i + 1, 1)))
        else:
            rows.append(row((j + 1, 1), (j, -1)))
            rows.append(row((i, 1), (i + 1, 1), (j + 1, 1)))
    return rows


def is_coloring(n: Nanoword, beta: frozenset[str], values: Sequence[int]) -> bool:
    if len(values) != len(n.word) + 1:
        return False
    return all(
        sum(c * values[i] for i, c in enumerate(row)) % 3 == 0
        for row in coloring_equations(n, beta)
    )


def tricolor_census(n: Nanoword, beta: frozenset[str]) -> Census:
    """3x3 matrix of coloring counts indexed by (input, output) residues."""
    n_vars = len(n.word) + 1
    basis = _gf3_solve(coloring_equations(n, beta), n_vars)
    dim = len(basis)
    ends = [[v[0] % 3, v[-1] % 3] for v in basis]
    # span of the projected basis in (Z/3)^2
    span: set[tuple[int, int]] = {(0, 0)}
    for e in ends:
        span = {((x + t * e[0]) % 3, (y + t * e[1]) % 3) for (x, y) in span for t in range(3)}
    per_cell = 3 ** (dim - _dim_of_span(span))
    return tuple(
        tuple(per_cell if (k, l) in span else 0 for l in range(3)) for k in range(3)
    )


def _dim_of_span(span: set[tuple[int, int]]) -> int:
    return {1: 0, 3: 1, 9: 2}[len(span)]


def census_total(c: Census) -> int:
    return sum(sum(row) for row in c)


def identity_census() -> Census:
    return tuple(tuple(1 if k == l else 0 for l in range(3)) for k in range(3))


# ------------------------------------------------- presentation matrix of K

@dataclass(frozen=True)
class PresentationMatrix:
    """n relation rows over n+1 dash columns with Lambda entries."""

    rows: tuple[tuple[tuple, ...], ...]  # frozen Lambda elements

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 1)


def presentation_matrix(n: Nanoword, beta: frozenset[str]) -> PresentationMatrix:
    """Two rows per letter, ordered by first occurrence.

    For a = |A| in beta the rows express x_{i+1} = a x_i and
    x_{j+1} = a. x_j + (1 - a a.) x_i; for a outside beta the roles of the
    occurrences swap.
    """
    ctx = orbit_table(n.spec)
    n_cols = len(n.word) + 1
    rows: list[tuple[tuple, ...]] = []
    zero: Lam = {}

    def frozen_row(entries: dict[int, Lam]) -> tuple[tuple, ...]:
        return tuple(tuple(sorted(entries.get(c, zero).items())) for c in range(n_cols))

    order = sorted((name for name, _ in n.letters), key=lambda nm: n.occurrences[nm][0])
    for name in order:
        a = n.proj[name]
        i, j = n.occurrences[name]
        gen = ctx.lam_mono(ctx.psi_gen(a))
        gen_b = ctx.lam_mono(ctx.psi_gen(a, bullet=True))
        one_minus = ctx.lam_sub(ctx.lam_one(), ctx.lam_mul(gen, gen_b))
        minus_one = ctx.lam_scale(ctx.lam_one(), -1)
        if a in beta:
            first, second = (i, j)
        else:
            first, second = (j, i)
        rows.append(frozen_row({first: gen, first + 1: minus_one}))
        rows.append(frozen_row({first: one_minus, second: gen_b, second + 1: minus_one}))
    return PresentationMatrix(tuple(rows))


# ------------------------------------------------------------------ lambda

def lambda_by_elimination(n: Nanoword) -> Lam:
    """Express the last dash in the first (beta = alpha) and apply iota."""
    ctx = orbit_table(n.spec)
    coeff: list[Lam] = [ctx.lam_one()]
    for pos, name in enumerate(n.word):
        a = n.proj[name]
        i, j = n.occurrences[name]
        if pos == i:
            coeff.append(ctx.lam_mul(ctx.lam_mono(ctx.psi_gen(a)), coeff[pos]))
        else:
            bullet = ctx.lam_mul(ctx.lam_mono(ctx.psi_gen(a, bullet=True)), coeff[pos])
            gen = ctx.lam_mono(ctx.psi_gen(a))
            gen_b = ctx.lam_mono(ctx.psi_gen(a, bullet=True))
            one_minus = ctx.lam_sub(ctx.lam_one(), ctx.lam_mul(gen, gen_b))
            coeff.append(ctx.lam_add(bullet, ctx.lam_mul(one_minus, coeff[i])))
    return ctx.lam_iota(coeff[-1])


@dataclass(frozen=True)
class PathSumGraph:
    """Vertices 0..n; chain edges labeled by a generator per occurrence and
    one arc per letter from (first occurrence) to (second occurrence + 1)
    labeled 1 - a a..  All edges and arcs point left to right."""

    n_vertices: int
    chain_labels: tuple[PsiWord, ...]          # label of edge v -> v+1
    arcs: tuple[tuple[int, int, tuple], ...]    # (src, dst, frozen Lambda label)


def path_sum_graph(n: Nanoword) -> PathSumGraph:
    ctx = orbit_table(n.spec)
    chain: list[PsiWord] = []
    arcs: list[tuple[int, int, tuple]] = []
    for pos, name in enumerate(n.word):
        a = n.proj[name]
        second = n.occurrences[name][1]
        chain.append(ctx.psi_gen(a, bullet=(pos == second)))
    for name, a in n.letters:
        i, j = n.occurrences[name]
        gen = ctx.lam_mono(ctx.psi_gen(a))
        gen_b = ctx.lam_mono(ctx.psi_gen(a, bullet=True))
        label = ctx.lam_sub(ctx.lam_one(), ctx.lam_mul(gen, gen_b))
        arcs.append((i, j + 1, tuple(sorted(label.items()))))
    return PathSumGraph(len(n.word) + 1, tuple(chain), tuple(arcs))


def path_contributions(n: Nanoword) -> list[Lam]:
    """Label products of all monotone input-to-output paths.

    Paths are listed depth-first, taking the arc before the chain edge at
    each vertex (each vertex starts at most one arc).
    """
    ctx = orbit_table(n.spec)
    graph = path_sum_graph(n)
    arc_at: dict[int, tuple[int, Lam]] = {
        src: (dst, dict(label)) for src, dst, label in graph.arcs
    }
    out: list[Lam] = []
    last = graph.n_vertices - 1

    def walk(v: int, acc: Lam) -> None:
        if v == last:
            out.append(acc)
            return
        if v in arc_at:
            dst, label = arc_at[v]
            walk(dst, ctx.lam_mul(acc, label))
        walk(v + 1, ctx.lam_mul(acc, ctx.lam_mono(graph.chain_labels[v])))

    walk(0, ctx.lam_one())
    return out


def lambda_by_paths(n: Nanoword) -> Lam:
    total: Lam = {}
    ctx = orbit_table(n.spec)
    for contribution in path_contributions(n):
        total = ctx.lam_add(total, contribution)
    if total != lambda_by_elimination(n):
        raise AssertionError("path sum disagrees with elimination")
    return total


def lambda_graded(n: Nanoword) -> dict[tuple[int, int], Lam]:
    ctx = orbit_table(n.spec)
    return ctx.lam_grade(lambda_by_elimination(n))

"""Generalized Cartan matrices: validation, symmetrization, classification,
Dynkin diagrams, standard names and the hyperbolic catalog.

Conventions: ``A[i][j] = <alpha_j, alpha_i^vee> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``,
so the symmetrized form is ``B = D A`` with ``B[i][i] = 2 d_i``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd

from kmcent.linalg import det


class GCMError(ValueError):
    """Base class for invalid Cartan-matrix input."""


class DiagonalNotTwo(GCMError):
    pass


class PositiveOffDiagonal(GCMError):
    pass


class ZeroAsymmetry(GCMError):
    pass


class NotSymmetrizable(GCMError):
    pass


class Disconnected(GCMError):
    pass


class RankOutOfRange(ValueError):
    pass


class UnrecognizedComponent(ValueError):
    pass


@dataclass(frozen=True)
class GCM:
    entries: tuple

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self):
        return [list(r) for r in self.entries]

    def submatrix(self, indices) -> "GCM":
        return GCM(tuple(tuple(self.entries[i][j] for j in indices) for i in indices))

    def transpose(self) -> "GCM":
        return GCM(tuple(zip(*self.entries)))

    def neighbours(self, i):
        return [j for j in range(self.rank) if j != i and self.entries[i][j] != 0]

    def components(self):
        """Connected components as sorted index lists, ordered by smallest index."""
        return _components(self.entries, range(self.rank))

    @property
    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def _components(entries, nodes):
    nodes = list(nodes)
    allowed = set(nodes)
    seen = set()
    comps = []
    for start in nodes:
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in allowed:
                if w not in seen and entries[v][w] != 0:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def validate_gcm(matrix) -> GCM:
    rows = [list(r) for r in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise GCMError("matrix must be square and non-empty")
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            if isinstance(x, bool) or int(x) != x:
                raise GCMError(f"entry ({i + 1},{j + 1}) is not an integer: {x!r}")
    rows = [[int(x) for x in r] for r in rows]
    for i in range(n):
        if rows[i][i] != 2:
            raise DiagonalNotTwo(f"diagonal entry ({i + 1},{i + 1}) is {rows[i][i]}, expected 2")
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] > 0:
                raise PositiveOffDiagonal(f"entry ({i + 1},{j + 1}) is positive: {rows[i][j]}")
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] == 0 and rows[j][i] != 0:
                raise ZeroAsymmetry(
                    f"entry ({i + 1},{j + 1}) is 0 but ({j + 1},{i + 1}) is {rows[j][i]}"
                )
    return GCM(tuple(tuple(r) for r in rows))


def parse_gcm_text(text: str) -> GCM:
    """Parse ``{"A": [[...]]}`` JSON or whitespace-separated matrix rows."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise GCMError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        matrix = data["A"] if isinstance(data, dict) and "A" in data else data
        if not isinstance(matrix, list):
            raise GCMError('JSON input must be {"A": [[...], ...]} or a list of rows')
        return validate_gcm(matrix)
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.replace(",", " ").split()])
        except ValueError as exc:
            raise GCMError(f"line {lineno}: {exc}") from exc
    return validate_gcm(rows)


# -- symmetrization ---------------------------------------------------------


@dataclass(frozen=True)
class Symmetrization:
    """Diagonal ``d`` and symmetric ``B = D A``; entries may be Fractions after rescaling."""

    d: tuple
    B: tuple

    @property
    def rank(self) -> int:
        return len(self.d)

    def norms(self):
        return tuple(self.B[i][i] for i in range(self.rank))

    def rescaled(self, factor) -> "Symmetrization":
        factor = Fraction(factor)
        return Symmetrization(
            tuple(_demote(x * factor) for x in self.d),
            tuple(tuple(_demote(x * factor) for x in row) for row in self.B),
        )

    def normalized_at(self, node: int = 0) -> "Symmetrization":
        """Rescale so that ``|alpha_node|^2 = 2``."""
        return self.rescaled(Fraction(2, self.B[node][node]))

    def reduced(self) -> "Symmetrization":
        """Divide ``B`` by the gcd of its entries (the smallest integral form)."""
        common = reduce(gcd, (int(x) for row in self.B for x in row), 0)
        return self.rescaled(Fraction(1, common or 1))


def _demote(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def symmetrize(g: GCM) -> Symmetrization:
    n = g.rank
    d = [None] * n
    for comp in g.components():
        d[comp[0]] = Fraction(1)
        stack = [comp[0]]
        while stack:
            i = stack.pop()
            for j in g.neighbours(i):
                # d_i A_ij = d_j A_ji
                val = d[i] * g[i, j] / g[j, i]
                if d[j] is None:
                    d[j] = val
                    stack.append(j)
                elif d[j] != val:
                    raise NotSymmetrizable(
                        f"no diagonal D makes DA symmetric (cycle through nodes {i + 1},{j + 1})"
                    )
        den = reduce(lambda a, b: a * b // gcd(a, b), (d[i].denominator for i in comp), 1)
        ints = [int(d[i] * den) for i in comp]
        common = reduce(gcd, ints)
        for i, v in zip(comp, ints):
            d[i] = v // common
    B = tuple(tuple(d[i] * g[i, j] for j in range(n)) for i in range(n))
    return Symmetrization(tuple(d), B)


def is_symmetrizable(g: GCM) -> bool:
    try:
        symmetrize(g)
    except NotSymmetrizable:
        return False
    return True


def gcm_from_gram(gram) -> GCM:
    """Cartan matrix ``A_ij = 2 (a_i, a_j) / (a_i, a_i)`` of a Gram matrix."""
    n = len(gram)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            v = Fraction(2 * Fraction(gram[i][j]), Fraction(gram[i][i]))
            if v.denominator != 1:
                raise GCMError(f"Gram matrix gives non-integral Cartan entry at ({i + 1},{j + 1})")
            row.append(int(v))
        rows.append(row)
    return validate_gcm(rows)


# -- classification ---------------------------------------------------------


@dataclass(frozen=True)
class SystemType:
    kind: str  # finite | affine | hyperbolic | indefinite
    twist: int | None = None
    name: str | None = None

    def __str__(self):
        return f"{self.kind} {self.name}" if self.name else self.kind


@lru_cache(maxsize=None)
def _is_finite(entries) -> bool:
    n = len(entries)
    if n == 1:
        return True
    if det(entries) <= 0:
        return False
    return _all_deletions(entries, _is_finite)


def _all_deletions(entries, pred) -> bool:
    n = len(entries)
    for v in range(n):
        rest = [i for i in range(n) if i != v]
        for comp in _components(entries, rest):
            sub = tuple(tuple(entries[i][j] for j in comp) for i in comp)
            if not pred(sub):
                return False
    return True


@lru_cache(maxsize=None)
def _is_affine(entries) -> bool:
    if len(entries) == 1:
        return False
    return det(entries) == 0 and _all_deletions(entries, _is_finite)


def _finite_or_affine(entries) -> bool:
    return _is_finite(entries) or _is_affine(entries)


@lru_cache(maxsize=None)
def _is_hyperbolic(entries) -> bool:
    if _is_finite(entries) or _is_affine(entries):
        return False
    return _all_deletions(entries, _finite_or_affine)


def classify(g: GCM) -> SystemType:
    if not g.is_connected:
        raise Disconnected("classification is defined per connected component")
    e = g.entries
    if _is_finite(e):
        return _with_name(SystemType("finite"), g)
    if _is_affine(e):
        return _with_name(SystemType("affine"), g)
    if _is_hyperbolic(e):
        return SystemType("hyperbolic")
    return SystemType("indefinite")


def _with_name(t: SystemType, g: GCM) -> SystemType:
    name = _name_table().get(canonical_form(g))
    if name is None:
        return t
    twist = None
    if t.kind == "affine":
        twist = int(re.search(r"\((\d)\)", name).group(1))
    return SystemType(t.kind, twist, name)


# -- canonical forms ----------------------------------------------------------


def _refine(entries, colors):
    n = len(entries)
    while True:
        sigs = []
        for i in range(n):
            nb = sorted(
                (entries[i][j], entries[j][i], colors[j])
                for j in range(n)
                if j != i and entries[i][j] != 0
            )
            sigs.append((colors[i], tuple(nb)))
        order = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if len(order) == len(set(colors)):
            return new
        colors = new


def canonical_form(g) -> tuple:
    """Canonical adjacency matrix under simultaneous node permutation.

    Individualization-refinement: refine colour classes by edge labels, then
    branch on each node of the first non-singleton class, keeping the
    lexicographically smallest permuted matrix.
    """
    entries = g.entries if isinstance(g, GCM) else tuple(tuple(r) for r in g)
    n = len(entries)
    best = None

    def go(colors):
        nonlocal best
        colors = _refine(entries, colors)
        if len(set(colors)) == n:
            perm = sorted(range(n), key=lambda v: colors[v])
            cand = tuple(tuple(entries[a][b] for b in perm) for a in perm)
            if best is None or cand < best:
                best = cand
            return
        sizes = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        target = min(c for c, s in sizes.items() if s > 1)
        for v in range(n):
            if colors[v] != target:
                continue
            nc = [c + 1 if c > target else c for c in colors]
            for u in range(n):
                if colors[u] == target and u != v:
                    nc[u] = target + 1
            go(nc)

    go([0] * n)
    return best


def canonical_permutation(g: GCM):
    """A node order realizing :func:`canonical_form`."""
    target = canonical_form(g)
    entries = g.entries
    n = g.rank
    found = None

    def go(colors):
        nonlocal found
        if found is not None:
            return
        colors = _refine(entries, colors)
        if len(set(colors)) == n:
            perm = sorted(range(n), key=lambda v: colors[v])
            if tuple(tuple(entries[a][b] for b in perm) for a in perm) == target:
                found = perm
            return
        sizes = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        t = min(c for c, s in sizes.items() if s > 1)
        for v in range(n):
            if colors[v] == t:
                nc = [c + 1 if c > t else c for c in colors]
                for u in range(n):
                    if colors[u] == t and u != v:
                        nc[u] = t + 1
                go(nc)

    go([0] * n)
    return found


def automorphisms(g: GCM):
    """All node permutations p with A[p[i]][p[j]] == A[i][j] (backtracking)."""
    n = g.rank
    e = g.entries
    out = []

    def go(p, used):
        k = len(p)
        if k == n:
            out.append(tuple(p))
            return
        for v in range(n):
            if v in used:
                continue
            if all(e[p[i]][v] == e[i][k] and e[v][p[i]] == e[k][i] for i in range(k)):
                p.append(v)
                used.add(v)
                go(p, used)
                p.pop()
                used.discard(v)

    go([], set())
    return out


# -- Dynkin diagrams ------------------------------------------------------------


@dataclass(frozen=True)
class DynkinDiagram:
    nodes: tuple
    edges: dict = field(hash=False, compare=True)

    @classmethod
    def from_gcm(cls, g: GCM, labels=None) -> "DynkinDiagram":
        labels = tuple(labels) if labels else tuple(str(i + 1) for i in range(g.rank))
        edges = {}
        for i in range(g.rank):
            for j in range(i + 1, g.rank):
                if g[i, j] != 0:
                    edges[(i, j)] = (-g[i, j], -g[j, i])
        return cls(labels, edges)

    def to_gcm(self) -> GCM:
        n = len(self.nodes)
        rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for (i, j), (a, b) in self.edges.items():
            rows[i][j] = -a
            rows[j][i] = -b
        return validate_gcm(rows)

    def to_dot(self, name: str = "G") -> str:
        g = self.to_gcm()
        comps = g.components()
        lines = [f"graph {name} {{"]

        def emit(indent, comp):
            for i in comp:
                lines.append(f'{indent}n{i} [label="{self.nodes[i]}"];')
            for i in comp:
                for j in comp:
                    if (i, j) in self.edges:
                        a, b = self.edges[(i, j)]
                        if (a, b) == (1, 1):
                            lines.append(f"{indent}n{i} -- n{j};")
                        else:
                            lines.append(f'{indent}n{i} -- n{j} [label="({a},{b})"];')

        if len(comps) <= 1:
            emit("  ", comps[0] if comps else [])
        else:
            for k, comp in enumerate(comps):
                lines.append(f"  subgraph cluster_{k} {{")
                emit("    ", comp)
                lines.append("  }")
        lines.append("}")
        return "\n".join(lines) + "\n"


# -- standard names ---------------------------------------------------------------


def _chain_gram(norms, products):
    n = len(norms)
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i, x in enumerate(norms):
        gram[i][i] = Fraction(x)
    for i, p in enumerate(products):
        gram[i][i + 1] = gram[i + 1][i] = Fraction(p)
    return gram


def _finite_gram(letter: str, n: int):
    if letter == "A":
        return _chain_gram([2] * n, [-1] * (n - 1))
    if letter == "B":
        return _chain_gram([2] * (n - 1) + [1], [-1] * (n - 1))
    if letter == "C":
        return _chain_gram([2] * (n - 1) + [4], [-1] * (n - 2) + [-2])
    if letter == "D":
        gram = _chain_gram([2] * (n - 1), [-1] * (n - 2))
        for row in gram:
            row.append(Fraction(0))
        gram.append([Fraction(0)] * n)
        gram[n - 1][n - 1] = Fraction(2)
        gram[n - 3][n - 1] = gram[n - 1][n - 3] = Fraction(-1)
        return gram
    if letter == "E":
        # Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]
        gram = [[Fraction(2 if i == j else 0) for j in range(n)] for i in range(n)]
        for i, j in edges:
            if i < n and j < n:
                gram[i][j] = gram[j][i] = Fraction(-1)
        return gram
    if letter == "F":
        return _chain_gram([2, 2, 1, 1], [-1, -1, Fraction(-1, 2)])
    if letter == "G":
        return _chain_gram([2, 6], [-3])
    raise ValueError(letter)


def _finite_positive_roots(g: GCM):
    n = g.rank
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                p = sum(g[i, j] * v[j] for j in range(n))
                if p < 0:
                    w = list(v)
                    w[i] -= p
                    w = tuple(w)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
        frontier = nxt
        if len(seen) > 10000:
            raise ValueError("not a finite root system")
    return sorted(seen, key=lambda v: (sum(v), v))


def _untwisted_gram(letter, n):
    gram = _finite_gram(letter, n)
    g = gcm_from_gram(gram)
    theta = _finite_positive_roots(g)[-1]
    m = n + 1
    ext = [[Fraction(0)] * m for _ in range(m)]
    for i in range(n):
        for j in range(n):
            ext[i + 1][j + 1] = gram[i][j]
    tg = [sum(theta[k] * gram[k][i] for k in range(n)) for i in range(n)]
    ext[0][0] = sum(theta[i] * tg[i] for i in range(n))
    for i in range(n):
        ext[0][i + 1] = ext[i + 1][0] = -tg[i]
    return ext


def standard_gcm(name: str) -> GCM:
    """GCM for a standard name such as ``"E_8"``, ``"C_2^{(1)}"`` or ``"A_4^{(2)}"``.

    In affine diagrams the extra node comes first.
    """
    m = re.fullmatch(r"([A-G])_\{?(\d+)\}?(?:\^\{?\((\d)\)\}?)?", name.strip())
    if not m:
        raise ValueError(f"unrecognized name {name!r}")
    letter, n, r = m.group(1), int(m.group(2)), m.group(3)
    if r is None:
        return gcm_from_gram(_finite_gram(letter, n))
    r = int(r)
    if r == 1:
        if letter == "A" and n == 1:
            return validate_gcm([[2, -2], [-2, 2]])
        return gcm_from_gram(_untwisted_gram(letter, n))
    if r == 2 and letter == "A" and n % 2 == 0:
        l = n // 2
        if l == 1:
            return gcm_from_gram(_chain_gram([4, 1], [-2]))
        return gcm_from_gram(_chain_gram([4] + [2] * (l - 1) + [1], [-2] + [-1] * (l - 1)))
    if r == 2 and letter == "A":
        return standard_gcm(f"B_{(n + 1) // 2}^{{(1)}}").transpose()
    if r == 2 and letter == "D":
        return standard_gcm(f"C_{n - 1}^{{(1)}}").transpose()
    if r == 2 and letter == "E" and n == 6:
        return standard_gcm("F_4^{(1)}").transpose()
    if r == 3 and letter == "D" and n == 4:
        return standard_gcm("G_2^{(1)}").transpose()
    raise ValueError(f"unrecognized name {name!r}")


def _standard_names(max_rank: int):
    """Preferred names first; later aliases of the same diagram are dropped."""
    names = []
    for n in range(1, max_rank + 1):
        names.append(f"A_{n}")
    for n in range(2, max_rank + 1):
        names.append(f"B_{n}")
    for n in range(3, max_rank + 1):
        names.append(f"C_{n}")
    for n in range(4, max_rank + 1):
        names.append(f"D_{n}")
    names += ["E_6", "E_7", "E_8", "F_4", "G_2"]
    for n in range(1, max_rank):
        names.append(f"A_{n}^{{(1)}}")
    for n in range(2, max_rank):
        names.append(f"C_{n}^{{(1)}}")
    for n in range(3, max_rank):
        names.append(f"B_{n}^{{(1)}}")
    for n in range(4, max_rank):
        names.append(f"D_{n}^{{(1)}}")
    names += ["E_6^{(1)}", "E_7^{(1)}", "E_8^{(1)}", "F_4^{(1)}", "G_2^{(1)}"]
    for l in range(1, max_rank):
        names.append(f"A_{2 * l}^{{(2)}}")
    for l in range(2, max_rank):
        names.append(f"D_{l + 1}^{{(2)}}")
    for l in range(3, max_rank):
        names.append(f"A_{2 * l - 1}^{{(2)}}")
    names += ["E_6^{(2)}", "D_4^{(3)}"]
    return names


NAME_TABLE_MAX_RANK = 12


@lru_cache(maxsize=1)
def _name_table():
    table = {}
    for name in _standard_names(NAME_TABLE_MAX_RANK):
        g = standard_gcm(name)
        if g.rank > NAME_TABLE_MAX_RANK:
            continue
        table.setdefault(canonical_form(g), name)
    return table


def _name_sort_key(name):
    m = re.match(r"([A-G])_(\d+)", name)
    return (-int(m.group(2)), name)


def join_names(names) -> str:
    """Join component names with multiplicities: ``["A_1^{(1)}"]*3 -> "3A_1^{(1)}"``."""
    if not names:
        return "∅"
    counts = {}
    for nm in names:
        counts[nm] = counts.get(nm, 0) + 1
    parts = []
    for nm in sorted(counts, key=_name_sort_key):
        parts.append(f"{counts[nm]}{nm}" if counts[nm] > 1 else nm)
    return " ⊕ ".join(parts)


def identify_diagram(d) -> SystemType:
    """Name each connected component (finite or affine) and join with ⊕."""
    g = d.to_gcm() if isinstance(d, DynkinDiagram) else d
    if g.rank == 0:
        return SystemType("finite", None, "∅")
    table = _name_table()
    names = []
    kinds = set()
    for comp in g.components():
        sub = g.submatrix(comp)
        name = table.get(canonical_form(sub))
        if name is None:
            raise UnrecognizedComponent(
                f"component on nodes {[i + 1 for i in comp]} is not of finite or affine type"
            )
        names.append(name)
        kinds.add("affine" if "^" in name else "finite")
    kind = "affine" if kinds == {"affine"} else ("finite" if kinds == {"finite"} else "mixed")
    return SystemType(kind, None, join_names(names))


def parse_type_name(text: str) -> GCM:
    """Inverse of :func:`join_names`: block-diagonal GCM for ``"2A_1^{(1)} ⊕ C_2"``."""
    text = text.strip()
    if text in ("∅", ""):
        return GCM(())
    blocks = []
    for part in text.split("⊕"):
        part = part.strip()
        m = re.fullmatch(r"(\d*)(.+)", part)
        mult = int(m.group(1)) if m.group(1) else 1
        blocks += [standard_gcm(m.group(2))] * mult
    n = sum(b.rank for b in blocks)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rank):
            for j in range(b.rank):
                rows[off + i][off + j] = b[i, j]
        off += b.rank
    return GCM(tuple(tuple(r) for r in rows))


def same_diagram(g: GCM, h: GCM) -> bool:
    if g.rank != h.rank:
        return False
    if g.rank == 0:
        return True
    key = lambda x: sorted(canonical_form(x.submatrix(c)) for c in x.components())
    return key(g) == key(h)


# -- catalog ------------------------------------------------------------------------

_LABELS = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2), (1, 4), (4, 1)]


def _extensions(base: GCM, prefix_ok):
    """All GCMs obtained by attaching one new node to ``base``.

    ``prefix_ok(entries)`` prunes partial assignments: it is applied to the
    components containing the new node of every proper induced prefix.
    """
    k = base.rank
    n = k + 1
    rows = [list(r) + [0] for r in base.entries] + [[0] * k + [2]]

    def prefix_check(upto):
        nodes = list(range(upto + 1)) + [k]
        for comp in _components(rows, nodes):
            if k in comp:
                sub = tuple(tuple(rows[i][j] for j in comp) for i in comp)
                return prefix_ok(sub)
        return True

    def go(j, connected):
        if j == k:
            if connected:
                yield GCM(tuple(tuple(r) for r in rows))
            return
        for lab in [None] + _LABELS:
            if lab is None:
                rows[k][j] = rows[j][k] = 0
            else:
                rows[k][j], rows[j][k] = -lab[0], -lab[1]
            if j < k - 1 and not prefix_check(j):
                continue
            yield from go(j + 1, connected or lab is not None)
        rows[k][j] = rows[j][k] = 0

    yield from go(0, False)


@lru_cache(maxsize=None)
def _connected_by_kind(rank: int):
    """Connected finite and affine GCMs of a given rank, up to isomorphism."""
    if rank == 1:
        return {"finite": [GCM(((2,),))], "affine": []}
    finite, affine = {}, {}
    for base in _connected_by_kind(rank - 1)["finite"]:
        for g in _extensions(base, lambda e: _is_finite(e)):
            e = g.entries
            if _is_finite(e):
                finite.setdefault(canonical_form(g), g)
            elif _is_affine(e):
                affine.setdefault(canonical_form(g), g)
    canon = lambda dct: [GCM(k) for k in sorted(dct)]
    return {"finite": canon(finite), "affine": canon(affine)}


def _hyperbolic_of_rank(rank: int):
    found = {}
    lower = _connected_by_kind(rank - 1)
    for base in lower["finite"] + lower["affine"]:
        for g in _extensions(base, _finite_or_affine):
            if _is_hyperbolic(g.entries):
                found.setdefault(canonical_form(g), None)
    return [GCM(k) for k in sorted(found)]


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    gcm: GCM
    symmetrizable: bool

    def to_json(self) -> str:
        return json.dumps(
            {"id": self.id, "rank": self.gcm.rank, "A": self.gcm.rows(),
             "symmetrizable": self.symmetrizable},
            separators=(",", ":"),
        )


def enumerate_hyperbolic_catalog(rank_min: int, rank_max: int, symmetrizable_only: bool = True):
    """Hyperbolic GCMs with ``rank_min <= rank <= rank_max`` up to diagram isomorphism.

    Each hyperbolic diagram minus a non-cut node is a connected finite or
    affine diagram, so candidates are one-node extensions of those. Entries
    are numbered ``H<rank>.<k>`` in canonical-form order within each rank.
    """
    if not 3 <= rank_min <= rank_max:
        raise RankOutOfRange(f"need 3 <= rank_min <= rank_max; got {rank_min}..{rank_max}")
    out = []
    for rank in range(rank_min, min(rank_max, 10) + 1):
        k = 0
        for g in _hyperbolic_of_rank(rank):
            sym = is_symmetrizable(g)
            if symmetrizable_only and not sym:
                continue
            k += 1
            out.append(CatalogEntry(f"H{rank}.{k}", g, sym))
    return out

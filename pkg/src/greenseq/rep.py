"""Representations of bound quivers over a prime field.

A representation assigns to each vertex a vector space F_p^d and to each
arrow a matrix of shape dims[tgt] x dims[src]. All relations of the algebra
must evaluate to zero; this is checked at construction time.

String modules are enumerated as reduced walks avoiding relations, which is
complete for the supported string algebras (gentle cluster-tilted type A and
cyclic Nakayama quotients); finite type means there are no bands to worry
about.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from greenseq import linalg
from greenseq.errors import NonStringAlgebraError, SearchBudgetExceeded
from greenseq.linalg import Matrix
from greenseq.qp import Quiver, QuiverWithPotential, Relation, RelationSet, jacobian_relations


@dataclass(frozen=True)
class Algebra:
    """A bound quiver algebra: quiver, relations, ground prime."""

    quiver: Quiver
    relations: RelationSet
    p: int = 2

    def __post_init__(self):
        if self.p < 2 or any(self.p % q == 0 for q in range(2, self.p)):
            raise ValueError(f"{self.p} is not prime")


def algebra_from_qp(qp: QuiverWithPotential, p: int = 2) -> Algebra:
    """The Jacobian algebra of a quiver with potential over F_p."""
    return Algebra(quiver=qp.quiver, relations=jacobian_relations(qp), p=p)


def _coeff_mod(c: Fraction, p: int) -> int:
    c = Fraction(c)
    if c.denominator % p == 0:
        raise ValueError(f"coefficient {c} not defined mod {p}")
    return (c.numerator * pow(c.denominator, p - 2, p)) % p if p > 2 else (
        c.numerator * c.denominator
    ) % p


@dataclass(frozen=True)
class Representation:
    algebra: Algebra
    dims: tuple[int, ...]
    mats: tuple[tuple[str, Matrix], ...]
    label: str = field(default="", compare=False)
    # (start vertex, word of (arrow id, +-1)) when built from a string walk
    walk: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        quiver = self.algebra.quiver
        if len(self.dims) != quiver.n:
            raise ValueError("dims length does not match vertex count")
        mat_map = dict(self.mats)
        if set(mat_map) != {a.id for a in quiver.arrows}:
            raise ValueError("mats must cover exactly the arrows of the quiver")
        for a in quiver.arrows:
            m = mat_map[a.id]
            r = len(m)
            c = len(m[0]) if m else 0
            dr = self.dims[quiver.pos(a.tgt)]
            dc = self.dims[quiver.pos(a.src)]
            if r != dr or (r > 0 and c != dc) or (r == 0 and dc and m):
                raise ValueError(
                    f"arrow {a.id}: matrix shape {(r, c)} != {(dr, dc)}"
                )
        bad = check_relations(self)
        if bad is not None:
            raise ValueError(f"relation from arrow {bad.arrow!r} violated")

    def mat(self, arrow_id: str) -> Matrix:
        for aid, m in self.mats:
            if aid == arrow_id:
                return m
        raise KeyError(arrow_id)

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def dim_at(self, v: int) -> int:
        return self.dims[self.algebra.quiver.pos(v)]


def make_rep(
    algebra: Algebra,
    dims: Sequence[int],
    mats: dict[str, Sequence[Sequence[int]]],
    label: str = "",
    walk: tuple = (),
) -> Representation:
    """Build a Representation from plain lists, normalizing mod p."""
    p = algebra.p
    norm = tuple(
        (aid, tuple(tuple(int(x) % p for x in row) for row in mats.get(aid, ())))
        for aid in sorted(a.id for a in algebra.quiver.arrows)
    )
    fixed = []
    for aid, m in norm:
        a = algebra.quiver.arrow(aid)
        dr = dims[algebra.quiver.pos(a.tgt)]
        dc = dims[algebra.quiver.pos(a.src)]
        if not m and dr:
            m = tuple(tuple(0 for _ in range(dc)) for _ in range(dr))
        fixed.append((aid, m))
    return Representation(
        algebra=algebra,
        dims=tuple(int(d) for d in dims),
        mats=tuple(fixed),
        label=label,
        walk=walk,
    )


def eval_path(rep: Representation, path: Sequence[str]) -> Matrix:
    """Evaluate a traversal-order path as a matrix (last arrow acts last)."""
    quiver = rep.algebra.quiver
    rows = rep.dims[quiver.pos(quiver.arrow(path[-1]).tgt)]
    cols = rep.dims[quiver.pos(quiver.arrow(path[0]).src)]
    m = rep.mat(path[0])
    for aid in path[1:]:
        if not m or not m[0]:
            # a zero-dimensional intermediate vertex kills the product
            return linalg.zeros(rows, cols)
        m = linalg.mat_mul(rep.mat(aid), m, rep.algebra.p)
    return m


def eval_relation(rep: Representation, rel: Relation) -> Matrix:
    p = rep.algebra.p
    quiver = rep.algebra.quiver
    src, tgt = rel.src_tgt(quiver)
    rows = rep.dims[quiver.pos(tgt)]
    cols = rep.dims[quiver.pos(src)]
    acc = [[0] * cols for _ in range(rows)]
    for coeff, path in rel.terms:
        c = _coeff_mod(coeff, p)
        m = eval_path(rep, path)
        for i in range(rows):
            for j in range(cols):
                acc[i][j] = (acc[i][j] + c * m[i][j]) % p
    return tuple(tuple(row) for row in acc)


def check_relations(rep: Representation) -> Optional[Relation]:
    """First violated relation, or None when all hold."""
    for rel in rep.algebra.relations:
        if not rel.terms:
            continue
        if not linalg.is_zero(eval_relation(rep, rel)):
            return rel
    return None


# --------------------------------------------------------------------------
# simples, projectives, injectives (monomial relations)

def _monomial_relation_paths(algebra: Algebra) -> list[tuple[str, ...]]:
    paths = []
    for rel in algebra.relations:
        if not rel.terms:
            continue
        if len(rel.terms) != 1:
            raise NonStringAlgebraError(
                "construction requires monomial relations"
            )
        coeff, path = rel.terms[0]
        paths.append(tuple(path))
    return paths


def _path_is_nonzero(path: Sequence[str], rel_paths: list[tuple[str, ...]]) -> bool:
    t = tuple(path)
    for r in rel_paths:
        L = len(r)
        if L <= len(t):
            for i in range(len(t) - L + 1):
                if t[i : i + L] == r:
                    return False
    return True


def _nonzero_paths_from(algebra: Algebra, i: int, cap: int = 64) -> list[tuple[str, ...]]:
    """All relation-reduced paths starting at vertex i, trivial path included."""
    rel_paths = _monomial_relation_paths(algebra)
    quiver = algebra.quiver
    out: list[tuple[str, ...]] = [()]
    frontier: list[tuple[tuple[str, ...], int]] = [((), i)]
    while frontier:
        path, v = frontier.pop()
        if len(path) > cap:
            raise SearchBudgetExceeded(
                f"paths from {i} exceed length {cap}; algebra may be infinite dimensional"
            )
        for a in quiver.arrows_out(v):
            cand = path + (a.id,)
            if _path_is_nonzero(cand, rel_paths):
                out.append(cand)
                frontier.append((cand, a.tgt))
    return sorted(out, key=lambda q: (len(q), q))


def simple(algebra: Algebra, i: int) -> Representation:
    """The simple module S_i (one-dimensional at vertex i)."""
    dims = [0] * algebra.quiver.n
    dims[algebra.quiver.pos(i)] = 1
    return make_rep(algebra, dims, {}, label=f"S_{i}")


def projective(algebra: Algebra, i: int) -> Representation:
    """The indecomposable projective P_i, spanned by the nonzero paths from i."""
    quiver = algebra.quiver
    paths = _nonzero_paths_from(algebra, i)
    endpoint = {}
    for q in paths:
        v = i if not q else quiver.arrow(q[-1]).tgt
        endpoint[q] = v
    by_vertex: dict[int, list[tuple[str, ...]]] = {v: [] for v in quiver.vertices}
    for q in paths:
        by_vertex[endpoint[q]].append(q)
    index = {q: by_vertex[endpoint[q]].index(q) for q in paths}
    dims = [len(by_vertex[v]) for v in quiver.vertices]
    mats: dict[str, list[list[int]]] = {}
    for a in quiver.arrows:
        dr = len(by_vertex[a.tgt])
        dc = len(by_vertex[a.src])
        m = [[0] * dc for _ in range(dr)]
        for q in by_vertex[a.src]:
            ext = q + (a.id,)
            if ext in index:
                m[index[ext]][index[q]] = 1
        mats[a.id] = m
    return make_rep(algebra, dims, mats, label=f"P_{i}")


def injective(algebra: Algebra, i: int) -> Representation:
    """The indecomposable injective I_i, dual to the paths ending at i."""
    quiver = algebra.quiver
    rel_paths = _monomial_relation_paths(algebra)
    # paths ending at i, found by walking arrows backwards
    paths: list[tuple[str, ...]] = [()]
    frontier: list[tuple[tuple[str, ...], int]] = [((), i)]
    while frontier:
        path, v = frontier.pop()
        if len(path) > 64:
            raise SearchBudgetExceeded("paths too long; is the algebra finite dimensional?")
        for a in quiver.arrows_in(v):
            cand = (a.id,) + path
            if _path_is_nonzero(cand, rel_paths):
                paths.append(cand)
                frontier.append((cand, a.src))
    paths.sort(key=lambda q: (len(q), q))
    start = {}
    for q in paths:
        start[q] = i if not q else quiver.arrow(q[0]).src
    by_vertex: dict[int, list[tuple[str, ...]]] = {v: [] for v in quiver.vertices}
    for q in paths:
        by_vertex[start[q]].append(q)
    index = {q: by_vertex[start[q]].index(q) for q in paths}
    dims = [len(by_vertex[v]) for v in quiver.vertices]
    mats: dict[str, list[list[int]]] = {}
    for a in quiver.arrows:
        # duality: the matrix of a on I_i is the transpose of "prepend a"
        dr = len(by_vertex[a.tgt])
        dc = len(by_vertex[a.src])
        m = [[0] * dc for _ in range(dr)]
        for q in by_vertex[a.tgt]:
            ext = (a.id,) + q
            if ext in index:
                m[index[q]][index[ext]] = 1
        mats[a.id] = m
    return make_rep(algebra, dims, mats, label=f"I_{i}")


# --------------------------------------------------------------------------
# string modules

Letter = tuple[str, int]  # (arrow id, +1 direct / -1 inverse)


def _letter_ends(quiver: Quiver, letter: Letter) -> tuple[int, int]:
    a = quiver.arrow(letter[0])
    return (a.src, a.tgt) if letter[1] > 0 else (a.tgt, a.src)


def _word_vertices(quiver: Quiver, start: int, word: Sequence[Letter]) -> list[int]:
    verts = [start]
    for letter in word:
        s, t = _letter_ends(quiver, letter)
        if s != verts[-1]:
            raise ValueError("word is not a walk")
        verts.append(t)
    return verts


def _runs_avoid_relations(word: Sequence[Letter], rel_paths: list[tuple[str, ...]]) -> bool:
    run: list[str] = []
    sign = 0
    segments: list[tuple[int, list[str]]] = []
    for aid, s in word:
        if s == sign:
            run.append(aid)
        else:
            if run:
                segments.append((sign, run))
            run, sign = [aid], s
    if run:
        segments.append((sign, run))
    for s, seg in segments:
        path = tuple(seg) if s > 0 else tuple(reversed(seg))
        if not _path_is_nonzero(path, rel_paths):
            return False
    return True


def _inverse_word(word: tuple[Letter, ...]) -> tuple[Letter, ...]:
    return tuple((aid, -s) for aid, s in reversed(word))


def string_module(algebra: Algebra, start: int, word: Sequence[Letter], label: str = "") -> Representation:
    """The string module of a reduced walk, with 0/1 matrices."""
    quiver = algebra.quiver
    verts = _word_vertices(quiver, start, word)
    by_vertex: dict[int, list[int]] = {v: [] for v in quiver.vertices}
    for t, v in enumerate(verts):
        by_vertex[v].append(t)
    dims = [len(by_vertex[v]) for v in quiver.vertices]
    pos_index = {}
    for v, lst in by_vertex.items():
        for r, t in enumerate(lst):
            pos_index[t] = r
    mats: dict[str, list[list[int]]] = {
        a.id: [[0] * len(by_vertex[a.src]) for _ in range(len(by_vertex[a.tgt]))]
        for a in quiver.arrows
    }
    for t, (aid, s) in enumerate(word):
        if s > 0:
            mats[aid][pos_index[t + 1]][pos_index[t]] = 1
        else:
            mats[aid][pos_index[t]][pos_index[t + 1]] = 1
    if not label:
        label = _string_name(verts, word)
    return make_rep(algebra, dims, mats, label=label, walk=(start, tuple(word)))


def _string_name(verts: list[int], word: Sequence[Letter]) -> str:
    parts = [str(verts[0])]
    for t, (aid, s) in enumerate(word):
        parts.append(">" if s > 0 else "<")
        parts.append(str(verts[t + 1]))
    return "".join(parts)


def check_string_algebra(algebra: Algebra) -> None:
    """Structural string-algebra checks; raises NonStringAlgebraError."""
    quiver = algebra.quiver
    rel_paths = _monomial_relation_paths(algebra)
    for r in rel_paths:
        if len(r) < 2:
            raise NonStringAlgebraError("relations must have length >= 2")
    for v in quiver.vertices:
        if len(quiver.arrows_in(v)) > 2 or len(quiver.arrows_out(v)) > 2:
            raise NonStringAlgebraError(f"vertex {v} has more than two arrows in or out")
    for b in quiver.arrows:
        cont = [
            a
            for a in quiver.arrows_out(b.tgt)
            if _path_is_nonzero((b.id, a.id), rel_paths)
        ]
        if len(cont) > 1:
            raise NonStringAlgebraError(
                f"arrow {b.id} has two surviving continuations: not a string algebra"
            )
        pre = [
            a
            for a in quiver.arrows_in(b.src)
            if _path_is_nonzero((a.id, b.id), rel_paths)
        ]
        if len(pre) > 1:
            raise NonStringAlgebraError(
                f"arrow {b.id} has two surviving precompositions: not a string algebra"
            )


@dataclass
class Catalog:
    """Complete list of indecomposables of a supported string algebra."""

    algebra: Algebra
    modules: tuple[Representation, ...]

    def __post_init__(self):
        self._by_dims: dict[tuple[int, ...], list[Representation]] = {}
        for m in self.modules:
            self._by_dims.setdefault(m.dims, []).append(m)

    def __iter__(self):
        return iter(self.modules)

    def __len__(self):
        return len(self.modules)

    def by_dims(self, dims: Sequence[int]) -> list[Representation]:
        return list(self._by_dims.get(tuple(dims), []))

    def unique_by_dims(self, dims: Sequence[int]) -> Representation:
        hits = self.by_dims(dims)
        if len(hits) != 1:
            raise KeyError(f"{len(hits)} modules with dims {tuple(dims)}")
        return hits[0]

    def by_label(self, label: str) -> Representation:
        for m in self.modules:
            if m.label == label:
                return m
        raise KeyError(label)

    def index(self, module: Representation) -> int:
        for i, m in enumerate(self.modules):
            if m is module or m == module:
                return i
        raise ValueError("module not in catalog")


def string_catalog(algebra: Algebra, budget: int = 100_000) -> Catalog:
    """Every string module of a supported string algebra, exactly once.

    Strings are enumerated as reduced walks (no immediate backtracking, no
    relation inside any unidirectional run, in either reading direction) and
    deduplicated against their formal inverses.

    Raises:
        NonStringAlgebraError: if the structural checks fail.
        SearchBudgetExceeded: if the enumeration grows past `budget` walks,
            which would indicate an infinite-type input.
    """
    check_string_algebra(algebra)
    quiver = algebra.quiver
    rel_paths = _monomial_relation_paths(algebra)

    words: set[tuple[int, tuple[Letter, ...]]] = set()

    def canon(start: int, word: tuple[Letter, ...]) -> tuple:
        if not word:
            return (start,)
        inv = _inverse_word(word)
        inv_start = _word_vertices(quiver, start, word)[-1]
        return min((start,) + tuple(word), (inv_start,) + tuple(inv))

    frontier: list[tuple[int, tuple[Letter, ...]]] = []
    for v in quiver.vertices:
        frontier.append((v, ()))
    while frontier:
        start, word = frontier.pop()
        # walks are extended only at their end, so both reading directions
        # stay on the frontier: the inverse walk grows the other end
        if (start, word) in words:
            continue
        words.add((start, word))
        if len(words) > 2 * budget:
            raise SearchBudgetExceeded(
                f"more than {budget} strings; the algebra is unlikely to be finite type"
            )
        end = _word_vertices(quiver, start, word)[-1]
        last = word[-1] if word else None
        for a in quiver.arrows_out(end):
            letter: Letter = (a.id, 1)
            if last == (a.id, -1):
                continue
            cand = word + (letter,)
            if _runs_avoid_relations(cand, rel_paths):
                frontier.append((start, cand))
        for a in quiver.arrows_in(end):
            letter = (a.id, -1)
            if last == (a.id, 1):
                continue
            cand = word + (letter,)
            if _runs_avoid_relations(cand, rel_paths):
                frontier.append((start, cand))

    modules = [
        string_module(algebra, key[0], tuple(key[1:]))
        for key in {canon(start, word) for start, word in words}
    ]
    modules.sort(key=lambda m: (m.total_dim, m.dims, m.label))
    return Catalog(algebra=algebra, modules=tuple(modules))


# --------------------------------------------------------------------------
# Hom spaces and submodules

def _hom_system(
    m: Representation, n: Representation
) -> tuple[list[tuple[int, ...]], dict[int, int], int]:
    """Equations for f in Hom(M, N): rows, per-vertex offsets, unknown count.

    Unknowns are the blocks f_v of shape n.dims[v] x m.dims[v], flattened
    row-major; each arrow a: s -> t contributes f_t M_a - N_a f_s = 0.
    """
    if m.algebra.quiver != n.algebra.quiver or m.algebra.p != n.algebra.p:
        raise ValueError("modules over different algebras")
    p = m.algebra.p
    quiver = m.algebra.quiver
    offsets = {}
    total = 0
    for v in quiver.vertices:
        pv = quiver.pos(v)
        offsets[v] = total
        total += n.dims[pv] * m.dims[pv]
    rows: list[tuple[int, ...]] = []
    for a in quiver.arrows:
        sp, tp = quiver.pos(a.src), quiver.pos(a.tgt)
        ma, na = m.mat(a.id), n.mat(a.id)
        for i in range(n.dims[tp]):
            for j in range(m.dims[sp]):
                row = [0] * total
                # (f_t M_a)[i][j] = sum_c f_t[i][c] * M_a[c][j]
                for c in range(m.dims[tp]):
                    row[offsets[a.tgt] + i * m.dims[tp] + c] += ma[c][j]
                # (N_a f_s)[i][j] = sum_c N_a[i][c] * f_s[c][j]
                for c in range(n.dims[sp]):
                    row[offsets[a.src] + c * m.dims[sp] + j] -= na[i][c]
                rows.append(tuple(x % p for x in row))
    return rows, offsets, total


def hom_dim(m: Representation, n: Representation) -> int:
    """dim_F Hom(M, N): nullity of the commuting-square system."""
    rows, _, total = _hom_system(m, n)
    if total == 0:
        return 0
    if not rows:
        return total
    return total - linalg.rank(tuple(rows), m.algebra.p)


def hom_basis(m: Representation, n: Representation) -> list[dict[int, Matrix]]:
    """A basis of Hom(M, N), each element as per-vertex matrix blocks."""
    rows, offsets, total = _hom_system(m, n)
    p = m.algebra.p
    quiver = m.algebra.quiver
    if total == 0:
        return []
    if rows:
        vecs = linalg.nullspace(tuple(rows), p)
    else:
        vecs = [tuple(1 if c == r else 0 for c in range(total)) for r in range(total)]
    out = []
    for vec in vecs:
        blocks: dict[int, Matrix] = {}
        for v in quiver.vertices:
            pv = quiver.pos(v)
            nr, nc = n.dims[pv], m.dims[pv]
            blocks[v] = tuple(
                tuple(vec[offsets[v] + i * nc + c] for c in range(nc))
                for i in range(nr)
            )
        out.append(blocks)
    return out


def is_schurian(m: Representation) -> bool:
    """True iff End(M) is one-dimensional."""
    return hom_dim(m, m) == 1


def stable_subspace_tuples(
    m: Representation, max_total_dim: int = 12, max_product: int = 2_000_000
) -> list[tuple[tuple[int, ...], dict[int, tuple[tuple[int, ...], ...]]]]:
    """All arrow-stable subspace tuples of M.

    Returns a list of (dimvec, {vertex: rref basis rows}) pairs, including the
    zero tuple and M itself.

    Raises:
        SearchBudgetExceeded: when M is larger than the brute-force budget
            (never returns a silent partial answer).
    """
    algebra = m.algebra
    p = algebra.p
    quiver = algebra.quiver
    if m.total_dim > max_total_dim:
        raise SearchBudgetExceeded(
            f"total dimension {m.total_dim} exceeds the brute-force budget {max_total_dim}"
        )
    per_vertex: dict[int, list[tuple[tuple[int, ...], ...]]] = {}
    prod_size = 1
    for v in quiver.vertices:
        d = m.dims[quiver.pos(v)]
        per_vertex[v] = linalg.subspaces(d, p)
        prod_size *= len(per_vertex[v])
    if prod_size > max_product:
        raise SearchBudgetExceeded(
            f"{prod_size} subspace tuples exceed the enumeration budget"
        )
    verts = list(quiver.vertices)
    out = []
    for combo in product(*(per_vertex[v] for v in verts)):
        chosen = dict(zip(verts, combo))
        ok = True
        for a in quiver.arrows:
            mat = m.mat(a.id)
            tgt_basis = chosen[a.tgt]
            red, piv = linalg.rref(tgt_basis, p) if tgt_basis else ([], [])
            for u in chosen[a.src]:
                img = tuple(
                    sum(mat[i][j] * u[j] for j in range(len(u))) % p
                    for i in range(len(mat))
                )
                if not any(img):
                    continue
                if not tgt_basis:
                    ok = False
                    break
                rem = linalg.reduce_against(img, red, piv, p)
                if any(rem):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            dimvec = tuple(len(chosen[v]) for v in verts)
            out.append((dimvec, chosen))
    return out


def submodule_dimvecs(m: Representation, max_total_dim: int = 12) -> set[tuple[int, ...]]:
    """The set {dim M' : M' an arrow-stable subspace tuple of M}."""
    return {dv for dv, _ in stable_subspace_tuples(m, max_total_dim=max_total_dim)}

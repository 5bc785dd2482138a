"""Length bounds for maximal green sequences via cuts and Hom cycles.

A cut deletes one arrow from each potential cycle. The surviving quiver with
the surviving relations is a smaller algebra; the catalog modules living on it
form a forward hom-orthogonal sequence once ordered against their Hom digraph,
which exhibits a lower bound for the maximal length. Vertex-disjoint cycles in
the Hom digraph obstruct long sequences and give an upper bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

from .errors import NonStringAlgebraError, SearchBudgetExceeded, UnsupportedPotentialError
from .exchange import initial_seed, mgs_length_extrema
from .fho import FhoSequence, _hom_cache, is_maximal_fho, make_sequence
from .linalg import is_zero
from .qp import Quiver, QuiverWithPotential, RelationSet, jacobian_relations
from .rep import Catalog, Representation


@dataclass(frozen=True)
class Cut:
    """A choice of one deleted arrow per potential cycle.

    `residual_quiver` keeps the surviving arrows; `residual_relations` keeps
    exactly the cyclic-derivative relations all of whose paths survive.
    `cycle_lengths` records the lengths of the potential cycles, which the
    orientation test needs for its precondition.
    """

    deleted_arrows: frozenset[str]
    residual_quiver: Quiver = field(compare=False)
    residual_relations: RelationSet = field(compare=False)
    cycle_lengths: tuple[int, ...] = field(default=(), compare=False)

    def __str__(self) -> str:
        return "cut{" + ",".join(sorted(self.deleted_arrows)) + "}"


def _residual(qp: QuiverWithPotential, deleted: frozenset[str]) -> tuple[Quiver, RelationSet]:
    quiver = qp.quiver
    survivors = tuple(a for a in quiver.arrows if a.id not in deleted)
    residual_quiver = Quiver(vertices=quiver.vertices, arrows=survivors)
    kept = []
    for rel in jacobian_relations(qp):
        if all(aid not in deleted for _, path in rel.terms for aid in path):
            kept.append(rel)
    return residual_quiver, RelationSet(tuple(kept))


def cuts(qp: QuiverWithPotential) -> list[Cut]:
    """All cuts of the potential, one deleted arrow per cycle.

    With an empty potential the only cut deletes nothing.
    """
    choices = [term.cycle for term in qp.potential]
    out = []
    seen = set()
    for pick in itertools.product(*choices) if choices else [()]:
        deleted = frozenset(pick)
        if deleted in seen:
            continue
        seen.add(deleted)
        residual_quiver, residual_relations = _residual(qp, deleted)
        out.append(
            Cut(
                deleted_arrows=deleted,
                residual_quiver=residual_quiver,
                residual_relations=residual_relations,
                cycle_lengths=tuple(len(c) for c in choices),
            )
        )
    return out


def vanishes_on_cut(x: Representation, cut: Cut) -> bool:
    """True iff the module's matrices are zero on every deleted arrow."""
    return all(is_zero(x.mat(aid)) for aid in cut.deleted_arrows)


def c_modules(cut: Cut, catalog: Catalog) -> list[int]:
    """Catalog indices of the modules supported away from the deleted arrows."""
    return [i for i, m in enumerate(catalog.modules) if vanishes_on_cut(m, cut)]


def c_module_count(cut: Cut, catalog: Catalog) -> int:
    return len(c_modules(cut, catalog))


def module_diagram(x: Representation, cut: Cut) -> str:
    """Orientation word of the deleted arrows along the module's string walk.

    Reading the walk left to right, each deleted-arrow letter contributes '>'
    (direct) or '<' (inverse); letters on surviving arrows collapse away. A
    module supported inside the residual quiver yields the empty word.
    """
    if not x.walk:
        raise NonStringAlgebraError(
            f"module {x.label or x.dims} carries no string walk"
        )
    _, word = x.walk
    return "".join(
        (">" if s > 0 else "<") for aid, s in word if aid in cut.deleted_arrows
    )


def is_alternating(diagram: str) -> bool:
    return all(a != b for a, b in zip(diagram, diagram[1:]))


def assem_tilted(cut: Cut, catalog: Catalog) -> bool:
    """Orientation test for cuts of a triangle potential.

    True iff every catalog module's diagram alternates between '>' and '<'.
    Only defined when every potential cycle is a triangle; other shapes raise,
    and `bounds_report` falls back to the acyclicity check instead.
    """
    if any(length != 3 for length in cut.cycle_lengths):
        raise UnsupportedPotentialError(
            "orientation test only covers potentials made of triangles"
        )
    return all(
        is_alternating(module_diagram(m, cut)) for m in catalog.modules
    )


def hom_digraph(catalog: Catalog, indices: Sequence[int]) -> dict[int, set[int]]:
    """Directed graph on the given catalog indices: i -> j iff Hom(M_i, M_j) != 0."""
    cache = _hom_cache(catalog)
    return {
        i: {j for j in indices if j != i and cache.hom(i, j) != 0}
        for i in indices
    }


def _reverse_topological(graph: dict[int, set[int]]) -> Optional[list[int]]:
    """Order with every nonzero Hom pointing backward; None if the graph has a cycle.

    Repeatedly emits the smallest vertex with no outgoing edge into the
    remaining set, so nonzero Homs only reach already-emitted members.
    """
    remaining = set(graph)
    order: list[int] = []
    while remaining:
        ready = sorted(v for v in remaining if not (graph[v] & remaining))
        if not ready:
            return None
        v = ready[0]
        order.append(v)
        remaining.remove(v)
    return order


def construct_max_sequence(cut: Cut, catalog: Catalog) -> Optional[FhoSequence]:
    """The forward hom-orthogonal sequence carried by a cut, or None.

    Takes the modules supported away from the deleted arrows and orders them
    right-to-left along their Hom digraph. Returns None when that digraph has
    a cycle (the cut carries no such sequence).
    """
    idx = c_modules(cut, catalog)
    graph = hom_digraph(catalog, idx)
    order = _reverse_topological(graph)
    if order is None:
        return None
    return make_sequence([catalog.modules[i] for i in order])


def triangle_seed_cycles(qp: QuiverWithPotential, catalog: Catalog) -> list[tuple[int, ...]]:
    """Hom 3-cycles formed by the arrow modules of each triangle of the potential.

    Each triangle of the potential turns its three arrow string modules into a
    directed Hom cycle; these are the canonical disjoint cycles to start from.
    Triangles whose arrow modules are missing or fail the Hom test are skipped.
    """
    cache = _hom_cache(catalog)
    by_arrow: dict[str, int] = {}
    for i, m in enumerate(catalog.modules):
        if m.walk and len(m.walk[1]) == 1:
            by_arrow[m.walk[1][0][0]] = i
    out: list[tuple[int, ...]] = []
    for term in qp.potential:
        if len(term.cycle) != 3:
            continue
        try:
            tri = tuple(by_arrow[aid] for aid in term.cycle)
        except KeyError:
            continue
        if len(set(tri)) != 3 or not all(cache.schurian(i) for i in tri):
            continue
        for order in (tri, (tri[0], tri[2], tri[1])):
            if all(
                cache.hom(order[t], order[(t + 1) % 3]) != 0 for t in range(3)
            ):
                out.append(_canonical_cycle(order))
                break
    return out


def _canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    k = cycle.index(min(cycle))
    return tuple(cycle[k:]) + tuple(cycle[:k])


def _short_cycles(graph: dict[int, set[int]]) -> list[tuple[int, ...]]:
    """All directed 2- and 3-cycles, canonically rotated and sorted."""
    verts = sorted(graph)
    found = set()
    for i in verts:
        for j in graph[i]:
            if j > i and i in graph[j]:
                found.add((i, j))
            for k in graph[j]:
                if k != i and k != j and i in graph[k]:
                    found.add(_canonical_cycle((i, j, k)))
    return sorted(found, key=lambda c: (len(c), c))


def disjoint_hom_cycles(
    catalog: Catalog, seed_cycles: Sequence[tuple[int, ...]] = ()
) -> list[tuple[int, ...]]:
    """A vertex-disjoint family of directed cycles in the nonzero-Hom digraph.

    Restricted to Schurian modules, self-Homs excluded. Greedy over short
    cycles with deterministic tie-breaks, so the family certifies its size but
    is not promised to be maximum. Optional seed cycles (already validated,
    e.g. from `triangle_seed_cycles`) are taken first.
    """
    cache = _hom_cache(catalog)
    idx = cache.schurian_indices()
    graph = hom_digraph(catalog, idx)
    taken: list[tuple[int, ...]] = []
    used: set[int] = set()
    for cyc in seed_cycles:
        if used & set(cyc):
            continue
        taken.append(tuple(cyc))
        used.update(cyc)
    for cyc in _short_cycles(graph):
        if used & set(cyc):
            continue
        taken.append(cyc)
        used.update(cyc)
    return taken


@dataclass(frozen=True)
class BoundsReport:
    """Length bounds for the maximal green sequences of one quiver with potential."""

    n: int
    k: int
    indec_count: int
    min_len: Optional[int]
    max_len: Optional[int]
    extrema_known: bool
    lower_bound: int
    upper_bound: int
    achieved_max: int
    cycle_count: int
    conjecture_holds: Optional[bool]
    cut_reports: tuple[dict, ...] = field(default=(), compare=False)
    cycles: tuple[tuple[str, ...], ...] = field(default=(), compare=False)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "indec_count": self.indec_count,
            "min_len": self.min_len,
            "max_len": self.max_len,
            "extrema_known": self.extrema_known,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "achieved_max": self.achieved_max,
            "cycle_count": self.cycle_count,
            "conjecture_holds": self.conjecture_holds,
            "cuts": [dict(c) for c in self.cut_reports],
            "hom_cycles": [list(c) for c in self.cycles],
        }


def report_table(report: BoundsReport) -> str:
    rows = [
        ("vertices", report.n),
        ("potential cycles", report.k),
        ("indecomposables", report.indec_count),
        ("min length", report.min_len if report.extrema_known else "unknown"),
        ("max length", report.max_len if report.extrema_known else "unknown"),
        ("lower bound", report.lower_bound),
        ("upper bound", report.upper_bound),
        ("achieved", report.achieved_max),
        ("disjoint hom cycles", report.cycle_count),
        (
            "max equals lower bound",
            "undecided" if report.conjecture_holds is None else str(report.conjecture_holds).lower(),
        ),
    ]
    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name.ljust(width)}  {value}" for name, value in rows)


def bounds_report(
    qp: QuiverWithPotential,
    catalog: Catalog,
    budget: int = 1_000_000,
    enumerate_extrema: bool = True,
) -> BoundsReport:
    """Assemble lower/upper bounds and (budget permitting) the exact extrema.

    Lower bound: the longest cut-carried sequence that passes the full
    maximality check. Upper bound: the smaller of `indec - k` (valid when the
    potential is made of triangles and the catalog is a full type-A count,
    where no sequence is shorter than n + k) and `indec - c` with c the number
    of vertex-disjoint Hom cycles found. Enumeration of the exact extrema is
    skipped or cut short when the budget runs out; the report then marks them
    unknown. The conjecture flag compares the exact (or certified) maximum
    with the lower bound.
    """
    n = qp.quiver.n
    k = qp.cycle_count
    indec = len(catalog.modules)

    cut_rows: list[dict] = []
    lower = 0
    for cut in cuts(qp):
        row: dict = {"deleted": sorted(cut.deleted_arrows)}
        row["c_count"] = c_module_count(cut, catalog)
        try:
            row["tilted"] = assem_tilted(cut, catalog)
        except UnsupportedPotentialError:
            row["tilted"] = None
        seq = construct_max_sequence(cut, catalog)
        if seq is not None and is_maximal_fho(seq.modules, catalog):
            row["length"] = len(seq)
            row["labels"] = [m.label for m in seq.modules]
            lower = max(lower, len(seq))
        else:
            row["length"] = None
        cut_rows.append(row)

    hom_cycles = disjoint_hom_cycles(
        catalog, seed_cycles=triangle_seed_cycles(qp, catalog)
    )
    cycle_count = len(hom_cycles)
    upper_candidates = [indec - cycle_count]
    type_a = all(len(t.cycle) == 3 for t in qp.potential) and indec == comb(n + 1, 2)
    if type_a:
        upper_candidates.append(indec - k)
    upper = min(upper_candidates)

    min_len: Optional[int] = None
    max_len: Optional[int] = None
    extrema_known = False
    if enumerate_extrema:
        try:
            min_len, max_len = mgs_length_extrema(
                initial_seed(qp.quiver), budget=budget
            )
            extrema_known = True
        except SearchBudgetExceeded:
            pass

    if extrema_known:
        known_max: Optional[int] = max_len
    elif lower == upper:
        # the constructed sequence meets the obstruction bound, so the
        # maximum is pinned without enumeration
        known_max = lower
    else:
        known_max = None
    conjecture = None if known_max is None else (known_max == lower)

    def label(i: int) -> str:
        return catalog.modules[i].label

    return BoundsReport(
        n=n,
        k=k,
        indec_count=indec,
        min_len=min_len,
        max_len=max_len,
        extrema_known=extrema_known,
        lower_bound=lower,
        upper_bound=upper,
        achieved_max=lower,
        cycle_count=cycle_count,
        conjecture_holds=conjecture,
        cut_reports=tuple(cut_rows),
        cycles=tuple(tuple(label(i) for i in cyc) for cyc in hom_cycles),
    )

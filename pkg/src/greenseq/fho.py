"""Forward hom-orthogonal sequences and the three-way equivalence check.

A sequence M_1, ..., M_m of Schurian modules is weakly forward
hom-orthogonal when Hom(M_i, M_j) = 0 for i < j. Maximality can be read two
ways and both predicates are provided: `is_maximal_fho` is the unrestricted
insertion test (no Schurian module fits at any position, and nothing at all
is left over in the torsion-free class), while `is_fho_in_torsion_class`
restricts insertion candidates to the torsion class generated by the
sequence. The two agree on maximal sequences and are reported side by side.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from greenseq import exchange
from greenseq.errors import SearchBudgetExceeded
from greenseq.qp import QuiverWithPotential, b_matrix
from greenseq.rep import Catalog, Representation, hom_dim, is_schurian


class HomCache:
    """Pairwise Hom dimensions over a catalog, computed once on demand."""

    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self._table: dict[tuple[int, int], int] = {}
        self._schurian: dict[int, bool] = {}

    def hom(self, i: int, j: int) -> int:
        key = (i, j)
        if key not in self._table:
            self._table[key] = hom_dim(self.catalog.modules[i], self.catalog.modules[j])
        return self._table[key]

    def schurian(self, i: int) -> bool:
        if i not in self._schurian:
            self._schurian[i] = self.hom(i, i) == 1
        return self._schurian[i]

    def schurian_indices(self) -> list[int]:
        return [i for i in range(len(self.catalog)) if self.schurian(i)]


def _hom_cache(catalog: Catalog) -> HomCache:
    cached = getattr(catalog, "_hom_cache", None)
    if cached is None:
        cached = HomCache(catalog)
        catalog._hom_cache = cached
    return cached


@dataclass(frozen=True)
class FhoSequence:
    """An ordered, weakly forward hom-orthogonal sequence of catalog modules."""

    modules: tuple[Representation, ...]
    dim_vectors: tuple[tuple[int, ...], ...] = field(default=())
    hom_table: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.modules)

    def to_json(self) -> dict:
        return {
            "dims": [list(d) for d in self.dim_vectors],
            "labels": [m.label for m in self.modules],
            "length": len(self),
        }


def make_sequence(modules: Sequence[Representation]) -> FhoSequence:
    mods = tuple(modules)
    dims = tuple(m.dims for m in mods)
    table = tuple(
        tuple(hom_dim(a, b) for b in mods) for a in mods
    )
    return FhoSequence(modules=mods, dim_vectors=dims, hom_table=table)


def dim_multiset(seq: FhoSequence) -> tuple[tuple[int, ...], ...]:
    """Equivalence-class key: the sorted multiset of dimension vectors."""
    return tuple(sorted(seq.dim_vectors))


@dataclass(frozen=True)
class TorsionPair:
    """G = modules generated by M (torsion class), F = M-perpendicular."""

    G: tuple[Representation, ...]
    F: tuple[Representation, ...]


def torsion_pair(m_list: Sequence[Representation], catalog: Catalog) -> TorsionPair:
    """The torsion pair (G(M), F(M)) of M = direct sum of m_list, on a catalog.

    F is every catalog module receiving no nonzero map from any M_i; G is
    every catalog module with no nonzero map to any member of F.
    """
    f = tuple(
        y for y in catalog if all(hom_dim(m, y) == 0 for m in m_list)
    )
    g = tuple(
        x for x in catalog if all(hom_dim(x, y) == 0 for y in f)
    )
    return TorsionPair(G=g, F=f)


def is_weakly_fho(modules: Sequence[Representation]) -> bool:
    """All members Schurian and Hom(M_i, M_j) = 0 for every i < j."""
    mods = list(modules)
    if not all(is_schurian(m) for m in mods):
        return False
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            if hom_dim(mods[i], mods[j]) != 0:
                return False
    return True


def insertion_positions(
    modules: Sequence[Representation], candidate: Representation
) -> list[int]:
    """Positions t where candidate could be inserted after modules[:t],
    preserving pairwise Hom-vanishing in the extended sequence."""
    mods = list(modules)
    m = len(mods)
    out = []
    for t in range(m + 1):
        if all(hom_dim(a, candidate) == 0 for a in mods[:t]) and all(
            hom_dim(candidate, b) == 0 for b in mods[t:]
        ):
            out.append(t)
    return out


def insertion_obstructions(
    modules: Sequence[Representation], candidate: Representation
) -> list[tuple[int, Representation, Representation, int]]:
    """Per position t, one witness (t, src, tgt, hom_dim) of nonzero Hom that
    blocks inserting the candidate there. Empty iff some position works."""
    mods = list(modules)
    out = []
    for t in range(len(mods) + 1):
        witness = None
        for a in mods[:t]:
            h = hom_dim(a, candidate)
            if h:
                witness = (t, a, candidate, h)
                break
        if witness is None:
            for b in mods[t:]:
                h = hom_dim(candidate, b)
                if h:
                    witness = (t, candidate, b, h)
                    break
        if witness is None:
            return []
        out.append(witness)
    return out


def is_maximal_fho(modules: Sequence[Representation], catalog: Catalog) -> bool:
    """Unrestricted maximality: weakly FHO, empty torsion-free class, and no
    Schurian catalog module insertable at any position."""
    mods = list(modules)
    if not is_weakly_fho(mods):
        return False
    for y in catalog:
        if all(hom_dim(m, y) == 0 for m in mods):
            return False
    for cand in catalog:
        if not is_schurian(cand):
            continue
        if insertion_positions(mods, cand):
            return False
    return True


def is_fho_in_torsion_class(
    modules: Sequence[Representation], catalog: Catalog
) -> bool:
    """Maximality within G(M): weakly FHO and, at every cut point k, no
    Schurian member of G(M) lies in (prefix)^perp intersect perp(suffix)."""
    mods = list(modules)
    if not is_weakly_fho(mods):
        return False
    pair = torsion_pair(mods, catalog)
    g_set = [z for z in pair.G if is_schurian(z)]
    for k in range(len(mods) + 1):
        for z in g_set:
            if all(hom_dim(a, z) == 0 for a in mods[:k]) and all(
                hom_dim(z, b) == 0 for b in mods[k:]
            ):
                return False
    return True


def enumerate_maximal_fho(catalog: Catalog, budget: int = 1_000_000) -> list[FhoSequence]:
    """All maximal forward hom-orthogonal sequences over a complete catalog.

    Depth-first search appending catalog modules in index order, so the
    result order is deterministic. A branch dies when no module can be
    appended; the leaf is kept iff it passes the full maximality test
    (a right-nonextendable sequence can still admit a middle insertion).

    Raises:
        SearchBudgetExceeded: with `.partial` carrying sequences found so far.
    """
    cache = _hom_cache(catalog)
    schurian = cache.schurian_indices()
    found: list[FhoSequence] = []
    visited = 0

    def maximal(seq: list[int]) -> bool:
        for y in range(len(catalog)):
            if all(cache.hom(m, y) == 0 for m in seq):
                return False
        for cand in schurian:
            for t in range(len(seq) + 1):
                if all(cache.hom(a, cand) == 0 for a in seq[:t]) and all(
                    cache.hom(cand, b) == 0 for b in seq[t:]
                ):
                    return False
        return True

    def walk(seq: list[int], candidates: list[int]):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise SearchBudgetExceeded(
                f"forward hom-orthogonal search exceeded {budget} nodes",
                partial=list(found),
            )
        if not candidates:
            if maximal(seq):
                found.append(make_sequence([catalog.modules[i] for i in seq]))
            return
        for c in candidates:
            seq.append(c)
            narrowed = [d for d in candidates if d != c and cache.hom(c, d) == 0]
            walk(seq, narrowed)
            seq.pop()

    walk([], schurian)
    return found


def verify_theorem1(
    qp: QuiverWithPotential,
    catalog: Catalog,
    budget: int = 1_000_000,
    rng_seed: int = 0,
    samples: int = 100,
) -> dict:
    """Check the three descriptions of maximal green sequences against each other.

    (1) c-vector sequences of all maximal green sequences of the exchange
    matrix, (2) dimension-vector sequences of all maximal forward
    hom-orthogonal sequences over the catalog, (3) wall-crossing sequences of
    generic green paths: random bases first, then a directed base search for
    any sequence of (1) or (2) that sampling missed. The report fails if any
    set disagrees or some sequence cannot be realized by a generic path.

    Returns:
        A JSON-friendly report dict; report["equal"] is the overall verdict.
    """
    from greenseq import walls as walls_mod

    seed = exchange.initial_seed(qp.quiver)
    assert seed.b == b_matrix(qp.quiver)
    mgs = exchange.enumerate_green_sequences(seed, maximal_only=True, budget=budget)
    set_mgs = {tuple(s.c_vectors) for s in mgs}

    fho_seqs = enumerate_maximal_fho(catalog, budget=budget)
    set_fho = {s.dim_vectors for s in fho_seqs}

    rng = random.Random(rng_seed)
    witnesses: list[dict] = []
    observed: dict[tuple, str] = {}
    for _ in range(samples):
        try:
            _, records = walls_mod.random_generic_base(catalog, rng)
        except Exception as e:  # resampling exhausted
            witnesses.append({"kind": "sampling-error", "detail": str(e)})
            continue
        key = tuple(r.module.dims for r in records)
        observed.setdefault(key, "random")
    for key in sorted(set_mgs | set_fho):
        if key in observed:
            continue
        realized = walls_mod.realize_sequence(catalog, key, rng)
        if realized is None:
            witnesses.append(
                {"kind": "unrealized", "sequence": [list(d) for d in key]}
            )
        else:
            observed[key] = "directed"
    set_walls = set(observed)

    for key in sorted(set_walls - (set_mgs | set_fho)):
        witnesses.append(
            {"kind": "extra-wall-sequence", "sequence": [list(d) for d in key]}
        )
    for key in sorted(set_mgs ^ set_fho):
        witnesses.append(
            {
                "kind": "mgs-fho-mismatch",
                "sequence": [list(d) for d in key],
                "in_mgs": key in set_mgs,
                "in_fho": key in set_fho,
            }
        )

    both_defs = sum(
        1
        for s in fho_seqs
        if is_fho_in_torsion_class(s.modules, catalog)
    )
    lengths = sorted(len(s) for s in fho_seqs)
    equal = (
        set_mgs == set_fho == set_walls
        and not witnesses
        and len(mgs) == len(fho_seqs)
    )
    return {
        "equal": equal,
        "mgs_count": len(mgs),
        "fho_count": len(fho_seqs),
        "wall_realized_count": len(set_walls),
        "realized_via": {
            "random": sum(1 for v in observed.values() if v == "random"),
            "directed": sum(1 for v in observed.values() if v == "directed"),
        },
        "extremal_lengths": [lengths[0], lengths[-1]] if lengths else [0, 0],
        "maximal_also_maximal_in_torsion_class": both_defs,
        "sequences": [[list(d) for d in key] for key in sorted(set_fho)],
        "witnesses": witnesses,
    }

"""Extended exchange matrices, mutation, c-vectors, and green-sequence search.

Matrices are plain tuples of int tuples, so every value in this module is
immutable and hashable. Mutation returns fresh matrices; nothing is modified
in place. Python integers are arbitrary precision, so entries cannot silently
wrap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from greenseq.errors import InvalidQuiverError, SearchBudgetExceeded

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]


@dataclass(frozen=True)
class ExtExchangeMatrix:
    """A 2n x n extended exchange matrix, stored as the two n x n halves.

    Attributes:
        n: number of vertices.
        b: principal part, skew-symmetric; b[i][j] = #(i -> j) - #(j -> i).
        c: bottom part; column k is the k-th c-vector.
    """

    n: int
    b: IntMatrix
    c: IntMatrix

    def __post_init__(self):
        for half in (self.b, self.c):
            if len(half) != self.n or any(len(row) != self.n for row in half):
                raise ValueError("matrix halves must be n x n")

    def column(self, k: int) -> IntVector:
        return tuple(self.c[i][k] for i in range(self.n))

    def rows(self) -> IntMatrix:
        """The full 2n x n stack (B over C)."""
        return self.b + self.c


@dataclass(frozen=True)
class GreenSequence:
    """A green mutation sequence together with the c-vectors it consumed.

    c_vectors[i] is the k_i-th c-column immediately before the i-th mutation;
    along a green sequence each one is entrywise nonnegative.
    """

    mutation_indices: IntVector
    c_vectors: tuple[IntVector, ...]

    def __len__(self) -> int:
        return len(self.mutation_indices)

    def to_json(self) -> dict:
        return {
            "indices": list(self.mutation_indices),
            "c_vectors": [list(v) for v in self.c_vectors],
            "length": len(self),
        }


def initial_seed_from_matrix(b: Iterable[Iterable[int]]) -> ExtExchangeMatrix:
    """Build the initial seed (B over the identity) from a raw B-matrix."""
    bt = tuple(tuple(int(x) for x in row) for row in b)
    n = len(bt)
    for i in range(n):
        for j in range(n):
            if bt[i][j] != -bt[j][i]:
                raise InvalidQuiverError("B-matrix must be skew-symmetric")
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return ExtExchangeMatrix(n=n, b=bt, c=ident)


def initial_seed(q) -> ExtExchangeMatrix:
    """Initial extended exchange matrix of a quiver.

    Args:
        q: a `greenseq.qp.Quiver` (anything with `vertices` and `arrows`).

    Returns:
        ExtExchangeMatrix with b[i][j] = #(i -> j) - #(j -> i) and c = I.

    Raises:
        InvalidQuiverError: if the quiver has a loop or a 2-cycle.
    """
    verts = list(q.vertices)
    n = len(verts)
    pos = {v: i for i, v in enumerate(verts)}
    b = [[0] * n for _ in range(n)]
    for a in q.arrows:
        if a.src == a.tgt:
            raise InvalidQuiverError(f"loop at vertex {a.src}")
        b[pos[a.src]][pos[a.tgt]] += 1
        b[pos[a.tgt]][pos[a.src]] -= 1
    counts: dict[tuple[int, int], int] = {}
    for a in q.arrows:
        counts[(a.src, a.tgt)] = counts.get((a.src, a.tgt), 0) + 1
    for (s, t) in counts:
        if (t, s) in counts:
            raise InvalidQuiverError(f"2-cycle between vertices {s} and {t}")
    return initial_seed_from_matrix(b)


def mutate(m: ExtExchangeMatrix, k: int) -> ExtExchangeMatrix:
    """Fomin-Zelevinsky mutation at column k, applied to all 2n rows.

    Entries in row i, column j with i != k != j gain b_ik * |b_kj| whenever
    b_ik and b_kj have the same sign; row k and column k flip sign.

    Args:
        m: matrix to mutate (unchanged; a new value is returned).
        k: 0-based column index.

    Returns:
        The mutated ExtExchangeMatrix.
    """
    n = m.n
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k} out of range for n={n}")
    old = m.rows()
    new = []
    for i in range(2 * n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-old[i][j])
            else:
                bik, bkj = old[i][k], old[k][j]
                if bik > 0 and bkj > 0:
                    row.append(old[i][j] + bik * bkj)
                elif bik < 0 and bkj < 0:
                    row.append(old[i][j] - bik * bkj)
                else:
                    row.append(old[i][j])
        new.append(tuple(row))
    return ExtExchangeMatrix(n=n, b=tuple(new[:n]), c=tuple(new[n:]))


def c_vector(m: ExtExchangeMatrix, k: int) -> IntVector:
    """The k-th c-vector (k-th column of the bottom half)."""
    if not 0 <= k < m.n:
        raise IndexError(f"column {k} out of range for n={m.n}")
    return m.column(k)


def is_green(m: ExtExchangeMatrix, k: int) -> bool:
    """True iff the k-th c-vector is nonzero and entrywise nonnegative."""
    col = c_vector(m, k)
    return any(col) and all(x >= 0 for x in col)


def _check_sign_coherent(m: ExtExchangeMatrix) -> None:
    for k in range(m.n):
        col = m.column(k)
        if not any(col):
            raise AssertionError(f"zero c-column {k}: sign coherence violated")
        if any(x > 0 for x in col) and any(x < 0 for x in col):
            raise AssertionError(
                f"mixed-sign c-column {k} = {col}: sign coherence violated"
            )


def enumerate_green_sequences(
    seed: ExtExchangeMatrix,
    max_len: Optional[int] = None,
    maximal_only: bool = False,
    budget: int = 1_000_000,
) -> list[GreenSequence]:
    """Depth-first enumeration of green sequences from a seed.

    Branches are explored in increasing mutation index, so the output is in
    lexicographic order of the index sequences. Sign coherence is asserted at
    every node visited.

    Args:
        seed: the starting extended exchange matrix (normally an initial seed).
        max_len: depth cap; None means unbounded (finite type terminates).
        maximal_only: if True, return exactly the sequences whose final matrix
            has no green column (the maximal green sequences).
        budget: node budget for the search.

    Returns:
        List of GreenSequence in lexicographic order.

    Raises:
        SearchBudgetExceeded: if more than `budget` nodes are visited; the
            exception's `partial` attribute carries the sequences found so far.
    """
    found: list[GreenSequence] = []
    visited = 0

    def walk(m: ExtExchangeMatrix, indices: list[int], cvecs: list[IntVector]):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise SearchBudgetExceeded(
                f"green-sequence search exceeded {budget} nodes",
                partial=list(found),
            )
        _check_sign_coherent(m)
        greens = [k for k in range(m.n) if is_green(m, k)]
        if maximal_only:
            if not greens:
                found.append(
                    GreenSequence(tuple(indices), tuple(cvecs))
                )
                return
        elif indices:
            found.append(GreenSequence(tuple(indices), tuple(cvecs)))
        if max_len is not None and len(indices) >= max_len:
            return
        for k in greens:
            indices.append(k)
            cvecs.append(c_vector(m, k))
            walk(mutate(m, k), indices, cvecs)
            indices.pop()
            cvecs.pop()

    walk(seed, [], [])
    return found


def mgs_length_extrema(
    seed: ExtExchangeMatrix, budget: int = 1_000_000
) -> tuple[int, int]:
    """Minimum and maximum length over all maximal green sequences."""
    seqs = enumerate_green_sequences(seed, maximal_only=True, budget=budget)
    if not seqs:
        raise ValueError("no maximal green sequence found")
    lengths = [len(s) for s in seqs]
    return min(lengths), max(lengths)


def replay_c_vector_sequence(
    seed: ExtExchangeMatrix, c_vectors: Iterable[IntVector]
) -> tuple[GreenSequence, ExtExchangeMatrix]:
    """Rebuild a green sequence from the c-vectors it is supposed to consume.

    At each step the (unique, the c-columns are a basis) green vertex whose
    c-column equals the requested vector is mutated.

    Raises:
        ValueError: if some step has no green vertex with that c-vector.
    """
    m = seed
    indices: list[int] = []
    consumed: list[IntVector] = []
    for t, want in enumerate(c_vectors):
        want = tuple(int(x) for x in want)
        k = next(
            (k for k in range(m.n) if is_green(m, k) and c_vector(m, k) == want),
            None,
        )
        if k is None:
            raise ValueError(f"step {t}: no green vertex carries c-vector {want}")
        indices.append(k)
        consumed.append(want)
        m = mutate(m, k)
    return GreenSequence(tuple(indices), tuple(consumed)), m


def cvector_multiset(seq: GreenSequence) -> tuple[IntVector, ...]:
    """Canonical key for the equivalence class of a green sequence.

    Two maximal green sequences are treated as equivalent iff their c-vector
    multisets coincide; the key is the sorted tuple of c-vectors.
    """
    return tuple(sorted(seq.c_vectors))


def equivalence_classes(
    seqs: Iterable[GreenSequence],
) -> dict[tuple[IntVector, ...], list[GreenSequence]]:
    """Group green sequences by c-vector multiset."""
    classes: dict[tuple[IntVector, ...], list[GreenSequence]] = {}
    for s in seqs:
        classes.setdefault(cvector_multiset(s), []).append(s)
    return classes

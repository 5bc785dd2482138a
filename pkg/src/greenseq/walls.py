"""Semistability walls, green paths, crossing sequences, and compartments.

The wall of a module M is D(M) = {x : x . dim M = 0 and x . d <= 0 for every
submodule dimension vector d}. Green paths are affine lines x + t*(1,...,1);
the all-ones direction makes every wall crossing time unique, so a path is
described exactly by its ordered crossing records.

All geometry is exact: points are tuples of Fraction, membership tests are
rational, and feasibility questions go through a small phase-1 simplex over
Fraction (Bland's rule, so it terminates).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from greenseq import linalg
from greenseq.errors import FiltrationError, GenericityError
from greenseq.rep import (
    Catalog,
    Representation,
    is_schurian,
    stable_subspace_tuples,
    submodule_dimvecs,
)

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class GreenPath:
    """The line t -> base + (t, ..., t), considered for all real t."""

    base: Vector

    def point(self, t: Fraction) -> Vector:
        return tuple(b + t for b in self.base)


@dataclass(frozen=True)
class Wall:
    module: Representation
    normal: tuple[int, ...]
    sub_dimvecs: frozenset[tuple[int, ...]]


@dataclass(frozen=True)
class CrossingRecord:
    time: Fraction
    module: Representation
    point: Vector
    interior: bool

    @property
    def dims(self) -> tuple[int, ...]:
        return self.module.dims


def wall_for(module: Representation, max_total_dim: int = 12) -> Wall:
    return Wall(
        module=module,
        normal=module.dims,
        sub_dimvecs=frozenset(submodule_dimvecs(module, max_total_dim=max_total_dim)),
    )


def _as_wall(m: Union[Wall, Representation]) -> Wall:
    return m if isinstance(m, Wall) else wall_for(m)


def _as_vector(x: Sequence) -> Vector:
    return tuple(Fraction(v) for v in x)


def _dot(x: Vector, d: Sequence[int]) -> Fraction:
    return sum((xi * di for xi, di in zip(x, d)), Fraction(0))


def in_D(m: Union[Wall, Representation], x: Sequence) -> bool:
    """Exact membership of x in the wall D(M)."""
    wall = _as_wall(m)
    v = _as_vector(x)
    if _dot(v, wall.normal) != 0:
        return False
    return all(_dot(v, d) <= 0 for d in wall.sub_dimvecs)


def in_int_D(m: Union[Wall, Representation], x: Sequence) -> bool:
    """Strict-interior membership: x . d < 0 for proper nonzero submodules."""
    wall = _as_wall(m)
    v = _as_vector(x)
    if _dot(v, wall.normal) != 0:
        return False
    full = tuple(wall.normal)
    for d in wall.sub_dimvecs:
        if not any(d) or d == full:
            continue
        if _dot(v, d) >= 0:
            return False
    return True


def catalog_walls(catalog: Catalog) -> list[Wall]:
    """Walls of the Schurian catalog members, cached on the catalog."""
    cached = getattr(catalog, "_walls", None)
    if cached is not None:
        return cached
    walls = [wall_for(m) for m in catalog if is_schurian(m)]
    catalog._walls = walls
    return walls


def crossing_time(base: Vector, normal: Sequence[int]) -> Fraction:
    """The unique t with (base + t*1) . normal = 0."""
    s = sum(normal)
    if s <= 0:
        raise ValueError("normal must be a nonzero effective dimension vector")
    return -_dot(base, normal) / s


def crossing_sequence(
    path: Union[GreenPath, Sequence], catalog: Catalog
) -> list[CrossingRecord]:
    """Ordered wall crossings of a generic green path.

    For each Schurian catalog module the unique candidate time is computed;
    the crossing is retained when the point actually lies on the wall. The
    retained crossings must then have pairwise distinct times and interior
    points, otherwise the base was not generic.

    Raises:
        GenericityError: with `.colliding` set to the offending module pair
            (equal times) or single module (boundary point).
    """
    if not isinstance(path, GreenPath):
        path = GreenPath(base=_as_vector(path))
    records = []
    for wall in catalog_walls(catalog):
        assert sum(wall.normal) > 0
        t = crossing_time(path.base, wall.normal)
        pt = path.point(t)
        if not in_D(wall, pt):
            continue
        interior = in_int_D(wall, pt)
        records.append(CrossingRecord(time=t, module=wall.module, point=pt, interior=interior))
    records.sort(key=lambda r: r.time)
    for a, b in zip(records, records[1:]):
        if a.time == b.time:
            raise GenericityError(
                f"crossing times collide at t={a.time} for "
                f"{a.module.label or a.module.dims} and {b.module.label or b.module.dims}",
                colliding=(a.module, b.module),
            )
    for r in records:
        if not r.interior:
            raise GenericityError(
                f"crossing of {r.module.label or r.module.dims} at t={r.time} "
                "is on the wall boundary",
                colliding=(r.module,),
            )
    return records


def crossings_to_json(records: Iterable[CrossingRecord]) -> list[dict]:
    out = []
    for r in records:
        out.append(
            {
                "t": str(r.time),
                "module": r.module.label or "",
                "dims": list(r.module.dims),
                "interior": r.interior,
            }
        )
    return out


# --------------------------------------------------------------------------
# exact rational feasibility (phase-1 simplex, Bland's rule)

def rational_feasible(
    n: int,
    eqs: Sequence[tuple[Sequence, Fraction]],
    ineqs: Sequence[tuple[Sequence, Fraction]],
) -> Optional[Vector]:
    """A rational x with a.x = b for all eqs and a.x <= b for all ineqs, or None.

    Works over exact Fractions: x is split into u - v with u, v >= 0, slacks
    turn inequalities into equations, and a phase-1 simplex with artificial
    variables and Bland's pivoting rule decides feasibility.
    """
    m = len(ineqs)
    width = 2 * n + m
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for a, b in list(eqs) + list(ineqs):
        if len(a) != n:
            raise ValueError("constraint arity mismatch")
    for a, b in eqs:
        row = [Fraction(c) for c in a] + [-Fraction(c) for c in a] + [Fraction(0)] * m
        rows.append(row)
        rhs.append(Fraction(b))
    for idx, (a, b) in enumerate(ineqs):
        row = [Fraction(c) for c in a] + [-Fraction(c) for c in a] + [Fraction(0)] * m
        row[2 * n + idx] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(b))
    ncons = len(rows)
    for i in range(ncons):
        if rhs[i] < 0:
            rows[i] = [-c for c in rows[i]]
            rhs[i] = -rhs[i]
    # artificial columns
    total = width + ncons
    tableau = []
    for i in range(ncons):
        row = rows[i] + [Fraction(0)] * ncons + [rhs[i]]
        row[width + i] = Fraction(1)
        tableau.append(row)
    basis = [width + i for i in range(ncons)]
    cost = [Fraction(0)] * width + [Fraction(1)] * ncons

    while True:
        # reduced costs r_j = c_j - sum_i c_basis[i] * T[i][j]
        entering = -1
        for j in range(total):
            if j in basis:
                continue
            r = cost[j]
            for i in range(ncons):
                if cost[basis[i]]:
                    r -= cost[basis[i]] * tableau[i][j]
            if r < 0:
                entering = j
                break
        if entering < 0:
            break
        leaving = -1
        best: Optional[Fraction] = None
        for i in range(ncons):
            coef = tableau[i][entering]
            if coef > 0:
                ratio = tableau[i][total] / coef
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leaving]
                ):
                    best = ratio
                    leaving = i
        if leaving < 0:
            # phase-1 objective is bounded below by zero, so this cannot occur
            raise RuntimeError("phase-1 simplex reported unboundedness")
        piv = tableau[leaving][entering]
        tableau[leaving] = [c / piv for c in tableau[leaving]]
        for i in range(ncons):
            if i == leaving:
                continue
            f = tableau[i][entering]
            if f:
                tableau[i] = [
                    c - f * d for c, d in zip(tableau[i], tableau[leaving])
                ]
        basis[leaving] = entering

    objective = sum(
        (cost[basis[i]] * tableau[i][total] for i in range(ncons)), Fraction(0)
    )
    if objective != 0:
        return None
    values = [Fraction(0)] * total
    for i in range(ncons):
        values[basis[i]] = tableau[i][total]
    x = tuple(values[j] - values[n + j] for j in range(n))
    for a, b in eqs:
        assert _dot(x, a) == b
    for a, b in ineqs:
        assert _dot(x, a) <= b
    return x


def d_full_rank(module: Union[Wall, Representation]) -> bool:
    """True iff int D(M) is nonempty, i.e. D(M) spans the hyperplane H(M).

    Decided exactly: the strict system x . d < 0 over proper nonzero
    submodule dimension vectors is homogeneous, so it is feasible iff the
    system with every strict bound replaced by <= -1 is.
    """
    wall = _as_wall(module)
    n = len(wall.normal)
    eqs = [(wall.normal, Fraction(0))]
    ineqs = []
    full = tuple(wall.normal)
    for d in sorted(wall.sub_dimvecs):
        if not any(d) or d == full:
            continue
        ineqs.append((d, Fraction(-1)))
    return rational_feasible(n, eqs, ineqs) is not None


def find_base_for_sequence(
    catalog: Catalog, dims_seq: Sequence[tuple[int, ...]]
) -> Optional[Vector]:
    """A base point whose green path crosses exactly the given walls in order.

    The crossing order, interior strictness and wall membership constraints
    are all homogeneous linear in the base, so strict inequalities are
    losslessly replaced by <= -1 and the question becomes exact rational
    feasibility. The returned base (if any) is re-verified by the caller via
    crossing_sequence; None means the sequence is not realizable this way.
    """
    walls = []
    for dims in dims_seq:
        module = catalog.unique_by_dims(dims)
        walls.append(wall_for(module))
    if not walls:
        return None
    n = len(walls[0].normal)
    ineqs: list[tuple[Sequence, Fraction]] = []
    s = [sum(w.normal) for w in walls]
    for idx, w in enumerate(walls):
        # interior at the crossing point: for proper nonzero d != dims,
        # s_i*(x.d) - (x.normal)*(1.d) <= -1
        full = tuple(w.normal)
        for d in sorted(w.sub_dimvecs):
            if not any(d) or d == full:
                continue
            coeff = [
                Fraction(s[idx] * d[c] - w.normal[c] * sum(d)) for c in range(n)
            ]
            ineqs.append((coeff, Fraction(-1)))
    for (i, a), (jdx, b) in zip(enumerate(walls), list(enumerate(walls))[1:]):
        # t_i < t_j  <=>  s_i*(x.n_j) - s_j*(x.n_i) <= -1
        coeff = [Fraction(s[i] * b.normal[c] - s[jdx] * a.normal[c]) for c in range(n)]
        ineqs.append((coeff, Fraction(-1)))
    return rational_feasible(n, [], ineqs)


def realize_sequence(
    catalog: Catalog,
    dims_seq: Sequence[tuple[int, ...]],
    rng: random.Random,
    attempts: int = 20,
) -> Optional[tuple[Vector, list[CrossingRecord]]]:
    """A generic base whose crossing sequence is exactly dims_seq, or None.

    The feasibility solve pins the required crossings; the result can still
    sit on the boundary of an unrelated wall, so failed genericity is
    repaired by tiny rational perturbations (small enough to keep every
    feasibility constraint strictly satisfied).
    """
    base = find_base_for_sequence(catalog, dims_seq)
    if base is None:
        return None
    candidate = base
    for step in range(attempts):
        try:
            records = crossing_sequence(GreenPath(candidate), catalog)
        except GenericityError:
            denom = 10**7 + step
            candidate = tuple(
                b + Fraction(rng.randint(-3, 3), denom) for b in base
            )
            continue
        if tuple(r.module.dims for r in records) != tuple(dims_seq):
            return None
        return candidate, records
    return None


def random_rational_base(rng: random.Random, n: int, scale: int = 400) -> Vector:
    return tuple(
        Fraction(rng.randint(-scale, scale), rng.randint(1, 7)) for _ in range(n)
    )


def random_generic_base(
    catalog: Catalog, rng: random.Random, retries: int = 50, scale: int = 400
) -> tuple[Vector, list[CrossingRecord]]:
    """Sample bases until one passes the genericity checks.

    Raises:
        GenericityError: if every retry collided (the last error is re-raised).
    """
    last: Optional[GenericityError] = None
    for _ in range(retries):
        base = random_rational_base(rng, catalog.algebra.quiver.n, scale=scale)
        try:
            return base, crossing_sequence(GreenPath(base), catalog)
        except GenericityError as e:
            last = e
    assert last is not None
    raise last


def compartment_signature(base: Sequence, catalog: Catalog) -> tuple:
    """Identity of the compartment containing base: the ordered walls already
    crossed at t < 0 (compartments are convex, so this is well defined)."""
    v = _as_vector(base)
    for wall in catalog_walls(catalog):
        if in_D(wall, v):
            raise GenericityError(
                f"base lies on the wall of {wall.module.label or wall.normal}",
                colliding=(wall.module,),
            )
    records = crossing_sequence(GreenPath(v), catalog)
    return tuple(r.module.dims for r in records if r.time < 0)


def compartment_cvectors(
    base: Sequence, catalog: Catalog, seed
) -> tuple[tuple[int, ...], ...]:
    """c-vectors of the compartment containing base.

    Replays the green mutations of the walls crossed before the base point on
    the initial exchange seed, then reads off the c-matrix columns. Verifies
    there are n distinct columns and that the walls bracketing the base along
    its line occur among the columns (up to the crossed sign).

    Args:
        base: rational point on no wall.
        catalog: complete module catalog of the algebra.
        seed: initial extended exchange matrix of the same quiver.

    Raises:
        GenericityError: if base lies on a wall or fails genericity.
    """
    from greenseq import exchange

    v = _as_vector(base)
    for wall in catalog_walls(catalog):
        if in_D(wall, v):
            raise GenericityError(
                f"base lies on the wall of {wall.module.label or wall.normal}",
                colliding=(wall.module,),
            )
    records = crossing_sequence(GreenPath(v), catalog)
    m = seed
    n = m.n
    for r in records:
        if r.time >= 0:
            break
        k = None
        for cand in range(n):
            if exchange.c_vector(m, cand) == r.module.dims and exchange.is_green(m, cand):
                k = cand
                break
        if k is None:
            raise AssertionError(
                f"no green mutation index matches crossed wall {r.module.dims}"
            )
        m = exchange.mutate(m, k)
    columns = tuple(exchange.c_vector(m, k) for k in range(n))
    assert len(set(columns)) == n
    before = [r for r in records if r.time < 0]
    after = [r for r in records if r.time > 0]
    if before:
        last = before[-1].module.dims
        assert tuple(-c for c in last) in columns, (
            f"wall {last} behind the base is not a negated c-vector"
        )
    if after:
        nxt = after[0].module.dims
        assert nxt in columns, f"wall {nxt} ahead of the base is not a c-vector"
    return columns


# --------------------------------------------------------------------------
# Harder-Narasimhan stratification along a path

@dataclass(frozen=True)
class Stratum:
    time: Fraction
    normal: tuple[int, ...]
    multiple: int

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.multiple * c for c in self.normal)


def _contains(
    outer: dict[int, tuple], inner: dict[int, tuple], p: int
) -> bool:
    for v, rows in inner.items():
        basis = outer[v]
        if not rows:
            continue
        if not basis:
            return False
        red, piv = linalg.rref(basis, p)
        for u in rows:
            if any(linalg.reduce_against(u, red, piv, p)):
                return False
    return True


def hn_stratification(
    x: Representation, crossings: Sequence[CrossingRecord]
) -> tuple[Stratum, ...]:
    """The unique filtration of X along the crossed walls.

    Searches all chains of arrow-stable subspace tuples whose successive
    quotient dimension vectors are positive integer multiples of crossed wall
    normals, with strictly increasing crossing times from the bottom of the
    filtration up. The resulting dimension-vector sequence must exist and be
    unique.

    Raises:
        FiltrationError: if no such chain exists, or two chains disagree.
        SearchBudgetExceeded: if X is too large for subspace enumeration.
    """
    p = x.algebra.p
    tuples = stable_subspace_tuples(x)
    walls = [(r.time, r.module.dims) for r in sorted(crossings, key=lambda r: r.time)]

    full_dims = x.dims
    zero = None
    full = None
    for idx, (dv, chosen) in enumerate(tuples):
        if not any(dv):
            zero = idx
        if dv == full_dims:
            full = idx
    assert zero is not None and full is not None

    def deltas_from(cur_idx: int, last_time) -> list[tuple[tuple, ...]]:
        cur_dims, cur = tuples[cur_idx]
        if cur_dims == full_dims:
            return [()]
        out = []
        for idx, (dv, chosen) in enumerate(tuples):
            if idx == cur_idx:
                continue
            delta = tuple(a - b for a, b in zip(dv, cur_dims))
            if any(c < 0 for c in delta) or not any(delta):
                continue
            for t, normal in walls:
                if last_time is not None and t <= last_time:
                    continue
                q, r = divmod(sum(delta), sum(normal))
                if r or q <= 0 or delta != tuple(q * c for c in normal):
                    continue
                if not _contains(chosen, cur, p):
                    continue
                for tail in deltas_from(idx, t):
                    out.append(((t, normal, q),) + tail)
        return out

    chains = deltas_from(zero, None)
    if not chains:
        raise FiltrationError(
            f"no stratification of dims {full_dims} by the crossed walls"
        )
    unique = {c for c in chains}
    if len(unique) != 1:
        raise FiltrationError(
            f"stratification of dims {full_dims} is not unique: {sorted(unique)}"
        )
    chain = chains[0]
    return tuple(Stratum(time=t, normal=normal, multiple=q) for t, normal, q in chain)

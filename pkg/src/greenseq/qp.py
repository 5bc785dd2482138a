"""Quivers with potential, Jacobian relations, and QP mutation.

Conventions used throughout the package:

* Paths and potential cycles are stored in traversal order: the tuple
  (a, b, c) means "traverse arrow a, then b, then c", so consecutive arrows
  satisfy tgt(a) = src(b). Algebraists writing composition right to left
  would spell the same path "cba".
* Potential terms are cyclic words; two terms equal up to rotation are the
  same term and get combined.
* Coefficients are exact `fractions.Fraction` values. Input files use
  coefficient 1, but mutation can rescale, so intermediate potentials may
  carry other nonzero rationals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from greenseq.errors import InvalidQuiverError, UnsupportedPotentialError

Path = tuple[str, ...]


@dataclass(frozen=True)
class Arrow:
    id: str
    src: int
    tgt: int


@dataclass(frozen=True)
class Quiver:
    """A finite quiver without loops or 2-cycles.

    The order of `vertices` fixes the coordinate order of every dimension
    vector and exchange-matrix row in the package.
    """

    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidQuiverError("duplicate vertex labels")
        ids = [a.id for a in self.arrows]
        if len(set(ids)) != len(ids):
            raise InvalidQuiverError("duplicate arrow ids")
        vset = set(self.vertices)
        pairs = set()
        for a in self.arrows:
            if a.src not in vset or a.tgt not in vset:
                raise InvalidQuiverError(f"arrow {a.id} touches unknown vertex")
            if a.src == a.tgt:
                raise InvalidQuiverError(f"loop at vertex {a.src} (arrow {a.id})")
            pairs.add((a.src, a.tgt))
        for (s, t) in pairs:
            if (t, s) in pairs:
                raise InvalidQuiverError(f"2-cycle between vertices {s} and {t}")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def pos(self, v: int) -> int:
        """Coordinate index of a vertex label."""
        return self.vertices.index(v)

    def arrow(self, arrow_id: str) -> Arrow:
        for a in self.arrows:
            if a.id == arrow_id:
                return a
        raise KeyError(f"no arrow with id {arrow_id!r}")

    def arrows_out(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.src == v]

    def arrows_in(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.tgt == v]


@dataclass(frozen=True)
class PotentialTerm:
    coeff: Fraction
    cycle: Path  # arrow ids in traversal order; closed and composable


def _canonical_rotation(cycle: Path) -> Path:
    rots = [cycle[i:] + cycle[:i] for i in range(len(cycle))]
    return min(rots)


def combine_terms(terms: Iterable[PotentialTerm]) -> tuple[PotentialTerm, ...]:
    """Merge terms equal up to rotation, dropping zero coefficients."""
    acc: dict[Path, Fraction] = {}
    for t in terms:
        key = _canonical_rotation(t.cycle)
        acc[key] = acc.get(key, Fraction(0)) + Fraction(t.coeff)
    out = [
        PotentialTerm(coeff=c, cycle=cyc)
        for cyc, c in sorted(acc.items())
        if c != 0
    ]
    return tuple(out)


@dataclass(frozen=True)
class QuiverWithPotential:
    quiver: Quiver
    potential: tuple[PotentialTerm, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for t in self.potential:
            self._check_cycle(t)
        object.__setattr__(self, "potential", combine_terms(self.potential))

    def _check_cycle(self, term: PotentialTerm) -> None:
        cyc = term.cycle
        if not cyc:
            raise InvalidQuiverError("empty potential cycle")
        arrows = [self.quiver.arrow(aid) for aid in cyc]
        for a, b in zip(arrows, arrows[1:] + arrows[:1]):
            if a.tgt != b.src:
                raise InvalidQuiverError(
                    f"potential cycle {cyc} is not a composable closed path"
                )

    @property
    def cycle_count(self) -> int:
        """Number of potential cycles (the k of the length bounds)."""
        return len(self.potential)


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, stored in traversal order.

    `arrow` records which cyclic derivative produced the relation (empty for
    relations supplied directly).
    """

    terms: tuple[tuple[Fraction, Path], ...]
    arrow: str = ""

    def src_tgt(self, quiver: Quiver) -> tuple[int, int]:
        coeff, path = self.terms[0]
        return quiver.arrow(path[0]).src, quiver.arrow(path[-1]).tgt


@dataclass(frozen=True)
class RelationSet:
    relations: tuple[Relation, ...] = ()

    def __iter__(self):
        return iter(self.relations)

    def __len__(self):
        return len(self.relations)


def _combine_paths(parts: Iterable[tuple[Fraction, Path]]) -> tuple[tuple[Fraction, Path], ...]:
    acc: dict[Path, Fraction] = {}
    for coeff, path in parts:
        acc[path] = acc.get(path, Fraction(0)) + coeff
    return tuple((c, p) for p, c in sorted(acc.items()) if c != 0)


def jacobian_relations(qp: QuiverWithPotential) -> RelationSet:
    """Cyclic-derivative relations of the potential, one per arrow in it.

    For an occurrence of arrow `a` in a cycle, the derivative contributes the
    remainder of the cycle read in traversal order from tgt(a) around to
    src(a). For the oriented triangle with potential the single 3-cycle this
    yields the three paths of length two, i.e. rad^2 = 0.
    """
    per_arrow: dict[str, list[tuple[Fraction, Path]]] = {}
    for term in qp.potential:
        cyc = term.cycle
        m = len(cyc)
        for idx, aid in enumerate(cyc):
            remainder = cyc[idx + 1:] + cyc[:idx]
            if not remainder:
                raise InvalidQuiverError("cannot derive a length-1 cycle (loop)")
            per_arrow.setdefault(aid, []).append((term.coeff, remainder))
    relations = []
    for aid in sorted(per_arrow):
        combined = _combine_paths(per_arrow[aid])
        relations.append(Relation(terms=combined, arrow=aid))
    return RelationSet(tuple(relations))


def b_matrix(quiver: Quiver) -> tuple[tuple[int, ...], ...]:
    n = quiver.n
    b = [[0] * n for _ in range(n)]
    for a in quiver.arrows:
        b[quiver.pos(a.src)][quiver.pos(a.tgt)] += 1
        b[quiver.pos(a.tgt)][quiver.pos(a.src)] -= 1
    return tuple(tuple(row) for row in b)


def _fresh_id(base: str, taken: set[str]) -> str:
    cand = base
    while cand in taken:
        cand += "'"
    taken.add(cand)
    return cand


def _rotate_to_start(cycle: Path, idx: int) -> Path:
    return cycle[idx:] + cycle[:idx]


@dataclass(frozen=True)
class MutationData:
    """Everything the mutation at k produced, for consumers beyond the QP.

    The reflection functors need the pair partition and the correction paths,
    not just the mutated quiver, so `mutate_qp_data` returns this record and
    `mutate_qp` forwards the `target` field.

    f_paths are stored after the rescaling that makes every triangle
    coefficient 1; g_paths store the decomposition W ∋ -G_{ij} β_j α_i, i.e.
    a through-k term with coefficient c contributes -c times its return path.
    """

    source: QuiverWithPotential
    target: QuiverWithPotential
    k: int
    i_set: tuple[int, ...]
    j_set: tuple[int, ...]
    p_pairs: tuple[tuple[int, int], ...]
    p_prime: tuple[tuple[int, int], ...]
    alpha: tuple[tuple[int, str], ...]  # i -> id of a_i : i -> k
    beta: tuple[tuple[int, str], ...]   # j -> id of b_j : k -> j
    gamma: tuple[tuple[tuple[int, int], str], ...]  # (i,j) in P -> id of g: j -> i
    alpha_star: tuple[tuple[int, str], ...]
    beta_star: tuple[tuple[int, str], ...]
    gamma_star: tuple[tuple[tuple[int, int], str], ...]
    f_paths: tuple[tuple[tuple[int, int], tuple[tuple[Fraction, Path], ...]], ...]
    g_paths: tuple[tuple[tuple[int, int], tuple[tuple[Fraction, Path], ...]], ...]
    triangle_coeff: tuple[tuple[tuple[int, int], Fraction], ...]

    def alpha_id(self, i: int) -> str:
        return dict(self.alpha)[i]

    def beta_id(self, j: int) -> str:
        return dict(self.beta)[j]

    def gamma_id(self, pair: tuple[int, int]) -> str:
        return dict(self.gamma)[pair]

    def alpha_star_id(self, i: int) -> str:
        return dict(self.alpha_star)[i]

    def beta_star_id(self, j: int) -> str:
        return dict(self.beta_star)[j]

    def gamma_star_id(self, pair: tuple[int, int]) -> str:
        return dict(self.gamma_star)[pair]

    def f_terms(self, pair: tuple[int, int]) -> tuple[tuple[Fraction, Path], ...]:
        return dict(self.f_paths).get(pair, ())

    def g_terms(self, pair: tuple[int, int]) -> tuple[tuple[Fraction, Path], ...]:
        return dict(self.g_paths).get(pair, ())

    def triangle(self, pair: tuple[int, int]) -> Fraction:
        return dict(self.triangle_coeff)[pair]


def mutate_qp(qp: QuiverWithPotential, k: int) -> QuiverWithPotential:
    """Mutate a quiver with potential at vertex `k` (a vertex label).

    The potential is decomposed against the arrows at k: for incoming arrows
    a_i (i -> k), outgoing arrows b_j (k -> j), and pairs (i, j), the pairs
    with an arrow g: j -> i form the set P and must appear in a triangle term
    g b a; the remaining pairs form P'. Terms passing through k with a longer
    return path contribute correction paths G, terms containing some g but
    avoiding k contribute correction paths F, and terms touching neither k
    nor any g are carried over verbatim. After rescaling each g so its
    triangle coefficient is 1, the mutated potential is

        sum_P  a* b* F  -  sum_P' a* b* g*  -  sum_P' G g*  +  (carried terms)

    with reversed arrows a_i*: k -> i, b_j*: j -> k and one composite arrow
    g*: i -> j per pair in P'. The cancelling 2-cycle terms never appear in
    this reduced form.

    Args:
        qp: quiver with potential to mutate (value semantics).
        k: vertex label.

    Returns:
        The mutated QuiverWithPotential.

    Raises:
        UnsupportedPotentialError: if the potential does not decompose as
            above (the error message names the offending term); no silently
            wrong output is ever produced.
        KeyError / InvalidQuiverError: for an unknown vertex.
    """
    return mutate_qp_data(qp, k).target


def mutate_qp_data(qp: QuiverWithPotential, k: int) -> MutationData:
    """Like mutate_qp, but returns the full mutation bookkeeping."""
    quiver = qp.quiver
    if k not in quiver.vertices:
        raise InvalidQuiverError(f"unknown vertex {k}")

    alphas = quiver.arrows_in(k)   # a_i : i -> k
    betas = quiver.arrows_out(k)   # b_j : k -> j
    if len({a.src for a in alphas}) != len(alphas):
        raise UnsupportedPotentialError(f"parallel arrows into vertex {k}")
    if len({b.tgt for b in betas}) != len(betas):
        raise UnsupportedPotentialError(f"parallel arrows out of vertex {k}")
    alpha_by_src = {a.src: a for a in alphas}
    beta_by_tgt = {b.tgt: b for b in betas}
    i_set = sorted(alpha_by_src)
    j_set = sorted(beta_by_tgt)

    # gamma candidates: arrows j -> i with i in I, j in J
    gamma_by_pair: dict[tuple[int, int], Arrow] = {}
    for a in quiver.arrows:
        if a.src in beta_by_tgt and a.tgt in alpha_by_src:
            pair = (a.tgt, a.src)  # (i, j)
            if pair in gamma_by_pair:
                raise UnsupportedPotentialError(
                    f"parallel arrows {gamma_by_pair[pair].id}, {a.id} for pair {pair}"
                )
            gamma_by_pair[pair] = a
    p_pairs = sorted(gamma_by_pair)
    p_prime = [
        (i, j) for i in i_set for j in j_set if (i, j) not in gamma_by_pair
    ]
    gamma_ids = {a.id: pair for pair, a in gamma_by_pair.items()}

    # --- decompose the potential -------------------------------------------
    triangle_coeff: dict[tuple[int, int], Fraction] = {}
    f_paths: dict[tuple[int, int], list[tuple[Fraction, Path]]] = {}
    g_paths: dict[tuple[int, int], list[tuple[Fraction, Path]]] = {}
    carried: list[PotentialTerm] = []

    for term in qp.potential:
        cyc = term.cycle
        arrows = [quiver.arrow(aid) for aid in cyc]
        k_visits = sum(1 for a in arrows if a.tgt == k)
        gammas_here = [idx for idx, aid in enumerate(cyc) if aid in gamma_ids]
        if k_visits >= 2:
            raise UnsupportedPotentialError(
                f"term {cyc} passes through vertex {k} more than once"
            )
        if k_visits == 1:
            idx = next(i for i, a in enumerate(arrows) if a.tgt == k)
            rot = _rotate_to_start(cyc, idx)  # starts with a_i, then b_j
            if len(rot) < 3:
                raise UnsupportedPotentialError(f"term {cyc} too short at {k}")
            a_arrow = quiver.arrow(rot[0])
            b_arrow = quiver.arrow(rot[1])
            if b_arrow.src != k:
                raise UnsupportedPotentialError(
                    f"term {cyc} does not leave vertex {k} immediately"
                )
            i, j = a_arrow.src, b_arrow.tgt
            ret = rot[2:]  # path j -> i avoiding k
            if len(ret) == 1 and ret[0] in gamma_ids:
                pair = (i, j)
                triangle_coeff[pair] = triangle_coeff.get(pair, Fraction(0)) + term.coeff
            elif (i, j) in gamma_by_pair:
                raise UnsupportedPotentialError(
                    f"term {cyc}: non-triangle return path for pair {(i, j)} in P"
                )
            elif any(aid in gamma_ids for aid in ret):
                raise UnsupportedPotentialError(
                    f"term {cyc} couples vertex {k} with a triangle arrow"
                )
            else:
                # W contains -G b a, so G picks up the negated coefficient.
                g_paths.setdefault((i, j), []).append((-term.coeff, ret))
        else:
            if not gammas_here:
                carried.append(term)
            elif len(gammas_here) == 1:
                idx = gammas_here[0]
                pair = gamma_ids[cyc[idx]]
                rot = _rotate_to_start(cyc, idx)
                f_paths.setdefault(pair, []).append((term.coeff, rot[1:]))
            else:
                raise UnsupportedPotentialError(
                    f"term {cyc} contains more than one triangle arrow"
                )

    for pair in p_pairs:
        coeff = triangle_coeff.get(pair, Fraction(0))
        if coeff == 0:
            raise UnsupportedPotentialError(
                f"potential degenerate at {k}: no triangle term for pair {pair}"
            )

    # Rescale each gamma so its triangle coefficient is 1. A term containing
    # gamma once picks up the factor 1/coeff.
    for pair in p_pairs:
        lam = 1 / triangle_coeff[pair]
        if pair in f_paths:
            f_paths[pair] = [(c * lam, p) for c, p in f_paths[pair]]

    # --- build the mutated quiver ------------------------------------------
    removed = {a.id for a in alphas} | {b.id for b in betas}
    removed |= {gamma_by_pair[p].id for p in p_pairs}
    taken = {a.id for a in quiver.arrows if a.id not in removed}
    new_arrows = [a for a in quiver.arrows if a.id not in removed]

    alpha_star: dict[int, str] = {}
    beta_star: dict[int, str] = {}
    gamma_star: dict[tuple[int, int], str] = {}
    for i in i_set:
        aid = _fresh_id(alpha_by_src[i].id + "*", taken)
        alpha_star[i] = aid
        new_arrows.append(Arrow(id=aid, src=k, tgt=i))
    for j in j_set:
        bid = _fresh_id(beta_by_tgt[j].id + "*", taken)
        beta_star[j] = bid
        new_arrows.append(Arrow(id=bid, src=j, tgt=k))
    for (i, j) in p_prime:
        gid = _fresh_id(f"[{beta_by_tgt[j].id}{alpha_by_src[i].id}]", taken)
        gamma_star[(i, j)] = gid
        new_arrows.append(Arrow(id=gid, src=i, tgt=j))

    new_quiver = Quiver(vertices=quiver.vertices, arrows=tuple(new_arrows))

    # --- assemble the mutated potential -------------------------------------
    new_terms: list[PotentialTerm] = list(carried)
    for pair in p_pairs:
        i, j = pair
        for coeff, path in f_paths.get(pair, []):
            cyc = path + (beta_star[j], alpha_star[i])
            new_terms.append(PotentialTerm(coeff=coeff, cycle=cyc))
    for pair in p_prime:
        i, j = pair
        gid = gamma_star[pair]
        new_terms.append(
            PotentialTerm(coeff=Fraction(-1), cycle=(gid, beta_star[j], alpha_star[i]))
        )
        for coeff, path in g_paths.get(pair, []):
            new_terms.append(PotentialTerm(coeff=-coeff, cycle=(gid,) + path))
    leftover_g = set(g_paths) - set(p_prime)
    if leftover_g:
        raise UnsupportedPotentialError(
            f"return-path terms for pairs {sorted(leftover_g)} not in P'"
        )

    result = QuiverWithPotential(quiver=new_quiver, potential=tuple(new_terms))

    # Consistency forced by the mutation rules: the B-matrix must agree with
    # exchange-matrix mutation at the same vertex.
    from greenseq import exchange

    pos = quiver.pos(k)
    expected = exchange.mutate(exchange.initial_seed(quiver), pos).b
    if b_matrix(new_quiver) != expected:
        raise AssertionError(
            f"mutated quiver B-matrix disagrees with matrix mutation at {k}"
        )
    return MutationData(
        source=qp,
        target=result,
        k=k,
        i_set=tuple(i_set),
        j_set=tuple(j_set),
        p_pairs=tuple(p_pairs),
        p_prime=tuple(p_prime),
        alpha=tuple((i, alpha_by_src[i].id) for i in i_set),
        beta=tuple((j, beta_by_tgt[j].id) for j in j_set),
        gamma=tuple((pair, gamma_by_pair[pair].id) for pair in p_pairs),
        alpha_star=tuple(sorted(alpha_star.items())),
        beta_star=tuple(sorted(beta_star.items())),
        gamma_star=tuple(sorted(gamma_star.items())),
        f_paths=tuple((pair, tuple(f_paths[pair])) for pair in sorted(f_paths)),
        g_paths=tuple((pair, tuple(g_paths[pair])) for pair in sorted(g_paths)),
        triangle_coeff=tuple(sorted(triangle_coeff.items())),
    )

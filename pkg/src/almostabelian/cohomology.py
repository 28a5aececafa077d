"""Betti and Hodge numbers, twice over.

Closed forms come from the representation calculus: write the relevant
dual spaces as formal sl2-modules and count irreducible summands of
their exterior and tensor powers.  The brute-force oracles build the
Chevalley-Eilenberg complex of the algebra (for Betti numbers) and the
Dolbeault complex spanned by the structure-equation generators and
their conjugates (for Hodge numbers) and take exact ranks.

Sign convention, fixed once: d on a dual generator g^k is
-sum_{i<j} c^k_{ij} g^i ^ g^j where [g_i, g_j] = sum c^k_{ij} g_k, and
d extends to monomials as a degree-one derivation with the Koszul sign
for the fixed ascending monomial order.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .exactla import RationalMatrix, jordan_block, jordan_type, power_ranks, sparse_rank
from .model import (
    StableSeriesError,
    build_algebra,
    nijenhuis_vanishes,
    stable_series,
    structure_equations,
)
from .partitions import Partition
from .sl2 import Sl2Module, delta, tensor, wedge


class DifferentialError(RuntimeError):
    """d^2 or dbar^2 failed to vanish (construction bug)."""


@dataclass(frozen=True)
class ModuleTriple:
    """The three dual spaces as formal sl2-modules."""

    a_star: Sl2Module  # dual of the abelian ideal, dimension 2n+1
    b01: Sl2Module  # antiholomorphic dual of the J-invariant part, dimension n
    g10: Sl2Module  # holomorphic dual of the algebra, dimension n+1


def module_triple(model):
    """Module structures determined by (q, j).

    a_star follows the Jordan type of the adjoint matrix, b01 follows q,
    and g10 is q with the overlap block promoted (j > 1) or an extra
    trivial summand (j = 1).
    """
    n = model.n
    a_star = Sl2Module(model.m.multiplicities())
    b01 = Sl2Module(model.q.multiplicities())
    g = dict(model.q.multiplicities())
    if model.j > 1:
        g[model.j] = g.get(model.j, 0) + 1
        g[model.j - 1] -= 1
    else:
        g[1] = g.get(1, 0) + 1
    g10 = Sl2Module(g)
    assert a_star.dim() == 2 * n + 1 and b01.dim() == n and g10.dim() == n + 1
    return ModuleTriple(a_star=a_star, b01=b01, g10=g10)


def betti_closed(model):
    """Betti vector b_0..b_{2n+2} from the representation calculus."""
    a_star = module_triple(model).a_star
    top = 2 * model.n + 2
    deltas = [delta(wedge(a_star, k)) for k in range(top + 1)]
    return tuple(deltas[k] + (deltas[k - 1] if k else 0) for k in range(top + 1))


def hodge_closed(model):
    """Hodge grid h^{p,q}, 0 <= p, q <= n+1, from the representation calculus."""
    triple = module_triple(model)
    n = model.n
    wb = [wedge(triple.b01, q) for q in range(n + 2)]
    grid = []
    for p in range(n + 2):
        wg = wedge(triple.g10, p)
        row = []
        for q in range(n + 2):
            h = delta(tensor(wb[q], wg))
            if q:
                h += delta(tensor(wb[q - 1], wg))
            row.append(h)
        grid.append(tuple(row))
    return tuple(grid)


# -- monomial differentials ---------------------------------------------------


def _insert_factor(mono, x):
    """Insert a degree-one factor into an ascending monomial; (tuple, sign) or None."""
    pos = 0
    while pos < len(mono) and mono[pos] < x:
        pos += 1
    if pos < len(mono) and mono[pos] == x:
        return None
    return mono[:pos] + (x,) + mono[pos:], -1 if pos % 2 else 1


def _sorted_tuple_sign(seq):
    """Ascending reordering with permutation sign; None on repeats."""
    out = ()
    sign = 1
    for x in seq:
        step = _insert_factor(out, x)
        if step is None:
            return None
        out, s = step
        sign *= s
    return out, sign


def _d_monomial(mono, d1):
    """Image of a monomial under the derivation extension of d1.

    d1 maps a generator index to ((coef, (x, y)), ...); each slot is
    replaced by the corresponding two-form, which commutes with the
    remaining degree-one factors, so only the Koszul sign (-1)^slot and
    the resorting signs enter.
    """
    out = {}
    for t, g in enumerate(mono):
        terms = d1[g]
        if not terms:
            continue
        rest = mono[:t] + mono[t + 1 :]
        slot_sign = -1 if t % 2 else 1
        for coef, (x, y) in terms:
            step = _insert_factor(rest, y)
            if step is None:
                continue
            with_y, s1 = step
            step = _insert_factor(with_y, x)
            if step is None:
                continue
            target, s2 = step
            out[target] = out.get(target, 0) + coef * slot_sign * s1 * s2
    return {k: v for k, v in out.items() if v}


def _rank_of_map(columns, index_of_target):
    """Exact rank of a linear map given by per-column target dicts."""
    row_entries = {}
    for cix, col in enumerate(columns):
        for target, val in col.items():
            row_entries.setdefault(index_of_target[target], {})[cix] = val
    return sparse_rank(list(row_entries.values()))


def _check_d2_on_generators(d1):
    """d^2 = 0 on every generator (enough, by the graded Leibniz rule)."""
    for terms in d1.values():
        acc = {}
        for coef, (x, y) in terms:
            # d(x ^ y) = dx ^ y - x ^ dy
            for c2, pair in d1[x]:
                key = _sorted_tuple_sign(pair + (y,))
                if key:
                    acc[key[0]] = acc.get(key[0], 0) + coef * c2 * key[1]
            for c2, pair in d1[y]:
                key = _sorted_tuple_sign((x,) + pair)
                if key:
                    acc[key[0]] = acc.get(key[0], 0) - coef * c2 * key[1]
        if any(acc.values()):
            return False
    return True


# -- Chevalley-Eilenberg oracle -----------------------------------------------


def _ce_generator_differentials(alg):
    """d on each dual generator of the CE complex, from the bracket tensor."""
    d1 = {k: () for k in range(alg.dim)}
    for (x, y), targets in alg.bracket_tensor().items():
        for b, c in targets.items():
            d1[b] = d1[b] + ((-c, (x, y)),)
    return d1


def betti_oracle(alg):
    """Betti vector from exact ranks of the CE differentials.

    Raises DifferentialError if d^2 fails on a generator.
    """
    d1 = _ce_generator_differentials(alg)
    if not _check_d2_on_generators(d1):
        raise DifferentialError("d^2 != 0 on a generator")
    dim = alg.dim
    monos = [list(combinations(range(dim), k)) for k in range(dim + 1)]
    ranks = []
    for k in range(dim):
        index_of = {m: i for i, m in enumerate(monos[k + 1])}
        ranks.append(_rank_of_map([_d_monomial(m, d1) for m in monos[k]], index_of))
    ranks.append(0)  # top degree maps to zero
    betti = []
    for k in range(dim + 1):
        below = ranks[k - 1] if k else 0
        betti.append(comb(dim, k) - ranks[k] - below)
    return tuple(betti)


def d_squared_vanishes(alg, max_degree=None):
    """Check d^2 = 0 on the full monomial basis of the CE complex."""
    d1 = _ce_generator_differentials(alg)
    if not _check_d2_on_generators(d1):
        return False
    dim = alg.dim
    top = dim if max_degree is None else min(max_degree, dim)
    for k in range(1, top + 1):
        for mono in combinations(range(dim), k):
            acc = {}
            for target, val in _d_monomial(mono, d1).items():
                for t2, v2 in _d_monomial(target, d1).items():
                    acc[t2] = acc.get(t2, 0) + val * v2
            if any(acc.values()):
                return False
    return True


# -- Dolbeault oracle ----------------------------------------------------------


def _dolbeault_symbols(eqs):
    """Symbol table for the bigraded complex.

    Symbols are integers: s < g is generator s in the order of
    eqs.generators, s >= g its conjugate.  Returns (symbol count, d1,
    g); conjugated rules pick up reordering signs only, since all
    stated coefficients are integers (hence real).
    """
    gens = eqs.generators
    g = len(gens)
    index = {name: i for i, name in enumerate(gens)}

    def symbol(factor, conjugate=False):
        name, bar = factor
        if conjugate:
            bar = not bar
        return index[name] + (g if bar else 0)

    d1 = {}
    for name, terms in eqs.rules:
        plain = []
        conj = []
        for coef, (f1, f2) in terms:
            key = _sorted_tuple_sign((symbol(f1), symbol(f2)))
            if key:
                plain.append((coef * key[1], key[0]))
            key = _sorted_tuple_sign((symbol(f1, True), symbol(f2, True)))
            if key:
                conj.append((coef * key[1], key[0]))
        d1[index[name]] = tuple(plain)
        d1[index[name] + g] = tuple(conj)
    return 2 * g, d1, g


def _signature(mono, g):
    p = sum(1 for s in mono if s < g)
    return p, len(mono) - p


def _dbar_of(mono, d1, g):
    """The antiholomorphic-degree-raising component of d."""
    p, q = _signature(mono, g)
    return {
        t: v for t, v in _d_monomial(mono, d1).items() if _signature(t, g) == (p, q + 1)
    }


def hodge_oracle(model, block_sizes=None):
    """Hodge grid from exact ranks of the Dolbeault differentials.

    The complex is spanned by wedge monomials in the structure-equation
    generators and their conjugates; dbar is the component of d raising
    the antiholomorphic degree.  All matrices are integer matrices in
    this basis.  Raises DifferentialError if dbar^2 fails on a
    generator or d fails to split into bidegree (1,0) + (0,1) parts.
    `block_sizes` reorders the chains (the grid must not change).
    """
    eqs = structure_equations(model, block_sizes=block_sizes)
    nsym, d1, g = _dolbeault_symbols(eqs)
    for s in range(nsym):
        acc = {}
        for target, val in _dbar_of((s,), d1, g).items():
            for t2, v2 in _dbar_of(target, d1, g).items():
                acc[t2] = acc.get(t2, 0) + val * v2
        if any(acc.values()):
            raise DifferentialError("dbar^2 != 0 on a generator")
    monos = {}
    for p in range(g + 1):
        for q in range(g + 1):
            monos[(p, q)] = [
                u + b
                for u in combinations(range(g), p)
                for b in combinations(range(g, nsym), q)
            ]

    def dbar_columns(p, q):
        cols = []
        for mono in monos[(p, q)]:
            img = {}
            for target, val in _d_monomial(mono, d1).items():
                sig = _signature(target, g)
                if sig == (p, q + 1):
                    img[target] = val
                elif sig != (p + 1, q):
                    raise DifferentialError("d does not split into (1,0)+(0,1) parts")
            cols.append(img)
        return cols

    ranks = {}
    for p in range(g + 1):
        for q in range(g + 1):
            if q == g:
                ranks[(p, q)] = 0
                continue
            index_of = {m: i for i, m in enumerate(monos[(p, q + 1)])}
            ranks[(p, q)] = _rank_of_map(dbar_columns(p, q), index_of)
    grid = []
    for p in range(g + 1):
        row = []
        for q in range(g + 1):
            h = comb(g, p) * comb(g, q) - ranks[(p, q)]
            if q:
                h -= ranks[(p, q - 1)]
            row.append(h)
        grid.append(tuple(row))
    return tuple(grid)


def dbar_squared_vanishes(model):
    """Check dbar^2 = 0 on the full monomial basis of the Dolbeault complex."""
    eqs = structure_equations(model)
    nsym, d1, g = _dolbeault_symbols(eqs)
    for k in range(1, nsym + 1):
        for mono in combinations(range(nsym), k):
            acc = {}
            for target, val in _dbar_of(mono, d1, g).items():
                for t2, v2 in _dbar_of(target, d1, g).items():
                    acc[t2] = acc.get(t2, 0) + val * v2
            if any(acc.values()):
                return False
    return True


def d_splits_by_bidegree(model):
    """Sanity check: d of every generator lands in (2,0)+(1,1) or (1,1)+(0,2)."""
    eqs = structure_equations(model)
    nsym, d1, g = _dolbeault_symbols(eqs)
    for s in range(nsym):
        p, q = _signature((s,), g)
        for _, pair in d1[s]:
            if _signature(pair, g) not in ((p + 1, q), (p, q + 1)):
                return False
    return True


# -- auxiliary routes ----------------------------------------------------------


def jordan_block_module_cohomology(i):
    """(dim kernel, dim cokernel) of the two-term complex given by the
    nilpotent Jordan block of size i; both equal 1."""
    if i < 1:
        raise ValueError("block size must be positive")
    r = jordan_block(i).rank()
    return (i - r, i - r)


def betti_via_ideal_action(alg):
    """Betti numbers through the action of e_0 on the exterior powers of
    the dual ideal: b_k = dim ker L_k + dim coker L_{k-1}.

    Independent of both the closed form and the full CE complex; L is
    the degree-zero derivation extension of the coadjoint action on the
    dual ideal.
    """
    size = alg.dim - 1
    action = {}
    for r in range(size):
        for c in range(size):
            a = alg.A[r][c]
            if a:
                # coadjoint action sends dual generator r to -A[r][c] times c
                action.setdefault(r, []).append((c, -a))

    def l_of(mono):
        out = {}
        for t, g in enumerate(mono):
            rest = mono[:t] + mono[t + 1 :]
            for target, coef in action.get(g, ()):
                step = _insert_factor(rest, target)
                if step is None:
                    continue
                tgt, s = step
                out[tgt] = out.get(tgt, 0) + coef * s
        return {k: v for k, v in out.items() if v}

    betti = []
    prev_coker = 0
    for k in range(size + 2):
        if k <= size:
            monos = list(combinations(range(size), k))
            index_of = {m: i for i, m in enumerate(monos)}
            rank = _rank_of_map([l_of(m) for m in monos], index_of)
            kernel = coker = comb(size, k) - rank
        else:
            kernel = coker = 0
        betti.append(kernel + prev_coker)
        prev_coker = coker
    return tuple(betti)


# -- tables and verification ----------------------------------------------------


@dataclass(frozen=True)
class CohomologyTable:
    """Betti vector and Hodge grid with their provenance."""

    betti: tuple
    hodge: tuple
    source: str  # "closed-form" | "oracle"


def closed_table(model):
    return CohomologyTable(
        betti=betti_closed(model), hodge=hodge_closed(model), source="closed-form"
    )


def oracle_table(model):
    return CohomologyTable(
        betti=betti_oracle(build_algebra(model)),
        hodge=hodge_oracle(model),
        source="oracle",
    )


def frolicher_holds(betti, hodge):
    """b_k = sum over p+q=k of h^{p,q}, for every k."""
    size = len(hodge)
    for k in range(len(betti)):
        total = sum(hodge[p][k - p] for p in range(size) if 0 <= k - p < size)
        if betti[k] != total:
            return False
    return True


def verify_frolicher(model):
    """Frölicher degeneration identity, on the closed-form tables."""
    return frolicher_holds(betti_closed(model), hodge_closed(model))


@dataclass(frozen=True)
class SymmetryReport:
    """Outcome of the conjugation/duality checks for one table."""

    epsilon: int
    hodge_symmetric: bool
    odd_betti_even: bool
    b1_odd: bool
    poincare: bool
    serre: bool

    @property
    def ok(self):
        """The dichotomy: symmetric grid and even odd-Betti numbers when
        epsilon = 0, odd first Betti number when epsilon = 1."""
        if self.epsilon == 0:
            return self.hodge_symmetric and self.odd_betti_even
        return self.b1_odd


def verify_symmetry(model, table=None):
    """Symmetry dichotomy plus the empirical duality checks.

    Poincare duality (b_k = b_{top-k}) and Serre duality
    (h^{p,q} = h^{n+1-p,n+1-q}) are reported as checked facts, never
    assumed by any computation.
    """
    if table is None:
        table = closed_table(model)
    betti, hodge = table.betti, table.hodge
    size = len(hodge)
    symmetric = all(hodge[p][q] == hodge[q][p] for p in range(size) for q in range(size))
    odd_even = all(betti[k] % 2 == 0 for k in range(1, len(betti), 2))
    top = len(betti) - 1
    poincare = all(betti[k] == betti[top - k] for k in range(len(betti)))
    serre = all(
        hodge[p][q] == hodge[size - 1 - p][size - 1 - q]
        for p in range(size)
        for q in range(size)
    )
    return SymmetryReport(
        epsilon=model.epsilon,
        hodge_symmetric=symmetric,
        odd_betti_even=odd_even,
        b1_odd=betti[1] % 2 == 1,
        poincare=poincare,
        serre=serre,
    )


def structural_checks(model):
    """The structural validity checks for one model, as name -> bool."""
    alg = build_algebra(model)
    j = alg.j_matrix()
    minus_id = RationalMatrix(
        [[-1 if a == b else 0 for b in range(alg.dim)] for a in range(alg.dim)]
    )
    checks = {
        "j_squared": j.mul(j) == minus_id,
        "nijenhuis": nijenhuis_vanishes(alg),
        "d_squared": d_squared_vanishes(alg),
        "dbar_squared": dbar_squared_vanishes(model),
        "d_splits": d_splits_by_bidegree(model),
        "jordan_recovery": Partition(jordan_type(alg.a_matrix())) == model.m,
        "step_formula": model.step == len(power_ranks(alg.a_matrix())) + 1,
    }
    try:
        stable_series(alg, model)
        checks["stable_series"] = True
    except StableSeriesError:
        checks["stable_series"] = False
    return checks

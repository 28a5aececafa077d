"""Canonical models of nilpotent almost abelian Lie algebras with complex structure.

Conventions, fixed once for the whole package:

* the algebra has basis e_0, ..., e_{2n+1} and the codimension one
  abelian ideal is spanned by e_1, ..., e_{2n+1};
* the only nonzero brackets are [e_0, e_k] for k >= 1, encoded by the
  nilpotent matrix `A` acting on the ideal coordinates;
* `A` has a zero first row, a link entry A[1][0] = epsilon, and two
  identical copies of a lower triangular Jordan-form matrix `B` whose
  block sizes are the parts of the partition q (when the overlap index
  j is > 1, the first block of `B` has size j-1 and epsilon = 1, so the
  link extends that chain by e_1 to a block of size j);
* the complex structure J sends e_0 -> e_1 and e_{1+k} -> e_{1+n+k}
  for k = 1..n, pairing the two copies of the `B` basis.

A model is determined by (n, q, j); the Jordan type of `A` is the
doubled q with the j block raised and the (j-1) block lowered when
j > 1, plus an extra singleton when j = 1.  The all-ones q with j = 1
would give the abelian algebra and is excluded.
"""

from dataclasses import dataclass
from fractions import Fraction

from .exactla import RationalMatrix, Subspace, jordan_type
from .partitions import Partition, partitions_of


class InvalidModelError(ValueError):
    """(q, j) violating the overlap membership rule, or the abelian case."""


class StableSeriesError(RuntimeError):
    """A filtration term failed J-invariance or centrality."""


def _is_all_ones(q):
    return all(p == 1 for p in q.parts)


@dataclass(frozen=True)
class ComplexModel:
    """A point of the classification: half-dimension n, partition q of n, overlap j."""

    n: int
    q: Partition
    j: int

    def __post_init__(self):
        if self.n < 1:
            raise InvalidModelError("n must be positive")
        if self.q.n != self.n:
            raise InvalidModelError("q must be a partition of n")
        if self.j < 1:
            raise InvalidModelError("j must be positive")
        if self.j > 1 and self.q.mult(self.j - 1) == 0:
            raise InvalidModelError(
                "overlap size %d needs a part of size %d in q" % (self.j, self.j - 1)
            )
        if self.j == 1 and _is_all_ones(self.q):
            raise InvalidModelError("q all ones with j = 1 is the abelian algebra")

    @property
    def epsilon(self):
        return 1 if self.j > 1 else 0

    @property
    def dim(self):
        """Dimension of the Lie algebra."""
        return 2 * self.n + 2

    @property
    def m(self):
        """Jordan type of the adjoint matrix, a partition of 2n+1."""
        return jordan_partition(self.q, self.j)

    @property
    def step(self):
        return nilpotency_step(self)

    def __str__(self):
        return "q=%s j=%d" % (self.q, self.j)


def jordan_partition(q, j):
    """Jordan type of the adjoint matrix for the model (q, j).

    Multiplicities are doubled; when j > 1 one (j-1)-block is promoted
    to a j-block, when j = 1 an extra singleton appears.
    """
    mult = {i: 2 * m for i, m in q.multiplicities().items()}
    if j > 1:
        if mult.get(j - 1, 0) == 0:
            raise InvalidModelError(
                "overlap size %d needs a part of size %d in q" % (j, j - 1)
            )
        mult[j] = mult.get(j, 0) + 1
        mult[j - 1] -= 1
    else:
        mult[1] = mult.get(1, 0) + 1
    return Partition.from_multiplicities(mult)


def admits_complex_structure(m):
    """Witness (as a ComplexModel) that the algebra with Jordan type m
    carries a complex structure, or None.

    Exhaustive search over the partitions of n = (sum(m) - 1) / 2; ties
    are broken by smallest j, then lexicographically largest q.
    """
    total = m.n
    if total % 2 == 0:
        raise ValueError("a Jordan type of odd total size is required")
    n = (total - 1) // 2
    if n < 1:
        return None
    matches = []
    for q in partitions_of(n):
        for j in _overlap_indices(q):
            if jordan_partition(q, j) == m:
                matches.append(ComplexModel(n, q, j))
    if not matches:
        return None
    matches.sort(key=lambda c: (c.j, tuple(-p for p in c.q.parts)))
    return matches[0]


def _overlap_indices(q):
    """Admissible overlap sizes for q, ascending, abelian case dropped."""
    out = [] if _is_all_ones(q) else [1]
    out.extend(sorted({p + 1 for p in q.parts}))
    return out


def enumerate_models(n):
    """All models of dimension 2n+2, grouped by q in enumeration order.

    The resulting Jordan types are checked to be pairwise distinct.
    """
    if n < 1:
        raise ValueError("n must be positive")
    models = []
    for q in partitions_of(n):
        for j in _overlap_indices(q):
            models.append(ComplexModel(n, q, j))
    seen = {}
    for c in models:
        key = c.m
        if key in seen:
            raise RuntimeError("duplicate Jordan type %s from %s and %s" % (key, seen[key], c))
        seen[key] = c
    return models


def nilpotency_step(model):
    """Nilpotency step: the largest Jordan block of the adjoint matrix."""
    return max(model.j, model.q.parts[0])


def _block_sizes(model):
    """Block sizes of B: size j-1 first when j > 1, the rest weakly decreasing."""
    parts = list(model.q.parts)
    if model.j > 1:
        parts.remove(model.j - 1)
        return [model.j - 1] + parts
    return parts


@dataclass(frozen=True)
class AlgebraModel:
    """The model realised on the basis e_0, ..., e_{2n+1}."""

    dim: int
    A: tuple  # (2n+1) x (2n+1), adjoint action of e_0 on the ideal
    J: tuple  # (2n+2) x (2n+2), the complex structure

    def a_matrix(self):
        return RationalMatrix([list(r) for r in self.A])

    def j_matrix(self):
        return RationalMatrix([list(r) for r in self.J])

    def bracket_basis(self, i, k):
        """[e_i, e_k] as a mapping target index -> coefficient."""
        if i == k or (i and k):
            return {}
        if i == 0:
            col, sign = k, 1
        else:
            col, sign = i, -1
        out = {}
        for r in range(self.dim - 1):
            c = self.A[r][col - 1]
            if c:
                out[r + 1] = sign * c
        return out

    def bracket_tensor(self):
        """All structure constants: {(i, k): {target: coefficient}} for i < k."""
        out = {}
        for k in range(1, self.dim):
            entry = self.bracket_basis(0, k)
            if entry:
                out[(0, k)] = entry
        return out

    def bracket(self, x, y):
        """Bracket of two coordinate vectors (exact arithmetic)."""
        out = [0] * self.dim
        for r in range(self.dim - 1):
            acc = 0
            row = self.A[r]
            for c in range(self.dim - 1):
                a = row[c]
                if a:
                    acc += a * (x[0] * y[c + 1] - y[0] * x[c + 1])
            out[r + 1] = acc
        return tuple(out)

    def apply_j(self, x):
        return tuple(
            sum(self.J[r][c] * x[c] for c in range(self.dim)) for r in range(self.dim)
        )


def build_algebra(model, block_sizes=None):
    """Assemble the adjoint matrix A and the complex structure J.

    `block_sizes` overrides the canonical block order of B (the first
    entry must still be j-1 when epsilon = 1); any order yields an
    isomorphic algebra.
    """
    n = model.n
    sizes = list(_block_sizes(model)) if block_sizes is None else list(block_sizes)
    if sorted(sizes, reverse=True) != list(model.q.parts):
        raise InvalidModelError("block sizes must form the partition q")
    if model.epsilon and sizes[0] != model.j - 1:
        raise InvalidModelError("the first block must have size j-1")
    size = 2 * n + 1
    a = [[0] * size for _ in range(size)]
    a[1][0] = model.epsilon
    offset = 0
    for s in sizes:
        for t in range(s - 1):
            # two identical copies of each chain of B
            a[1 + offset + t + 1][1 + offset + t] = 1
            a[1 + n + offset + t + 1][1 + n + offset + t] = 1
        offset += s
    dim = size + 1
    j = [[0] * dim for _ in range(dim)]
    j[1][0] = 1
    j[0][1] = -1
    for t in range(n):
        j[2 + n + t][2 + t] = 1
        j[2 + t][2 + n + t] = -1
    return AlgebraModel(
        dim=dim,
        A=tuple(tuple(r) for r in a),
        J=tuple(tuple(r) for r in j),
    )


def commutator_dimension(alg):
    """Dimension of the commutator ideal (the rank of the adjoint matrix)."""
    return alg.a_matrix().rank()


def nijenhuis_vanishes(alg):
    """Whether N(x, y) = [Jx, Jy] - [x, y] - J[Jx, y] - J[x, Jy] vanishes
    on all pairs of basis vectors."""
    dim = alg.dim
    basis = [tuple(1 if t == i else 0 for t in range(dim)) for i in range(dim)]
    jbasis = [alg.apply_j(b) for b in basis]
    for i in range(dim):
        for k in range(i + 1, dim):
            lhs = alg.bracket(jbasis[i], jbasis[k])
            plain = alg.bracket(basis[i], basis[k])
            mixed1 = alg.apply_j(alg.bracket(jbasis[i], basis[k]))
            mixed2 = alg.apply_j(alg.bracket(basis[i], jbasis[k]))
            for t in range(dim):
                if lhs[t] - plain[t] - mixed1[t] - mixed2[t] != 0:
                    return False
    return True


def _ad_matrices(alg):
    """For each basis vector e_i, the matrix of x -> [e_i, x]."""
    dim = alg.dim
    mats = []
    for i in range(dim):
        cols = []
        for k in range(dim):
            ek = tuple(1 if t == k else 0 for t in range(dim))
            ei = tuple(1 if t == i else 0 for t in range(dim))
            cols.append(alg.bracket(ei, ek))
        mats.append(RationalMatrix([[cols[k][r] for k in range(dim)] for r in range(dim)]))
    return mats


def _ascending_centre(alg, ads, prev):
    """{x : [g, x] in prev for every basis vector g}."""
    dim = alg.dim
    if prev.dim == dim:
        return prev
    basis_rows = [list(v) for v in prev.basis]
    annihilator = (
        RationalMatrix(basis_rows, cols=dim).nullspace()
        if basis_rows
        else [tuple(1 if t == i else 0 for t in range(dim)) for i in range(dim)]
    )
    constraints = []
    for ad in ads:
        for f in annihilator:
            constraints.append(
                [
                    sum(f[r] * ad[r, c] for r in range(dim))
                    for c in range(dim)
                ]
            )
    if not constraints:
        return Subspace.full(dim)
    return Subspace(dim, RationalMatrix(constraints, cols=dim).nullspace())


def _descending_series(alg, ads):
    """Descending central series from the bracket tensor, until it vanishes."""
    dim = alg.dim
    series = [Subspace.full(dim)]
    while series[-1].dim > 0:
        vecs = []
        for ad in ads:
            for v in series[-1].basis:
                img = ad.apply(v)
                if any(img):
                    vecs.append(img)
        nxt = Subspace(dim, vecs)
        if nxt == series[-1]:
            raise StableSeriesError("descending series stabilised; algebra not nilpotent")
        series.append(nxt)
    return series


def stable_series(alg, model):
    """The filtration by centres up to step j-1 followed by the shifted
    descending series, checked term by term.

    Every term must be J-invariant and every quotient step central in
    the corresponding quotient; violations raise StableSeriesError.
    """
    dim = alg.dim
    ads = _ad_matrices(alg)
    centres = [Subspace(dim)]
    for _ in range(model.j - 1):
        centres.append(_ascending_centre(alg, ads, centres[-1]))
    descending = _descending_series(alg, ads)
    nu = len(descending) - 1
    if nu != model.step:
        raise StableSeriesError(
            "nilpotency step mismatch: series says %d, model says %d" % (nu, model.step)
        )
    terms = list(centres)
    anchor = centres[-1]
    for k in range(nu - model.j, 0, -1):
        terms.append(anchor.sum(descending[k]))
    terms.append(Subspace.full(dim))
    filtration = [terms[0]]
    for t in terms[1:]:
        if not filtration[-1] <= t:
            raise StableSeriesError("filtration is not increasing")
        if t != filtration[-1]:
            filtration.append(t)
    for t in filtration:
        for v in t.basis:
            if not t.contains(alg.apply_j(v)):
                raise StableSeriesError("term of dimension %d is not J-invariant" % t.dim)
    for prev, nxt in zip(filtration, filtration[1:]):
        for v in nxt.basis:
            for i in range(dim):
                ei = tuple(1 if r == i else 0 for r in range(dim))
                if not prev.contains(alg.bracket(ei, v)):
                    raise StableSeriesError("quotient step is not central")
    return filtration


@dataclass(frozen=True)
class StructureEquations:
    """Differentials of a basis of (1,0)-forms.

    Generators are named "alpha" and "beta<l>_<i>" where l labels the
    chain (l = 0 is the overlap chain, present only when epsilon = 1)
    and i the position inside it.  Each rule is a sum of integer
    multiples of wedge pairs; a factor is (name, conjugated).
    """

    n: int
    epsilon: int
    blocks: tuple  # (label, length) per chain
    generators: tuple
    rules: tuple  # (generator, ((coef, (factor, factor)), ...)) pairs

    def d(self, gen):
        for name, terms in self.rules:
            if name == gen:
                return terms
        raise KeyError(gen)

    def rules_dict(self):
        return dict(self.rules)


def _beta(label, i):
    return "beta%d_%d" % (label, i)


def structure_equations(model, block_sizes=None):
    """Structure equations of the model in the canonical (1,0)-basis.

    d(alpha) = 0; each chain l is a string beta_1, beta_2, ... with
    d(beta_i) = (alpha + conj(alpha)) ^ beta_{i-1}, started by
    d(beta_1) = 0 for an ordinary chain and by alpha ^ conj(alpha) for
    the overlap chain.  `block_sizes` overrides the canonical block
    order (used by tests for order-invariance checks); the first entry
    must still be j-1 when epsilon = 1.
    """
    sizes = list(_block_sizes(model)) if block_sizes is None else list(block_sizes)
    if sorted(sizes, reverse=True) != list(model.q.parts):
        raise InvalidModelError("block sizes must form the partition q")
    if model.epsilon and sizes[0] != model.j - 1:
        raise InvalidModelError("the first block must have size j-1")
    first_label = 0 if model.epsilon else 1
    blocks = tuple((first_label + t, s) for t, s in enumerate(sizes))
    generators = ["alpha"]
    rules = [("alpha", ())]
    alpha = ("alpha", False)
    alpha_bar = ("alpha", True)
    for label, size in blocks:
        for i in range(1, size + 1):
            name = _beta(label, i)
            generators.append(name)
            if i > 1:
                prev = (_beta(label, i - 1), False)
                rules.append((name, ((1, (alpha, prev)), (1, (alpha_bar, prev)))))
            elif label == 0:
                rules.append((name, ((1, (alpha, alpha_bar)),)))
            else:
                rules.append((name, ()))
    return StructureEquations(
        n=model.n,
        epsilon=model.epsilon,
        blocks=blocks,
        generators=tuple(generators),
        rules=tuple(rules),
    )


def generator_coordinates(model, block_sizes=None):
    """Each generator as a complex combination of the dual basis e^0..e^{2n+1}.

    Returned coordinates are (real, imaginary) pairs of Fractions.  The
    chains are scaled so that the structure equations hold on the nose:
    for epsilon = 1 position i of a chain carries the factor (-2)^(i-1),
    and the overlap chain an extra factor 2i.
    """
    n = model.n
    dim = 2 * n + 2
    sizes = list(_block_sizes(model)) if block_sizes is None else list(block_sizes)
    zero = (Fraction(0), Fraction(0))

    def vector(entries):
        coords = [zero] * dim
        for idx, val in entries:
            coords[idx] = val
        return tuple(coords)

    out = {}
    if model.epsilon:
        out["alpha"] = vector([(0, (Fraction(1), Fraction(0))), (1, (Fraction(0), Fraction(1)))])
    else:
        out["alpha"] = vector(
            [(0, (Fraction(-1, 2), Fraction(0))), (1, (Fraction(0), Fraction(-1, 2)))]
        )
    first_label = 0 if model.epsilon else 1
    offset = 0
    for t, size in enumerate(sizes):
        label = first_label + t
        for i in range(1, size + 1):
            k = 2 + offset + (i - 1)
            if model.epsilon:
                scale = Fraction((-2) ** (i - 1))
                if label == 0:
                    # overlap chain: multiply by 2i
                    re, im = Fraction(0), 2 * scale
                else:
                    re, im = scale, Fraction(0)
            else:
                re, im = Fraction(1), Fraction(0)
            # coefficient of e^{k+n} is i * (re + i im) = -im + i re
            out[_beta(label, i)] = vector(
                [(k, (re, im)), (k + n, (-im, re))]
            )
        offset += size
    return out

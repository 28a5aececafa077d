"""Formal calculus of finite dimensional sl2(C)-modules.

A module is recorded by the multiset of dimensions of its irreducible
summands; the irreducible of dimension i has weight string
i-1, i-3, ..., -(i-1).  Tensor products expand by the Clebsch-Gordan
rule, exterior powers by the direct-sum expansion over summands, with
exterior powers of a single irreducible resolved through its weights.
Two brute-force weight oracles are provided for cross-checking.
"""

from collections import Counter
from functools import lru_cache
from itertools import combinations


class InvalidWeightSystemError(ValueError):
    """A weight multiset that is not the weight system of any module."""


class Sl2Module:
    """Formal direct sum of irreducibles: dimension -> multiplicity.

    Zero multiplicities are dropped on construction, so equality of
    modules is structural equality of the stored vectors.
    """

    __slots__ = ("_mult",)

    def __init__(self, mult=()):
        items = mult.items() if hasattr(mult, "items") else mult
        acc = {}
        for i, m in items:
            if i < 1:
                raise ValueError("irreducible dimension must be positive, got %r" % (i,))
            if m < 0:
                raise ValueError("multiplicity must be non-negative, got %r" % (m,))
            if m:
                acc[i] = acc.get(i, 0) + m
        object.__setattr__(self, "_mult", tuple(sorted(acc.items(), reverse=True)))

    def mult(self, i):
        """Multiplicity of the irreducible of dimension i."""
        for d, m in self._mult:
            if d == i:
                return m
        return 0

    def items(self):
        """(dimension, multiplicity) pairs, largest dimension first."""
        return self._mult

    def dim(self):
        return sum(i * m for i, m in self._mult)

    def delta(self):
        """Number of irreducible summands."""
        return sum(m for _, m in self._mult)

    def weights(self):
        """Weight multiset as a Counter."""
        mu = Counter()
        for i, m in self._mult:
            for w in range(i - 1, -i, -2):
                mu[w] += m
        return mu

    def is_zero(self):
        return not self._mult

    def __add__(self, other):
        """Direct sum."""
        return Sl2Module(self._mult + other._mult)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return Sl2Module(tuple((i, k * m) for i, m in self._mult))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Sl2Module) and self._mult == other._mult

    def __hash__(self):
        return hash(self._mult)

    def __setattr__(self, name, value):
        raise AttributeError("Sl2Module is immutable")

    def __repr__(self):
        if not self._mult:
            return "0"
        bits = []
        for i, m in self._mult:
            bits.append("W(%d)" % i if m == 1 else "%d*W(%d)" % (m, i))
        return " + ".join(bits)


ZERO = Sl2Module()


def irreducible(i):
    """The irreducible module of dimension i."""
    return Sl2Module(((i, 1),))


def delta(v):
    """Number of irreducible summands of v."""
    return v.delta()


def tensor(v, w):
    """Tensor product, expanded bilinearly by the Clebsch-Gordan rule."""
    acc = Counter()
    for i, mi in v.items():
        for k, mk in w.items():
            for d in range(abs(i - k) + 1, i + k, 2):
                acc[d] += mi * mk
    return Sl2Module(acc)


def decompose_from_weights(weights):
    """The unique module with the given weight multiset.

    With mu the weight multiplicity function, the irreducible of
    dimension d occurs mu(d-1) - mu(d+1) times.  Raises
    InvalidWeightSystemError when the multiset is not symmetric under
    negation or the peeling produces an inconsistency.
    """
    mu = Counter(weights)
    total = sum(mu.values())
    for w, c in mu.items():
        if mu[-w] != c:
            raise InvalidWeightSystemError("multiset not symmetric under negation")
    if not total:
        return ZERO
    acc = {}
    for d in range(max(mu) + 1, 0, -1):
        m = mu[d - 1] - mu[d + 1]
        if m < 0:
            raise InvalidWeightSystemError("weight multiplicities are not unimodal")
        if m:
            acc[d] = m
    out = Sl2Module(acc)
    if out.dim() != total:
        raise InvalidWeightSystemError("weight string has gaps")
    return out


@lru_cache(maxsize=None)
def _wedge_irreducible(i, r):
    """Exterior power of one irreducible, via its weight string.

    Computes the weight multiset of the r-th exterior power as the
    degree-r elementary symmetric layer over the weights (0/1 knapsack,
    so each weight slot is used at most once), then decomposes.
    """
    if r < 0 or r > i:
        return ZERO
    layers = [Counter() for _ in range(r + 1)]
    layers[0][0] = 1
    for w in range(i - 1, -i, -2):
        for k in range(r, 0, -1):
            below = layers[k - 1]
            if below:
                tgt = layers[k]
                for s, c in below.items():
                    tgt[s + w] += c
    return decompose_from_weights(layers[r])


@lru_cache(maxsize=None)
def _wedge_sum(v, r):
    if r == 0:
        return irreducible(1)
    if r > v.dim():
        return ZERO
    items = v.items()
    i, m = items[0]
    if len(items) == 1 and m == 1:
        return _wedge_irreducible(i, r)
    # peel one copy of the largest irreducible and expand
    rest = Sl2Module(((i, m - 1),) + items[1:])
    acc = Counter()
    for a in range(0, min(i, r) + 1):
        left = _wedge_irreducible(i, a)
        right = _wedge_sum(rest, r - a)
        if left.is_zero() or right.is_zero():
            continue
        for d, c in tensor(left, right).items():
            acc[d] += c
    return Sl2Module(acc)


def wedge(v, r):
    """r-th exterior power of v.

    Expands over the summands of v (the exterior algebra of a direct
    sum is the graded tensor product), memoised on (module, power).
    """
    if r < 0:
        raise ValueError("exterior power must be non-negative")
    return _wedge_sum(v, r)


def wedge_irreducible_oracle(i, r):
    """Brute-force wedge of one irreducible over all r-subsets of its weights."""
    if not 0 <= r <= i:
        raise ValueError("need 0 <= r <= i")
    string = range(i - 1, -i, -2)
    return decompose_from_weights(Counter(sum(c) for c in combinations(string, r)))


def wedge_weight_oracle(v, r):
    """Brute-force wedge of an arbitrary module over its full weight multiset.

    Enumerates all r-subsets of weight slots, so this is only meant for
    small modules (the cross-check range is dim <= 12 or so).
    """
    if r < 0:
        raise ValueError("exterior power must be non-negative")
    pool = []
    for w, c in sorted(v.weights().items()):
        pool.extend([w] * c)
    return decompose_from_weights(Counter(sum(c) for c in combinations(pool, r)))

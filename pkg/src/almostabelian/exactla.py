"""Exact linear algebra over the rationals.

Everything here works on plain Python ints and fractions.Fraction, so
all results are exact; no floating point is used anywhere.  Ranks are
computed by fraction-free elimination: dense Bareiss for small or dense
matrices, a gcd-normalised sparse elimination for the large sparse
differentials produced by the cohomology oracles.  The two paths are
cross-checked in the test suite.
"""

from fractions import Fraction
from math import gcd


class NotNilpotentError(ValueError):
    """Raised when a matrix expected to be nilpotent is not."""


class RationalMatrix:
    """Dense matrix with exact entries (int or Fraction)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols=None):
        data = [list(row) for row in data]
        rows = len(data)
        if rows:
            cols = len(data[0])
            for row in data:
                if len(row) != cols:
                    raise ValueError("ragged rows")
                for x in row:
                    if not isinstance(x, (int, Fraction)) or isinstance(x, bool):
                        raise ValueError("entries must be int or Fraction, got %r" % (x,))
        elif cols is None:
            cols = 0
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            self.data[i][j] == other.data[i][j]
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable; build a new one")

    def __repr__(self):
        return "RationalMatrix(%d x %d)" % (self.rows, self.cols)

    def transpose(self):
        return RationalMatrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            row = self.data[i]
            out.append(
                [
                    sum(row[k] * other.data[k][j] for k in range(self.cols))
                    for j in range(other.cols)
                ]
            )
        return RationalMatrix(out, cols=other.cols)

    def apply(self, vec):
        """Matrix-vector product on a sequence of length cols."""
        if len(vec) != self.cols:
            raise ValueError("length mismatch")
        return tuple(
            sum(self.data[i][j] * vec[j] for j in range(self.cols))
            for i in range(self.rows)
        )

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def _integer_rows(self):
        """Rows rescaled to integers (rank preserving)."""
        out = []
        for row in self.data:
            denom = 1
            for x in row:
                if isinstance(x, Fraction):
                    denom = denom * x.denominator // gcd(denom, x.denominator)
            if denom == 1:
                out.append([int(x) for x in row])
            else:
                out.append([int(x * denom) for x in row])
        return out

    def rank(self):
        """Exact rank over Q, by fraction-free elimination with pivoting."""
        if self.rows == 0 or self.cols == 0:
            return 0
        rows = self._integer_rows()
        cells = self.rows * self.cols
        if cells <= 4096:
            return _rank_bareiss(rows)
        nnz = sum(1 for row in rows for x in row if x)
        if 4 * nnz > cells:
            return _rank_bareiss(rows)
        return _rank_sparse([{j: x for j, x in enumerate(row) if x} for row in rows])

    def kernel_dim(self):
        return self.cols - self.rank()

    def rref(self):
        """Reduced row echelon form: (nonzero rows as Fraction tuples, pivot columns)."""
        m = [[Fraction(x) for x in row] for row in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            if r == len(m):
                break
            piv = next((i for i in range(r, len(m)) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return [tuple(row) for row in m[:r]], pivots

    def nullspace(self):
        """Basis of the right kernel, as tuples of Fractions."""
        rows, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            vec = [Fraction(0)] * self.cols
            vec[free] = Fraction(1)
            for row, pc in zip(rows, pivots):
                vec[pc] = -row[free]
            basis.append(tuple(vec))
        return basis


def _rank_bareiss(m):
    """Bareiss fraction-free elimination with row pivoting.

    All divisions below are exact (Sylvester's identity); the pivot is
    the nonzero entry of least magnitude to limit coefficient growth.
    """
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_abs = None
        for i in range(r, nrows):
            x = m[i][c]
            if x and (best_abs is None or abs(x) < best_abs):
                best, best_abs = i, abs(x)
        if best < 0:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        piv = m[r][c]
        mr = m[r]
        for i in range(r + 1, nrows):
            mi = m[i]
            xi = mi[c]
            if xi:
                for j in range(c + 1, ncols):
                    mi[j] = (mi[j] * piv - xi * mr[j]) // prev
            elif piv != prev:
                for j in range(c + 1, ncols):
                    if mi[j]:
                        mi[j] = mi[j] * piv // prev
            mi[c] = 0
        prev = piv
        r += 1
    return r


def _rank_sparse(rows):
    """Fraction-free sparse elimination, gcd-normalised rows.

    Pivots are chosen in the column with fewest active rows and then in
    the shortest row, which keeps fill-in low on the very sparse
    differential matrices this is used for.  Row updates are integer
    cross-multiplications followed by division by the row content, so
    entries stay small and exact.
    """
    rows = {i: row for i, row in enumerate(rows) if row}
    cols = {}
    for i, row in rows.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    rank = 0
    while rows:
        c = min(cols, key=lambda j: (len(cols[j]), j))
        pr = min(cols[c], key=lambda i: (len(rows[i]), abs(rows[i][c]), i))
        prow = rows.pop(pr)
        for j in prow:
            s = cols[j]
            s.discard(pr)
            if not s:
                del cols[j]
        targets = list(cols.get(c, ()))
        p = prow[c]
        for i in targets:
            row = rows[i]
            a = row[c]
            new = {}
            g = 0
            for j, x in row.items():
                v = p * x - a * prow.get(j, 0)
                if v:
                    new[j] = v
                    g = gcd(g, v)
            for j, x in prow.items():
                if j not in row:
                    v = -a * x
                    if v:
                        new[j] = v
                        g = gcd(g, v)
            if g > 1:
                new = {j: v // g for j, v in new.items()}
            for j in row:
                if j not in new:
                    s = cols[j]
                    s.discard(i)
                    if not s:
                        del cols[j]
            for j in new:
                if j not in row:
                    cols.setdefault(j, set()).add(i)
            if new:
                rows[i] = new
            else:
                del rows[i]
        rank += 1
    return rank


def sparse_rank(row_dicts):
    """Exact rank of a matrix given as per-row {column: int} dicts."""
    clean = []
    for row in row_dicts:
        entries = {j: x for j, x in row.items() if x}
        if entries:
            clean.append(entries)
    if not clean:
        return 0
    return _rank_sparse(clean)


def jordan_block(k):
    """The k x k nilpotent lower triangular Jordan block (ones below the diagonal)."""
    return RationalMatrix(
        [[1 if j == i - 1 else 0 for j in range(k)] for i in range(k)], cols=k
    )


def power_ranks(matrix):
    """Ranks of successive powers of a nilpotent matrix, until the zero power.

    Returns [rank(M), rank(M^2), ...] for the nonzero powers; the zero
    matrix gives [].  Raises NotNilpotentError when the rank sequence
    stops strictly decreasing before reaching zero.
    """
    if matrix.rows != matrix.cols:
        raise ValueError("matrix must be square")
    out = []
    power = matrix
    for _ in range(matrix.rows + 1):
        r = power.rank()
        if r == 0:
            return out
        if out and r >= out[-1]:
            raise NotNilpotentError("rank of powers stabilised at %d" % r)
        out.append(r)
        power = power.mul(matrix)
    raise NotNilpotentError("no power vanished within the dimension bound")


def jordan_type(matrix):
    """Jordan block sizes of a nilpotent matrix, weakly decreasing.

    Recovered from the ranks of powers: the number of blocks of size i
    is r_{i-1} - 2 r_i + r_{i+1} with r_0 = n and r_k = 0 past the
    nilpotency index.
    """
    ranks = [matrix.rows] + power_ranks(matrix) + [0, 0]
    blocks = []
    for i in range(1, len(ranks) - 1):
        for _ in range(ranks[i - 1] - 2 * ranks[i] + ranks[i + 1]):
            blocks.append(i)
    return sorted(blocks, reverse=True)


class Subspace:
    """Subspace of Q^d, stored by a reduced row-echelon basis.

    The RREF basis is canonical, so equality of subspaces is structural
    equality of the stored rows.
    """

    __slots__ = ("d", "basis", "pivots")

    def __init__(self, d, vectors=()):
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != d:
                raise ValueError("vector length != ambient dimension")
        if vectors:
            rows, pivots = RationalMatrix(vectors, cols=d).rref()
        else:
            rows, pivots = [], []
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "basis", tuple(rows))
        object.__setattr__(self, "pivots", tuple(pivots))

    @classmethod
    def full(cls, d):
        return cls(d, RationalMatrix.identity(d).data)

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vec):
        vec = [Fraction(x) for x in vec]
        if len(vec) != self.d:
            raise ValueError("vector length != ambient dimension")
        for row, pc in zip(self.basis, self.pivots):
            f = vec[pc]
            if f:
                vec = [a - f * b for a, b in zip(vec, row)]
        return all(x == 0 for x in vec)

    def __le__(self, other):
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.d == other.d and self.basis == other.basis

    def __hash__(self):
        return hash((self.d, self.basis))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    def __repr__(self):
        return "Subspace(dim %d of Q^%d)" % (self.dim, self.d)

    def sum(self, other):
        if self.d != other.d:
            raise ValueError("ambient dimensions differ")
        return Subspace(self.d, list(self.basis) + list(other.basis))

    def coordinate_indices(self):
        """Indices i with the i-th standard basis vector inside the subspace."""
        out = set()
        for i in range(self.d):
            e = [0] * self.d
            e[i] = 1
            if self.contains(e):
                out.add(i)
        return out

"""Gram and Weingarten matrices, Haar moments, scaled Weingarten values.

The Gram matrix over C(m) has entries n^#(pi v sigma). Its exact inverse
(the Weingarten matrix) is computed by fraction-free Gauss-Jordan
elimination over the integers: one-step Bareiss updates keep every
intermediate entry an integer dividing a minor, and the inverse is
returned as an integer numerator matrix over the determinant. Pivots are
tested exactly; Gram matrices are positive semidefinite, so a zero pivot
occurs precisely when the matrix is singular.
"""

import json
import os
import tempfile
from fractions import Fraction
from math import lcm

from ._backend import mpz, wrap_matrix
from .errors import NotInPoset, SingularGram, SizeMismatch
from .categories import c_leq, enumerate_category
from .partitions import Partition, join_num_blocks, parse_partition
from .rationals import format_rational, parse_rational

CACHE_ENV = "FREEDF_CACHE_DIR"


class GramTable:
    def __init__(self, cat, m, n, basis, entries):
        self.cat = cat
        self.m = m
        self.n = n
        self.basis = tuple(basis)
        self.entries = tuple(tuple(row) for row in entries)

    def index(self, p):
        try:
            return self.basis.index(Partition(p))
        except ValueError:
            raise NotInPoset("partition %s is not in C(%d) for %s" % (p, self.m, self.cat)) from None


class WeingartenTable(GramTable):
    pass


_EXP_CACHE = {}


def _join_exponents(cat, m):
    """Matrix of #(pi v sigma) over the C(m) basis, shared across n."""
    got = _EXP_CACHE.get((cat, m))
    if got is None:
        basis = enumerate_category(cat, m)
        size = len(basis)
        E = [[0] * size for _ in range(size)]
        for a in range(size):
            pa = basis[a]
            E[a][a] = pa.num_blocks
            for b in range(a + 1, size):
                E[a][b] = E[b][a] = join_num_blocks(pa, basis[b])
        got = (tuple(basis), tuple(tuple(r) for r in E))
        _EXP_CACHE[(cat, m)] = got
    return got


def gram(cat, m, n):
    basis, E = _join_exponents(cat, m)
    powers = [n ** k for k in range(m + 1)]
    entries = [[powers[e] for e in row] for row in E]
    return GramTable(cat, m, n, basis, entries)


def _ff_inverse(A):
    """Exact inverse of an integer matrix with nonzero leading minors.

    Returns (det, num) with inverse = num / det, or None on a zero
    pivot. Fraction-free Gauss-Jordan: after step k every entry equals
    an integer minor, and the right half only carries columns 0..k.
    """
    size = len(A)
    left = wrap_matrix(A)
    zero = mpz(0)
    right = [[zero] * size for _ in range(size)]
    prev = mpz(1)
    for k in range(size):
        rk = left[k]
        pkk = rk[k]
        if not pkk:
            return None
        right[k][k] = prev
        rrk = right[k]
        for i in range(size):
            if i == k:
                continue
            ri = left[i]
            mik = ri[k]
            rri = right[i]
            if mik:
                for j in range(k + 1, size):
                    ri[j] = (pkk * ri[j] - mik * rk[j]) // prev
                for j in range(k + 1):
                    rri[j] = (pkk * rri[j] - mik * rrk[j]) // prev
            else:
                for j in range(k + 1, size):
                    ri[j] = (pkk * ri[j]) // prev
                for j in range(k + 1):
                    rri[j] = (pkk * rri[j]) // prev
            ri[k] = zero
        prev = pkk
    return int(prev), [[int(x) for x in row] for row in right]


_WG_CACHE = {}


def weingarten(cat, m, n):
    got = _WG_CACHE.get((cat, m, n))
    if got is not None:
        return got
    got = _load_cached(cat, m, n)
    if got is None:
        g = gram(cat, m, n)
        size = len(g.basis)
        if size == 0:
            got = WeingartenTable(cat, m, n, (), ())
        else:
            res = _ff_inverse([list(row) for row in g.entries])
            if res is None:
                raise SingularGram(cat, m, n)
            det, num = res
            got = WeingartenTable(
                cat, m, n, g.basis,
                [[Fraction(num[a][b], det) for b in range(size)] for a in range(size)],
            )
        _store_cached(got)
    _WG_CACHE[(cat, m, n)] = got
    return got


def _cache_path(cat, m, n):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return os.path.join(root, "%s_%d_%d.json" % (cat.value, m, n))


def _load_cached(cat, m, n):
    path = _cache_path(cat, m, n)
    if not path or not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        basis = [parse_partition(s) if s else Partition() for s in doc["basis"]]
        entries = [[parse_rational(v) for v in row] for row in doc["entries"]]
    except Exception:
        return None  # unreadable cache entries are rebuilt
    return WeingartenTable(cat, m, n, basis, entries)


def _store_cached(wg):
    path = _cache_path(wg.cat, wg.m, wg.n)
    if not path:
        return
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    doc = matrix_json(wg)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def matrix_json(table):
    """The CLI/disk JSON form of a Gram or Weingarten table."""
    return {
        "category": table.cat.value,
        "m": table.m,
        "n": table.n,
        "basis": [str(p) for p in table.basis],
        "entries": [[format_rational(v) for v in row] for row in table.entries],
    }


def haar_moment(cat, n, i, j):
    """h(u_{i1 j1} ... u_{im jm}) via the Weingarten expansion."""
    if len(i) != len(j):
        raise SizeMismatch("index tuples differ in length: %d vs %d" % (len(i), len(j)))
    m = len(i)
    wg = weingarten(cat, m, n)
    if not wg.basis:
        return Fraction(0)
    rows = [wg.index(p) for p in c_leq(cat, i)]
    cols = [wg.index(p) for p in c_leq(cat, j)]
    total = Fraction(0)
    for a in rows:
        row = wg.entries[a]
        for b in cols:
            total += row[b]
    return total


def wg_scaled(cat, k, n, p, q):
    """Wg_{2k,n}(p, q) * n^k, exactly."""
    wg = weingarten(cat, 2 * k, n)
    return wg.entries[wg.index(p)][wg.index(q)] * n ** k


def verify_inverse(cat, m, n):
    """Exact check that Gram * Weingarten is the identity.

    Works on the integer numerators grouped by Gram exponent: the (a,b)
    entry of Gram*num is sum_e n^e * (sum of num[c][b] over c with
    E[a][c] = e), which needs O(m) big multiplications per entry instead
    of a full rational dot product.
    """
    basis, E = _join_exponents(cat, m)
    size = len(basis)
    wg = weingarten(cat, m, n)
    if size == 0:
        return True
    det = lcm(*(v.denominator for row in wg.entries for v in row))
    num = [[int(v * det) for v in row] for row in wg.entries]
    powers = [mpz(n) ** e for e in range(m + 1)]
    for a in range(size):
        Ea = E[a]
        for b in range(size):
            acc = [mpz(0)] * (m + 1)
            for c in range(size):
                acc[Ea[c]] += num[c][b]
            total = mpz(0)
            for e in range(m + 1):
                if acc[e]:
                    total += powers[e] * acc[e]
            if total != (det if a == b else 0):
                return False
    return True

"""Moment and cumulant tables and the free transforms between them.

A table stores, per order m <= max_order, the values of a multilinear
family on tuples over [n]. Two representations exist:

  dense   every tuple in [n]^m has an entry;
  kernel  entries are keyed by kernel partitions (all tau in P(m) with
          #tau <= n), valid exactly when values depend on a tuple only
          through ker(tuple).

The transforms implement the free moment-cumulant formula over NC(m)
and its Moebius inversion. The inversion weights are the NC(m)-lattice
Moebius column mu(pi, 1_m), not the full-lattice closed form: the two
agree for m <= 3 only, and only the former is an inverse.
"""

import itertools
from fractions import Fraction
from math import lcm, prod

from .categories import S_PLUS, enumerate_category
from .errors import (
    IncompleteTable,
    NotKernelRepresentable,
    OrderExceeded,
    SchemaError,
    SizeMismatch,
    TableTooLarge,
)
from .partitions import (
    Partition,
    enumerate_partitions,
    kernel,
    num_blocks,
    parse_index_tuple,
    parse_partition,
    render_index_tuple,
)
from .posets import mobius_to_top_nc
from .rationals import format_rational, parse_rational

DENSE_GUARD = 10 ** 7

DENSE = "dense"
KERNEL = "kernel"


def _check_dense_size(n, max_order):
    if max_order >= 1 and n ** max_order > DENSE_GUARD:
        raise TableTooLarge(
            "dense table would need n^M = %d^%d entries; use the kernel representation" % (n, max_order)
        )


def kernel_classes(m, n):
    """All kernel partitions of order m reachable over [n]."""
    return [t for t in enumerate_partitions(m) if num_blocks(t) <= n]


class Table:
    kind = None

    def __init__(self, n, max_order, values, repr=DENSE):
        if repr not in (DENSE, KERNEL):
            raise SchemaError("repr must be 'dense' or 'kernel', got %r" % repr)
        if repr == DENSE:
            _check_dense_size(n, max_order)
        self.n = n
        self.max_order = max_order
        self.repr = repr
        self.values = {m: dict(values.get(m, {})) for m in range(1, max_order + 1)}
        for m in range(1, max_order + 1):
            want = n ** m if repr == DENSE else len(kernel_classes(m, n))
            if len(self.values[m]) != want:
                raise IncompleteTable(
                    "order %d has %d entries, expected %d" % (m, len(self.values[m]), want)
                )

    def value(self, i):
        """The entry at an index tuple (1-based values in [n])."""
        i = tuple(i)
        m = len(i)
        if m == 0:
            return Fraction(1)
        if m > self.max_order:
            raise OrderExceeded("order %d beyond table max_order %d" % (m, self.max_order))
        if self.repr == DENSE:
            return self.values[m][i]
        return self.values[m][kernel(i)]

    def kernel_value(self, m, tau):
        if m > self.max_order:
            raise OrderExceeded("order %d beyond table max_order %d" % (m, self.max_order))
        if self.repr == KERNEL:
            return self.values[m][tau]
        rep = representative_tuple(tau)
        return self.values[m][rep]

    def kernel_view(self, m):
        """Kernel-class view {tau: value} of order m.

        For dense tables this requires kernel representability and
        raises NotKernelRepresentable with a witness pair otherwise.
        """
        if self.repr == KERNEL:
            return dict(self.values[m])
        out = {}
        rep = {}
        for i, v in self.values[m].items():
            tau = kernel(i)
            if tau in out:
                if out[tau] != v:
                    raise NotKernelRepresentable(
                        "tuples %s and %s share kernel %s but differ: %s vs %s"
                        % (rep[tau], i, tau, out[tau], v)
                    )
            else:
                out[tau] = v
                rep[tau] = i
        return out

    def to_kernel(self):
        if self.repr == KERNEL:
            return self
        vals = {m: self.kernel_view(m) for m in range(1, self.max_order + 1)}
        return type(self)(self.n, self.max_order, vals, repr=KERNEL)

    def to_dense(self):
        if self.repr == DENSE:
            return self
        _check_dense_size(self.n, self.max_order)
        vals = {}
        for m in range(1, self.max_order + 1):
            layer = {}
            for i in itertools.product(range(1, self.n + 1), repeat=m):
                layer[i] = self.values[m][kernel(i)]
            vals[m] = layer
        return type(self)(self.n, self.max_order, vals, repr=DENSE)

    def to_json(self):
        vals = {}
        for m in range(1, self.max_order + 1):
            layer = {}
            for key in sorted(self.values[m]):
                text = render_index_tuple(key) if self.repr == DENSE else str(key)
                layer[text] = format_rational(self.values[m][key])
            vals[str(m)] = layer
        return {
            "n": self.n,
            "max_order": self.max_order,
            "kind": self.kind,
            "repr": self.repr,
            "values": vals,
        }


class MomentTable(Table):
    kind = "moments"


class CumulantTable(Table):
    kind = "cumulants"


def representative_tuple(tau):
    """The smallest-lex tuple over [#tau] with kernel tau (1-based)."""
    return tuple(lab + 1 for lab in tau)


def table_from_json(doc):
    """Parse and fully validate the table JSON interchange form."""
    if not isinstance(doc, dict):
        raise SchemaError("table document must be a JSON object")
    for field in ("n", "max_order", "kind", "repr", "values"):
        if field not in doc:
            raise SchemaError("missing field %r" % field)
    n, max_order = doc["n"], doc["max_order"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError("field 'n' must be a positive integer, got %r" % (n,))
    if not isinstance(max_order, int) or max_order < 0:
        raise SchemaError("field 'max_order' must be a non-negative integer, got %r" % (max_order,))
    kind = doc["kind"]
    if kind not in ("moments", "cumulants"):
        raise SchemaError("field 'kind' must be 'moments' or 'cumulants', got %r" % (kind,))
    rep = doc["repr"]
    if rep not in (DENSE, KERNEL):
        raise SchemaError("field 'repr' must be 'dense' or 'kernel', got %r" % (rep,))
    raw = doc["values"]
    if not isinstance(raw, dict):
        raise SchemaError("field 'values' must be an object keyed by order")
    if rep == DENSE:
        _check_dense_size(n, max_order)
    values = {}
    for m in range(1, max_order + 1):
        layer_doc = raw.get(str(m))
        if layer_doc is None:
            raise IncompleteTable("values for order %d are missing" % m, missing=[str(m)])
        layer = {}
        for text, val in layer_doc.items():
            if rep == DENSE:
                key = parse_index_tuple(text, n)
                if len(key) != m:
                    raise SchemaError("tuple %r under order %d has length %d" % (text, m, len(key)))
            else:
                key = parse_partition(text)
                if key.size != m:
                    raise SchemaError("partition %r under order %d has size %d" % (text, m, key.size))
                if str(key) != text.replace(" ", ""):
                    raise SchemaError("partition key %r is not canonical" % text)
            layer[key] = parse_rational(val)
        if rep == DENSE:
            expected = list(itertools.product(range(1, n + 1), repeat=m))
        else:
            expected = kernel_classes(m, n)
        missing = [k for k in expected if k not in layer]
        if missing:
            shown = [render_index_tuple(k) if rep == DENSE else str(k) for k in missing[:8]]
            raise IncompleteTable(
                "order %d is missing %d entries, e.g. %s" % (m, len(missing), ", ".join(shown)),
                missing=shown,
            )
        if len(layer) != len(expected):
            unexpected = sorted(set(layer) - set(expected))[0]
            raise SchemaError("order %d carries an unexpected key %r" % (m, str(unexpected)))
        values[m] = layer
    cls = MomentTable if kind == "moments" else CumulantTable
    return cls(n, max_order, values, repr=rep)


def kappa_pi(cumulants, p, i):
    """kappa_p(i) = product over blocks V of kappa_{|V|}(i restricted to V)."""
    return _blockwise(cumulants, p, i)


def phi_pi(moments, p, i):
    """phi_p(i) = product over blocks V of phi(word on V)."""
    return _blockwise(moments, p, i)


def _blockwise(table, p, i):
    p = Partition(p)
    i = tuple(i)
    if p.size != len(i):
        raise SizeMismatch("partition size %d vs tuple length %d" % (p.size, len(i)))
    if p.size > table.max_order:
        raise OrderExceeded("order %d beyond table max_order %d" % (p.size, table.max_order))
    out = Fraction(1)
    for block in p.blocks():
        out *= table.value(tuple(i[pos] for pos in block))
    return out


_NC_BLOCKS = {}


def _nc_block_positions(m):
    """Blocks (as position tuples) of every partition of NC(m), RGS-lex."""
    got = _NC_BLOCKS.get(m)
    if got is None:
        got = tuple((p, tuple(p.blocks())) for p in enumerate_category(S_PLUS, m))
        _NC_BLOCKS[m] = got
    return got


def moments_from_cumulants(ct):
    """phi(i) = sum over pi in NC(m) of kappa_pi(i), every order <= M."""
    vals = _transform(ct, weights=None)
    return MomentTable(ct.n, ct.max_order, vals, repr=ct.repr)


def cumulants_from_moments(mt):
    """Moebius inversion of the moment-cumulant formula over NC(m)."""
    vals = _transform(mt, weights=mobius_to_top_nc)
    return CumulantTable(mt.n, mt.max_order, vals, repr=mt.repr)


def _transform(table, weights):
    if table.repr == KERNEL:
        return _transform_kernel(table, weights)
    return _transform_dense(table, weights)


def _transform_kernel(table, weights):
    out = {}
    for m in range(1, table.max_order + 1):
        w = weights(m) if weights else None
        layer = {}
        for tau in table.values[m]:
            total = Fraction(0)
            for p, blocks in _nc_block_positions(m):
                term = Fraction(1)
                for block in blocks:
                    sub = tuple(tau[pos] for pos in block)
                    seen = {}
                    canon = []
                    for lab in sub:
                        if lab not in seen:
                            seen[lab] = len(seen)
                        canon.append(seen[lab])
                    term *= table.values[len(block)][Partition(canon)]
                total += term if w is None else w[p] * term
            layer[tau] = total
        out[m] = layer
    return out


def _transform_dense(table, weights):
    """Dense transform over a per-order common denominator.

    Order-m source values are scaled to integers over D_m; each pi in
    NC(m) then contributes an integer product times a fixed multiplier,
    so the whole tuple loop runs in integer arithmetic.
    """
    n = table.n
    flats = {}
    dens = {}
    for m in range(1, table.max_order + 1):
        layer = table.values[m]
        D = lcm(*(v.denominator for v in layer.values())) if layer else 1
        flat = [0] * (n ** m)
        for i, v in layer.items():
            rank = 0
            for e in i:
                rank = rank * n + (e - 1)
            flat[rank] = int(v * D)
        flats[m] = flat
        dens[m] = D
    out = {}
    for m in range(1, table.max_order + 1):
        pis = _nc_block_positions(m)
        w = weights(m) if weights else None
        den_pi = [prod(dens[len(b)] for b in blocks) for _, blocks in pis]
        dstar = lcm(*den_pi) if den_pi else 1
        mults = []
        for (p, blocks), dp in zip(pis, den_pi):
            mult = dstar // dp
            if w is not None:
                mult *= w[p]
            mults.append((blocks, mult))
        layer = {}
        for digits in itertools.product(range(n), repeat=m):
            acc = 0
            for blocks, mult in mults:
                term = mult
                for block in blocks:
                    rank = 0
                    for pos in block:
                        rank = rank * n + digits[pos]
                    term *= flats[len(block)][rank]
                acc += term
            layer[tuple(d + 1 for d in digits)] = Fraction(acc, dstar)
        out[m] = layer
    return out

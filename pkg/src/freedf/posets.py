"""Moebius functions on finite posets of partitions.

The generic recursion mu(s,s) = 1, mu(s,p) = -sum_{s<=t<p} mu(s,t) works
on any finite poset and is the normative oracle. Two accelerated paths
exist: the closed form on the full partition lattice P(m), and a cached
column mu(., 1_m) on the non-crossing lattice NC(m), which is the weight
vector of the cumulant-moment transform.
"""

from math import factorial

from .errors import NotComparable, NotInPoset
from .partitions import leq, num_blocks, one_block


class FinitePoset:
    """A finite poset of partitions under refinement order."""

    def __init__(self, elements):
        self.elements = tuple(elements)
        self.index = {p: k for k, p in enumerate(self.elements)}
        self._memo = {}

    def __len__(self):
        return len(self.elements)

    def mobius(self, s, p):
        si = self.index.get(s)
        pi = self.index.get(p)
        if si is None or pi is None:
            raise NotInPoset("partition not among the poset elements")
        if not leq(s, p):
            raise NotComparable("mobius requires s <= p")
        return self._mu(si, pi)

    def _mu(self, si, pi):
        if si == pi:
            return 1
        got = self._memo.get((si, pi))
        if got is None:
            s = self.elements[si]
            p = self.elements[pi]
            total = 0
            for ti, t in enumerate(self.elements):
                if ti != pi and leq(s, t) and leq(t, p):
                    total += self._mu(si, ti)
            got = -total
            self._memo[(si, pi)] = got
        return got


def mobius(poset, s, p):
    return poset.mobius(s, p)


def mobius_to_top_full_lattice(p):
    """mu_{P(m)}(p, 1_m) = (-1)^(#p-1) (#p-1)! on the full lattice."""
    k = num_blocks(p)
    if k == 0:
        return 1
    return (1 if (k - 1) % 2 == 0 else -1) * factorial(k - 1)


_CAT_POSETS = {}


def category_poset(cat, m):
    """The induced poset on C(m), built once per (cat, m)."""
    from .categories import enumerate_category

    got = _CAT_POSETS.get((cat, m))
    if got is None:
        got = FinitePoset(enumerate_category(cat, m))
        _CAT_POSETS[(cat, m)] = got
    return got


_NC_TOP_COLUMNS = {}


def mobius_to_top_nc(m):
    """The column mu_{NC(m)}(., 1_m) as a dict over NC(m).

    Computed by the dual recursion mu(s,1) = -sum_{s<t} mu(t,1),
    walking block counts upward from the one-block partition. This is
    the Moebius function of the NC(m) lattice itself; it differs from
    mobius_to_top_full_lattice from m = 4 on.
    """
    got = _NC_TOP_COLUMNS.get(m)
    if got is None:
        from .categories import S_PLUS, enumerate_category

        elems = enumerate_category(S_PLUS, m)
        top = one_block(m)
        by_blocks = {}
        for p in elems:
            by_blocks.setdefault(num_blocks(p), []).append(p)
        col = {top: 1}
        for nb in sorted(by_blocks):
            if nb == 1:
                continue
            coarser = [q for k in range(1, nb) for q in by_blocks.get(k, ())]
            for p in by_blocks[nb]:
                col[p] = -sum(col[q] for q in coarser if leq(p, q))
        got = col
        _NC_TOP_COLUMNS[m] = got
    return got

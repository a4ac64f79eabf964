"""Invariance certification, coefficient extraction, and reconstruction.

A joint distribution over n variables is G_n-invariant for one of the
four categories exactly when, at every order m, its kernel-class moments
phi~(tau) decompose as sum_{sigma in C(m), sigma <= tau} c_sigma. The
checker recovers candidate coefficients by Weingarten averaging (they
equal phi applied to the averaged words b_pi) and then verifies the
decomposition residually, so PASS certifies invariance and FAIL carries
explicit witnesses.

Coefficient families come in two flavors: c_pi (moment-side) and C_pi
(cumulant-side), convertible into each other by a Moebius sum over
NC(m); both conversions use the NC(m)-lattice Moebius column.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .categories import O_PLUS, S_PLUS, category_contains, enumerate_category
from .cumulants import (
    KERNEL,
    CumulantTable,
    MomentTable,
    cumulants_from_moments,
    kernel_classes,
    moments_from_cumulants,
    representative_tuple,
)
from .errors import (
    FreedfError,
    IncompleteRestriction,
    MissingLowerOrder,
    NotInvariant,
    NotKernelRepresentable,
    OrderExceedsN,
)
from .partitions import Partition, kernel, leq, num_blocks, render_index_tuple, restrict
from .posets import category_poset, mobius_to_top_nc
from .rationals import format_rational
from .weingarten import weingarten

MAX_WITNESSES = 100


def _falling(n, k):
    out = 1
    for t in range(k):
        out *= n - t
    return out


@dataclass
class CoefficientSlice:
    """One order of a coefficient family, with uniqueness information."""

    cat: object
    m: int
    values: dict
    unique: bool = True


@dataclass
class InvarianceReport:
    verdict: str
    category: object
    n: int
    max_order: int
    coefficients: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    @property
    def passed(self):
        return self.verdict == "PASS"

    def to_json(self):
        return {
            "verdict": self.verdict,
            "category": self.category.value,
            "n": self.n,
            "max_order": self.max_order,
            "coefficients": {
                str(m): {str(p): format_rational(v) for p, v in sl.items()}
                for m, sl in self.coefficients.items()
            },
            "witnesses": [
                {
                    "m": m,
                    "tuple": render_index_tuple(i),
                    "expected": format_rational(exp),
                    "actual": format_rational(act),
                }
                for m, i, exp, act in self.witnesses
            ],
        }


def averaged_coefficients(mt, cat, m):
    """c^avg_sigma = sum_pi Wg(sigma,pi) S_pi with S_pi the delta-sum.

    S_pi sums phi over all tuples whose kernel refines above pi; for
    kernel tables that is sum over classes tau >= pi of (n)_{#tau}
    phi~(tau), the falling factorial counting the tuples in the class.
    """
    basis = enumerate_category(cat, m)
    if not basis:
        return {}
    n = mt.n
    class_sums = {}
    if mt.repr == KERNEL:
        for tau, v in mt.values[m].items():
            class_sums[tau] = _falling(n, num_blocks(tau)) * v
    else:
        for i, v in mt.values[m].items():
            tau = kernel(i)
            class_sums[tau] = class_sums.get(tau, Fraction(0)) + v
    S = []
    for p in basis:
        S.append(sum((v for tau, v in class_sums.items() if leq(p, tau)), Fraction(0)))
    wg = weingarten(cat, m, n)
    out = {}
    for a, sigma in enumerate(basis):
        row = wg.entries[a]
        out[sigma] = sum((row[b] * S[b] for b in range(len(basis)) if S[b]), Fraction(0))
    return out


def check_invariance(mt, cat, up_to=None):
    """Certify G_n-invariance order by order; exact PASS/FAIL report."""
    M = mt.max_order if up_to is None else min(up_to, mt.max_order)
    coefficients = {}
    residuals = {}
    witnesses = []
    for m in range(1, M + 1):
        cavg = averaged_coefficients(mt, cat, m)
        coefficients[m] = cavg
        predicted = {}
        for tau in kernel_classes(m, mt.n):
            predicted[tau] = sum((v for sigma, v in cavg.items() if leq(sigma, tau)), Fraction(0))
        layer_resid = {}
        if mt.repr == KERNEL:
            for tau in sorted(mt.values[m]):
                r = mt.values[m][tau] - predicted[tau]
                layer_resid[tau] = r
                if r != 0 and len(witnesses) < MAX_WITNESSES:
                    witnesses.append((m, representative_tuple(tau), predicted[tau], mt.values[m][tau]))
        else:
            for i in sorted(mt.values[m]):
                tau = kernel(i)
                r = mt.values[m][i] - predicted[tau]
                if tau not in layer_resid or layer_resid[tau] == 0:
                    layer_resid[tau] = r
                if r != 0 and len(witnesses) < MAX_WITNESSES:
                    witnesses.append((m, i, predicted[tau], mt.values[m][i]))
        residuals[m] = layer_resid
    ok = all(r == 0 for layer in residuals.values() for r in layer.values()) and not witnesses
    return InvarianceReport(
        "PASS" if ok else "FAIL", cat, mt.n, mt.max_order, coefficients, residuals, witnesses
    )


def _kernel_view_or_fail(table, m):
    try:
        return table.kernel_view(m)
    except NotKernelRepresentable as e:
        raise NotInvariant("table is not kernel-uniform at order %d: %s" % (m, e)) from None


def _solve_slice(view, cat, m, n, fallback):
    """Shared solver body for moment- and cumulant-side coefficients."""
    basis = enumerate_category(cat, m)
    classes = kernel_classes(m, n)
    if not basis:
        bad = [tau for tau in classes if view[tau] != 0]
        if bad:
            raise NotInvariant(
                "C(%d) is empty for %s but the table is nonzero at kernel %s" % (m, cat, bad[0])
            )
        return CoefficientSlice(cat, m, {}, True)
    if m <= n:
        poset = category_poset(cat, m)
        values = {}
        for p in basis:
            values[p] = sum(
                (view[s] * poset.mobius(s, p) for s in basis if leq(s, p)), Fraction(0)
            )
        unique = True
    else:
        if not fallback:
            raise OrderExceedsN("order m=%d exceeds n=%d and fallback is disabled" % (m, n))
        values, unique = _zeta_solve(view, basis, classes)
    for tau in classes:
        total = sum((values[s] for s in basis if leq(s, tau)), Fraction(0))
        if total != view[tau]:
            raise NotInvariant(
                "no coefficient family reproduces the table at order %d, kernel %s" % (m, tau)
            )
    return CoefficientSlice(cat, m, values, unique)


def _zeta_solve(view, basis, classes):
    """Exact elimination of phi~(tau) = sum_{sigma<=tau} c_sigma.

    Used beyond the m <= n regime where the triangular route is not
    available. Free variables are pinned to 0 and uniqueness reported.
    """
    rows = []
    for tau in classes:
        rows.append([Fraction(1) if leq(s, tau) else Fraction(0) for s in basis] + [view[tau]])
    ncols = len(basis)
    pivots = []
    r = 0
    for col in range(ncols):
        pr = next((k for k in range(r, len(rows)) if rows[k][col] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pivot = rows[r][col]
        rows[r] = [x / pivot for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    for k in range(r, len(rows)):
        if rows[k][ncols] != 0:
            raise NotInvariant("the kernel-class system is inconsistent")
    values = {s: Fraction(0) for s in basis}
    for row, col in zip(rows, pivots):
        values[basis[col]] = row[ncols]
    return values, len(pivots) == ncols


def solve_moment_coefficients(mt, cat, m, fallback=True):
    """The c_pi family at order m, by Moebius inversion on C(m)."""
    return _solve_slice(_kernel_view_or_fail(mt, m), cat, m, mt.n, fallback)


def solve_cumulant_coefficients(ct, cat, m, fallback=True):
    """The C_pi family at order m, same route applied to kappa~."""
    return _solve_slice(_kernel_view_or_fail(ct, m), cat, m, ct.n, fallback)


def _family_get(cf, order):
    if order not in cf:
        raise MissingLowerOrder("coefficient family lacks order %d" % order)
    return cf[order]


def _nc_above(sigma):
    """Partitions of NC(m) above sigma, with their blocks."""
    m = sigma.size
    out = []
    for p in enumerate_category(S_PLUS, m):
        if leq(sigma, p):
            out.append((p, p.blocks()))
    return out


def c_from_C(cf, cat, m):
    """c_sigma = sum_{pi in NC(m), pi >= sigma} prod_V C_{sigma|V}."""
    _family_get(cf, m)
    out = {}
    for sigma in enumerate_category(cat, m):
        total = Fraction(0)
        for p, blocks in _nc_above(sigma):
            term = Fraction(1)
            for block in blocks:
                sub = restrict(sigma, block)
                term *= _family_get(cf, len(block))[sub]
            total += term
        out[sigma] = total
    return out


def C_from_c(cf, cat, m):
    """Inverse of c_from_C: weights mu_{NC(m)}(pi, 1_m) on the same sum."""
    _family_get(cf, m)
    mu = mobius_to_top_nc(m) if m else {}
    out = {}
    for sigma in enumerate_category(cat, m):
        total = Fraction(0)
        for p, blocks in _nc_above(sigma):
            term = Fraction(mu[p])
            for block in blocks:
                sub = restrict(sigma, block)
                term *= _family_get(cf, len(block))[sub]
            total += term
        out[sigma] = total
    return out


def seed_coefficients(cat, n, M, seed):
    """The deterministic C_pi draw used by generate_invariant_model."""
    rng = random.Random(seed)
    out = {}
    for m in range(1, M + 1):
        sl = {}
        for p in enumerate_category(cat, m):
            a = rng.randint(-9, 9)
            b = rng.randint(1, 4)
            sl[p] = Fraction(a, b)
        out[m] = sl
    return out


def generate_invariant_model(cat, n, M, seed):
    """A kernel moment table that is G_n-invariant by construction.

    Draws C_pi coefficients, assembles the kernel-level cumulants
    kappa~(tau) = sum_{pi in C(m), pi <= tau} C_pi, and pushes them
    through the moment-cumulant formula. No positivity is claimed: the
    table realizes the combinatorial invariance conditions, which are
    linear-algebraic and do not require phi to be a state.
    """
    floor = 2 if cat is O_PLUS else 4
    if n < floor:
        raise ValueError("invariance machinery for %s needs n >= %d, got n=%d" % (cat, floor, n))
    C = seed_coefficients(cat, n, M, seed)
    layers = {}
    for m in range(1, M + 1):
        basis = C[m]
        layer = {}
        for tau in kernel_classes(m, n):
            layer[tau] = sum((v for p, v in basis.items() if leq(p, tau)), Fraction(0))
        layers[m] = layer
    ct = CumulantTable(n, M, layers, repr=KERNEL)
    return moments_from_cumulants(ct)


def semicircular_model(n, M):
    """phi~(tau) = number of non-crossing pairings below tau."""
    layers = {}
    for m in range(1, M + 1):
        pairings = enumerate_category(O_PLUS, m)
        layer = {}
        for tau in kernel_classes(m, n):
            layer[tau] = Fraction(sum(1 for p in pairings if leq(p, tau)))
        layers[m] = layer
    return MomentTable(n, M, layers, repr=KERNEL)


def normalized_block_sum(mt, p):
    """(1/n^k) sum over tuples with kernel above p of their moments."""
    p = Partition(p)
    if p.size % 2 == 1 or not category_contains(O_PLUS, p):
        raise ValueError("p must be a non-crossing pairing, got %s" % (p,))
    k = p.size // 2
    n = mt.n
    view = mt.kernel_view(p.size)
    total = sum(
        (_falling(n, num_blocks(tau)) * v for tau, v in view.items() if leq(p, tau)),
        Fraction(0),
    )
    return total / Fraction(n) ** k


def reconstruct_infinite(phi_tilde, cat, i):
    """Moments of the infinite invariant sequence from phi~ on C(m).

    phi_tilde maps each order m to {pi in C(m): value}; entries of i may
    range over all positive integers. Tuples with empty C_<=(i) get 0.
    """
    i = tuple(i)
    m = len(i)
    if m == 0:
        return Fraction(1)
    basis = enumerate_category(cat, m)
    view = phi_tilde.get(m)
    if view is None:
        raise IncompleteRestriction("phi~ lacks order %d" % m, missing=[str(m)])
    missing = [str(p) for p in basis if p not in view]
    if missing:
        raise IncompleteRestriction(
            "phi~ at order %d is missing %d values, e.g. %s" % (m, len(missing), missing[0]),
            missing=missing,
        )
    tau = kernel(i)
    below = [p for p in basis if leq(p, tau)]
    if not below:
        return Fraction(0)
    poset = category_poset(cat, m)
    total = Fraction(0)
    for p in below:
        for s in basis:
            if leq(s, p):
                total += view[s] * poset.mobius(s, p)
    return total


@dataclass
class ProbeEntry:
    kind: str
    m: int
    tau: Partition
    target: Fraction
    values: list
    verdict: str


@dataclass
class ProbeReport:
    category: object
    m: int
    entries: list
    verdict: str

    def to_json(self):
        return {
            "category": self.category.value,
            "m": self.m,
            "verdict": self.verdict,
            "entries": [
                {
                    "kind": e.kind,
                    "m": e.m,
                    "class": str(e.tau),
                    "target": format_rational(e.target),
                    "values": [[n, format_rational(v)] for n, v in e.values],
                    "verdict": e.verdict,
                }
                for e in self.entries
            ],
        }


def _decay_verdict(pairs, target, tolerance):
    devs = [abs(v - target) for _, v in pairs]
    if all(d <= tolerance for d in devs):
        return "DECAY"
    if all(a >= b for a, b in zip(devs, devs[1:])) and devs[-1] < devs[0]:
        return "DECAY"
    return "NO-DECAY"


def asymptotic_freeness_probe(models, cat, m, tolerance=Fraction(1, 10 ** 9)):
    """Track the vanishing (or unit-limit) classes across a family in n.

    For s+ the probed quantities are the kernel cumulants kappa~(tau)
    over non-crossing tau with more than one block (mixed cumulants must
    vanish for asymptotic freeness). For o+ they are the pair-kernel
    cumulants at orders 2k >= 4 (target 0) and the pair-kernel moments
    (target 1).
    """
    if cat not in (S_PLUS, O_PLUS):
        raise FreedfError("asymptotics probe supports categories s+ and o+ only")
    models = sorted(models, key=lambda t: t.n)
    if not models:
        raise FreedfError("asymptotics probe needs at least one table")
    min_n = models[0].n
    kernels = []
    for mt in models:
        if mt.max_order < m:
            raise FreedfError("table at n=%d stops at order %d, below the probed order %d" % (mt.n, mt.max_order, m))
        report = check_invariance(mt, cat, up_to=m)
        if not report.passed:
            raise NotInvariant("table at n=%d is not %s-invariant" % (mt.n, cat))
        kernels.append(cumulants_from_moments(mt.to_kernel()))
    entries = []
    if cat is S_PLUS:
        probe = [t for t in enumerate_category(S_PLUS, m) if 1 < num_blocks(t) <= min_n]
        for tau in probe:
            pairs = [(ct.n, ct.values[m][tau]) for ct in kernels]
            entries.append(
                ProbeEntry("cumulant", m, tau, Fraction(0), pairs, _decay_verdict(pairs, Fraction(0), tolerance))
            )
    else:
        if m % 2 == 0:
            for tau in enumerate_category(O_PLUS, m):
                if num_blocks(tau) > min_n:
                    continue
                if m >= 4:
                    pairs = [(ct.n, ct.values[m][tau]) for ct in kernels]
                    entries.append(
                        ProbeEntry("cumulant", m, tau, Fraction(0), pairs, _decay_verdict(pairs, Fraction(0), tolerance))
                    )
                pairs = [(mt.n, mt.kernel_view(m)[tau]) for mt in models]
                entries.append(
                    ProbeEntry("moment", m, tau, Fraction(1), pairs, _decay_verdict(pairs, Fraction(1), tolerance))
                )
    verdict = "DECAY" if all(e.verdict == "DECAY" for e in entries) else "NO-DECAY"
    return ProbeReport(cat, m, entries, verdict)

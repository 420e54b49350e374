"""Base change with the integral basis, the integral cup product, and the
universal (polynomial-in-n) structure constants.

An integral-basis symbol expands into creation symbols label by label: the
unit-labeled subpartition contributes a single term weighted 1/z, the
point-labeled subpartition passes through, and each H^2-labeled subpartition
expands through the inverse power-sum/monomial base change.  The inverse
direction uses z and the forward base change, and always lands in integers.

Products of integral classes are computed by converting to creation symbols,
multiplying in the symmetric-group model, and converting back once at the
end; intermediate coefficients are exact rationals.
"""

from fractions import Fraction
from functools import cache
from itertools import product
from typing import NamedTuple

from .hilb_basis import (
    an_sort_key,
    an_z,
    canonical_class,
    deg,
    pad_class,
    reduce_class,
)
from .lehn_sorger import mult_an
from .partitions import part_of_weight, part_z
from .symfunc import psi, psi_inv

__all__ = [
    "int_to_crea",
    "crea_to_int",
    "cup_int",
    "cup_int_list",
    "cup_universal",
    "UniversalCoeff",
    "NonIntegralError",
]


class NonIntegralError(ArithmeticError):
    """A coefficient that must be an integer came out fractional."""


def _as_int(value):
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise NonIntegralError(f"non-integral coefficient {value}")
        return int(value)
    return value


def _label_subparts(sym):
    """Split a symbol into its per-label subpartitions, labels ascending."""
    buckets = {}
    for p, l in zip(*sym):
        buckets.setdefault(l, []).append(p)
    return [
        (label, tuple(sorted(parts, reverse=True)))
        for label, parts in sorted(buckets.items())
    ]


def _tensor(factor_lists):
    """Combine per-label expansions into full symbols with multiplied weights."""
    out = {}
    for combo in product(*factor_lists):
        pairs = []
        coeff = Fraction(1)
        for pair_list, c in combo:
            pairs.extend(pair_list)
            coeff *= c
        sym = canonical_class(
            tuple(p for p, _ in pairs), tuple(l for _, l in pairs)
        )
        out[sym] = out.get(sym, Fraction(0)) + coeff
    return tuple((sym, c) for sym, c in sorted(out.items()) if c)


@cache
def _int_to_crea_items(sym):
    factors = []
    for label, parts in _label_subparts(sym):
        pairs_of = lambda rho, lab=label: tuple((p, lab) for p in rho)
        if label == 0:
            factors.append([(pairs_of(parts), Fraction(1, part_z(parts)))])
        elif label == 23:
            factors.append([(pairs_of(parts), Fraction(1))])
        else:
            opts = []
            for rho in part_of_weight(sum(parts)):
                c = psi_inv(parts, rho)
                if c:
                    opts.append((pairs_of(rho), c))
            factors.append(opts)
    return _tensor(factors)


@cache
def _crea_to_int_items(sym):
    factors = []
    for label, parts in _label_subparts(sym):
        pairs_of = lambda nu, lab=label: tuple((p, lab) for p in nu)
        if label == 0:
            factors.append([(pairs_of(parts), Fraction(part_z(parts)))])
        elif label == 23:
            factors.append([(pairs_of(parts), Fraction(1))])
        else:
            opts = []
            for nu in part_of_weight(sum(parts)):
                c = psi(parts, nu)
                if c:
                    opts.append((pairs_of(nu), Fraction(c)))
            factors.append(opts)
    return tuple((sym2, _as_int(c)) for sym2, c in _tensor(factors))


def int_to_crea(sym, n):
    """Expand an integral-basis symbol into creation symbols at ambient n.

    Exact rational coefficients; the zero class (overweight symbol) gives {}.
    """
    padded = pad_class(canonical_class(*sym), n)
    if padded is None:
        return {}
    return dict(_int_to_crea_items(padded))


def crea_to_int(sym, n):
    """Expand a creation symbol in the integral basis; integer coefficients."""
    padded = pad_class(canonical_class(*sym), n)
    if padded is None:
        return {}
    return dict(_crea_to_int_items(padded))


def _mult_oriented(p, q, n):
    # symmetrizing the side with the larger stabilizer means fewer conjugates
    if an_z(pad_class(p, n)) >= an_z(pad_class(q, n)):
        return mult_an(p, q, n)
    return mult_an(q, p, n)


def _crea_product(acc, items, n):
    out = {}
    for p, va in acc.items():
        for q, vb in items:
            w = va * vb
            for e, z in _mult_oriented(p, q, n).items():
                out[e] = out.get(e, Fraction(0)) + w * z
    return {e: v for e, v in out.items() if v}


def _to_integral(acc):
    out = {}
    for e, v in acc.items():
        for s, c in _crea_to_int_items(e):
            out[s] = out.get(s, Fraction(0)) + v * c
    return {s: _as_int(v) for s, v in out.items() if v}


def cup_int(a, b, n):
    """Cup product of two integral classes on Hilb^n, as {symbol: int}."""
    ia = int_to_crea(a, n)
    ib = int_to_crea(b, n)
    if not ia or not ib:
        return {}
    acc = _crea_product(ia, tuple(ib.items()), n)
    return _to_integral(acc)


def cup_int_list(factors, n):
    """Cup product of a list of integral classes; equals iterated cup_int.

    Stays in the creation basis between factors, converting back once.
    """
    if not factors:
        raise ValueError("need at least one factor")
    acc = int_to_crea(factors[0], n)
    for f in factors[1:]:
        if not acc:
            return {}
        items = tuple(int_to_crea(f, n).items())
        if not items:
            return {}
        acc = _crea_product(acc, items, n)
    return _to_integral(acc)


# ---------------------------------------------------------------------------
# universal structure constants


class UniversalCoeff(NamedTuple):
    """A reduced target symbol with its coefficient polynomial in n (ascending)."""

    target: tuple
    poly: tuple

    def evaluate(self, n):
        acc = Fraction(0)
        for c in reversed(self.poly):
            acc = acc * n + c
        return acc

    def pretty(self):
        terms = []
        for i, c in enumerate(self.poly):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*n")
            else:
                terms.append(f"{c}*n^{i}")
        return "c(n) = " + (" + ".join(terms) if terms else "0")


class UniversalDegreeError(ArithmeticError):
    """A validation sample disagreed with the interpolated polynomial."""


def _lagrange(points):
    coeffs = [Fraction(0)] * len(points)
    for xi, yi in points:
        basis = [Fraction(1)]
        denom = Fraction(1)
        for xj, _ in points:
            if xj == xi:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= basis[k + 1] * xj
            denom *= xi - xj
        w = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += w * c
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def cup_universal(a, b):
    """The structure-constant polynomials c(n) of a product of reduced symbols.

    Products are sampled at consecutive ambient sizes starting at
    max(weight(a), weight(b)); each reduced target of weight w is interpolated
    from samples with n >= w, one spare sample per target cross-checks the
    degree bound weight(a) + weight(b) - w.
    """
    a = reduce_class(canonical_class(*a))
    b = reduce_class(canonical_class(*b))
    wa, wb = sum(a[0]), sum(b[0])
    n0 = max(wa, wb)
    total_deg = deg(a) + deg(b)
    min_target_weight = (total_deg + 3) // 4
    max_degree = wa + wb - min_target_weight
    top = max(wa + wb + 1, n0 + max_degree + 1)

    samples = {}
    for n in range(n0, top + 1):
        samples[n] = {
            reduce_class(sym): c for sym, c in cup_int(a, b, n).items()
        }

    targets = sorted({t for obs in samples.values() for t in obs}, key=an_sort_key)
    out = []
    for target in targets:
        wt = sum(target[0])
        bound = wa + wb - wt
        nodes = [n for n in range(max(n0, wt), top + 1)]
        interp_nodes = nodes[: bound + 1]
        points = [(n, samples[n].get(target, 0)) for n in interp_nodes]
        poly = _lagrange(points)
        uc = UniversalCoeff(target, poly)
        for n in nodes[bound + 1 :]:
            expected = samples[n].get(target, 0)
            if uc.evaluate(n) != expected:
                raise UniversalDegreeError(
                    f"target {target}: interpolant predicts {uc.evaluate(n)} "
                    f"at n={n} but the product gives {expected}"
                )
        out.append(uc)
    return out

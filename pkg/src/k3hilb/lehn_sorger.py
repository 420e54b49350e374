"""The symmetric-group model for the cohomology ring of Hilb^n(K3).

Elements are spanned by terms (pi, labels): a permutation of {0,...,n-1}
written in disjoint cycles, each cycle carrying a K3 basis class.  The
product of two terms is supported on pi*tau and is computed orbit by orbit of
the subgroup <pi, tau>: cup all labels inside an orbit, multiply by the Euler
factor (24*x)^g for the graph defect g of the orbit, then redistribute onto
the pi*tau-cycles with the iterated adjoint comultiplication.

Symbols (parts, labels) embed by symmetrization: a symbol maps to the sum of
all conjugates of its model term.  to_sn returns the distinct conjugates and
the integer multiplicity with which each occurs; mult_an combines both to
multiply symbols, staying in exact integers.
"""

from functools import cache, lru_cache
from itertools import combinations, permutations
from math import factorial

from . import k3
from .hilb_basis import an_z, canonical_class, pad_class
from .partitions import compose, cycles_of, perm_from_cycles

__all__ = [
    "canonical_term",
    "model_term",
    "common_orbits",
    "graph_defect",
    "mult_sn",
    "to_sn",
    "mult_an",
]


def _orient_cycle(cyc):
    """Rotate a cycle so its maximal element comes first."""
    m = cyc.index(max(cyc))
    return cyc[m:] + cyc[:m]


def _term_sort_key(piece):
    cyc, label = piece
    return (-len(cyc), -label, tuple(-v for v in cyc))


def canonical_term(pieces):
    """Canonical form of a labeled-cycle term: oriented cycles, fixed sort."""
    out = [(_orient_cycle(tuple(c)), label) for c, label in pieces]
    out.sort(key=_term_sort_key)
    return tuple(out)


def model_term(parts, labels):
    """The model term of a symbol: cycles on consecutive points, largest first."""
    pieces = []
    start = 0
    for size, label in zip(parts, labels):
        pieces.append((tuple(range(start, start + size)), label))
        start += size
    return canonical_term(pieces)


def common_orbits(p, t):
    """Orbits of the subgroup generated by two permutations on the same points.

    Computed by folding the cycles of t into the cycles of p, merging
    everything an incoming cycle touches.  Returned as sorted tuples, ordered
    by (size, elements).
    """
    if len(p) != len(t):
        raise ValueError("permutations act on different point sets")
    orbits = [set(c) for c in cycles_of(p)]
    for cyc in cycles_of(t):
        touched = set(cyc)
        rest = []
        for orb in orbits:
            if orb & touched:
                touched |= orb
            else:
                rest.append(orb)
        rest.append(touched)
        orbits = rest
    result = [tuple(sorted(orb)) for orb in orbits]
    result.sort(key=lambda orb: (len(orb), orb))
    return result


def _defect(orbit_size, n_p, n_t, n_pt):
    twice = orbit_size + 2 - n_p - n_t - n_pt
    if twice < 0 or twice % 2:
        raise ArithmeticError(
            f"graph defect 2g = {twice} is not a nonnegative even integer"
        )
    return twice // 2


def graph_defect(p, t, orbit):
    """The graph defect of a common orbit of p and t; a nonnegative integer."""
    members = set(orbit)
    pt = compose(p, t)

    def cycles_inside(perm):
        return sum(1 for c in cycles_of(perm) if c[0] in members)

    return _defect(len(members), cycles_inside(p), cycles_inside(t), cycles_inside(pt))


@lru_cache(maxsize=262144)
def _mult_sn_items(t1, t2):
    """Product of two canonical terms, as sorted ((term, coeff), ...) items."""
    n = sum(len(c) for c, _ in t1)
    if sum(len(c) for c, _ in t2) != n:
        raise ValueError("terms live on different point counts")
    p = perm_from_cycles(n, [c for c, _ in t1])
    t = perm_from_cycles(n, [c for c, _ in t2])
    pt = compose(p, t)
    pt_cycles = cycles_of(pt)

    factors = []
    for orbit in common_orbits(p, t):
        members = set(orbit)
        labels = [lab for c, lab in t1 if c[0] in members]
        labels += [lab for c, lab in t2 if c[0] in members]
        target = [c for c in pt_cycles if c[0] in members]
        g = _defect(
            len(orbit),
            sum(1 for c, _ in t1 if c[0] in members),
            sum(1 for c, _ in t2 if c[0] in members),
            len(target),
        )
        glued = k3.cup_list(labels + [k3.POINT] * g)
        scale = 24**g
        pieces = []
        for r, v in glued.items():
            for out_labels, w in k3._coprod_items(len(target), r):
                pieces.append((tuple(zip(target, out_labels)), v * w * scale))
        if not pieces:
            return ()
        factors.append(pieces)

    acc = {}

    def expand(i, pieces, coeff):
        if i == len(factors):
            term = canonical_term(pieces)
            acc[term] = acc.get(term, 0) + coeff
            return
        for more, v in factors[i]:
            expand(i + 1, pieces + list(more), coeff * v)

    expand(0, [], 1)
    return tuple((term, v) for term, v in sorted(acc.items()) if v)


def mult_sn(a, b):
    """Product of two labeled-cycle terms as a sparse {term: coeff} map."""
    return dict(_mult_sn_items(canonical_term(a), canonical_term(b)))


def _label_shape(labels):
    """Relabel to a canonical pattern preserving order and equality of values."""
    distinct = sorted(set(labels))
    pattern = tuple(distinct.index(l) + 1 for l in labels)
    back = {i + 1: l for i, l in enumerate(distinct)}
    return pattern, back


def _distinct_cycles(support):
    """All distinct cycles on a support, oriented with the maximum first."""
    support = sorted(support)
    head = support[-1]
    rest = support[:-1]
    return [(head,) + p for p in permutations(rest)]


@cache
def _symmetrized_shape(parts, pattern):
    """Distinct conjugates of the model term with pattern labels, plus multiplicity.

    Conjugates are enumerated directly: group equal (part, label) pairs, pick
    unordered disjoint supports for each group (minima increasing breaks the
    ordering ambiguity), and take every cyclic arrangement on each support.
    The multiplicity is n!/#terms, the size of the stabilizer.
    """
    n = sum(parts)
    groups = []
    for size, label in zip(parts, pattern):
        if groups and groups[-1][0] == (size, label):
            groups[-1][1] += 1
        else:
            groups.append([(size, label), 1])

    terms = []

    def fill_group(points, gi, count, floor, pieces):
        if count == 0:
            place(points, gi + 1, pieces)
            return
        size = groups[gi][0][0]
        label = groups[gi][0][1]
        usable = sorted(points)
        for support in combinations(usable, size):
            if support[0] <= floor:
                continue
            remaining = points - set(support)
            for cyc in _distinct_cycles(support):
                pieces.append((cyc, label))
                fill_group(remaining, gi, count - 1, support[0], pieces)
                pieces.pop()

    def place(points, gi, pieces):
        if gi == len(groups):
            terms.append(canonical_term(pieces))
            return
        fill_group(points, gi, groups[gi][1], -1, pieces)

    place(frozenset(range(n)), 0, [])
    terms = tuple(sorted(set(terms)))
    total = factorial(n)
    mult, rem = divmod(total, len(terms))
    if rem:
        raise ArithmeticError("conjugate count does not divide n!")
    return terms, mult


def to_sn(sym, n):
    """Distinct conjugates of a symbol's model term at ambient n, with multiplicity.

    multiplicity * (sum of the returned terms) equals the full symmetrization
    sum over all of S_n; the multiplicity equals the labeled stabilizer order.
    """
    padded = pad_class(sym, n)
    if padded is None:
        raise ValueError(f"symbol of weight {sum(sym[0])} does not fit ambient n={n}")
    parts, labels = padded
    pattern, back = _label_shape(labels)
    shaped, mult = _symmetrized_shape(parts, pattern)
    assert mult == an_z(padded)
    terms = tuple(
        tuple((cyc, back[lab]) for cyc, lab in term) for term in shaped
    )
    return terms, mult


def _class_of_term(term):
    return canonical_class(
        tuple(len(cyc) for cyc, _ in term), tuple(lab for _, lab in term)
    )


@lru_cache(maxsize=262144)
def _mult_an_cached(a, b, n):
    terms, mult = to_sn(a, n)
    pb = pad_class(b, n)
    b_model = model_term(*pb)
    acc = {}
    for t in terms:
        for sn_term, v in _mult_sn_items(t, b_model):
            key = _class_of_term(sn_term)
            acc[key] = acc.get(key, 0) + v
    return tuple((sym, mult * v) for sym, v in sorted(acc.items()) if v)


def mult_an(a, b, n):
    """Product of two creation symbols at ambient n, as {symbol: int coeff}.

    Symbols heavier than n are the zero class, so the product is empty.
    """
    a = canonical_class(*a)
    b = canonical_class(*b)
    if sum(a[0]) > n or sum(b[0]) > n:
        return {}
    return dict(_mult_an_cached(a, b, n))

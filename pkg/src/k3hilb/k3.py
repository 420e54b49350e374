"""Integral cohomology of a projective K3 surface.

Basis indices 0..23: index 0 is the unit in H^0, indices 1..22 span H^2, and
index 23 is the point class x in H^4.  The intersection form on H^2 is
U + U + U + (-E8) + (-E8) laid out on index ranges 1-2, 3-4, 5-6, 7-14, 15-22,
extended to all of H* by B(1, x) = 1.

The comultiplication is the adjoint of the cup product with the sign twist
(B (x) B)(coprod(a), b (x) c) = -B(a, b cup c); iterating it produces the
k-fold coproducts used by the symmetric-group model, where the orientation
classes glue with Euler factors 24*x per unit of graph defect.
"""

from functools import cache

UNIT = 0
POINT = 23
INDICES = tuple(range(24))
H2_INDICES = tuple(range(1, 23))

# negative E8 intersection matrix
E8 = (
    (-2, 1, 0, 0, 0, 0, 0, 0),
    (1, -2, 1, 0, 0, 0, 0, 0),
    (0, 1, -2, 1, 0, 0, 0, 0),
    (0, 0, 1, -2, 1, 0, 0, 0),
    (0, 0, 0, 1, -2, 1, 1, 0),
    (0, 0, 0, 0, 1, -2, 0, 1),
    (0, 0, 0, 0, 1, 0, -2, 0),
    (0, 0, 0, 0, 0, 1, 0, -2),
)

# its integral inverse
INV_E8 = (
    (-2, -3, -4, -5, -6, -4, -3, -2),
    (-3, -6, -8, -10, -12, -8, -6, -4),
    (-4, -8, -12, -15, -18, -12, -9, -6),
    (-5, -10, -15, -20, -24, -16, -12, -8),
    (-6, -12, -18, -24, -30, -20, -15, -10),
    (-4, -8, -12, -16, -20, -14, -10, -7),
    (-3, -6, -9, -12, -15, -10, -8, -5),
    (-2, -4, -6, -8, -10, -7, -5, -4),
)


def deg(i):
    """Cohomological degree of the basis class with index i."""
    if i == UNIT:
        return 0
    if i == POINT:
        return 4
    if 1 <= i <= 22:
        return 2
    raise ValueError(f"not a K3 index: {i}")


def indices_of_degree(d):
    return {0: (UNIT,), 2: H2_INDICES, 4: (POINT,)}.get(d, ())


def _block_value(i, j, e8_table):
    i, j = min(i, j), max(i, j)
    if not 0 <= i <= j <= 23:
        raise ValueError(f"not a K3 index pair: ({i}, {j})")
    if i == 0:
        return 1 if j == 23 else 0
    if j == 23:
        return 0
    for lo in (1, 3, 5):  # the three hyperbolic planes
        if lo <= i <= lo + 1 and lo <= j <= lo + 1:
            return 0 if i == j else 1
    for lo in (7, 15):  # the two -E8 blocks
        if lo <= i <= lo + 7 and lo <= j <= lo + 7:
            return e8_table[i - lo][j - lo]
    return 0


def bil(i, j):
    """The symmetric bilinear form B on H*(S, Z)."""
    return _block_value(i, j, E8)


def bil_inv(i, j):
    """Entry of the inverse of B; integral since B is unimodular."""
    return _block_value(i, j, INV_E8)


def gram_matrix():
    """The full 24 x 24 matrix of B."""
    return [[bil(i, j) for j in INDICES] for i in INDICES]


def h2_gram_matrix():
    """The 22 x 22 matrix of B restricted to H^2."""
    return [[bil(i, j) for j in H2_INDICES] for i in H2_INDICES]


def cup_coeff(k, i, j):
    """Coefficient of basis class k in the cup product of classes i and j."""
    if i == UNIT:
        return 1 if k == j else 0
    if j == UNIT:
        return 1 if k == i else 0
    if i == POINT or j == POINT:
        return 0
    return bil(i, j) if k == POINT else 0


def cup_list(factors):
    """Cup product of a list of basis classes, as a sparse {index: coeff} map.

    The empty product is the unit; any product of total degree > 4 vanishes.
    """
    nontrivial = [i for i in factors if i != UNIT]
    if not nontrivial:
        return {UNIT: 1}
    if len(nontrivial) == 1:
        return {nontrivial[0]: 1}
    if len(nontrivial) == 2:
        i, j = nontrivial
        if i == POINT or j == POINT:
            return {}
        b = bil(i, j)
        return {POINT: b} if b else {}
    return {}


@cache
def _cup_nonzeros():
    return tuple(
        (k, i, j, cup_coeff(k, i, j))
        for k in INDICES
        for i in INDICES
        for j in INDICES
        if cup_coeff(k, i, j)
    )


@cache
def _coprod2(k):
    """Sparse coefficients of the comultiplication of basis class k."""
    acc = {}
    for kk, ii, jj, c in _cup_nonzeros():
        w = c * bil(kk, k)
        if not w:
            continue
        for i in INDICES:
            bi = bil_inv(i, ii)
            if not bi:
                continue
            for j in INDICES:
                bj = bil_inv(j, jj)
                if not bj:
                    continue
                key = (i, j)
                acc[key] = acc.get(key, 0) - bi * bj * w
    return tuple((key, v) for key, v in sorted(acc.items()) if v)


@cache
def _coprod_items(k, i):
    """(k-1)-fold iterated comultiplication of basis class i, as sorted items."""
    if k < 0:
        raise ValueError("coproduct arity must be nonnegative")
    if k == 0:
        # counit convention: only the point class pairs with the empty tensor
        return (((), 1),) if i == POINT else ()
    if k == 1:
        return (((i,), 1),)
    if k == 2:
        return _coprod2(i)
    acc = {}
    for (a, b), w in _coprod2(i):
        for rest, v in _coprod_items(k - 1, b):
            key = (a,) + rest
            acc[key] = acc.get(key, 0) + w * v
    return tuple((key, v) for key, v in sorted(acc.items()) if v)


def coprod_n(k, i):
    """Iterated comultiplication as a sparse {tuple of k indices: coeff} map."""
    return dict(_coprod_items(k, i))


def euler_power_multiplier(g):
    """Multiplication by the g-th power of the Euler class e = 24*x.

    Returns an operator on sparse K3 classes: the identity for g = 0; for
    g = 1 the unit component maps to 24*x and positive degrees die; for g >= 2
    everything dies since x cup x = 0.
    """
    if g < 0:
        raise ValueError("Euler power must be nonnegative")

    def op(cls):
        if g == 0:
            return dict(cls)
        if g >= 2:
            return {}
        c = cls.get(UNIT, 0)
        return {POINT: 24 * c} if c else {}

    return op

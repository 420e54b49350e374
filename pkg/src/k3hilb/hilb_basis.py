"""The integral basis of H*(Hilb^n(K3), Z) and its symbol algebra.

A basis symbol is a pair (parts, labels): a partition in lambda-notation and
an equally long tuple of K3 basis indices, one label per part.  The same
symbol shape indexes both the creation-operator basis and the integral basis;
which one is meant is a matter of context.  Canonical form sorts the
(part, label) pairs descending.

A symbol of weight w represents a class on Hilb^n for every n >= w by padding
with parts 1 labeled by the unit; for n < w it represents zero.  Reduced
symbols carry no (1, unit) padding pairs.
"""

from functools import cache

from . import k3
from .partitions import format_partition

__all__ = [
    "canonical_class",
    "an_weight",
    "deg",
    "an_z",
    "pad_class",
    "reduce_class",
    "an_sort_key",
    "hilb_operators",
    "hilb_base",
    "parse_class",
    "format_class",
    "check_reduced_weight_bounds",
    "ClassSyntaxError",
]


def canonical_class(parts, labels):
    """Build a symbol in canonical form; validates parts and label range."""
    parts = tuple(int(x) for x in parts)
    labels = tuple(int(x) for x in labels)
    if len(parts) != len(labels):
        raise ValueError(f"{len(parts)} parts but {len(labels)} labels")
    if any(p < 1 for p in parts):
        raise ValueError(f"parts must be positive: {parts}")
    if any(not 0 <= l <= 23 for l in labels):
        raise ValueError(f"labels must be K3 indices 0..23: {labels}")
    pairs = sorted(zip(parts, labels), reverse=True)
    return tuple(p for p, _ in pairs), tuple(l for _, l in pairs)


def an_weight(sym):
    return sum(sym[0])


def deg(sym):
    """Cohomological degree: 2*(weight - length) plus the label degrees."""
    parts, labels = sym
    return 2 * (sum(parts) - len(parts)) + sum(k3.deg(l) for l in labels)


def an_z(sym):
    """Order of the stabilizer of a labeled cycle type under conjugation.

    The labeled analogue of z: the product over groups of identical
    (part, label) pairs of part^count * count!.
    """
    parts, labels = sym
    z = 1
    run = 0
    prev = None
    for pair in zip(parts, labels):
        if pair == prev:
            run += 1
        else:
            for c in range(2, run + 1):
                z *= c
            run = 1
            prev = pair
        z *= pair[0]
    for c in range(2, run + 1):
        z *= c
    return z


def pad_class(sym, n):
    """The symbol at ambient n: pad with (1, unit) pairs, or None if overweight."""
    parts, labels = sym
    w = sum(parts)
    if w > n:
        return None
    k = n - w
    return parts + (1,) * k, labels + (k3.UNIT,) * k


def reduce_class(sym):
    """Strip (1, unit) padding pairs."""
    pairs = [(p, l) for p, l in zip(*sym) if (p, l) != (1, k3.UNIT)]
    return tuple(p for p, _ in pairs), tuple(l for _, l in pairs)


def an_sort_key(sym):
    """Canonical total order on symbols: weight, then parts, then labels."""
    parts, labels = sym
    return (sum(parts), parts, labels)


@cache
def _operators(n, d, max_size, max_label):
    """Weakly decreasing (size, label) sequences of total weight n, degree d."""
    if n == 0:
        return ((),) if d == 0 else ()
    if n < 0 or d < 0 or d % 2:
        return ()
    out = []
    for size in range(min(n, max_size), 0, -1):
        top_label = max_label if size == max_size else 23
        for label in range(top_label, -1, -1):
            rest_deg = d - (2 * (size - 1) + k3.deg(label))
            if rest_deg < 0:
                continue
            for rest in _operators(n - size, rest_deg, size, label):
                out.append(((size, label),) + rest)
    return tuple(out)


def hilb_operators(n, d):
    """All multisets of (part size, label) of weight n and degree d.

    Returned canonically sorted (pairs descending), without duplicates.
    """
    return _operators(n, d, n, 23)


@cache
def hilb_base(n, d):
    """The degree-d basis symbols for Hilb^n, in canonical order."""
    syms = [
        (tuple(p for p, _ in op), tuple(l for _, l in op))
        for op in hilb_operators(n, d)
    ]
    return tuple(sorted(syms, key=an_sort_key))


def check_reduced_weight_bounds(sym):
    """Weight window for reduced symbols: deg/4 <= weight <= deg."""
    w = an_weight(sym)
    d = deg(sym)
    return d <= 4 * w and w <= d


def format_class(sym):
    """Text form ``([3-2-1],[6,7,23])``; the empty symbol prints ``([],[])``."""
    parts, labels = sym
    return f"({format_partition(parts)},[{','.join(str(l) for l in labels)}])"


class ClassSyntaxError(ValueError):
    """Malformed class text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def parse_class(text):
    """Parse the ``([p-p-...],[l,l,...])`` grammar back into a canonical symbol.

    Non-canonical pair order is canonicalized, never rejected; length
    mismatches and out-of-range labels raise ValueError.
    """
    s = text.strip()
    offset = len(text) - len(text.lstrip())

    def fail(msg, pos):
        raise ClassSyntaxError(msg, offset + pos)

    if not s.startswith("("):
        fail("expected '('", 0)
    if not s.endswith(")"):
        fail("expected ')'", len(s) - 1)
    body = s[1:-1]
    lb = body.find("[")
    rb = body.find("]")
    if lb == -1 or rb == -1 or rb < lb:
        fail("expected bracketed partition like [2-1]", 1)
    # keep the positional pairing with the labels: do not sort parts here
    part_inner = body[lb + 1 : rb].strip()
    if part_inner:
        try:
            parts = [int(x) for x in part_inner.split("-")]
        except ValueError:
            fail("non-integer part in partition", 1 + lb)
    else:
        parts = []
    rest = body[rb + 1 :]
    comma = rest.find(",")
    if comma == -1:
        fail("expected ',' between partition and labels", 1 + rb + 1)
    lab = rest[comma + 1 :].strip()
    lab_pos = 1 + rb + 1 + comma + 1
    if not (lab.startswith("[") and lab.endswith("]")):
        fail("expected bracketed label list like [1,0]", lab_pos)
    inner = lab[1:-1].strip()
    if inner:
        try:
            labels = [int(x) for x in inner.split(",")]
        except ValueError:
            fail("non-integer label", lab_pos)
    else:
        labels = []
    try:
        return canonical_class(parts, labels)
    except ValueError as exc:
        fail(str(exc), 0)

"""Finitary operations on a finite domain and bounded clone generation.

An operation is stored as its full value table, indexed by the
lexicographic rank of the input tuple.  Identity is table-level: no
quotient by argument permutation is applied anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Domain
from .errors import Caps, DEFAULT_CAPS, InputError, InternalCheckError, ResourceLimitError


@dataclass(frozen=True, order=True)
class Operation:
    """A total k-ary function on the domain, as a canonical value table."""

    domain: Domain
    arity: int
    table: tuple

    def __post_init__(self):
        if self.arity < 1:
            raise InputError(f"operation arity must be >= 1, got {self.arity}")
        if len(self.table) != self.domain.size ** self.arity:
            raise InputError(
                f"table length {len(self.table)} != {self.domain.size}^{self.arity}"
            )
        for v in self.table:
            if not (0 <= v < self.domain.size):
                raise InputError(f"table entry {v} outside domain")

    def __call__(self, *args):
        return self.table[self.domain.tuple_rank(args)]

    def is_projection(self):
        return self.projection_index() is not None

    def projection_index(self):
        """1-based index i if this operation is the i-th projection, else None."""
        d, k = self.domain, self.arity
        for i in range(k):
            if all(t[i] == self.table[d.tuple_rank(t)] for t in d.tuples(k)):
                return i + 1
        return None

    def __repr__(self):
        return f"Operation(d={self.domain.size}, k={self.arity}, {self.table})"


def projection(domain, arity, index):
    """The projection onto the index-th argument (1-based)."""
    if not (1 <= index <= arity):
        raise InputError(f"projection index {index} out of range 1..{arity}")
    table = tuple(t[index - 1] for t in domain.tuples(arity))
    return Operation(domain, arity, table)


def all_projections(domain, arity):
    return [projection(domain, arity, i) for i in range(1, arity + 1)]


def superpose(f, gs):
    """The composition f[g_1..g_k]: inner operations share one arity."""
    gs = list(gs)
    if len(gs) != f.arity:
        raise InputError(f"superpose needs {f.arity} inner operations, got {len(gs)}")
    inner = gs[0].arity
    for g in gs:
        if g.domain != f.domain:
            raise InputError("superpose requires a shared domain")
        if g.arity != inner:
            raise InputError("inner operations must share one arity")
    d = f.domain
    table = tuple(
        f.table[d.tuple_rank(tuple(g.table[rank] for g in gs))]
        for rank in range(d.size**inner)
    )
    return Operation(d, inner, table)


def apply_to_tuples(f, xs):
    """Coordinatewise image of a k-sequence of equal-arity tuples."""
    xs = [tuple(x) for x in xs]
    if len(xs) != f.arity:
        raise InputError(f"expected {f.arity} tuples, got {len(xs)}")
    r = len(xs[0])
    for x in xs:
        if len(x) != r:
            raise InputError("tuples must share one arity")
    return tuple(f(*(x[j] for x in xs)) for j in range(r))


@dataclass(frozen=True)
class CloneSlices:
    """Arity-capped slices of a generated clone.

    slices[k] holds the k-ary members for 1 <= k <= arity_cap.  This is the
    capped closure: a member whose every derivation passes through an
    intermediate arity above the cap is not reachable.
    """

    domain: Domain
    arity_cap: int
    slices: dict

    def slice(self, k):
        if not (1 <= k <= self.arity_cap):
            raise InputError(f"arity {k} outside generated range 1..{self.arity_cap}")
        return self.slices[k]

    def sorted_slice(self, k):
        return sorted(self.slice(k))

    def contains(self, f):
        return 1 <= f.arity <= self.arity_cap and f in self.slices[f.arity]


def clone_generate(generators, arity_cap, caps: Caps = DEFAULT_CAPS, domain=None):
    """Capped closure of the generators under superposition.

    Each slice is the closure of its projections under application of the
    generators, which coincides with the fixpoint of superposition among
    all represented arities.
    """
    generators = list(generators)
    if domain is None:
        if not generators:
            raise InputError("clone_generate with no generators needs a domain")
        domain = generators[0].domain
    for g in generators:
        if g.domain != domain:
            raise InputError("generators must share a domain")
        if g.arity > arity_cap:
            raise InputError(
                f"generator arity {g.arity} exceeds cap {arity_cap}"
            )
    if arity_cap < 1:
        raise InputError("arity cap must be >= 1")

    slices = {}
    for ell in range(1, arity_cap + 1):
        current = set(all_projections(domain, ell))
        frontier = list(current)
        while frontier:
            pool = sorted(current)
            new = []
            for f in generators:
                for combo in itertools.product(pool, repeat=f.arity):
                    h = superpose(f, list(combo))
                    if h not in current:
                        current.add(h)
                        new.append(h)
                        if len(current) > caps.max_ops:
                            raise ResourceLimitError(
                                f"clone slice at arity {ell} exceeded max_ops cap "
                                f"({caps.max_ops})"
                            )
            frontier = new
        slices[ell] = frozenset(current)
    return CloneSlices(domain, arity_cap, slices)


def is_idempotent(f):
    """True iff f(x,..,x) = x for every domain element."""
    return all(f(*([x] * f.arity)) == x for x in f.domain.elements())


def identify_arguments(f, i, j):
    """The (k-1)-ary operation with argument j of f receiving argument i.

    Positions are 1-based with i < j; the remaining arguments keep their
    order.
    """
    k = f.arity
    if not (1 <= i < j <= k):
        raise InputError(f"need 1 <= i < j <= {k}, got i={i}, j={j}")
    es = all_projections(f.domain, k - 1)
    gs = []
    for pos in range(1, k + 1):
        if pos < j:
            gs.append(es[pos - 1])
        elif pos == j:
            gs.append(es[i - 1])
        else:
            gs.append(es[pos - 2])
    return superpose(f, gs)


def is_sharp(f):
    """Not a projection, but every two-argument identification is one."""
    if f.arity < 2:
        raise InputError("sharpness is defined for arity >= 2")
    if f.is_projection():
        return False
    k = f.arity
    for i in range(1, k):
        for j in range(i + 1, k + 1):
            if not identify_arguments(f, i, j).is_projection():
                return False
    return True


MAJORITY = "Majority"
MINORITY = "Minority"
PIXLEY = "Pixley"
SEMIPROJECTION = "Semiprojection"

# Pattern of (f(x,x,y), f(x,y,x), f(y,x,x)) as 'x'/'y' labels.
_TERNARY_PATTERNS = {
    ("x", "x", "x"): MAJORITY,
    ("x", "x", "y"): SEMIPROJECTION,
    ("x", "y", "x"): SEMIPROJECTION,
    ("x", "y", "y"): PIXLEY,
    ("y", "x", "x"): SEMIPROJECTION,
    ("y", "x", "y"): PIXLEY,
    ("y", "y", "x"): PIXLEY,
    ("y", "y", "y"): MINORITY,
}


def classify_ternary_sharp(f):
    """Category of a ternary sharp operation from its near-diagonal values."""
    if f.arity != 3:
        raise InputError("classification applies to ternary operations")
    if not is_sharp(f):
        raise InputError("operation is not sharp")
    pattern = None
    for x in f.domain.elements():
        for y in f.domain.elements():
            if x == y:
                continue
            vals = (f(x, x, y), f(x, y, x), f(y, x, x))
            labels = []
            for v in vals:
                if v == x:
                    labels.append("x")
                elif v == y:
                    labels.append("y")
                else:
                    raise InternalCheckError(
                        "near-diagonal value outside {x, y} on a sharp operation"
                    )
            labels = tuple(labels)
            if pattern is None:
                pattern = labels
            elif pattern != labels:
                raise InternalCheckError(
                    "inconsistent near-diagonal pattern on a sharp operation"
                )
    return _TERNARY_PATTERNS[pattern]


def is_semiprojection(f):
    """One fixed argument is returned whenever inputs are not pairwise distinct."""
    if f.arity < 3:
        raise InputError("semiprojections have arity >= 3")
    if f.is_projection():
        return False
    k = f.arity
    candidates = set(range(k))
    for t in f.domain.tuples(k):
        if len(set(t)) == k:
            continue
        v = f(*t)
        candidates = {i for i in candidates if t[i] == v}
        if not candidates:
            return False
    return True


def swierczkowski_check(f):
    """Assert that all two-argument identification projections coincide.

    Precondition: arity >= 4 and every identification is a projection.  A
    False return would indicate an implementation bug.
    """
    k = f.arity
    if k < 4:
        raise InputError("check applies to arity >= 4")
    candidates = None
    for i in range(1, k):
        for j in range(i + 1, k + 1):
            g = identify_arguments(f, i, j)
            m = g.projection_index()
            if m is None:
                raise InputError("every identification must be a projection")
            # Translate the reduced index back to original argument indices;
            # the merged slot stands for both i and j.
            if m < j:
                orig = {m}
            else:
                orig = {m + 1}
            if m == i:
                orig = {i, j}
            candidates = orig if candidates is None else candidates & orig
            if not candidates:
                return False
    return True


# Canonical named operations used by the weighting library and the Boolean
# classifier.

def min_operation(domain):
    k = 2
    return Operation(domain, k, tuple(min(t) for t in domain.tuples(k)))


def max_operation(domain):
    k = 2
    return Operation(domain, k, tuple(max(t) for t in domain.tuples(k)))


def boolean_constant(value):
    d = Domain(2)
    return Operation(d, 1, (value, value))


def boolean_inversion():
    d = Domain(2)
    return Operation(d, 1, (1, 0))


def boolean_majority():
    d = Domain(2)
    return Operation(d, 3, tuple(1 if sum(t) >= 2 else 0 for t in d.tuples(3)))


def boolean_minority():
    d = Domain(2)
    return Operation(d, 3, tuple(t[0] ^ t[1] ^ t[2] for t in d.tuples(3)))

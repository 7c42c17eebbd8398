"""Projective schemes and the parameter predicate.

A tuple (f_0, ..., f_k) of degree-d forms is a collection of parameters
on an n-dimensional X when dim(V(f_0,...,f_k) cap X) = n - (k+1), the
empty set having dimension -1.  Equivalently, on the affine cone the
Krull dimension must drop from n+1 to n-k; Krull's height theorem says
it can never drop further, which is what licenses the engine's early
exit in `is_parameters`.
"""

from __future__ import annotations

from .algebra import FieldSpec, Poly
from .errors import EmptySchemeError
from .groebner import CompiledIdeal

DEFAULT_MAX_POINTS = 20_000_000
DEFAULT_MAX_ENUM = 2 ** 24
DEFAULT_MAX_SEARCH_TRIALS = 10_000


class ProjScheme:
    """A closed subscheme of P^r over a finite field.

    Generators are homogeneous; the Proj dimension n is computed (and the
    Groebner basis cached) at construction.  Empty schemes are rejected:
    every downstream statement presumes n >= 0.  `deghat_value`, when
    supplied by a fixture, is the exact sum of degrees of the reduced
    irreducible components; otherwise only the Bezout-style product bound
    is available.
    """

    def __init__(self, field: FieldSpec, r: int, gens, deghat_value=None, name=None):
        gens = tuple(gens)
        for g in gens:
            if g.field != field or g.num_vars != r + 1:
                raise ValueError("generator does not live in the scheme's ring")
            if g.is_zero:
                raise ValueError("zero generator")
            if not g.is_homogeneous:
                raise ValueError("generators must be homogeneous")
        self.field = field
        self.r = r
        self.gens = gens
        self.name = name
        self._compiled = CompiledIdeal(field, r + 1, gens)
        n = self._compiled.dim - 1
        if n < 0:
            raise EmptySchemeError("generators cut out the empty scheme")
        self.n = n
        product = 1
        for g in gens:
            product *= g.degree
        self._deghat_product = product
        if deghat_value is not None and deghat_value > product:
            raise ValueError("supplied deghat exceeds the Bezout product bound")
        self.deghat_value = deghat_value

    @property
    def deghat_bound(self) -> int:
        return self.deghat_value if self.deghat_value is not None else self._deghat_product

    @property
    def compiled(self) -> CompiledIdeal:
        return self._compiled

    def __repr__(self):
        label = self.name or "X"
        return f"{label} subset P^{self.r}({self.field}), dim {self.n}"


class ParamTuple:
    """A candidate tuple (f_0, ..., f_k) of equal-degree forms."""

    def __init__(self, polys):
        polys = tuple(polys)
        if not polys:
            raise ValueError("empty tuple")
        degs = set()
        for f in polys:
            if not f.is_homogeneous:
                raise ValueError("tuple entries must be homogeneous")
            if not f.is_zero:
                degs.add(f.degree)
        if len(degs) > 1:
            raise ValueError(f"tuple entries have mixed degrees {sorted(degs)}")
        self.polys = polys
        self.d = degs.pop() if degs else None  # None: the all-zero tuple
        self.k = len(polys) - 1

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


def deghat_bound(X: ProjScheme) -> int:
    """Exact deghat when fixture-supplied, else the product of generator degrees."""
    return X.deghat_bound


def is_parameters(X: ProjScheme, tup) -> bool:
    """Does the tuple drop dim(X) by its full length?

    Zero entries are legal inputs (they belong to the sampled space); a
    tuple containing one simply fails the predicate.
    """
    if not isinstance(tup, ParamTuple):
        tup = ParamTuple(tup)
    k = tup.k
    if k > X.n:
        raise ValueError(f"tuple index {k} exceeds dim X = {X.n}")
    for f in tup.polys:
        if f.field != X.field or f.num_vars != X.r + 1:
            raise ValueError("tuple entries do not live in the scheme's ring")
    compiled = X.compiled
    forms = [compiled.engine_form(f) for f in tup.polys]
    target = X.n - k  # Krull bound on the cone; reached iff parameters
    dim = compiled.dim_adding(forms, stop_dim=target)
    return dim == target


def is_parameters_codes(compiled: CompiledIdeal, n: int, coeff_vectors, keys) -> bool:
    """Fast path: tuple entries given as coefficient-code vectors over `keys`.

    `keys` are the packed monomials of the degree-d basis in canonical
    order; used by the Monte Carlo and exhaustive drivers to bypass Poly
    construction entirely.
    """
    binary = compiled.arith.binary
    forms = []
    for codes in coeff_vectors:
        if binary:
            form = {k for k, c in zip(keys, codes) if c}
        else:
            form = {k: c for k, c in zip(keys, codes) if c}
        forms.append(form)
    target = n - (len(coeff_vectors) - 1)
    return compiled.dim_adding(forms, stop_dim=target) == target

"""Exact arithmetic in small finite fields and sparse homogeneous polynomials.

An element of F_q = F_{p^k} is a length-k coordinate vector over F_p,
low degree first, relative to a canonical modulus: the lexicographically
least monic irreducible of degree k (coefficients compared low-degree
first).  Prime fields (k = 1) carry no modulus.

Besides the `FieldElement` wrapper there is an integer *code* encoding,
code = sum(coords[i] * p**i), used by performance-sensitive callers
(the Groebner engine and point enumeration).  `FieldSpec.ops` exposes
add/sub/mul/inv/pow on codes, backed by full multiplication tables for
small q and by discrete-log tables above that.

Polynomials are sparse: a dict from exponent tuples to nonzero field
elements.  The canonical term order everywhere is graded reverse
lexicographic, which fixes iteration and printing.

Text grammar (shared with the CLI): terms joined by `+`/`-`; a term is
`[coeff*]var[^e][*var[^e]]...`; prime-field coefficients are integers
reduced mod p; extension coefficients are bracketed base-p coordinate
vectors low-degree-first, e.g. `[1,0,1]` = 1 + u^2.

Randomness follows a counter-based stream contract: a 64-bit master
seed plus a stream index fully determines every draw (Philox keyed by
the pair), so parallel consumers are reproducible by construction.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache

import numpy as np

from .errors import FieldMismatchError, ParseError

# Full q x q arithmetic tables up to this cardinality; log/exp tables above.
_TABLE_LIMIT = 512


# ---------------------------------------------------------------------------
# dense univariate arithmetic over F_p (coefficient tuples, low degree first)
# ---------------------------------------------------------------------------

def _utrim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def _uadd(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    for i, x in enumerate(b):
        a[i] = (a[i] + x) % p
    return _utrim(a)


def _umul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _utrim(out)


def _umod(a, m, p):
    # remainder of a modulo monic m
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, c in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return _utrim(a)


def _upowmod(base, e, m, p):
    result = [1]
    base = _umod(base, m, p)
    while e:
        if e & 1:
            result = _umod(_umul(result, base, p), m, p)
        base = _umod(_umul(base, base, p), m, p)
        e >>= 1
    return result


def _umonic(a, p):
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [(c * inv) % p for c in a]


def _udivmod(a, b, p):
    # quotient and remainder for any nonzero b
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    lead_inv = pow(b[-1], p - 2, p)
    while rem and len(rem) - 1 >= db:
        c = (rem[-1] * lead_inv) % p
        shift = len(rem) - 1 - db
        if c:
            q[shift] = c
            for i, bc in enumerate(b):
                rem[shift + i] = (rem[shift + i] - c * bc) % p
        rem.pop()
    return _utrim(q), _utrim(rem)


def _ugcd(a, b, p):
    a, b = _utrim(list(a)), _utrim(list(b))
    while b:
        a, b = b, _udivmod(a, b, p)[1]
    return _umonic(a, p)


def _uinvmod(a, m, p):
    # inverse of a modulo monic irreducible m, via extended Euclid
    r0, r1 = list(m), _umod(a, m, p)
    s0, s1 = [], [1]
    while r1:
        q, rem = _udivmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _usub(s0, _umul(q, s1, p), p)
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = pow(r0[0], p - 2, p)
    return _utrim([(x * c) % p for x in s0])


def _usub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    for i, x in enumerate(b):
        a[i] = (a[i] - x) % p
    return _utrim(a)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible(m, p):
    """Rabin irreducibility test for a monic polynomial m over F_p."""
    k = len(m) - 1
    if k <= 0:
        return False
    x = [0, 1]
    # x^(p^k) == x mod m
    xq = _upowmod(x, p ** k, m, p)
    if _utrim(_usub(xq, x, p)):
        return False
    for ell in _prime_factors(k):
        xe = _upowmod(x, p ** (k // ell), m, p)
        g = _ugcd(_usub(xe, x, p), m, p)
        if len(g) != 1:
            return False
    return True


# ---------------------------------------------------------------------------
# field specifications and elements
# ---------------------------------------------------------------------------

class FieldOps:
    """Arithmetic on integer element codes of one field.

    Codes are base-p digit encodings of coordinate vectors.  All callables
    take and return plain ints in [0, q).
    """

    def __init__(self, spec: "FieldSpec"):
        self.spec = spec
        p, k, q = spec.p, spec.k, spec.q
        self.q = q
        if k == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
            self.mul = lambda a, b: (a * b) % p
            self.inv = lambda a: pow(a, p - 2, p)
            self.pow = lambda a, e: pow(a, e, p) if (a or not e) else 0
            return

        coords = [self._decode(c, p, k) for c in range(q)]
        mod = list(spec.modulus)

        def raw_mul(a, b):
            return self._encode(_umod(_umul(coords[a], coords[b], p), mod, p), p)

        if q <= _TABLE_LIMIT:
            add_t = [0] * (q * q)
            mul_t = [0] * (q * q)
            neg_t = [0] * q
            inv_t = [0] * q
            for a in range(q):
                ca = coords[a]
                neg_t[a] = self._encode([(-x) % p for x in ca], p)
                for b in range(q):
                    s = [(x + y) % p for x, y in zip(ca, coords[b])]
                    add_t[a * q + b] = self._encode(s, p)
                    mul_t[a * q + b] = raw_mul(a, b)
            for a in range(1, q):
                inv_t[a] = self._encode(_uinvmod(coords[a], mod, p), p)
            self.add = lambda a, b: add_t[a * q + b]
            self.sub = lambda a, b: add_t[a * q + neg_t[b]]
            self.neg = lambda a: neg_t[a]
            self.mul = lambda a, b: mul_t[a * q + b]

            def inv(a):
                if a == 0:
                    raise ZeroDivisionError("inversion of zero")
                return inv_t[a]

            self.inv = inv
            log_t, exp_t = self._log_tables(raw_mul, q)
            self.pow = self._make_pow(log_t, exp_t, q)
            return

        # large extension field: digit-wise addition, log/exp multiplication
        log_t, exp_t = self._log_tables(raw_mul, q)

        if p == 2:
            self.add = lambda a, b: a ^ b
            self.sub = self.add
            self.neg = lambda a: a
        else:
            pows = [p ** i for i in range(k)]

            def add(a, b):
                s = 0
                for pe in pows:
                    s += ((a // pe + b // pe) % p) * pe
                return s

            def sub(a, b):
                s = 0
                for pe in pows:
                    s += ((a // pe - b // pe) % p) * pe
                return s

            self.add = add
            self.sub = sub
            self.neg = lambda a: sub(0, a)

        order = q - 1

        def mul(a, b):
            if a == 0 or b == 0:
                return 0
            return exp_t[log_t[a] + log_t[b]]

        def inv(a):
            if a == 0:
                raise ZeroDivisionError("inversion of zero")
            return exp_t[(order - log_t[a]) % order]

        self.mul = mul
        self.inv = inv
        self.pow = self._make_pow(log_t, exp_t, q)

    @staticmethod
    def _decode(code, p, k):
        out = []
        for _ in range(k):
            code, r = divmod(code, p)
            out.append(r)
        return out

    @staticmethod
    def _encode(coords, p):
        c = 0
        for x in reversed(coords):
            c = c * p + x
        return c

    @staticmethod
    def _log_tables(raw_mul, q):
        order = q - 1
        for g in range(2, q):
            seen = 1
            x = g
            while x != 1:
                x = raw_mul(x, g)
                seen += 1
                if seen > order:
                    break
            if seen == order:
                break
        else:
            raise AssertionError("no primitive element found")
        log_t = [0] * q
        exp_t = [0] * (2 * order)
        x = 1
        for i in range(order):
            exp_t[i] = x
            exp_t[i + order] = x
            log_t[x] = i
            x = raw_mul(x, g)
        return log_t, exp_t

    @staticmethod
    def _make_pow(log_t, exp_t, q):
        order = q - 1

        def fpow(a, e):
            if e == 0:
                return 1
            if a == 0:
                return 0
            return exp_t[(log_t[a] * e) % order]

        return fpow


class FieldSpec:
    """F_{p^k} with its canonical modulus.  Build via `field_make`."""

    __slots__ = ("p", "k", "modulus", "q", "_ops")

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.modulus = modulus  # tuple of k+1 ints, low degree first; None if k == 1
        self.q = p ** k
        self._ops = None

    @property
    def ops(self) -> FieldOps:
        if self._ops is None:
            self._ops = FieldOps(self)
        return self._ops

    def element(self, value) -> "FieldElement":
        """Coerce an int (reduced mod p, prime subfield) or coordinate vector."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatchError(f"element of {value.field}, expected {self}")
            return value
        if isinstance(value, int):
            coords = (value % self.p,) + (0,) * (self.k - 1)
            return FieldElement(self, coords)
        coords = tuple(int(c) % self.p for c in value)
        if len(coords) != self.k:
            raise ValueError(f"expected {self.k} coordinates, got {len(coords)}")
        return FieldElement(self, coords)

    def from_code(self, code: int) -> "FieldElement":
        coords = []
        p = self.p
        for _ in range(self.k):
            code, r = divmod(code, p)
            coords.append(r)
        return FieldElement(self, tuple(coords))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (0,) * self.k)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, (1,) + (0,) * (self.k - 1))

    def elements(self):
        """All field elements in ascending code order."""
        return (self.from_code(c) for c in range(self.q))

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus))

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"F{self.q}" if self.k == 1 else f"F{self.q} (=F{self.p}^{self.k})"


class FieldElement:
    """An element of a `FieldSpec`; immutable and hashable."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    @property
    def code(self) -> int:
        c = 0
        for x in reversed(self.coords):
            c = c * self.field.p + x
        return c

    def _check(self, other):
        if not isinstance(other, FieldElement):
            if isinstance(other, int):
                return self.field.element(other)
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatchError("mixed fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field,
                            tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field,
                            tuple((a - b) % p for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return self.field.element(other) - self

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coords))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        if f.k == 1:
            return FieldElement(f, ((self.coords[0] * other.coords[0]) % f.p,))
        return f.from_code(f.ops.mul(self.code, other.code))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if not any(self.coords):
            raise ZeroDivisionError("inversion of zero")
        f = self.field
        if f.k == 1:
            return FieldElement(f, (pow(self.coords[0], f.p - 2, f.p),))
        return f.from_code(f.ops.inv(self.code))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, e: int):
        f = self.field
        if e < 0:
            return self.inverse() ** (-e)
        return f.from_code(f.ops.pow(self.code, e))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        return (isinstance(other, FieldElement)
                and self.field == other.field and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.coords))

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        if self.field.k == 1:
            return str(self.coords[0])
        return "[" + ",".join(str(c) for c in self.coords) + "]"


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> FieldSpec:
    """Construct F_{p^k}.

    The modulus is the lexicographically least monic irreducible of degree
    k over F_p, coefficients compared low-degree first; this makes field
    construction reproducible across runs and machines.
    """
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("extension degree must be >= 1")
    if k == 1:
        return FieldSpec(p, 1, None)
    for low in itertools.product(range(p), repeat=k):
        cand = list(low) + [1]
        if _is_irreducible(cand, p):
            return FieldSpec(p, k, tuple(cand))
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


class ExtensionEmbedding:
    """A field homomorphism F_q -> F_{q^ell} fixing the prime field.

    The image of the base generator is the least root (in code order) of
    the base modulus inside the top field, which pins the embedding down
    deterministically.
    """

    def __init__(self, base: FieldSpec, top: FieldSpec, ell: int, beta_code: int):
        self.base = base
        self.top = top
        self.ell = ell
        self.beta_code = beta_code
        ops = top.ops
        # code-level lookup for all of base, small by construction
        self._codes = [0] * base.q
        for c in range(base.q):
            coords = FieldOps._decode(c, base.p, base.k)
            acc = 0
            for d in reversed(coords):
                acc = ops.add(ops.mul(acc, beta_code), d)
            self._codes[c] = acc

    def map_code(self, code: int) -> int:
        return self._codes[code]

    def __call__(self, x: FieldElement) -> FieldElement:
        if x.field != self.base:
            raise FieldMismatchError("element does not belong to the embedding's base field")
        return self.top.from_code(self._codes[x.code])

    def map_poly(self, f: "Poly") -> "Poly":
        return Poly(self.top, f.num_vars, {m: self(c) for m, c in f.terms.items()})

    def __repr__(self):
        return f"{self.base} -> {self.top}"


def field_extend(base: FieldSpec, ell: int) -> ExtensionEmbedding:
    """Build F_{q^ell} as F_p^{k*ell} together with the embedding of base."""
    if ell < 1:
        raise ValueError("extension degree must be >= 1")
    top = field_make(base.p, base.k * ell)
    if base.k == 1:
        return ExtensionEmbedding(base, top, ell, beta_code=0 if base.k == 1 else 1)
    ops = top.ops
    mod_codes = [c % base.p for c in base.modulus]
    for cand in range(top.q):
        acc = 0
        for d in reversed(mod_codes):
            acc = ops.add(ops.mul(acc, cand), d)
        if acc == 0:
            return ExtensionEmbedding(base, top, ell, beta_code=cand)
    raise AssertionError("unreachable: the base modulus splits in the top field")


# ---------------------------------------------------------------------------
# monomials and sparse polynomials
# ---------------------------------------------------------------------------

def grevlex_key(exps):
    """Sort key implementing graded reverse lexicographic order (ascending)."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


@lru_cache(maxsize=None)
def monomials_of_degree(num_vars: int, d: int):
    """All exponent tuples of total degree d, grevlex descending.

    This is the canonical basis order for coefficient vectors (random
    draws, evaluation matrices, printing).
    """
    def compositions(total, parts):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, parts - 1):
                yield (first,) + rest

    mons = sorted(compositions(d, num_vars), key=grevlex_key, reverse=True)
    return tuple(mons)


def _default_names(n):
    if n <= 4:
        return ("x", "y", "z", "w")[:n]
    return tuple(f"x{i}" for i in range(n))


class Poly:
    """Sparse multivariate polynomial over a `FieldSpec`.

    `terms` maps exponent tuples (length num_vars) to nonzero elements.
    """

    __slots__ = ("field", "num_vars", "terms")

    def __init__(self, field, num_vars, terms=None):
        self.field = field
        self.num_vars = num_vars
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field, num_vars):
        return cls(field, num_vars, {})

    @classmethod
    def constant(cls, field, num_vars, c):
        c = field.element(c)
        return cls(field, num_vars, {(0,) * num_vars: c} if c else {})

    @classmethod
    def variable(cls, field, num_vars, i):
        exps = tuple(1 if j == i else 0 for j in range(num_vars))
        return cls(field, num_vars, {exps: field.one})

    # -- ring structure ------------------------------------------------------

    def _compat(self, other):
        if self.field != other.field or self.num_vars != other.num_vars:
            raise FieldMismatchError("polynomials live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = Poly.constant(self.field, self.num_vars, other)
        self._compat(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            s = c if s is None else s + c
            if s:
                terms[m] = s
            elif m in terms:
                del terms[m]
        return Poly(self.field, self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, self.num_vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = Poly.constant(self.field, self.num_vars, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = self.field.element(other)
            if not c:
                return Poly.zero(self.field, self.num_vars)
            return Poly(self.field, self.num_vars,
                        {m: x * c for m, x in self.terms.items()})
        self._compat(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                s = out.get(m)
                s = c if s is None else s + c
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return Poly(self.field, self.num_vars, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(self.field, self.num_vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.num_vars == other.num_vars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.num_vars, frozenset(self.terms.items())))

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self):
        """Maximum term degree, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    @property
    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    @property
    def degree(self):
        """Common degree of a homogeneous polynomial (None when zero)."""
        degs = {sum(m) for m in self.terms}
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop() if degs else None

    def leading_monomial(self):
        return max(self.terms, key=grevlex_key)

    def sorted_terms(self):
        """Terms in descending grevlex order (canonical printing order)."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    # -- evaluation and substitution ------------------------------------------

    def evaluate(self, point) -> FieldElement:
        """Exact evaluation at a point with coordinates in this field."""
        point = [self.field.element(x) for x in point]
        if len(point) != self.num_vars:
            raise ValueError(f"expected {self.num_vars} coordinates, got {len(point)}")
        ops = self.field.ops
        codes = [x.code for x in point]
        acc = 0
        for m, c in self.terms.items():
            t = c.code
            for x, e in zip(codes, m):
                if e:
                    t = ops.mul(t, ops.pow(x, e))
                    if t == 0:
                        break
            acc = ops.add(acc, t)
        return self.field.from_code(acc)

    def substitute_linear(self, rows) -> "Poly":
        """Compose with x_j = sum_s A[s][j] t_s for a full-row-rank matrix A.

        A has m+1 rows of length num_vars; the result lives in m+1
        parameter variables and is zero exactly when the linear subspace
        parametrized by the rows lies in this polynomial's zero locus.
        """
        from ._linalg import rank as _rank

        if not self.is_homogeneous:
            raise ValueError("substitution requires a homogeneous polynomial")
        A = [[self.field.element(x) for x in row] for row in rows]
        nrows = len(A)
        if any(len(row) != self.num_vars for row in A):
            raise ValueError("matrix width must equal the number of variables")
        codes = [[x.code for x in row] for row in A]
        if _rank(codes, self.num_vars, self.field.ops) != nrows:
            raise ValueError("substitution matrix must have full row rank")

        lin = []
        for j in range(self.num_vars):
            terms = {}
            for s in range(nrows):
                if A[s][j]:
                    exps = tuple(1 if t == s else 0 for t in range(nrows))
                    terms[exps] = A[s][j]
            lin.append(Poly(self.field, nrows, terms))

        pow_cache = {}

        def lin_pow(j, e):
            key = (j, e)
            got = pow_cache.get(key)
            if got is None:
                got = lin[j] ** e
                pow_cache[key] = got
            return got

        out = Poly.zero(self.field, nrows)
        for m, c in self.terms.items():
            t = Poly.constant(self.field, nrows, c)
            for j, e in enumerate(m):
                if e:
                    t = t * lin_pow(j, e)
            out = out + t
        return out

    def __repr__(self):
        return poly_to_text(self, _default_names(self.num_vars))


def poly_eval(f: Poly, point) -> FieldElement:
    """Evaluate f at a point (coordinates in f's field)."""
    return f.evaluate(point)


def poly_substitute_linear(f: Poly, rows) -> Poly:
    return f.substitute_linear(rows)


# ---------------------------------------------------------------------------
# text grammar
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\[[-\d,\s]*\]|\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-)")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character at {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


def parse_poly(text: str, field: FieldSpec, names) -> Poly:
    """Parse the shared polynomial grammar into a Poly."""
    names = list(names)
    nvars = len(names)
    index = {n: i for i, n in enumerate(names)}
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    result = Poly.zero(field, nvars)
    i = 0
    sign = 1
    if toks[0] in "+-":
        sign = -1 if toks[0] == "-" else 1
        i = 1
    while i < len(toks):
        coeff = field.one
        exps = [0] * nvars
        expect_factor = True
        while i < len(toks):
            t = toks[i]
            if t in "+-":
                break
            if t == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ParseError(f"missing '*' before {t!r}")
            if t.startswith("["):
                coords = [int(x) for x in t[1:-1].split(",")] if t[1:-1].strip() else []
                if len(coords) != field.k:
                    raise ParseError(
                        f"bracket coefficient needs {field.k} coordinates, got {len(coords)}")
                coeff = coeff * field.element(coords)
                i += 1
            elif t.isdigit():
                coeff = coeff * field.element(int(t))
                i += 1
            else:
                if t not in index:
                    raise ParseError(f"unknown variable {t!r}")
                e = 1
                i += 1
                if i < len(toks) and toks[i] == "^":
                    if i + 1 >= len(toks) or not toks[i + 1].isdigit():
                        raise ParseError("'^' must be followed by an integer")
                    e = int(toks[i + 1])
                    i += 2
                exps[index[t]] += e
            expect_factor = False
        if expect_factor:
            raise ParseError("dangling operator")
        term = Poly(field, nvars, {tuple(exps): field.element(sign) * coeff})
        result = result + term
        if i < len(toks):
            sign = -1 if toks[i] == "-" else 1
            i += 1
            if i == len(toks):
                raise ParseError("trailing operator")
    return result


def poly_to_text(f: Poly, names=None) -> str:
    """Canonical text form: grevlex-descending terms joined by '+'."""
    if names is None:
        names = _default_names(f.num_vars)
    if f.is_zero:
        return "0"
    parts = []
    for m, c in f.sorted_terms():
        factors = []
        if f.field.k == 1:
            if c.coords[0] != 1 or not any(m):
                factors.append(str(c.coords[0]))
        else:
            if c != f.field.one or not any(m):
                factors.append("[" + ",".join(str(x) for x in c.coords) + "]")
        for j, e in enumerate(m):
            if e == 1:
                factors.append(names[j])
            elif e > 1:
                factors.append(f"{names[j]}^{e}")
        parts.append("*".join(factors))
    return "+".join(parts)


# ---------------------------------------------------------------------------
# seeded random streams and random polynomials
# ---------------------------------------------------------------------------

def seeded_stream(master_seed: int, stream_index: int = 0) -> np.random.Generator:
    """Counter-based RNG stream: (master_seed, stream_index) fixes all draws."""
    key = np.array([master_seed % 2 ** 64, stream_index % 2 ** 64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def draw_coefficient_codes(rng: np.random.Generator, field: FieldSpec, n: int):
    """n element codes, each coordinate uniform over F_p (zero included)."""
    if field.k == 1:
        return rng.integers(0, field.p, size=n).tolist()
    digits = rng.integers(0, field.p, size=(n, field.k))
    weights = np.array([field.p ** i for i in range(field.k)], dtype=np.int64)
    return (digits @ weights).tolist()


def random_poly(field: FieldSpec, r: int, d: int, rng: np.random.Generator) -> Poly:
    """Uniform draw from the space of degree-d forms in r+1 variables.

    Every one of the binom(r+d, d) coefficients is drawn independently and
    uniformly from the field; the zero polynomial is a legal outcome.
    """
    if d < 0:
        raise ValueError("degree must be >= 0")
    mons = monomials_of_degree(r + 1, d)
    codes = draw_coefficient_codes(rng, field, len(mons))
    terms = {m: field.from_code(c) for m, c in zip(mons, codes) if c}
    return Poly(field, r + 1, terms)

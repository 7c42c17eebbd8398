"""Buchberger Groebner bases, combinatorial dimension, Hilbert functions.

The engine packs a monomial into a single integer *key* whose natural
int ordering realizes the chosen monomial order, so finding the leading
term of a polynomial is a plain `max()` over dict/set keys:

  grevlex  key = deg << 9n | sum_i (255 - e_i) << 9i
  lex      key = sum_i e_i << 9(n-1-i)
  elim1    key = e_0 << big | grevlex key of (e_1..e_{n-1})

Keys are additive up to a constant: key(a*b) = key(a) + key(b) - CORR,
so multiplying a polynomial by a monomial is integer addition term by
term.  Divisibility uses a second packing (raw exponents in 9-bit fields
with a guard bit): m | M iff ((D_M | G) - D_m) & G == G, i.e. the
field-wise subtraction borrows nowhere.  Exponents are capped at 255.

Over F_2 a polynomial is a set of keys and reduction is a symmetric
difference; otherwise it is a dict key -> coefficient code with table
arithmetic from `FieldOps`.

Pair selection is by (degree, grevlex) of the lcm with index tie-breaks,
pairs are pruned by the coprimality criterion and the classical chain
criterion, so runs are fully deterministic.  Callers that know a lower
bound for the Krull dimension of the final leading-term ideal (the
parameter predicate does, by Krull's height theorem) can pass it as
`stop_dim`: the dimension of the partial leading-term ideal only ever
shrinks toward the truth, so reaching the bound ends the run early.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .algebra import Poly, monomials_of_degree

_EXP_MAX = 255
_FBITS = 9


class MonomialContext:
    """Packed-monomial workspace for one (num_vars, order) ring."""

    def __init__(self, num_vars: int, order: str = "grevlex"):
        if order not in ("grevlex", "lex", "elim1"):
            raise ValueError(f"unknown monomial order {order!r}")
        self.num_vars = num_vars
        self.order = order
        n = num_vars
        self.guards = sum(1 << (_FBITS * i + 8) for i in range(n))
        if order == "grevlex":
            self.corr = sum(_EXP_MAX << (_FBITS * i) for i in range(n))
        elif order == "lex":
            self.corr = 0
        else:  # elim1: first variable dominates, grevlex on the rest
            self.corr = sum(_EXP_MAX << (_FBITS * i) for i in range(n - 1))
            self._t_shift = _FBITS * (n - 1) + 16
        self._div_memo = {}
        self._exp_memo = {}

    # -- key packing ---------------------------------------------------------

    def key_of(self, exps) -> int:
        n = self.num_vars
        if any(e > _EXP_MAX for e in exps):
            raise OverflowError("exponent exceeds the packed-monomial cap of 255")
        if self.order == "grevlex":
            k = sum(exps) << (_FBITS * n)
            for i, e in enumerate(exps):
                k |= (_EXP_MAX - e) << (_FBITS * i)
            return k
        if self.order == "lex":
            k = 0
            for i, e in enumerate(exps):
                k |= e << (_FBITS * (n - 1 - i))
            return k
        rest = exps[1:]
        k = exps[0] << self._t_shift
        k |= sum(rest) << (_FBITS * (n - 1))
        for i, e in enumerate(rest):
            k |= (_EXP_MAX - e) << (_FBITS * i)
        return k

    def exps_of(self, key: int):
        got = self._exp_memo.get(key)
        if got is not None:
            return got
        n = self.num_vars
        if self.order == "grevlex":
            exps = tuple(_EXP_MAX - ((key >> (_FBITS * i)) & 511) for i in range(n))
        elif self.order == "lex":
            exps = tuple((key >> (_FBITS * (n - 1 - i))) & 511 for i in range(n))
        else:
            e0 = key >> self._t_shift
            rest = tuple(_EXP_MAX - ((key >> (_FBITS * i)) & 511) for i in range(n - 1))
            exps = (e0,) + rest
        self._exp_memo[key] = exps
        return exps

    def div_of(self, key: int) -> int:
        got = self._div_memo.get(key)
        if got is None:
            got = self.pack_div(self.exps_of(key))
            self._div_memo[key] = got
        return got

    @staticmethod
    def pack_div(exps) -> int:
        d = 0
        for i, e in enumerate(exps):
            d |= e << (_FBITS * i)
        return d

    def divides(self, d_small: int, d_big: int) -> bool:
        g = self.guards
        return ((d_big | g) - d_small) & g == g

    @staticmethod
    def support_mask(exps) -> int:
        m = 0
        for i, e in enumerate(exps):
            if e:
                m |= 1 << i
        return m


@lru_cache(maxsize=None)
def get_context(num_vars: int, order: str = "grevlex") -> MonomialContext:
    return MonomialContext(num_vars, order)


@lru_cache(maxsize=None)
def _subsets_by_size(n: int):
    subs = sorted(range(1 << n), key=lambda y: (-bin(y).count("1"), y))
    return tuple((bin(y).count("1"), y) for y in subs)


def _lt_dim(mask_set, n: int) -> int:
    """Krull dimension of S/(monomial ideal) from support masks of generators.

    dim = max size of a variable subset containing no generator's support;
    -1 when a constant lies in the ideal (the zero ring).
    """
    if 0 in mask_set:
        return -1
    masks = list(mask_set)
    for size, y in _subsets_by_size(n):
        ny = ~y
        ok = True
        for m in masks:
            if not (m & ny):
                ok = False
                break
        if ok:
            return size
    return 0  # unreachable: the empty subset always qualifies


# ---------------------------------------------------------------------------
# engine polynomial forms
# ---------------------------------------------------------------------------

def poly_to_engine(f: Poly, ctx: MonomialContext, binary: bool):
    if binary:
        return {ctx.key_of(m) for m in f.terms}
    return {ctx.key_of(m): c.code for m, c in f.terms.items()}


def engine_to_poly(form, ctx: MonomialContext, field, num_vars) -> Poly:
    if isinstance(form, (set, frozenset)):
        return Poly(field, num_vars, {ctx.exps_of(k): field.one for k in form})
    return Poly(field, num_vars,
                {ctx.exps_of(k): field.from_code(c) for k, c in form.items()})


class _F2Arith:
    """Set-of-keys polynomial arithmetic; coefficients are implicitly 1."""

    binary = True

    def __init__(self, ctx):
        self.ctx = ctx

    @staticmethod
    def monic(h):
        return h

    @staticmethod
    def shift_sub(h, rp, off, lead):
        h.symmetric_difference_update(k + off for k in rp)

    @staticmethod
    def combine(pi, offi, pj, offj):
        return {k + offi for k in pi} ^ {k + offj for k in pj}

    @staticmethod
    def copy(h):
        return set(h)


class _GenArith:
    """Dict key -> coefficient code arithmetic over any small field."""

    binary = False

    def __init__(self, ctx, ops):
        self.ctx = ctx
        self.ops = ops

    def monic(self, h):
        lead = max(h)
        c = h[lead]
        if c != 1:
            inv = self.ops.inv(c)
            mul = self.ops.mul
            return {k: mul(inv, v) for k, v in h.items()}
        return h

    def shift_sub(self, h, rp, off, lead):
        # h -= h[lead] * x^off * rp   (rp monic with leading key lead - off)
        c = h[lead]
        sub = self.ops.sub
        mul = self.ops.mul
        for k, cm in rp.items():
            key = k + off
            cur = h.get(key)
            if cur is None:
                h[key] = sub(0, mul(c, cm))
            else:
                nv = sub(cur, mul(c, cm))
                if nv:
                    h[key] = nv
                else:
                    del h[key]

    def combine(self, pi, offi, pj, offj):
        sub = self.ops.sub
        t = {k + offi: c for k, c in pi.items()}
        for k, c in pj.items():
            key = k + offj
            cur = t.get(key)
            if cur is None:
                t[key] = sub(0, c)
            else:
                nv = sub(cur, c)
                if nv:
                    t[key] = nv
                else:
                    del t[key]
        return t

    @staticmethod
    def copy(h):
        return dict(h)


def _arith_for(field, ctx):
    if field.q == 2:
        return _F2Arith(ctx)
    return _GenArith(ctx, field.ops)


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------

class _Basis:
    __slots__ = ("keys", "divs", "exps", "polys", "masks", "mask_set")

    def __init__(self):
        self.keys = []
        self.divs = []
        self.exps = []
        self.polys = []
        self.masks = []
        self.mask_set = set()


def _reduce_top(h, basis: _Basis, ctx, arith):
    """Top-reduce h until its lead is irreducible; may return empty."""
    keys = basis.keys
    divs = basis.divs
    polys = basis.polys
    divides = ctx.divides
    div_of = ctx.div_of
    nb = len(keys)
    while h:
        lead = max(h)
        dl = div_of(lead)
        for i in range(nb):
            if divides(divs[i], dl):
                arith.shift_sub(h, polys[i], lead - keys[i], lead)
                break
        else:
            return h
    return h


def _full_reduce(h, basis: _Basis, ctx, arith, skip=-1):
    """Full normal form of h modulo the basis (optionally skipping one index)."""
    keys = basis.keys
    divs = basis.divs
    polys = basis.polys
    divides = ctx.divides
    div_of = ctx.div_of
    nb = len(keys)
    work = arith.copy(h)
    out = set() if arith.binary else {}
    while work:
        lead = max(work)
        dl = div_of(lead)
        for i in range(nb):
            if i != skip and divides(divs[i], dl):
                arith.shift_sub(work, polys[i], lead - keys[i], lead)
                break
        else:
            if arith.binary:
                out.add(lead)
                work.discard(lead)
            else:
                out[lead] = work.pop(lead)
    return out


def buchberger(inputs, ctx: MonomialContext, arith, stop_dim=None, gb_prefix=0):
    """Run Buchberger; returns (basis, dim).

    `inputs` are engine polynomials (the first `gb_prefix` of them already
    a Groebner basis, so their mutual pairs are skipped).  `dim` is the
    Krull dimension of S/in(I), except that when `stop_dim` is supplied
    and reached the run stops early with that value (valid only when the
    caller guarantees the true dimension is >= stop_dim).
    """
    basis = _Basis()
    key_of = ctx.key_of
    exps_of = ctx.exps_of
    pack_div = ctx.pack_div
    n = ctx.num_vars

    def push_elem(h):
        h = arith.monic(h)
        lead = max(h)
        e = exps_of(lead)
        basis.keys.append(lead)
        basis.divs.append(pack_div(e))
        basis.exps.append(e)
        basis.polys.append(h)
        m = ctx.support_mask(e)
        basis.masks.append(m)
        basis.mask_set.add(m)

    for f in inputs:
        if f:
            push_elem(arith.copy(f))

    dim = _lt_dim(basis.mask_set, n) if basis.keys else n
    if stop_dim is not None and dim <= stop_dim:
        return basis, dim
    if dim == -1:
        return basis, -1

    pairs = []
    pending = {}

    def consider(i, j):
        ei, ej = basis.exps[i], basis.exps[j]
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            return  # coprime leads: S-pair reduces to zero
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        k = key_of(lcm)
        pending[(i, j)] = pack_div(lcm)
        heapq.heappush(pairs, (k, i, j))

    nb0 = len(basis.keys)
    for j in range(nb0):
        for i in range(j):
            if j < gb_prefix:
                continue  # pairs inside a known Groebner basis reduce to zero
            consider(i, j)

    divides = ctx.divides
    while pairs:
        _, i, j = heapq.heappop(pairs)
        dl = pending.pop((i, j))
        skip = False
        for k in range(len(basis.keys)):
            if k == i or k == j:
                continue
            if divides(basis.divs[k], dl):
                a = (i, k) if i < k else (k, i)
                b = (j, k) if j < k else (k, j)
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        lk = key_of(tuple(max(a, b) for a, b in zip(basis.exps[i], basis.exps[j])))
        s = arith.combine(basis.polys[i], lk - basis.keys[i],
                          basis.polys[j], lk - basis.keys[j])
        h = _reduce_top(s, basis, ctx, arith)
        if not h:
            continue
        t = len(basis.keys)
        push_elem(h)
        dim = _lt_dim(basis.mask_set, n)
        if stop_dim is not None and dim <= stop_dim:
            return basis, dim
        if dim == -1:
            return basis, -1
        for i2 in range(t):
            consider(i2, t)

    return basis, dim


def _minimalize_and_reduce(basis: _Basis, ctx, arith) -> list:
    """Reduced-basis post-pass: drop redundant leads, tail-reduce, sort."""
    order = sorted(range(len(basis.keys)), key=lambda i: basis.keys[i])
    kept = _Basis()
    for i in order:
        dl = basis.divs[i]
        if any(ctx.divides(d, dl) for d in kept.divs):
            continue
        kept.keys.append(basis.keys[i])
        kept.divs.append(basis.divs[i])
        kept.exps.append(basis.exps[i])
        kept.polys.append(basis.polys[i])
    out = []
    for i in range(len(kept.keys)):
        h = _full_reduce(kept.polys[i], kept, ctx, arith, skip=i)
        out.append(arith.monic(h))
    return out


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    order: str
    generators: tuple


@dataclass(frozen=True)
class HilbertData:
    ideal: tuple
    d: int
    value: int


def _common_ring(gens):
    fields = {g.field for g in gens}
    nvars = {g.num_vars for g in gens}
    if len(fields) > 1 or len(nvars) > 1:
        raise ValueError("generators live in different rings")
    return fields.pop(), nvars.pop()


def groebner_basis(gens, order: str = "grevlex") -> GroebnerBasis:
    """Reduced Groebner basis under the given order; fully deterministic."""
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return GroebnerBasis(order, ())
    field, nvars = _common_ring(gens)
    ctx = get_context(nvars, order)
    arith = _arith_for(field, ctx)
    forms = [poly_to_engine(g, ctx, arith.binary) for g in gens]
    basis, _ = buchberger(forms, ctx, arith)
    reduced = _minimalize_and_reduce(basis, ctx, arith)
    polys = [engine_to_poly(h, ctx, field, nvars) for h in reduced]
    return GroebnerBasis(order, tuple(polys))


def proj_dim(gens, r: int, order: str = "grevlex") -> int:
    """Dimension of Proj of S/(gens) in P^r; -1 for the empty scheme."""
    gens = [g for g in gens if not g.is_zero]
    for g in gens:
        if not g.is_homogeneous:
            raise ValueError("proj_dim requires homogeneous generators")
    if not gens:
        return r
    field, nvars = _common_ring(gens)
    if nvars != r + 1:
        raise ValueError(f"generators have {nvars} variables, expected {r + 1}")
    ctx = get_context(nvars, order)
    arith = _arith_for(field, ctx)
    forms = [poly_to_engine(g, ctx, arith.binary) for g in gens]
    _, dim = buchberger(forms, ctx, arith)
    return dim - 1 if dim >= 1 else -1


def hilbert_function(gens, d: int, num_vars=None, field=None) -> HilbertData:
    """dim_F (S/I)_d = number of degree-d monomials outside in(I)."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    gens = tuple(g for g in gens if not g.is_zero)
    if not gens:
        if num_vars is None:
            raise ValueError("need num_vars for the zero ideal")
        return HilbertData(gens, d, comb(num_vars - 1 + d, d))
    fld, nvars = _common_ring(gens)
    ctx = get_context(nvars, "grevlex")
    arith = _arith_for(fld, ctx)
    forms = [poly_to_engine(g, ctx, arith.binary) for g in gens]
    basis, _ = buchberger(forms, ctx, arith)
    lms = sorted(set(basis.divs))
    divides = ctx.divides
    count = 0
    for mon in monomials_of_degree(nvars, d):
        dm = ctx.pack_div(mon)
        if not any(divides(lm, dm) for lm in lms):
            count += 1
    return HilbertData(gens, d, count)


def ideal_intersection(gens_a, gens_b) -> list:
    """Generators of (gens_a) intersect (gens_b), by elimination.

    Computes a Groebner basis of t*A + (1-t)*B in an auxiliary ring with
    t first under an order eliminating t, and keeps the t-free elements.
    """
    gens_a = [g for g in gens_a if not g.is_zero]
    gens_b = [g for g in gens_b if not g.is_zero]
    if not gens_a or not gens_b:
        return []
    field, nvars = _common_ring(gens_a + gens_b)
    ctx = get_context(nvars + 1, "elim1")
    arith = _arith_for(field, ctx)

    def lift(f: Poly, t_exp: int):
        return {ctx.key_of((t_exp,) + m): c.code for m, c in f.terms.items()}

    def lift2(f: Poly, t_exp: int):
        return {ctx.key_of((t_exp,) + m) for m in f.terms}

    forms = []
    for a in gens_a:
        forms.append(lift2(a, 1) if arith.binary else lift(a, 1))
    for b in gens_b:
        low = lift2(b, 0) if arith.binary else lift(b, 0)
        high = lift2(b, 1) if arith.binary else lift(b, 1)
        if arith.binary:
            forms.append(low ^ high)
        else:
            f = dict(low)
            sub = field.ops.sub
            for k, c in high.items():
                f[k] = sub(f.get(k, 0), c)
                if not f[k]:
                    del f[k]
            forms.append(f)

    basis, _ = buchberger(forms, ctx, arith)
    reduced = _minimalize_and_reduce(basis, ctx, arith)
    out = []
    for h in reduced:
        lead = max(h)
        if ctx.exps_of(lead)[0] != 0:
            continue  # t-free leads come with t-free tails under elim1
        if arith.binary:
            terms = {ctx.exps_of(k)[1:]: field.one for k in h}
        else:
            terms = {ctx.exps_of(k)[1:]: field.from_code(c) for k, c in h.items()}
        out.append(Poly(field, nvars, terms))
    return out


# ---------------------------------------------------------------------------
# compiled ideals for repeated dimension queries
# ---------------------------------------------------------------------------

class CompiledIdeal:
    """A reduced Groebner basis kept in engine form.

    `dim_adding` restarts Buchberger from here plus extra generators,
    skipping the pairs internal to the cached basis; this is the hot path
    behind the parameter predicate.
    """

    def __init__(self, field, num_vars: int, gens):
        self.field = field
        self.num_vars = num_vars
        self.ctx = get_context(num_vars, "grevlex")
        self.arith = _arith_for(field, self.ctx)
        forms = [poly_to_engine(g, self.ctx, self.arith.binary)
                 for g in gens if not g.is_zero]
        if forms:
            basis, dim = buchberger(forms, self.ctx, self.arith)
            self.forms = _minimalize_and_reduce(basis, self.ctx, self.arith)
            self.dim = dim
        else:
            self.forms = []
            self.dim = num_vars

    def engine_form(self, f: Poly):
        return poly_to_engine(f, self.ctx, self.arith.binary)

    def dim_adding(self, extra_forms, stop_dim=None) -> int:
        """Krull dim of S/in(cached ideal + extras); may stop early at stop_dim."""
        extras = [f for f in extra_forms if f]
        _, dim = buchberger(self.forms + extras, self.ctx, self.arith,
                            stop_dim=stop_dim, gb_prefix=len(self.forms))
        return dim

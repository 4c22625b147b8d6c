"""The exterior algebra E = Λ(V) on v+1 generators e_0..e_v.

Monomials are bit masks over the generators; a homogeneous element is a
sparse mask -> coefficient map.  Signs come from counting transpositions
when sorting concatenated index sequences; this is the one place signs are
computed, everything else treats them as opaque.

The graded dual ω_E is represented two ways: as OmegaElement (dual-monomial
terms, used by the contraction oracle and tests) and, throughout the engine,
as a free module with shifted generator degrees via omega_as_free.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from .errors import InputError

MAX_VARS = 62


def popcount(mask: int) -> int:
    return mask.bit_count()


def bits(mask: int):
    """Indices of set bits, ascending."""
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


def wedge_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation (a..., b...) ascending; 0 if the
    masks intersect."""
    if a & b:
        return 0
    sign = 1
    for j in bits(b):
        if popcount(a >> (j + 1)) & 1:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def monomials(v: int, d: int):
    """All degree-d monomial masks of Λ on v+1 generators, ascending."""
    if d < 0 or d > v + 1:
        return ()
    return tuple(sorted(sum(1 << i for i in c) for c in combinations(range(v + 1), d)))


@lru_cache(maxsize=None)
def monomial_index(v: int, d: int):
    return {m: i for i, m in enumerate(monomials(v, d))}


class ExtElement:
    """Homogeneous element of Λ(V); terms is a mask -> field element map."""

    __slots__ = ("v", "field", "degree", "terms")

    def __init__(self, v, field, degree, terms=None):
        if v + 1 > MAX_VARS:
            raise InputError(f"v too large: {v}")
        self.v = v
        self.field = field
        self.degree = degree
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if popcount(m) != degree:
                    raise InputError("inhomogeneous exterior term")
                if not field.is_zero(c):
                    self.terms[m] = c

    @classmethod
    def zero(cls, v, field, degree=0):
        return cls(v, field, degree)

    @classmethod
    def one(cls, v, field):
        return cls(v, field, 0, {0: field.one})

    @classmethod
    def gen(cls, v, field, i):
        return cls(v, field, 1, {1 << i: field.one})

    @classmethod
    def linear(cls, v, field, coeffs):
        """Degree-1 element Σ coeffs[i]·e_i."""
        return cls(v, field, 1, {1 << i: field(c) for i, c in enumerate(coeffs)
                                 if not field.is_zero(field(c))})

    def is_zero(self):
        return not self.terms

    def scale(self, c):
        f = self.field
        if f.is_zero(c):
            return ExtElement(self.v, f, self.degree)
        return ExtElement(self.v, f, self.degree,
                          {m: f.mul(c, x) for m, x in self.terms.items()})

    def __add__(self, other):
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise InputError("degree mismatch in exterior sum")
        f = self.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(terms.get(m, f.zero), c)
            if f.is_zero(s):
                terms.pop(m, None)
            else:
                terms[m] = s
        return ExtElement(self.v, f, self.degree, terms)

    def __sub__(self, other):
        return self + other.scale(self.field.neg(self.field.one))

    def wedge(self, other):
        """self ∧ other."""
        f = self.field
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                s = wedge_sign(ma, mb)
                if s == 0:
                    continue
                m = ma | mb
                c = f.mul(ca, cb)
                if s < 0:
                    c = f.neg(c)
                acc = f.add(out.get(m, f.zero), c)
                if f.is_zero(acc):
                    out.pop(m, None)
                else:
                    out[m] = acc
        return ExtElement(self.v, f, self.degree + other.degree, out)

    def substitute(self, images):
        """Algebra map e_i -> images[i] (a list of degree-1 ExtElements,
        possibly over a different v)."""
        if not images:
            raise InputError("empty substitution")
        vv, f = images[0].v, self.field
        out = ExtElement(vv, f, self.degree)
        for m, c in self.terms.items():
            prod = ExtElement.one(vv, f).scale(c)
            for i in bits(m):
                prod = prod.wedge(images[i])
                if prod.is_zero():
                    break
            out = out + prod
        return out

    def drop_masked(self, kill_mask, v_new=None, sign=1):
        """Keep only terms disjoint from kill_mask (quotient by the ideal of
        trailing coordinates), optionally re-typed over a smaller algebra."""
        f = self.field
        vv = self.v if v_new is None else v_new
        terms = {m: (c if sign > 0 else f.neg(c))
                 for m, c in self.terms.items() if not (m & kill_mask)}
        return ExtElement(vv, f, self.degree, terms)

    def __eq__(self, other):
        return (isinstance(other, ExtElement) and self.v == other.v
                and self.degree == other.degree and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        def mono(m):
            return "e" + "".join(str(i) for i in bits(m)) if m else "1"
        return " + ".join(f"{c}*{mono(m)}" if c != self.field.one or m == 0
                          else mono(m)
                          for m, c in sorted(self.terms.items()))


class OmegaElement:
    """Element of the graded dual ω_E; terms map dual-monomial masks to
    coefficients.  A dual monomial with mask m sits in degree -popcount(m)."""

    __slots__ = ("v", "field", "degree", "terms")

    def __init__(self, v, field, degree, terms=None):
        self.v = v
        self.field = field
        self.degree = degree
        self.terms = {}
        if terms:
            for m, c in terms.items():
                if -popcount(m) != degree:
                    raise InputError("inhomogeneous dual term")
                if not field.is_zero(c):
                    self.terms[m] = c

    @classmethod
    def dual_monomial(cls, v, field, mask):
        return cls(v, field, -popcount(mask), {mask: field.one})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        f = self.field
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if other.degree != self.degree:
            raise InputError("degree mismatch in dual sum")
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = f.add(terms.get(m, f.zero), c)
            if f.is_zero(s):
                terms.pop(m, None)
            else:
                terms[m] = s
        return OmegaElement(self.v, f, self.degree, terms)

    def scale(self, c):
        f = self.field
        return OmegaElement(self.v, f, self.degree,
                            {m: f.mul(c, x) for m, x in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, OmegaElement) and self.degree == other.degree
                and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"{c}*d{''.join(str(i) for i in bits(m))}" for m, c in sorted(self.terms.items()))


def gen_act_dual(j: int, mask: int):
    """e_j acting on the dual monomial with the given mask: returns
    (sign, new_mask) or None.  Determined by <w, e_j·D> = <w ∧ e_j, D>."""
    if not (mask >> j) & 1:
        return None
    rest = mask & ~(1 << j)
    sign = -1 if popcount(rest >> (j + 1)) & 1 else 1
    return sign, rest


def act(u: ExtElement, alpha: OmegaElement) -> OmegaElement:
    """Left action of Λ(V) on ω_E, computed monomial by monomial via the
    adjointness <w, u·α> = <w ∧ u, α>."""
    f = u.field
    out = OmegaElement(alpha.v, f, alpha.degree + u.degree)
    for mu, cu in u.terms.items():
        for ma, ca in alpha.terms.items():
            sign, m = 1, ma
            ok = True
            for j in reversed(bits(mu)):  # u = e_j1 ∧ u' acts as e_j1∘(u'·-)
                r = gen_act_dual(j, m)
                if r is None:
                    ok = False
                    break
                s, m = r
                sign *= s
            if not ok:
                continue
            c = f.mul(cu, ca)
            if sign < 0:
                c = f.neg(c)
            out = out + OmegaElement(alpha.v, f, out.degree, {m: c})
    return out


def contract(u: ExtElement, alpha: OmegaElement) -> OmegaElement:
    """The permutation-sum contraction: for u = u_1∧..∧u_p and
    α = α_1∧..∧α_{p+q},

        u·α = Σ_σ sgn(σ) α_{σ(q+1)}(u_1) ... α_{σ(q+p)}(u_p)
                      α_{σ(1)} ∧ ... ∧ α_{σ(q)},

    σ over permutations of {1..p+q} preserving the order of {1..q}.
    Slow; kept literal as the oracle that freezes the sign convention
    (`act` must agree with it, which is enforced by tests).
    """
    f = u.field
    p = u.degree
    out = OmegaElement(alpha.v, f, alpha.degree + p)
    for mu, cu in u.terms.items():
        us = bits(mu)
        for ma, ca in alpha.terms.items():
            asrt = bits(ma)
            n = len(asrt)
            q = n - p
            if q < 0:
                continue
            acc = OmegaElement(alpha.v, f, out.degree)
            for sigma in permutations(range(n)):
                head = sigma[:q]
                if list(head) != sorted(head):
                    continue
                # evaluation block: α_{σ(q+i)}(u_i) = δ
                if any(asrt[sigma[q + i]] != us[i] for i in range(p)):
                    continue
                sgn = 1
                for i in range(n):
                    for j in range(i + 1, n):
                        if sigma[i] > sigma[j]:
                            sgn = -sgn
                mask = sum(1 << asrt[k] for k in head)
                c = f.mul(cu, ca)
                if sgn < 0:
                    c = f.neg(c)
                acc = acc + OmegaElement(alpha.v, f, out.degree, {mask: c})
            out = out + acc
    return out


@lru_cache(maxsize=None)
def omega_free_table(v: int):
    """The isomorphism E ⊗ Λ^{v+1}(V*) -> ω_E of Lemma-type: fixes once the
    generator α = dual of e_0∧..∧e_v and maps the free-module monomial u to
    u·α = sign · (dual monomial with complementary mask).

    Returns {free mask u: (sign, dual mask)}.
    """
    full = (1 << (v + 1)) - 1
    table = {}
    for d in range(v + 2):
        for u in monomials(v, d):
            comp = full & ~u
            s = wedge_sign(comp, u)
            table[u] = (s, comp)
    return table


def free_coords_to_omega(v, field, gen_twist_a, coeff_by_mask):
    """Interpret free-storage coordinates over a generator of ω_E(a) as an
    OmegaElement (ignoring the twist: degrees are the untwisted ones)."""
    table = omega_free_table(v)
    terms = {}
    f = field
    for u, c in coeff_by_mask.items():
        s, comp = table[u]
        terms[comp] = f.add(terms.get(comp, f.zero), c if s > 0 else f.neg(c))
    deg = -popcount(next(iter(terms))) if terms else 0
    return OmegaElement(v, field, deg, {m: c for m, c in terms.items() if not f.is_zero(c)})

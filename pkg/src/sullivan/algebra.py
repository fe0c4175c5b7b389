"""Free (Z, Z/2)-bigraded commutative algebras on named generators.

A generator carries a cohomological Z-degree and a super Z/2-parity.  The
commutation rule for homogeneous x, y is

    x*y = (-1)^(|x||y| + p(x)p(y)) * y*x

with |.| the Z-degree and p the parity bit.  A generator g is of square-zero
type when degree(g) + parity(g) is odd (then g*g = 0), of polynomial type
otherwise.

Monomials are stored canonically as tuples of (generator id, exponent) pairs
sorted by id; the Koszul sign produced while sorting is the single
authoritative implementation of the sign rule.  Elements are finite sparse
sums of monomials with exact field coefficients.
"""

from __future__ import annotations

from .fields import QQ

EVEN = 0
ODD = 1

PARITY_NAMES = {EVEN: "even", ODD: "odd"}


class AlgebraError(ValueError):
    pass


def parity_from_name(name):
    if name in (EVEN, ODD):
        return name
    try:
        return {"even": EVEN, "odd": ODD}[name]
    except KeyError:
        raise AlgebraError(f"parity must be 'even' or 'odd', got {name!r}") from None


class Generator:
    """A named generator with a fixed bidegree (degree, parity)."""

    __slots__ = ("id", "name", "degree", "parity")

    def __init__(self, id, name, degree, parity):
        self.id = id
        self.name = name
        self.degree = degree
        self.parity = parity

    @property
    def square_zero(self):
        return (self.degree + self.parity) % 2 == 1

    def __repr__(self):
        return f"Generator({self.name!r}, degree={self.degree}, parity={PARITY_NAMES[self.parity]})"


class Algebra:
    """A free bigraded commutative algebra on an ordered list of generators."""

    def __init__(self, generators, field=QQ):
        self.field = field
        gens = []
        by_name = {}
        for i, spec in enumerate(generators):
            name, degree, parity = spec
            parity = parity_from_name(parity)
            if not isinstance(degree, int) or degree < 0:
                raise AlgebraError(f"generator {name!r}: degree must be an integer >= 0")
            if name in by_name:
                raise AlgebraError(f"duplicate generator name {name!r}")
            g = Generator(i, name, degree, parity)
            gens.append(g)
            by_name[name] = g
        self.generators = tuple(gens)
        self.by_name = by_name

    @property
    def has_degree_zero_generator(self):
        return any(g.degree == 0 for g in self.generators)

    def generator(self, name):
        try:
            return self.by_name[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None

    def zero(self):
        return Element(self, {})

    def one(self):
        return Element(self, {(): self.field.one})

    def scalar(self, c):
        c = self.field.coerce(c)
        if not c:
            return self.zero()
        return Element(self, {(): c})

    def gen(self, name):
        g = self.generator(name)
        return Element(self, {((g.id, 1),): self.field.one})

    def monomial(self, mono, coeff=1):
        coeff = self.field.coerce(coeff)
        if not coeff:
            return self.zero()
        return Element(self, {mono: coeff})

    def monomial_degree(self, mono):
        return sum(e * self.generators[i].degree for i, e in mono)

    def monomial_parity(self, mono):
        return sum(e * self.generators[i].parity for i, e in mono) % 2

    def monomial_key(self, mono):
        """Deterministic order: (total degree, dense exponent vector)."""
        exps = [0] * len(self.generators)
        for i, e in mono:
            exps[i] = e
        return (self.monomial_degree(mono), tuple(exps))

    def monomial_basis(self, degree, parity=None):
        """All canonical monomials of the given degree (and parity, if not None).

        Returns them sorted by the deterministic monomial order.  Requires
        every generator to have degree >= 1, otherwise the graded piece
        would be infinite-dimensional.
        """
        if degree < 0:
            raise AlgebraError("degree must be >= 0")
        if self.has_degree_zero_generator:
            raise AlgebraError("monomial basis undefined: algebra has a degree-0 generator")
        if parity is not None:
            parity = parity_from_name(parity)
        out = []
        n = len(self.generators)

        def rec(idx, remaining, par, acc):
            if remaining == 0:
                if parity is None or par == parity:
                    out.append(tuple(acc))
                return
            if idx == n:
                return
            g = self.generators[idx]
            max_e = 1 if g.square_zero else remaining // g.degree
            rec(idx + 1, remaining, par, acc)
            for e in range(1, max_e + 1):
                if e * g.degree > remaining:
                    break
                acc.append((g.id, e))
                rec(idx + 1, remaining - e * g.degree, (par + e * g.parity) % 2, acc)
                acc.pop()

        rec(0, degree, EVEN, [])
        out.sort(key=self.monomial_key)
        return out

    def format_monomial(self, mono):
        if not mono:
            return "1"
        parts = []
        for i, e in mono:
            name = self.generators[i].name
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __repr__(self):
        gens = ", ".join(
            f"{g.name}:({g.degree},{PARITY_NAMES[g.parity]})" for g in self.generators
        )
        return f"Algebra[{self.field.name}]({gens})"


def mul_monomials(algebra, m1, m2):
    """Canonical product of two canonical monomials.

    Returns (sign, monomial) with sign in {+1, -1}, or (0, None) when the
    product vanishes because a square-zero generator is repeated.  The sign
    counts weighted transpositions while merging the two sorted factor
    sequences: moving x past y costs (-1)^(|x||y| + p(x)p(y)).
    """
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    gens = algebra.generators
    # Suffix weights of m1: total degree and parity count not yet consumed.
    deg_left = sum(e * gens[i].degree for i, e in m1)
    par_left = sum(e * gens[i].parity for i, e in m1)
    out = []
    sign_exp = 0
    i1 = i2 = 0
    while i1 < len(m1) and i2 < len(m2):
        g1, e1 = m1[i1]
        g2, e2 = m2[i2]
        if g1 < g2:
            out.append((g1, e1))
            deg_left -= e1 * gens[g1].degree
            par_left -= e1 * gens[g1].parity
            i1 += 1
        elif g2 < g1:
            gen = gens[g2]
            sign_exp += e2 * (gen.degree * deg_left + gen.parity * par_left)
            out.append((g2, e2))
            i2 += 1
        else:
            gen = gens[g1]
            if gen.square_zero:
                return 0, None
            rest_deg = deg_left - e1 * gen.degree
            rest_par = par_left - e1 * gen.parity
            sign_exp += e2 * (gen.degree * rest_deg + gen.parity * rest_par)
            out.append((g1, e1 + e2))
            deg_left = rest_deg
            par_left = rest_par
            i1 += 1
            i2 += 1
    out.extend(m1[i1:])
    out.extend(m2[i2:])
    return (1 if sign_exp % 2 == 0 else -1), tuple(out)


class Element:
    """A finite sum of canonical monomials with nonzero field coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_terms(algebra, items):
        terms = {}
        for mono, coeff in items:
            if not coeff:
                continue
            acc = terms.get(mono)
            acc = coeff if acc is None else acc + coeff
            if acc:
                terms[mono] = acc
            else:
                del terms[mono]
        return Element(algebra, terms)

    # -- structure ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def monomials(self):
        return sorted(self.terms, key=self.algebra.monomial_key)

    def coefficient(self, mono):
        return self.terms.get(mono, self.algebra.field.zero)

    def is_homogeneous(self):
        bidegs = {
            (self.algebra.monomial_degree(m), self.algebra.monomial_parity(m))
            for m in self.terms
        }
        return len(bidegs) <= 1

    def degree(self):
        """Z-degree of a homogeneous nonzero element."""
        degs = {self.algebra.monomial_degree(m) for m in self.terms}
        if len(degs) != 1:
            raise AlgebraError("degree undefined: element is zero or inhomogeneous")
        return degs.pop()

    def parity(self):
        pars = {self.algebra.monomial_parity(m) for m in self.terms}
        if len(pars) != 1:
            raise AlgebraError("parity undefined: element is zero or inhomogeneous")
        return pars.pop()

    def bidegree(self):
        return (self.degree(), self.parity())

    def homogeneous_parts(self):
        """Split into (degree, parity) -> homogeneous Element."""
        parts = {}
        for m, c in self.terms.items():
            key = (self.algebra.monomial_degree(m), self.algebra.monomial_parity(m))
            parts.setdefault(key, {})[m] = c
        return {k: Element(self.algebra, v) for k, v in sorted(parts.items())}

    def max_degree(self):
        if not self.terms:
            return None
        return max(self.algebra.monomial_degree(m) for m in self.terms)

    # -- arithmetic ---------------------------------------------------------

    def _check_same_algebra(self, other):
        if self.algebra is not other.algebra:
            raise AlgebraError("operands belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check_same_algebra(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m)
            acc = c if acc is None else acc + c
            if acc:
                terms[m] = acc
            else:
                del terms[m]
        return Element(self.algebra, terms)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        self._check_same_algebra(other)
        terms = {}
        alg = self.algebra
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = mul_monomials(alg, m1, m2)
                if sign == 0:
                    continue
                c = c1 * c2
                if sign < 0:
                    c = -c
                acc = terms.get(m)
                acc = c if acc is None else acc + c
                if acc:
                    terms[m] = acc
                else:
                    del terms[m]
        return Element(self.algebra, terms)

    def __rmul__(self, other):
        # scalar * element; multiplication by scalars is commutative
        return self.scale(other)

    def scale(self, c):
        c = self.algebra.field.coerce(c)
        if not c:
            return self.algebra.zero()
        return Element(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise AlgebraError("exponent must be a nonnegative integer")
        result = self.algebra.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.terms.items())))

    # -- printing ------------------------------------------------------------

    def __str__(self):
        from .parsing import format_element

        return format_element(self)

    def __repr__(self):
        return f"<Element {self}>"


def transport(element, target_algebra):
    """Re-express an element in another algebra, matching generators by name.

    Used to compare elements built over two independently constructed copies
    of the same presentation.  Each generator used by the element must exist
    in the target with the same (degree, parity); the target's generator
    order may differ, in which case the Koszul signs of re-sorting are
    accounted for.
    """
    src = element.algebra
    if target_algebra is src:
        return element
    items = []
    for mono, coeff in element.terms.items():
        sign = 1
        new = ()
        for i, e in mono:
            g = src.generators[i]
            h = target_algebra.generator(g.name)
            if (h.degree, h.parity) != (g.degree, g.parity):
                raise AlgebraError(f"generator {g.name!r} has different bidegree in target")
            s, new = mul_monomials(target_algebra, new, ((h.id, e),))
            if s == 0:
                raise AlgebraError("transport produced a vanishing monomial")
            sign *= s
        c = target_algebra.field.coerce(coeff)
        items.append((new, c if sign > 0 else -c))
    return Element.from_terms(target_algebra, items)

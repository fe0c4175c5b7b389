"""Differentials on free bigraded algebras: presentations, morphisms,
cocycle checks and cohomology in a degree window.

A presentation assigns to every generator a differential value that raises
the Z-degree by exactly 1 and preserves parity; d extends to all elements by
the graded Leibniz rule

    d(x*y) = (dx)*y + (-1)^|x| x*(dy)

where |x| is the Z-degree (the parity enters commutation only, never the
Leibniz sign).  d^2 = 0 is equivalent to d(dg) = 0 on generators and is
verified on demand, with the result cached.
"""

from __future__ import annotations

from .algebra import Algebra, Element, mul_monomials
from .linalg import kernel_basis, reduce_against, row_reduce
from .parsing import parse_element


class PresentationError(ValueError):
    pass


class MorphismError(ValueError):
    pass


class Presentation:
    """A free bigraded commutative algebra with a degree-+1 differential."""

    def __init__(self, algebra, differentials=None, name=None):
        self.algebra = algebra
        self.name = name
        self._d = {}
        self._d2_status = None  # None = unchecked, True = ok, (gen, residual) = failed
        differentials = differentials or {}
        for key, value in differentials.items():
            gen = algebra.generator(key) if isinstance(key, str) else algebra.generators[key.id]
            if isinstance(value, str):
                value = parse_element(value, algebra)
            if value.algebra is not algebra:
                raise PresentationError(f"d({gen.name}) lives in a different algebra")
            if value.is_zero():
                continue
            if not value.is_homogeneous():
                raise PresentationError(f"d({gen.name}) is not homogeneous")
            deg, par = value.bidegree()
            if deg != gen.degree + 1 or par != gen.parity:
                raise PresentationError(
                    f"d({gen.name}) must have bidegree ({gen.degree + 1}, "
                    f"{'odd' if gen.parity else 'even'}); got ({deg}, {'odd' if par else 'even'})"
                )
            self._d[gen.id] = value

    @staticmethod
    def build(generators, differentials=None, field=None, name=None):
        """Construct from (name, degree, parity) triples and text differentials."""
        from .fields import QQ

        algebra = Algebra(generators, field if field is not None else QQ)
        return Presentation(algebra, differentials, name=name)

    def d_of_generator(self, gen):
        if isinstance(gen, str):
            gen = self.algebra.generator(gen)
        return self._d.get(gen.id, self.algebra.zero())

    @property
    def differentials(self):
        return dict(self._d)

    def apply_d(self, element) -> Element:
        """Leibniz extension of the generator assignment."""
        if element.algebra is not self.algebra:
            raise PresentationError("element belongs to a different algebra")
        alg = self.algebra
        acc = {}
        for mono, coeff in element.terms.items():
            prefix_degree = 0
            for pos, (gid, exp) in enumerate(mono):
                dgen = self._d.get(gid)
                gen = alg.generators[gid]
                if dgen is not None:
                    for j in range(exp):
                        left = mono[:pos] + (((gid, j),) if j else ())
                        right = (((gid, exp - j - 1),) if exp - j - 1 else ()) + mono[pos + 1 :]
                        sign = (prefix_degree + j * gen.degree) % 2
                        for m2, c2 in dgen.terms.items():
                            s1, m12 = mul_monomials(alg, left, m2)
                            if s1 == 0:
                                continue
                            if right:
                                s2, m_all = mul_monomials(alg, m12, right)
                                if s2 == 0:
                                    continue
                            else:
                                s2, m_all = 1, m12
                            c = coeff * c2
                            if (sign == 1) ^ (s1 < 0) ^ (s2 < 0):
                                c = -c
                            prev = acc.get(m_all)
                            acc[m_all] = c if prev is None else prev + c
                prefix_degree += exp * gen.degree
        return Element(alg, {m: c for m, c in acc.items() if c})

    def is_cocycle(self, element) -> bool:
        if not element.is_homogeneous():
            raise PresentationError("is_cocycle requires a homogeneous element")
        return self.apply_d(element).is_zero()

    def verify_d_squared(self):
        """Return None if d^2 = 0 on every generator, else (generator, d(dg))."""
        if self._d2_status is True:
            return None
        if self._d2_status not in (None, True):
            return self._d2_status
        for gen in self.algebra.generators:
            dg = self._d.get(gen.id)
            if dg is None:
                continue
            ddg = self.apply_d(dg)
            if not ddg.is_zero():
                self._d2_status = (gen, ddg)
                return self._d2_status
        self._d2_status = True
        return None

    def ensure_d_squared(self):
        bad = self.verify_d_squared()
        if bad is not None:
            gen, residual = bad
            raise PresentationError(f"d^2 != 0: d(d {gen.name}) = {residual}")
        return self

    @property
    def d_squared_verified(self):
        return self._d2_status is True

    def parse(self, text) -> Element:
        return parse_element(text, self.algebra)

    def same_structure(self, other) -> bool:
        """Structural equality: same field, generator list and differentials."""
        if self.algebra.field.name != other.algebra.field.name:
            return False
        mine = [(g.name, g.degree, g.parity) for g in self.algebra.generators]
        theirs = [(g.name, g.degree, g.parity) for g in other.algebra.generators]
        if mine != theirs:
            return False
        for g, h in zip(self.algebra.generators, other.algebra.generators):
            dg = self._d.get(g.id, self.algebra.zero())
            dh = other._d.get(h.id, other.algebra.zero())
            if {m: c for m, c in dg.terms.items()} != {m: c for m, c in dh.terms.items()}:
                return False
        return True

    def __repr__(self):
        label = self.name or "Presentation"
        gens = ", ".join(g.name for g in self.algebra.generators)
        return f"<{label}: [{gens}] over {self.algebra.field.name}>"


class Morphism:
    """A map between presentations given by generator images in the target."""

    def __init__(self, source, target, images, name=None):
        if source.algebra.field.name != target.algebra.field.name:
            raise MorphismError("source and target must share the coefficient field")
        self.source = source
        self.target = target
        self.name = name
        self._images = {}
        for key, value in images.items():
            gen = source.algebra.generator(key) if isinstance(key, str) else key
            if isinstance(value, str):
                value = parse_element(value, target.algebra)
            if value.algebra is not target.algebra:
                raise MorphismError(f"image of {gen.name} lives in the wrong algebra")
            self._images[gen.id] = value
        for gen in source.algebra.generators:
            if gen.id not in self._images:
                raise MorphismError(f"no image given for generator {gen.name}")
        self._verified = False

    def image_of(self, gen):
        if isinstance(gen, str):
            gen = self.source.algebra.generator(gen)
        return self._images[gen.id]

    @property
    def images(self):
        return {
            self.source.algebra.generators[gid].name: img
            for gid, img in self._images.items()
        }

    def apply(self, element) -> Element:
        if element.algebra is not self.source.algebra:
            raise MorphismError("element is not over the source algebra")
        target = self.target.algebra
        acc = {}
        for mono, coeff in element.terms.items():
            term = target.scalar(coeff)
            for gid, exp in mono:
                term = term * (self._images[gid] ** exp)
                if term.is_zero():
                    break
            for m, c in term.terms.items():
                prev = acc.get(m)
                acc[m] = c if prev is None else prev + c
        return Element(target, {m: c for m, c in acc.items() if c})

    def verify(self):
        """None if degree/parity-preserving and d-commuting; else a counterexample.

        The counterexample is a triple (generator, reason, residual)."""
        for gen in self.source.algebra.generators:
            img = self._images[gen.id]
            if not img.is_zero():
                if not img.is_homogeneous():
                    return (gen, "image not homogeneous", img)
                deg, par = img.bidegree()
                if (deg, par) != (gen.degree, gen.parity):
                    return (gen, "image has wrong bidegree", img)
        for gen in self.source.algebra.generators:
            lhs = self.apply(self.source.d_of_generator(gen))
            rhs = self.target.apply_d(self._images[gen.id])
            if lhs != rhs:
                return (gen, "does not commute with d", lhs - rhs)
        self._verified = True
        return None

    def ensure_verified(self):
        bad = self.verify()
        if bad is not None:
            gen, reason, residual = bad
            raise MorphismError(f"morphism fails at {gen.name}: {reason}; residual = {residual}")
        return self

    def then(self, other) -> "Morphism":
        """Composite mapping first through self, then through other."""
        if other.source is not self.target:
            raise MorphismError("composition mismatch")
        images = {
            gen.name: other.apply(self._images[gen.id])
            for gen in self.source.algebra.generators
        }
        return Morphism(self.source, other.target, images)

    def __repr__(self):
        label = self.name or "Morphism"
        return f"<{label}: {self.source!r} -> {self.target!r}>"


def identity_morphism(pres) -> Morphism:
    return Morphism(pres, pres, {g.name: pres.algebra.gen(g.name) for g in pres.algebra.generators})


class CohomologyReport:
    """Exact cohomology of a presentation in the window 0..max_degree.

    Results above the window are not claimed; the degree-max_degree kernel
    does use the full differential into degree max_degree + 1.
    """

    def __init__(self, presentation, max_degree, dims, representatives):
        self.presentation = presentation
        self.max_degree = max_degree
        self.dims = dims
        self.representatives = representatives

    def dimension(self, degree):
        return self.dims[degree]

    def lines(self):
        out = [f"cohomology window: degrees 0..{self.max_degree} (nothing claimed above)"]
        for d, dim in enumerate(self.dims):
            reps = ", ".join(str(r) for r in self.representatives[d])
            out.append(f"H^{d}: dim {dim}" + (f"  [{reps}]" if reps else ""))
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _differential_matrix(pres, basis_lo, basis_hi):
    """Matrix of d: rows indexed by basis_hi, columns by basis_lo."""
    field = pres.algebra.field
    index = {m: i for i, m in enumerate(basis_hi)}
    rows = [[field.zero] * len(basis_lo) for _ in basis_hi]
    for j, mono in enumerate(basis_lo):
        image = pres.apply_d(pres.algebra.monomial(mono))
        for m, c in image.terms.items():
            rows[index[m]][j] = c
    return rows


def cohomology(pres, max_degree) -> CohomologyReport:
    """Exact dimensions and representative cocycles for degrees 0..max_degree."""
    if max_degree < 0:
        raise PresentationError("max_degree must be >= 0")
    pres.ensure_d_squared()
    alg = pres.algebra
    field = alg.field
    bases = [alg.monomial_basis(d) for d in range(max_degree + 2)]
    dims = []
    reps = []
    image_red, image_pivots = [], []
    for d in range(max_degree + 1):
        basis = bases[d]
        n = len(basis)
        matrix = _differential_matrix(pres, basis, bases[d + 1])
        kernel = kernel_basis(matrix, field, n)
        reduced = [reduce_against(v, image_red, image_pivots) for v in kernel]
        rref_rows, pivots = row_reduce(reduced, field, n)
        dims.append(len(pivots))
        reps.append([
            Element.from_terms(alg, [(basis[c], row[c]) for c in range(n)])
            for row in rref_rows
        ])
        # image of this degree's differential, for the next step
        cols = []
        for j in range(n):
            vec = [matrix[i][j] for i in range(len(bases[d + 1]))]
            cols.append(vec)
        image_red, image_pivots = row_reduce(cols, field, len(bases[d + 1]))
    return CohomologyReport(pres, max_degree, dims, reps)


def closed_basis(pres, degree):
    """Basis of the space of degree-`degree` cocycles, as Elements."""
    alg = pres.algebra
    basis = alg.monomial_basis(degree)
    matrix = _differential_matrix(pres, basis, alg.monomial_basis(degree + 1))
    kernel = kernel_basis(matrix, alg.field, len(basis))
    return [
        Element.from_terms(alg, [(basis[c], v[c]) for c in range(len(basis))])
        for v in kernel
    ]

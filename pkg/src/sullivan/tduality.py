"""The universal T-fold presentation, T-duality configurations, derived
Fourier-Mukai quintuples, and the reusable model library.

A T-duality configuration on a presentation g is a pair of closed degree-2
even classes c1, c2 together with a degree-3 even element h3 trivializing
their product: d h3 = c1 * c2.  This is exactly a morphism from the T-fold
presentation R[xc2, xt2, y3] (d y3 = xc2*xt2) into CE(g), and it induces the
full quintuple

    a_{3,1} = h3 - e1 * c2,   a_{3,2} = h3 - c1 * e2,   b = e1 * e2

over the fiber product CE(g)[e1, e2].

ASCII generator names mirror the usual checked/tilde decorations:
    xc2 / xt2   checked / tilde degree-2 classes of the T-fold
    yc1 / yt1   the circle generators of its two extensions
    ec1 / et1   generic extension generators in derived quintuples
"""

from __future__ import annotations

from .constructions import (
    ConstructionError,
    central_extension,
    cyclify,
    extension_fiber_product,
)
from .dgca import Morphism, Presentation, cohomology
from .fields import QQ
from .twisted import FMQuintuple


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# model library
# ---------------------------------------------------------------------------


def sphere_model(n, field=QQ) -> Presentation:
    """Minimal presentation of the n-sphere: one closed odd generator, or the
    even pair (x_n, x_{2n-1}) with d x_{2n-1} = x_n^2.  n = 1 is admitted as
    the classical simple-space exception."""
    if n <= 0:
        raise ConstructionError("sphere dimension must be >= 1")
    if n == 1:
        return Presentation.build([("t1", 1, "even")], {}, field=field, name="lS1")
    if n % 2 == 1:
        return Presentation.build([(f"x{n}", n, "even")], {}, field=field, name=f"lS{n}")
    top = 2 * n - 1
    return Presentation.build(
        [(f"x{n}", n, "even"), (f"x{top}", top, "even")],
        {f"x{top}": f"x{n}^2"},
        field=field,
        name=f"lS{n}",
    )


def line_model(n, field=QQ) -> Presentation:
    """R[x_{n+1}] with zero differential: one closed generator of degree n+1."""
    if n < 1:
        raise ConstructionError("need n >= 1")
    return Presentation.build(
        [(f"x{n + 1}", n + 1, "even")], {}, field=field, name=f"b{n}u1" if n > 1 else "bu1"
    )


def btfold(field=QQ) -> Presentation:
    """R[xc2, xt2, y3] with d y3 = xc2 * xt2."""
    return Presentation.build(
        [("xc2", 2, "even"), ("xt2", 2, "even"), ("y3", 3, "even")],
        {"y3": "xc2*xt2"},
        field=field,
        name="btfold",
    )


def contractible(field=QQ) -> Presentation:
    """R[y1, x2] with d y1 = x2; has the cohomology of a point."""
    return Presentation.build(
        [("y1", 1, "even"), ("x2", 2, "even")], {"y1": "x2"}, field=field, name="contractible"
    )


def cyc_b2u1(field=QQ) -> Presentation:
    return cyclify(line_model(2, field)).presentation


def cyc_lS4(field=QQ) -> Presentation:
    return cyclify(sphere_model(4, field)).presentation


LIBRARY = {
    "lS2": lambda: sphere_model(2),
    "lS3": lambda: sphere_model(3),
    "lS4": lambda: sphere_model(4),
    "lS5": lambda: sphere_model(5),
    "lS6": lambda: sphere_model(6),
    "lS7": lambda: sphere_model(7),
    "bu1": lambda: line_model(1),
    "b2u1": lambda: line_model(2),
    "b3u1": lambda: line_model(3),
    "btfold": btfold,
    "cyc_b2u1": cyc_b2u1,
    "cyc_lS4": cyc_lS4,
    "contractible": contractible,
}


def library_presentation(name) -> Presentation:
    try:
        ctor = LIBRARY[name]
    except KeyError:
        raise ConstructionError(f"unknown library presentation {name!r}") from None
    return ctor().ensure_d_squared()


def library_extensions():
    """Named central extensions used by randomized law tests."""
    bt = btfold()
    ls2 = sphere_model(2)
    bu1 = line_model(1)
    out = {
        "p1": central_extension(bt, bt.algebra.gen("xc2"), name="yc1"),
        "p2": central_extension(bt, bt.algebra.gen("xt2"), name="yt1"),
        "lS2-by-x2": central_extension(ls2, ls2.algebra.gen("x2"), name="y1"),
        "bu1-by-x2": central_extension(bu1, bu1.algebra.gen("x2"), name="y1"),
    }
    return out


def phi1_isomorphism() -> tuple[Morphism, Morphism]:
    """The isomorphism cyc(b^2 u1) -> btfold and its inverse.

    Sends x3 |-> y3, the shifted generator |-> xt2, the canonical 2-class
    |-> xc2; both composites are the identity on generators."""
    bt = btfold()
    cyc = cyclify(line_model(2))
    cp = cyc.presentation
    fwd = Morphism(
        cp,
        bt,
        {"x3": "y3", cyc.shift_names["x3"]: "xt2", cyc.cocycle_name: "xc2"},
        name="phi1",
    ).ensure_verified()
    bwd = Morphism(
        bt,
        cp,
        {"y3": "x3", "xt2": cyc.shift_names["x3"], "xc2": cyc.cocycle_name},
        name="phi1 inverse",
    ).ensure_verified()
    return fwd, bwd


# ---------------------------------------------------------------------------
# T-duality configurations
# ---------------------------------------------------------------------------


class TDualityConfig:
    """Validated (c1, c2, h3) with d h3 = c1 * c2 on a base presentation."""

    def __init__(self, base, c1, c2, h3):
        self.base = base
        self.c1 = c1
        self.c2 = c2
        self.h3 = h3

    def as_morphism(self) -> Morphism:
        """The configuration as a morphism from the T-fold presentation."""
        return Morphism(
            btfold(self.base.algebra.field),
            self.base,
            {"xc2": self.c1, "xt2": self.c2, "y3": self.h3},
            name="tduality config",
        ).ensure_verified()

    def __repr__(self):
        return f"<TDualityConfig c1={self.c1}, c2={self.c2}, h3={self.h3}>"


def validate_config(base, c1, c2, h3) -> TDualityConfig:
    """Check both closedness conditions and the trivialization d h3 = c1*c2.

    Raises ConfigError naming the failing check and carrying the residual."""
    for label, c in (("first", c1), ("second", c2)):
        if c.is_zero() or not c.is_homogeneous() or c.bidegree() != (2, 0):
            raise ConfigError(f"not a degree-(2, even) class: {label}")
        residual = base.apply_d(c)
        if not residual.is_zero():
            raise ConfigError(f"not closed: {label} (d = {residual})")
    if not h3.is_zero():
        if not h3.is_homogeneous() or h3.bidegree() != (3, 0):
            raise ConfigError("h3 must have bidegree (3, even)")
    residual = base.apply_d(h3) - c1 * c2
    if not residual.is_zero():
        raise ConfigError(f"dh3 mismatch: residual = {residual}")
    return TDualityConfig(base, c1, c2, h3)


class DerivedQuintuple:
    """A quintuple remembering the fiber product it came from."""

    def __init__(self, quintuple, fiber_product, config):
        self.quintuple = quintuple
        self.fiber_product = fiber_product
        self.config = config


def derive_quintuple(cfg: TDualityConfig, names=("ec1", "et1")) -> DerivedQuintuple:
    """Build extensions, twists and kernel from a validated configuration.

    a_{3,1} = h3 - e1*c2 on the first extension, a_{3,2} = h3 - c1*e2 on the
    second, b = e1*e2 on the fiber product; closedness of both twists and the
    kernel relation are re-verified by the FMQuintuple constructor."""
    fp = extension_fiber_product(cfg.base, cfg.c1, cfg.c2, names=names)
    ext1, ext2 = fp.ext1, fp.ext2
    e1 = ext1.total.algebra.gen(names[0])
    e2 = ext2.total.algebra.gen(names[1])
    a31 = ext1.inclusion.apply(cfg.h3) - e1 * ext1.inclusion.apply(cfg.c2)
    a32 = ext2.inclusion.apply(cfg.h3) - ext2.inclusion.apply(cfg.c1) * e2
    b = fp.total.algebra.gen(names[0]) * fp.total.algebra.gen(names[1])
    q = FMQuintuple(
        total=fp.total,
        side1=ext1.total,
        side2=ext2.total,
        incl1=fp.incl1,
        incl2=fp.incl2,
        fiber1=[fp.gen2],
        fiber2=[fp.gen1],
        a1=a31,
        a2=a32,
        b=b,
    )
    return DerivedQuintuple(q, fp, cfg)


def btfold_quintuple() -> DerivedQuintuple:
    """The universal quintuple: extensions of the T-fold presentation itself."""
    bt = btfold()
    a = bt.algebra
    cfg = validate_config(bt, a.gen("xc2"), a.gen("xt2"), a.gen("y3"))
    return derive_quintuple(cfg, names=("yc1", "yt1"))


def btfold_cohomology_dims():
    return cohomology(btfold(), 3).dims

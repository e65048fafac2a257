"""Concrete vector-lattice models over exact rational scalars.

Five element families share one calculus: coordinate vectors, step
functions on a fixed partition of [0,1], finitely supported sequences,
eventually constant sequences, and continuous piecewise-linear
functions on [0,1].  Scalars are ``fractions.Fraction`` throughout, so
every order comparison, supremum and infimum below is exact.  Elements
are immutable and kept in a canonical form that makes equality
syntactic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MalformedElement, SpaceMismatch, Unsupported


def q(value) -> Fraction:
    """Coerce ``value`` to an exact rational.  Floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) or isinstance(value, str):
        return Fraction(value)
    raise MalformedElement(f"not an exact rational: {value!r}")


ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# space descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Coordinate:
    """R^n with the coordinatewise order."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise MalformedElement("coordinate space needs an integer n >= 1")


@dataclass(frozen=True)
class SimpleFunction:
    """Step functions on [0,1] over a fixed partition 0 = t0 < ... < tm = 1."""

    partition: tuple

    def __post_init__(self):
        pts = tuple(q(t) for t in self.partition)
        object.__setattr__(self, "partition", pts)
        if len(pts) < 2 or pts[0] != 0 or pts[-1] != 1:
            raise MalformedElement("partition must run from 0 to 1")
        if any(a >= b for a, b in zip(pts, pts[1:])):
            raise MalformedElement("partition endpoints must strictly increase")

    @property
    def cells(self) -> int:
        return len(self.partition) - 1


@dataclass(frozen=True)
class FinSupport:
    """Finitely supported sequences indexed by 1, 2, 3, ..."""


@dataclass(frozen=True)
class EventuallyConstant:
    """Sequences that are constant from some index on."""


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear functions on [0,1] with rational breakpoints."""


@dataclass(frozen=True)
class Reals:
    """Scalar codomain for interval-valued operators.

    Carries no elements of its own; operator applications into this
    space produce rational enclosures (see ``operators.RealInterval``).
    """


ATOMIC_SPACES = (Coordinate, SimpleFunction, FinSupport, EventuallyConstant)


def space_name(space) -> str:
    if isinstance(space, Coordinate):
        return f"coord({space.n})"
    if isinstance(space, SimpleFunction):
        return "simple{%s}" % ",".join(str(t) for t in space.partition)
    if isinstance(space, FinSupport):
        return "fin"
    if isinstance(space, EventuallyConstant):
        return "ec"
    if isinstance(space, PiecewiseLinear):
        return "pl"
    if isinstance(space, Reals):
        return "reals"
    raise MalformedElement(f"unknown space {space!r}")


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Element:
    """A canonical value of one of the five concrete spaces.

    Payload layout per space:

    * Coordinate      -- tuple of n rationals
    * SimpleFunction  -- tuple of one rational per cell
    * FinSupport      -- sorted tuple of (index, nonzero rational) pairs
    * EventuallyConstant -- (prefix tuple, tail rational), minimal prefix
    * PiecewiseLinear -- sorted ((t, value), ...) including t=0 and t=1,
      with no collinear interior breakpoints
    """

    space: object
    payload: tuple

    # vector-space sugar; the free functions below do the real work
    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return sub(self, other)

    def __neg__(self):
        return scale(-1, self)

    def __rmul__(self, c):
        return scale(c, self)

    def __abs__(self):
        return absolute(self)

    def __le__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return leq(self, other)

    def __ge__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return leq(other, self)

    def __repr__(self):
        return f"Element({format_element(self)})"


def _same_space(x: Element, y: Element):
    if x.space != y.space:
        raise SpaceMismatch(
            f"{space_name(x.space)} vs {space_name(y.space)}")


# --- normalization ---------------------------------------------------------

def normalize(space, raw) -> Element:
    """Build the canonical element of ``space`` from a raw payload.

    Idempotent: feeding an element's payload back in reproduces it.
    """
    if isinstance(space, Coordinate):
        vals = tuple(q(v) for v in raw)
        if len(vals) != space.n:
            raise MalformedElement(
                f"expected {space.n} coordinates, got {len(vals)}")
        return Element(space, vals)
    if isinstance(space, SimpleFunction):
        vals = tuple(q(v) for v in raw)
        if len(vals) != space.cells:
            raise MalformedElement(
                f"expected {space.cells} cell values, got {len(vals)}")
        return Element(space, vals)
    if isinstance(space, FinSupport):
        pairs = []
        seen = set()
        for item in raw:
            i, v = item
            if not isinstance(i, int) or i < 1:
                raise MalformedElement(f"index must be a positive int: {i!r}")
            if i in seen:
                raise MalformedElement(f"duplicate index {i}")
            seen.add(i)
            v = q(v)
            if v != 0:
                pairs.append((i, v))
        pairs.sort()
        return Element(space, tuple(pairs))
    if isinstance(space, EventuallyConstant):
        prefix, tail = raw
        tail = q(tail)
        vals = [q(v) for v in prefix]
        while vals and vals[-1] == tail:
            vals.pop()
        return Element(space, (tuple(vals), tail))
    if isinstance(space, PiecewiseLinear):
        pts = sorted((q(t), q(v)) for t, v in raw)
        if not pts or pts[0][0] != 0 or pts[-1][0] != 1:
            raise MalformedElement("breakpoints must include t=0 and t=1")
        dedup = [pts[0]]
        for t, v in pts[1:]:
            if t == dedup[-1][0]:
                if v != dedup[-1][1]:
                    raise MalformedElement(f"two values at t={t}")
                continue
            dedup.append((t, v))
        return Element(space, _pl_strip_collinear(dedup))
    raise MalformedElement(f"space {space!r} carries no elements")


def _pl_strip_collinear(pts):
    out = [pts[0]]
    for t, v in pts[1:]:
        while len(out) >= 2:
            (a, ya), (b, yb) = out[-2], out[-1]
            # keep b unless (a,ya)-(b,yb)-(t,v) are collinear
            if (yb - ya) * (t - b) == (v - yb) * (b - a):
                out.pop()
            else:
                break
        out.append((t, v))
    return tuple(out)


# --- convenience constructors (mirroring the literal syntax) ---------------

def coord(*values) -> Element:
    return normalize(Coordinate(len(values)), values)


def simple(partition, values) -> Element:
    return normalize(SimpleFunction(tuple(partition)), values)


def fin(*pairs) -> Element:
    return normalize(FinSupport(), pairs)


def ec(prefix, tail) -> Element:
    return normalize(EventuallyConstant(), (prefix, tail))


def pl(*points) -> Element:
    return normalize(PiecewiseLinear(), points)


def zero(space) -> Element:
    if isinstance(space, Coordinate):
        return Element(space, (ZERO,) * space.n)
    if isinstance(space, SimpleFunction):
        return Element(space, (ZERO,) * space.cells)
    if isinstance(space, FinSupport):
        return Element(space, ())
    if isinstance(space, EventuallyConstant):
        return Element(space, ((), ZERO))
    if isinstance(space, PiecewiseLinear):
        return Element(space, ((ZERO, ZERO), (ONE, ZERO)))
    raise Unsupported(f"{space_name(space)} carries no elements")


def one(space) -> Element:
    if isinstance(space, Coordinate):
        return Element(space, (ONE,) * space.n)
    if isinstance(space, SimpleFunction):
        return Element(space, (ONE,) * space.cells)
    if isinstance(space, EventuallyConstant):
        return Element(space, ((), ONE))
    if isinstance(space, PiecewiseLinear):
        return Element(space, ((ZERO, ONE), (ONE, ONE)))
    if isinstance(space, FinSupport):
        raise Unsupported("finitely supported sequences have no order unit")
    raise Unsupported(f"{space_name(space)} carries no elements")


def is_zero(x: Element) -> bool:
    return x == zero(x.space)


# ---------------------------------------------------------------------------
# vector operations
# ---------------------------------------------------------------------------

def add(x: Element, y: Element) -> Element:
    _same_space(x, y)
    s = x.space
    if isinstance(s, (Coordinate, SimpleFunction)):
        return Element(s, tuple(a + b for a, b in zip(x.payload, y.payload)))
    if isinstance(s, FinSupport):
        acc = dict(x.payload)
        for i, v in y.payload:
            acc[i] = acc.get(i, ZERO) + v
        return normalize(s, acc.items())
    if isinstance(s, EventuallyConstant):
        return _ec_zip(x, y, lambda a, b: a + b)
    if isinstance(s, PiecewiseLinear):
        ts = sorted({t for t, _ in x.payload} | {t for t, _ in y.payload})
        xs = _pl_sweep(x, ts)
        ys = _pl_sweep(y, ts)
        return normalize(s, [(t, a + b) for t, a, b in zip(ts, xs, ys)])
    raise Unsupported(space_name(s))


def _pl_sweep(x: Element, ts):
    """Values of x at a sorted abscissa list, in one pass."""
    pts = x.payload
    out = []
    seg = 0
    for t in ts:
        while pts[seg + 1][0] < t:
            seg += 1
        a, ya = pts[seg]
        b, yb = pts[seg + 1]
        if t == a:
            out.append(ya)
        elif t == b:
            out.append(yb)
        else:
            out.append(ya + (yb - ya) * (t - a) / (b - a))
    return out


def sub(x: Element, y: Element) -> Element:
    return add(x, scale(-1, y))


def scale(c, x: Element) -> Element:
    c = q(c)
    s = x.space
    if isinstance(s, (Coordinate, SimpleFunction)):
        return Element(s, tuple(c * v for v in x.payload))
    if isinstance(s, FinSupport):
        return normalize(s, [(i, c * v) for i, v in x.payload])
    if isinstance(s, EventuallyConstant):
        prefix, tail = x.payload
        return normalize(s, ([c * v for v in prefix], c * tail))
    if isinstance(s, PiecewiseLinear):
        return normalize(s, [(t, c * v) for t, v in x.payload])
    raise Unsupported(space_name(s))


def _ec_zip(x: Element, y: Element, f) -> Element:
    (px, tx), (py, ty) = x.payload, y.payload
    m = max(len(px), len(py))
    vals = [f(px[i] if i < len(px) else tx, py[i] if i < len(py) else ty)
            for i in range(m)]
    return normalize(x.space, (vals, f(tx, ty)))


# ---------------------------------------------------------------------------
# lattice operations
# ---------------------------------------------------------------------------

def sup(x: Element, y: Element) -> Element:
    return _lattice(x, y, max)


def inf(x: Element, y: Element) -> Element:
    return _lattice(x, y, min)


def _lattice(x: Element, y: Element, pick) -> Element:
    _same_space(x, y)
    s = x.space
    if isinstance(s, (Coordinate, SimpleFunction)):
        return Element(s, tuple(pick(a, b) for a, b in zip(x.payload, y.payload)))
    if isinstance(s, FinSupport):
        idx = {i for i, _ in x.payload} | {i for i, _ in y.payload}
        return normalize(
            s, [(i, pick(get_atom(x, i), get_atom(y, i))) for i in sorted(idx)])
    if isinstance(s, EventuallyConstant):
        return _ec_zip(x, y, pick)
    if isinstance(s, PiecewiseLinear):
        return _pl_lattice(x, y, pick)
    raise Unsupported(space_name(s))


def _pl_lattice(x: Element, y: Element, pick) -> Element:
    """Pointwise extremum of two piecewise-linear functions.

    A crossing abscissa is inserted exactly where the difference
    changes sign strictly inside a merged segment; touching at a
    segment endpoint contributes nothing new.
    """
    ts = sorted({t for t, _ in x.payload} | {t for t, _ in y.payload})
    xs = _pl_sweep(x, ts)
    ys = _pl_sweep(y, ts)
    payload = [(ts[0], pick(xs[0], ys[0]))]
    for k in range(1, len(ts)):
        da = xs[k - 1] - ys[k - 1]
        db = xs[k] - ys[k]
        if (da < 0 < db) or (db < 0 < da):
            a, b = ts[k - 1], ts[k]
            tc = a + (b - a) * da / (da - db)
            # both inputs agree at the crossing
            vc = xs[k - 1] + (xs[k] - xs[k - 1]) * (tc - a) / (b - a)
            payload.append((tc, vc))
        payload.append((ts[k], pick(xs[k], ys[k])))
    return normalize(x.space, payload)


def pos_part(x: Element) -> Element:
    return sup(x, zero(x.space))


def neg_part(x: Element) -> Element:
    return sup(scale(-1, x), zero(x.space))


def absolute(x: Element) -> Element:
    return sup(x, scale(-1, x))


def leq(x: Element, y: Element) -> bool:
    """Pointwise partial order: true iff y - x is everywhere >= 0."""
    d = sub(y, x)
    s = d.space
    if isinstance(s, (Coordinate, SimpleFunction)):
        return all(v >= 0 for v in d.payload)
    if isinstance(s, FinSupport):
        return all(v >= 0 for _, v in d.payload)
    if isinstance(s, EventuallyConstant):
        prefix, tail = d.payload
        return tail >= 0 and all(v >= 0 for v in prefix)
    if isinstance(s, PiecewiseLinear):
        # y - x is linear between its breakpoints, so checking the
        # breakpoint values suffices
        return all(v >= 0 for _, v in d.payload)
    raise Unsupported(space_name(s))


def is_disjoint(x: Element, y: Element) -> bool:
    _same_space(x, y)
    return is_zero(inf(absolute(x), absolute(y)))


# ---------------------------------------------------------------------------
# evaluation, atoms, supports
# ---------------------------------------------------------------------------

def eval_at(x: Element, t) -> Fraction:
    """Value of a function-like element at abscissa t in [0,1]."""
    t = q(t)
    s = x.space
    if isinstance(s, SimpleFunction):
        if not 0 <= t <= 1:
            raise MalformedElement(f"abscissa {t} outside [0,1]")
        for k in range(s.cells):
            if t < s.partition[k + 1] or k == s.cells - 1:
                return x.payload[k]
    if isinstance(s, PiecewiseLinear):
        pts = x.payload
        if not 0 <= t <= 1:
            raise MalformedElement(f"abscissa {t} outside [0,1]")
        for (a, ya), (b, yb) in zip(pts, pts[1:]):
            if a <= t <= b:
                if t == a:
                    return ya
                return ya + (yb - ya) * (t - a) / (b - a)
    raise Unsupported(f"cannot evaluate an element of {space_name(s)} at a point")


def atom_count(space):
    """Number of atoms of an atomic space, or None when infinite."""
    if isinstance(space, Coordinate):
        return space.n
    if isinstance(space, SimpleFunction):
        return space.cells
    if isinstance(space, (FinSupport, EventuallyConstant)):
        return None
    raise Unsupported(f"{space_name(space)} is not atomic")


def get_atom(x: Element, i: int) -> Fraction:
    """Coordinate i (1-based) of an element of an atomic space."""
    s = x.space
    if isinstance(s, (Coordinate, SimpleFunction)):
        n = atom_count(s)
        if not 1 <= i <= n:
            raise MalformedElement(f"atom {i} outside 1..{n}")
        return x.payload[i - 1]
    if isinstance(s, FinSupport):
        for j, v in x.payload:
            if j == i:
                return v
        return ZERO
    if isinstance(s, EventuallyConstant):
        prefix, tail = x.payload
        return prefix[i - 1] if i <= len(prefix) else tail
    raise Unsupported(f"{space_name(s)} is not atomic")


def from_atoms(space, values: dict, tail=0) -> Element:
    """Element of an atomic space from a sparse {atom: value} map."""
    if isinstance(space, (Coordinate, SimpleFunction)):
        n = atom_count(space)
        vals = [ZERO] * n
        for i, v in values.items():
            if not 1 <= i <= n:
                raise MalformedElement(f"atom {i} outside 1..{n}")
            vals[i - 1] = q(v)
        return Element(space, tuple(vals))
    if isinstance(space, FinSupport):
        return normalize(space, values.items())
    if isinstance(space, EventuallyConstant):
        m = max(values) if values else 0
        vals = [q(values.get(i, tail)) for i in range(1, m + 1)]
        return normalize(space, (vals, tail))
    raise Unsupported(f"{space_name(space)} is not atomic")


def unit_atom(space, i: int, value=1) -> Element:
    return from_atoms(space, {i: value})


def support_atoms(x: Element):
    """1-based indices of the nonzero atoms (atomic spaces only).

    For eventually constant elements this lists the prefix positions
    whose value differs from zero; the tail is reported separately by
    the caller when it matters.
    """
    s = x.space
    if isinstance(s, (Coordinate, SimpleFunction)):
        return [i + 1 for i, v in enumerate(x.payload) if v != 0]
    if isinstance(s, FinSupport):
        return [i for i, _ in x.payload]
    if isinstance(s, EventuallyConstant):
        prefix, _ = x.payload
        return [i + 1 for i, v in enumerate(prefix) if v != 0]
    raise Unsupported(f"{space_name(s)} is not atomic")


def support_size(x: Element) -> int:
    """Count of nonzero atoms/components; a proxy for decomposition ties."""
    s = x.space
    if isinstance(s, PiecewiseLinear):
        return len(pl_components(x))
    if isinstance(s, EventuallyConstant):
        _, tail = x.payload
        n = len(support_atoms(x))
        return n + (1 if tail != 0 else 0)
    return len(support_atoms(x))


# ---------------------------------------------------------------------------
# piecewise-linear supports and components
# ---------------------------------------------------------------------------

def _pl_zero_refined(x: Element):
    """Breakpoints of x plus the interior zeros of its segments."""
    pts = list(x.payload)
    out = [pts[0]]
    for (a, ya), (b, yb) in zip(pts, pts[1:]):
        if (ya < 0 < yb) or (yb < 0 < ya):
            t = a + (b - a) * ya / (ya - yb)
            out.append((t, ZERO))
        out.append((b, yb))
    return out


def pl_components(x: Element):
    """Connected components of {t : x(t) != 0}, as (start, end) pairs.

    Interval boundaries are zeros of x except at the domain endpoints
    0 and 1, where x itself may be nonzero.
    """
    if not isinstance(x.space, PiecewiseLinear):
        raise Unsupported("components are defined for piecewise-linear elements")
    pts = _pl_zero_refined(x)
    comps = []
    start = None
    for (a, ya), (b, yb) in zip(pts, pts[1:]):
        segment_zero = ya == 0 and yb == 0
        if segment_zero:
            if start is not None:
                comps.append((start, a))
                start = None
            continue
        if start is None:
            start = a
        # an interior zero at b closes the component
        if yb == 0 and b != 1:
            comps.append((start, b))
            start = None
    if start is not None:
        comps.append((start, pts[-1][0]))
    return comps


def pl_restrict(x: Element, components) -> Element:
    """x on the chosen components, zero elsewhere."""
    chosen = sorted(components)
    ts = {ZERO, ONE}
    for a, b in chosen:
        ts.add(a)
        ts.add(b)
    for t, _ in x.payload:
        if any(a <= t <= b for a, b in chosen):
            ts.add(t)

    def value(t):
        for a, b in chosen:
            if a <= t <= b:
                return eval_at(x, t)
        return ZERO

    return normalize(x.space, [(t, value(t)) for t in sorted(ts)])


# ---------------------------------------------------------------------------
# formatting and ordering keys
# ---------------------------------------------------------------------------

def format_element(x: Element) -> str:
    """Literal syntax, ASCII, canonical."""
    s = x.space
    if isinstance(s, Coordinate):
        return "coord[%s]" % ",".join(str(v) for v in x.payload)
    if isinstance(s, SimpleFunction):
        return "simple{%s}[%s]" % (
            ",".join(str(t) for t in s.partition),
            ",".join(str(v) for v in x.payload))
    if isinstance(s, FinSupport):
        return "fin{%s}" % ",".join(f"({i},{v})" for i, v in x.payload)
    if isinstance(s, EventuallyConstant):
        prefix, tail = x.payload
        return "ec[%s|%s]" % (",".join(str(v) for v in prefix), tail)
    if isinstance(s, PiecewiseLinear):
        return "pl{%s}" % ",".join(f"({t},{v})" for t, v in x.payload)
    raise Unsupported(space_name(s))


def canonical_key(x: Element):
    """A total sort key on elements of one space, for stable output."""
    s = x.space
    if isinstance(s, (Coordinate, SimpleFunction)):
        return tuple(x.payload)
    if isinstance(s, FinSupport):
        return tuple((i, v) for i, v in x.payload)
    if isinstance(s, EventuallyConstant):
        prefix, tail = x.payload
        return (tail,) + tuple(prefix)
    if isinstance(s, PiecewiseLinear):
        return tuple(pair for pt in x.payload for pair in pt)
    raise Unsupported(space_name(s))

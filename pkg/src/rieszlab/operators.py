"""Orthogonally additive operators: representations, application, verifiers.

Operator bodies cover the shapes the workbench needs: per-atom kernel
tables, linear maps on eventually constant sequences split along the
basis {unit atoms} + {constant one}, finite match tables, differences
of lateral meets, the alternating harmonic series functional, and
sums/scalings of these.  Application is exact except for the series
functional, whose values are rational interval enclosures.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import MalformedElement, PreconditionError, SpaceMismatch, Unsupported
from . import lateral, reports, spaces
from .lateral import enumerate_decompositions, enumerate_fragments, fragment_iter
from .reports import Budget, CheckReport
from .spaces import (
    Coordinate, Element, EventuallyConstant, PiecewiseLinear, Reals,
    SimpleFunction, absolute, add, atom_count, format_element, from_atoms,
    get_atom, inf, is_disjoint, is_zero, leq, normalize, one, pl_components,
    q, scale, space_name, sub, sup, support_atoms, unit_atom, zero,
)

ZERO = Fraction(0)


# ---------------------------------------------------------------------------
# piecewise polynomials over the rationals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PiecewisePoly:
    """A piecewise polynomial on Q: breaks split the line, one
    ascending-coefficient tuple per piece (len(breaks)+1 pieces)."""

    breaks: tuple = ()
    coeffs: tuple = ((ZERO,),)

    def __post_init__(self):
        breaks = tuple(q(b) for b in self.breaks)
        coeffs = tuple(tuple(q(c) for c in piece) for piece in self.coeffs)
        object.__setattr__(self, "breaks", breaks)
        object.__setattr__(self, "coeffs", coeffs)
        if any(a >= b for a, b in zip(breaks, breaks[1:])):
            raise MalformedElement("breakpoints must strictly increase")
        if len(coeffs) != len(breaks) + 1:
            raise MalformedElement("need one coefficient tuple per piece")

    def __call__(self, t) -> Fraction:
        t = q(t)
        if self.breaks:
            piece = self.coeffs[bisect.bisect_right(self.breaks, t)]
        else:
            piece = self.coeffs[0]
        if len(piece) == 2 and piece[0] == 0:
            return piece[1] * t
        acc = ZERO
        for c in reversed(piece):
            acc = acc * t + c
        return acc


def poly(*coeffs) -> PiecewisePoly:
    """Single polynomial c0 + c1 t + c2 t^2 + ..."""
    return PiecewisePoly((), (tuple(coeffs) or (ZERO,),))


IDENTITY_FN = poly(0, 1)
SQUARE_FN = poly(0, 0, 1)
ABS_FN = PiecewisePoly((0,), ((0, -1), (0, 1)))


# ---------------------------------------------------------------------------
# rational interval enclosures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RealInterval:
    """A closed rational interval enclosing a real value."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        lo, hi = q(self.lower), q(self.upper)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if lo > hi:
            raise MalformedElement(f"empty interval [{lo}, {hi}]")

    @classmethod
    def exact(cls, value) -> "RealInterval":
        value = q(value)
        return cls(value, value)

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper

    def contains(self, value) -> bool:
        return self.lower <= q(value) <= self.upper

    def __add__(self, other):
        if isinstance(other, RealInterval):
            return RealInterval(self.lower + other.lower, self.upper + other.upper)
        other = q(other)
        return RealInterval(self.lower + other, self.upper + other)

    __radd__ = __add__

    def __neg__(self):
        return RealInterval(-self.upper, -self.lower)

    def scaled(self, c) -> "RealInterval":
        c = q(c)
        if c >= 0:
            return RealInterval(c * self.lower, c * self.upper)
        return RealInterval(c * self.upper, c * self.lower)

    def pos(self) -> "RealInterval":
        return RealInterval(max(ZERO, self.lower), max(ZERO, self.upper))

    def neg(self) -> "RealInterval":
        return (-self).pos()

    def abs(self) -> "RealInterval":
        if self.lower >= 0:
            return self
        if self.upper <= 0:
            return -self
        return RealInterval(ZERO, max(-self.lower, self.upper))

    def surely_nonzero(self) -> bool:
        return self.lower > 0 or self.upper < 0

    def is_exact_zero(self) -> bool:
        return self.lower == 0 and self.upper == 0

    def overlaps(self, other: "RealInterval") -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def __str__(self):
        if self.is_exact:
            return f"interval[{self.lower}]"
        return f"interval[{_decimal(self.lower, down=True)},{_decimal(self.upper, down=False)}]"


def _decimal(value: Fraction, down: bool, places: int = 12) -> str:
    """Directed decimal rendering, preserving the enclosure on display."""
    scaled = value * 10 ** places
    n = scaled.numerator // scaled.denominator  # floor
    if not down and n * scaled.denominator != scaled.numerator:
        n += 1
    sign = "-" if n < 0 else ""
    digits = str(abs(n)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def interval_sup(a: RealInterval, b: RealInterval) -> RealInterval:
    return RealInterval(max(a.lower, b.lower), max(a.upper, b.upper))


def interval_inf(a: RealInterval, b: RealInterval) -> RealInterval:
    return RealInterval(min(a.lower, b.lower), min(a.upper, b.upper))


def ln2_enclosure(eps) -> RealInterval:
    """Rational bounds on ln 2 via sum(1/(n 2^n)); the remainder after N
    terms is below 2^-N / (N+1)."""
    eps = q(eps)
    if eps <= 0:
        raise PreconditionError("enclosure width must be positive")
    n = 1
    while Fraction(1, (n + 1) * 2 ** n) > eps:
        n += 1
    partial = sum(Fraction(1, k * 2 ** k) for k in range(1, n + 1))
    return RealInterval(partial, partial + Fraction(1, (n + 1) * 2 ** n))


# ---------------------------------------------------------------------------
# operator bodies
# ---------------------------------------------------------------------------

def _require_atomic(space, role):
    if not isinstance(space, spaces.ATOMIC_SPACES):
        raise Unsupported(f"{role} of a kernel operator must be atomic, "
                          f"got {space_name(space)}")


@dataclass(frozen=True)
class Kernel:
    """Per-atom functions routed to codomain atoms:
    (T x)[j] = sum of fn(x[i]) over table rows (i, j, fn)."""

    domain: object
    codomain: object
    table: tuple  # rows (atom, target, PiecewisePoly)

    def __post_init__(self):
        _require_atomic(self.domain, "domain")
        _require_atomic(self.codomain, "codomain")
        rows = tuple(sorted((int(i), int(j), fn) for i, j, fn in self.table))
        object.__setattr__(self, "table", rows)
        seen = set()
        for i, j, fn in rows:
            if i in seen:
                raise MalformedElement(f"duplicate kernel row for atom {i}")
            seen.add(i)
            for n, bound in ((i, atom_count(self.domain)),
                             (j, atom_count(self.codomain))):
                if n < 1 or (bound is not None and n > bound):
                    raise MalformedElement(f"atom {n} out of range")
            if fn(0) != 0:
                raise MalformedElement(f"kernel function at atom {i} has f(0) != 0")


def diagonal_kernel(space, fns) -> Kernel:
    """Kernel with identity atom map; fns is a list (atom 1..n) or dict."""
    if isinstance(fns, dict):
        rows = [(i, i, fn) for i, fn in fns.items()]
    else:
        rows = [(i + 1, i + 1, fn) for i, fn in enumerate(fns)]
    return Kernel(space, space, tuple(rows))


@dataclass(frozen=True)
class LinearEC:
    """Linear map on eventually constant sequences.

    With c the tail of x:  T x = (sum of a_n (x_n - c)) * target + c * unit_image.
    Equivalently T is linear with T(unit atom n) = a_n * target and
    T(constant one) = unit_image.
    """

    codomain: object
    coeffs: tuple  # ((n, a_n), ...)
    unit_image: Element
    target: Element

    def __post_init__(self):
        rows = tuple(sorted((int(n), q(a)) for n, a in self.coeffs))
        object.__setattr__(self, "coeffs", rows)
        if any(n < 1 for n, _ in rows):
            raise MalformedElement("coefficient indices start at 1")
        if len({n for n, _ in rows}) != len(rows):
            raise MalformedElement("duplicate coefficient index")
        if self.unit_image.space != self.codomain or self.target.space != self.codomain:
            raise SpaceMismatch("unit image and target must live in the codomain")

    @property
    def domain(self):
        return EventuallyConstant()


@dataclass(frozen=True)
class MatchTable:
    """x maps to the tabled value when x equals a key, else to zero."""

    domain: object
    codomain: object
    entries: tuple  # ((key, value), ...)
    validated_level: int | None = None


def match_table(entries, truncation_level: int = 8) -> MatchTable:
    """Build a match table, vetting additivity on key decompositions.

    Every splitting of a key into two nonzero disjoint parts must map
    consistently (parts' values summing to the key's value); keys whose
    splittings violate this cannot belong to an orthogonally additive
    map and are rejected.  For keys with infinitely many fragments the
    vetting is level-truncated and the level is recorded.
    """
    entries = tuple(entries)
    if not entries:
        raise MalformedElement("a match table needs at least one entry")
    domain = entries[0][0].space
    codomain = entries[0][1].space
    lookup = {}
    for key, value in entries:
        if key.space != domain or value.space != codomain:
            raise SpaceMismatch("all keys/values must share one domain/codomain")
        if is_zero(key):
            raise MalformedElement("zero cannot be a match key")
        if key in lookup:
            raise MalformedElement(f"duplicate key {format_element(key)}")
        lookup[key] = value

    def image(el):
        return lookup.get(el, zero(codomain))

    level_used = None
    for key, value in entries:
        if (isinstance(domain, EventuallyConstant) and key.payload[1] != 0):
            level = max(truncation_level, len(key.payload[0]))
            decs = enumerate_decompositions(key, level=level)
            level_used = level
        else:
            decs = enumerate_decompositions(key)
        for d in decs:
            if is_zero(d.left) or is_zero(d.right):
                continue
            if add(image(d.left), image(d.right)) != value:
                raise PreconditionError(
                    f"key {format_element(key)} splits as "
                    f"{format_element(d.left)} + {format_element(d.right)} "
                    "but the parts do not map consistently")
    return MatchTable(domain, codomain, entries, level_used)


@dataclass(frozen=True)
class LateralMeet:
    """T x = (x meet a) - (x meet b), meets in the lateral order."""

    space: object
    a: Element
    b: Element

    def __post_init__(self):
        if self.a.space != self.space or self.b.space != self.space:
            raise SpaceMismatch("parameters must live in the operator space")

    @property
    def domain(self):
        return self.space

    @property
    def codomain(self):
        return self.space


@dataclass(frozen=True)
class AlternatingSeries:
    """T x = sum over n of (-1)^n |x_n| / n, as a rational enclosure."""

    precision: Fraction = Fraction(1, 10 ** 9)

    def __post_init__(self):
        object.__setattr__(self, "precision", q(self.precision))

    @property
    def domain(self):
        return EventuallyConstant()

    @property
    def codomain(self):
        return Reals()


@dataclass(frozen=True)
class OpSum:
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if not parts:
            raise MalformedElement("empty operator sum")
        d, c = parts[0].domain, parts[0].codomain
        if any(p.domain != d or p.codomain != c for p in parts):
            raise SpaceMismatch("summands must share domain and codomain")

    @property
    def domain(self):
        return self.parts[0].domain

    @property
    def codomain(self):
        return self.parts[0].codomain


@dataclass(frozen=True)
class OpScaled:
    factor: Fraction
    inner: object

    def __post_init__(self):
        object.__setattr__(self, "factor", q(self.factor))

    @property
    def domain(self):
        return self.inner.domain

    @property
    def codomain(self):
        return self.inner.codomain


@dataclass(frozen=True)
class ZeroOp:
    domain: object
    codomain: object


def negate(T):
    return OpScaled(Fraction(-1), T)


# ---------------------------------------------------------------------------
# values: elements or intervals, uniformly
# ---------------------------------------------------------------------------

def vzero(codomain):
    if isinstance(codomain, Reals):
        return RealInterval.exact(0)
    return zero(codomain)


def vadd(a, b):
    if isinstance(a, RealInterval):
        return a + b
    return add(a, b)


def vscale(c, a):
    if isinstance(a, RealInterval):
        return a.scaled(c)
    return scale(c, a)


def vneg(a):
    return vscale(-1, a)


def vsup(a, b):
    if isinstance(a, RealInterval):
        return interval_sup(a, b)
    return sup(a, b)


def vinf(a, b):
    if isinstance(a, RealInterval):
        return interval_inf(a, b)
    return inf(a, b)


def vabs(a):
    if isinstance(a, RealInterval):
        return a.abs()
    return absolute(a)


def vpos(a):
    if isinstance(a, RealInterval):
        return a.pos()
    return spaces.pos_part(a)


def vneg_part(a):
    if isinstance(a, RealInterval):
        return a.neg()
    return spaces.neg_part(a)


def v_is_zero(a) -> bool:
    if isinstance(a, RealInterval):
        return a.is_exact_zero()
    return is_zero(a)


def format_value(v) -> str:
    if isinstance(v, Element):
        return format_element(v)
    if isinstance(v, RealInterval):
        return str(v)
    if isinstance(v, tuple):
        return "(" + ", ".join(format_value(p) for p in v) + ")"
    return str(v)


# ---------------------------------------------------------------------------
# application
# ---------------------------------------------------------------------------

def apply(T, x: Element):
    """Exact operator application; interval-valued for the series body."""
    if x.space != T.domain:
        raise SpaceMismatch(
            f"operator domain {space_name(T.domain)}, argument in "
            f"{space_name(x.space)}")
    if isinstance(T, Kernel):
        acc = {}
        for i, j, fn in T.table:
            xi = get_atom(x, i)
            if xi == 0:
                continue  # kernel functions vanish at 0 by construction
            acc[j] = acc.get(j, ZERO) + fn(xi)
        return from_atoms(T.codomain, acc)
    if isinstance(T, LinearEC):
        c = x.payload[1]
        mult = sum((a * (get_atom(x, n) - c) for n, a in T.coeffs), ZERO)
        return add(scale(mult, T.target), scale(c, T.unit_image))
    if isinstance(T, MatchTable):
        for key, value in T.entries:
            if x == key:
                return value
        return zero(T.codomain)
    if isinstance(T, LateralMeet):
        return sub(lateral.lateral_inf(x, T.a), lateral.lateral_inf(x, T.b))
    if isinstance(T, AlternatingSeries):
        return _apply_series(T, x)
    if isinstance(T, OpSum):
        acc = apply(T.parts[0], x)
        for p in T.parts[1:]:
            acc = vadd(acc, apply(p, x))
        return acc
    if isinstance(T, OpScaled):
        return vscale(T.factor, apply(T.inner, x))
    if isinstance(T, ZeroOp):
        return vzero(T.codomain)
    raise Unsupported(f"unknown operator {T!r}")


def _alternating_tail(k: int, precision: Fraction) -> RealInterval:
    """Enclosure of sum over n > k of (-1)^n / n."""
    partial = sum((Fraction((-1) ** n, n) for n in range(1, k + 1)), ZERO)
    ln2 = ln2_enclosure(precision)
    # full series sums to -ln 2
    return RealInterval(-ln2.upper - partial, -ln2.lower - partial)


def _apply_series(T: AlternatingSeries, x: Element) -> RealInterval:
    prefix, tail = x.payload
    head = sum((Fraction((-1) ** n, 1) * abs(v) / n
                for n, v in enumerate(prefix, start=1)), ZERO)
    if tail == 0:
        return RealInterval.exact(head)
    eps = T.precision / max(abs(tail), Fraction(1))
    return _alternating_tail(len(prefix), eps).scaled(abs(tail)) + head


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------

def is_atom_additive(T) -> bool:
    """Additive on disjoint sums by construction, so pointwise closed
    forms over decomposition sets are sound."""
    if isinstance(T, (Kernel, LinearEC, LateralMeet, AlternatingSeries, ZeroOp)):
        return True
    if isinstance(T, OpScaled):
        return is_atom_additive(T.inner)
    if isinstance(T, OpSum):
        return all(is_atom_additive(p) for p in T.parts)
    return False


def is_linear(T) -> bool:
    if isinstance(T, (LinearEC, ZeroOp)):
        return True
    if isinstance(T, Kernel):
        return all(len(fn.breaks) == 0 and all(c == 0 for c in fn.coeffs[0][2:])
                   and fn.coeffs[0][0] == 0 for _, _, fn in T.table)
    if isinstance(T, OpScaled):
        return is_linear(T.inner)
    if isinstance(T, OpSum):
        return all(is_linear(p) for p in T.parts)
    return False


def _key_has_trivial_fragments(key: Element) -> bool:
    s = key.space
    if isinstance(s, PiecewiseLinear):
        return len(pl_components(key)) == 1
    if isinstance(s, EventuallyConstant):
        prefix, tail = key.payload
        return tail == 0 and len(support_atoms(key)) == 1
    return len(support_atoms(key)) == 1


def _key_has_no_disjoint_partner(key: Element) -> bool:
    s = key.space
    if isinstance(s, PiecewiseLinear):
        # a nonzero disjoint partner needs an interval of zeros
        return all(not (ya == 0 and yb == 0)
                   for (_, ya), (_, yb) in zip(key.payload, key.payload[1:]))
    if isinstance(s, (Coordinate, SimpleFunction)):
        return all(v != 0 for v in key.payload)
    if isinstance(s, EventuallyConstant):
        prefix, tail = key.payload
        return tail != 0 and all(v != 0 for v in prefix)
    return False  # finitely supported sequences always admit partners


def _match_table_isolated(T: MatchTable) -> bool:
    return all(_key_has_trivial_fragments(k) and _key_has_no_disjoint_partner(k)
               for k, _ in T.entries)


# ---------------------------------------------------------------------------
# disjoint-pair generation for exhaustive verification
# ---------------------------------------------------------------------------

def exhaustive_disjoint_pairs(space, grid):
    """All (u, v) with u _|_ v whose atoms take values from grid.

    Only for finitely many atoms; per atom either side takes a grid
    value while the other is zero.
    """
    n = atom_count(space)
    if n is None:
        raise Unsupported("exhaustive pairs need finitely many atoms")
    grid = [q(g) for g in grid]
    per_atom = [(g, ZERO) for g in grid if g != 0]
    per_atom += [(ZERO, g) for g in grid]
    for combo in itertools.product(per_atom, repeat=n):
        u = normalize(space, [a for a, _ in combo])
        v = normalize(space, [b for _, b in combo])
        yield u, v


def _can_exhaust(space) -> bool:
    n = atom_count(space) if isinstance(space, spaces.ATOMIC_SPACES) else None
    return n is not None and n <= 4


# ---------------------------------------------------------------------------
# verifiers
# ---------------------------------------------------------------------------

def verify_oao(T, budget: Budget | None = None) -> CheckReport:
    """Check T(u+v) = T(u) + T(v) on disjoint pairs.

    Structurally additive bodies short-circuit to a symbolic pass;
    exhaustive grids prove the law for the tested grid; clean sampling
    alone stays inconclusive.
    """
    budget = budget or Budget()
    seed = budget.seed_tag("oao")
    if is_atom_additive(T):
        return reports.holds(seed=seed, notes="additive by construction")
    if isinstance(T, MatchTable) and _match_table_isolated(T):
        return reports.holds(
            seed=seed,
            notes="keys indecomposable with no nonzero disjoint partner")
    count = 0
    for u, v in _oao_probes(T):
        count += 1
        if _additivity_gap(T, u, v):
            return reports.fails(
                f"u={format_element(u)} v={format_element(v)}",
                count, seed, witness_data=(u, v))
    if budget.grid is not None and _can_exhaust(T.domain):
        for u, v in exhaustive_disjoint_pairs(T.domain, budget.grid):
            count += 1
            bad = _additivity_gap(T, u, v)
            if bad:
                return reports.fails(
                    f"u={format_element(u)} v={format_element(v)}",
                    count, seed, witness_data=(u, v))
        return reports.holds(count, seed, notes="exhaustive over grid")
    from . import generators
    rng = budget.rng("oao")
    for _ in range(budget.samples):
        u, v = generators.random_disjoint_pair(rng, T.domain)
        count += 1
        if _additivity_gap(T, u, v):
            return reports.fails(
                f"u={format_element(u)} v={format_element(v)}",
                count, seed, witness_data=(u, v))
    return reports.inconclusive(count, seed, notes="sampled, no failure")


def _oao_probes(T):
    """Deterministic pairs that expose the classic match-table failure:
    a key plus a unit atom outside its support."""
    tables = []
    if isinstance(T, MatchTable):
        tables = [T]
    elif isinstance(T, OpScaled) and isinstance(T.inner, MatchTable):
        tables = [T.inner]
    probes = []
    for table in tables:
        if not isinstance(table.domain, spaces.ATOMIC_SPACES):
            continue
        n = atom_count(table.domain)
        for key, _ in table.entries:
            outside = [a for a in range(1, (n or 8) + 1)
                       if a not in set(support_atoms(key))][:4]
            for a in outside:
                probe = unit_atom(table.domain, a)
                if is_disjoint(key, probe):
                    probes.append((key, probe))
    return probes


def _additivity_gap(T, u, v) -> bool:
    whole = apply(T, add(u, v))
    parts = vadd(apply(T, u), apply(T, v))
    if isinstance(whole, RealInterval):
        return not whole.overlaps(parts)
    return whole != parts


def _positivity_gap(value) -> bool | None:
    """True when certainly not >= 0, None when undecidable."""
    if isinstance(value, RealInterval):
        if value.upper < 0:
            return True
        if value.lower >= 0:
            return False
        return None
    return not leq(zero(value.space), value)


def _linear_probes(T):
    """Finitely many inputs that expose any nonzero linear operator."""
    probes = []
    if isinstance(T, LinearEC):
        probes = [unit_atom(T.domain, n) for n, _ in T.coeffs]
        probes.append(one(T.domain))
    elif isinstance(T, Kernel):
        probes = [unit_atom(T.domain, i) for i, _, _ in T.table]
    elif isinstance(T, OpScaled):
        probes = _linear_probes(T.inner)
    elif isinstance(T, OpSum):
        probes = [x for p in T.parts for x in _linear_probes(p)]
    return probes


def verify_positive(T, budget: Budget | None = None) -> CheckReport:
    """Check T(x) >= 0 over probes, a grid, or samples."""
    budget = budget or Budget()
    seed = budget.seed_tag("positive")
    if is_linear(T):
        # a nonzero linear map cannot be positive: T(-x) = -T(x)
        for x in _linear_probes(T):
            y = apply(T, x)
            if not v_is_zero(y):
                gap = _positivity_gap(y)
                witness = x if gap else scale(-1, x)
                return reports.fails(
                    f"x={format_element(witness)} (pair x, -x)",
                    len(_linear_probes(T)), seed, witness_data=(witness,),
                    notes="nonzero linear operator; one of x, -x maps below 0")
        return reports.holds(seed=seed, notes="zero operator")
    undecided = 0
    if budget.grid is not None and _can_exhaust(T.domain):
        count = 0
        for values in itertools.product([q(g) for g in budget.grid],
                                        repeat=atom_count(T.domain)):
            x = normalize(T.domain, values)
            count += 1
            gap = _positivity_gap(apply(T, x))
            if gap:
                return reports.fails(f"x={format_element(x)}", count, seed,
                                     witness_data=(x,))
            if gap is None:
                undecided += 1
        if undecided:
            return reports.inconclusive(count, seed,
                                        notes=f"{undecided} undecided enclosures")
        return reports.holds(count, seed, notes="exhaustive over grid")
    from . import generators
    rng = budget.rng("positive")
    for k in range(budget.samples):
        x = generators.random_element(rng, T.domain)
        gap = _positivity_gap(apply(T, x))
        if gap:
            return reports.fails(f"x={format_element(x)}", k + 1, seed,
                                 witness_data=(x,))
        if gap is None:
            undecided += 1
    return reports.inconclusive(budget.samples, seed,
                                notes="sampled, no failure"
                                + (f"; {undecided} undecided" if undecided else ""))


def _disjointness_gap(T, u, v) -> bool | None:
    a, b = apply(T, u), apply(T, v)
    if isinstance(a, RealInterval):
        if a.is_exact_zero() or b.is_exact_zero():
            return False
        if a.surely_nonzero() and b.surely_nonzero():
            return True
        return None
    return not is_disjoint(a, b)


def verify_disjointness_preserving(T, budget: Budget | None = None) -> CheckReport:
    """Check that disjoint inputs map to disjoint images."""
    budget = budget or Budget()
    seed = budget.seed_tag("dp")
    symbolic = _dp_symbolic(T)
    if symbolic:
        return reports.holds(seed=seed, notes=symbolic)
    probes = _dp_probes(T)
    count = 0
    undecided = 0
    for u, v in probes:
        count += 1
        gap = _disjointness_gap(T, u, v)
        if gap:
            return reports.fails(
                f"u={format_element(u)} v={format_element(v)}",
                count, seed, witness_data=(u, v))
        if gap is None:
            undecided += 1
    if budget.grid is not None and _can_exhaust(T.domain):
        for u, v in exhaustive_disjoint_pairs(T.domain, budget.grid):
            count += 1
            gap = _disjointness_gap(T, u, v)
            if gap:
                return reports.fails(
                    f"u={format_element(u)} v={format_element(v)}",
                    count, seed, witness_data=(u, v))
            if gap is None:
                undecided += 1
        if not undecided:
            return reports.holds(count, seed, notes="exhaustive over grid")
    from . import generators
    rng = budget.rng("dp")
    for _ in range(budget.samples):
        u, v = generators.random_disjoint_pair(rng, T.domain)
        count += 1
        gap = _disjointness_gap(T, u, v)
        if gap:
            return reports.fails(
                f"u={format_element(u)} v={format_element(v)}",
                count, seed, witness_data=(u, v))
        if gap is None:
            undecided += 1
    if undecided:
        return reports.inconclusive(count, seed,
                                    notes=f"{undecided} undecided enclosures")
    return reports.holds(count, seed, notes="sampled evidence")


def _dp_symbolic(T) -> str | None:
    if isinstance(T, ZeroOp):
        return "zero operator"
    if isinstance(T, Kernel):
        targets = [j for _, j, _ in T.table]
        if len(set(targets)) == len(targets):
            return "injective atom map: disjoint supports stay disjoint"
        return None
    if isinstance(T, LateralMeet):
        return "|T x| <= |x| pointwise, so disjoint supports stay disjoint"
    if isinstance(T, MatchTable) and _match_table_isolated(T):
        return "keys have no nonzero disjoint partner"
    if isinstance(T, OpScaled):
        inner = _dp_symbolic(T.inner)
        return None if inner is None else f"scaling preserves disjointness; {inner}"
    return None


def _dp_probes(T):
    """Deterministic unit-atom pairs; they expose atom-map collisions."""
    if not isinstance(T.domain, spaces.ATOMIC_SPACES):
        return []
    n = atom_count(T.domain)
    atoms = list(range(1, (n or 6) + 1))[:6]
    pairs = []
    for a, b in itertools.combinations(atoms, 2):
        pairs.append((unit_atom(T.domain, a), unit_atom(T.domain, b)))
    return pairs


# ---------------------------------------------------------------------------
# boundedness scans
# ---------------------------------------------------------------------------

@dataclass
class ScanResult:
    """Extremes of an operator over a fragment algebra.

    ``exact`` mode carries the attained bounds; ``truncated`` mode a
    monotone per-level table plus a growth flag relative to the caller
    bound (growth refutes lateral-to-order boundedness at the base).
    """

    mode: str
    report: CheckReport
    lo: object = None
    hi: object = None
    table: tuple = ()
    growth: bool | None = None


def _exceeds(value, bound) -> bool:
    if isinstance(value, RealInterval):
        return value.lower > q(bound)
    return not leq(value, bound)


def lateral_bound_scan(T, e: Element, level: int | None = None,
                       bound=None) -> ScanResult:
    """Extremes of T over the fragments of e.

    Finite algebras are folded exactly.  For eventually constant bases
    with nonzero tail, pass a level: per-level extremes are computed in
    closed form for structurally additive bodies (each fragment is the
    disjoint sum of its atoms and a pure-tail part, so the fold
    distributes over independent per-atom choices), and by bounded
    enumeration otherwise.
    """
    seed = "scan"
    infinite = isinstance(e.space, EventuallyConstant) and e.payload[1] != 0
    if not infinite:
        frags = enumerate_fragments(e)
        lo = hi = None
        for z in frags:
            v = apply(T, z)
            lo = v if lo is None else vinf(lo, v)
            hi = v if hi is None else vsup(hi, v)
        rep = reports.holds(len(frags), seed,
                            notes=f"exact bounds over {len(frags)} fragments")
        return ScanResult("exact", rep, lo=lo, hi=hi)
    if level is None:
        raise PreconditionError(
            "infinite fragment algebra: supply a truncation level")
    prefix, tail = e.payload
    start = len(prefix)
    if is_atom_additive(T):
        table = _scan_levels_closed(T, e, start, level)
    else:
        table = _scan_levels_enumerated(T, e, start, level)
    grew = bound is not None and any(_exceeds(hi, bound) for _, _, hi in table)
    if grew:
        lvl = next(l for l, _, hi in table if _exceeds(hi, bound))
        rep = reports.fails(f"level {lvl} maximum exceeds the bound",
                            len(table), seed,
                            notes="lateral image escapes the caller bound")
    else:
        rep = reports.inconclusive(len(table), seed,
                                   notes="monotone level table computed")
    return ScanResult("truncated", rep, table=tuple(table), growth=grew)


def _scan_levels_closed(T, e, start, level):
    cod = T.codomain
    zval = vzero(cod)
    prefix, tail = e.payload
    hi_acc, lo_acc = zval, zval
    for n in range(1, start + 1):
        v = get_atom(e, n)
        if v == 0:
            continue
        img = apply(T, unit_atom(e.space, n, v))
        hi_acc = vadd(hi_acc, vsup(img, zval))
        lo_acc = vadd(lo_acc, vinf(img, zval))
    table = []
    for l in range(start, level + 1):
        if l > start:
            v = get_atom(e, l)
            if v != 0:
                img = apply(T, unit_atom(e.space, l, v))
                hi_acc = vadd(hi_acc, vsup(img, zval))
                lo_acc = vadd(lo_acc, vinf(img, zval))
        w = normalize(e.space, ([ZERO] * l, tail))
        img_w = apply(T, w)
        table.append((l,
                      vadd(lo_acc, vinf(img_w, zval)),
                      vadd(hi_acc, vsup(img_w, zval))))
    return table


def _scan_levels_enumerated(T, e, start, level):
    table = []
    for l in range(start, level + 1):
        lo = hi = None
        for z in fragment_iter(e, l):
            v = apply(T, z)
            lo = v if lo is None else vinf(lo, v)
            hi = v if hi is None else vsup(hi, v)
        table.append((l, lo, hi))
    return table


@dataclass
class OrderHull:
    """Observed hull of T over a sampled order interval."""

    report: CheckReport
    lo: object = None
    hi: object = None


def order_bound_scan(T, bound: Element, budget: Budget | None = None,
                     candidate=None) -> OrderHull:
    """Sample |x| <= bound and report the hull of the observed images.

    Membership in the order-bounded class is not decidable here: the
    verdict is fails only when an image escapes the caller's candidate
    hull, and inconclusive otherwise.
    """
    budget = budget or Budget()
    seed = budget.seed_tag("orderbound")
    if not leq(zero(bound.space), bound):
        raise PreconditionError("the input bound must be >= 0")
    from . import generators
    rng = budget.rng("orderbound")
    half = scale(Fraction(1, 2), bound)
    probes = [zero(bound.space), bound, scale(-1, bound), half, scale(-1, half)]
    xs = probes + [
        sup(inf(generators.random_element(rng, bound.space), bound),
            scale(-1, bound))
        for _ in range(budget.samples)]
    lo = hi = None
    for x in xs:
        v = apply(T, x)
        lo = v if lo is None else vinf(lo, v)
        hi = v if hi is None else vsup(hi, v)
        if candidate is not None:
            clo, chi = candidate
            escaped = _exceeds(v, chi) or _exceeds(vneg(v), vneg(clo))
            if escaped:
                rep = reports.fails(f"x={format_element(x)}", len(xs), seed,
                                    witness_data=(x,),
                                    notes="image escapes the candidate hull")
                return OrderHull(rep, lo, hi)
    rep = reports.inconclusive(len(xs), seed, notes="sampled hull only")
    return OrderHull(rep, lo, hi)


# ---------------------------------------------------------------------------
# the catalogued example operators
# ---------------------------------------------------------------------------

def example_operator(name: str, target: Element | None = None,
                     horizon: int = 64, space=None, precision=None):
    """Named operators used throughout the check suite.

    * ``alternating_series`` -- the series functional on eventually
      constant sequences; orthogonally additive but with laterally
      unbounded image on the fragments of the constant one.
    * ``ramped_basis`` -- linear, sending the n-th unit atom to
      n * target (n up to ``horizon``) and the constant one to zero;
      its fragment image grows like n(n+1)/2.
    * ``unit_match`` -- the match table sending the constant one to
      itself and twice the constant one to its negative, on continuous
      piecewise-linear functions.
    * ``unit_lateral_meet`` -- x maps to (x meet 1) - (x meet 2), on
      step functions.
    """
    if name == "alternating_series":
        return AlternatingSeries(precision if precision is not None
                                 else Fraction(1, 10 ** 9))
    if name == "ramped_basis":
        if target is None:
            target = one(Coordinate(1))
        cod = target.space
        coeffs = tuple((n, Fraction(n)) for n in range(1, horizon + 1))
        return LinearEC(cod, coeffs, zero(cod), target)
    if name == "unit_match":
        s = space or PiecewiseLinear()
        u = one(s)
        return match_table([(u, u), (scale(2, u), scale(-1, u))])
    if name == "unit_lateral_meet":
        s = space or SimpleFunction((Fraction(0), Fraction(1, 2), Fraction(1)))
        u = one(s)
        return LateralMeet(s, u, scale(2, u))
    raise Unsupported(f"unknown example operator {name!r}")

"""Fragments, the lateral order, disjoint decompositions and refinement grids.

A fragment of e is an x with x disjoint from e - x; fragments of a
fixed e form a Boolean algebra under the lateral supremum and infimum.
Enumeration is exact whenever the algebra is finite (all spaces except
eventually constant sequences with a nonzero tail) and level-truncated
otherwise, with guaranteed monotone inclusion between levels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, Unsupported
from . import spaces
from .spaces import (
    Element, EventuallyConstant, PiecewiseLinear,
    add, canonical_key, format_element, from_atoms, get_atom,
    inf, is_disjoint, neg_part, normalize, pl_components,
    pl_restrict, pos_part, sub, sup, support_atoms, zero,
)

# enumerating more fragments than this is refused outright
ENUM_CAP = 1 << 18


def is_fragment(x: Element, e: Element) -> bool:
    """x is a fragment of e (lateral order x below e)."""
    return is_disjoint(x, sub(e, x))


# ---------------------------------------------------------------------------
# lateral supremum / infimum
#
# Both route through module-level implementation hooks so that the
# shipped negative tests can install documented mutants and watch the
# check suite catch them (see mutations.py).
# ---------------------------------------------------------------------------

def join_formula(x: Element, y: Element) -> Element:
    """(x+ v y+) - (x- v y-); the lateral supremum on common fragments."""
    return sub(sup(pos_part(x), pos_part(y)), sup(neg_part(x), neg_part(y)))


def meet_formula(x: Element, y: Element) -> Element:
    """(x+ ^ y+) - (x- ^ y-); valid only for fragments of a common base."""
    return sub(inf(pos_part(x), pos_part(y)), inf(neg_part(x), neg_part(y)))


def _greatest_common_fragment(x: Element, y: Element) -> Element:
    """The largest z in the lateral order with z below both x and y.

    On atomic spaces this keeps exactly the coordinates where x and y
    agree; on piecewise-linear functions it keeps the support
    components shared, as intervals and values, by both.
    """
    spaces._same_space(x, y)
    s = x.space
    if isinstance(s, PiecewiseLinear):
        mine = {comp: pl_restrict(x, [comp]) for comp in pl_components(x)}
        theirs = {comp: pl_restrict(y, [comp]) for comp in pl_components(y)}
        shared = [c for c, r in mine.items() if theirs.get(c) == r]
        return pl_restrict(x, shared)
    if isinstance(s, EventuallyConstant):
        (px, tx), (py, ty) = x.payload, y.payload
        m = max(len(px), len(py))
        vals = []
        for i in range(m):
            a = px[i] if i < len(px) else tx
            b = py[i] if i < len(py) else ty
            vals.append(a if a == b else spaces.ZERO)
        return normalize(s, (vals, tx if tx == ty else spaces.ZERO))
    if isinstance(s, (spaces.Coordinate, spaces.SimpleFunction)):
        return Element(s, tuple(a if a == b else spaces.ZERO
                                for a, b in zip(x.payload, y.payload)))
    if isinstance(s, spaces.FinSupport):
        common = [(i, v) for i, v in x.payload if get_atom(y, i) == v]
        return normalize(s, common)
    raise Unsupported(spaces.space_name(s))


_SUP_IMPL = join_formula
_INF_IMPL = _greatest_common_fragment


def lateral_sup(x: Element, y: Element, base: Element | None = None) -> Element:
    """Lateral supremum of two fragments of a common element.

    The caller asserts lateral boundedness; when ``base`` is supplied
    it is checked.
    """
    if base is not None:
        for name, el in (("left", x), ("right", y)):
            if not is_fragment(el, base):
                raise PreconditionError(
                    f"{name} operand {format_element(el)} is not a fragment "
                    f"of {format_element(base)}")
    return _SUP_IMPL(x, y)


def lateral_inf(x: Element, y: Element) -> Element:
    """Greatest common fragment; always exists in the five models."""
    return _INF_IMPL(x, y)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    """A disjoint splitting base = left + right with left _|_ right."""

    base: Element
    left: Element
    right: Element


@dataclass(frozen=True)
class FragmentEnumeration:
    base: Element
    mode: str                      # "exact" or "truncated"
    items: tuple
    level: int | None = None

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    @property
    def count(self) -> int:
        return len(self.items)


def _check_cap(count, what):
    if count > ENUM_CAP:
        raise PreconditionError(
            f"{what} has {count} members, beyond the enumeration cap {ENUM_CAP}")


def enumerate_fragments(e: Element) -> FragmentEnumeration:
    """The full fragment algebra of e; exact and exhaustive.

    Refused for eventually constant elements with a nonzero tail
    (infinite algebra; use fragment_iter).
    """
    s = e.space
    if isinstance(s, EventuallyConstant) and e.payload[1] != 0:
        raise PreconditionError(
            "fragment algebra of a nonzero-tail element is infinite; "
            "use fragment_iter with a level")
    if isinstance(s, PiecewiseLinear):
        comps = pl_components(e)
        _check_cap(1 << len(comps), "fragment algebra")
        items = []
        for mask in range(1 << len(comps)):
            chosen = [c for k, c in enumerate(comps) if mask >> k & 1]
            items.append(pl_restrict(e, chosen))
        items.sort(key=canonical_key)
        return FragmentEnumeration(e, "exact", tuple(items))
    atoms = support_atoms(e)
    _check_cap(1 << len(atoms), "fragment algebra")
    items = []
    for mask in range(1 << len(atoms)):
        picked = {a: get_atom(e, a) for k, a in enumerate(atoms) if mask >> k & 1}
        items.append(from_atoms(s, picked))
    items.sort(key=canonical_key)
    return FragmentEnumeration(e, "exact", tuple(items))


def fragment_iter(e: Element, level: int) -> FragmentEnumeration:
    """Level-truncated fragments of an eventually constant element.

    Every subset of positions 1..level combined with a tail choice in
    {0, tail of e}; the produced set at level L is contained in the one
    at level L+1.
    """
    if not isinstance(e.space, EventuallyConstant):
        raise PreconditionError("fragment_iter is for eventually constant elements")
    prefix, tail = e.payload
    if level < len(prefix):
        raise PreconditionError(
            f"level {level} is below the prefix length {len(prefix)}")
    _check_cap((1 << level) * 2, "truncated fragment set")
    tails = [spaces.ZERO] if tail == 0 else [spaces.ZERO, tail]
    seen = set()
    items = []
    for t in tails:
        for mask in range(1 << level):
            vals = [get_atom(e, i + 1) if mask >> i & 1 else spaces.ZERO
                    for i in range(level)]
            z = normalize(e.space, (vals, t))
            if z.payload in seen:
                continue
            seen.add(z.payload)
            assert is_fragment(z, e)
            items.append(z)
    items.sort(key=canonical_key)
    return FragmentEnumeration(e, "truncated", tuple(items), level=level)


def min_level(z: Element) -> int:
    """Smallest truncation level whose fragment set contains z."""
    prefix, _ = z.payload
    return len(prefix)


def enumerate_decompositions(x: Element, level: int | None = None):
    """All disjoint splittings x = u + v, one per fragment u of x."""
    if (level is not None and isinstance(x.space, EventuallyConstant)
            and x.payload[1] != 0):
        frags = fragment_iter(x, level)
    else:
        frags = enumerate_fragments(x)
    return tuple(Decomposition(x, u, sub(x, u)) for u in frags)


# ---------------------------------------------------------------------------
# refinement grid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlievGrid:
    """Common disjoint refinement of two disjoint splittings of one element.

    Entry (i,k) is the lateral infimum of rows[i] and cols[k]; row sums
    reproduce the rows and column sums the columns.
    """

    rows: tuple
    cols: tuple
    grid: tuple  # tuple of row tuples

    def row_sum(self, i: int) -> Element:
        acc = zero(self.rows[0].space)
        for w in self.grid[i]:
            acc = add(acc, w)
        return acc

    def col_sum(self, k: int) -> Element:
        acc = zero(self.cols[0].space)
        for row in self.grid:
            acc = add(acc, row[k])
        return acc


def pliev_grid(us, vs) -> PlievGrid:
    us, vs = tuple(us), tuple(vs)
    if not us or not vs:
        raise PreconditionError("both splittings must be nonempty")
    for name, parts in (("us", us), ("vs", vs)):
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                if not is_disjoint(parts[i], parts[j]):
                    raise PreconditionError(
                        f"{name}[{i}] and {name}[{j}] are not disjoint: "
                        f"{format_element(parts[i])}, {format_element(parts[j])}")
    total_u = us[0]
    for u in us[1:]:
        total_u = add(total_u, u)
    total_v = vs[0]
    for v in vs[1:]:
        total_v = add(total_v, v)
    if total_u != total_v:
        raise PreconditionError(
            f"splittings sum to different elements: "
            f"{format_element(total_u)} vs {format_element(total_v)}")
    grid = tuple(tuple(lateral_inf(u, v) for v in vs) for u in us)
    return PlievGrid(us, vs, grid)

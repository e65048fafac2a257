"""Seeded random instances: elements, disjoint pairs, fragments, operators.

Every generated operator is orthogonally additive by construction (the
match tables used here have indecomposable full-support keys), so the
check suite can quantify over them freely.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import Unsupported
from .operators import (
    Kernel, LateralMeet, LinearEC, MatchTable, OpScaled, OpSum,
    PiecewisePoly, match_table, poly,
)
from .spaces import (
    Coordinate, Element, EventuallyConstant, FinSupport, PiecewiseLinear,
    SimpleFunction, from_atoms, get_atom, normalize, pl_components,
    pl_restrict, support_atoms, zero, ZERO,
)

Q = Fraction


def space_menu():
    return (
        Coordinate(3),
        Coordinate(5),
        SimpleFunction((Q(0), Q(1, 3), Q(2, 3), Q(1))),
        FinSupport(),
        EventuallyConstant(),
        PiecewiseLinear(),
    )


def random_scalar(rng: random.Random, magnitude: int = 3,
                  denominators=(1, 1, 1, 2, 3, 4)) -> Fraction:
    return Q(rng.randint(-magnitude, magnitude), rng.choice(denominators))


def random_nonzero_scalar(rng, magnitude: int = 3) -> Fraction:
    while True:
        v = random_scalar(rng, magnitude)
        if v != 0:
            return v


_PL_POOL = tuple(Q(k, 8) for k in range(1, 8))


def random_element(rng: random.Random, space, magnitude: int = 3) -> Element:
    if isinstance(space, (Coordinate, SimpleFunction)):
        n = space.n if isinstance(space, Coordinate) else space.cells
        return normalize(space, [random_scalar(rng, magnitude) for _ in range(n)])
    if isinstance(space, FinSupport):
        idx = rng.sample(range(1, 13), rng.randint(0, 4))
        return normalize(space, [(i, random_scalar(rng, magnitude)) for i in idx])
    if isinstance(space, EventuallyConstant):
        prefix = [random_scalar(rng, magnitude) for _ in range(rng.randint(0, 4))]
        return normalize(space, (prefix, random_scalar(rng, magnitude)))
    if isinstance(space, PiecewiseLinear):
        ts = sorted(rng.sample(_PL_POOL, rng.randint(0, 4)))
        pts = [(ZERO, random_scalar(rng, magnitude))]
        pts += [(t, random_scalar(rng, magnitude)) for t in ts]
        pts.append((Q(1), random_scalar(rng, magnitude)))
        return normalize(space, pts)
    raise Unsupported(f"cannot sample from {space!r}")


def random_nonzero_element(rng, space, magnitude: int = 3) -> Element:
    while True:
        x = random_element(rng, space, magnitude)
        if x != zero(space):
            return x


def random_disjoint_pair(rng: random.Random, space, magnitude: int = 3):
    """A pair (u, v) with u _|_ v, exercising varied support splits."""
    if isinstance(space, (Coordinate, SimpleFunction)):
        n = space.n if isinstance(space, Coordinate) else space.cells
        u, v = [ZERO] * n, [ZERO] * n
        for i in range(n):
            side = rng.choice("uvn")
            if side == "u":
                u[i] = random_scalar(rng, magnitude)
            elif side == "v":
                v[i] = random_scalar(rng, magnitude)
        return normalize(space, u), normalize(space, v)
    if isinstance(space, FinSupport):
        idx = rng.sample(range(1, 13), rng.randint(0, 6))
        u, v = {}, {}
        for i in idx:
            (u if rng.random() < 0.5 else v)[i] = random_scalar(rng, magnitude)
        return from_atoms(space, u), from_atoms(space, v)
    if isinstance(space, EventuallyConstant):
        # at most one side may carry a nonzero tail
        tail_side = rng.choice("uvn")
        tu = random_nonzero_scalar(rng, magnitude) if tail_side == "u" else ZERO
        tv = random_nonzero_scalar(rng, magnitude) if tail_side == "v" else ZERO
        u_vals, v_vals = [], []
        for _ in range(6):
            side = rng.choice("uvn")
            u_vals.append(random_scalar(rng, magnitude) if side == "u" else ZERO)
            v_vals.append(random_scalar(rng, magnitude) if side == "v" else ZERO)
        return (normalize(space, (u_vals, tu)),
                normalize(space, (v_vals, tv)))
    if isinstance(space, PiecewiseLinear):
        # tents on (0, a) and (b, 1) with a < b
        a, b = sorted(rng.sample(_PL_POOL, 2))
        u = [(ZERO, ZERO), (a / 2, random_scalar(rng, magnitude)),
             (a, ZERO), (Q(1), ZERO)]
        v = [(ZERO, ZERO), (b, ZERO),
             ((b + 1) / 2, random_scalar(rng, magnitude)), (Q(1), ZERO)]
        return normalize(space, u), normalize(space, v)
    raise Unsupported(f"cannot sample from {space!r}")


def random_split(rng: random.Random, e: Element, parts: int):
    """Split e into ``parts`` pairwise disjoint summands (some may be zero)."""
    space = e.space
    if isinstance(space, PiecewiseLinear):
        buckets = [[] for _ in range(parts)]
        for c in pl_components(e):
            buckets[rng.randrange(parts)].append(c)
        return [pl_restrict(e, b) for b in buckets]
    if isinstance(space, EventuallyConstant) and e.payload[1] != 0:
        prefix, tail = e.payload
        owner = rng.randrange(parts)  # who inherits the tail
        assign = [rng.randrange(parts) for _ in prefix]
        out = []
        for k in range(parts):
            vals = [prefix[i] if assign[i] == k else ZERO
                    for i in range(len(prefix))]
            out.append(normalize(space, (vals, tail if k == owner else ZERO)))
        return out
    atoms = support_atoms(e)
    assign = {a: rng.randrange(parts) for a in atoms}
    return [from_atoms(space, {a: get_atom(e, a) for a in atoms
                               if assign[a] == k})
            for k in range(parts)]


def random_fragment(rng: random.Random, e: Element) -> Element:
    space = e.space
    if isinstance(space, PiecewiseLinear):
        comps = pl_components(e)
        chosen = [c for c in comps if rng.random() < 0.5]
        return pl_restrict(e, chosen)
    if isinstance(space, EventuallyConstant):
        prefix, tail = e.payload
        span = len(prefix) + rng.randint(0, 2)
        t = tail if (tail != 0 and rng.random() < 0.5) else ZERO
        vals = [get_atom(e, i) if rng.random() < 0.5 else ZERO
                for i in range(1, span + 1)]
        return normalize(space, (vals, t))
    picked = {a: get_atom(e, a) for a in support_atoms(e) if rng.random() < 0.5}
    return from_atoms(space, picked)


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------

def _random_fn(rng, linear=False, positive=False, magnitude=3) -> PiecewisePoly:
    if linear:
        return poly(0, random_scalar(rng, magnitude))
    if positive:
        a = abs(random_scalar(rng, magnitude))
        if rng.random() < 0.5:
            return poly(0, 0, a)
        return PiecewisePoly((0,), ((0, -a), (0, a)))
    kind = rng.randrange(4)
    if kind == 0:
        return poly(0, random_scalar(rng, magnitude))
    if kind == 1:
        return poly(0, 0, random_scalar(rng, magnitude))
    if kind == 2:
        a = random_scalar(rng, magnitude)
        return PiecewisePoly((0,), ((0, -a), (0, a)))
    return poly(0, random_scalar(rng, magnitude), random_scalar(rng, 2))


def _atom_pool(space, rng):
    if isinstance(space, Coordinate):
        return list(range(1, space.n + 1))
    if isinstance(space, SimpleFunction):
        return list(range(1, space.cells + 1))
    return rng.sample(range(1, 9), rng.randint(1, 5))


def random_kernel(rng: random.Random, domain, codomain=None,
                  linear=False, positive=False, injective=True) -> Kernel:
    codomain = codomain or domain
    atoms = _atom_pool(domain, rng)
    targets = _atom_pool(codomain, rng) if codomain != domain else list(atoms)
    rows = []
    used = set()
    for i in atoms:
        if codomain == domain:
            j = i
        elif injective:
            free = [t for t in targets if t not in used]
            if not free:
                break
            j = rng.choice(free)
            used.add(j)
        else:
            j = rng.choice(targets)
        rows.append((i, j, _random_fn(rng, linear=linear, positive=positive)))
    return Kernel(domain, codomain, tuple(rows))


def random_linear_ec(rng: random.Random, codomain=None,
                     nonzero: bool = False) -> LinearEC:
    codomain = codomain or Coordinate(2)
    coeffs = [(n, random_scalar(rng)) for n in rng.sample(range(1, 7),
                                                          rng.randint(1, 3))]
    unit_image = random_element(rng, codomain)
    target = random_element(rng, codomain)
    T = LinearEC(codomain, tuple(coeffs), unit_image, target)
    if nonzero and all(a == 0 for _, a in T.coeffs) and unit_image == zero(codomain):
        return random_linear_ec(rng, codomain, nonzero=True)
    if nonzero and target == zero(codomain) and unit_image == zero(codomain):
        return random_linear_ec(rng, codomain, nonzero=True)
    return T


def random_lateral_meet(rng: random.Random, space) -> LateralMeet:
    return LateralMeet(space, random_element(rng, space),
                       random_element(rng, space))


def random_match_table_pl(rng: random.Random) -> MatchTable:
    """Keys are strictly positive piecewise-linear functions: one
    support component, no disjoint partner, so the table really is
    orthogonally additive."""
    space = PiecewiseLinear()
    keys = []
    for v in rng.sample(range(1, 6), rng.randint(1, 2)):
        ts = sorted(rng.sample(_PL_POOL, rng.randint(0, 2)))
        pts = ([(ZERO, Q(v))] + [(t, Q(rng.randint(1, 4))) for t in ts]
               + [(Q(1), Q(rng.randint(1, 4)))])
        key = normalize(space, pts)
        if key not in keys:
            keys.append(key)
    return match_table([(k, random_element(rng, space)) for k in keys])


def random_dp_operator(rng: random.Random, space):
    """Disjointness-preserving by construction."""
    kind = rng.randrange(3)
    if kind == 0 and not isinstance(space, PiecewiseLinear):
        return random_kernel(rng, space)
    if kind == 1:
        return random_lateral_meet(rng, space)
    inner = (random_lateral_meet(rng, space) if isinstance(space, PiecewiseLinear)
             else random_kernel(rng, space))
    return OpScaled(random_nonzero_scalar(rng), inner)


def random_oao(rng: random.Random, space, allow_tables: bool = True):
    """A random orthogonally additive operator on the given space."""
    choices = ["meet", "scaled"]
    if not isinstance(space, PiecewiseLinear):
        choices += ["kernel", "sum"]
    if isinstance(space, EventuallyConstant):
        choices.append("linec")
    if allow_tables and isinstance(space, PiecewiseLinear):
        choices.append("table")
    kind = rng.choice(choices)
    if kind == "kernel":
        return random_kernel(rng, space)
    if kind == "meet":
        return random_lateral_meet(rng, space)
    if kind == "linec":
        return random_linear_ec(rng)
    if kind == "table":
        return random_match_table_pl(rng)
    if kind == "sum":
        return OpSum((random_kernel(rng, space), random_kernel(rng, space)))
    inner = (random_lateral_meet(rng, space) if isinstance(space, PiecewiseLinear)
             else random_kernel(rng, space))
    return OpScaled(random_nonzero_scalar(rng), inner)


def random_positive_operator(rng: random.Random, space):
    if isinstance(space, PiecewiseLinear):
        raise Unsupported("positive samples use atomic spaces")
    return random_kernel(rng, space, positive=True)


def random_linear_operator(rng: random.Random, nonzero: bool = True):
    """A linear operator (kernel or basis-split form), nonzero by default."""
    if rng.random() < 0.5:
        T = random_linear_ec(rng, nonzero=nonzero)
        return T
    domain = rng.choice((Coordinate(3), Coordinate(4),
                         SimpleFunction((Q(0), Q(1, 2), Q(1))), FinSupport()))
    while True:
        T = random_kernel(rng, domain, linear=True)
        if not nonzero or any(fn.coeffs[0][1] != 0 for _, _, fn in T.table
                              if len(fn.coeffs[0]) > 1):
            return T

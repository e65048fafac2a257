"""Pointwise lattice of operators: joins, meets, parts, modulus, wedges."""

from fractions import Fraction as Q

import pytest

from rieszlab import generators as gen
from rieszlab.errors import PreconditionError
from rieszlab.lateral import enumerate_decompositions
from rieszlab.operators import (
    AlternatingSeries, Kernel, RealInterval, ZeroOp, apply, diagonal_kernel,
    example_operator, negate, poly, vadd, vneg, vsup,
    verify_disjointness_preserving,
)
from rieszlab.oplattice import (
    dp_fast, join_at, meet_at, meyer_pair, modulus_at, neg_part_at,
    pos_part_at,
)
from rieszlab.reports import Budget, FAILS, fails, holds
from rieszlab.spaces import (
    Coordinate, EventuallyConstant, PiecewiseLinear, add, coord,
    ec, leq, one, scale, sub, zero,
)

from conftest import make_rng

EC = EventuallyConstant()


def _scalar_pair():
    S = Kernel(Coordinate(2), Coordinate(1),
               ((1, 1, poly(0, 1)), (2, 1, poly(0, 2))))
    T = Kernel(Coordinate(2), Coordinate(1),
               ((1, 1, poly(0, -1)), (2, 1, poly(0, 3))))
    return S, T


def test_join_example():
    S, T = _scalar_pair()
    p = join_at(S, T, coord(1, 1))
    assert p.value == coord(4)
    assert [(d.left, d.right) for d in p.attained] == [(coord(1, 0),
                                                        coord(0, 1))]


def test_join_idempotent_and_meet_example():
    S, T = _scalar_pair()
    x = coord(1, 1)
    assert join_at(T, T, x).value == apply(T, x)
    m = meet_at(S, T, x)
    assert m.value == coord(1)
    assert m.attained[0].left == coord(0, 1)


def test_meet_duality_identity():
    rng = make_rng("duality")
    for _ in range(40):
        space = Coordinate(rng.randint(1, 4))
        S = gen.random_kernel(rng, space)
        T = gen.random_kernel(rng, space)
        x = gen.random_element(rng, space)
        assert meet_at(S, T, x).value == \
            vneg(join_at(negate(S), negate(T), x).value)


def test_modulus_example():
    T = Kernel(Coordinate(2), Coordinate(1),
               ((1, 1, poly(0, 1)), (2, 1, poly(0, 0, -1))))
    # values over splittings of (1,2): {-3, 3, 5, -5}
    p = modulus_at(T, coord(1, 2))
    assert p.value == coord(5)
    assert p.attained[0].left == coord(1, 0)
    assert modulus_at(T, zero(Coordinate(2))).value == zero(Coordinate(1))


def test_parts_on_the_line():
    T = diagonal_kernel(Coordinate(1), [poly(0, 1)])
    assert pos_part_at(T, coord(-3)).value == coord(0)
    assert neg_part_at(T, coord(-3)).value == coord(3)
    Tpos = diagonal_kernel(Coordinate(1), [poly(0, 0, 1)])
    x = coord(-2)
    assert pos_part_at(Tpos, x).value == apply(Tpos, x)


def test_part_closed_forms_random():
    rng = make_rng("parts")
    for _ in range(60):
        n = rng.randint(1, 5)
        space = Coordinate(n)
        fns = [gen._random_fn(rng) for _ in range(n)]
        T = diagonal_kernel(space, fns)
        x = gen.random_element(rng, space)
        vals = list(zip(fns, x.payload))
        assert pos_part_at(T, x).value.payload == \
            tuple(max(f(v), Q(0)) for f, v in vals)
        assert neg_part_at(T, x).value.payload == \
            tuple(max(-f(v), Q(0)) for f, v in vals)
        assert modulus_at(T, x).value.payload == \
            tuple(abs(f(v)) for f, v in vals)
        assert sub(pos_part_at(T, x).value, neg_part_at(T, x).value) == \
            apply(T, x)


def test_join_upper_bound_property():
    rng = make_rng("ub")
    for _ in range(30):
        space = Coordinate(rng.randint(1, 4))
        S = gen.random_kernel(rng, space)
        T = gen.random_kernel(rng, space)
        x = gen.random_element(rng, space)
        top = join_at(S, T, x).value
        for d in enumerate_decompositions(x):
            assert leq(add(apply(S, d.left), apply(T, d.right)), top)


def test_fold_order_independence():
    S, T = _scalar_pair()
    x = coord(1, 1)
    values = [vadd(apply(S, d.left), apply(T, d.right))
              for d in enumerate_decompositions(x)]
    forward = values[0]
    for v in values[1:]:
        forward = vsup(forward, v)
    backward = values[-1]
    for v in reversed(values[:-1]):
        backward = vsup(backward, v)
    assert forward == backward == join_at(S, T, x).value


def test_truncated_levels_monotone_and_match_enumeration():
    rng = make_rng("trunc")
    x = ec([1, -2], Q(1, 2))
    pairs = [
        (gen.random_kernel(rng, EC, Coordinate(2)),
         gen.random_kernel(rng, EC, Coordinate(2))),
        (gen.random_lateral_meet(rng, EC),
         gen.random_lateral_meet(rng, EC)),
    ]
    L = gen.random_linear_ec(rng, EC)
    pairs.append((L, gen.random_lateral_meet(rng, EC)))
    for S, T in pairs:
        p = join_at(S, T, x, level=7)
        assert p.mode == "truncated"
        for (l1, v1), (l2, v2) in zip(p.levels, p.levels[1:]):
            assert l2 == l1 + 1 and leq(v1, v2)
        # brute-force cross-check through the truncated fragment sets
        for l, v in p.levels:
            best = None
            for d in enumerate_decompositions(x, level=l):
                val = vadd(apply(S, d.left), apply(T, d.right))
                best = val if best is None else vsup(best, val)
            assert best == v


def test_truncated_requires_level():
    S = diagonal_kernel_on_ec()
    with pytest.raises(PreconditionError):
        join_at(S, S, one(EC))


def diagonal_kernel_on_ec():
    return Kernel(EC, Coordinate(1), ((1, 1, poly(0, 1)),))


def test_series_join_levels_are_intervals():
    A = AlternatingSeries()
    Z = ZeroOp(EC, A.codomain)
    p = pos_part_at(A, one(EC), level=6)
    for (l1, v1), (l2, v2) in zip(p.levels, p.levels[1:]):
        assert isinstance(v1, RealInterval)
        assert v1.lower <= v2.lower and v1.upper <= v2.upper


def test_dp_fast_matches_brute_force():
    rng = make_rng("dpfast")
    for k in range(40):
        space = gen.space_menu()[k % 6]
        T = gen.random_dp_operator(rng, space)
        rep = verify_disjointness_preserving(T, Budget(samples=15, seed=k))
        assert rep.verdict != FAILS
        x = gen.random_element(rng, space)
        if isinstance(space, EventuallyConstant):
            x = ec(x.payload[0], 0)
        assert dp_fast("modulus", T, x, rep) == modulus_at(T, x).value
        assert dp_fast("pos", T, x, rep) == pos_part_at(T, x).value
        assert dp_fast("neg", T, x, rep) == neg_part_at(T, x).value


def test_dp_fast_requires_report():
    T = diagonal_kernel(Coordinate(1), [poly(0, 1)])
    with pytest.raises(PreconditionError):
        dp_fast("modulus", T, coord(1), None)
    with pytest.raises(PreconditionError):
        dp_fast("modulus", T, coord(1), fails("w"))
    with pytest.raises(PreconditionError):
        dp_fast("sign", T, coord(1), holds())


def test_meyer_pair_vanishes_under_hypotheses():
    T = diagonal_kernel(Coordinate(3), [poly(0, 1), poly(0, 1), poly(0, 1)])
    rep = verify_disjointness_preserving(T)
    e = coord(1, -2, 0)
    v = meyer_pair(T, coord(1, 0, 0), coord(0, -2, 0), e, rep)
    assert v == zero(Coordinate(3))


def test_meyer_pair_guards():
    T = example_operator("unit_match")
    u = one(PiecewiseLinear())
    rep = verify_disjointness_preserving(T)
    with pytest.raises(PreconditionError):
        meyer_pair(T, u, scale(2, u), u, rep)
    with pytest.raises(PreconditionError):
        meyer_pair(T, u, u, None, rep)
    with pytest.raises(PreconditionError):
        meyer_pair(T, u, u, u, None)


def test_meyer_counterexamples_unsafe():
    T = example_operator("unit_match")
    u = one(PiecewiseLinear())
    assert meyer_pair(T, u, scale(2, u), unsafe=True) == u
    S = example_operator("unit_lateral_meet")
    w = one(S.space)
    assert meyer_pair(S, w, scale(2, w), unsafe=True) == w

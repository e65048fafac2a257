"""Documented core mutations for negative testing.

Each named mutation swaps one lateral-order implementation for a
plausible-but-wrong variant; the check suite must catch every one of
them by a named failure.  Shipped mutants:

* ``latinf-collinear-meet-formula`` -- computes the lateral infimum by
  the (x+ ^ y+) - (x- ^ y-) formula for arbitrary pairs.  Correct on
  fragments of a common base, wrong on collinear pairs such as the
  constant one against twice the constant one (it returns the smaller
  instead of zero).
* ``latsup-sign-flip`` -- adds instead of subtracting the negative-part
  supremum in the lateral supremum formula.
* ``latinf-zero`` -- lateral infimum that always returns zero; breaks
  grid reconstruction outright.
"""

from contextlib import contextmanager

from . import lateral
from .spaces import zero


def _inf_meet_formula(x, y):
    return lateral.meet_formula(x, y)


def _sup_sign_flip(x, y):
    from .spaces import add, sup, pos_part, neg_part
    return add(sup(pos_part(x), pos_part(y)), sup(neg_part(x), neg_part(y)))


def _inf_zero(x, y):
    return zero(x.space)


MUTATIONS = {
    "latinf-collinear-meet-formula": ("_INF_IMPL", _inf_meet_formula),
    "latsup-sign-flip": ("_SUP_IMPL", _sup_sign_flip),
    "latinf-zero": ("_INF_IMPL", _inf_zero),
}


@contextmanager
def tampered(name: str):
    """Temporarily install the named mutant implementation."""
    attr, impl = MUTATIONS[name]
    original = getattr(lateral, attr)
    setattr(lateral, attr, impl)
    try:
        yield
    finally:
        setattr(lateral, attr, original)

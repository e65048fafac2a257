"""Pointwise lattice operations on operators via decomposition enumeration.

The join of two operators at x is the supremum of S(u) + T(v) over the
disjoint splittings x = u + v; meets, positive/negative parts and the
modulus are the matching infima/suprema.  Finite splitting sets are
folded exactly (no order completeness assumed anywhere); infinite ones
are handled level by level with a closed form that exploits additivity
on disjoint atom sums.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, SpaceMismatch
from . import reports
from .lateral import enumerate_decompositions, is_fragment, min_level
from .operators import (
    RealInterval, ZeroOp, apply, is_atom_additive, negate,
    vabs, vadd, vinf, vneg, vneg_part, vpos, vsup, vzero,
)
from .spaces import (
    Element, EventuallyConstant, canonical_key, format_element, get_atom,
    normalize, support_size, unit_atom, ZERO,
)


@dataclass
class LatticePoint:
    """Value of a pointwise operator-lattice expression.

    Exact mode carries the folded value and every optimal splitting
    (ties filtered to minimal left-support, canonically ordered);
    truncated mode carries the monotone level table instead.
    """

    mode: str
    value: object = None
    levels: tuple = ()
    attained: tuple = ()
    decided: bool = True
    notes: str = ""


def _pair_check(S, T, x: Element):
    if S.domain != T.domain or S.codomain != T.codomain:
        raise SpaceMismatch("operator pair must share domain and codomain")
    if x.space != S.domain:
        raise SpaceMismatch("argument outside the operators' domain")


def _fold(values, kind):
    acc = None
    for v in values:
        if acc is None:
            acc = v
        else:
            acc = vsup(acc, v) if kind == "sup" else vinf(acc, v)
    return acc


def _attained(pairs, target):
    hits = [d for d, v in pairs if v == target]
    if not hits:
        return ()
    best = min(support_size(d.left) for d in hits)
    hits = [d for d in hits if support_size(d.left) == best]
    hits.sort(key=lambda d: canonical_key(d.left))
    return tuple(hits)


def _interval_decided(values, fold):
    top_lo = max(v.lower for v in values)
    contenders = {v for v in values if v.upper >= top_lo}
    if len(contenders) > 1 and any(v.width > 0 for v in contenders):
        return False, f"{len(contenders)} overlapping enclosures at the top"
    return True, ""


def _extrema(S, T, x: Element, kind: str, level: int | None) -> LatticePoint:
    _pair_check(S, T, x)
    infinite = (isinstance(x.space, EventuallyConstant) and x.payload[1] != 0)
    if not infinite:
        pairs = [(d, vadd(apply(S, d.left), apply(T, d.right)))
                 for d in enumerate_decompositions(x)]
        fold = _fold((v for _, v in pairs), kind)
        decided, notes = True, ""
        if isinstance(fold, RealInterval):
            decided, notes = _interval_decided([v for _, v in pairs], fold)
        return LatticePoint("exact", value=fold,
                            attained=_attained(pairs, fold),
                            decided=decided, notes=notes)
    if level is None:
        raise PreconditionError(
            "infinite splitting family: supply a truncation level")
    if is_atom_additive(S) and is_atom_additive(T):
        levels = _levels_closed(S, T, x, kind, level)
    else:
        levels = _levels_enumerated(S, T, x, kind, level)
    return LatticePoint("truncated", levels=tuple(levels),
                        notes="per-level extrema over truncated splittings")


def _levels_closed(S, T, x, kind, level):
    """Per-level fold without enumeration.

    Each splitting of x at level l assigns every atom n <= l and the
    pure-tail part to one side; additivity on disjoint sums makes the
    value a sum of independent per-atom choices, so the coordinatewise
    fold distributes into per-atom folds.
    """
    pick = vsup if kind == "sup" else vinf
    prefix, tail = x.payload
    start = len(prefix)
    acc = vzero(S.codomain)
    for n in range(1, start + 1):
        acc = _accumulate(acc, S, T, x, n, pick)
    out = []
    for l in range(start, level + 1):
        if l > start:
            acc = _accumulate(acc, S, T, x, l, pick)
        w = normalize(x.space, ([ZERO] * l, tail))
        out.append((l, vadd(acc, pick(apply(S, w), apply(T, w)))))
    return out


def _accumulate(acc, S, T, x, n, pick):
    v = get_atom(x, n)
    if v == 0:
        return acc
    atom = unit_atom(x.space, n, v)
    return vadd(acc, pick(apply(S, atom), apply(T, atom)))


def _levels_enumerated(S, T, x, kind, level):
    pairs = [(d, vadd(apply(S, d.left), apply(T, d.right)))
             for d in enumerate_decompositions(x, level=level)]
    start = len(x.payload[0])
    out = []
    for l in range(start, level + 1):
        fold = _fold((v for d, v in pairs
                      if max(min_level(d.left), min_level(d.right)) <= l), kind)
        out.append((l, fold))
    return out


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def join_at(S, T, x: Element, level: int | None = None) -> LatticePoint:
    """sup of S(u) + T(v) over the splittings x = u + v."""
    return _extrema(S, T, x, "sup", level)


def meet_at(S, T, x: Element, level: int | None = None) -> LatticePoint:
    """inf of S(u) + T(v) over the splittings x = u + v; equals the
    negated join of the negated operators."""
    return _extrema(S, T, x, "inf", level)


def pos_part_at(T, x: Element, level: int | None = None) -> LatticePoint:
    """sup of T(u) over the fragments u of x."""
    return _extrema(T, ZeroOp(T.domain, T.codomain), x, "sup", level)


def neg_part_at(T, x: Element, level: int | None = None) -> LatticePoint:
    """-inf of T(u) over the fragments u of x."""
    point = _extrema(T, ZeroOp(T.domain, T.codomain), x, "inf", level)
    if point.mode == "exact":
        point.value = vneg(point.value)
    else:
        point.levels = tuple((l, vneg(v)) for l, v in point.levels)
    return point


def modulus_at(T, x: Element, level: int | None = None) -> LatticePoint:
    """sup of T(u) - T(v) over the splittings x = u + v."""
    return _extrema(T, negate(T), x, "sup", level)


_DP_KINDS = {"modulus", "pos", "neg"}


def dp_fast(kind: str, T, x: Element, dp_report: reports.CheckReport):
    """Single-application fast path for disjointness-preserving operators.

    For such operators the modulus at x is |T(x)| and the parts are
    (T(x))^+ and (T(x))^-; the caller supplies the verification report,
    which must not be a failure.
    """
    if kind not in _DP_KINDS:
        raise PreconditionError(f"kind must be one of {sorted(_DP_KINDS)}")
    if dp_report is None or dp_report.verdict == reports.FAILS:
        raise PreconditionError(
            "fast path needs a non-failing disjointness-preservation report")
    y = apply(T, x)
    if kind == "modulus":
        return vabs(y)
    if kind == "pos":
        return vpos(y)
    return vneg_part(y)


def meyer_pair(T, x: Element, y: Element, e: Element | None = None,
               dp_report: reports.CheckReport | None = None,
               unsafe: bool = False):
    """(T(x))^+ wedge (T(y))^-; zero whenever {x, y} is laterally
    bounded and T preserves disjointness.

    ``unsafe`` skips the hypothesis checks to reproduce the documented
    counterexamples; such values are not covered by the statement.
    """
    if not unsafe:
        if e is None:
            raise PreconditionError("a common lateral bound e is required")
        for name, el in (("x", x), ("y", y)):
            if not is_fragment(el, e):
                raise PreconditionError(
                    f"{name}={format_element(el)} is not a fragment of "
                    f"e={format_element(e)}; the vanishing statement does not "
                    "apply (this is exactly where the counterexamples live)")
        if dp_report is None or dp_report.verdict == reports.FAILS:
            raise PreconditionError(
                "a non-failing disjointness-preservation report is required")
    return vinf(vpos(apply(T, x)), vneg_part(apply(T, y)))

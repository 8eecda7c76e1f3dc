"""Controllable and relatively observable synthesis: the Gamma operator and its iteration."""

from __future__ import annotations

import logging

from .errors import IterationLimitError
from .fa import Lang
from .relobs import DEFAULT_MAX_ITER, Problem, SynthesisTrace, _check_sub, check_relobs, sup_relobs
from .supremal import is_controllable, sup_controllable

log = logging.getLogger(__name__)


def _gamma(k: Lang, p: Problem, max_iter: int) -> tuple[Lang, Lang, SynthesisTrace]:
    h = sup_controllable(k, p.m)
    result, inner = sup_relobs(p, start=h, max_iter=max_iter)
    return h, result, inner


def gamma(k: Lang, p: Problem, *, max_iter: int = DEFAULT_MAX_ITER) -> Lang:
    """Gamma(K) = sup O(sup C(K)).

    The inner sup O is the largest sublanguage of sup C(K) that is
    observable relative to the problem's specification C, found by iterating
    Omega from sup C(K).
    """
    _check_sub(k, p)
    return _gamma(k, p, max_iter)[1]


def sup_ctrl_relobs(
    p: Problem,
    *,
    max_iter: int = DEFAULT_MAX_ITER,
    nested_trace: bool = False,
) -> tuple[Lang, SynthesisTrace]:
    """Iterate Gamma from K_0 = C to its fixpoint, sup CO(C).

    Each outer step runs a full Omega iteration. The trace has a ``supC`` and
    a ``gamma`` record per outer step; with ``nested_trace`` the inner Omega
    trace hangs off the ``gamma`` record.
    """
    k = p.c
    trace = SynthesisTrace()
    j = 0
    while True:
        j += 1
        if j > max_iter:
            raise IterationLimitError(f"Gamma iteration did not converge within {max_iter} steps")
        h, nxt, inner = _gamma(k, p, max_iter)
        trace.add(j, "supC", h)
        done = nxt == k
        trace.add(j, "gamma", nxt, converged=done, inner=inner if nested_trace else None)
        log.debug("gamma step %d: %d -> %d states (%d inner steps)", j, k.size, nxt.size, inner.iterations)
        if done:
            return nxt, trace
        k = nxt


def check_ctrl_relobs(k: Lang, p: Problem) -> bool:
    _check_sub(k, p)
    return is_controllable(k, p.m) and check_relobs(k, p)

"""Bracketed root finding for increasing functions.

Illinois false position, with a forced bisection whenever two steps in a
row fail to halve the bracket.
"""

from __future__ import annotations

import math
from typing import Callable

from .errors import BracketError


def expand_bracket(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    floor: float = 0.0,
    max_expand: int = 8,
) -> tuple[float, float, float, float]:
    """Widen ``[lo, hi]`` geometrically until the increasing ``f`` changes sign.

    ``lo`` stays strictly above ``floor``.  Returns ``(lo, hi, f(lo), f(hi))``.
    """
    if lo <= floor:
        lo = floor + 0.5 * (min(hi, floor + 1.0) - floor)
    flo, fhi = f(lo), f(hi)
    step = hi - lo
    for _ in range(max_expand):
        if flo <= 0.0 <= fhi:
            return lo, hi, flo, fhi
        step *= 2.0
        if flo > 0.0:
            lo = lo - step if lo - step > floor else floor + 0.5 * (lo - floor)
            flo = f(lo)
        if fhi < 0.0:
            hi += step
            fhi = f(hi)
    if flo <= 0.0 <= fhi:
        return lo, hi, flo, fhi
    raise BracketError(
        f"no sign change in [{lo!r}, {hi!r}] after {max_expand} expansions "
        f"(f = {flo!r}, {fhi!r})"
    )


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    flo: float | None = None,
    fhi: float | None = None,
    ftol: float = 0.0,
    xtol_rel: float = 1e-13,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Root of an increasing ``f`` with ``f(lo) <= 0 <= f(hi)``.

    Stops once the bracket is narrower than ``xtol_rel`` (relative) and the
    better endpoint has ``|f| <= ftol``, or when the bracket has collapsed
    to a few ulps.  Returns ``(x, f(x))`` for the endpoint with the smaller
    residual.
    """
    flo = f(lo) if flo is None else flo
    fhi = f(hi) if fhi is None else fhi
    if flo == 0.0:
        return lo, flo
    if fhi == 0.0:
        return hi, fhi
    if not (flo < 0.0 < fhi):
        raise BracketError(f"f({lo!r}) = {flo!r} and f({hi!r}) = {fhi!r} do not bracket a root")

    # interpolation weights; damped copies of the true endpoint values
    wlo, whi = flo, fhi
    last_side = 0
    stalls = 0
    for _ in range(max_iter):
        width = hi - lo
        best_x, best_f = (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
        scale = max(abs(lo), abs(hi))
        if (width <= xtol_rel * scale and abs(best_f) <= ftol) or width <= 4 * math.ulp(scale):
            return best_x, best_f

        if stalls >= 2:
            x = 0.5 * (lo + hi)
        else:
            x = hi - whi * (hi - lo) / (whi - wlo)
            if not (lo < x < hi):
                x = 0.5 * (lo + hi)
        fx = f(x)
        if fx == 0.0:
            return x, fx
        if fx < 0.0:
            lo, flo, wlo = x, fx, fx
            if last_side == -1:
                whi *= 0.5
            last_side = -1
        else:
            hi, fhi, whi = x, fx, fx
            if last_side == 1:
                wlo *= 0.5
            last_side = 1
        stalls = stalls + 1 if (hi - lo) > 0.5 * width else 0
    best_x, best_f = (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
    return best_x, best_f

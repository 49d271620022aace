"""Scalar setup for the coloring procedure, derived from (k, a, eps).

The palette size ``t`` is chosen as an integer and ``gamma`` is solved
from ``t = k / ((1 + gamma) a ln k)``, which makes ``p*t + q == 1`` an
algebraic identity rather than a rounding accident.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import ParameterError


@dataclass(frozen=True)
class ColoringParams:
    k: int
    a: float
    eps: float | None
    gamma: float
    t: int
    p: float
    q: float
    z: int
    s: int
    thresh_uncolored: float
    thresh_missing: int
    support_cap: int
    finite_r_cap: float
    # names of checks/values that were forced rather than derived
    waived: tuple[str, ...] = ()

    @property
    def log_k(self) -> float:
        return math.log(self.k)

    def class_floor(self, n: int) -> float:
        """Minimum class size required of every color (condition 4)."""
        return n * (1 + self.gamma / 4) * self.a * math.log(self.k) / self.k

    @property
    def final_classes(self) -> int:
        return self.t - self.s

    def target_colors(self, eps: float | None = None) -> int:
        """floor((1 - eps) k / (a ln k)), the asymptotic color-count goal."""
        e = self.eps if eps is None else eps
        if e is None:
            raise ParameterError("no eps available for the target color count")
        return math.floor((1 - e) * self.k / (self.a * math.log(self.k)))

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["waived"] = list(self.waived)
        return rec


def gamma_for(k: int, a: float, t: int) -> float:
    return k / (t * a * math.log(k)) - 1


def _build(k: int, a: float, eps: float | None, t: int, *, s: int | None = None,
           z: int | None = None, waived: tuple[str, ...] = ()) -> ColoringParams:
    lk = math.log(k)
    gamma = gamma_for(k, a, t)
    p = (1 + gamma / 2) * a * lk / k
    q = gamma / (2 * (1 + gamma))
    if z is None:
        z = math.ceil(k ** (1 - a * gamma / 4))
    else:
        waived = waived + ("z",)
    if s is None:
        s = math.ceil(math.sqrt(gamma) * k / (a * lk))
    else:
        waived = waived + ("s",)
    thresh_missing = math.ceil(10 / gamma)
    return ColoringParams(
        k=k, a=a, eps=eps, gamma=gamma, t=t, p=p, q=q, z=z, s=s,
        thresh_uncolored=k * gamma / 5,
        thresh_missing=thresh_missing,
        support_cap=thresh_missing * (z - 1),
        finite_r_cap=3 * k ** (1 - gamma ** 2 / 33),
        waived=waived,
    )


def t_window(k: int, a: float, eps: float) -> tuple[float, float]:
    lk = math.log(k)
    return k / ((1 + eps ** 2 / 4) * a * lk), k / ((1 + eps ** 2 / 8) * a * lk)


def derive_params(k: int, a: float, eps: float, t: int | None = None) -> ColoringParams:
    """Derive every setup scalar, choosing the largest admissible integer t.

    With an explicit ``t`` the gamma window ``[eps^2/8, eps^2/4]`` is still
    enforced; use :func:`params_with_override` to skip it.
    """
    if k < 3:
        raise ParameterError(f"k must be >= 3, got {k}")
    if a < 1:
        raise ParameterError(f"a must be >= 1, got {a}")
    if not 0 < eps < 1:
        raise ParameterError(f"eps must lie in (0, 1), got {eps}")
    lo, hi = t_window(k, a, eps)
    if t is None:
        t = math.floor(hi)
        if t < lo or t < 1:
            raise ParameterError(
                f"no integer t in [{lo:.6g}, {hi:.6g}] for k={k}, a={a}, eps={eps}")
        # guard against hi sitting a hair above an integer
        while t > lo and gamma_for(k, a, t) < eps ** 2 / 8:
            t -= 1
    gamma = gamma_for(k, a, t)
    if not eps ** 2 / 8 <= gamma <= eps ** 2 / 4:
        raise ParameterError(
            f"t={t} gives gamma={gamma:.6g} outside [{eps**2/8:.6g}, {eps**2/4:.6g}]")
    params = _build(k, a, eps, t)
    if params.final_classes < 1:
        raise ParameterError(f"t - s = {params.final_classes} < 1")
    return params


def params_with_override(k: int, a: float, t: int, *, s: int | None = None,
                         z: int | None = None) -> ColoringParams:
    """Build parameters from a forced palette size, skipping the gamma window.

    Desk-scale ``k`` rarely admits a window integer, so this path exists for
    experiments and tests. ``s`` and ``z`` may also be forced.
    """
    if k < 2:
        raise ParameterError(f"k must be >= 2, got {k}")
    if a < 1:
        raise ParameterError(f"a must be >= 1, got {a}")
    if t < 1:
        raise ParameterError(f"t must be >= 1, got {t}")
    gamma = gamma_for(k, a, t)
    if gamma <= 0:
        raise ParameterError(
            f"t={t} leaves no uncolored mass: gamma = {gamma:.6g} <= 0")
    if s is not None and s < 0:
        raise ParameterError(f"s must be >= 0, got {s}")
    if z is not None and z < 1:
        raise ParameterError(f"z must be >= 1, got {z}")
    return _build(k, a, None, t, s=s, z=z, waived=("gamma_window",))

"""Exponent estimates, the transference bound and the spectrum values.

Finite searches can only certify lower bounds for an exponent defined by a
limsup, so :func:`estimate_omega` reports the record trajectory together with
the largest exponent it exhibits (or ``inf`` when a point with an exactly
vanishing coordinate was found).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .enumeration import RecordPoint, RecordSearch
from .exact import FieldElement
from .reals import CReal, cmax, compare, cprod


@dataclass
class ExponentEstimate:
    """Largest exponent seen along a record trajectory (a lower bound for omega)."""

    gamma_max: float
    records_used: int
    x_max_reached: float
    certificate: Optional[object] = None
    trajectory: list = field(default_factory=list)  # (|x|, gamma) pairs
    complete: bool = True

    def to_json(self):
        cert = None
        if self.certificate is not None:
            cert = {"z": list(self.certificate.z)}
        return {"gamma_max": "inf" if math.isinf(self.gamma_max) else self.gamma_max,
                "records_used": self.records_used, "x_max_reached": self.x_max_reached,
                "certificate": cert, "complete": self.complete,
                "trajectory": [[s, "inf" if math.isinf(g) else g] for s, g in self.trajectory]}


def estimate_omega(records: Union[RecordSearch, Sequence[RecordPoint]],
                   tail_fraction: float = 1.0) -> ExponentEstimate:
    """Largest gamma among the records in the tail of the search.

    The tail holds the records with ``ln|x| >= (1 - tail_fraction) * ln(x_max_reached)``;
    the default ``tail_fraction = 1`` uses every record, which makes the estimate
    monotone in the search range.
    """
    if not 0 < tail_fraction <= 1:
        raise ValueError("tail_fraction must lie in (0, 1]")
    complete = True
    if isinstance(records, RecordSearch):
        search = records
        recs = list(search.records)
        reached = search.x_max_reached
        complete = search.complete
    else:
        recs = list(records)
        reached = max((r.point.sup_norm for r in recs), default=0.0)
    if not recs:
        raise ValueError("no records to estimate from")
    trajectory = [(r.point.sup_norm, r.gamma) for r in recs]
    cert = next((r.point for r in recs if math.isinf(r.gamma)), None)
    if cert is not None:
        return ExponentEstimate(math.inf, len(recs), reached, cert, trajectory, complete)
    threshold = (1 - tail_fraction) * math.log(max(reached, 1.0))
    tail = [r for r in recs if math.log(r.point.sup_norm) >= threshold - 1e-12]
    if not tail:
        tail = recs[-1:]
    return ExponentEstimate(max(r.gamma for r in tail), len(tail), reached, None,
                            trajectory, complete)


def transference_lower_bound(omega_dual, d: int):
    """omega* / ((d-1)^2 + d(d-2) omega*), and 1/(d(d-2)) when omega* is infinite.

    Rational input gives an exact :class:`~fractions.Fraction`.
    """
    if d < 3:
        raise ValueError("the transference bound needs d >= 3")
    if isinstance(omega_dual, float) and math.isinf(omega_dual):
        if omega_dual < 0:
            raise ValueError("omega* must be nonnegative")
        return Fraction(1, d * (d - 2))
    if omega_dual < 0:
        raise ValueError("omega* must be nonnegative")
    if isinstance(omega_dual, float):
        return omega_dual / ((d - 1) ** 2 + d * (d - 2) * omega_dual)
    w = Fraction(omega_dual)
    return w / ((d - 1) ** 2 + d * (d - 2) * w)


def spectrum_value(d: int, k: int, l: int) -> Fraction:
    """k(d-k-l)/(dl) for 1 <= k <= d-2 and 1 <= l <= d-k-1."""
    if d < 3:
        raise ValueError("d must be at least 3")
    if not 1 <= k <= d - 2:
        raise ValueError(f"k={k} outside 1..{d - 2}")
    if not 1 <= l <= d - k - 1:
        raise ValueError(f"l={l} outside 1..{d - k - 1}")
    return Fraction(k * (d - k - l), d * l)


def spectrum_table(d_max: int) -> list:
    rows = []
    for d in range(3, d_max + 1):
        for k in range(1, d - 1):
            for l in range(1, d - k):
                v = spectrum_value(d, k, l)
                rows.append((d, k, l, v))
    return rows


def spectrum_table_csv(d_max: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d", "k", "l", "value_num", "value_den"])
    for d, k, l, v in spectrum_table(d_max):
        w.writerow([d, k, l, v.numerator, v.denominator])
    return buf.getvalue()


# --------------------------------------------------------------------------
# simultaneous and multiplicative exponents of a vector

@dataclass(frozen=True)
class ClassicalRecord:
    z: tuple
    size: float      # |z| (ordinary) or |z_1| (multiplicative)
    value: float     # max|l_i| or prod|l_i|^(1/n)
    gamma: float


@dataclass(frozen=True)
class ClassicalCertificate:
    """Integer point at which the relevant forms vanish exactly."""

    z: tuple


def _theta_exact(t):
    if isinstance(t, FieldElement):
        return t
    if isinstance(t, (int, Fraction)):
        return Fraction(t)
    if isinstance(t, str):
        return Fraction(t)
    raise TypeError("theta entries must be int, Fraction, rational string or FieldElement")


def _creal(t) -> CReal:
    return t.as_creal() if isinstance(t, FieldElement) else CReal.rational(t)


def classical_exponent(theta: Sequence, x_max: float, multiplicative: bool = False,
                       prec: Optional[int] = None) -> ExponentEstimate:
    """Approximation exponent of ``theta`` along the forms ``theta_i z_1 + z_{i+1}``.

    For each ``z_1 = q`` the other coordinates are the nearest integers to
    ``-q theta_i``, which minimise every form at once.  A record is kept
    whenever the size of the forms drops below all earlier values; its
    exponent is evaluated in certified arithmetic.  An exact solution (all
    forms zero) is returned as an ``inf`` certificate.
    """
    if not x_max > 1:
        raise ValueError("x_max must exceed 1")
    th = [_theta_exact(t) for t in theta]
    n = len(th)
    if n == 0:
        raise ValueError("theta must be nonempty")
    q_max = int(math.floor(x_max))
    # exact solutions: every form vanishes (ordinary) or one form does (multiplicative)
    rational = [t if isinstance(t, Fraction) else t.as_fraction() if t.is_rational() else None
                for t in th]
    q = None
    if all(r is not None for r in rational):
        q = math.lcm(*(r.denominator for r in rational))
    if multiplicative and any(r is not None for r in rational):
        q = min(r.denominator for r in rational if r is not None)
    if q is not None and q <= x_max:
        z = (q,) + tuple(-round(float(_creal(t)) * q) if r is None else -int(r * q)
                         for t, r in zip(th, rational))
        size = float(q) if multiplicative else float(max(abs(v) for v in z))
        if size <= x_max:
            return ExponentEstimate(math.inf, 1, size, ClassicalCertificate(z), [(size, math.inf)])
    tf = np.array([float(_creal(t)) for t in th])
    qs = np.arange(1, q_max + 1, dtype=np.float64)
    prods = qs[:, None] * tf[None, :]
    near = np.rint(prods)
    dist = np.abs(prods - near)
    if multiplicative:
        with np.errstate(divide="ignore"):
            score = np.exp(np.log(dist).mean(axis=1))
    else:
        score = dist.max(axis=1)
    records = []
    best = math.inf
    best_c = None
    trajectory = []
    for qi in range(q_max):
        # candidates: float score within a relative margin of the running best
        if score[qi] > best * (1 + 1e-6):
            continue
        q = qi + 1
        z = (q,) + tuple(-int(v) for v in near[qi])
        forms = [_creal(t) * q + zi for t, zi in zip(th, z[1:])]
        vals = [abs(f) for f in forms]
        if multiplicative:
            size_c = CReal.rational(q)
            val_c = cprod(vals) ** Fraction(1, n)
        else:
            size_c = CReal.rational(max(abs(v) for v in z))
            val_c = cmax(*vals)
        if best_c is not None and compare(val_c, best_c) != -1:
            continue
        best_c, best = val_c, float(val_c)
        if q == 1 and (multiplicative or max(abs(v) for v in z) == 1):
            continue  # log of the size vanishes
        g = float(-val_c.log() / size_c.log())
        records.append(ClassicalRecord(z, float(size_c), float(val_c), g))
        trajectory.append((float(size_c), g))
    if not records:
        raise ValueError("no approximations with |z| > 1 in range")
    return ExponentEstimate(max(r.gamma for r in records), len(records),
                            float(q_max), None, trajectory)

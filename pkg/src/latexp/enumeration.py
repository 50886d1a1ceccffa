"""Lattice point enumeration in coordinate boxes.

The integer preimages of the points in a box ``|x_i| <= eta_i`` are found by
LLL-reducing the box-normalised basis (only to tighten the search region),
bounding every reduced coordinate through the inverse matrix, and solving the
last coordinate's range directly from the box constraints.  Floating point is
used only to propose candidates with a generous margin; every point near a
face of the box and every near-zero coordinate is decided by exact or
certified interval arithmetic.

Record searches cover the hyperbolic region ``{|x| <= R, prod|x_i| < P}`` by
dyadic boxes instead of scanning the whole cube, which keeps the work roughly
proportional to ``P * (log R)^(d-1)``.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Optional, Sequence

import mpmath
import numpy as np

from .exact import rational_kernel
from .lattice import Lattice, LatticePoint, gamma
from .reals import CReal, compare, cprod, default_precision

_REL_CAND = 1e-7     # margin for proposing candidates
_REL_FLOAT = 1e-12   # float values farther than this from a face are trusted


class BudgetExceeded(RuntimeError):
    """Enumeration stopped before completion; ``scanned`` points were examined."""

    def __init__(self, message: str, scanned: int = 0):
        super().__init__(message)
        self.scanned = scanned


class PreconditionError(ValueError):
    """Volume hypothesis of Minkowski's theorem not satisfied."""


@dataclass(frozen=True)
class Box:
    """Closed coordinate box ``|x_i| <= eta_i``."""

    eta: tuple

    def __init__(self, eta):
        vals = tuple(CReal.coerce(e) for e in eta)
        for v in vals:
            if compare(v, 0) != 1:
                raise ValueError("box half-sides must be positive")
        object.__setattr__(self, "eta", vals)

    @classmethod
    def cube(cls, r, d: int) -> "Box":
        return cls([r] * d)

    @property
    def d(self) -> int:
        return len(self.eta)

    def floats(self) -> np.ndarray:
        return np.array([float(e) for e in self.eta])

    def volume(self) -> CReal:
        return cprod(self.eta) * (2 ** self.d)

    def scaled(self, c) -> "Box":
        return Box([e * c for e in self.eta])


@dataclass(frozen=True)
class EnumerationBudget:
    x_max: float
    max_points: int = 20_000_000
    precision: Optional[int] = None

    def __post_init__(self):
        if not self.x_max > 0 or self.max_points <= 0:
            raise ValueError("budget caps must be positive")


# --------------------------------------------------------------------------
# basis reduction (floating point; only used to shrink search regions)

def _lll_columns(M: np.ndarray, delta: float = 0.99, max_iter: int = 5000):
    """LLL on the columns of M.  Returns (U, Uinv) with M @ U reduced."""
    n = M.shape[1]
    B = M.astype(float).copy()
    U = np.eye(n, dtype=np.int64)
    Ui = np.eye(n, dtype=np.int64)

    def gso(B):
        # Gram-Schmidt data from a QR factorisation: B = QR, b*_i = R_ii q_i
        R = np.linalg.qr(B, mode="r")
        diag = np.diag(R).copy()
        diag[diag == 0] = 1e-300
        return (R / diag[:, None]).T, np.diag(R) ** 2

    mu, norms = gso(B)
    k = 1
    it = 0
    while k < n and it < max_iter:
        it += 1
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q:
                B[:, k] -= q * B[:, j]
                U[:, k] -= q * U[:, j]
                Ui[j, :] += q * Ui[k, :]
                # size reduction leaves the Gram-Schmidt vectors unchanged
                mu[k, :j] -= q * mu[j, :j]
                mu[k, j] -= q
        if norms[k] >= (delta - mu[k, k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            B[:, [k - 1, k]] = B[:, [k, k - 1]]
            U[:, [k - 1, k]] = U[:, [k, k - 1]]
            Ui[[k - 1, k], :] = Ui[[k, k - 1], :]
            mu, norms = gso(B)
            k = max(k - 1, 1)
    return U, Ui


# --------------------------------------------------------------------------
# box scanning

@dataclass
class _Plan:
    B: np.ndarray
    U: np.ndarray
    Mr: np.ndarray
    bounds: np.ndarray
    R: np.ndarray      # triangular factor of Mr


def _plan(L: Lattice, eta: np.ndarray) -> _Plan:
    d = L.d
    B = L.basis_float
    Binv = L.inverse_float
    etac = eta * (1 + _REL_CAND)
    M = B / etac[:, None]
    ident = np.eye(d, dtype=np.int64)
    raw = (np.abs(Binv) * (1 + 1e-12)) @ etac
    if np.prod(2 * np.floor(raw) + 1) <= _SMALL_GRID:
        U, Ui = ident, ident  # already cheap to scan; reduction would cost more than it saves
    else:
        U, Ui = _lll_columns(M)
    Uif = Ui.astype(float)
    P = Uif @ Binv
    slack = np.abs(Uif) @ np.abs(Binv)
    # |w_j| <= sum_i |(U^-1 B^-1)_ji| eta_i, padded for float error
    raw = (np.abs(P) + 1e-12 * slack) @ etac
    bounds = np.floor(raw * (1 + 1e-9) + 1e-9).astype(np.int64)
    Mr = M @ U.astype(float)
    return _Plan(B=B, U=U, Mr=Mr, bounds=bounds, R=np.linalg.qr(Mr, mode="r"))


def _expand(W: np.ndarray, lo: np.ndarray, hi: np.ndarray):
    """Append every integer in [lo_k, hi_k] to row k of W (as a new first column)."""
    counts = np.maximum(hi - lo + 1, 0)
    total = int(counts.sum())
    idx = np.repeat(np.arange(W.shape[0]), counts)
    offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    new = (np.repeat(lo, counts) + offsets).astype(np.int64)
    return np.concatenate([new[:, None], W[idx]], axis=1), idx, new


def _pad(a, b):
    return 1e-7 * (np.abs(a) + np.abs(b) + 1)


def _ball_radius2(d: int) -> float:
    # |x|_inf <= lim implies |x|_2^2 <= d lim^2
    return d * (1 + _REL_CAND) ** 2 * (1 + 1e-9)


def _top_range(plan: _Plan) -> int:
    d = plan.R.shape[0]
    r = math.sqrt(_ball_radius2(d)) / abs(plan.R[d - 1, d - 1])
    return int(min(plan.bounds[d - 1], math.floor(r * (1 + 1e-7) + 1e-7)))


def _candidates(plan: _Plan, tops: np.ndarray) -> np.ndarray:
    """Candidate w vectors (reduced coordinates) with w_{d-1} in ``tops``.

    Coordinates d-1, ..., 1 are pruned level by level against the Euclidean
    ball that contains the box; w_0 is then solved against the box faces.
    """
    d = plan.R.shape[0]
    R, Mr = plan.R, plan.Mr
    lim = 1 + _REL_CAND
    W = np.asarray(tops, dtype=np.int64)[:, None]
    if d == 1:
        W = np.zeros((1, 0), dtype=np.int64)
        rem = np.zeros(1)
    else:
        rem = _ball_radius2(d) - (R[d - 1, d - 1] * W[:, 0]) ** 2
        keep = rem >= -1e-9
        W, rem = W[keep], rem[keep]
        for i in range(d - 2, 0, -1):
            rii = R[i, i]
            c = -(W.astype(float) @ R[i, i + 1:]) / rii
            h = np.sqrt(np.maximum(rem, 0.0)) / abs(rii)
            pad = _pad(c, h)
            lo = np.maximum(np.ceil(c - h - pad), -plan.bounds[i]).astype(np.int64)
            hi = np.minimum(np.floor(c + h + pad), plan.bounds[i]).astype(np.int64)
            W, idx, new = _expand(W, lo, hi)
            rem = rem[idx] - (rii * (new - c[idx])) ** 2
            if W.shape[0] == 0:
                return np.zeros((0, d), dtype=np.int64)
    r = W.astype(float) @ Mr[:, 1:].T if d > 1 else np.zeros((1, 1))
    col = Mr[:, 0]
    wb = float(plan.bounds[0])
    lo = np.full(W.shape[0], -wb)
    hi = np.full(W.shape[0], wb)
    ok = np.ones(W.shape[0], dtype=bool)
    for i in range(d):
        ci = col[i]
        if abs(ci) < 1e-300:
            ok &= np.abs(r[:, i]) <= lim
            continue
        a = (-lim - r[:, i]) / ci
        b = (lim - r[:, i]) / ci
        lo = np.maximum(lo, np.minimum(a, b))
        hi = np.minimum(hi, np.maximum(a, b))
    pad = _pad(lo, hi)
    lo = np.ceil(lo - pad).astype(np.int64)
    hi = np.where(ok, np.floor(hi + pad), lo - 1).astype(np.int64)
    out, _, _ = _expand(W, lo, hi)
    return out


def _certify_inside(L: Lattice, z, eta: Sequence[CReal], prec: int) -> Optional[bool]:
    """Exact/certified decision of |x_i| <= eta_i for all i; None if undecidable."""
    verdict = True
    for i, e in enumerate(eta):
        c = compare(abs(L.value(z, i)), e, prec)
        if c == 1:
            return False
        if c is None:
            verdict = None
    return verdict


def scan_box_chunks(L: Lattice, box: Box, *, mode: str = "outer", max_points: Optional[int] = None,
                    threads: int = 1, prec: Optional[int] = None) -> Iterator[tuple]:
    """Yield (Z, X) array chunks covering exactly the lattice points of ``box``.

    ``mode='outer'`` keeps points whose membership cannot be certified (ties
    on the faces of closed boxes), ``'inner'`` drops them.
    """
    if box.d != L.d:
        raise ValueError("box dimension differs from lattice dimension")
    prec = prec or default_precision()
    eta = box.floats()
    plan = _plan(L, eta)
    d = L.d
    top = _top_range(plan) if d > 1 else 0
    ntop = 2 * top + 1
    # expected candidate count: ball volume over the covolume of the scaled lattice
    rad = math.sqrt(_ball_radius2(d))
    vol = math.pi ** (d / 2) / math.gamma(d / 2 + 1) * rad ** d
    est = vol / max(abs(float(np.prod(np.diag(plan.R)))), 1e-300)
    if max_points is not None and est > 50 * max_points + 1000:
        raise BudgetExceeded(f"search region of about {est:.3g} candidates exceeds budget", 0)
    # batch the outermost coordinate so each chunk holds ~2^17 candidates
    step = max(1, int((1 << 17) * ntop / max(est, 1.0)))
    firsts = [np.arange(a, min(a + step, top + 1), dtype=np.int64)
              for a in range(-top, top + 1, step)]
    Uf = plan.U
    B = plan.B
    absB = np.abs(B)

    def work(chunk):
        w = _candidates(plan, chunk)
        if w.shape[0] == 0:
            return np.zeros((0, d), dtype=np.int64), np.zeros((0, d)), np.zeros(0, dtype=bool)
        Z = w @ Uf.T
        X = Z.astype(float) @ B.T
        err = _REL_FLOAT * (np.abs(Z).astype(float) @ absB.T + eta[None, :])
        ax = np.abs(X)
        out = (ax > eta + err).any(axis=1)
        keep = ~out
        amb = ((ax >= eta - err) & keep[:, None]).any(axis=1)
        return Z[keep], X[keep], amb[keep]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = ex.map(work, firsts)
            yield from _finish(L, box, results, mode, max_points, prec)
    else:
        yield from _finish(L, box, map(work, firsts), mode, max_points, prec)


def _finish(L, box, results, mode, max_points, prec):
    scanned = 0
    for Z, X, amb in results:
        scanned += Z.shape[0]
        if max_points is not None and scanned > max_points:
            raise BudgetExceeded(f"more than {max_points} points in box", scanned)
        if amb.any():
            keep = np.ones(Z.shape[0], dtype=bool)
            for idx in np.nonzero(amb)[0]:
                v = _certify_inside(L, Z[idx], box.eta, prec)
                if v is False or (v is None and mode == "inner"):
                    keep[idx] = False
            Z, X = Z[keep], X[keep]
        if Z.shape[0]:
            yield Z, X


def _order(Z: np.ndarray, X: np.ndarray) -> np.ndarray:
    sup = np.abs(X).max(axis=1) if X.shape[0] else np.zeros(0)
    keys = [Z[:, j] for j in range(Z.shape[1] - 1, -1, -1)] + [sup]
    return np.lexsort(keys)


def scan_box(L: Lattice, box: Box, *, exclude_zero: bool = True, mode: str = "outer",
             max_points: Optional[int] = None, threads: int = 1,
             prec: Optional[int] = None) -> tuple:
    """All lattice points of ``box`` as (Z, X) arrays ordered by sup-norm then z."""
    zs, xs = [], []
    for Z, X in scan_box_chunks(L, box, mode=mode, max_points=max_points,
                                threads=threads, prec=prec):
        zs.append(Z)
        xs.append(X)
    if zs:
        Z = np.concatenate(zs)
        X = np.concatenate(xs)
    else:
        Z = np.zeros((0, L.d), dtype=np.int64)
        X = np.zeros((0, L.d))
    if exclude_zero and Z.shape[0]:
        nz = np.any(Z != 0, axis=1)
        Z, X = Z[nz], X[nz]
    o = _order(Z, X)
    return Z[o], X[o]


def points_in_box(L: Lattice, box: Box, exclude_zero: bool = True, *, mode: str = "outer",
                  max_points: Optional[int] = None, threads: int = 1,
                  prec: Optional[int] = None) -> Iterator[LatticePoint]:
    """Stream of the lattice points in ``box``, by sup-norm then lexicographic z.

    Raises :class:`BudgetExceeded` (before yielding anything) when the box
    holds more than ``max_points`` candidates.
    """
    Z, X = scan_box(L, box, exclude_zero=exclude_zero, mode=mode,
                    max_points=max_points, threads=threads, prec=prec)
    for z in Z:
        yield L.point(tuple(int(v) for v in z))


def naive_box_scan(L: Lattice, box: Box, exclude_zero: bool = True, *,
                   first_only: bool = False) -> set:
    """Reference scan of the full integer box |z_j| <= sum_i |A^-1_ji| eta_i (slow).

    With ``first_only`` the scan stops at the first point found, visiting
    the outer coordinates in order of increasing size; an empty result is
    still a full scan.
    """
    d = L.d
    inv = L.forms.inverse
    minv = 1 / L.multiplier
    bounds = []
    for j in range(d):
        b = sum((abs(minv * inv[j][i].as_creal()) * box.eta[i] for i in range(d)), CReal.rational(0))
        bounds.append(int(math.floor(float(b.iv().b))))
    # float prefilter with a wide margin; only points near a face are certified
    B = L.basis_float
    eta = box.floats()
    axes = [np.arange(-b, b + 1, dtype=np.int64) for b in bounds]
    found = set()
    prec = default_precision()
    tail = np.stack([m.ravel() for m in np.meshgrid(*axes[-2:], indexing="ij")], axis=1) \
        if d >= 2 else axes[-1][:, None]
    k = tail.shape[1]
    heads = product(*axes[:-k])
    if first_only:
        heads = sorted(heads, key=lambda h: max((abs(v) for v in h), default=0))
    for head in heads:
        Z = np.empty((tail.shape[0], d), dtype=np.int64)
        Z[:, :-k] = head
        Z[:, -k:] = tail
        ax = np.abs(Z.astype(float) @ B.T)
        near = (ax <= eta * (1 + 1e-6) + 1e-9).all(axis=1)
        for z, a in zip(Z[near], ax[near]):
            z = tuple(int(v) for v in z)
            if exclude_zero and not any(z):
                continue
            if (a < eta * (1 - 1e-6)).all() or _certify_inside(L, z, box.eta, prec) is not False:
                found.add(z)
                if first_only:
                    return found
    return found


# --------------------------------------------------------------------------
# records

@dataclass(frozen=True)
class RecordPoint:
    point: LatticePoint
    gamma: float
    running_pi_min: float


@dataclass
class RecordSearch:
    records: list
    complete: bool
    x_max_reached: float
    certificate: Optional[LatticePoint] = None
    scanned: int = 0


_MAX_BOXES = 20_000
_SMALL_GRID = 512


def _dyadic_cover(R: Fraction, P: float, d: int):
    """Boxes R*2^-e (e >= 0, sum e = S) covering {|x| <= R, prod|x_i| < P}."""
    t = d * math.log2(float(R)) - math.log2(P) - d if P > 0 else float("inf")
    S = max(0, math.floor(t - 1e-9)) if math.isfinite(t) else _MAX_BOXES
    # a shallower cover is coarser but still covers; keep the box count bounded
    while S > 0 and math.comb(S + d - 1, d - 1) > _MAX_BOXES:
        S -= 1
    boxes = []
    for cut in combinations(range(S + d - 1), d - 1):
        e, prev = [], -1
        for c in cut:
            e.append(c - prev - 1)
            prev = c
        e.append(S + d - 1 - prev - 1)
        boxes.append(tuple(R / (1 << k) for k in e))
    return boxes


def _region_points(L: Lattice, R: Fraction, P: float, lo_sup: float, *, budget_left: int,
                   threads: int, prec: int):
    """Points with lo_sup < |x| <= R and prod|x_i| < P (superset, float margins)."""
    d = L.d
    seen = {}
    used = 0
    for eta in _dyadic_cover(R, P, d):
        Z, X = scan_box(L, Box(eta), exclude_zero=True, max_points=max(budget_left - used, 1),
                        threads=threads, prec=prec)
        used += Z.shape[0]
        if Z.shape[0] == 0:
            continue
        ax = np.abs(X)
        sup = ax.max(axis=1)
        prod = ax.prod(axis=1)
        sel = (sup > lo_sup * (1 - 1e-9)) & (prod < P * (1 + 1e-9))
        for z, x in zip(Z[sel], X[sel]):
            seen.setdefault(tuple(int(v) for v in z), x)
    return seen, used


def record_points(L: Lattice, budget: EnumerationBudget, *, threads: int = 1) -> RecordSearch:
    """Points whose Pi undercuts every point of smaller sup-norm (with |x| > 1).

    Stops at the first point with an exactly vanishing coordinate, which is
    appended as a record with ``gamma = inf`` and returned as certificate.
    """
    if not budget.x_max > 1:
        raise ValueError("x_max must exceed 1")
    prec = budget.precision or default_precision()
    d = L.d
    X_max = Fraction(budget.x_max)
    det_root = float(L.det_abs) ** (1.0 / d)
    R = min(X_max, Fraction(max(2.0, 2 * det_root)).limit_denominator(1 << 20))
    records: list = []
    best: Optional[CReal] = None
    best_f = math.inf
    last_sup: Optional[CReal] = None
    used = 0
    lo = Fraction(1)

    def sweep(cands: dict, hi: Fraction):
        nonlocal best, best_f, last_sup
        order = sorted(cands.items(), key=lambda kv: (float(np.abs(kv[1]).max()), kv[0]))
        for z, _ in order:
            p = L.point(z)
            sup = p.sup_creal()
            # undecided ties with lo were handled by the previous sweep (sup <= hi there)
            if compare(sup, lo, prec) in (-1, 0, None) or compare(sup, hi, prec) == 1:
                continue
            if p.exact_zero_coords:
                rec = RecordPoint(p, math.inf, 0.0)
                records.append(rec)
                return p
            pif = p.pi
            if pif > best_f * (1 + 1e-9):
                continue
            pic = p.pi_creal()
            if best is not None and compare(pic, best, prec) != -1:
                continue
            rec = RecordPoint(p, gamma(p, prec), float(pic))
            if last_sup is not None and compare(sup, last_sup, prec) in (0, None):
                records[-1] = rec
            else:
                records.append(rec)
            best, best_f, last_sup = pic, float(pic), sup
        return None

    try:
        Z, Xs = scan_box(L, Box.cube(R, d), exclude_zero=True,
                         max_points=budget.max_points, threads=threads, prec=prec)
        used += Z.shape[0]
        cands = {tuple(int(v) for v in z): x for z, x in zip(Z, Xs)
                 if np.abs(x).max() > 1 - 1e-9}
        cert = sweep(cands, R)
        if cert is not None:
            return RecordSearch(records, True, float(R), cert, used)
        while R < X_max:
            lo, R = R, min(2 * R, X_max)
            if best_f == math.inf:
                P = float("inf")
                Z, Xs = scan_box(L, Box.cube(R, d), exclude_zero=True,
                                 max_points=budget.max_points - used, threads=threads, prec=prec)
                used += Z.shape[0]
                cands = {tuple(int(v) for v in z): x for z, x in zip(Z, Xs)}
            else:
                P = (best_f ** d) * (1 + 1e-6)
                cands, n = _region_points(L, R, P, float(lo), budget_left=budget.max_points - used,
                                          threads=threads, prec=prec)
                used += n
            cert = sweep(cands, R)
            if cert is not None:
                return RecordSearch(records, True, float(R), cert, used)
    except BudgetExceeded as exc:
        return RecordSearch(records, False, float(lo), None, used + exc.scanned)
    return RecordSearch(records, True, float(R), None, used)


@dataclass
class NormMinimum:
    value: float
    witness: Optional[LatticePoint]
    exact_zero: bool
    complete: bool
    product: Optional[CReal] = field(default=None, repr=False)


def norm_minimum_estimate(L: Lattice, x_max: float, *, max_points: int = 20_000_000,
                          threads: int = 1, prec: Optional[int] = None) -> NormMinimum:
    """min prod|x_i| over nonzero lattice points with |x| <= x_max."""
    if x_max < 1:
        raise ValueError("x_max must be at least 1")
    prec = prec or default_precision()
    d = L.d
    X_max = Fraction(x_max)
    det_root = float(L.det_abs) ** (1.0 / d)
    R0 = min(X_max, Fraction(max(1.0, det_root * (1 + 1e-6))).limit_denominator(1 << 20) + 1)
    cands: dict = {}
    try:
        Z, Xs = scan_box(L, Box.cube(R0, d), exclude_zero=True, max_points=max_points,
                         threads=threads, prec=prec)
        used = Z.shape[0]
        cands = {tuple(int(v) for v in z): x for z, x in zip(Z, Xs)}
        for z in sorted(cands, key=lambda z: (float(np.abs(cands[z]).max()), z)):
            if np.abs(cands[z]).min() == 0:
                p = L.point(z)
                if p.exact_zero_coords:
                    return NormMinimum(0.0, p, True, True, CReal.rational(0))
        if cands:
            P0 = min(float(np.abs(x).prod()) for x in cands.values())
        else:
            P0 = float(X_max) ** d
        if R0 < X_max:
            more, _ = _region_points(L, X_max, max(P0, 1e-300) * (1 + 1e-6), 0.0,
                                     budget_left=max_points - used, threads=threads, prec=prec)
            cands.update(more)
        complete = True
    except BudgetExceeded:
        complete = False
    best = None
    best_prod = None
    for z in sorted(cands, key=lambda z: (float(np.abs(cands[z]).prod()), z)):
        p = L.point(z)
        if compare(p.sup_creal(), X_max) == 1:
            continue
        if p.exact_zero_coords:
            return NormMinimum(0.0, p, True, complete, CReal.rational(0))
        pc = p.product_creal()
        c = None if best is None else compare(pc, best_prod, prec)
        # ties (or undecided comparisons) go to the shorter witness
        if best is None or c == -1 or (c in (0, None) and p.sup_norm < best.sup_norm):
            best, best_prod = p, pc
        if float(pc) > 2 * float(best_prod):
            break
    if best is None:
        return NormMinimum(math.inf, None, False, complete, None)
    return NormMinimum(float(best_prod), best, False, complete, best_prod)


# --------------------------------------------------------------------------
# Minkowski points and coordinate planes

def minkowski_point(L: Lattice, box: Box, *, prec: Optional[int] = None,
                    max_points: Optional[int] = None) -> LatticePoint:
    """A nonzero lattice point of the closed box, whose volume must be >= 2^d det."""
    prec = prec or default_precision()
    c = compare(cprod(box.eta), L.det_abs, prec)
    if c == -1:
        raise PreconditionError(
            f"box volume {float(box.volume()):.6g} < 2^d det = {2 ** L.d * float(L.det_abs):.6g}")
    Z, X = scan_box(L, box, exclude_zero=True, max_points=max_points, prec=prec)
    if Z.shape[0] == 0:
        raise RuntimeError("no nonzero point found in a box satisfying Minkowski's hypothesis")
    return L.point(tuple(int(v) for v in Z[0]))


def coordinate_plane_point(L: Lattice) -> Optional[tuple]:
    """(point, i) with coordinate i exactly zero, or None if no such nonzero point exists."""
    for i, row in enumerate(L.forms.rows):
        ker = rational_kernel(list(row))
        if ker.dim:
            return L.point(ker.basis[0]), i
    return None


# --------------------------------------------------------------------------
# CSV

def _fmt(v: CReal, prec: int) -> str:
    digits = min(40, max(6, int(prec * 0.30103)))
    x = v.iv(prec)
    lo, hi = (mpmath.mp.make_mpf(r) for r in x._mpi_)
    with mpmath.workprec(prec):
        return mpmath.nstr((lo + hi) / 2, digits)


def records_csv(records: Sequence[RecordPoint], d: int, prec: Optional[int] = None) -> str:
    prec = prec or default_precision()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sup_norm", "pi", "gamma"] + [f"z{i + 1}" for i in range(d)]
               + [f"x{i + 1}" for i in range(d)] + ["zero_coord"])
    for r in records:
        p = r.point
        g = "inf" if math.isinf(r.gamma) else _fmt(-p.pi_creal().log() / p.sup_creal().log(), prec)
        w.writerow([_fmt(p.sup_creal(), prec), _fmt(p.pi_creal(), prec), g]
                   + list(p.z) + [_fmt(c, prec) for c in p.coords()]
                   + [";".join(str(i) for i in sorted(p.exact_zero_coords))])
    return buf.getvalue()

"""Pseudo-compound boxes, the box transference check and the witness chains.

``check_theorem2`` tests the implication

    P* contains a nonzero point of the dual lattice
        ==>  c P contains a nonzero point of the lattice,   c = d^(1/(2(d-2))),

for a lattice of determinant one.  Membership on the premise side only counts
points certified to be inside P*, while the conclusion side counts every point
that might be inside c P; a reported counterexample is therefore genuine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .enumeration import (
    BudgetExceeded,
    Box,
    minkowski_point,
    naive_box_scan,
    scan_box,
)
from .exact import FieldElement, rational_kernel
from .exponents import transference_lower_bound
from .lattice import (
    FormsMatrix,
    Lattice,
    LatticePoint,
    dual,
    gamma,
    gamma_creal,
    lattice_from_forms,
)
from .reals import CReal, cmax, compare, cprod, default_precision


class WitnessError(ValueError):
    """The input point does not meet the requirements of the witness construction."""


@dataclass(frozen=True)
class Parallelepiped:
    """Closed box ``|x_i| <= eta_i``; ``eta`` entries are Fractions or certified reals."""

    eta: tuple

    def __init__(self, eta):
        vals = []
        for e in eta:
            if isinstance(e, CReal):
                if compare(e, 0) != 1:
                    raise ValueError("half-sides must be positive")
                vals.append(e)
            else:
                q = Fraction(e)
                if q <= 0:
                    raise ValueError("half-sides must be positive")
                vals.append(q)
        object.__setattr__(self, "eta", tuple(vals))

    @property
    def d(self) -> int:
        return len(self.eta)

    def is_exact(self) -> bool:
        return all(isinstance(e, Fraction) for e in self.eta)

    def volume_factor(self):
        """prod eta_j (the box volume divided by 2^d)."""
        if self.is_exact():
            return math.prod(self.eta, start=Fraction(1))
        return cprod(CReal.coerce(e) for e in self.eta)

    def scaled(self, c) -> "Parallelepiped":
        if self.is_exact() and isinstance(c, (int, Fraction)):
            return Parallelepiped([e * c for e in self.eta])
        return Parallelepiped([CReal.coerce(e) * c for e in self.eta])

    def box(self) -> Box:
        return Box(self.eta)


def pseudo_compound(P: Parallelepiped) -> Parallelepiped:
    """Box with half-sides (prod_j eta_j) / eta_i."""
    V = P.volume_factor()
    if P.is_exact():
        return Parallelepiped([V / e for e in P.eta])
    return Parallelepiped([V / CReal.coerce(e) for e in P.eta])


def transference_constant(d: int) -> CReal:
    if d < 3:
        raise ValueError("d must be at least 3")
    return CReal.rational(d) ** Fraction(1, 2 * (d - 2))


# --------------------------------------------------------------------------
# box transference check

PREMISE_FALSE = "premise-false"
IMPLICATION_HOLDS = "implication-holds"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
INCONCLUSIVE = "inconclusive"


@dataclass
class Theorem2Verdict:
    verdict: str
    premise: Optional[bool]
    conclusion: Optional[bool]
    dual_witness: Optional[tuple] = None
    primal_witness: Optional[tuple] = None
    data: dict = field(default_factory=dict)


def _nonzero_in(L: Lattice, P: Parallelepiped, max_points, prec) -> Optional[bool]:
    """True: a nonzero point certainly inside; False: none can be inside; None: undecided."""
    box = P.box()
    Zi, _ = scan_box(L, box, mode="inner", max_points=max_points, prec=prec)
    if Zi.shape[0]:
        return True, tuple(int(v) for v in Zi[0])
    Zo, _ = scan_box(L, box, mode="outer", max_points=max_points, prec=prec)
    if Zo.shape[0]:
        return None, tuple(int(v) for v in Zo[0])
    return False, None


def check_theorem2(L: Lattice, P: Parallelepiped, *, max_points: int = 2_000_000,
                   prec: Optional[int] = None) -> Theorem2Verdict:
    """Decide premise and conclusion of the box transference statement for L."""
    prec = prec or default_precision()
    d = L.d
    if d < 3:
        raise ValueError("d must be at least 3")
    if P.d != d:
        raise ValueError("box dimension differs from lattice dimension")
    if compare(L.det_abs, 1, prec) not in (0, None):
        raise ValueError("lattice determinant must be 1 (use normalize_det)")
    c = transference_constant(d)
    Pstar = pseudo_compound(P)
    data = {"z_basis": L.to_json(), "eta": [str(e) if isinstance(e, Fraction) else float(e)
                                             for e in P.eta]}
    try:
        premise, dz = _nonzero_in(dual(L), Pstar, max_points, prec)
        if premise is False:
            return Theorem2Verdict(PREMISE_FALSE, False, None, data=data)
        conclusion, pz = _nonzero_in(L, P.scaled(c), max_points, prec)
    except BudgetExceeded:
        return Theorem2Verdict(INCONCLUSIVE, None, None, data=data)
    if conclusion is True:
        return Theorem2Verdict(IMPLICATION_HOLDS, premise, True, dz, pz, data)
    if premise is True and conclusion is False:
        return Theorem2Verdict(COUNTEREXAMPLE, True, False, dz, None, data)
    return Theorem2Verdict(INCONCLUSIVE, premise, conclusion, dz, pz, data)


def brute_force_theorem2(L: Lattice, P: Parallelepiped) -> tuple:
    """(premise, conclusion) from full integer-box scans; for cross-checking."""
    c = transference_constant(L.d)
    prem = bool(naive_box_scan(dual(L), pseudo_compound(P).box(), first_only=True))
    concl = bool(naive_box_scan(L, P.scaled(c).box(), first_only=True))
    return prem, concl


# --------------------------------------------------------------------------
# seeded trials

def random_unimodular_lattice(d: int, rng: np.random.Generator) -> Lattice:
    """Exact determinant-one lattice: diagonal of rationals with product 1 times rational shears."""
    diag = []
    for _ in range(d - 1):
        num = int(rng.integers(1, 8))
        den = int(rng.integers(1, 8))
        diag.append(Fraction(num, den))
    diag.append(1 / math.prod(diag, start=Fraction(1)))
    M = [[Fraction(int(i == j)) * diag[i] for j in range(d)] for i in range(d)]
    for _ in range(2 * d):
        i, j = (int(v) for v in rng.choice(d, size=2, replace=False))
        t = Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 5)))
        # row_i += t * row_j keeps the determinant
        M[i] = [a + t * b for a, b in zip(M[i], M[j])]
    perm = [int(v) for v in rng.permutation(d)]
    M = [M[p] for p in perm]
    sign = _perm_sign(perm)
    if sign < 0:
        M[0] = [-a for a in M[0]]
    return lattice_from_forms(FormsMatrix.from_rows(M))


def _perm_sign(perm) -> int:
    sign, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def random_box(d: int, rng: np.random.Generator) -> Parallelepiped:
    """Rational half-sides with product in [1/2, 2] (exactly) and log-normal shape."""
    logs = rng.normal(0.0, 1.0, size=d)
    logs -= logs.mean()
    target = Fraction(float(math.exp(rng.uniform(math.log(0.5), math.log(2.0))))).limit_denominator(1000)
    target = min(max(target, Fraction(1, 2)), Fraction(2))
    eta = [Fraction(float(math.exp(v))).limit_denominator(1000) for v in logs[:-1]]
    eta.append(target / math.prod(eta, start=Fraction(1)))
    return Parallelepiped(eta)


@dataclass
class TrialReport:
    d: int
    trials: int
    seed: int
    premise_true: int = 0
    implication_holds: int = 0
    counterexamples: int = 0
    inconclusive: int = 0
    counterexample_data: list = field(default_factory=list)
    verdicts: list = field(default_factory=list, repr=False)

    def to_json(self):
        out = {"d": self.d, "trials": self.trials, "seed": self.seed,
               "premise_true": self.premise_true, "implication_holds": self.implication_holds,
               "counterexamples": self.counterexamples, "inconclusive": self.inconclusive}
        if self.counterexample_data:
            out["counterexample_data"] = self.counterexample_data
        return out


def trial_inputs(d: int, trials: int, seed: int) -> list:
    """The (lattice, box) pairs used by :func:`random_theorem2_trials`, one stream per trial."""
    children = np.random.SeedSequence(seed).spawn(trials)
    out = []
    for ss in children:
        rng = np.random.default_rng(ss)
        out.append((random_unimodular_lattice(d, rng), random_box(d, rng)))
    return out


def random_theorem2_trials(d: int, trials: int, seed: int, *, threads: int = 1,
                           prec: Optional[int] = None) -> TrialReport:
    if d not in (3, 4, 5):
        raise ValueError("d must be 3, 4 or 5")
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    rep = TrialReport(d, trials, seed)
    inputs = trial_inputs(d, trials, seed)

    def run(pair):
        return check_theorem2(pair[0], pair[1], prec=prec)

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as ex:
            verdicts = list(ex.map(run, inputs))
    else:
        verdicts = [run(p) for p in inputs]
    for v in verdicts:
        rep.verdicts.append(v.verdict)
        if v.premise is True:
            rep.premise_true += 1
        if v.verdict == IMPLICATION_HOLDS:
            rep.implication_holds += 1
        elif v.verdict == COUNTEREXAMPLE:
            rep.counterexamples += 1
            rep.counterexample_data.append(v.data)
        elif v.verdict == INCONCLUSIVE:
            rep.inconclusive += 1
    return rep


# --------------------------------------------------------------------------
# witness chains

@dataclass
class Check:
    name: str
    lhs: float
    rhs: float
    holds: Optional[bool]
    applicable: bool = True

    def to_json(self):
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "holds": self.holds, "applicable": self.applicable}


@dataclass
class TransferenceWitness:
    u: LatticePoint
    eta: tuple
    v: LatticePoint
    c: CReal
    gamma_u: float
    exponent: float
    checks: list
    compound_ok: bool

    def passed(self) -> bool:
        return self.compound_ok and all(ch.holds for ch in self.checks if ch.applicable)

    def to_json(self):
        return {"u": {"z": list(self.u.z), "x": list(self.u.x)},
                "v": {"z": list(self.v.z), "x": list(self.v.x)},
                "eta": [float(e) for e in self.eta], "c": float(self.c),
                "gamma_u": self.gamma_u, "exponent": self.exponent,
                "pseudo_compound_matches_u": self.compound_ok,
                "checks": [ch.to_json() for ch in self.checks], "passed": self.passed()}


def _check(name, lhs: CReal, rhs: CReal, prec, applicable=True) -> Check:
    c = compare(lhs, rhs, prec)
    holds = None if c is None else c <= 0
    return Check(name, float(lhs), float(rhs), holds, applicable)


def case1_witness(L: Lattice, u: LatticePoint, *, prec: Optional[int] = None,
                  max_points: int = 2_000_000) -> TransferenceWitness:
    """Primal point v in c P(u) for a dual point u with no zero coordinate.

    ``P(u)`` has half-sides ``eta_i = |u_i|^-1 (prod_j |u_j|)^(1/(d-1))``, so
    that its pseudo-compound box is ``|x_i| <= |u_i|``.  The returned checks
    are

    (a) Pi(v) <= c Pi(u)^(1/(d-1))
    (b) |v| <= c |u|^(d-1) Pi(u)^(-d(d-2)/(d-1))
    (c) Pi(v) <= c^(1+e) |v|^(-e),  e = g/((d-1)^2 + d(d-2) g),  g = gamma(u)

    where (c) is only applicable for ``g >= 0`` and ``|u| > 1``.
    """
    prec = prec or default_precision()
    d = L.d
    if u.exact_zero_coords:
        raise WitnessError("u has an exactly vanishing coordinate; use case2_points")
    if compare(L.det_abs, 1, prec) not in (0, None):
        raise ValueError("lattice determinant must be 1 (use normalize_det)")
    c = transference_constant(d)
    au = [abs(x) for x in u.coords()]
    prod_u = cprod(au)
    root = prod_u ** Fraction(1, d - 1)
    eta = tuple(root / a for a in au)
    Pstar = pseudo_compound(Parallelepiped(eta))
    compound_ok = _compound_identity_exact(u) and all(
        _enclosures_meet(e, a, prec) for e, a in zip(Pstar.eta, au))
    box = Box([e * c for e in eta])
    Z, X = scan_box(L, box, mode="outer", max_points=max_points, prec=prec)
    if Z.shape[0] == 0:
        raise RuntimeError("no nonzero primal point in c P; the box transference failed")
    v = L.point(tuple(int(t) for t in Z[0]))
    sup_u = u.sup_creal()
    pi_u = u.pi_creal()
    pi_v = v.pi_creal()
    sup_v = v.sup_creal()
    checks = [
        _check("a: Pi(v) <= c Pi(u)^(1/(d-1))", pi_v, c * pi_u ** Fraction(1, d - 1), prec),
        _check("b: |v| <= c |u|^(d-1) Pi(u)^(-d(d-2)/(d-1))", sup_v,
               c * sup_u ** (d - 1) * pi_u ** Fraction(-d * (d - 2), d - 1), prec),
    ]
    g_applicable = compare(sup_u, 1, prec) == 1
    g = math.nan
    e = math.nan
    if g_applicable:
        gc = gamma_creal(u)
        g = float(gc)
        g_applicable = compare(gc, 0, prec) in (1, 0)
        if g_applicable:
            D = (d - 1) ** 2 + d * (d - 2) * gc
            ec = gc / D
            e = float(ec)
            rhs = _cpow(c, 1 + ec) * _cpow(sup_v, -ec)
            checks.append(_check("c: Pi(v) <= c^(1+e) |v|^(-e)", pi_v, rhs, prec))
    if not g_applicable:
        checks.append(Check("c: Pi(v) <= c^(1+e) |v|^(-e)", float(pi_v), math.nan, None, False))
    return TransferenceWitness(u, eta, v, c, g, e, checks, compound_ok)


def _compound_identity_exact(u: LatticePoint) -> bool:
    """Exact check that the box of half-sides eta_i = r / |u_i|, r^(d-1) = prod|u_j|, has
    pseudo-compound half-sides |u_i|.

    Write |u_i| = f e_i with e_i exact field elements and f the (possibly
    irrational) homothety factor.  Each quantity is kept as a monomial
    (field part, power of f, power of r), so the identity is decided in
    field arithmetic after substituting r^(d-1) = f^d prod e_j.
    """
    D = u.lattice
    d = u.d
    e = [abs(D.forms.evaluate(i, u.z) * D.scale) for i in range(d)]
    prod_e = e[0]
    for v in e[1:]:
        prod_e = prod_e * v
    eta = [(v.inverse(), -1, 1) for v in e]
    pf, pfe, pre = prod_e.inverse(), -d, d          # prod_i eta_i
    for i in range(d):
        fld, fe, re = pf / eta[i][0], pfe - eta[i][1], pre - eta[i][2]
        if re != d - 1:
            return False
        fld, fe, re = fld * prod_e, fe + d, 0       # r^(d-1) -> f^d prod e_j
        if not (fld == e[i] and fe == 1):
            return False
    return True


def _enclosures_meet(a: CReal, b: CReal, prec: int) -> bool:
    """The certified enclosures of a and b overlap at 1x and 4x precision."""
    if a.exact is not None and b.exact is not None:
        return a.exact == b.exact
    for p in (prec, 4 * prec):
        x, y = a.iv(p), b.iv(p)
        if x.b < y.a or y.b < x.a:
            return False
    return True


def _cpow(base: CReal, expo: CReal) -> CReal:
    """base ** expo for positive base and a certified real exponent."""
    from .reals import ivctx

    return CReal(lambda p: ivctx(p).exp(expo.iv(p) * ivctx(p).log(base.iv(p))))


def exponent_consistent(w: TransferenceWitness) -> bool:
    """The exponent used in check (c) equals the transference bound at gamma(u)."""
    if math.isnan(w.exponent):
        return True
    return math.isclose(w.exponent, float(transference_lower_bound(w.gamma_u, w.u.d)),
                        rel_tol=1e-12, abs_tol=1e-15)


# --------------------------------------------------------------------------
# Case II: points in the hyperplane orthogonal to a dual point with a zero coordinate

def _kernel_basis(w: Sequence[int]) -> list:
    """Integer basis (as columns) of {z in Z^d : w . z = 0} for nonzero integer w."""
    d = len(w)
    # unimodular U with w U = (g, 0, ..., 0); the last d-1 columns span the kernel
    U = [[int(i == j) for j in range(d)] for i in range(d)]
    row = list(w)
    for j in range(1, d):
        a, b = row[0], row[j]
        if b == 0:
            continue
        g, x, y = _xgcd(a, b)
        # columns (c0, cj) -> (x c0 + y cj, -(b/g) c0 + (a/g) cj)
        for r in range(d):
            c0, cj = U[r][0], U[r][j]
            U[r][0], U[r][j] = x * c0 + y * cj, -(b // g) * c0 + (a // g) * cj
        row[0], row[j] = g, 0
    return [[U[r][j] for r in range(d)] for j in range(1, d)]


def _xgcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass
class Case2Point:
    v: LatticePoint
    T: Fraction
    bound: float
    pi: float
    holds: Optional[bool]
    gamma: float
    gamma_floor: float
    gamma_ok: Optional[bool]

    def to_json(self):
        return {"z": list(self.v.z), "x": list(self.v.x), "T": str(self.T), "pi": self.pi,
                "bound": self.bound, "holds": self.holds, "gamma": self.gamma,
                "gamma_floor": self.gamma_floor, "gamma_ok": self.gamma_ok}


@dataclass
class Case2Result:
    u: LatticePoint
    coord: int
    m: int
    kappa: float
    det_projected: float
    c2: CReal
    points: list

    def passed(self) -> bool:
        return bool(self.points) and all(p.holds and p.gamma_ok for p in self.points)

    def to_json(self):
        return {"u": {"z": list(self.u.z), "x": list(self.u.x)}, "coord": self.coord,
                "projected_away": self.m, "kappa": self.kappa,
                "det_projected": self.det_projected, "c2": float(self.c2),
                "points": [p.to_json() for p in self.points], "passed": self.passed()}


def case2_points(L: Lattice, u: LatticePoint, count: int = 5, *, coord: Optional[int] = None,
                 T0=None, growth: int = 4, max_steps: int = 60,
                 prec: Optional[int] = None) -> Case2Result:
    """Points of the lattice in the hyperplane orthogonal to u with growing coordinate ``coord``.

    ``u`` must be a point of the dual lattice (its ``z`` is taken in the dual
    basis) whose coordinate ``coord`` (default: the last) vanishes exactly.
    With ``Gamma`` the points of L orthogonal to u and ``pi`` the projection
    dropping the coordinate ``m`` where ``|u_m|`` is largest among the others,
    the box ``|x_i| <= (det(pi Gamma)/T)^(1/(d-2))`` (i != m, coord),
    ``|x_coord| <= T`` satisfies Minkowski's hypothesis in ``pi Gamma``.  Every
    point found there obeys ``max_{i != coord}|v_i| <= c2 |v_coord|^(-1/(d-2))``
    with ``c2 = kappa det(pi Gamma)^(1/(d-2))``, ``kappa = max(1, sum|u_i/u_m|)``,
    and is returned with the certified bound
    ``Pi(v) <= c2^((d-1)/d) |v|^(-1/(d(d-2)))``.
    """
    prec = prec or default_precision()
    d = L.d
    if d < 3:
        raise ValueError("d must be at least 3")
    coord = d - 1 if coord is None else coord
    if coord not in u.exact_zero_coords:
        raise WitnessError(f"coordinate {coord} of u is not exactly zero")
    w = list(u.z)
    if not any(w):
        raise WitnessError("u must be nonzero")
    K = _kernel_basis(w)          # d-1 integer vectors orthogonal to w
    others = [i for i in range(d) if i != coord]
    au = {i: u.coord(i) for i in others}
    m = others[0]
    for i in others[1:]:
        if compare(abs(au[i]), abs(au[m]), prec) == 1:
            m = i
    if u.lattice.is_zero_coordinate(u.z, m):
        raise WitnessError("u vanishes outside the chosen coordinate as well")
    kappa_c = sum((abs(au[i]) / abs(au[m]) for i in others if i != m), CReal.rational(0))
    kappa_c = cmax(1, kappa_c)
    kept = [i for i in range(d) if i != m]            # coordinates of pi Gamma
    A = L.forms.rows
    rows = []
    for i in kept:
        rows.append([sum((A[i][j] * K[c][j] for j in range(d) if K[c][j]), L.field.zero())
                     for c in range(d - 1)])
    proj_forms = FormsMatrix.from_rows(rows, L.field)
    if proj_forms.det.is_zero():
        raise RuntimeError("projected sublattice is degenerate")
    Lp = Lattice(proj_forms, L.scale, L.homothety)
    det_p = Lp.det_abs
    c2 = kappa_c * det_p ** Fraction(1, d - 2)
    pos = kept.index(coord)
    T = Fraction(T0) if T0 is not None else Fraction(max(2, math.ceil(float(det_p))))
    out = []
    last = None
    bound_exp = Fraction(-1, d * (d - 2))
    coef = c2 ** Fraction(d - 1, d)
    for _ in range(max_steps):
        if len(out) >= count:
            break
        delta = (det_p / T) ** Fraction(1, d - 2)
        eta = [delta] * (d - 1)
        eta[pos] = CReal.rational(T)
        box = Box(eta)
        T *= growth
        try:
            Z, X = scan_box(Lp, box, mode="outer", prec=prec, max_points=2_000_000)
        except BudgetExceeded:
            break
        if Z.shape[0] == 0:
            raise RuntimeError("Minkowski box in the hyperplane holds no nonzero point")
        j = int(np.argmax(np.abs(X[:, pos])))
        zp = [int(t) for t in Z[j]]
        z = tuple(sum(K[c][r] * zp[c] for c in range(d - 1)) for r in range(d))
        v = L.point(z)
        vc = v.coord(coord)
        sup_rest = cmax(*(abs(v.coord(i)) for i in others))
        if compare(abs(vc), sup_rest, prec) == -1:
            continue
        if last is not None and compare(abs(vc), last, prec) != 1:
            continue
        last = abs(vc)
        sup_v = v.sup_creal()
        rhs = coef * sup_v ** bound_exp
        pi_v = v.pi_creal()
        c = compare(pi_v, rhs, prec)
        holds = None if c is None else c <= 0
        floor_c = Fraction(1, d * (d - 2)) - coef.log() / sup_v.log()
        if v.exact_zero_coords:
            g, gok = math.inf, True
        else:
            gc = gamma_creal(v)
            g = float(gc)
            cg = compare(gc, floor_c, prec)
            gok = None if cg is None else cg >= 0
        out.append(Case2Point(v, T / growth, float(rhs), float(pi_v), holds, g,
                              float(floor_c), gok))
    return Case2Result(u, coord, m, float(kappa_c), float(det_p), c2, out)


def dual_point_with_zero(L: Lattice, coord: Optional[int] = None) -> Optional[LatticePoint]:
    """Nonzero point of the dual lattice whose coordinate ``coord`` (default last) vanishes exactly."""
    D = dual(L)
    coord = L.d - 1 if coord is None else coord
    ker = rational_kernel(list(D.forms.rows[coord]))
    if not ker.dim:
        return None
    return D.point(ker.basis[0])


def case1_dual_points(L: Lattice, count: int, rng: np.random.Generator, *,
                      radius: int = 3, prec: Optional[int] = None) -> list:
    """Up to ``count`` distinct dual points u with no zero coordinate, |u| > 1 and Pi(u) <= 1.

    These are the points where all three Case I inequalities apply
    (gamma(u) >= 0).  Candidates come from the cube of side ``radius`` in the
    dual lattice and are drawn with ``rng``.
    """
    prec = prec or default_precision()
    D = dual(L)
    Z, X = scan_box(D, Box.cube(radius, D.d), prec=prec)
    ax = np.abs(X)
    ok = (ax.min(axis=1) > 0) & (ax.max(axis=1) > 1) & (ax.prod(axis=1) <= 1)
    idx = np.nonzero(ok)[0]
    rng.shuffle(idx)
    out = []
    for i in idx:
        u = D.point(Z[i])
        if u.exact_zero_coords:
            continue
        if compare(u.sup_creal(), 1, prec) == 1 and compare(u.product_creal(), 1, prec) in (-1, 0):
            out.append(u)
            if len(out) == count:
                break
    return out


def case1_trials(d: int, count: int, seed: int) -> list:
    """Seeded (det-1 lattice, dual point) pairs for Case I, one stream per pair."""
    out = []
    for ss in np.random.SeedSequence(seed).spawn(count):
        rng = np.random.default_rng(ss)
        while True:
            L = random_unimodular_lattice(d, rng)
            us = case1_dual_points(L, 1, rng)
            if us:
                out.append((L, us[0]))
                break
    return out

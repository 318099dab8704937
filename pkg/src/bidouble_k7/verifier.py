"""Run every check of the construction and collect a pass/fail report.

Each claim is a small function of a shared :class:`Context` returning
``(ok, witness)``.  Exceptions become failures, so a broken building block
shows up as named failing claims rather than missing ones.
"""
from __future__ import annotations

import dataclasses
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Sequence

from . import linalg
from .construction import (
    P0,
    branch_forms,
    branch_node_point,
    check_conditions_A_B,
    check_conditions_I_II,
    choose_fiber,
    conic_form,
    fiber_parameter,
    free_point,
    gamma_e_transversality,
    w_classes,
    w_configuration,
)
from .cover import (
    BRANCH,
    TRANSVERSE,
    CoverInvariants,
    PullbackInvariants,
    intermediate_cover,
    pullback_curve_invariants,
    pullback_intersection,
    standard_cover_data,
    surface_invariants,
    validate_cover_data,
)
from .curves import (
    build_standard_catalog,
    certify_minus2_set,
    certify_negative_curves,
    degree_bound,
    picard_number_from_fibers,
    singular_fiber_decompositions,
)
from .exclusions import CurveData, exclusion_branches
from .lattice import (
    DivisorClass,
    adjunction_genus,
    format_rational,
    intersect,
    normalize_point,
)
from .nodal_cubic import (
    disjoint,
    four_line_catalog,
    four_line_configuration,
    four_line_l2,
    minus_curves,
    normalize_branch_data,
    pullback_branch_data,
    quintic_classes,
    quintic_configuration,
    quintic_splits_off_conic,
)
from .plane import InvalidScheme, PlaneForm, class_basis, class_dim
from .riemann_roch import h0, replay_reduction

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def jsonable(x: Any) -> Any:
    """Exact, deterministic JSON view of witness data."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, DivisorClass):
        return x.spec()
    if isinstance(x, PlaneForm):
        return str(x)
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    if dataclasses.is_dataclass(x):
        return jsonable(dataclasses.asdict(x))
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


@dataclass
class ClaimResult:
    claim_id: str
    topic: str
    status: str
    witness: Any = None
    message: str = ""

    def to_dict(self) -> dict:
        d = {"claim_id": self.claim_id, "topic": self.topic, "status": self.status,
             "witness": jsonable(self.witness)}
        if self.message:
            d["message"] = self.message
        return d


@dataclass
class VerificationReport:
    parameters: dict
    claims: list[ClaimResult]

    @property
    def counts(self) -> dict[str, int]:
        return {s: sum(1 for c in self.claims if c.status == s) for s in (PASS, FAIL, SKIPPED)}

    @property
    def passed(self) -> bool:
        return bool(self.claims) and all(c.status == PASS for c in self.claims)

    @property
    def overall(self) -> str:
        if self.passed:
            return PASS
        if any(c.status == SKIPPED for c in self.claims) and all(
            c.status != FAIL or c.claim_id.startswith("cond.") for c in self.claims
        ):
            return SKIPPED
        return FAIL

    def claim(self, claim_id: str) -> ClaimResult:
        return next(c for c in self.claims if c.claim_id == claim_id)

    def to_dict(self) -> dict:
        return {
            "parameters": self.parameters,
            "claims": [c.to_dict() for c in self.claims],
            "summary": dict(self.counts, total=len(self.claims), overall=self.overall),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


# -- shared state ------------------------------------------------------------

class Context:
    """Lazily built objects shared by the claims for one parameter choice."""

    def __init__(self, p: Sequence[Fraction], b: Sequence[Fraction] | None):
        self.p = normalize_point(p)
        self._b = b

    @cached_property
    def config(self):
        return w_configuration(self.p)

    @cached_property
    def named(self) -> dict[str, DivisorClass]:
        return w_classes(self.config)

    @cached_property
    def forms(self) -> tuple[PlaneForm, PlaneForm]:
        return branch_forms(self.config)

    @cached_property
    def b(self) -> tuple[Fraction, Fraction]:
        if self._b is not None:
            return tuple(self._b)  # type: ignore[return-value]
        return choose_fiber(self.p, self.forms)

    @cached_property
    def surface_catalog(self):
        """Catalog without the fibre conditions, for checks about the surface alone."""
        return build_standard_catalog(self.config, self.b, check_fiber=False)

    @cached_property
    def catalog(self):
        return build_standard_catalog(self.config, self.b)

    @cached_property
    def minus2(self):
        return certify_minus2_set(self.config)

    @cached_property
    def minus1(self):
        return certify_negative_curves(self.config, -1, -1, known=self.minus2.curves)

    @cached_property
    def certified(self) -> list:
        return list(self.minus2.curves) + list(self.minus1.curves)

    @cached_property
    def cover(self):
        return standard_cover_data(self.catalog, self.config)

    @cached_property
    def invariants(self):
        return surface_invariants(self.cover, self.catalog)

    @cached_property
    def k(self) -> DivisorClass:
        return self.named["K"]

    def cls(self, degree: int, **mults: int) -> DivisorClass:
        m = [0] * len(self.config)
        for lab, a in mults.items():
            m[self.config.index(lab.replace("_", "'"))] = a
        return self.config.make(degree, m)

    def sum_c(self) -> DivisorClass:
        n = self.named
        return n["C1"] + n["C1'"] + n["C2"] + n["C2'"] + n["C3"] + n["C3'"]

    def h0(self, d: DivisorClass) -> int:
        return h0(d, self.surface_catalog, self.config).value


Check = Callable[[Context], tuple[bool, Any]]


@dataclass(frozen=True)
class ClaimSpec:
    claim_id: str
    topic: str
    check: Check
    needs_surface: bool = True


REGISTRY: list[ClaimSpec] = []


def claim(claim_id: str, topic: str, needs_surface: bool = True):
    def register(fn: Check) -> Check:
        if any(c.claim_id == claim_id for c in REGISTRY):
            raise ValueError(f"duplicate claim id {claim_id}")
        REGISTRY.append(ClaimSpec(claim_id, topic, fn, needs_surface))
        return fn
    return register


# -- conditions --------------------------------------------------------------

@claim("cond.I_II", "free point avoids the six special lines and three conics")
def _cond_i_ii(ctx: Context):
    c = check_conditions_I_II(ctx.p)
    return c.ok, {"violations": c.violations}


@claim("cond.A_B", "chosen fibre is smooth and meets B2 + B3 transversally away from their node")
def _cond_a_b(ctx: Context):
    c = check_conditions_A_B(ctx.p, ctx.b, ctx.forms)
    return c.ok, {"b": list(ctx.b), "violations": c.violations}


# -- the eight-point surface ---------------------------------------------------

@claim("surface.conics", "three conics through five of the special points, missing the sixth")
def _conics(ctx: Context):
    out, ok = {}, True
    for i in (1, 2, 3):
        j, k = i % 3 + 1, (i + 1) % 3 + 1
        m = {f"E{i}": 1, f"E{j}": 1, f"E{j}_": 1, f"E{k}": 1, f"E{k}_": 1}
        d = ctx.cls(2, **m)
        basis = class_basis(d, ctx.config)
        expected = conic_form(i).normalized()
        misses = class_dim(d - ctx.config.exceptional(f"E{i}'"), ctx.config) == 0
        good = len(basis) == 1 and basis[0].normalized() == expected and misses
        ok &= good
        out[f"c{i}"] = {"dim": len(basis), "form": basis[0] if basis else None, "misses_p'": misses}
    return ok, out


@claim("surface.degree_one", "K^2 = 1 and no four centres on a line")
def _degree_one(ctx: Context):
    k_sq = intersect(ctx.k, ctx.k)
    checked = 0
    bad = []
    line = ctx.config.line()
    for subset in itertools.combinations(range(len(ctx.config)), 4):
        d = line
        for i in subset:
            d = d + ctx.config.exceptional(i)
        try:
            dim = class_dim(d, ctx.config)
        except InvalidScheme:
            continue  # contains a direction without its base point
        checked += 1
        if dim:
            bad.append([ctx.config.labels[i] for i in subset])
    return k_sq == 1 and not bad, {"K_sq": k_sq, "subsets_checked": checked, "collinear": bad}


@claim("surface.minus2_curves", "exactly six (-2)-curves, every other candidate class rejected")
def _minus2(ctx: Context):
    cert = ctx.minus2
    expected = {ctx.named[n]: n for n in ("C1", "C1'", "C2", "C2'", "C3", "C3'")}
    found = {c.divisor: c.name for c in cert.curves}
    return found == expected, {
        "degree_bound": degree_bound(len(ctx.config), -2, 0),
        "curves": {c.name: c.divisor for c in cert.curves},
        "rejected": len(cert.rejections),
    }


@claim("surface.minus2_disjoint", "the six (-2)-curves are pairwise disjoint")
def _minus2_disjoint(ctx: Context):
    cl = [c.divisor for c in ctx.minus2.curves]
    return len(cl) == 6 and disjoint(cl), {"count": len(cl)}


@claim("surface.cubic_singular_at_p_empty", "no cubic through the seven special points singular at p")
def _cubic_empty(ctx: Context):
    d = -ctx.k - ctx.named["E"]
    dim = class_dim(d, ctx.config)
    alpha, beta = ctx.p[1], ctx.p[2]
    # cubics through p1..p3 tangent to p_j p0 and through p0
    cubics = [
        PlaneForm.from_terms(3, {(2, 1, 0): 1, (2, 0, 1): -1}),
        PlaneForm.from_terms(3, {(0, 2, 1): 1, (1, 2, 0): -1}),
        PlaneForm.from_terms(3, {(0, 1, 2): 1, (1, 0, 2): -1}),
    ]
    rows = [[f(ctx.p) for f in cubics]] + [[f.partial(v)(ctx.p) for f in cubics] for v in (1, 2)]
    printed = [
        [alpha - beta, alpha**2 * (beta - 1), beta**2 * (alpha - 1)],
        [Fraction(1), 2 * alpha * (beta - 1), beta**2],
        [Fraction(-1), alpha**2, 2 * beta * (alpha - 1)],
    ]
    det = linalg.determinant(rows)
    formula = 2 * alpha * beta * (alpha - 1) * (beta - 1) * (alpha - beta)
    ok = dim == 0 and rows == printed and det == formula and det != 0
    return ok, {"dim": dim, "matrix": rows, "determinant": det, "formula": formula}


@claim("surface.conic_class_empty", "|-K - Gamma| is the empty conic system")
def _minus_k_gamma(ctx: Context):
    d = -ctx.k - ctx.named["Gamma"]
    printed = ctx.cls(2, E1=1, E1_=1, E2=1, E2_=1, E3=1, E3_=1)
    dim = class_dim(d, ctx.config)
    return d == printed and dim == 0, {"class": d, "dim": dim}


def _fiber_patterns(ctx: Context, fiber: DivisorClass):
    decomps = singular_fiber_decompositions(fiber, ctx.surface_catalog)
    return decomps, sorted(d.pattern() for d in decomps), picard_number_from_fibers(decomps)


@claim("surface.fibration_F", "the pencil of lines through p0 has four singular fibres")
def _fibration_f(ctx: Context):
    _, patterns, rho = _fiber_patterns(ctx, ctx.named["F"])
    expected = sorted(
        [f"C{j} + C{j}' + 2E{j}'" for j in (1, 2, 3)] + ["E + Gamma"]
    )
    return patterns == expected and rho == len(ctx.config) + 1, {
        "fibres": patterns, "picard_number": rho,
    }


@claim("surface.anti_bicanonical", "h0(-2K) = 4 and -2K is trivial exactly on the six (-2)-curves")
def _anti_bican(ctx: Context):
    d = -2 * ctx.k
    value = ctx.h0(d)
    zero = sorted(c.name for c in ctx.certified if intersect(d, c.divisor) == 0)
    negative = [c.name for c in ctx.certified if intersect(d, c.divisor) < 0]
    expected = sorted(["C1", "C1'", "C2", "C2'", "C3", "C3'"])
    return value == 4 and zero == expected and not negative, {
        "h0": value, "contracted": zero, "curves_checked": len(ctx.certified),
    }


def _branch_curve(ctx: Context, name: str, removed: str):
    d = ctx.named[name]
    printed = -2 * ctx.k - ctx.named[removed]
    dim = class_dim(d, ctx.config)
    below = ctx.h0(-ctx.k - ctx.named[removed])
    certified = any(c.divisor == d for c in ctx.minus1.curves)
    form = ctx.surface_catalog[name]
    ok = (
        d == printed and dim == 1 and below == 0 and certified
        and intersect(d, d) == -1 and intersect(ctx.k, d) == -1
        and form.check_certificate(ctx.config)
    )
    return ok, {"class": d, "dim": dim, f"h0(-K-{removed})": below, "form": form.form,
                "certified_minus1": certified}


@claim("surface.B2", "|-2K - Gamma| is a single (-1)-curve")
def _b2(ctx: Context):
    return _branch_curve(ctx, "B2", "Gamma")


@claim("surface.B3", "|-2K - E| is a single (-1)-curve")
def _b3(ctx: Context):
    return _branch_curve(ctx, "B3", "E")


@claim("surface.minus1_curves", "the named (-1)-curves are certified irreducible")
def _minus1(ctx: Context):
    have = {c.divisor for c in ctx.minus1.curves}
    names = ["Gamma", "E", "B2", "B3", "Theta1", "Theta2", "Theta3"]
    missing = [n for n in names if ctx.named[n] not in have]
    return not missing, {"certified": len(ctx.minus1.curves), "missing": missing}


@claim("surface.intersection_table", "B2.Gamma, B2.E, B3.Gamma, B3.E, B2.B3 = 3, 1, 1, 3, 1")
def _table(ctx: Context):
    n = ctx.named
    pairs = [("B2", "Gamma"), ("B2", "E"), ("B3", "Gamma"), ("B3", "E"), ("B2", "B3"), ("Gamma", "E")]
    values = [intersect(n[a], n[b]) for a, b in pairs]
    off = [
        (a, c) for a in ("Gamma", "E", "B2", "B3")
        for c in ("C1", "C1'", "C2", "C2'", "C3", "C3'") if intersect(n[a], n[c])
    ]
    return values == [3, 1, 1, 3, 1, 1] and not off, {
        "values": {f"{a}.{b}": v for (a, b), v in zip(pairs, values)}, "meets_minus2": off,
    }


@claim("surface.fibration_M", "|B2 + B3| is a genus-0 pencil with four singular fibres")
def _fibration_m(ctx: Context):
    m = ctx.named["M"]
    _, patterns, rho = _fiber_patterns(ctx, m)
    expected = sorted(["B2 + B3"] + [f"C{j} + C{j}' + 2Theta{j}" for j in (1, 2, 3)])
    genus = adjunction_genus(m)
    return patterns == expected and rho == len(ctx.config) + 1 and genus == 0 and intersect(m, m) == 0, {
        "fibres": patterns, "picard_number": rho, "genus": genus,
    }


def _ramification(curve: DivisorClass, fiber: DivisorClass, doubles: list[DivisorClass]):
    """Degree of the curve over the pencil, ramification forced by the double
    components, and the total allowed by Riemann-Hurwitz."""
    degree = intersect(curve, fiber)
    forced = 0
    for d in doubles:
        if 2 * intersect(curve, d) != degree:
            raise ValueError("curve meets a reduced component of a double fibre")
        # at most C.D points over the fibre, so at least degree - C.D ramification
        forced += degree - intersect(curve, d)
    available = 2 * adjunction_genus(curve) - 2 + 2 * degree
    return degree, forced, available


@claim("surface.ramification", "Riemann-Hurwitz leaves no room for tangency with the other fibration")
def _ramification_claim(ctx: Context):
    n = ctx.named
    out, ok = {}, True
    thetas = [n[f"Theta{j}"] for j in (1, 2, 3)]
    e_primes = [n[f"E{j}'"] for j in (1, 2, 3)]
    for name, fiber, doubles in (
        ("Gamma", n["M"], thetas), ("E", n["M"], thetas),
        ("B2", n["F"], e_primes), ("B3", n["F"], e_primes),
    ):
        degree, forced, available = _ramification(n[name], fiber, doubles)
        good = degree == 4 and forced == 6 and available == forced
        ok &= good
        out[name] = {"degree": degree, "forced": forced, "available": available}
    return ok, out


@claim("surface.transversality", "B2 + B3 meets Gamma and E transversally (exact polynomial test)")
def _transversality(ctx: Context):
    on_gamma, on_e = gamma_e_transversality(ctx.p, ctx.forms)
    return on_gamma.ok and on_e.ok, {"gamma": on_gamma.detail, "E": on_e.detail}


@claim("surface.branch_node", "B2 and B3 meet in one point off Gamma and E")
def _branch_node(ctx: Context):
    q = branch_node_point(ctx.p, ctx.forms)
    b2, b3 = ctx.forms
    gamma = ctx.surface_catalog["Gamma"].form
    ok = b2(q) == 0 and b3(q) == 0 and gamma(q) != 0 and q != ctx.p
    return ok, {"point": list(q)}


# -- the cover -------------------------------------------------------------------

@claim("cover.data", "branch data satisfy the class identities and meet only in nodes")
def _cover_data(ctx: Context):
    on_gamma, on_e = gamma_e_transversality(ctx.p, ctx.forms)
    fiber = check_conditions_A_B(ctx.p, ctx.b, ctx.forms)
    diag = validate_cover_data(
        ctx.cover, {"gamma": on_gamma.ok, "E": on_e.ok, "fibre": fiber.ok}
    )
    products = [diag.branch_products[(0, 1)], diag.branch_products[(0, 2)], diag.branch_products[(1, 2)]]
    return products == [7, 5, 1], diag


@claim("cover.printed_classes", "branch divisor classes in closed form")
def _printed(ctx: Context):
    n, k, cd = ctx.named, ctx.k, ctx.cover
    expected = [
        ctx.cls(4, E0=4, E1_=2, E2_=2, E=1),
        -2 * k + ctx.cls(0, E3_=2, E=-1),
        -2 * k - n["E"],
    ]
    got = [cd.delta_class(i) for i in range(3)]
    return got == expected, {"delta": got}


@claim("cover.bicanonical_class", "2K + Delta = -2K + Gamma + sum of (-2)-curves")
def _bican(ctx: Context):
    d = 2 * ctx.k + ctx.cover.total_delta()
    printed = -2 * ctx.k + ctx.named["Gamma"] + ctx.sum_c()
    return d == printed, {"class": d}


@claim("cover.KV_sq", "K^2 of the smooth cover is -5")
def _kv(ctx: Context):
    inv = ctx.invariants
    return inv.KV_sq == -5, {"KV_sq": inv.KV_sq}


@claim("cover.KS_sq", "K^2 = 7 after contracting twelve (-1)-curves, two ways")
def _ks(ctx: Context):
    inv = ctx.invariants
    ok = inv.KS_sq == 7 and inv.KS_sq_second_route == 7 and inv.contracted == 12
    return ok, {"KS_sq": inv.KS_sq, "second_route": inv.KS_sq_second_route, "contracted": inv.contracted}


@claim("cover.chi", "holomorphic Euler characteristic 1")
def _chi(ctx: Context):
    return ctx.invariants.chi == 1, {"chi": ctx.invariants.chi}


@claim("cover.pg", "p_g = 0")
def _pg(ctx: Context):
    return ctx.invariants.pg == 0, {"pg": ctx.invariants.pg}


@claim("cover.q", "q = 0 and p_g - q = chi - 1")
def _q(ctx: Context):
    inv = ctx.invariants
    return inv.q == 0 and inv.pg - inv.q == inv.chi - 1, {"q": inv.q}


PRINTED_REDUCTIONS = {
    1: (["C3", "C3'"], "2;0,1,1,1,1,1,0,1"),
    2: (["C1", "C1'", "E1'", "C2", "C2'", "E2'"], "0;0,0,0,0,0,0,0,1"),
    3: (["C1", "C1'", "E1'", "C2", "C2'", "E2'"], "0;0,0,0,0,0,0,1,0"),
}


def _empty_adjoint(ctx: Context, i: int):
    cd = ctx.cover
    d = ctx.k + cd.ell[i - 1]
    steps, terminal = PRINTED_REDUCTIONS[i]
    trace = replay_reduction(d, steps, ctx.catalog, ctx.config)
    result = h0(d, ctx.catalog, ctx.config)
    rest = h0(trace.terminal, ctx.catalog, ctx.config).value
    direct = class_dim(trace.terminal, ctx.config) if trace.terminal.degree > 0 else None
    ok = trace.terminal.spec() == terminal and rest == 0 and result.value == 0 and direct in (None, 0)
    return ok, {"printed": trace, "algorithm": result.trace, "terminal_h0": rest}


@claim("cover.empty_K_L1", "|K + L1| is empty: C3 + C3' fixed, the rest is an empty conic system")
def _e1(ctx: Context):
    return _empty_adjoint(ctx, 1)


@claim("cover.empty_K_L2", "|K + L2| is empty: two chains fixed, remainder -E")
def _e2(ctx: Context):
    return _empty_adjoint(ctx, 2)


@claim("cover.empty_K_L3", "|K + L3| is empty: two chains fixed, remainder -E3'")
def _e3(ctx: Context):
    return _empty_adjoint(ctx, 3)


@claim("cover.K_ample", "-2K + Gamma is positive on every negative curve except the six (-2)-curves")
def _ample(ctx: Context):
    d = -2 * ctx.k + ctx.named["Gamma"]
    zero = sorted(c.name for c in ctx.certified if intersect(d, c.divisor) == 0)
    negative = [c.name for c in ctx.certified if intersect(d, c.divisor) < 0]
    ok = zero == sorted(["C1", "C1'", "C2", "C2'", "C3", "C3'"]) and not negative and intersect(d, d) == 7
    return ok, {"zero_on": zero, "curves_checked": len(ctx.certified), "self_int": intersect(d, d)}


@claim("cover.eigenspaces", "bicanonical eigenspaces 6, 1, 1, 0 summing to K^2 + 1")
def _eigen(ctx: Context):
    inv = ctx.invariants
    e = inv.eigen_h0_2K
    ok = tuple(e) == (6, 1, 1, 0) and sum(e) == inv.KS_sq + 1 and inv.invariant_direct == 6
    return ok, {"eigen": list(e), "invariant_direct": inv.invariant_direct}


@claim("cover.eigen_decompositions", "printed decompositions of 2K + L_i + L_j")
def _eigen_dec(ctx: Context):
    n, k, ell = ctx.named, ctx.k, ctx.cover.ell
    c = ctx.sum_c()
    a = 2 * k + ell[1] + ell[2]
    first = a == n["Gamma"] + c + n["E3'"] and a == ctx.cls(4, E0=4, E1_=2, E2_=2, E3_=1, E=1)
    conic = ctx.cls(2, E1=1, E2=1, E3=1, E3_=1, E=1)
    second = 2 * k + ell[0] + ell[2] == conic + c and class_dim(conic, ctx.config) == 1
    empty = ctx.cls(2, E1=1, E2=1, E3=1, E=2)
    third = 2 * k + ell[0] + ell[1] == empty + c and class_dim(empty, ctx.config) == 0
    return first and second and third, {"chi1": first, "chi2": second, "chi3": third}


# -- pullbacks and the exclusion arithmetic -----------------------------------------

@claim("hyperelliptic.gamma_pullback", "preimage of Gamma: elliptic, self-intersection -1, K-degree 1")
def _gp(ctx: Context):
    r = pullback_curve_invariants(ctx.catalog["Gamma"], BRANCH, ctx.cover)
    return (r.self_int, r.k_degree, r.genus, r.components) == (-1, 1, 1, 1), r


@claim("hyperelliptic.e_pullback", "preimage of E: genus 2, self-intersection -4, K-degree 6, irreducible")
def _ep(ctx: Context):
    r = pullback_curve_invariants(ctx.catalog["E"], TRANSVERSE, ctx.cover)
    return (r.self_int, r.k_degree, r.genus, r.components) == (-4, 6, 2, 1), r


@claim("hyperelliptic.pairing", "the two preimages meet twice")
def _pairing(ctx: Context):
    v = pullback_intersection(ctx.catalog["Gamma"], BRANCH, ctx.catalog["E"], TRANSVERSE, ctx.cover)
    return v == 2, {"intersection": v}


def _curve_data(ctx: Context):
    g = pullback_curve_invariants(ctx.catalog["Gamma"], BRANCH, ctx.cover)
    e = pullback_curve_invariants(ctx.catalog["E"], TRANSVERSE, ctx.cover)
    ge = pullback_intersection(ctx.catalog["Gamma"], BRANCH, ctx.catalog["E"], TRANSVERSE, ctx.cover)
    gamma = CurveData("gamma'", int(g.self_int), int(g.k_degree), int(g.genus))
    ee = CurveData("e'", int(e.self_int), int(e.k_degree), int(e.genus))
    return exclusion_branches(ctx.invariants.KS_sq, ctx.invariants.chi, gamma, ee, int(ge))


def _branches(ctx: Context, curve: str, values: Sequence[int | None], reason: str | None = None):
    picked = [
        b for b in _curve_data(ctx)
        if b.curve == curve and b.value in values and (reason is None or b.reason == reason)
    ]
    return picked


@claim("hyperelliptic.index_bounds", "index theorem bounds Phi.gamma' <= 2 and Phi.e' <= 9")
def _bounds(ctx: Context):
    br = _curve_data(ctx)
    bounds = {b.curve: b.witness["bound"] for b in br if b.reason == "index theorem"}
    return bounds == {"gamma'": 2, "e'": 9}, bounds


@claim("hyperelliptic.gamma_double_cover", "Phi.gamma' = 2 would need five ramification points on an elliptic curve")
def _gamma2(ctx: Context):
    picked = _branches(ctx, "gamma'", [2], "Riemann-Hurwitz")
    return len(picked) == 1 and picked[0].closed, picked


@claim("hyperelliptic.parity", "odd values of Phi.C are impossible with double fibres")
def _parity(ctx: Context):
    picked = [b for b in _curve_data(ctx) if b.reason.startswith("odd")]
    values = sorted((b.curve, b.value) for b in picked)
    expected = sorted([("gamma'", 1)] + [("e'", v) for v in (1, 3, 5, 7, 9)])
    return values == expected and all(b.closed for b in picked), picked


@claim("hyperelliptic.e_riemann_hurwitz", "Phi.e' = 8 or 6 contradicts Riemann-Hurwitz")
def _e86(ctx: Context):
    picked = _branches(ctx, "e'", [8, 6], "Riemann-Hurwitz")
    return len(picked) == 2 and all(b.closed for b in picked), picked


@claim("hyperelliptic.gram_matrices", "Phi.e' = 4 or 2 gives a nondegenerate 4x4 intersection matrix")
def _gram(ctx: Context):
    picked = _branches(ctx, "e'", [4, 2], "Gram matrix rank exceeds b2")
    printed = {
        4: [[7, 1, 6, 4], [1, -1, 2, 0], [6, 2, -4, 4], [4, 0, 4, 0]],
        2: [[7, 1, 6, 4], [1, -1, 2, 0], [6, 2, -4, 2], [4, 0, 2, 0]],
    }
    ok = len(picked) == 2 and all(b.closed and b.witness["matrix"] == printed[b.value] for b in picked)
    return ok, picked


@claim("hyperelliptic.zariski", "2gamma' + e' has square 0 and would be 2 Phi")
def _zariski(ctx: Context):
    picked = [b for b in _curve_data(ctx) if b.reason == "Zariski lemma coefficient"]
    return len(picked) == 1 and picked[0].closed, picked


@claim("hyperelliptic.all_closed", "every branch of the case analysis closes")
def _all_closed(ctx: Context):
    br = _curve_data(ctx)
    return all(b.closed for b in br), {"branches": len(br)}


# -- intermediate covers -------------------------------------------------------------

@claim("quotients.node_counts", "nodes of the three double covers: 1, 5, 7")
def _nodes(ctx: Context):
    recs = [intermediate_cover(i, ctx.cover, ctx.catalog) for i in (1, 2, 3)]
    nodes = [r.nodes for r in recs]
    ok = nodes == [1, 5, 7] and all(r.nodes == r.nodes_from_catalog for r in recs)
    return ok, {"nodes": nodes}


@claim("quotients.fixed_points", "isolated fixed points of the three involutions: 9, 9, 7")
def _fixed(ctx: Context):
    recs = [intermediate_cover(i, ctx.cover, ctx.catalog) for i in (1, 2, 3)]
    return [r.fixed_points for r in recs] == [9, 9, 7], recs


@claim("quotients.V1_rational", "the first quotient carries the pulled-back genus-0 pencil |B2 + B3|")
def _v1(ctx: Context):
    m = ctx.named["M"]
    d = ctx.cover.delta_class(1) + ctx.cover.delta_class(2)
    return intersect(m, d) == 0 and intersect(m, m) == 0 and adjunction_genus(m) == 0, {
        "M.(D2+D3)": intersect(m, d)
    }


@claim("quotients.V2_plurigenera", "second quotient: P_n = 1 for even n, 0 for odd n, n <= 6")
def _v2(ctx: Context):
    rec = intermediate_cover(2, ctx.cover, ctx.catalog, plurigenera_up_to=6)
    expected = {n: (1 if n % 2 == 0 else 0) for n in range(1, 7)}
    n = ctx.named
    identity = 2 * ctx.k + 2 * ctx.cover.ell[1] == 2 * n["Gamma"] + n["C1"] + n["C1'"] + n["C2"] + n["C2'"]
    return rec.plurigenera == expected and identity, {"plurigenera": rec.plurigenera, "identity": identity}


@claim("quotients.V3_elliptic", "third quotient: 2K pulls back from L - E0, elliptic fibres, K^2 = 0")
def _v3(ctx: Context):
    n, cd = ctx.named, ctx.cover
    f = n["F"]
    identity = 2 * ctx.k + 2 * cd.ell[2] == f + ctx.sum_c()
    branch_degree = intersect(f, cd.delta_class(0) + cd.delta_class(1))
    fibre_genus = 1 + Fraction(2 * (2 * adjunction_genus(f) - 2) + branch_degree, 2)
    k_sq = Fraction(2 * intersect(f, f), 4)  # 4K^2 = (pi^* F)^2 = 2 F^2
    ok = identity and branch_degree == 4 and fibre_genus == 1 and k_sq == 0
    return ok, {"identity": identity, "branch_degree": branch_degree, "fibre_genus": fibre_genus, "K_sq": k_sq}


# -- the six-point presets ---------------------------------------------------------

class Presets:
    @cached_property
    def quintic(self):
        return quintic_configuration()

    @cached_property
    def quintic_named(self):
        return quintic_classes(self.quintic)

    @cached_property
    def quintic_curves(self):
        return minus_curves(self.quintic)

    @cached_property
    def lines(self):
        return four_line_configuration()

    @cached_property
    def lines_catalog(self):
        return four_line_catalog(self.lines)


PRESETS = Presets()


@claim("presets.minus2_curves", "quintic preset: exactly four (-2)-curves T1, T2, N1, N2", needs_surface=False)
def _s6_m2(ctx: Context):
    m2, _ = PRESETS.quintic_curves
    n = PRESETS.quintic_named
    got = sorted(c.divisor.spec() for c in m2)
    expected = sorted(n[k].spec() for k in ("T1", "T2", "N1", "N2"))
    return got == expected, {"curves": got}


@claim("presets.minus1_curves", "quintic preset: nine (-1)-curves, three disjoint from the (-2)-curves",
       needs_surface=False)
def _s6_m1(ctx: Context):
    m2, m1 = PRESETS.quintic_curves
    n = PRESETS.quintic_named
    free = sorted(
        c.divisor.spec() for c in m1 if all(intersect(c.divisor, d.divisor) == 0 for d in m2)
    )
    expected = sorted(n[k].spec() for k in ("T3", "Cconic", "E3"))
    return len(m1) == 9 and free == expected, {"count": len(m1), "disjoint": free}


@claim("presets.class_relations", "T4 + C, C1 + T3, Gamma + E3 are anticanonical", needs_surface=False)
def _s6_rel(ctx: Context):
    cfg, n = PRESETS.quintic, PRESETS.quintic_named
    minus_k = DivisorClass(cfg.name, 3, (1,) * len(cfg))
    sums = {
        "T4+C": n["T4"] + n["Cconic"], "C1+T3": n["C1"] + n["T3"],
        "C2+T3": n["C2"] + n["T3"], "Gamma+E3": n["Gamma"] + n["E3"],
    }
    return all(v == minus_k for v in sums.values()), sums


@claim("presets.quintic_conic", "every quintic with the prescribed singularities contains the conic",
       needs_surface=False)
def _s6_quintic(ctx: Context):
    q = quintic_splits_off_conic(PRESETS.quintic)
    n = PRESETS.quintic_named
    cubic_dim = class_dim(n["Gamma"], PRESETS.quintic)
    ok = q.all_divisible and q.dim == cubic_dim == 2 and intersect(n["quintic"], n["Cconic"]) < 0
    return ok, {"dim": q.dim, "conic": q.conic, "quotients": q.quotients, "cubic_dim": cubic_dim,
                "quintic.C": intersect(n["quintic"], n["Cconic"])}


@claim("presets.pullback_totals", "printed total transforms are 5L, 5L, 3L", needs_surface=False)
def _s6_tot(ctx: Context):
    cfg = PRESETS.quintic
    totals = pullback_branch_data(cfg)
    expected = [cfg.make(5, (0,) * 6), cfg.make(5, (0,) * 6), cfg.make(3, (0,) * 6)]
    return totals == expected, {"totals": totals}


def _normalized(cfg, n):
    comps = [
        [("C", n["Cconic"]), ("Gamma", n["Gamma"])],
        [("T1", n["T1"]), ("C1", n["C1"]), ("C2", n["C2"])],
        [("T2", n["T2"]), ("T3", n["T3"]), ("T4", n["T4"])],
    ]
    return normalize_branch_data(cfg, comps, pullback_branch_data(cfg))


@claim("presets.normalization", "normalized branch data C + Gamma, T1 + C1 + C2 + N1 + E3, T2 + T3 + T4 + N2",
       needs_surface=False)
def _s6_norm(ctx: Context):
    cfg, n = PRESETS.quintic, PRESETS.quintic_named
    got = _normalized(cfg, n)
    expected = [
        ["C", "Gamma"], ["T1", "C1", "C2", "SE1", "SE3"], ["T2", "T3", "T4", "SE2"],
    ]
    # SE1, SE2 are the strict exceptional curves N1, N2
    same = [sorted(a) == sorted(b) for a, b in zip(got, expected)]
    return all(same), {"normalized": got}


@claim("presets.normalized_parity", "normalized branch data define a bidouble cover", needs_surface=False)
def _s6_par(ctx: Context):
    cfg, n = PRESETS.quintic, PRESETS.quintic_named
    lookup = dict(n)
    lookup.update({"C": n["Cconic"], "SE1": n["N1"], "SE2": n["N2"], "SE3": n["E3"]})
    classes = []
    for names in _normalized(cfg, n):
        total = cfg.zero()
        for name in names:
            total = total + lookup[name]
        classes.append(total)
    halves = []
    for i in range(3):
        s = classes[(i + 1) % 3] + classes[(i + 2) % 3]
        halves.append(s.halve() if s.degree % 2 == 0 and all(a % 2 == 0 for a in s.mults) else None)
    return all(h is not None for h in halves), {"L": halves}


@claim("presets.four_line_adjoint", "four-line preset: 2K + L2 = -e5 - e6 has no sections", needs_surface=False)
def _s6_l2(ctx: Context):
    cfg = PRESETS.lines
    k = DivisorClass(cfg.name, -3, (-1,) * 6)
    d = 2 * k + four_line_l2(cfg)
    r = h0(d, PRESETS.lines_catalog, cfg)
    return d == cfg.make(0, (0, 0, 0, 0, 1, 1)) and r.value == 0, {"class": d, "h0": r.value}


@claim("presets.four_line_bicanonical", "four-line preset: h0(2K + 2L2) = 1", needs_surface=False)
def _s6_2l2(ctx: Context):
    cfg = PRESETS.lines
    cat = PRESETS.lines_catalog
    k = DivisorClass(cfg.name, -3, (-1,) * 6)
    d = 2 * k + 2 * four_line_l2(cfg)
    r = h0(d, cat, cfg)
    direct = class_dim(d, cfg)
    lines = [cfg.make(1, m) for m in ((1, 1, 0, 0, 1, 0), (0, 0, 1, 1, 1, 0), (1, 0, 0, 1, 0, 1), (0, 1, 1, 0, 0, 1))]
    joint = cfg.make(1, (0, 0, 0, 0, 1, 1))
    total = lines[0] + lines[1] + lines[2] + lines[3] + 2 * joint
    have = {c.divisor for c in cat}
    curves_ok = all(x in have for x in lines + [joint])
    types = [intersect(x, x) for x in lines] + [intersect(joint, joint)]
    ok = (
        r.value == 1 and direct == 1 and total == d and curves_ok
        and types == [-2, -2, -2, -2, -1] and disjoint(lines + [joint])
    )
    return ok, {"h0": r.value, "direct": direct, "trace": r.trace}


# -- driver ----------------------------------------------------------------------------

def _run(spec: ClaimSpec, ctx: Context, skip: str | None) -> ClaimResult:
    if skip and spec.needs_surface and not spec.claim_id.startswith("cond."):
        return ClaimResult(spec.claim_id, spec.topic, SKIPPED, None, skip)
    try:
        ok, witness = spec.check(ctx)
        return ClaimResult(spec.claim_id, spec.topic, PASS if ok else FAIL, jsonable(witness))
    except Exception as exc:  # a failing building block is a failing claim
        return ClaimResult(spec.claim_id, spec.topic, FAIL, None, f"{type(exc).__name__}: {exc}")


def _skip_reason(p: Sequence[Fraction]) -> str | None:
    cond = check_conditions_I_II(p)
    lines = [v for v in cond.violations if v.startswith("line")]
    if lines:
        return "free point violates the line condition: " + "; ".join(lines)
    if any(normalize_point(p) == normalize_point(q) for q in (P0,)):
        return "free point coincides with p0"
    return None


def verify(
    p: Sequence[Fraction], b: Sequence[Fraction] | None = None, prefixes: Sequence[str] | None = None
) -> VerificationReport:
    """Run the registered claims (optionally only those with the given id prefixes)."""
    p = normalize_point(p)
    ctx = Context(p, b)
    skip = _skip_reason(p)
    specs = [s for s in REGISTRY if prefixes is None or s.claim_id.startswith(tuple(prefixes))]
    claims = []
    for spec in specs:
        if skip and spec.claim_id == "cond.A_B":
            claims.append(ClaimResult(spec.claim_id, spec.topic, SKIPPED, None, skip))
            continue
        claims.append(_run(spec, ctx, skip))
    params: dict[str, Any] = {"p": [format_rational(x) for x in p], "b": None}
    if b is not None:
        params["b"] = [format_rational(x) for x in b]
    elif not skip:
        try:
            params["b"] = [format_rational(x) for x in ctx.b]
        except Exception as exc:
            params["b_error"] = str(exc)
    return VerificationReport(params, claims)


def verify_all(alpha, beta, b=None) -> VerificationReport:
    bb = fiber_parameter(b) if b is not None else None
    return verify(free_point(alpha, beta), bb)


def verify_section2(p, b=None) -> VerificationReport:
    return verify(p, b, ["cond.I_II", "surface."])


def verify_section4(p, b=None) -> VerificationReport:
    return verify(p, b, ["hyperelliptic."])


def verify_section4_exclusions(
    inv: CoverInvariants, gamma: PullbackInvariants, e: PullbackInvariants, gamma_e: int | Fraction
) -> list[ClaimResult]:
    """One claim per branch of the exclusion analysis, from invariants alone."""
    gd = CurveData("gamma'", int(gamma.self_int), int(gamma.k_degree), int(gamma.genus))
    ed = CurveData("e'", int(e.self_int), int(e.k_degree), int(e.genus))
    out = []
    for br in exclusion_branches(inv.KS_sq, inv.chi, gd, ed, int(gamma_e)):
        value = "bound" if br.value is None else br.value
        out.append(ClaimResult(
            f"hyperelliptic.{br.curve}={value}.{br.reason}",
            "value of Phi.C ruled out" if br.value is not None else "index theorem bound",
            PASS if br.closed else FAIL,
            jsonable(br.to_dict()),
            "" if br.closed else "branch stays open",
        ))
    return out


def verify_section6() -> VerificationReport:
    return verify(free_point(2, 3), None, ["presets."])


def claim_ids() -> list[str]:
    return [s.claim_id for s in REGISTRY]

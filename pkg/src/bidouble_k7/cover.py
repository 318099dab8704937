"""Invariants of a bidouble cover of the eight-point surface.

A cover is given by three branch divisors ``delta[0..2]`` (formal sums of
catalog curves) and three classes ``ell`` with ``2 ell[i] = delta[i+1] +
delta[i+2]``.  Indices are taken mod 3 throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .curves import CurveCatalog, NamedCurve
from .lattice import BlowupConfiguration, DivisorClass, adjunction_genus, intersect
from .riemann_roch import h0

BRANCH = "branch"
TRANSVERSE = "transverse"


class InconsistentCoverData(ValueError):
    def __init__(self, detail: str):
        super().__init__(f"inconsistent cover data: {detail}")


class BranchNotNodal(ValueError):
    def __init__(self, detail: str):
        super().__init__(f"branch divisor not nodal: {detail}")


class UnsupportedCurve(ValueError):
    def __init__(self, detail: str):
        super().__init__(f"unsupported: {detail}")


def _sum(curves: Sequence[NamedCurve], config_id: str, n: int) -> DivisorClass:
    total = DivisorClass(config_id, 0, (0,) * n)
    for c in curves:
        total = total + c.divisor
    return total


@dataclass(frozen=True)
class CoverData:
    delta: tuple[tuple[NamedCurve, ...], tuple[NamedCurve, ...], tuple[NamedCurve, ...]]
    ell: tuple[DivisorClass, DivisorClass, DivisorClass]
    config: BlowupConfiguration

    def delta_class(self, i: int) -> DivisorClass:
        return _sum(self.delta[i % 3], self.config.name, len(self.config))

    def total_delta(self) -> DivisorClass:
        return self.delta_class(0) + self.delta_class(1) + self.delta_class(2)

    def components(self) -> list[tuple[int, NamedCurve]]:
        return [(i, c) for i in range(3) for c in self.delta[i]]

    def branch_index(self, curve: NamedCurve) -> int | None:
        hits = [i for i, c in self.components() if c.name == curve.name]
        if len(hits) > 1:
            raise InconsistentCoverData(f"{curve.name} appears in several branch divisors")
        return hits[0] if hits else None

    def minus2_components(self) -> list[tuple[int, NamedCurve]]:
        return [(i, c) for i, c in self.components() if c.self_int == -2 and c.k_degree == 0]

    def canonical(self) -> DivisorClass:
        n = len(self.config)
        return DivisorClass(self.config.name, -3, (-1,) * n)

    def to_dict(self) -> dict:
        return {
            "delta": [[c.name for c in d] for d in self.delta],
            "ell": [x.spec() for x in self.ell],
        }


def standard_ell(config: BlowupConfiguration) -> tuple[DivisorClass, DivisorClass, DivisorClass]:
    """The three classes ``L_1, L_2, L_3`` of the standard data."""
    k = DivisorClass(config.name, -3, (-1,) * len(config))
    idx = config.index
    def exc(*labels: str, degree: int = 0, e0: int = 0) -> DivisorClass:
        m = [0] * len(config)
        m[idx("E0")] = e0
        for lab in labels:
            m[idx(lab)] += 1
        return DivisorClass(config.name, degree, tuple(m))
    l1 = -2 * k + exc("E3'")
    l2 = -k + exc("E1'", "E2'", "E", degree=2, e0=2)
    l3 = -k + exc("E1'", "E2'", "E3'", degree=2, e0=2)
    return (l1, l2, l3)


def standard_cover_data(catalog: CurveCatalog, config: BlowupConfiguration) -> CoverData:
    c = catalog
    delta = (
        (c["F_b"], c["Gamma"], c["C1"], c["C1'"], c["C2"], c["C2'"]),
        (c["B2"], c["C3"], c["C3'"]),
        (c["B3"],),
    )
    return CoverData(delta, standard_ell(config), config)


@dataclass
class CoverDiagnostics:
    identities: dict[str, bool]
    node_budget: dict[tuple[str, str], int] = field(default_factory=dict)
    branch_products: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def total_nodes(self) -> int:
        return sum(self.node_budget.values())

    def to_dict(self) -> dict:
        return {
            "identities": self.identities,
            "node_budget": {f"{a}*{b}": v for (a, b), v in sorted(self.node_budget.items())},
            "branch_products": {f"D{i + 1}*D{j + 1}": v for (i, j), v in sorted(self.branch_products.items())},
        }


def validate_cover_data(
    cd: CoverData, transversality: dict[str, bool] | None = None
) -> CoverDiagnostics:
    """Check the class identities and the intersection pattern of the branch locus.

    Components of one ``delta[i]`` must be disjoint; components of different
    ``delta[i]`` meet in ``A.B >= 0`` points, recorded as the node budget of
    the pair.  ``transversality`` carries optional geometric certificates
    (name -> passed); a failed one means the branch divisor is not nodal.
    """
    identities = {}
    for i in range(3):
        two_l = cd.ell[i] * 2
        identities[f"2L{i + 1} = D{(i + 1) % 3 + 1} + D{(i + 2) % 3 + 1}"] = (
            two_l == cd.delta_class(i + 1) + cd.delta_class(i + 2)
        )
        identities[f"L{i + 1} + D{i + 1} = L{(i + 1) % 3 + 1} + L{(i + 2) % 3 + 1}"] = (
            cd.ell[i] + cd.delta_class(i) == cd.ell[(i + 1) % 3] + cd.ell[(i + 2) % 3]
        )
    bad = [k for k, ok in identities.items() if not ok]
    if bad:
        raise InconsistentCoverData("; ".join(bad))
    comps = cd.components()
    names = [c.name for _, c in comps]
    if len(set(names)) != len(names):
        raise InconsistentCoverData("a curve appears twice in the branch locus")
    diag = CoverDiagnostics(identities)
    for a in range(len(comps)):
        ia, ca = comps[a]
        if adjunction_genus(ca.divisor).denominator != 1 or adjunction_genus(ca.divisor) < 0:
            raise InconsistentCoverData(f"{ca.name} has no valid arithmetic genus")
        for b in range(a + 1, len(comps)):
            ib, cb = comps[b]
            m = intersect(ca.divisor, cb.divisor)
            if ia == ib and m != 0:
                raise BranchNotNodal(f"{ca.name} and {cb.name} lie in the same branch divisor and meet")
            if m < 0:
                raise BranchNotNodal(f"{ca.name}.{cb.name} = {m}")
            if m:
                diag.node_budget[(ca.name, cb.name)] = m
    for i in range(3):
        for j in range(i + 1, 3):
            product = intersect(cd.delta_class(i), cd.delta_class(j))
            catalog_count = sum(
                intersect(x.divisor, y.divisor) for x in cd.delta[i] for y in cd.delta[j]
            )
            assert product == catalog_count
            diag.branch_products[(i, j)] = product
    if transversality:
        failed = [k for k, ok in transversality.items() if not ok]
        if failed:
            raise BranchNotNodal("; ".join(failed))
    return diag


@dataclass
class CoverInvariants:
    KV_sq: int
    KS_sq: int
    KS_sq_second_route: int
    contracted: int
    chi: int
    pg: int
    q: int
    eigen_h0_2K: tuple[int, int, int, int]
    invariant_direct: int

    def to_dict(self) -> dict:
        return {
            "KV_sq": self.KV_sq,
            "KS_sq": self.KS_sq,
            "KS_sq_second_route": self.KS_sq_second_route,
            "contracted": self.contracted,
            "chi": self.chi,
            "pg": self.pg,
            "q": self.q,
            "eigen_h0_2K": list(self.eigen_h0_2K),
            "invariant_direct": self.invariant_direct,
        }


def bicanonical_class(cd: CoverData) -> DivisorClass:
    """``2K_W + Delta``; its pullback is twice the canonical class of the cover."""
    return cd.canonical() * 2 + cd.total_delta()


def surface_invariants(cd: CoverData, catalog: CurveCatalog) -> CoverInvariants:
    k = cd.canonical()
    config = cd.config
    b = bicanonical_class(cd)
    # (pi^* b / 2)^2 = 4 b^2 / 4
    kv_sq = intersect(b, b)
    # each (-2)-curve that is a whole connected component of the branch
    # locus has preimage two disjoint (-1)-curves
    minus2 = [c for _, c in cd.minus2_components()]
    contracted = 2 * len(minus2)
    ks_sq = kv_sq + contracted
    # second route: the class on W pulled back from the contracted model
    contracted_model = b
    for c in minus2:
        contracted_model = contracted_model - c.divisor
    if any(intersect(contracted_model, c.divisor) != 0 for c in minus2):
        raise InconsistentCoverData("bicanonical class does not descend past the (-2)-curves")
    # 2K_S is the pullback of this class, so 4 K_S^2 = 4 (class)^2
    ks_second = intersect(contracted_model, contracted_model)
    chi_w = 1
    chi = 4 * chi_w + sum(
        Fraction(intersect(l, l) + intersect(k, l), 2) for l in cd.ell
    )
    if chi.denominator != 1:
        raise InconsistentCoverData("non-integral holomorphic Euler characteristic")
    pg = sum(h0(k + l, catalog, config).value for l in cd.ell)
    q = pg - int(chi) + 1
    chars = tuple(
        h0(k * 2 + cd.ell[(i + 1) % 3] + cd.ell[(i + 2) % 3], catalog, config).value
        for i in range(3)
    )
    invariant = ks_sq + 1 - sum(chars)
    invariant_direct = h0(b, catalog, config).value
    return CoverInvariants(
        KV_sq=kv_sq,
        KS_sq=ks_sq,
        KS_sq_second_route=ks_second,
        contracted=contracted,
        chi=int(chi),
        pg=pg,
        q=q,
        eigen_h0_2K=(invariant,) + chars,  # type: ignore[arg-type]
        invariant_direct=invariant_direct,
    )


@dataclass(frozen=True)
class PullbackInvariants:
    self_int: Fraction
    k_degree: Fraction
    genus: Fraction
    components: int
    branch_points: int

    def to_dict(self) -> dict:
        return {
            "self_int": str(self.self_int),
            "k_degree": str(self.k_degree),
            "genus": str(self.genus),
            "components": self.components,
            "branch_points": self.branch_points,
        }


def _check_away_from_contracted(curve: NamedCurve, cd: CoverData) -> None:
    for _, n in cd.minus2_components():
        if n.name != curve.name and intersect(curve.divisor, n.divisor) != 0:
            raise UnsupportedCurve(f"{curve.name} meets the contracted curve {n.name}")


def pullback_curve_invariants(curve: NamedCurve, role: str, cd: CoverData) -> PullbackInvariants:
    """Invariants of one component of the reduced preimage of ``curve``.

    Pulling back to the cover multiplies intersections by 4, and
    ``2K = pi^*(2K_W + Delta)``.  A branch component pulls back to twice its
    reduced preimage; a transverse curve pulls back reduced.
    """
    _check_away_from_contracted(curve, cd)
    c = curve.divisor
    b = bicanonical_class(cd)
    g_c = adjunction_genus(c)
    k_index = cd.branch_index(curve)
    if role == BRANCH:
        if k_index is None:
            raise UnsupportedCurve(f"{curve.name} is not a branch component")
        # pi^*C = 2C', so 4C'^2 = 4C^2 and 2K.2C' = 4(2K_W+Delta).C
        self_int = Fraction(4 * intersect(c, c), 4)
        k_deg = Fraction(4 * intersect(b, c), 4)
        others = cd.delta_class(k_index + 1) + cd.delta_class(k_index + 2)
        r = intersect(c, others)
        if r < 0:
            raise BranchNotNodal(f"{curve.name} meets the other branch divisors negatively")
        components = 1 if r > 0 else 2
        if r == 0 and g_c != 0:
            raise UnsupportedCurve("unramified double cover of a positive-genus curve")
        # C' -> C has degree 2 when irreducible; each piece maps isomorphically otherwise
        if components == 1:
            euler = 2 * (2 - 2 * g_c) - r
        else:
            euler = 2 - 2 * g_c
            # pi^*C = 2(C1 + C2) with C1, C2 disjoint and exchanged
            self_int = Fraction(intersect(c, c), 2)
            k_deg = Fraction(intersect(b, c), 2)
    elif role == TRANSVERSE:
        if k_index is not None:
            raise UnsupportedCurve(f"{curve.name} is a branch component")
        d = [intersect(c, cd.delta_class(i)) for i in range(3)]
        if any(x < 0 for x in d):
            raise UnsupportedCurve(f"{curve.name} meets the branch locus negatively")
        if any((d[(i + 1) % 3] + d[(i + 2) % 3]) % 2 for i in range(3)):
            raise InconsistentCoverData(f"{curve.name}: odd restriction of a double cover")
        r = sum(d)
        positive = sum(1 for x in d if x > 0)
        components = 1 if positive >= 2 else (2 if positive == 1 else 4)
        self_int = Fraction(4 * intersect(c, c), components)
        k_deg = Fraction(2 * intersect(b, c), components)
        # each branch point of C has two preimages instead of four
        euler = Fraction(4 * (2 - 2 * g_c) - 2 * r, components)
    else:
        raise ValueError(f"unknown role {role!r}")
    genus = 1 - Fraction(euler, 2)
    adj = 1 + (self_int + k_deg) / 2
    if genus != adj:
        raise InconsistentCoverData(
            f"{curve.name}: Riemann-Hurwitz genus {genus} != adjunction genus {adj}"
        )
    return PullbackInvariants(self_int, k_deg, genus, components, r)


def pullback_intersection(
    a: NamedCurve, role_a: str, b: NamedCurve, role_b: str, cd: CoverData
) -> Fraction:
    """Intersection of the reduced preimages of two curves with irreducible preimage."""
    for curve, role in ((a, role_a), (b, role_b)):
        if pullback_curve_invariants(curve, role, cd).components != 1:
            raise UnsupportedCurve(f"preimage of {curve.name} is reducible")
    m = 4 * intersect(a.divisor, b.divisor)
    den = (2 if role_a == BRANCH else 1) * (2 if role_b == BRANCH else 1)
    return Fraction(m, den)


@dataclass
class IntermediateCover:
    index: int  # 1, 2 or 3
    nodes: int
    nodes_from_catalog: int
    minus1_over_branch: int
    minus2_pairs: int
    fixed_points: int
    plurigenera: dict[int, int]

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "nodes": self.nodes,
            "nodes_from_catalog": self.nodes_from_catalog,
            "minus1_over_branch": self.minus1_over_branch,
            "minus2_pairs": self.minus2_pairs,
            "fixed_points": self.fixed_points,
            "plurigenera": {str(n): v for n, v in sorted(self.plurigenera.items())},
        }


def plurigenus(i: int, n: int, cd: CoverData, catalog: CurveCatalog) -> int:
    """``P_n`` of the double cover branched on ``delta[i+1] + delta[i+2]``."""
    k = cd.canonical()
    l = cd.ell[(i - 1) % 3]
    return (
        h0(k * n + l * n, catalog, cd.config).value
        + h0(k * n + l * (n - 1), catalog, cd.config).value
    )


def intermediate_cover(
    i: int, cd: CoverData, catalog: CurveCatalog, plurigenera_up_to: int = 0
) -> IntermediateCover:
    """Record for the quotient of the cover by the involution ``g_i`` (i = 1, 2, 3).

    Its fixed points on the cover are the nodes of the quotient, that is the
    points of ``delta[i+1] . delta[i+2]``, plus two for every (-2)-curve in
    ``delta[i]``: such a curve is not in the branch locus of the quotient,
    so its preimage there is a pair of (-2)-curves, each contracted to a node.
    """
    if i not in (1, 2, 3):
        raise ValueError("intermediate covers are indexed 1, 2, 3")
    a, b = i % 3, (i + 1) % 3  # delta indices i+1, i+2 in 1-based terms
    nodes = intersect(cd.delta_class(a), cd.delta_class(b))
    from_catalog = sum(
        intersect(x.divisor, y.divisor) for x in cd.delta[a] for y in cd.delta[b]
    )
    own = [c for j, c in cd.minus2_components() if j == i - 1]
    over = [c for j, c in cd.minus2_components() if j != i - 1]
    pl = {n: plurigenus(i, n, cd, catalog) for n in range(1, plurigenera_up_to + 1)}
    return IntermediateCover(
        index=i,
        nodes=nodes,
        nodes_from_catalog=from_catalog,
        minus1_over_branch=len(over),
        minus2_pairs=len(own),
        fixed_points=nodes + 2 * len(own),
        plurigenera=pl,
    )

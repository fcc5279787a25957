"""Toric side: lattice, cones, the resolution fan, divisors, discrepancies.

The ambient lattice N is Z^n extended by the vector (1/r)(1,..,1, r-1,..,r-1)
(s ones, then n-s copies of r-1). The singularity corresponds to the positive
orthant cone sigma; the resolution fan is obtained by star subdivisions at the
interior rays v_1..v_{r-1}, where

    v_t = (1/r)(r-t, ..., r-t, t, ..., t)   (s copies, then n-s copies).

The exceptional divisor E_t is the one attached to the ray v_t; Z_i is the
strict transform of the coordinate divisor of z_i. All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg
from .errors import ConventionError, DimensionError, ParameterError
from .group import GroupData, block_sums, monomials_of_degree

# ---------------------------------------------------------------------------
# lattice points

def in_lattice(g: GroupData, coords) -> bool:
    """Membership in N: integer after scaling by r, with block residues k and
    k(r-1) mod r for a single k."""
    scaled = []
    for c in coords:
        rc = Fraction(c) * g.r
        if rc.denominator != 1:
            return False
        scaled.append(rc.numerator)
    if len(scaled) != g.n:
        return False
    k = None
    for i, value in enumerate(scaled):
        res = value % g.r if i < g.s else (-value) % g.r
        if k is None:
            k = res
        elif res != k:
            return False
    return True


def is_primitive(g: GroupData, coords) -> bool:
    """No proper integer divisor of the point stays in N.

    Denominators divide r, so checking divisors d = 2..r suffices.
    """
    if not in_lattice(g, coords):
        return False
    if all(c == 0 for c in coords):
        return False
    for d in range(2, g.r + 1):
        if in_lattice(g, [Fraction(c) / d for c in coords]):
            return False
    return True


# ---------------------------------------------------------------------------
# cones and fans

@dataclass(frozen=True)
class Cone:
    """Simplicial cone given by its tuple of ray generators (coordinate tuples)."""

    rays: tuple

    def __post_init__(self):
        mat = linalg.RatMatrix.from_rows([list(ray) for ray in self.rays])
        rank, _ = linalg.nullspace(mat)
        if rank != len(self.rays):
            raise DimensionError("cone rays are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.rays)


@dataclass(frozen=True)
class Fan:
    maximal_cones: tuple


def standard_basis_rays(n: int):
    return [tuple(Fraction(1 if j == i else 0) for j in range(n)) for i in range(n)]


def sigma_cone(g: GroupData) -> Cone:
    return Cone(tuple(standard_basis_rays(g.n)))


def ray_v(g: GroupData, t: int) -> tuple:
    """The t-th interior ray; asserts lattice membership and primitivity."""
    if not (1 <= t <= g.r - 1):
        raise ParameterError(f"ray index {t} out of range 1..{g.r - 1}")
    coords = tuple([Fraction(g.r - t, g.r)] * g.s + [Fraction(t, g.r)] * (g.n - g.s))
    if not in_lattice(g, coords):
        raise ConventionError(f"v_{t} not in the lattice")
    if not is_primitive(g, coords):
        raise ConventionError(f"v_{t} not primitive")
    return coords


def cone_coordinates(cone: Cone, point):
    """Coordinates of point in the ray basis, or None when outside the span."""
    return linalg.solve_in_basis(cone.rays, point)


def cone_contains(cone: Cone, point) -> bool:
    coeffs = cone_coordinates(cone, point)
    return coeffs is not None and all(c >= 0 for c in coeffs)


def star_subdivide(cones, v):
    """One star subdivision step on a list of simplicial cones.

    Every cone containing v is replaced by the joins of v with its facets not
    containing v; other cones are kept.
    """
    out = []
    for cone in cones:
        coeffs = cone_coordinates(cone, v)
        if coeffs is None or any(c < 0 for c in coeffs):
            out.append(cone)
            continue
        for i, c in enumerate(coeffs):
            if c > 0:
                rays = cone.rays[:i] + cone.rays[i + 1 :] + (v,)
                out.append(Cone(tuple(sorted(rays))))
    return out


def resolution_fan(g: GroupData) -> Fan:
    """Star-subdivide sigma at v_1, then v_2, ..., then v_{r-1}."""
    cones = [sigma_cone(g)]
    for t in range(1, g.r):
        cones = star_subdivide(cones, ray_v(g, t))
    cones.sort(key=lambda c: c.rays)
    return Fan(tuple(cones))


def cone_det(cone: Cone) -> Fraction:
    mat = linalg.RatMatrix.from_rows([list(ray) for ray in cone.rays])
    return linalg.determinant(mat)


def cone_is_smooth(g: GroupData, cone: Cone) -> bool:
    """Rays form a basis of N, i.e. |det| = 1/r in standard coordinates."""
    if cone.dim != g.n:
        raise DimensionError("smoothness test needs a full-dimensional cone")
    return abs(cone_det(cone)) == Fraction(1, g.r)


def normalized_cone_volume(cone: Cone) -> Fraction:
    """|det| of the rays rescaled to coordinate sum 1.

    This is the additive volume: it measures the piece of the cone cut off by
    the plane where the coordinates sum to 1, so volumes of the maximal cones
    of a subdivision of sigma add up to the volume of sigma.
    """
    scaled = []
    for ray in cone.rays:
        total = sum(ray)
        if total <= 0:
            raise ConventionError("ray outside the positive orthant")
        scaled.append([c / total for c in ray])
    return abs(linalg.determinant(linalg.RatMatrix.from_rows(scaled)))


def covering_volume(fan: Fan) -> Fraction:
    return sum((normalized_cone_volume(c) for c in fan.maximal_cones), Fraction(0))


def exceptional_ray_indices(g: GroupData, cone: Cone):
    """Sorted indices t of the rays v_t occurring in the cone."""
    lookup = {ray_v(g, t): t for t in range(1, g.r)}
    return sorted(lookup[ray] for ray in cone.rays if ray in lookup)


def fan_face_check(g: GroupData, fan: Fan) -> bool:
    """Face sanity on ray sets.

    (a) no ray of the fan lies inside a maximal cone that does not list it;
    (b) every facet is shared by at most two maximal cones, and the two cones
    on a shared facet lie strictly on opposite sides of its hyperplane.
    Together with exact volume additivity this pins down the common-face
    property on this family of fans.
    """
    cones = fan.maximal_cones
    all_rays = sorted({ray for cone in cones for ray in cone.rays})
    for ray in all_rays:
        for cone in cones:
            if ray not in cone.rays and cone_contains(cone, ray):
                return False
    by_facet: dict = {}
    for cone in cones:
        for skip in range(len(cone.rays)):
            facet = frozenset(cone.rays[:skip] + cone.rays[skip + 1 :])
            by_facet.setdefault(facet, []).append((cone, cone.rays[skip]))
    for facet, attached in by_facet.items():
        if len(attached) > 2:
            return False
        if len(attached) == 2:
            normal = _facet_normal(facet)
            side_a = _dot(normal, attached[0][1])
            side_b = _dot(normal, attached[1][1])
            if side_a == 0 or side_b == 0 or (side_a > 0) == (side_b > 0):
                return False
    return True


def _dot(u, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def _facet_normal(shared_rays):
    rows = [list(ray) for ray in sorted(shared_rays)]
    _, basis = linalg.nullspace(linalg.RatMatrix.from_rows(rows))
    if len(basis) != 1:
        raise ConventionError("facet span is not a hyperplane")
    return basis[0]


# ---------------------------------------------------------------------------
# divisors

@dataclass(frozen=True)
class Divisor:
    """Formal rational combination of the prime divisors Z_1..Z_n, E_1..E_{r-1}.

    Zero coefficients are dropped on construction; equality is equality of the
    resulting maps.
    """

    coeffs: tuple = field(default=())

    @classmethod
    def from_dict(cls, mapping) -> "Divisor":
        items = tuple(sorted((k, Fraction(v)) for k, v in mapping.items()
                             if Fraction(v) != 0))
        return cls(items)

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def coefficient(self, key: str) -> Fraction:
        return self.as_dict().get(key, Fraction(0))

    def __add__(self, other: "Divisor") -> "Divisor":
        out = self.as_dict()
        for k, v in other.coeffs:
            out[k] = out.get(k, Fraction(0)) + v
        return Divisor.from_dict(out)

    def __sub__(self, other: "Divisor") -> "Divisor":
        out = self.as_dict()
        for k, v in other.coeffs:
            out[k] = out.get(k, Fraction(0)) - v
        return Divisor.from_dict(out)

    def exceptional_support(self):
        """Set of indices t with a nonzero E_t coefficient."""
        return {int(k.split("_")[1]) for k, _ in self.coeffs if k.startswith("E_")}

    def z_part(self) -> dict:
        return {k: v for k, v in self.coeffs if k.startswith("Z_")}


def z_key(i: int) -> str:
    return f"Z_{i}"


def e_key(t: int) -> str:
    return f"E_{t}"


def divisor_key_order(key: str):
    kind, index = key.split("_")
    return (0 if kind == "Z" else 1, int(index))


def valuation(g: GroupData, m: tuple, t: int) -> Fraction:
    """Pairing of the monomial with v_t: ((r-t)A + tB)/r."""
    if not (1 <= t <= g.r - 1):
        raise ParameterError(f"ray index {t} out of range 1..{g.r - 1}")
    if len(m) != g.n:
        raise ParameterError(f"expected {g.n} exponents")
    a, b = block_sums(g, m)
    return Fraction((g.r - t) * a + t * b, g.r)


def principal_divisor(g: GroupData, i: int) -> Divisor:
    """Divisor of the coordinate function z_i on the resolution.

    Z_i plus the valuations of z_i along each interior ray: coefficient
    (r-t)/r on E_t for first-block coordinates and t/r for second-block ones.
    """
    if not (1 <= i <= g.n):
        raise ParameterError(f"coordinate index {i} out of range 1..{g.n}")
    m = tuple(1 if j == i - 1 else 0 for j in range(g.n))
    coeffs = {z_key(i): Fraction(1)}
    for t in range(1, g.r):
        coeffs[e_key(t)] = valuation(g, m, t)
    return Divisor.from_dict(coeffs)


def discrepancies(g: GroupData):
    """Coefficient of each E_j in the relative canonical divisor.

    Per-ray value is (sum of coordinates of v_j) - 1; the multiset is checked
    against the closed form n - s + j(2s-n)/r - 1 over j = 1..r-1.
    """
    values = []
    for j in range(1, g.r):
        values.append(sum(ray_v(g, j)) - 1)
    formula = sorted(
        Fraction(g.n - g.s) + Fraction(j * (2 * g.s - g.n), g.r) - 1
        for j in range(1, g.r)
    )
    if sorted(values) != formula:
        raise ConventionError("discrepancy multiset mismatch with the closed form")
    return values


def crepant(g: GroupData) -> bool:
    return all(a == 0 for a in discrepancies(g))


def intersection_graph(g: GroupData, fan: Fan):
    """Unordered pairs (i, j) of exceptional rays sharing a maximal cone."""
    pairs = set()
    for cone in fan.maximal_cones:
        idx = exceptional_ray_indices(g, cone)
        for a, b in combinations(idx, 2):
            pairs.add((a, b))
    return sorted(pairs)


# ---------------------------------------------------------------------------
# coplanarity of the interior rays

def on_coplanarity_plane(g: GroupData, point) -> bool:
    """The plane equations: block-equal coordinates, and the block averages
    summing to 1."""
    coords = [Fraction(c) for c in point]
    if len(coords) != g.n:
        return False
    first, second = coords[: g.s], coords[g.s :]
    if any(c != first[0] for c in first) or any(c != second[0] for c in second):
        return False
    total = sum(first) / g.s + sum(second) / (g.n - g.s)
    return total == 1


def coplanarity_check(g: GroupData) -> bool:
    return all(on_coplanarity_plane(g, ray_v(g, t)) for t in range(1, g.r))


# ---------------------------------------------------------------------------
# singularity classification

@dataclass(frozen=True)
class SingularityType:
    ages: tuple
    canonical: bool
    terminal: bool
    gorenstein: bool


def age(g: GroupData, k: int) -> Fraction:
    """Age of the k-th group element: (sk + (n-s)(r-k))/r."""
    if not (1 <= k <= g.r - 1):
        raise ParameterError(f"group element index {k} out of range")
    return Fraction(g.s * k + (g.n - g.s) * (g.r - k), g.r)


def singularity_type(g: GroupData) -> SingularityType:
    ages = tuple(age(g, k) for k in range(1, g.r))
    return SingularityType(
        ages=ages,
        canonical=all(a >= 1 for a in ages),
        terminal=all(a > 1 for a in ages),
        gorenstein=(2 * g.s - g.n) % g.r == 0,
    )


def ages_extremes_agree(g: GroupData) -> bool:
    """Flags from the extreme elements k in {1, r-1} match the full range.

    The age is linear in k, so the minimum over all elements is attained at
    an endpoint; this makes the two quantifier readings equivalent here.
    """
    full = singularity_type(g)
    extremes = {age(g, 1), age(g, g.r - 1)}
    return (
        full.canonical == all(a >= 1 for a in extremes)
        and full.terminal == all(a > 1 for a in extremes)
    )


def extremal_divisor_labels(g: GroupData) -> dict:
    """Report-only labels for the extreme exceptional divisors.

    When one block has a single coordinate the corresponding extreme divisor
    is of projective-space type; no geometric verification is claimed.
    """
    labels = {}
    if g.s == 1:
        labels[e_key(1)] = "projective-space"
    if g.n - g.s == 1:
        labels[e_key(g.r - 1)] = "projective-space"
    return labels


# ---------------------------------------------------------------------------
# invariant monomials

def invariant_generators(g: GroupData):
    """Minimal monomial generators of the weight-0 semigroup.

    Enumerates weight-0 monomials of total degree <= r and discards any
    divisible by a smaller one; then checks the degree bound by verifying
    every weight-0 monomial of degree r+1..2r is divisible by some generator.
    """
    gens = []
    for deg in range(1, g.r + 1):
        for m in monomials_of_degree(g.n, deg):
            a, b = sum(m[: g.s]), sum(m[g.s :])
            if (b - a) % g.r != 0:
                continue
            if any(all(x <= y for x, y in zip(gen, m)) for gen in gens):
                continue
            gens.append(m)
    for deg in range(g.r + 1, 2 * g.r + 1):
        for m in monomials_of_degree(g.n, deg):
            a, b = sum(m[: g.s]), sum(m[g.s :])
            if (b - a) % g.r != 0:
                continue
            if not any(all(x <= y for x, y in zip(gen, m)) for gen in gens):
                raise ConventionError(
                    f"degree bound failed: {m} not divisible by any generator"
                )
    gens.sort(key=lambda m: (sum(m), m))
    return tuple(gens)

"""McKay-side divisor data.

For each character chi_k there is an effective exceptional Q-divisor M_chi
whose coefficient along E_t is the smallest valuation of a weight-k monomial.
Multiplication by a coordinate function induces maps between the associated
line bundles; the vanishing divisor of such a map is an effective integral
divisor B. Intersecting the supports of the B's entering (resp. leaving) the
image complex of a character computes the support of its top (resp. bottom)
cohomology, which realizes the character/divisor bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import comb

from .errors import ConventionError, ParameterError
from .group import CharIndex, GroupData
from .toric import Divisor, e_key, principal_divisor, z_key

# ---------------------------------------------------------------------------
# M divisors

@dataclass(frozen=True)
class MDivisorTable:
    """entries[k][t-1] = coefficient of E_t in M_{chi_k}, k = 0..r-1."""

    r: int
    entries: tuple

    def entry(self, k: int, t: int) -> Fraction:
        return self.entries[k % self.r][t - 1]

    def row_divisor(self, k: int) -> Divisor:
        return Divisor.from_dict(
            {e_key(t): self.entry(k, t) for t in range(1, self.r)}
        )


def _char_value(g: GroupData, a) -> int:
    if isinstance(a, CharIndex):
        if a.r != g.r:
            raise ParameterError(f"character modulus {a.r} does not match r={g.r}")
        return a.k
    return a % g.r


def m_coefficient(g: GroupData, k, t: int) -> Fraction:
    """Smallest ((r-t)A + tB)/r over exponent pairs with (B-A) = k mod r.

    Computed twice: brute force over A, B <= 2r, and by the closed form
    min{tk, (r-t)(r-k)}/r for k != 0. Disagreement is an internal error.
    """
    k = _char_value(g, k)
    if not (1 <= t <= g.r - 1):
        raise ParameterError(f"ray index {t} out of range 1..{g.r - 1}")
    best = None
    for a in range(2 * g.r + 1):
        for b in range(2 * g.r + 1):
            if (b - a) % g.r != k:
                continue
            value = Fraction((g.r - t) * a + t * b, g.r)
            if best is None or value < best:
                best = value
    closed = Fraction(0) if k == 0 else Fraction(
        min(t * k, (g.r - t) * (g.r - k)), g.r
    )
    if best != closed:
        raise ConventionError(
            f"infimum {best} disagrees with closed form {closed} at (k={k}, t={t})"
        )
    return best


@cache
def m_table(g: GroupData) -> MDivisorTable:
    """All M coefficients, with the closed-form row pattern asserted."""
    entries = []
    for k in range(g.r):
        row = [m_coefficient(g, k, t) for t in range(1, g.r)]
        for t in range(1, g.r):
            if k == 0:
                expected = Fraction(0)
            elif t <= g.r - k:
                expected = Fraction(k * t, g.r)
            else:
                expected = Fraction((g.r - k) * (g.r - t), g.r)
            if row[t - 1] != expected:
                raise ConventionError(
                    f"M row pattern violated at (k={k}, t={t}): {row[t - 1]}"
                )
        if any(value < 0 for value in row):
            raise ConventionError(f"negative M coefficient in row {k}")
        entries.append(tuple(row))
    return MDivisorTable(r=g.r, entries=tuple(entries))


# ---------------------------------------------------------------------------
# vanishing divisors of coordinate multiplication

def shift(g: GroupData, i: int) -> int:
    """Isotypic shift of multiplication by the i-th coordinate: +1 on the
    first block, -1 on the second. See the conventions ledger."""
    if not (1 <= i <= g.n):
        raise ParameterError(f"coordinate index {i} out of range 1..{g.n}")
    return 1 if i <= g.s else -1


def b_divisor(g: GroupData, a, i: int) -> Divisor:
    """M_{chi_{a+shift(i)}} + div(z_i) - M_{chi_a}.

    Effectivity and integrality are asserted: the Z-part must be exactly Z_i
    and every exceptional coefficient must be 0 or 1.
    """
    a_val = _char_value(g, a)
    table = m_table(g)
    divisor = (
        table.row_divisor(a_val + shift(g, i))
        + principal_divisor(g, i)
        - table.row_divisor(a_val)
    )
    if divisor.z_part() != {z_key(i): Fraction(1)}:
        raise ConventionError(f"B divisor Z-part is not Z_{i}: {divisor.coeffs}")
    for key, value in divisor.coeffs:
        if key.startswith("E_") and value not in (Fraction(0), Fraction(1)):
            raise ConventionError(
                f"non-integral exceptional coefficient {value} on {key}"
            )
    return divisor


# ---------------------------------------------------------------------------
# image complexes

@dataclass(frozen=True)
class FMComplex:
    """Image complex of a character: line-bundle labels by homological degree.

    terms[p] is the multiset of labels in degree -p, stored as sorted
    (label, multiplicity) pairs; incoming_b are the vanishing divisors of the
    n maps into degree 0 and outgoing_b those of the n maps out of degree -n.
    """

    char: CharIndex
    terms: tuple
    incoming_b: tuple
    outgoing_b: tuple


def fm_complex(g: GroupData, t) -> FMComplex:
    t_val = _char_value(g, t)
    terms = []
    for p in range(g.n + 1):
        counts: dict[int, int] = {}
        for p1 in range(max(0, p - (g.n - g.s)), min(g.s, p) + 1):
            p2 = p - p1
            label = (-t_val - p1 + p2) % g.r
            counts[label] = counts.get(label, 0) + comb(g.s, p1) * comb(
                g.n - g.s, p2
            )
        terms.append(tuple(sorted(counts.items())))
    if terms[0] != (((-t_val) % g.r, 1),):
        raise ConventionError("degree-0 term is not the single label -t")
    if terms[g.n] != (((g.n - 2 * g.s - t_val) % g.r, 1),):
        raise ConventionError("degree -n term is not the single label n-2s-t")
    for p in range(g.n + 1):
        if sum(mult for _, mult in terms[p]) != comb(g.n, p):
            raise ConventionError(f"degree -{p} multiplicities do not sum to C(n,p)")
    incoming = tuple(
        b_divisor(g, (-t_val - shift(g, i)) % g.r, i) for i in range(1, g.n + 1)
    )
    outgoing = tuple(
        b_divisor(g, (g.n - 2 * g.s - t_val) % g.r, i) for i in range(1, g.n + 1)
    )
    return FMComplex(
        char=CharIndex(k=t_val, r=g.r),
        terms=tuple(terms),
        incoming_b=incoming,
        outgoing_b=outgoing,
    )


def h0_support(g: GroupData, t) -> set:
    """Exceptional indices supported in every map into degree 0; a singleton.

    The trivial character is excluded (its complex has no top cohomology to
    locate)."""
    t_val = _char_value(g, t)
    if t_val == 0:
        raise ParameterError("h0 support is defined for nontrivial characters only")
    complex_ = fm_complex(g, t_val)
    supports = [d.exceptional_support() for d in complex_.incoming_b]
    common = set.intersection(*supports)
    if len(common) != 1:
        raise ConventionError(
            f"h0 support for t={t_val} is {sorted(common)}, expected a singleton"
        )
    return common


def h_minus_n_support(g: GroupData, t) -> set:
    """Exceptional indices supported in every map out of degree -n.

    Empty unless t = n-2s mod r, where it is the whole exceptional locus."""
    t_val = _char_value(g, t)
    complex_ = fm_complex(g, t_val)
    supports = [d.exceptional_support() for d in complex_.outgoing_b]
    common = set.intersection(*supports)
    full = set(range(1, g.r))
    if (t_val - (g.n - 2 * g.s)) % g.r == 0:
        if common != full:
            raise ConventionError("expected full exceptional support at t = n-2s")
    elif common:
        raise ConventionError(
            f"expected empty bottom support at t={t_val}, got {sorted(common)}"
        )
    return common


def correspondence_table(g: GroupData):
    """Pairs (t, E-index) for the nontrivial characters; asserted bijective."""
    pairs = []
    for t in range(1, g.r):
        support = h0_support(g, t)
        pairs.append((t, min(support)))
    images = [e for _, e in pairs]
    if sorted(images) != list(range(1, g.r)):
        raise ConventionError("character-to-divisor map is not a bijection")
    return tuple(pairs)

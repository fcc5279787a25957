"""Group action data for the diagonal cyclic action on affine n-space.

The group Z/r acts on coordinates z_1..z_n so that the coordinate functions
on the first block (z_1..z_s) carry weight r-1 and those on the second block
(z_{s+1}..z_n) carry weight 1. The weight of a monomial is therefore
(B - A) mod r where A sums the first-block exponents and B the rest.

Monomials are plain exponent tuples; characters are CharIndex values (a
residue k mod r).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError


@dataclass(frozen=True)
class GroupData:
    """Validated parameter triple with the derived weight vector."""

    s: int
    n: int
    r: int
    weights: tuple

    def __post_init__(self):
        if not (0 < self.s < self.n):
            raise ParameterError(f"need 0 < s < n, got s={self.s}, n={self.n}")
        if self.r < 2:
            raise ParameterError(f"need r >= 2, got r={self.r}")
        expected = tuple([self.r - 1] * self.s + [1] * (self.n - self.s))
        if self.weights != expected:
            raise ParameterError("weight vector inconsistent with (s, n, r)")


def validate(s: int, n: int, r: int) -> GroupData:
    """Construct GroupData or raise ParameterError."""
    if not isinstance(s, int) or not isinstance(n, int) or not isinstance(r, int):
        raise ParameterError("s, n, r must be integers")
    if not (0 < s < n):
        raise ParameterError(f"need 0 < s < n, got s={s}, n={n}")
    if r < 2:
        raise ParameterError(f"need r >= 2, got r={r}")
    return GroupData(s, n, r, tuple([r - 1] * s + [1] * (n - s)))


@dataclass(frozen=True)
class CharIndex:
    """Character of Z/r, indexed by a residue k mod r."""

    k: int
    r: int

    def __post_init__(self):
        if self.r < 1 or not (0 <= self.k < self.r):
            raise ParameterError(f"character index {self.k} out of range mod {self.r}")


def char_combine(a: CharIndex, b: CharIndex) -> CharIndex:
    """Tensor product of characters: residues add mod r."""
    if a.r != b.r:
        raise ParameterError(f"mismatched moduli {a.r} and {b.r}")
    return CharIndex((a.k + b.k) % a.r, a.r)


def char_inverse(a: CharIndex) -> CharIndex:
    """Dual character: k goes to (r - k) mod r."""
    return CharIndex((-a.k) % a.r, a.r)


# Monomials are tuples of non-negative exponents, one per coordinate.

def as_monomial(g: GroupData, exponents) -> tuple:
    m = tuple(int(e) for e in exponents)
    if len(m) != g.n:
        raise ParameterError(f"expected {g.n} exponents, got {len(m)}")
    if any(e < 0 for e in m):
        raise ParameterError("negative exponent")
    return m


def unit_monomial(g: GroupData, index: int, exponent: int = 1) -> tuple:
    """Pure power of the 1-based coordinate z_index."""
    if not (1 <= index <= g.n):
        raise ParameterError(f"coordinate index {index} out of range")
    m = [0] * g.n
    m[index - 1] = exponent
    return tuple(m)


def one(g: GroupData) -> tuple:
    return (0,) * g.n


def block_sums(g: GroupData, m: tuple):
    """(A, B): exponent sums over the first and second blocks."""
    return sum(m[: g.s]), sum(m[g.s :])


def weight(g: GroupData, m: tuple) -> CharIndex:
    """Character of the monomial: ((r-1)A + B) mod r, i.e. (B - A) mod r."""
    if len(m) != g.n:
        raise ParameterError(f"expected {g.n} exponents, got {len(m)}")
    a, b = block_sums(g, m)
    return CharIndex((b - a) % g.r, g.r)


def monomial_mul(m1: tuple, m2: tuple) -> tuple:
    return tuple(a + b for a, b in zip(m1, m2))


def monomial_divides(m1: tuple, m2: tuple) -> bool:
    """True when m1 divides m2 exponentwise."""
    return all(a <= b for a, b in zip(m1, m2))


def monomial_div(m1: tuple, m2: tuple) -> tuple:
    """m1 / m2; caller guarantees divisibility."""
    out = tuple(a - b for a, b in zip(m1, m2))
    if any(e < 0 for e in out):
        raise ParameterError("monomial quotient with negative exponent")
    return out


def monomial_lcm(m1: tuple, m2: tuple) -> tuple:
    return tuple(max(a, b) for a, b in zip(m1, m2))


def degree(m: tuple) -> int:
    return sum(m)


def monomial_str(m: tuple) -> str:
    """Human form like "z1^2*z3"; the constant monomial renders as "1"."""
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"z{i}")
        elif e > 1:
            parts.append(f"z{i}^{e}")
    return "*".join(parts) if parts else "1"


def monomial_sort_key(m: tuple):
    """Degree then exponents: a stable, readable ordering."""
    return (degree(m), m)


def monomials_of_degree(nvars: int, total: int):
    """All exponent tuples in nvars variables with the given total degree."""
    if nvars == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in monomials_of_degree(nvars - 1, total - head):
            yield (head,) + rest

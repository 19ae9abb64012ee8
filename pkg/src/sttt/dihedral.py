"""Layer rotations, layer reflections, and the dihedral group they generate.

Layer k of a spiral-numbered square is a ring whose sorted level set is
[k_0, ..., k_j].  The layer rotation is the single cycle sending each k_i to
k_{i+1} (one step along the spiral); the layer reflection swaps k_i with
k_{s-i} for ring size s = j + 1, indices mod s, which reflects the ring
across the grid's main diagonal (k_0 is always fixed, and so is k_{s/2} when
s is even).  The full rotation sigma and reflection rho are products over all
layers; layers have disjoint supports, so the order of that product does not
matter.

The group generated by sigma and rho is dihedral of order 2m, where m is the
least common multiple of the ring sizes: m = LCM(4, 12, ..., 4n-4) for even n
and m = LCM(1, 8, 16, ..., 4n-4) for odd n.  Elements are written
sigma^a rho^b with the reflection applied first: the realized permutation
sends x to sigma^a(rho^b(x)).  Under the action, the content at label p moves
to label g(p), so the cell labelled f shows what was at g^-1(f).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import lcm

from .perm import Permutation
from .spiral import InvalidSizeError, NumberedSquare, spiral_numbering


def ring_sizes(n: int) -> tuple[int, ...]:
    """Layer cardinalities, innermost first."""
    if n < 1:
        raise InvalidSizeError(f"side length must be a positive integer, got {n}")
    count = (n + 1) // 2
    if n % 2:
        return (1,) + tuple(8 * k for k in range(1, count))
    return tuple(4 + 8 * k for k in range(count))


def dihedral_order(n: int) -> int:
    """Order m of the full rotation: LCM of the ring sizes."""
    return lcm(*ring_sizes(n))


def layer_rotation(sq: NumberedSquare, k: int) -> Permutation:
    """One spiral step along ring k; all other labels fixed."""
    return Permutation.from_cycles(sq.n_sq, [sq.level_set(k)])


def layer_reflection(sq: NumberedSquare, k: int) -> Permutation:
    """Reflection of ring k across the main diagonal; other labels fixed."""
    ring = sq.level_set(k)
    s = len(ring)
    swaps = [(ring[i], ring[s - i]) for i in range(1, (s - 1) // 2 + 1)]
    return Permutation.from_cycles(sq.n_sq, swaps)


def _disjoint_product(parts: list[Permutation]) -> Permutation:
    prod = reduce(lambda p, q: p * q, parts)
    # disjoint supports make the order immaterial; verify while debugging
    assert prod == reduce(lambda p, q: p * q, reversed(parts))
    return prod


def full_rotation(sq: NumberedSquare) -> Permutation:
    return _disjoint_product(
        [layer_rotation(sq, k) for k in range(1, sq.layer_count + 1)]
    )


def full_reflection(sq: NumberedSquare) -> Permutation:
    return _disjoint_product(
        [layer_reflection(sq, k) for k in range(1, sq.layer_count + 1)]
    )


@lru_cache(maxsize=None)
def _generators(n: int) -> tuple[Permutation, Permutation]:
    sq = spiral_numbering(n)
    return full_rotation(sq), full_reflection(sq)


@dataclass(frozen=True)
class GroupElement:
    """Element sigma^a rho^b of the dihedral action for side length n."""

    n: int
    a: int
    b: int
    perm: Permutation

    def __call__(self, label: int) -> int:
        return self.perm(label)

    def __mul__(self, other: GroupElement) -> GroupElement:
        """Composition: (g * h) acts as g after h."""
        if self.n != other.n:
            raise ValueError(f"group elements for different sizes: {self.n} != {other.n}")
        m = dihedral_order(self.n)
        a = (self.a + (-other.a if self.b else other.a)) % m
        return GroupElement(self.n, a, self.b ^ other.b, self.perm * other.perm)

    def inverse(self) -> GroupElement:
        m = dihedral_order(self.n)
        a = self.a if self.b else (-self.a) % m
        return GroupElement(self.n, a, self.b, self.perm.inverse())

    def is_identity(self) -> bool:
        return self.perm.is_identity()

    def __repr__(self) -> str:
        return f"GroupElement(n={self.n}, a={self.a}, b={self.b})"


def group_element(n: int, a: int, b: int) -> GroupElement:
    """The element sigma^a rho^b; a is reduced mod m, b must be 0 or 1."""
    if b not in (0, 1):
        raise ValueError(f"reflection flag must be 0 or 1, got {b}")
    sigma, rho = _generators(n)
    a %= dihedral_order(n)
    perm = sigma**a * rho if b else sigma**a
    return GroupElement(n, a, b, perm)


@lru_cache(maxsize=None)
def group_elements(n: int) -> tuple[GroupElement, ...]:
    """All 2m elements, ordered by rotation exponent then reflection flag."""
    m = dihedral_order(n)
    return tuple(group_element(n, a, b) for a in range(m) for b in (0, 1))


def identity_element(n: int) -> GroupElement:
    return group_elements(n)[0]


@dataclass(frozen=True)
class RelationCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class DihedralReport:
    """Outcome of checking the dihedral presentation for one side length."""

    n: int
    m: int
    group_order: int
    relations: tuple[RelationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.relations)

    def failed(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.relations if not r.ok)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "group_order": self.group_order,
            "ok": self.ok,
            "relations": [
                {"name": r.name, "ok": r.ok, "detail": r.detail} for r in self.relations
            ],
        }

    def __str__(self) -> str:
        lines = [f"n={self.n}  m={self.m}  group order {self.group_order}"]
        for r in self.relations:
            mark = "pass" if r.ok else "FAIL"
            detail = f"  [{r.detail}]" if r.detail else ""
            lines.append(f"  {mark}  {r.name}{detail}")
        return "\n".join(lines)


def verify_dihedral(n: int) -> DihedralReport:
    """Check the presentation sigma^m = rho^2 = (sigma rho)^2 = 1, the
    exactness of m, and the distinctness of the 2m realized permutations.

    A failed relation signals an implementation bug, not bad input.
    """
    if n < 2:
        raise InvalidSizeError(
            f"verification needs n >= 2 (the n={n} action collapses to the trivial group)"
        )
    sigma, rho = _generators(n)
    m = dihedral_order(n)
    ident = Permutation.identity(n * n)

    checks = [
        RelationCheck("sigma^m = 1", sigma**m == ident, f"m = {m}"),
    ]
    early = [d for d in range(1, m) if m % d == 0 and sigma**d == ident]
    checks.append(
        RelationCheck(
            "sigma^d != 1 for every proper divisor d of m",
            not early,
            "order is exactly m" if not early else f"collapses at d = {early[0]}",
        )
    )
    checks.append(RelationCheck("rho^2 = 1", (rho * rho) == ident))
    sr = sigma * rho
    checks.append(RelationCheck("(sigma rho)^2 = 1", (sr * sr) == ident))
    elems = group_elements(n)
    distinct = len({e.perm for e in elems})
    checks.append(
        RelationCheck(
            "the 2m elements sigma^a rho^b are pairwise distinct",
            distinct == 2 * m,
            f"{distinct} distinct permutations of {2 * m}",
        )
    )
    checks.append(
        RelationCheck(
            "LCM formula matches the realized rotation order",
            sigma.order() == m,
            f"realized order {sigma.order()}",
        )
    )
    return DihedralReport(n=n, m=m, group_order=2 * m, relations=tuple(checks))

"""Root systems, weight lattices and Weyl groups for the equal-rank rank-one families.

Everything here is exact: roots and weights are tuples of ``Fraction`` in the
standard epsilon-coordinates of the complexified algebra, and the invariant
form is a rational multiple of the coordinate dot product, normalized so the
short root has squared length 2.  Supported families:

    su(n,1)   in R^{n+1}, roots e_i - e_j            (sl(2,R) is su(1,1))
    so(2n,1)  in R^n,     roots +-e_i +-e_j, +-e_i
    sp(n,1)   in R^{n+1}, roots +-e_i +-e_j, +-2e_i  (sp(1) factor on e_{n+1})

so(2n+1,1) has unequal rank and is rejected at construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
# Weyl matrices are signed permutations; entries stay exact (int or Fraction).
Matrix = tuple[tuple[Fraction | int, ...], ...]


class Family(str, Enum):
    SU = "su"
    SO = "so"
    SP = "sp"


class RootKind(str, Enum):
    COMPACT = "compact"
    NONCOMPACT = "noncompact"


@dataclass(frozen=True)
class GroupDescriptor:
    """One of su(n,1), so(2n,1), sp(n,1); ``n`` is the first parameter."""

    family: Family
    n: int

    def name(self) -> str:
        if self.family is Family.SO:
            return f"so({2 * self.n},1)"
        return f"{self.family.value}({self.n},1)"

    @staticmethod
    def from_name(name: str) -> "GroupDescriptor":
        text = name.strip().lower().replace(" ", "")
        if text in ("sl2r", "sl(2,r)"):
            return GroupDescriptor(Family.SU, 1)
        m = re.fullmatch(r"(su|so|sp)\((\d+),1\)", text)
        if not m:
            raise ValueError(f"unsupported group descriptor {name!r}")
        fam, first = m.group(1), int(m.group(2))
        if first < 1:
            raise ValueError(f"unsupported group descriptor {name!r}")
        if fam == "so":
            if first % 2 == 1:
                raise ValueError(
                    f"so({first},1) has unequal rank and is not supported"
                )
            return GroupDescriptor(Family.SO, first // 2)
        return GroupDescriptor(Family(fam), first)


@dataclass(frozen=True)
class Root:
    coords: Vector
    kind: RootKind


@dataclass(frozen=True)
class Weight:
    coords: Vector

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, c: Fraction | int) -> "Weight":
        return Weight(tuple(Fraction(c) * a for a in self.coords))


@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix
    sign: int

    def apply(self, w: Weight) -> Weight:
        return Weight(
            tuple(
                sum(row[j] * w.coords[j] for j in range(len(w.coords)))
                for row in self.matrix
            )
        )


@dataclass(frozen=True)
class RootSystem:
    descriptor: GroupDescriptor
    roots: tuple[Root, ...]
    positive: tuple[bool, ...]
    rho_g: Weight
    rho_k: Weight
    rho_p: Weight
    dim_p: int
    dim_n1: int
    dim_n2: int
    form_scale: int
    beta0: Root  # distinguished noncompact positive root (Cayley direction)

    @property
    def dim(self) -> int:
        return len(self.rho_g.coords)

    def positive_roots(self, kind: RootKind | None = None) -> list[Root]:
        out = []
        for root, pos in zip(self.roots, self.positive):
            if pos and (kind is None or root.kind is kind):
                out.append(root)
        return out


class Regularity(str, Enum):
    REGULAR = "regular"
    SINGULAR = "singular"


@dataclass(frozen=True)
class WeightClass:
    regularity: Regularity
    witness: Root | None = None


def _unit(dim: int, i: int, c: int = 1) -> Vector:
    return tuple(Fraction(c if j == i else 0) for j in range(dim))


def _vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _vneg(a: Vector) -> Vector:
    return tuple(-x for x in a)


def _half_sum(roots: Iterable[Root]) -> Weight:
    coords = None
    for r in roots:
        coords = r.coords if coords is None else _vadd(coords, r.coords)
    if coords is None:
        raise ValueError("empty root list")
    return Weight(tuple(c / 2 for c in coords))


def _su_roots(n: int) -> tuple[list[Root], list[bool], Root]:
    dim = n + 1
    roots, positive = [], []
    for i in range(dim):
        for j in range(dim):
            if i == j:
                continue
            coords = _vadd(_unit(dim, i), _vneg(_unit(dim, j)))
            kind = RootKind.COMPACT if (i < n and j < n) else RootKind.NONCOMPACT
            roots.append(Root(coords, kind))
            positive.append(i < j)
    beta0 = Root(_vadd(_unit(dim, 0), _vneg(_unit(dim, n))), RootKind.NONCOMPACT)
    return roots, positive, beta0


def _so_roots(n: int) -> tuple[list[Root], list[bool], Root]:
    roots, positive = [], []
    for i in range(n):
        for j in range(i + 1, n):
            for si in (1, -1):
                for sj in (1, -1):
                    coords = _vadd(_unit(n, i, si), _unit(n, j, sj))
                    roots.append(Root(coords, RootKind.COMPACT))
                    positive.append(si == 1)
    for i in range(n):
        for s in (1, -1):
            roots.append(Root(_unit(n, i, s), RootKind.NONCOMPACT))
            positive.append(s == 1)
    beta0 = Root(_unit(n, 0), RootKind.NONCOMPACT)
    return roots, positive, beta0


def _sp_roots(n: int) -> tuple[list[Root], list[bool], Root]:
    # sp(n) factor on coordinates 0..n-1, sp(1) factor on coordinate n.
    dim = n + 1
    roots, positive = [], []
    for i in range(dim):
        for j in range(i + 1, dim):
            for si in (1, -1):
                for sj in (1, -1):
                    coords = _vadd(_unit(dim, i, si), _unit(dim, j, sj))
                    kind = RootKind.NONCOMPACT if j == n else RootKind.COMPACT
                    roots.append(Root(coords, kind))
                    positive.append(si == 1)
    for i in range(dim):
        for s in (1, -1):
            roots.append(Root(_unit(dim, i, 2 * s), RootKind.COMPACT))
            positive.append(s == 1)
    beta0 = Root(_vadd(_unit(dim, 0), _unit(dim, n)), RootKind.NONCOMPACT)
    return roots, positive, beta0


def build_root_system(desc: GroupDescriptor) -> RootSystem:
    """Construct the full root datum of the descriptor's real form."""
    if desc.n < 1:
        raise ValueError("group parameter must be >= 1")
    if desc.family is Family.SU:
        roots, positive, beta0 = _su_roots(desc.n)
        form_scale = 1
    elif desc.family is Family.SO:
        roots, positive, beta0 = _so_roots(desc.n)
        form_scale = 2
    elif desc.family is Family.SP:
        roots, positive, beta0 = _sp_roots(desc.n)
        form_scale = 1
    else:  # pragma: no cover
        raise ValueError(f"unsupported family {desc.family}")

    roots_t = tuple(roots)
    positive_t = tuple(positive)
    pos_all = [r for r, p in zip(roots_t, positive_t) if p]
    pos_k = [r for r in pos_all if r.kind is RootKind.COMPACT]
    pos_p = [r for r in pos_all if r.kind is RootKind.NONCOMPACT]

    rho_g = _half_sum(pos_all)
    dim = len(rho_g.coords)
    zero = Weight(tuple(Fraction(0) for _ in range(dim)))
    rho_k = _half_sum(pos_k) if pos_k else zero
    rho_p = _half_sum(pos_p) if pos_p else zero
    dim_p = sum(1 for r in roots_t if r.kind is RootKind.NONCOMPACT)
    if dim_p % 2 != 0:
        raise ValueError("dim p must be even for an equal-rank form")

    # Restricted multiplicities: pair every root against the coroot of beta0.
    c1 = c2 = 0
    for r in roots_t:
        v = _coroot_pairing_raw(r.coords, beta0.coords)
        if v == 1:
            c1 += 1
        elif v == 2:
            c2 += 1
    if desc.family is Family.SO:
        if c1 != 0:
            raise AssertionError("so family must have a reduced restricted system")
        dim_n1, dim_n2 = c2, 0
    else:
        dim_n1, dim_n2 = c1, c2
    if dim_n1 + dim_n2 != dim_p - 1:
        raise AssertionError("restricted grading does not match dim n = dim p - 1")

    return RootSystem(
        descriptor=desc,
        roots=roots_t,
        positive=positive_t,
        rho_g=rho_g,
        rho_k=rho_k,
        rho_p=rho_p,
        dim_p=dim_p,
        dim_n1=dim_n1,
        dim_n2=dim_n2,
        form_scale=form_scale,
        beta0=beta0,
    )


def _coroot_pairing_raw(x: Vector, alpha: Vector) -> Fraction:
    # 2<x,a>/<a,a> is independent of the form scale, so the plain dot works.
    num = sum(a * b for a, b in zip(x, alpha))
    den = sum(a * a for a in alpha)
    return 2 * num / den


def inner(rs: RootSystem, a: Weight, b: Weight) -> Fraction:
    """Invariant pairing on it*, normalized so the short root has norm^2 = 2."""
    if len(a.coords) != len(b.coords) or len(a.coords) != rs.dim:
        raise ValueError("dimension mismatch")
    return rs.form_scale * sum(x * y for x, y in zip(a.coords, b.coords))


def coroot_pairing(rs: RootSystem, mu: Weight, alpha: Root | Weight) -> Fraction:
    coords = alpha.coords
    return _coroot_pairing_raw(mu.coords, coords)


def is_integral(rs: RootSystem, mu: Weight) -> bool:
    """Membership test for the weight lattice: all coroot pairings integral."""
    return all(
        coroot_pairing(rs, mu, r).denominator == 1
        for r, p in zip(rs.roots, rs.positive)
        if p
    )


def classify_weight(rs: RootSystem, mu: Weight) -> WeightClass:
    """Regular/singular split of lambda = mu + rho_k against R+(g,t).

    Input must already be dominant for the compact positive system; a
    vanishing pairing is only reachable on a noncompact root, which is
    returned as the witness.
    """
    lam = mu + rs.rho_k
    for r in rs.positive_roots(RootKind.COMPACT):
        if inner(rs, lam, Weight(r.coords)) <= 0:
            raise ValueError("weight is not dominant for the compact positive system")
    for r in rs.positive_roots():
        if inner(rs, lam, Weight(r.coords)) == 0:
            return WeightClass(Regularity.SINGULAR, witness=r)
    for r in rs.positive_roots():
        if inner(rs, lam, Weight(r.coords)) < 0:
            raise ValueError(
                "lambda = mu + rho_k is regular but not dominant; "
                "present the dominant chamber representative"
            )
    return WeightClass(Regularity.REGULAR)


def spinor_dims(rs: RootSystem) -> tuple[int, int]:
    """Dimensions of the two half-spinor modules; always equal."""
    half = 2 ** (rs.dim_p // 2 - 1)
    return (half, half)


def _as_int(x: Fraction):
    return x.numerator if x.denominator == 1 else x


def _reflection_matrix(rs: RootSystem, alpha: Root) -> Matrix:
    dim = rs.dim
    cols = []
    for i in range(dim):
        e = Weight(_unit(dim, i))
        c = coroot_pairing(rs, e, alpha)
        cols.append(tuple(e.coords[j] - c * alpha.coords[j] for j in range(dim)))
    # cols[i] is the image of e_i; transpose into row-major form.  Entries are
    # integers for every supported family (signed permutation matrices), so
    # coerce them for fast exact products.
    return tuple(tuple(_as_int(cols[j][i]) for j in range(dim)) for i in range(dim))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def simple_roots(rs: RootSystem, compact_only: bool = False) -> list[Root]:
    """Indecomposable elements of the chosen positive system."""
    pos = rs.positive_roots(RootKind.COMPACT if compact_only else None)
    coords = {r.coords for r in pos}
    simples = []
    for r in pos:
        decomposable = any(
            tuple(x - y for x, y in zip(r.coords, s)) in coords
            for s in coords
            if s != r.coords
        )
        if not decomposable:
            simples.append(r)
    return simples


@lru_cache(maxsize=None)
def _weyl_group_cached(rs: RootSystem, sub: str) -> tuple[WeylElement, ...]:
    gens = [
        (_reflection_matrix(rs, r), -1)
        for r in simple_roots(rs, compact_only=(sub == "compact"))
    ]
    ident = _identity(rs.dim)
    seen: dict[Matrix, int] = {ident: 1}
    frontier = [ident]
    while frontier:
        new = []
        for m in frontier:
            for g, gs in gens:
                prod = _mat_mul(g, m)
                if prod not in seen:
                    seen[prod] = gs * seen[m]
                    new.append(prod)
        frontier = new
    return tuple(WeylElement(m, s) for m, s in sorted(seen.items()))


def weyl_group(rs: RootSystem, sub: str = "full") -> list[WeylElement]:
    """Enumerate the Weyl group by closure of reflections.

    ``sub`` is "full" for W(g,t) or "compact" for the subgroup generated by
    reflections in compact roots.  Elements come back in a deterministic
    order (sorted by matrix entries); the closure is cached per root system.
    """
    if sub not in ("full", "compact"):
        raise ValueError("sub must be 'full' or 'compact'")
    return list(_weyl_group_cached(rs, sub))


def weyl_vector_pairing_one(rs: RootSystem) -> bool:
    """Check <rho_g, alpha_v> = 1 on every simple root (used in tests)."""
    return all(
        coroot_pairing(rs, rs.rho_g, a) == 1 for a in simple_roots(rs)
    )


SUPPORTED_NAMES: Sequence[str] = (
    "sl2r",
    "su(n,1)",
    "so(2n,1)",
    "sp(n,1)",
)

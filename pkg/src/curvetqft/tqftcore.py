"""Graded GF(2) modules presented by dividing sets modulo bypass triples.

The module attached to a marked surface at crossing bound B is the free
GF(2) vector space on the canonical dividing sets within the bound,
modulo one relation for every realizable bypass surgery: the three
members of a triple sum to zero, where a member with a contractible
closed component counts as zero.  For a connected surface the quotient
rank is expected to be 2**(n - chi), with n half the number of marked
points; a mismatch is reported, not silently repaired, since it signals
that the bound is too small or the relation set incomplete.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .surfaces import (
    DividingSet,
    MarkedSurface,
    canonicalize,
    enumerate_dividing_sets,
    enumerate_matchings,
    euler_grading,
    iter_bypass_surgeries,
    validate_surface,
)


class ModuleBuildError(ValueError):
    """The presentation is internally inconsistent (a surgery bug)."""


class BoundExceededError(ValueError):
    """A dividing set does not fit within the module's crossing bound."""


DEFAULT_BOUND = 4


@dataclass(frozen=True)
class ClassVector:
    """The class of a dividing set, in the reduced quotient basis.

    coords is a bitset over the quotient basis positions.  grading is the
    grading of the underlying dividing set (informational when the vector
    is zero).
    """

    coords: int
    grading: int
    is_zero: bool
    basis_size: int

    def __add__(self, other: "ClassVector") -> "ClassVector":
        if self.basis_size != other.basis_size:
            raise ValueError("class vectors from different modules")
        coords = self.coords ^ other.coords
        grading = self.grading if not self.is_zero else other.grading
        return ClassVector(coords, grading, coords == 0, self.basis_size)

    def __bool__(self) -> bool:
        return not self.is_zero


@dataclass(frozen=True)
class TqftModule:
    """Presented module: generators, relation rows, reduced basis, grading."""

    surface: MarkedSurface
    bound: int
    generators: tuple[DividingSet, ...]
    gradings: tuple[int, ...]
    relation_rows: tuple[int, ...]
    reduced_rows: tuple[int, ...]
    pivots: tuple[int, ...]
    basis_indices: tuple[int, ...]
    expected_rank: int
    warnings: tuple[str, ...]

    @property
    def rank(self) -> int:
        return len(self.basis_indices)

    def graded_ranks(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i in self.basis_indices:
            e = self.gradings[i]
            out[e] = out.get(e, 0) + 1
        return out

    def generator_index(self, k: DividingSet) -> int:
        try:
            return self._index()[k.encode()]
        except KeyError:
            raise BoundExceededError(
                "dividing set is not among the generators at this bound"
            ) from None

    def _index(self) -> dict:
        if not hasattr(self, "_index_cache"):
            object.__setattr__(
                self,
                "_index_cache",
                {g.encode(): i for i, g in enumerate(self.generators)},
            )
        return getattr(self, "_index_cache")

    def reduce(self, vec: int) -> int:
        return gf2.reduce_vector(vec, list(self.reduced_rows), list(self.pivots))

    def vector_in_basis(self, reduced_vec: int) -> int:
        coords = 0
        for pos, gen_idx in enumerate(self.basis_indices):
            if (reduced_vec >> gen_idx) & 1:
                coords |= 1 << pos
        return coords


def expected_rank(surface: MarkedSurface) -> int:
    """Product over connected components of 2**(n_c - chi_c)."""
    info = validate_surface(surface)
    total = 1
    for group in info.components:
        gset = set(group)
        marks = sum(
            1 for p in group for t in surface.words[p] if t[0] == "mark"
        )
        pairs_in = sum(1 for (pa, _), _ in surface.pairs if pa in gset)
        chi = len(group) - pairs_in
        total *= 2 ** (marks // 2 - chi)
    return total


def build_module(surface: MarkedSurface, bound: int = DEFAULT_BOUND) -> TqftModule:
    """Assemble and reduce the bypass presentation at the given bound."""
    validate_surface(surface)
    generators = tuple(enumerate_dividing_sets(surface, bound))
    index = {g.encode(): i for i, g in enumerate(generators)}
    gradings = tuple(euler_grading(surface, g) for g in generators)

    def member_bit(k: DividingSet) -> tuple[int, int | None]:
        if k.closed > 0:
            return 0, None
        enc = k.encode()
        if enc not in index:
            raise ModuleBuildError(
                "a bypass surgery left the enumerated generator set; "
                "this should be impossible at a fixed bound"
            )
        i = index[enc]
        return 1 << i, gradings[i]

    rows: set[int] = set()
    for i, g in enumerate(generators):
        for _, front, back in iter_bypass_surgeries(surface, g):
            bit_f, e_f = member_bit(front)
            bit_b, e_b = member_bit(back)
            for e_other in (e_f, e_b):
                if e_other is not None and e_other != gradings[i]:
                    raise ModuleBuildError(
                        "bypass relation mixes gradings "
                        f"({gradings[i]} vs {e_other})"
                    )
            row = (1 << i) ^ bit_f ^ bit_b
            if row:
                rows.add(row)

    reduced, pivots = gf2.rref(rows)
    basis_indices = tuple(
        i for i in range(len(generators)) if i not in set(pivots)
    )
    expected = expected_rank(surface)
    warnings = []
    if len(basis_indices) != expected:
        warnings.append(
            f"rank {len(basis_indices)} differs from the expected {expected}; "
            "raise the crossing bound"
        )
    return TqftModule(
        surface=surface,
        bound=bound,
        generators=generators,
        gradings=gradings,
        relation_rows=tuple(sorted(rows)),
        reduced_rows=tuple(reduced),
        pivots=tuple(pivots),
        basis_indices=basis_indices,
        expected_rank=expected,
        warnings=tuple(warnings),
    )


def class_of(module: TqftModule, k: DividingSet) -> ClassVector:
    """The class of a dividing set in the reduced quotient basis."""
    canonical = canonicalize(module.surface, k)
    grading = euler_grading(module.surface, canonical)
    if canonical.closed > 0:
        return ClassVector(0, grading, True, len(module.basis_indices))
    if any(c > module.bound for c in canonical.crossings):
        raise BoundExceededError(
            "canonical form exceeds the module's crossing bound"
        )
    idx = module.generator_index(canonical)
    reduced = module.reduce(1 << idx)
    coords = module.vector_in_basis(reduced)
    return ClassVector(coords, grading, coords == 0, len(module.basis_indices))


def graded_rank(module: TqftModule, grading: int) -> int:
    """Rank of one graded piece of the quotient."""
    return module.graded_ranks().get(grading, 0)


@dataclass(frozen=True)
class DistinctnessReport:
    zero_indices: tuple[int, ...]
    equal_pairs: tuple[tuple[int, int], ...]

    @property
    def all_nonzero(self) -> bool:
        return not self.zero_indices

    @property
    def all_distinct(self) -> bool:
        return not self.equal_pairs


def distinct_classes(module: TqftModule, ks: list[DividingSet]) -> DistinctnessReport:
    """Which of the given dividing sets have zero or pairwise equal classes."""
    vectors = [class_of(module, k) for k in ks]
    zero = tuple(i for i, v in enumerate(vectors) if v.is_zero)
    equal = []
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            if vectors[i].coords == vectors[j].coords:
                equal.append((i, j))
    return DistinctnessReport(zero, tuple(equal))


# ---------------------------------------------------------------------------
# Independent disk oracle
# ---------------------------------------------------------------------------

def _subdisk_relations(n: int, matchings: list[DividingSet]) -> list[int]:
    """Relation rows on the disk from every embedded six-endpoint sub-disk.

    A sub-disk meeting a matching in three nested strands exists exactly
    when three chords form the fully nested pattern on their six
    endpoints while every other chord stays inside a single gap between
    consecutive endpoints.  The triple replaces the nested pattern with
    its two rotations.  This construction is independent of the surgery
    machinery in the surfaces module.
    """
    import itertools as it

    index = {m.chords[0]: i for i, m in enumerate(matchings)}
    rows = []
    for m in matchings:
        chords = m.chords[0]
        for triple in it.combinations(chords, 3):
            pts = sorted(p for chord in triple for p in chord)
            rel = {p: q for q, p in enumerate(pts)}
            pattern = {tuple(sorted((rel[a], rel[b]))) for a, b in triple}
            if pattern != {(0, 5), (1, 4), (2, 3)}:
                continue
            rest = [c for c in chords if c not in triple]
            # Every remaining chord must keep all six points on one side.
            ok = True
            for a, b in rest:
                inside = sum(1 for p in pts if a < p < b)
                if inside not in (0, 6):
                    ok = False
                    break
            if not ok:
                continue
            rot1 = {tuple(sorted((pts[0], pts[1]))), tuple(sorted((pts[2], pts[5]))),
                    tuple(sorted((pts[3], pts[4])))}
            rot2 = {tuple(sorted((pts[0], pts[3]))), tuple(sorted((pts[1], pts[2]))),
                    tuple(sorted((pts[4], pts[5])))}
            row = 1 << index[chords]
            for other in (rot1, rot2):
                new_chords = tuple(sorted(other | set(rest)))
                row ^= 1 << index[new_chords]
            rows.append(row)
    return rows


@dataclass(frozen=True)
class DiskOracle:
    rank: int
    class_bits: tuple[int, ...]


def disk_bruteforce_module(n: int) -> DiskOracle:
    """Quotient of the free module on matchings by all sub-disk relations."""
    matchings = enumerate_matchings(n)
    rows = _subdisk_relations(n, matchings)
    reduced, pivots = gf2.rref(rows)
    rank = len(matchings) - len(pivots)
    class_bits = tuple(
        gf2.reduce_vector(1 << i, reduced, pivots) for i in range(len(matchings))
    )
    return DiskOracle(rank, class_bits)

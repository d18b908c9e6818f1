"""Marked surfaces and dividing sets, represented exactly.

A surface is presented as one or more oriented disk pieces whose boundary
words are cyclic sequences of tokens: marked points, labeled plain
segments (which stay on the boundary), and identification segments
(which are glued in pairs).  Gluing a pair matches one segment traversed
forward with the other traversed backward, so every presented surface is
oriented.  The Euler characteristic is #pieces - #pairs.

A dividing set is a properly embedded multicurve whose boundary is
exactly the marked points and whose complementary regions can be
2-colored compatibly with the boundary labels.  It is stored as a
non-crossing chord pairing per piece; chord endpoints ("slots") are the
marked points together with the crossing points on identification
segments.  Crossing lists on paired segments match in reversed order.
Closed components that cross no identification segment are contractible
and are recorded only by count.

The bypass operation removes a neighborhood of an arc that meets the
multicurve in exactly three points and reconnects the three strands in
the other two ways that preserve the grading.  The three configurations
so related form a bypass triple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

MARK = "mark"
PLAIN = "plain"
IDENT = "ident"

POS = 1
NEG = -1

Token = tuple
Chord = tuple[int, int]


class SurfaceError(ValueError):
    """The marked-surface data violates a structural invariant."""


class DividingSetError(ValueError):
    """The dividing-set data violates a structural invariant."""


class ColoringError(DividingSetError):
    """The complement of the multicurve has no consistent 2-coloring."""


class BypassError(ValueError):
    """The arc data does not describe a valid bypass attachment."""


def mark() -> Token:
    return (MARK,)


def plain(label: int) -> Token:
    if label not in (POS, NEG):
        raise SurfaceError(f"plain label must be +1 or -1, got {label!r}")
    return (PLAIN, label)


def ident(pair_id: int) -> Token:
    return (IDENT, pair_id)


@dataclass(frozen=True)
class MarkedSurface:
    """Disk pieces with paired boundary segments and labeled marked points.

    words[p] is the cyclic boundary word of piece p.  pairs[k] is the
    ordered pair of (piece, token_index) positions of the two segments
    glued by identification k; the first is traversed forward and the
    second backward.
    """

    words: tuple[tuple[Token, ...], ...]
    pairs: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    def token(self, piece: int, idx: int) -> Token:
        return self.words[piece][idx]

    @property
    def num_pieces(self) -> int:
        return len(self.words)

    @property
    def num_pairs(self) -> int:
        return len(self.pairs)

    def euler_characteristic(self) -> int:
        return self.num_pieces - self.num_pairs


@dataclass(frozen=True)
class DividingSet:
    """A multicurve on a marked surface.

    crossings[k] is the number of times the curve crosses identification
    pair k.  chords[p] is the non-crossing pairing of the slots of piece
    p, as sorted (lo, hi) slot-index pairs.  closed counts contractible
    closed components, whose embedded position is deliberately dropped.
    """

    crossings: tuple[int, ...]
    chords: tuple[tuple[Chord, ...], ...]
    closed: int = 0

    def encode(self) -> tuple:
        """Canonical sort key; equal keys mean equal dividing sets."""
        return (self.crossings, self.chords, self.closed)


def make_dividing_set(crossings, chords_per_piece, closed=0) -> DividingSet:
    """Normalize chord data (sorted pairs, sorted per piece) into a DividingSet."""
    norm = tuple(
        tuple(sorted(tuple(sorted(pair)) for pair in piece_chords))
        for piece_chords in chords_per_piece
    )
    return DividingSet(tuple(crossings), norm, closed)


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def disk(num_marks: int) -> MarkedSurface:
    """Disk with num_marks marked points; the segment after slot 0 is positive."""
    if num_marks < 2 or num_marks % 2:
        raise SurfaceError("a disk needs an even number >= 2 of marked points")
    word = []
    for i in range(num_marks):
        word.append(mark())
        word.append(plain(POS if i % 2 == 0 else NEG))
    return MarkedSurface((tuple(word),), ())


def annulus(
    marks_a: int = 2, marks_b: int = 2, corner_labels: tuple[int, int] = (NEG, NEG)
) -> MarkedSurface:
    """Annulus presented as one piece with one identified segment pair.

    marks_a points sit on one boundary circle and marks_b on the other.
    corner_labels gives the sign of the boundary sector through which the
    seam meets each circle.  With the default (-, -) the seam is crossed
    an even number of times by every dividing set; use opposite labels to
    present an annulus whose seam admits single-crossing transversals.
    """
    for m in (marks_a, marks_b):
        if m < 2 or m % 2:
            raise SurfaceError("each boundary circle needs an even number >= 2 of marks")
    word: list[Token] = []
    for m, corner in ((marks_a, corner_labels[0]), (marks_b, corner_labels[1])):
        word.append(ident(0))
        word.append(plain(corner))
        for i in range(m):
            word.append(mark())
            word.append(plain(-corner if i % 2 == 0 else corner))
    second = word.index((IDENT, 0), 1)
    return MarkedSurface((tuple(word),), (((0, 0), (0, second)),))


def punctured_torus(num_marks: int = 2) -> MarkedSurface:
    """Once-punctured torus: one piece, two identified pairs, one boundary circle.

    The marked points are distributed so that each of the two handle arcs
    has its endpoints in boundary sectors of opposite sign, which makes
    both arcs cuttable by a single-crossing transversal.
    """
    if num_marks < 2 or num_marks % 2:
        raise SurfaceError("the boundary circle needs an even number >= 2 of marks")
    word: list[Token] = [ident(0), plain(NEG)]
    for i in range(num_marks - 1):
        word.append(mark())
        word.append(plain(POS if i % 2 == 0 else NEG))
    word.extend(
        [ident(1), plain(NEG), ident(0), plain(POS), mark(), plain(NEG), ident(1), plain(POS)]
    )
    a2 = word.index((IDENT, 0), 1)
    b1 = word.index((IDENT, 1))
    b2 = word.index((IDENT, 1), b1 + 1)
    return MarkedSurface((tuple(word),), (((0, 0), (0, a2)), ((0, b1), (0, b2))))


def disjoint_union(a: MarkedSurface, b: MarkedSurface) -> MarkedSurface:
    """Disjoint union; pieces and pairs of b are re-indexed after a's."""
    offset = a.num_pieces
    shift = a.num_pairs

    def shift_word(word):
        return tuple(
            (IDENT, t[1] + shift) if t[0] == IDENT else t for t in word
        )

    words = a.words + tuple(shift_word(w) for w in b.words)
    pairs = a.pairs + tuple(
        ((pa[0] + offset, pa[1]), (pb[0] + offset, pb[1])) for pa, pb in b.pairs
    )
    return MarkedSurface(words, pairs)


# ---------------------------------------------------------------------------
# Surface validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryCircle:
    """One boundary circle of the glued surface, as traversed token positions."""

    tokens: tuple[tuple[int, int], ...]

    def num_marks(self, surface: MarkedSurface) -> int:
        return sum(1 for p, i in self.tokens if surface.token(p, i)[0] == MARK)


@dataclass(frozen=True)
class SurfaceInfo:
    euler: int
    circles: tuple[BoundaryCircle, ...]
    marks_per_circle: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]


def _pair_lookup(surface: MarkedSurface) -> dict[tuple[int, int], tuple[int, int]]:
    lookup = {}
    for (pos_a, pos_b) in surface.pairs:
        lookup[pos_a] = pos_b
        lookup[pos_b] = pos_a
    return lookup


def _trace_boundary(surface: MarkedSurface) -> list[BoundaryCircle]:
    """Boundary circles of the glued surface as token walks.

    When the walk reaches an identification segment it continues after the
    partner segment, because a segment's start corner is glued to its
    partner's end corner.
    """
    partner = _pair_lookup(surface)
    seen: set[tuple[int, int]] = set()
    circles = []
    for piece, word in enumerate(surface.words):
        for start in range(len(word)):
            if word[start][0] == IDENT or (piece, start) in seen:
                continue
            walk = []
            p, i = piece, start
            while (p, i) not in seen:
                seen.add((p, i))
                walk.append((p, i))
                p2, i2 = p, (i + 1) % len(surface.words[p])
                while surface.token(p2, i2)[0] == IDENT:
                    p2, i2 = partner[(p2, i2)]
                    i2 = (i2 + 1) % len(surface.words[p2])
                p, i = p2, i2
            circles.append(BoundaryCircle(tuple(walk)))
    return circles


def _surface_components(surface: MarkedSurface) -> list[tuple[int, ...]]:
    parent = list(range(surface.num_pieces))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (pa, _), (pb, _) in surface.pairs:
        ra, rb = find(pa), find(pb)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for p in range(surface.num_pieces):
        groups.setdefault(find(p), []).append(p)
    return [tuple(g) for g in groups.values()]


def validate_surface(surface: MarkedSurface) -> SurfaceInfo:
    """Check all marked-surface invariants; raise SurfaceError on failure."""
    errors = []
    seen_positions: dict[tuple[int, int], int] = {}
    for k, (pos_a, pos_b) in enumerate(surface.pairs):
        if pos_a == pos_b:
            errors.append(f"pair {k} identifies a segment with itself")
        for pos in (pos_a, pos_b):
            p, i = pos
            if not (0 <= p < surface.num_pieces and 0 <= i < len(surface.words[p])):
                errors.append(f"pair {k} references missing token {pos}")
                continue
            if surface.token(p, i) != (IDENT, k):
                errors.append(f"token at {pos} is not identification segment {k}")
            if pos in seen_positions:
                errors.append(f"segment {pos} belongs to more than one pair")
            seen_positions[pos] = k
    for p, word in enumerate(surface.words):
        if not word:
            errors.append(f"piece {p} has an empty boundary word")
        for i, tok in enumerate(word):
            if tok[0] == IDENT and (p, i) not in seen_positions:
                errors.append(f"identification segment at {(p, i)} is unpaired")
            elif tok[0] not in (MARK, PLAIN, IDENT):
                errors.append(f"unknown token {tok!r} at {(p, i)}")
    if errors:
        raise SurfaceError("; ".join(errors))

    circles = _trace_boundary(surface)
    marks_per_circle = []
    for circle in circles:
        n_marks = circle.num_marks(surface)
        if n_marks % 2 or n_marks < 2:
            errors.append(f"odd or deficient marked-point count {n_marks} on a boundary circle")
            marks_per_circle.append(n_marks)
            continue
        marks_per_circle.append(n_marks)
        # Labels must be constant between consecutive marks and flip at marks.
        toks = [surface.token(p, i) for p, i in circle.tokens]
        first_mark = next(j for j, t in enumerate(toks) if t[0] == MARK)
        expected = None
        for off in range(1, len(toks) + 1):
            t = toks[(first_mark + off) % len(toks)]
            if t[0] == MARK:
                if expected is None:
                    errors.append("two adjacent marked points with no segment between")
                expected = -expected if expected is not None else None
            else:
                if expected is None:
                    expected = t[1]
                elif t[1] != expected:
                    errors.append("labels do not alternate across marked points")

    for group in _surface_components(surface):
        if not any(
            surface.token(p, i)[0] != IDENT
            for p in group
            for i in range(len(surface.words[p]))
        ):
            errors.append(f"component with pieces {group} has empty boundary")

    if errors:
        raise SurfaceError("; ".join(errors))
    return SurfaceInfo(
        euler=surface.euler_characteristic(),
        circles=tuple(circles),
        marks_per_circle=tuple(marks_per_circle),
        components=tuple(_surface_components(surface)),
    )


def num_marks(surface: MarkedSurface) -> int:
    return sum(
        1 for word in surface.words for t in word if t[0] == MARK
    )


# ---------------------------------------------------------------------------
# Slot layout
# ---------------------------------------------------------------------------

# Slot keys are stable names for chord endpoints:
#   ("m", piece, word_index)            a marked point
#   ("x", pair, side, position)         crossing #position on one segment
SlotKey = tuple


class SlotLayout:
    """Slot indexing for a surface with a fixed crossing vector."""

    def __init__(self, surface: MarkedSurface, crossings: tuple[int, ...]):
        if len(crossings) != surface.num_pairs:
            raise DividingSetError(
                f"crossing vector has length {len(crossings)}, expected {surface.num_pairs}"
            )
        self.surface = surface
        self.crossings = tuple(crossings)
        self.slots: list[list[SlotKey]] = []
        self.index: dict[SlotKey, tuple[int, int]] = {}
        side_of: dict[tuple[int, int], tuple[int, int]] = {}
        for k, (pos_a, pos_b) in enumerate(surface.pairs):
            side_of[pos_a] = (k, 0)
            side_of[pos_b] = (k, 1)
        self._word_pos: list[list[tuple[int, int]]] = []
        for p, word in enumerate(surface.words):
            piece_slots: list[SlotKey] = []
            word_pos: list[tuple[int, int]] = []
            for i, tok in enumerate(word):
                if tok[0] == MARK:
                    piece_slots.append(("m", p, i))
                    word_pos.append((i, 0))
                elif tok[0] == IDENT:
                    pair, side = side_of[(p, i)]
                    for pos in range(crossings[pair]):
                        piece_slots.append(("x", pair, side, pos))
                        word_pos.append((i, pos))
            self.slots.append(piece_slots)
            self._word_pos.append(word_pos)
            for j, key in enumerate(piece_slots):
                self.index[key] = (p, j)

    def num_slots(self, piece: int) -> int:
        return len(self.slots[piece])

    def key(self, piece: int, slot: int) -> SlotKey:
        return self.slots[piece][slot]

    def partner_key(self, key: SlotKey) -> SlotKey:
        _, pair, side, pos = key
        r = self.crossings[pair]
        return ("x", pair, 1 - side, r - 1 - pos)

    def interval_for_word_position(self, piece: int, word_idx: int, sub: float) -> int:
        """Interval index (between slot i and i+1) containing a boundary point.

        The point is addressed by its token index and a sub-position within
        the token.  Returns -1 when the piece has no slots at all.
        """
        positions = self._word_pos[piece]
        if not positions:
            return -1
        count = 0
        for j, (tok_idx, pos) in enumerate(positions):
            if (tok_idx, pos) < (word_idx, sub):
                count = j + 1
        return (count - 1) % len(positions)

    def segment_gap_interval(self, pair: int, side: int, gap: int) -> tuple[int, int]:
        """(piece, interval) adjacent to the given gap of a segment side.

        Gap g on a segment with r crossings lies between crossing g-1 and
        crossing g (segment ends for g=0 and g=r).
        """
        piece, tok_idx = self.surface.pairs[pair][side]
        r = self.crossings[pair]
        if r == 0:
            return piece, self.interval_for_word_position(piece, tok_idx, -0.5)
        if gap == 0:
            first = self.index[("x", pair, side, 0)][1]
            return piece, (first - 1) % self.num_slots(piece)
        return piece, self.index[("x", pair, side, gap - 1)][1]


@lru_cache(maxsize=None)
def _layout(surface: MarkedSurface, crossings: tuple[int, ...]) -> SlotLayout:
    return SlotLayout(surface, crossings)


def layout_of(surface: MarkedSurface, k: DividingSet) -> SlotLayout:
    return _layout(surface, k.crossings)


# ---------------------------------------------------------------------------
# Faces of one piece
# ---------------------------------------------------------------------------

def is_noncrossing(num_slots: int, chords: tuple[Chord, ...]) -> bool:
    """Whether the pairing is a perfect non-crossing matching of the slots."""
    partner = {}
    for a, b in chords:
        if a == b or not (0 <= a < num_slots and 0 <= b < num_slots):
            return False
        if a in partner or b in partner:
            return False
        partner[a] = b
        partner[b] = a
    if len(partner) != num_slots:
        return False
    stack: list[int] = []
    for s in range(num_slots):
        if s < partner[s]:
            stack.append(s)
        else:
            if not stack or stack[-1] != partner[s]:
                return False
            stack.pop()
    return not stack


@dataclass(frozen=True)
class PieceFaces:
    """Planar faces of a disk piece cut along its chords.

    face_of_interval[i] is the face adjacent to the boundary interval
    between slot i and slot i+1 (cyclically); face 0 is the face adjacent
    to the interval preceding slot 0.  chord_sides maps each chord to
    (inner_face, outer_face), where the inner face is enclosed between
    the chord and the boundary arc from its lower to its higher slot.
    """

    num_faces: int
    face_of_interval: tuple[int, ...]
    chord_sides: dict

    def faces_of_chord(self, chord: Chord) -> tuple[int, int]:
        return self.chord_sides[chord]


def piece_faces(num_slots: int, chords: tuple[Chord, ...]) -> PieceFaces:
    if not is_noncrossing(num_slots, chords):
        raise DividingSetError("chord pairing is not a non-crossing perfect matching")
    partner = {}
    for a, b in chords:
        partner[a] = b
        partner[b] = a
    face_of_interval = [0] * num_slots
    chord_sides = {}
    stack: list[int] = []
    current = 0
    next_id = 1
    for s in range(num_slots):
        p = partner[s]
        if s < p:
            chord_sides[(s, p)] = (next_id, current)
            stack.append(current)
            current = next_id
            next_id += 1
        else:
            current = stack.pop()
        face_of_interval[s] = current
    return PieceFaces(next_id, tuple(face_of_interval), chord_sides)


# ---------------------------------------------------------------------------
# Regions: 2-coloring, Euler characteristics, isolation
# ---------------------------------------------------------------------------

class _ParityUnionFind:
    """Union-find whose edges carry a GF(2) parity (color flip or not)."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n

    def find(self, x: int) -> tuple[int, int]:
        path = []
        while self.parent[x] != x:
            path.append(x)
            x = self.parent[x]
        par = 0
        for node in reversed(path):
            par ^= self.parity[node]
            self.parent[node] = x
            self.parity[node] = par
        return x, self.parity[path[0]] if path else 0

    def relation(self, x: int) -> tuple[int, int]:
        root = x
        par = 0
        while self.parent[root] != root:
            par ^= self.parity[root]
            root = self.parent[root]
        return root, par

    def union(self, x: int, y: int, flip: int) -> bool:
        rx, px = self.relation(x)
        ry, py = self.relation(y)
        if rx == ry:
            return (px ^ py) == flip
        self.parent[rx] = ry
        self.parity[rx] = px ^ py ^ flip
        return True


@dataclass(frozen=True)
class Region:
    """One component of the complement of the multicurve."""

    sign: int
    euler: int
    touches_boundary: bool
    faces: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class RegionData:
    regions: tuple[Region, ...]
    region_of_face: dict
    faces: tuple[PieceFaces, ...]
    layout: SlotLayout


def validate_dividing_set(surface: MarkedSurface, k: DividingSet) -> None:
    """Structural validity: crossing vector, perfect non-crossing pairings."""
    layout = layout_of(surface, k)
    if len(k.chords) != surface.num_pieces:
        raise DividingSetError("chord data does not cover every piece")
    if k.closed < 0:
        raise DividingSetError("negative closed-component count")
    if any(c < 0 for c in k.crossings):
        raise DividingSetError("negative crossing count")
    for p in range(surface.num_pieces):
        if not is_noncrossing(layout.num_slots(p), k.chords[p]):
            raise DividingSetError(
                f"piece {p}: chords are not a non-crossing perfect matching of its slots"
            )


def analyze_regions(surface: MarkedSurface, k: DividingSet) -> RegionData:
    """Region decomposition with signs and Euler characteristics.

    Faces of the pieces are glued along the gaps of identified segments;
    signs flip across chords, persist across gaps, and must extend the
    plain-segment labels.  With all cells of the cut-open surface open,
    only faces and glued gaps contribute to a region's Euler
    characteristic, so chi(region) = #faces - #glued gaps.
    """
    validate_dividing_set(surface, k)
    layout = layout_of(surface, k)
    faces = tuple(
        piece_faces(layout.num_slots(p), k.chords[p]) for p in range(surface.num_pieces)
    )

    face_ids: dict[tuple[int, int], int] = {}
    for p in range(surface.num_pieces):
        for f in range(faces[p].num_faces):
            face_ids[(p, f)] = len(face_ids)
    uf = _ParityUnionFind(len(face_ids))

    def face_at(piece: int, interval: int) -> int:
        if interval == -1:
            return face_ids[(piece, 0)]
        return face_ids[(piece, faces[piece].face_of_interval[interval])]

    consistent = True
    for p in range(surface.num_pieces):
        for chord, (inner, outer) in faces[p].chord_sides.items():
            consistent &= uf.union(face_ids[(p, inner)], face_ids[(p, outer)], 1)

    gap_edges = []
    for pair in range(surface.num_pairs):
        r = k.crossings[pair]
        for gap in range(r + 1):
            pa, ia = layout.segment_gap_interval(pair, 0, gap)
            pb, ib = layout.segment_gap_interval(pair, 1, r - gap)
            fa, fb = face_at(pa, ia), face_at(pb, ib)
            gap_edges.append((fa, fb))
            consistent &= uf.union(fa, fb, 0)
    if not consistent:
        raise ColoringError("no consistent 2-coloring of the complement exists")

    # Anchor colors with the plain-segment labels.
    anchor: dict[int, int] = {}
    plain_faces: set[int] = set()
    for p, word in enumerate(surface.words):
        for i, tok in enumerate(word):
            if tok[0] != PLAIN:
                continue
            interval = layout.interval_for_word_position(p, i, -0.5)
            fid = face_at(p, interval)
            plain_faces.add(fid)
            root, par = uf.relation(fid)
            sign = tok[1] if par == 0 else -tok[1]
            if root in anchor and anchor[root] != sign:
                raise ColoringError("boundary labels force conflicting colors")
            anchor[root] = sign

    # Group faces into regions along gap edges only.
    region_uf = _ParityUnionFind(len(face_ids))
    for fa, fb in gap_edges:
        region_uf.union(fa, fb, 0)
    members: dict[int, list[int]] = {}
    for fid in range(len(face_ids)):
        root, _ = region_uf.relation(fid)
        members.setdefault(root, []).append(fid)
    gap_count: dict[int, int] = {}
    for fa, _ in gap_edges:
        root, _ = region_uf.relation(fa)
        gap_count[root] = gap_count.get(root, 0) + 1

    id_to_face = {v: kk for kk, v in face_ids.items()}
    regions = []
    region_of_face = {}
    for root in sorted(members):
        fids = members[root]
        color_root, par0 = uf.relation(fids[0])
        if color_root not in anchor:
            raise ColoringError("a region is not connected to any labeled boundary")
        sign = anchor[color_root] if par0 == 0 else -anchor[color_root]
        euler = len(fids) - gap_count.get(root, 0)
        touches = any(fid in plain_faces for fid in fids)
        region = Region(
            sign=sign,
            euler=euler,
            touches_boundary=touches,
            faces=tuple(sorted(id_to_face[f] for f in fids)),
        )
        for fid in fids:
            region_of_face[id_to_face[fid]] = len(regions)
        regions.append(region)

    total_marks = num_marks(surface)
    expected = surface.euler_characteristic() + total_marks // 2
    got = sum(r.euler for r in regions)
    if got != expected:
        raise DividingSetError(
            f"internal Euler bookkeeping failed: regions sum to {got}, expected {expected}"
        )
    return RegionData(tuple(regions), region_of_face, faces, layout)


def label_regions(surface: MarkedSurface, k: DividingSet) -> tuple[Region, ...]:
    """Connected components of the complement, with signs and Euler numbers."""
    return analyze_regions(surface, k).regions


def euler_grading(surface: MarkedSurface, k: DividingSet) -> int:
    """chi(positive regions) - chi(negative regions) of the embedded part.

    Contractible closed components carry no position data, so they do not
    contribute; every class with such components is zero anyway.
    """
    return sum(r.sign * r.euler for r in label_regions(surface, k))


def is_isolating(surface: MarkedSurface, k: DividingSet) -> bool:
    """Whether some complementary region avoids the surface boundary."""
    if k.closed > 0:
        return True
    return any(not r.touches_boundary for r in label_regions(surface, k))


def is_colorable(surface: MarkedSurface, k: DividingSet) -> bool:
    try:
        analyze_regions(surface, k)
        return True
    except ColoringError:
        return False


# ---------------------------------------------------------------------------
# Crossingless matchings on the disk
# ---------------------------------------------------------------------------

def noncrossing_pairings(num_slots: int):
    """All non-crossing perfect matchings of range(num_slots), as chord tuples."""
    if num_slots % 2:
        return
    if num_slots == 0:
        yield ()
        return
    slots = list(range(num_slots))

    def rec(points):
        if not points:
            yield ()
            return
        first = points[0]
        for j in range(1, len(points), 2):
            left = points[1:j]
            right = points[j + 1:]
            for lp in rec(left):
                for rp in rec(right):
                    yield ((first, points[j]),) + lp + rp

    for pairing in rec(slots):
        yield tuple(sorted(pairing))


def enumerate_matchings(n: int) -> list[DividingSet]:
    """The crossingless matchings of the disk with 2n points.

    Ordered by descending grading, then lexicographically on the pairing
    read from the basepoint.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    surface = disk(2 * n)
    out = []
    for pairing in noncrossing_pairings(2 * n):
        k = make_dividing_set((), (pairing,))
        out.append((-euler_grading(surface, k), k.encode(), k))
    out.sort(key=lambda t: t[:2])
    return [k for _, _, k in out]


def catalan(n: int) -> int:
    """Catalan number C_n, by the additive recurrence."""
    c = [1] + [0] * n
    for m in range(1, n + 1):
        c[m] = sum(c[i] * c[m - 1 - i] for i in range(m))
    return c[n]


# ---------------------------------------------------------------------------
# Canonical form: greedy bigon reduction
# ---------------------------------------------------------------------------

def _chords_as_keys(layout: SlotLayout, k: DividingSet) -> list[set]:
    out = []
    for p in range(layout.surface.num_pieces):
        out.append(
            {frozenset((layout.key(p, a), layout.key(p, b))) for a, b in k.chords[p]}
        )
    return out


def _keys_to_dividing_set(
    surface: MarkedSurface, crossings: tuple[int, ...], key_chords: list[set], closed: int
) -> DividingSet:
    layout = _layout(surface, crossings)
    chords = []
    for p in range(surface.num_pieces):
        pairs = []
        for chord in key_chords[p]:
            a, b = tuple(chord)
            pairs.append((layout.index[a][1], layout.index[b][1]))
        chords.append(pairs)
    return make_dividing_set(crossings, chords, closed)


def _find_bigon(layout: SlotLayout, k: DividingSet):
    """First chord joining consecutive crossings of one segment side."""
    for p in range(layout.surface.num_pieces):
        for a, b in k.chords[p]:
            ka, kb = layout.key(p, a), layout.key(p, b)
            if ka[0] != "x" or kb[0] != "x":
                continue
            if ka[1] == kb[1] and ka[2] == kb[2] and abs(ka[3] - kb[3]) == 1:
                return p, (a, b)
    return None


def canonicalize(surface: MarkedSurface, k: DividingSet) -> DividingSet:
    """Greedy bigon reduction to the canonical bigon-free representative.

    A bigon is a chord joining two consecutive crossings of one
    identification segment.  Removing it deletes both crossings (and the
    partner crossings), reconnects the partner chords, and increments the
    contractible count when the partner strand closes up.
    """
    validate_dividing_set(surface, k)
    crossings = list(k.crossings)
    closed = k.closed
    current = k
    while True:
        layout = _layout(surface, tuple(crossings))
        found = _find_bigon(layout, current)
        if found is None:
            return current
        p, (a, b) = found
        ka = layout.key(p, a)
        kb = layout.key(p, b)
        pair = ka[1]
        lo_pos = min(ka[3], kb[3])
        key_chords = _chords_as_keys(layout, current)
        key_chords[p].discard(frozenset((ka, kb)))
        pa, pb = layout.partner_key(ka), layout.partner_key(kb)
        ppiece = layout.index[pa][0]
        if frozenset((pa, pb)) in key_chords[ppiece]:
            key_chords[ppiece].discard(frozenset((pa, pb)))
            closed += 1
        else:
            end_a = end_b = None
            for chord in list(key_chords[ppiece]):
                if pa in chord:
                    end_a = next(iter(chord - {pa}))
                    key_chords[ppiece].discard(chord)
                if pb in chord:
                    end_b = next(iter(chord - {pb}))
                    key_chords[ppiece].discard(chord)
            key_chords[ppiece].add(frozenset((end_a, end_b)))

        # Renumber the surviving crossings of this pair.
        def renumber(key: SlotKey) -> SlotKey:
            if key[0] == "x" and key[1] == pair:
                _, _, side, pos = key
                removed = (lo_pos, lo_pos + 1) if side == ka[2] else (
                    crossings[pair] - 2 - lo_pos,
                    crossings[pair] - 1 - lo_pos,
                )
                shift = sum(1 for r in removed if pos > r)
                return ("x", pair, side, pos - shift)
            return key

        key_chords = [
            {frozenset(renumber(x) for x in chord) for chord in piece}
            for piece in key_chords
        ]
        crossings[pair] -= 2
        current = _keys_to_dividing_set(surface, tuple(crossings), key_chords, closed)
        closed = current.closed


def is_efficient(surface: MarkedSurface, k: DividingSet) -> bool:
    """Whether k is bigon-free (already in canonical position)."""
    layout = layout_of(surface, k)
    return _find_bigon(layout, k) is None


# ---------------------------------------------------------------------------
# Enumeration of canonical dividing sets
# ---------------------------------------------------------------------------

def enumerate_dividing_sets(surface: MarkedSurface, bound: int) -> list[DividingSet]:
    """All canonical dividing sets with at most `bound` crossings per segment.

    Contractible closed components are excluded (their classes vanish and
    their position is not recorded); closed components that cross
    identification segments are included.  Ordered by descending grading,
    then by encoding.
    """
    if bound < 0:
        raise ValueError("bound must be >= 0")
    validate_surface(surface)
    out = []
    for crossings in itertools.product(range(bound + 1), repeat=surface.num_pairs):
        layout = _layout(surface, crossings)
        counts = [layout.num_slots(p) for p in range(surface.num_pieces)]
        if any(c % 2 for c in counts):
            continue
        for chords in itertools.product(*(noncrossing_pairings(c) for c in counts)):
            k = DividingSet(crossings, chords, 0)
            if not is_efficient(surface, k):
                continue
            try:
                e = euler_grading(surface, k)
            except ColoringError:
                continue
            out.append((-e, k.encode(), k))
    out.sort(key=lambda t: t[:2])
    return [k for _, _, k in out]


# ---------------------------------------------------------------------------
# Bypass surgery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BypassArc:
    """An attachment arc inside one piece, meeting the multicurve 3 times.

    The arc starts on start_chord, crosses cross_chord once, and ends on
    end_chord.  start_side selects which side of cross_chord the start
    segment lies on: "inner" is the face enclosed between the chord and
    the boundary arc from its lower to its higher slot.  When the arc
    touches one chord more than once, cut_order fixes the order of the
    cut points along that chord (a tuple of role names "start", "cross",
    "end" in slot order); leave it None for the default.
    """

    piece: int
    start_chord: Chord
    cross_chord: Chord
    end_chord: Chord
    start_side: str = "outer"
    cut_order: tuple | None = None


def _chord_orientation(chord: Chord, face: int, sides: tuple[int, int]) -> tuple[int, int]:
    """(u, v) slot ends of a chord as traversed along the given face."""
    inner, outer = sides
    lo, hi = chord
    if face == outer:
        return lo, hi
    if face == inner:
        return hi, lo
    raise BypassError("chord is not adjacent to the required face")


def _surgery(
    surface: MarkedSurface,
    k: DividingSet,
    arc: BypassArc,
    order: tuple[str, ...] | None,
) -> tuple[DividingSet, DividingSet] | None:
    """Perform the two reconnections for one bypass arc.

    Returns (front, back) before canonicalization, or None when the cut
    order is not geometrically realizable (the reconnection would cross).
    """
    p = arc.piece
    layout = layout_of(surface, k)
    faces = piece_faces(layout.num_slots(p), k.chords[p])
    for chord in (arc.start_chord, arc.cross_chord, arc.end_chord):
        if chord not in faces.chord_sides:
            raise BypassError(f"chord {chord} is not part of the dividing set")
    inner, outer = faces.faces_of_chord(arc.cross_chord)
    if arc.start_side == "inner":
        f0, f1 = inner, outer
    elif arc.start_side == "outer":
        f0, f1 = outer, inner
    else:
        raise BypassError("start_side must be 'inner' or 'outer'")

    u_a, v_a = _chord_orientation(
        arc.start_chord, f0, faces.faces_of_chord(arc.start_chord)
    )
    u_b, v_b = _chord_orientation(arc.cross_chord, f0, faces.faces_of_chord(arc.cross_chord))
    u_c, v_c = _chord_orientation(arc.end_chord, f1, faces.faces_of_chord(arc.end_chord))

    roles = {
        "start": (arc.start_chord, u_a, v_a),
        "cross": (arc.cross_chord, u_b, v_b),
        "end": (arc.end_chord, u_c, v_c),
    }
    by_chord: dict[Chord, list[str]] = {}
    for name, (chord, _, _) in roles.items():
        by_chord.setdefault(chord, []).append(name)
    if order is None:
        if any(len(names) > 1 for names in by_chord.values()):
            raise BypassError("cut_order is required when the arc touches a chord twice")
        order = ()
    ordering: dict[Chord, tuple[str, ...]] = {}
    pos = 0
    for chord, names in sorted(by_chord.items()):
        if len(names) == 1:
            ordering[chord] = (names[0],)
        else:
            take = order[pos: pos + len(names)]
            if sorted(take) != sorted(names):
                raise BypassError(f"cut order {order!r} does not cover chord {chord}")
            ordering[chord] = tuple(take)
            pos += len(names)

    # Node names: chord slots, plus (role, "u"/"v") stub ends at each cut.
    edges: list[tuple] = []
    for chord in k.chords[p]:
        if chord not in by_chord:
            edges.append((("s", chord[0]), ("s", chord[1])))
    for chord, names in ordering.items():
        lo, hi = chord
        seq: list[tuple] = [("s", lo)]
        for name in names:
            _, u, v = roles[name]
            lo_side = (name, "u") if u == lo else (name, "v")
            hi_side = (name, "v") if u == lo else (name, "u")
            seq.append(lo_side)
            seq.append(hi_side)
        seq.append(("s", hi))
        for i in range(0, len(seq), 2):
            edges.append((seq[i], seq[i + 1]))

    def trace(local_pairs: list[tuple]) -> tuple[list[Chord], int] | None:
        """Resolve stubs plus a local re-pairing into chords and loops.

        Slot nodes have degree 1 and stub-end nodes degree 2, so the edge
        set is a disjoint union of slot-to-slot paths (the new chords) and
        cycles (new contractible components).  Parallel edges are legal.
        """
        all_edges = edges + local_pairs
        incident: dict[tuple, list[int]] = {}
        for eid, (x, y) in enumerate(all_edges):
            incident.setdefault(x, []).append(eid)
            incident.setdefault(y, []).append(eid)
        for node, eids in incident.items():
            if len(eids) != (1 if node[0] == "s" else 2):
                return None
        used: set[int] = set()
        new_chords: list[Chord] = []
        for slot in range(layout.num_slots(p)):
            node = ("s", slot)
            eid = incident[node][0]
            if eid in used:
                continue
            cur = node
            while True:
                used.add(eid)
                x, y = all_edges[eid]
                cur = y if x == cur else x
                if cur[0] == "s":
                    break
                e1, e2 = incident[cur]
                eid = e2 if e1 == eid else e1
            new_chords.append(tuple(sorted((slot, cur[1]))))
        loops = 0
        rem = set(range(len(all_edges))) - used
        while rem:
            start_eid = rem.pop()
            cur = all_edges[start_eid][0]
            cur_eid = start_eid
            while True:
                x, y = all_edges[cur_eid]
                cur = y if x == cur else x
                e1, e2 = incident[cur]
                cur_eid = e2 if e1 == cur_eid else e1
                if cur_eid == start_eid:
                    break
                rem.discard(cur_eid)
            loops += 1
        return new_chords, loops

    original = [(("start", "u"), ("start", "v")),
                (("cross", "u"), ("cross", "v")),
                (("end", "u"), ("end", "v"))]
    front_pairs = [(("start", "u"), ("end", "u")),
                   (("cross", "v"), ("end", "v")),
                   (("cross", "u"), ("start", "v"))]
    back_pairs = [(("start", "u"), ("cross", "v")),
                  (("start", "v"), ("end", "v")),
                  (("cross", "u"), ("end", "u"))]

    check = trace(original)
    if check is None or sorted(check[0]) != sorted(k.chords[p]) or check[1]:
        return None

    results = []
    for local in (front_pairs, back_pairs):
        traced = trace(local)
        if traced is None:
            return None
        new_chords, loops = traced
        if not is_noncrossing(layout.num_slots(p), tuple(sorted(new_chords))):
            return None
        chords = list(k.chords)
        chords = [list(c) for c in chords]
        chords[p] = new_chords
        results.append(
            make_dividing_set(k.crossings, chords, k.closed + loops)
        )
    return results[0], results[1]


def _cut_orders(arc: BypassArc) -> list[tuple[str, ...] | None]:
    by_chord: dict[Chord, list[str]] = {}
    for name, chord in (
        ("start", arc.start_chord),
        ("cross", arc.cross_chord),
        ("end", arc.end_chord),
    ):
        by_chord.setdefault(chord, []).append(name)
    if all(len(v) == 1 for v in by_chord.values()):
        return [None]
    pools = []
    for chord, names in sorted(by_chord.items()):
        if len(names) > 1:
            pools.append(list(itertools.permutations(names)))
    return [tuple(itertools.chain.from_iterable(combo)) for combo in itertools.product(*pools)]


def bypass_triple(
    surface: MarkedSurface, k: DividingSet, arc: BypassArc
) -> tuple[DividingSet, DividingSet]:
    """The other two members of the bypass triple through k along arc.

    Results are canonicalized.  Outside a neighborhood of the arc all
    three configurations agree; inside, they run through the three
    grading-preserving configurations of the six-endpoint disk.
    """
    validate_dividing_set(surface, k)
    orders = [arc.cut_order] if arc.cut_order is not None else _cut_orders(arc)
    base_e = euler_grading(surface, k)
    for order in orders:
        raw = _surgery(surface, k, arc, order)
        if raw is None:
            continue
        front, back = (canonicalize(surface, s) for s in raw)
        ok = True
        for result in (front, back):
            if not is_colorable(surface, result):
                ok = False
                break
            if result.closed == k.closed and euler_grading(surface, result) != base_e:
                ok = False
                break
        if ok:
            return front, back
    raise BypassError("no realizable bypass arc with the given data")


def iter_bypass_surgeries(surface: MarkedSurface, k: DividingSet):
    """All realizable bypass surgeries on k, as (front, back) canonical pairs.

    Enumerates every (start, cross, end, side, cut order) combination and
    keeps those whose reconnections are planar, consistently colorable,
    and grading-preserving.
    """
    base_e = euler_grading(surface, k)
    layout = layout_of(surface, k)
    for p in range(surface.num_pieces):
        faces = piece_faces(layout.num_slots(p), k.chords[p])
        adjacency: dict[int, list[Chord]] = {}
        for chord, (inner, outer) in faces.chord_sides.items():
            adjacency.setdefault(inner, []).append(chord)
            adjacency.setdefault(outer, []).append(chord)
        for cross in k.chords[p]:
            inner, outer = faces.faces_of_chord(cross)
            for side, f0, f1 in (("inner", inner, outer), ("outer", outer, inner)):
                for start in adjacency.get(f0, ()):
                    for end in adjacency.get(f1, ()):
                        arc = BypassArc(p, start, cross, end, side)
                        for order in _cut_orders(arc):
                            raw = _surgery(surface, k, arc, order)
                            if raw is None:
                                continue
                            front, back = (canonicalize(surface, s) for s in raw)
                            ok = True
                            for result in (front, back):
                                if not is_colorable(surface, result):
                                    ok = False
                                    break
                                if result.closed == k.closed and \
                                        euler_grading(surface, result) != base_e:
                                    ok = False
                                    break
                            if ok:
                                yield arc, front, back

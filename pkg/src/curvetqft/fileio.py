"""JSON interchange formats for surfaces, dividing sets, gluing data, modules.

The dividing-set format is the interchange unit for every CLI command:

    {
      "surface": {
        "pieces": [["ident", "plain", "mark", ...], ...],
        "identifications": [[[0, 0], [0, 6]], ...],
        "labels": ["-", "+", ...]
      },
      "crossings": [2],
      "chords": [[[0, 1], [0, 4]], ...],
      "closed": 0
    }

pieces lists each boundary word clockwise from the piece basepoint;
labels run over the plain tokens in reading order (piece by piece, token
by token).  Slot indices count marked points and seam crossings clockwise
from the basepoint; a bare integer slot abbreviates [0, slot].
"""

from __future__ import annotations

import json
from typing import Any

from .gluemaps import BoundaryArc, GluingDatum
from .surfaces import (
    IDENT,
    MARK,
    PLAIN,
    DividingSet,
    MarkedSurface,
    SurfaceError,
    make_dividing_set,
    validate_surface,
)
from .tqftcore import TqftModule


class FormatError(ValueError):
    """The file content does not follow the documented schema."""


def surface_to_dict(surface: MarkedSurface) -> dict:
    pieces = []
    labels = []
    for word in surface.words:
        tokens = []
        for tok in word:
            tokens.append(tok[0])
            if tok[0] == PLAIN:
                labels.append("+" if tok[1] > 0 else "-")
        pieces.append(tokens)
    idents = [
        [list(pos_a), list(pos_b)] for pos_a, pos_b in surface.pairs
    ]
    return {"pieces": pieces, "identifications": idents, "labels": labels}


def surface_from_dict(data: dict) -> MarkedSurface:
    try:
        pieces = data["pieces"]
        idents = data["identifications"]
        labels = list(data["labels"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"surface object must carry pieces/identifications/labels: {exc}")
    pair_of_pos = {}
    for k, pair in enumerate(idents):
        if len(pair) != 2:
            raise FormatError(f"identification {k} must list two positions")
        for pos in pair:
            pair_of_pos[tuple(pos)] = k
    labels_iter = iter(labels)
    words = []
    for p, tokens in enumerate(pieces):
        word = []
        for i, name in enumerate(tokens):
            if name == MARK:
                word.append((MARK,))
            elif name == PLAIN:
                try:
                    raw = next(labels_iter)
                except StopIteration:
                    raise FormatError("labels list is shorter than the plain tokens")
                if raw not in ("+", "-"):
                    raise FormatError(f"label must be '+' or '-', got {raw!r}")
                word.append((PLAIN, 1 if raw == "+" else -1))
            elif name == IDENT:
                if (p, i) not in pair_of_pos:
                    raise FormatError(f"identification segment at {(p, i)} is not listed")
                word.append((IDENT, pair_of_pos[(p, i)]))
            else:
                raise FormatError(f"unknown token {name!r}")
        words.append(tuple(word))
    if next(labels_iter, None) is not None:
        raise FormatError("labels list is longer than the plain tokens")
    pairs = tuple((tuple(a), tuple(b)) for a, b in (tuple(pair) for pair in idents))
    surface = MarkedSurface(tuple(words), pairs)
    validate_surface(surface)
    return surface


def dividing_set_to_dict(surface: MarkedSurface, k: DividingSet) -> dict:
    chords = []
    for p, piece_chords in enumerate(k.chords):
        for a, b in piece_chords:
            chords.append([[p, a], [p, b]])
    return {
        "surface": surface_to_dict(surface),
        "crossings": list(k.crossings),
        "chords": chords,
        "closed": k.closed,
    }


def _slot_ref(raw: Any) -> tuple[int, int]:
    if isinstance(raw, int):
        return 0, raw
    if isinstance(raw, (list, tuple)) and len(raw) == 2:
        return int(raw[0]), int(raw[1])
    raise FormatError(f"slot reference must be an int or [piece, slot]: {raw!r}")


def dividing_set_from_dict(data: dict) -> tuple[MarkedSurface, DividingSet]:
    surface = surface_from_dict(data["surface"])
    crossings = tuple(int(c) for c in data.get("crossings", [0] * surface.num_pairs))
    if len(crossings) != surface.num_pairs:
        raise FormatError("crossings list must match the identification count")
    per_piece: list[list] = [[] for _ in surface.words]
    for raw in data.get("chords", []):
        if len(raw) != 2:
            raise FormatError(f"chord must pair two slots: {raw!r}")
        (pa, a), (pb, b) = _slot_ref(raw[0]), _slot_ref(raw[1])
        if pa != pb:
            raise FormatError("a chord cannot join different pieces")
        per_piece[pa].append((a, b))
    k = make_dividing_set(crossings, per_piece, int(data.get("closed", 0)))
    return surface, k


def gluing_datum_to_dict(datum: GluingDatum) -> dict:
    return {
        "surface": surface_to_dict(datum.source),
        "gamma": [datum.gamma.piece, datum.gamma.start, datum.gamma.end],
        "gamma_prime": [
            datum.gamma_prime.piece,
            datum.gamma_prime.start,
            datum.gamma_prime.end,
        ],
    }


def gluing_datum_from_dict(data: dict) -> GluingDatum:
    surface = surface_from_dict(data["surface"])
    try:
        g = BoundaryArc(*(int(x) for x in data["gamma"]))
        gp = BoundaryArc(*(int(x) for x in data["gamma_prime"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"gamma arcs must be [piece, start, end]: {exc}")
    return GluingDatum(surface, g, gp)


def module_to_dict(module: TqftModule) -> dict:
    """Stable export of a built module: generators, relations, basis."""
    relations = []
    for row in module.relation_rows:
        indices = []
        i = 0
        r = row
        while r:
            if r & 1:
                indices.append(i)
            r >>= 1
            i += 1
        relations.append(indices)
    basis_rows = []
    for row in module.reduced_rows:
        bits = []
        i = 0
        r = row
        while r:
            if r & 1:
                bits.append(i)
            r >>= 1
            i += 1
        basis_rows.append(bits)
    return {
        "surface": surface_to_dict(module.surface),
        "bound": module.bound,
        "generators": [
            {
                "crossings": list(g.crossings),
                "chords": [[[p, a], [p, b]] for p in range(len(g.chords))
                           for a, b in g.chords[p]],
                "closed": g.closed,
                "grading": module.gradings[i],
            }
            for i, g in enumerate(module.generators)
        ],
        "relations": relations,
        "reduced_relation_rows": basis_rows,
        "basis_generators": list(module.basis_indices),
        "rank": module.rank,
        "graded_ranks": {str(e): r for e, r in sorted(module.graded_ranks().items())},
        "expected_rank": module.expected_rank,
        "warnings": list(module.warnings),
    }


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}")


def dump_json(obj: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")

"""Attribute vocabulary, label vectors, similarity, and query text handling."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

DEFAULT_COLORS = ("red", "green", "blue", "yellow", "black")
DEFAULT_SHAPES = ("cube", "cuboid", "cylinder", "sphere")

# label vector length: slot 0 = color id, slot 1 = shape id, 0 = null
LABEL_SIZE = 2

_TOKEN_RE = re.compile(r"[a-z0-9]+")


class UnknownTokenError(ValueError):
    pass


@dataclass(frozen=True)
class AttributeVocabulary:
    """Ordered token lists; token ids are positions + 1 across colors|shapes|names.

    Instances are immutable; name registration returns an extended copy so
    existing ids never shift.
    """

    colors: tuple[str, ...] = DEFAULT_COLORS
    shapes: tuple[str, ...] = DEFAULT_SHAPES
    names: tuple[str, ...] = ()

    def __post_init__(self):
        all_tokens = self.colors + self.shapes + self.names
        if len(set(all_tokens)) != len(all_tokens):
            raise ValueError("vocabulary tokens must be unique across colors/shapes/names")

    @property
    def tokens(self) -> tuple[str, ...]:
        return self.colors + self.shapes + self.names

    @property
    def size(self) -> int:
        """Number of real tokens; valid ids are 1..size (0 is the null id)."""
        return len(self.tokens)

    def token_id(self, token: str) -> int:
        try:
            return self.tokens.index(token) + 1
        except ValueError:
            raise UnknownTokenError(f"unknown token: {token!r}") from None

    def token_of(self, token_id: int) -> str:
        if not 1 <= token_id <= self.size:
            raise UnknownTokenError(f"token id out of range: {token_id}")
        return self.tokens[token_id - 1]

    # label-slot ids are positions within the color/shape list + 1
    def color_id(self, color: str) -> int:
        if color not in self.colors:
            raise UnknownTokenError(f"unknown color: {color!r}")
        return self.colors.index(color) + 1

    def shape_id(self, shape: str) -> int:
        if shape not in self.shapes:
            raise UnknownTokenError(f"unknown shape: {shape!r}")
        return self.shapes.index(shape) + 1

    def color_name(self, color_id: int) -> str:
        return self.colors[color_id - 1]

    def shape_name(self, shape_id: int) -> str:
        return self.shapes[shape_id - 1]

    def with_name(self, name: str) -> "AttributeVocabulary":
        if name in self.tokens:
            raise ValueError(f"token already registered: {name!r}")
        return AttributeVocabulary(self.colors, self.shapes, self.names + (name,))

    def to_json(self) -> str:
        return json.dumps(
            {"colors": list(self.colors), "shapes": list(self.shapes), "names": list(self.names)},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "AttributeVocabulary":
        d = json.loads(text)
        return cls(tuple(d["colors"]), tuple(d["shapes"]), tuple(d.get("names", ())))


# Labels are plain int tuples of length LABEL_SIZE so they hash and compare cheaply.
AttributeLabel = tuple


def make_label(color_id: int = 0, shape_id: int = 0) -> AttributeLabel:
    return (int(color_id), int(shape_id))


def similarity(a1, a2, normalize: str = "total") -> float:
    """Fraction of label slots that agree with a nonzero value.

    ``normalize="total"`` divides by the label length (the literal published
    form; partial queries never reach 1.0). ``"specified"`` divides by the
    number of slots either label fills, an opt-in alternative that keeps the
    function symmetric.
    """
    if len(a1) != len(a2):
        raise ValueError(f"label length mismatch: {len(a1)} vs {len(a2)}")
    matches = sum(1 for x, y in zip(a1, a2) if x == y and x != 0)
    if normalize == "total":
        denom = len(a1)
    elif normalize == "specified":
        denom = sum(1 for x, y in zip(a1, a2) if x != 0 or y != 0)
        if denom == 0:
            return 0.0
    else:
        raise ValueError(f"unknown normalize mode: {normalize!r}")
    return matches / denom


def tokenize(text: str, vocab: AttributeVocabulary) -> list[int]:
    """Lowercase, strip punctuation, split, and map to token ids."""
    words = _TOKEN_RE.findall(text.lower())
    return [vocab.token_id(w) for w in words]


def label_of(text: str, vocab: AttributeVocabulary) -> AttributeLabel:
    """Attribute label of a query string; name tokens carry no attribute slot."""
    color_id = 0
    shape_id = 0
    for word in _TOKEN_RE.findall(text.lower()):
        if word in vocab.colors:
            color_id = vocab.color_id(word)
        elif word in vocab.shapes:
            shape_id = vocab.shape_id(word)
        elif word in vocab.names:
            pass
        else:
            raise UnknownTokenError(f"unknown token: {word!r}")
    return make_label(color_id, shape_id)


@dataclass(frozen=True)
class QueryText:
    text: str
    tokens: tuple[int, ...]
    label: AttributeLabel

    @classmethod
    def from_text(cls, text: str, vocab: AttributeVocabulary) -> "QueryText":
        return cls(text, tuple(tokenize(text, vocab)), label_of(text, vocab))


QUERY_MODES = ("both", "color-only", "shape-only", "named")


def make_query(obj, mode: str, vocab: AttributeVocabulary) -> QueryText:
    """Query text for an object's ground-truth attributes.

    Grammar is fixed to "<name,>? <color>? <shape>?". ``obj`` needs ``label``
    (color id, shape id) and, for named mode, a ``name`` token id.
    """
    color_id, shape_id = obj.label
    if mode == "both":
        text = f"{vocab.color_name(color_id)} {vocab.shape_name(shape_id)}"
    elif mode == "color-only":
        text = vocab.color_name(color_id)
    elif mode == "shape-only":
        text = vocab.shape_name(shape_id)
    elif mode == "named":
        name_id = getattr(obj, "name", None)
        if not name_id:
            raise ValueError("named query requires a registered name token")
        name = vocab.token_of(name_id)
        text = f"{name}, {vocab.color_name(color_id)} {vocab.shape_name(shape_id)}"
    else:
        raise ValueError(f"unknown query mode: {mode!r}")
    return QueryText.from_text(text, vocab)

"""Parser for the whitespace word syntax over declared generator names.

A word is a sequence of tokens ``name`` or ``name^k`` (k a nonzero integer,
negative allowed) separated by whitespace; the single token ``1`` denotes
the identity, so formatted output parses back.  Names resolve through the
factors' name maps; each token becomes one factor element (via the factor
power operation) and tokens are multiplied left to right.
"""

from __future__ import annotations

import re

from .factors import FactorElement
from .normal_forms import IDENTITY, FreeProduct, Letter, NormalForm

_TOKEN = re.compile(r"\S+")
_SHAPE = re.compile(r"(?P<name>[A-Za-z_][A-Za-z0-9_]*)(?:\^(?P<exp>[+-]?\d+))?\Z")


class WordParseError(ValueError):
    """Unparseable word; ``position`` is the character offset of the token."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


def generator_table(product: FreeProduct) -> dict[str, tuple[int, FactorElement]]:
    """name -> (factor index, element) for every parseable name."""
    table: dict[str, tuple[int, FactorElement]] = {}
    for idx in (1, 2):
        for name, elem in product.factor(idx).name_map().items():
            if name in table:
                raise WordParseError(f"generator name {name!r} is declared by both factors", 0)
            table[name] = (idx, elem)
    return table


def parse_word(product: FreeProduct, text: str) -> NormalForm:
    if not isinstance(text, str):
        raise WordParseError(f"word must be a string, got {type(text).__name__}", 0)
    table = generator_table(product)
    word: NormalForm = IDENTITY
    for match in _TOKEN.finditer(text):
        token, pos = match.group(), match.start()
        if token == "1":
            continue  # identity token contributes nothing
        shape = _SHAPE.match(token)
        if shape is None:
            raise WordParseError(f"bad token {token!r}", pos)
        name = shape["name"]
        exponent = int(shape["exp"]) if shape["exp"] else 1
        if name not in table:
            raise WordParseError(f"unknown generator {name!r}", pos)
        idx, elem = table[name]
        grp = product.factor(idx)
        value = grp.power(elem, exponent)
        if grp.is_identity(value):
            continue  # e.g. a^2 in an order-2 factor
        word = product.multiply(word, (Letter(idx, value),))
    return word


def parse_factor_element(
    product: FreeProduct, factor_index: int, text: str
) -> FactorElement:
    """Parse a word that must land in the given factor as a single letter."""
    word = parse_word(product, text)
    if len(word) != 1 or word[0].factor != factor_index:
        raise WordParseError(
            f"{text!r} is not a non-identity element of factor {factor_index}", 0
        )
    return word[0].value

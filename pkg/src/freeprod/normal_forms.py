"""Normal forms and the conjugacy calculus of a free product G1 * G2.

An element is a tuple of ``Letter``s, each letter a non-identity element of
factor 1 or factor 2, with consecutive letters in distinct factors; the
empty tuple is the group identity.  Normal forms are unique, so tuple
equality is group equality and tuples serve directly as hash keys.

Multiplication joins two normal forms at the seam: boundary letters from
the same factor are multiplied there, cancelling (product trivial, keep
going inward) or consolidating (product nontrivial, single merged letter).

Cyclic reduction conjugates away mutually-inverse boundary pairs and, if
the word is still weakly reducible, performs one final consolidating
conjugation.  The returned ``Conjugation`` satisfies

    original == conjugator * result * conjugator^-1

Conjugacy for cyclically reduced words of length >= 2 is rotation equality;
words of length <= 1 defer to conjugacy inside the single factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .factors import FactorElement, FactorGroup, FactorGroupError


class Letter(NamedTuple):
    factor: int  # 1 or 2
    value: FactorElement  # non-identity element of that factor


NormalForm = tuple  # tuple[Letter, ...]

IDENTITY: NormalForm = ()


@dataclass(frozen=True)
class Conjugation:
    """A word together with the conjugator that recovers the original.

    Contract: ``original == conjugator * result * conjugator^-1``,
    equivalently ``result == conjugator^-1 * original * conjugator``.
    """

    result: NormalForm
    conjugator: NormalForm


class FreeProduct:
    """The free product of two factor groups, acting on normal forms."""

    def __init__(self, factor1: FactorGroup, factor2: FactorGroup) -> None:
        self._factors = (None, factor1, factor2)

    def factor(self, index: int) -> FactorGroup:
        if index not in (1, 2):
            raise FactorGroupError(f"factor index must be 1 or 2, got {index!r}")
        return self._factors[index]

    @property
    def factors(self) -> tuple[FactorGroup, FactorGroup]:
        return (self._factors[1], self._factors[2])

    # -- construction and validation ----------------------------------------

    def letter(self, factor_index: int, value: FactorElement) -> Letter:
        grp = self.factor(factor_index)
        grp.validate_element(value)
        if grp.is_identity(value):
            raise FactorGroupError("letters must be non-identity factor elements")
        return Letter(factor_index, value)

    def generator_letters(self) -> tuple[tuple[str, Letter], ...]:
        """(name, letter) for every declared generator of both factors."""
        out = []
        for idx in (1, 2):
            grp = self.factor(idx)
            for name, g in zip(grp.generator_names(), grp.generators()):
                out.append((name, Letter(idx, g)))
        return tuple(out)

    def validate(self, g: NormalForm) -> None:
        if not isinstance(g, tuple):
            raise FactorGroupError(f"normal form must be a tuple, got {type(g).__name__}")
        prev = 0
        for lt in g:
            if not isinstance(lt, Letter):
                raise FactorGroupError(f"not a Letter: {lt!r}")
            if lt.factor not in (1, 2):
                raise FactorGroupError(f"bad factor index {lt.factor!r}")
            if lt.factor == prev:
                raise FactorGroupError("consecutive letters share a factor")
            grp = self._factors[lt.factor]
            grp.validate_element(lt.value)
            if grp.is_identity(lt.value):
                raise FactorGroupError("identity letter in normal form")
            prev = lt.factor

    # -- group operations ----------------------------------------------------

    def multiply(self, g: NormalForm, h: NormalForm) -> NormalForm:
        """Product in normal form via seam cancellation/consolidation."""
        if not g:
            return h
        if not h:
            return g
        i, j = len(g), 0
        merged: NormalForm = ()
        while i > 0 and j < len(h):
            x, y = g[i - 1], h[j]
            if x.factor != y.factor:
                break
            grp = self._factors[x.factor]
            p = grp.multiply(x.value, y.value)
            i -= 1
            j += 1
            if not grp.is_identity(p):
                merged = (Letter(x.factor, p),)
                break
            # full cancellation at this seam position; continue inward
        return g[:i] + merged + h[j:]

    def invert(self, g: NormalForm) -> NormalForm:
        return tuple(
            Letter(lt.factor, self._factors[lt.factor].inverse(lt.value))
            for lt in reversed(g)
        )

    def power(self, g: NormalForm, k: int) -> NormalForm:
        if k < 0:
            g, k = self.invert(g), -k
        acc: NormalForm = IDENTITY
        while k:
            if k & 1:
                acc = self.multiply(acc, g)
            k >>= 1
            if k:
                g = self.multiply(g, g)
        return acc

    def conjugate(self, g: NormalForm, *, by: NormalForm) -> NormalForm:
        """by * g * by^-1."""
        return self.multiply(by, self.multiply(g, self.invert(by)))

    def word_length(self, g: NormalForm) -> int:
        return sum(self._factors[lt.factor].word_length(lt.value) for lt in g)

    # -- cyclic reduction and conjugacy ---------------------------------------

    def is_cyclically_reduced(self, g: NormalForm) -> bool:
        return len(g) <= 1 or g[0].factor != g[-1].factor

    def is_weakly_reduced(self, g: NormalForm) -> bool:
        if len(g) <= 1:
            return True
        first, last = g[0], g[-1]
        if first.factor != last.factor:
            return True
        grp = self._factors[first.factor]
        return first.value != grp.inverse(last.value)

    def cyclically_reduce(self, g: NormalForm) -> Conjugation:
        """Strip inverse boundary pairs, then consolidate once if needed.

        Each step replaces w by u^-1 * w * u where u is the first letter of
        w, so the accumulated conjugator h satisfies g == h * result * h^-1.
        The result is cyclically reduced with even length or length <= 1.
        """
        w = g
        conj: NormalForm = IDENTITY
        while len(w) >= 2 and w[0].factor == w[-1].factor:
            grp = self._factors[w[0].factor]
            wrap = grp.multiply(w[-1].value, w[0].value)
            conj = self.multiply(conj, (w[0],))
            if grp.is_identity(wrap):
                w = w[1:-1]
            else:
                w = w[1:-1] + (Letter(w[0].factor, wrap),)
                break  # consolidated word is cyclically reduced
        return Conjugation(result=w, conjugator=conj)

    def _rotations(self, g: NormalForm):
        for s in range(len(g)):
            yield g[s:] + g[:s]

    def are_conjugate(self, g: NormalForm, h: NormalForm) -> bool:
        rg = self.cyclically_reduce(g).result
        rh = self.cyclically_reduce(h).result
        if len(rg) != len(rh):
            return False
        if not rg:
            return True
        if len(rg) == 1:
            x, y = rg[0], rh[0]
            if x.factor != y.factor:
                return False
            return self._factors[x.factor].are_conjugate(x.value, y.value)
        return any(rot == rh for rot in self._rotations(rg))

    def letter_key(self, lt: Letter) -> tuple:
        """Total order on letters: factor index first, then element key."""
        return (lt.factor,) + self._factors[lt.factor].element_key(lt.value)

    def canonical_class_key(self, g: NormalForm) -> NormalForm:
        """Canonical conjugacy-class representative (equal iff conjugate)."""
        r = self.cyclically_reduce(g).result
        if not r:
            return IDENTITY
        if len(r) == 1:
            lt = r[0]
            rep = self._factors[lt.factor].conjugacy_representative(lt.value)
            return (Letter(lt.factor, rep),)
        keys = [self.letter_key(lt) for lt in r]
        n = len(r)
        best = min(range(n), key=lambda s: [keys[(s + i) % n] for i in range(n)])
        return r[best:] + r[:best]

    # -- presentation -----------------------------------------------------------

    def format(self, g: NormalForm) -> str:
        """Render as word-syntax tokens; the identity renders as ``1``."""
        if not g:
            return "1"
        return " ".join(
            self._factors[lt.factor].format_element(lt.value) for lt in g
        )

"""Finitely generated groups as normal-form oracles.

Every model supplies a total normal form (``normalize``) mapping words over
its alphabet to canonical hashable keys, so element equality is exact key
equality and no generic word problem has to be solved.  Supported models:

* :class:`FreeGroup` -- free reduction, exact geodesic lengths;
* :class:`FreeProductZ2Z3` -- syllable normal form for Z/2 * Z/3
  (isomorphic to PSL(2,Z));
* :class:`Braid3` -- the 3-strand braid group as a central extension of
  Z/2 * Z/3 by the squared half-twist;
* :class:`FiniteSample` -- explicit multiplication table, for tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from .words import Word, free_reduce, cyclic_reduce, invert, parse_word, format_word


@dataclass(frozen=True)
class GeneratorAlphabet:
    """Ordered generator labels; signed letter -i is the formal inverse of +i."""

    labels: Tuple[str, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("generator labels must be pairwise distinct")

    @property
    def size(self) -> int:
        return len(self.labels)

    def signed_letters(self) -> Tuple[int, ...]:
        k = self.size
        return tuple(range(1, k + 1)) + tuple(range(-1, -k - 1, -1))

    def involution(self, letter: int) -> int:
        """The fixed-point-free pairing of each signed letter with its inverse."""
        if letter == 0 or abs(letter) > self.size:
            raise ValueError(f"letter {letter} outside alphabet of size {self.size}")
        return -letter

    def parse(self, text: str) -> Word:
        return parse_word(text, self.labels)

    def format(self, word: Sequence[int]) -> str:
        return format_word(word, self.labels)


class GroupModel:
    """Base class: a group presented through a normal-form oracle."""

    name: str
    alphabet: GeneratorAlphabet

    def normalize(self, word: Sequence[int]):
        """Canonical key of the element represented by ``word``."""
        raise NotImplementedError

    def mul_keys(self, a, b):
        """Key of the product; default re-normalizes the concatenated words."""
        return self.normalize(self.key_word(a) + self.key_word(b))

    def key_word(self, key) -> Word:
        """Some word over the alphabet representing ``key``."""
        raise NotImplementedError

    def identity_key(self):
        return self.normalize(())

    # Optional oracles ------------------------------------------------

    def exact_length(self, key) -> Optional[int]:
        """Geodesic length w.r.t. the standard generators, when closed-form."""
        return None

    def center_membership(self, key) -> Optional[bool]:
        return None

    # Convenience ------------------------------------------------------

    def element(self, word: Sequence[int] | str) -> "GroupElement":
        if isinstance(word, str):
            word = self.alphabet.parse(word)
        word = tuple(word)
        for a in word:
            if a == 0 or abs(a) > self.alphabet.size:
                raise ValueError(f"letter {a} invalid for alphabet of {self.name}")
        return GroupElement(self, word, self.normalize(word))

    def identity(self) -> "GroupElement":
        return self.element(())

    def standard_gens(self) -> "GeneratingSet":
        words = [(i,) for i in range(1, self.alphabet.size + 1)]
        return GeneratingSet(self, words, standard=True)


@dataclass(frozen=True)
class GroupElement:
    """An element of a model: a known word representative plus canonical key."""

    model: GroupModel = field(compare=False)
    word: Word = field(compare=False)
    key: object = None

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.model is not self.model:
            raise ValueError("elements of different models")
        w = self.word + other.word
        return GroupElement(self.model, w, self.model.normalize(w))

    def inverse(self) -> "GroupElement":
        w = invert(self.word)
        return GroupElement(self.model, w, self.model.normalize(w))

    def __pow__(self, n: int) -> "GroupElement":
        base = self if n >= 0 else self.inverse()
        w = base.word * abs(n)
        return GroupElement(self.model, w, self.model.normalize(w))

    def is_identity(self) -> bool:
        return self.key == self.model.identity_key()

    def __hash__(self):
        return hash((id(self.model), self.key))

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and other.model is self.model
            and other.key == self.key
        )

    def __repr__(self):
        return f"<{self.model.name}:{self.model.alphabet.format(self.word)}>"


class GeneratingSet:
    """A finite generating set, closed under inversion, identity removed.

    Words of the set are over the model alphabet.  Signed S-letters index
    into ``self.elements`` 1-based; ``-j`` means the inverse of generator j.
    """

    def __init__(self, model: GroupModel, words: Sequence[Sequence[int] | str], standard: bool = False):
        self.model = model
        elements: list[GroupElement] = []
        seen = set()
        for w in words:
            g = model.element(w)
            if g.is_identity():
                raise ValueError(
                    f"generating word {model.alphabet.format(g.word)!r} normalizes to the identity"
                )
            if g.key not in seen:
                seen.add(g.key)
                elements.append(g)
        for g in list(elements):
            inv = g.inverse()
            if inv.key not in seen:
                seen.add(inv.key)
                elements.append(inv)
        if not elements:
            raise ValueError("empty generating set")
        self.elements = tuple(elements)
        self.standard = standard and all(len(g.word) == 1 for g in elements)
        # signed S-letter -> group element
        self._by_letter = {}
        for j, g in enumerate(self.elements, start=1):
            self._by_letter[j] = g
            self._by_letter[-j] = g.inverse()

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def letter_element(self, s_letter: int) -> GroupElement:
        return self._by_letter[s_letter]

    def signed_letters(self) -> Tuple[int, ...]:
        n = len(self.elements)
        return tuple(range(1, n + 1)) + tuple(range(-1, -n - 1, -1))

    def spell(self, s_letters: Sequence[int]) -> Word:
        """Flatten a sequence of signed S-letters to an alphabet word."""
        out: list[int] = []
        for s in s_letters:
            out.extend(self.letter_element(s).word)
        return tuple(out)

    def words(self) -> list[str]:
        return [self.model.alphabet.format(g.word) for g in self.elements]

    def describe(self) -> str:
        return "{" + ",".join(self.words()) + "}"


# ---------------------------------------------------------------------------
# Free groups


class FreeGroup(GroupModel):
    """Free group of rank k; keys are freely reduced words."""

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.rank = rank
        self.name = f"free:{rank}"
        self.alphabet = GeneratorAlphabet(tuple("abcdefghijklmnopqrstuvwxyz"[:rank]))

    def normalize(self, word):
        return free_reduce(word)

    def mul_keys(self, a, b):
        if not a:
            return b
        if not b:
            return a
        out = list(a)
        for x in b:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def key_word(self, key):
        return key

    def exact_length(self, key):
        return len(key)

    def translation_length_exact(self, key) -> int:
        """Standard-gens translation length: length of the cyclic reduction."""
        return len(cyclic_reduce(key))


# ---------------------------------------------------------------------------
# The free product Z/2 * Z/3

X_SYL = 0  # order-2 generator
# y-syllables are stored as 1 or 2 (the exponent)


def _is_y(s: int) -> bool:
    return s in (1, 2)


class FreeProductZ2Z3(GroupModel):
    """Z/2 * Z/3 = <x, y | x^2, y^3>, keys are alternating syllable tuples.

    A key is a tuple of syllables: ``0`` for x, ``1``/``2`` for y/y^2, with
    no two adjacent syllables of the same kind.  With generators {x, y} the
    geodesic length of an element is its syllable count (y^2 = y^-1 costs
    one letter).
    """

    def __init__(self):
        self.name = "zz23"
        self.alphabet = GeneratorAlphabet(("x", "y"))

    @staticmethod
    def _push_x(sylls: list[int]) -> None:
        if sylls and sylls[-1] == X_SYL:
            sylls.pop()
        else:
            sylls.append(X_SYL)

    @staticmethod
    def _push_y(sylls: list[int], e: int) -> None:
        e %= 3
        if e == 0:
            return
        if sylls and _is_y(sylls[-1]):
            e = (sylls.pop() + e) % 3
            if e:
                sylls.append(e)
        else:
            sylls.append(e)

    def normalize(self, word):
        sylls: list[int] = []
        for a in word:
            if abs(a) == 1:
                self._push_x(sylls)
            elif abs(a) == 2:
                self._push_y(sylls, 1 if a > 0 else 2)
            else:
                raise ValueError(f"letter {a} invalid for {self.name}")
        return tuple(sylls)

    def mul_keys(self, a, b):
        sylls = list(a)
        for s in b:
            if s == X_SYL:
                self._push_x(sylls)
            else:
                self._push_y(sylls, s)
        return tuple(sylls)

    def key_word(self, key):
        out = []
        for s in key:
            if s == X_SYL:
                out.append(1)
            elif s == 1:
                out.append(2)
            else:
                out.append(-2)  # y^2 = y^-1, one letter
        return tuple(out)

    def exact_length(self, key):
        return len(key)

    @staticmethod
    def cyclic_syllable_reduction(key) -> Tuple[int, ...]:
        """Cyclically reduce: conjugate until first/last syllables differ in kind.

        The result is empty or a single syllable for elliptic elements and an
        alternating word with distinct boundary kinds for hyperbolic ones.
        """
        sylls = list(key)
        while len(sylls) >= 2:
            a, b = sylls[0], sylls[-1]
            if a == X_SYL and b == X_SYL:
                sylls = sylls[1:-1]  # x w x  ->  w
            elif _is_y(a) and _is_y(b):
                e = (a + b) % 3
                sylls = sylls[1:-1]
                if e:
                    sylls = [e] + sylls  # rotate the merged syllable to the front
            else:
                break
        return tuple(sylls)

    def tree_translation_length_exact(self, key) -> int:
        """Translation length on the Bass-Serre tree (0 iff elliptic)."""
        core = self.cyclic_syllable_reduction(key)
        return len(core) if len(core) >= 2 else 0


# ---------------------------------------------------------------------------
# The braid group on three strands

_SL2_GENS = {
    1: (1, 1, 0, 1),  # sigma_1
    -1: (1, -1, 0, 1),
    2: (1, 0, -1, 1),  # sigma_2
    -2: (1, 0, 1, 1),
}


def _sl2_mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


class Braid3(GroupModel):
    """B_3 = <s1, s2 | s1 s2 s1 = s2 s1 s2> via the trefoil-group normal form.

    With x = s1 s2 s1 and y = s1 s2 one has x^2 = y^3 =: c, the generator of
    the center.  Every element is uniquely c^z * (lift of a syllable word in
    Z/2 * Z/3), so keys are pairs ``(z, syllables)``.  Alphabet letters are
    a = s1, b = s2.
    """

    def __init__(self):
        self.name = "braid3"
        self.alphabet = GeneratorAlphabet(("a", "b"))
        self._quotient = FreeProductZ2Z3()

    # -- normal form arithmetic over (z, syllable list) ---------------

    @staticmethod
    def _mul_x(z: int, sylls: list[int], sign: int) -> int:
        if sign < 0:
            z -= 1  # x^-1 = c^-1 x
        if sylls and sylls[-1] == X_SYL:
            sylls.pop()
            z += 1  # x^2 = c
        else:
            sylls.append(X_SYL)
        return z

    @staticmethod
    def _mul_y(z: int, sylls: list[int], e: int) -> int:
        # multiply by y^e for e in {1, 2}; y^-1 enters as (z-1, e=2)
        if sylls and _is_y(sylls[-1]):
            e = sylls.pop() + e
            if e >= 3:
                z += 1  # y^3 = c
                e -= 3
            if e:
                sylls.append(e)
        else:
            sylls.append(e)
        return z

    def _feed_sigma(self, z: int, sylls: list[int], letter: int) -> int:
        # s1 = y^-1 x,  s1^-1 = x^-1 y,  s2 = x y^-1,  s2^-1 = y x^-1
        if letter == 1:
            z -= 1
            z = self._mul_y(z, sylls, 2)
            z = self._mul_x(z, sylls, +1)
        elif letter == -1:
            z = self._mul_x(z, sylls, -1)
            z = self._mul_y(z, sylls, 1)
        elif letter == 2:
            z = self._mul_x(z, sylls, +1)
            z -= 1
            z = self._mul_y(z, sylls, 2)
        elif letter == -2:
            z = self._mul_y(z, sylls, 1)
            z = self._mul_x(z, sylls, -1)
        else:
            raise ValueError(f"letter {letter} invalid for {self.name}")
        return z

    def normalize(self, word):
        z, sylls = 0, []
        for a in word:
            z = self._feed_sigma(z, sylls, a)
        return (z, tuple(sylls))

    def mul_keys(self, a, b):
        z = a[0] + b[0]
        sylls = list(a[1])
        for s in b[1]:
            if s == X_SYL:
                z = self._mul_x(z, sylls, +1)
            else:
                z = self._mul_y(z, sylls, s)
        return (z, tuple(sylls))

    def key_word(self, key):
        z, sylls = key
        # c = (s1 s2)^3, x = s1 s2 s1, y = s1 s2, y^2 = (s1 s2)^2
        out: list[int] = []
        if z > 0:
            out.extend((1, 2) * (3 * z))
        elif z < 0:
            out.extend((-2, -1) * (3 * -z))
        for s in sylls:
            if s == X_SYL:
                out.extend((1, 2, 1))
            else:
                out.extend((1, 2) * s)
        return tuple(out)

    def from_normal_form(self, z: int, sylls: Sequence[int]) -> GroupElement:
        """Element with the given key, without multiplying out a long word."""
        key = (z, tuple(sylls))
        return GroupElement(self, self.key_word(key), key)

    def center_membership(self, key):
        return len(key[1]) == 0

    def central_exponent(self, key) -> int:
        return key[0]

    def quotient_key(self, key) -> Tuple[int, ...]:
        """Image in Z/2 * Z/3 (= B_3 modulo its center)."""
        return key[1]

    @staticmethod
    def exponent_sum(word: Sequence[int]) -> int:
        """The homomorphism to Z sending each standard generator to 1."""
        return sum(1 if a > 0 else -1 for a in word)

    def exponent_sum_key(self, key) -> int:
        # rho(c) = 6, rho(x) = 3, rho(y) = 2, rho(y^2) = 4
        z, sylls = key
        total = 6 * z
        for s in sylls:
            total += 3 if s == X_SYL else 2 * s
        return total

    def sl2_image(self, word: Sequence[int]) -> Tuple[int, int, int, int]:
        m = (1, 0, 0, 1)
        for a in word:
            m = _sl2_mul(m, _SL2_GENS[a])
        return m


# ---------------------------------------------------------------------------
# Finite sample groups (explicit multiplication table)


class FiniteSample(GroupModel):
    """A finite group given by a multiplication table, for tests.

    ``table[i][j]`` is the product of elements i and j; 0 is the identity.
    ``generator_elements`` lists the table indices of the alphabet letters.
    """

    def __init__(self, name: str, table: Sequence[Sequence[int]], generator_elements: Sequence[int], labels: Sequence[str]):
        self.name = name
        self.table = [tuple(row) for row in table]
        n = len(self.table)
        if any(len(r) != n for r in self.table):
            raise ValueError("multiplication table must be square")
        self.alphabet = GeneratorAlphabet(tuple(labels))
        self.gen_idx = tuple(generator_elements)
        if len(self.gen_idx) != self.alphabet.size:
            raise ValueError("one table index per alphabet label required")
        self._inv = [None] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == 0:
                    self._inv[i] = j
        if any(v is None for v in self._inv):
            raise ValueError("table has non-invertible rows; not a group")

    def normalize(self, word):
        cur = 0
        for a in word:
            g = self.gen_idx[abs(a) - 1]
            if a < 0:
                g = self._inv[g]
            cur = self.table[cur][g]
        return cur

    def mul_keys(self, a, b):
        return self.table[a][b]

    def key_word(self, key):
        raise NotImplementedError("finite samples carry no canonical words")

    @classmethod
    def cyclic(cls, n: int) -> "FiniteSample":
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return cls(f"cyclic:{n}", table, [1 % n], ("t",))


def make_model(model_id: str) -> GroupModel:
    """Model factory used by configs: ``free:k``, ``zz23``, ``braid3``."""
    if model_id.startswith("free:"):
        return FreeGroup(int(model_id.split(":", 1)[1]))
    if model_id == "zz23":
        return FreeProductZ2Z3()
    if model_id == "braid3":
        return Braid3()
    raise ValueError(f"unknown model {model_id!r}")

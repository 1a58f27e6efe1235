"""
Multi-degrees in Z^∞, the Z₂ parity pairing and Koszul signs.

Every sign in the engine is computed here; no other module hard-codes one.
"""

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, Mapping, Sequence, Tuple

from sympy.combinatorics import Permutation

from iterated_forms.errors import SlotError

SlotMap = Callable[[int], int]


@dataclass(frozen=True)
class MultiDegree:
    """
    A finitely supported integer vector indexed by differential slots k ≥ 1

    Args:
        entries: sorted ``(slot, value)`` pairs with nonzero values
    """

    entries: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted((k, v) for k, v in self.entries if v != 0)))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "MultiDegree":
        for slot in mapping:
            if slot < 1:
                raise SlotError("Slots start at 1, got {}".format(slot))
        return cls(tuple(mapping.items()))

    @classmethod
    def unit(cls, slot: int, value: int = 1) -> "MultiDegree":
        """
        The basis vector e_slot (scaled by ``value``)
        """

        return cls.from_mapping({slot: value})

    @classmethod
    def ones(cls, p: int) -> "MultiDegree":
        """
        The degree (1, …, 1) in slots 1..p
        """

        return cls.from_mapping({k: 1 for k in range(1, p + 1)})

    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    def __getitem__(self, slot: int) -> int:
        return self.as_dict().get(slot, 0)

    def __add__(self, other: "MultiDegree") -> "MultiDegree":
        total = self.as_dict()
        for slot, value in other.entries:
            total[slot] = total.get(slot, 0) + value
        return MultiDegree(tuple(total.items()))

    def __neg__(self) -> "MultiDegree":
        return MultiDegree(tuple((k, -v) for k, v in self.entries))

    def __sub__(self, other: "MultiDegree") -> "MultiDegree":
        return self + (-other)

    def __mul__(self, scalar: int) -> "MultiDegree":
        return MultiDegree(tuple((k, v * scalar) for k, v in self.entries))

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.entries)

    @property
    def max_slot(self) -> int:
        return max((k for k, _ in self.entries), default=0)

    def __str__(self):
        if not self.entries:
            return "0"
        return " + ".join("{}e{}".format("" if v == 1 else v, k) for k, v in self.entries)


ZERO = MultiDegree()


@dataclass(frozen=True, order=True)
class IndexSet:
    """
    A finite set K of differential slots, stored sorted

    Orders lexicographically as a sorted integer sequence, which is the first key of the
    canonical generator order.
    """

    slots: Tuple[int, ...] = ()

    def __post_init__(self):
        slots = tuple(sorted(set(int(k) for k in self.slots)))
        if slots and slots[0] < 1:
            raise SlotError("Slots start at 1, got {}".format(slots[0]))
        object.__setattr__(self, "slots", slots)

    @classmethod
    def of(cls, *slots: int) -> "IndexSet":
        return cls(tuple(slots))

    def __len__(self):
        return len(self.slots)

    def __iter__(self) -> Iterator[int]:
        return iter(self.slots)

    def __contains__(self, slot: int) -> bool:
        return slot in self.slots

    def __bool__(self):
        return bool(self.slots)

    def union(self, slot: int) -> "IndexSet":
        return IndexSet(self.slots + (slot,))

    def without(self, slot: int) -> "IndexSet":
        return IndexSet(tuple(k for k in self.slots if k != slot))

    def relabel(self, sigma: SlotMap) -> "IndexSet":
        """
        Image of the set under a slot map

        Raises:
            SlotError: if the map is not injective on this set
        """

        image = IndexSet(tuple(sigma(k) for k in self.slots))
        if len(image) != len(self):
            raise SlotError("Slot map is not injective on {}".format(self))
        return image

    @property
    def parity(self) -> int:
        return len(self.slots) % 2

    @property
    def max_slot(self) -> int:
        return self.slots[-1] if self.slots else 0

    def __str__(self):
        return "{{{}}}".format(",".join(str(k) for k in self.slots))


def degree_of_indexset(K: IndexSet) -> MultiDegree:
    """
    The indicator vector e_K of an index set
    """

    return MultiDegree(tuple((k, 1) for k in K))


def parity_pairing(D: MultiDegree, E: MultiDegree) -> int:
    """
    The Z₂ pairing ⟨D, E⟩ = Σ_k D_k·E_k mod 2

    Returns:
        0 or 1
    """

    other = E.as_dict()
    return sum(v * other.get(k, 0) for k, v in D.entries) % 2


def sign_of(D: MultiDegree, E: MultiDegree) -> int:
    """
    (−1)^⟨D, E⟩
    """

    return -1 if parity_pairing(D, E) else 1


def koszul_sign(degrees: Sequence[MultiDegree], permutation: Sequence[int]) -> int:
    """
    Sign picked up when the graded factors ``degrees`` are rearranged into the order
    ``[degrees[permutation[0]], degrees[permutation[1]], ...]``

    Args:
        degrees: degrees of the factors in their original order
        permutation: for each new position, the original position of the factor placed there

    Returns:
        +1 or −1, the product of (−1)^⟨D_i, D_j⟩ over all pairs the rearrangement inverts
    """

    if sorted(permutation) != list(range(len(degrees))):
        raise ValueError("Not a permutation of {} factors: {}".format(len(degrees), list(permutation)))
    odd = 0
    for a, b in itertools.combinations(range(len(permutation)), 2):
        i, j = permutation[a], permutation[b]
        if i > j:
            odd += parity_pairing(degrees[i], degrees[j])
    return -1 if odd % 2 else 1


@dataclass(frozen=True)
class SlotPermutation:
    """
    A bijection of the slots {1, 2, ...} moving finitely many of them

    Args:
        images: ``(slot, image)`` pairs for the moved slots
    """

    images: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        images = tuple(sorted((int(k), int(v)) for k, v in self.images if k != v))
        sources = [k for k, _ in images]
        targets = [v for _, v in images]
        if sorted(sources) != sorted(targets) or len(set(sources)) != len(sources):
            raise SlotError("Not a finite-support permutation: {}".format(dict(images)))
        if sources and min(sources) < 1:
            raise SlotError("Slots start at 1")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls) -> "SlotPermutation":
        return cls()

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "SlotPermutation":
        """
        Builds σ from the list [σ(1), …, σ(p)]
        """

        return cls(tuple((k, v) for k, v in enumerate(images, start=1)))

    @classmethod
    def from_cycles(cls, text: str) -> "SlotPermutation":
        """
        Parses cycle notation such as ``"(1 2)(3 4 5)"`` or ``"(1,2)"``; ``"()"`` is the identity
        """

        if not re.fullmatch(r"(\s*\(\s*(\d+([\s,]+\d+)*)?\s*\))+\s*", text):
            raise SlotError("Malformed cycle notation: {}".format(text))
        result = cls()
        for body in re.findall(r"\(([^)]*)\)", text):
            cycle = [int(k) for k in re.split(r"[\s,]+", body.strip()) if k]
            if len(set(cycle)) != len(cycle):
                raise SlotError("Repeated slot in cycle: {}".format(body))
            images = {k: cycle[(i + 1) % len(cycle)] for i, k in enumerate(cycle)}
            result = result.compose(cls(tuple(images.items())))
        return result

    @classmethod
    def transposition(cls, i: int, j: int) -> "SlotPermutation":
        return cls(((i, j), (j, i)))

    @classmethod
    def all_of_order(cls, p: int) -> Iterator["SlotPermutation"]:
        """
        Every element of S_p acting on slots 1..p
        """

        for images in itertools.permutations(range(1, p + 1)):
            yield cls.from_images(images)

    def __call__(self, slot: int) -> int:
        return dict(self.images).get(slot, slot)

    def compose(self, other: "SlotPermutation") -> "SlotPermutation":
        """
        The composition self∘other, i.e. k ↦ self(other(k))
        """

        support = {k for k, _ in self.images} | {k for k, _ in other.images}
        return SlotPermutation(tuple((k, self(other(k))) for k in support))

    def inverse(self) -> "SlotPermutation":
        return SlotPermutation(tuple((v, k) for k, v in self.images))

    @property
    def support_max(self) -> int:
        return max((k for k, _ in self.images), default=0)

    def signature(self) -> int:
        """
        The sign of the permutation, ±1
        """

        size = max(self.support_max, 1)
        return Permutation([self(k) - 1 for k in range(1, size + 1)]).signature()

    def __str__(self):
        if not self.images:
            return "()"
        cycles = Permutation([self(k) - 1 for k in range(1, self.support_max + 1)]).cyclic_form
        return "".join("({})".format(" ".join(str(k + 1) for k in cycle)) for cycle in cycles)


@dataclass(frozen=True)
class SlotShift:
    """
    The injection k ↦ k + offset for k ≥ start, identity below ``start``

    Args:
        offset: amount to shift by (negative values shift down)
        start: first slot that moves
    """

    offset: int
    start: int = 1

    def __call__(self, slot: int) -> int:
        if slot < self.start:
            return slot
        image = slot + self.offset
        if image < 1:
            raise SlotError("Shift moves slot {} below 1".format(slot))
        return image

"""
Residue sets over I_n = {0, ..., n-1} as immutable membership vectors.

A ResidueSet houses the image sets A_n, their lifts A_n(m) and the N-sets
N_{p^n}. Every operation returns a fresh set; the underlying numpy array is
flagged read-only so a set can be shared and cached freely.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping

import numpy as np

from ..arithmetic.integer_arith import is_prime
from ..config.settings_config import get_rotation_threshold
from ..errors import InvalidInputError, ModulusMismatchError

logger = logging.getLogger(__name__)


class ResidueSet:
    """Subset of I_n stored as a boolean vector of length n (bit i set <=> i in set)."""

    __slots__ = ("_modulus", "_bits")

    def __init__(self, modulus: int, bits: np.ndarray):
        if modulus < 1:
            raise InvalidInputError(f"modulus must be >= 1, got {modulus}")
        vector = np.asarray(bits, dtype=bool)
        if vector.ndim != 1 or vector.shape[0] != modulus:
            raise ModulusMismatchError(
                f"membership vector has shape {vector.shape}, expected ({modulus},)"
            )
        vector = vector.copy()
        vector.flags.writeable = False
        self._modulus = modulus
        self._bits = vector

    @classmethod
    def from_members(cls, modulus: int, members: Iterable[int]) -> "ResidueSet":
        bits = np.zeros(modulus, dtype=bool)
        values = np.fromiter((int(m) for m in members), dtype=np.int64)
        if values.size:
            if values.min() < 0 or values.max() >= modulus:
                raise InvalidInputError(f"members must lie in I_{modulus}")
            bits[values] = True
        return cls(modulus, bits)

    @classmethod
    def empty(cls, modulus: int) -> "ResidueSet":
        return cls(modulus, np.zeros(modulus, dtype=bool))

    @classmethod
    def full(cls, modulus: int) -> "ResidueSet":
        return cls(modulus, np.ones(modulus, dtype=bool))

    @property
    def modulus(self) -> int:
        return self._modulus

    @property
    def bits(self) -> np.ndarray:
        """Read-only membership vector."""
        return self._bits

    def members(self) -> List[int]:
        """Members in ascending order."""
        return [int(i) for i in np.flatnonzero(self._bits)]

    def cardinality(self) -> int:
        return int(np.count_nonzero(self._bits))

    def is_empty(self) -> bool:
        return not self._bits.any()

    def __len__(self) -> int:
        return self.cardinality()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __contains__(self, value: object) -> bool:
        if not isinstance(value, (int, np.integer)):
            return False
        return 0 <= value < self._modulus and bool(self._bits[value])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ResidueSet):
            return NotImplemented
        return self._modulus == other._modulus and np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash((self._modulus, np.packbits(self._bits).tobytes()))

    def __repr__(self) -> str:
        members = self.members()
        shown = ", ".join(str(m) for m in members[:16])
        if len(members) > 16:
            shown += f", ... ({len(members)} members)"
        return f"ResidueSet(mod {self._modulus}: {{{shown}}})"

    # Serialization

    def to_json(self) -> Dict[str, object]:
        """JSON-ready mapping with fixed key order."""
        return {"modulus": self._modulus, "members": self.members()}

    def to_json_string(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> "ResidueSet":
        try:
            modulus = int(data["modulus"])
            members = [int(m) for m in data["members"]]
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInputError(f"malformed residue set JSON: {e}")
        return cls.from_members(modulus, members)

    def to_hex(self) -> str:
        """Hex of the bit string: bit 0 is residue 0, little-endian within each byte."""
        return np.packbits(self._bits, bitorder="little").tobytes().hex()

    @classmethod
    def from_hex(cls, modulus: int, text: str) -> "ResidueSet":
        try:
            raw = np.frombuffer(bytes.fromhex(text), dtype=np.uint8)
        except ValueError as e:
            raise InvalidInputError(f"malformed hex bit string: {e}")
        bits = np.unpackbits(raw, bitorder="little")
        if bits.shape[0] < modulus or bits[modulus:].any():
            raise ModulusMismatchError(f"hex bit string does not describe a subset of I_{modulus}")
        return cls(modulus, bits[:modulus])


@dataclass(frozen=True)
class NSetProfile:
    """Base N-sets N_{p^r} and their sizes n_r for r in {2, ..., k+1}."""
    p: int
    k: int
    base_sets: Mapping[int, ResidueSet]
    base_sizes: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        sizes = {r: s.cardinality() for r, s in self.base_sets.items()}
        if self.base_sizes and dict(self.base_sizes) != sizes:
            raise InvalidInputError(f"base_sizes {dict(self.base_sizes)} disagree with base_sets {sizes}")
        for r, n_set in self.base_sets.items():
            if n_set.modulus != self.p**r:
                raise ModulusMismatchError(f"N-set for level {r} has modulus {n_set.modulus}, expected {self.p**r}")
        object.__setattr__(self, "base_sizes", sizes)

    def levels(self) -> List[int]:
        return sorted(self.base_sets)

    def covers(self) -> bool:
        """True when every level 2..k+1 is present."""
        return all(r in self.base_sets for r in range(2, self.k + 2))


def _same_modulus(a: ResidueSet, b: ResidueSet) -> None:
    if a.modulus != b.modulus:
        raise ModulusMismatchError(f"moduli differ: {a.modulus} vs {b.modulus}")


def lift(lower: ResidueSet, n: int) -> ResidueSet:
    """A_n(m): every residue of I_n congruent mod m to a member of `lower`."""
    m = lower.modulus
    if n < 1 or n % m != 0:
        raise ModulusMismatchError(f"cannot lift from modulus {m} to {n}: {m} does not divide {n}")
    return ResidueSet(n, np.tile(lower.bits, n // m))


def restrict(upper: ResidueSet, m: int) -> ResidueSet:
    """Reduce every member mod m, for m dividing the modulus."""
    if m < 1 or upper.modulus % m != 0:
        raise ModulusMismatchError(f"cannot restrict modulus {upper.modulus} to {m}")
    folded = upper.bits.reshape(upper.modulus // m, m).any(axis=0)
    return ResidueSet(m, folded)


def n_set(upper: ResidueSet, lower: ResidueSet) -> ResidueSet:
    """N_{p^n} = A_{p^n}(p^{n-1}) minus A_{p^n}, for upper modulus p times lower modulus."""
    ratio, rest = divmod(upper.modulus, lower.modulus)
    if rest != 0 or not is_prime(ratio):
        raise ModulusMismatchError(
            f"N-set needs upper modulus a prime multiple of {lower.modulus}, got {upper.modulus}"
        )
    lifted = lift(lower, upper.modulus)
    return ResidueSet(upper.modulus, lifted.bits & ~upper.bits)


def scale(residues: ResidueSet, factor: int, target: int) -> ResidueSet:
    """{factor * a : a in set} as a subset of I_target, where target = factor * modulus."""
    if factor < 1 or target != factor * residues.modulus:
        raise ModulusMismatchError(
            f"scaling modulus {residues.modulus} by {factor} cannot give modulus {target}"
        )
    bits = np.zeros(target, dtype=bool)
    bits[np.flatnonzero(residues.bits) * factor] = True
    return ResidueSet(target, bits)


def intersect(a: ResidueSet, b: ResidueSet) -> ResidueSet:
    _same_modulus(a, b)
    return ResidueSet(a.modulus, a.bits & b.bits)


def difference(a: ResidueSet, b: ResidueSet) -> ResidueSet:
    _same_modulus(a, b)
    return ResidueSet(a.modulus, a.bits & ~b.bits)


def negate(residues: ResidueSet) -> ResidueSet:
    """{-a mod n : a in set}."""
    n = residues.modulus
    indices = (-np.flatnonzero(residues.bits)) % n
    bits = np.zeros(n, dtype=bool)
    bits[indices] = True
    return ResidueSet(n, bits)


def cyclic_sumset(a: ResidueSet, b: ResidueSet) -> ResidueSet:
    """
    {(x + y) mod n : x in a, y in b}.

    Small operands are handled by OR-ing rotations of the other vector, one per
    member; larger ones by an exact cyclic convolution through the real FFT.
    """
    _same_modulus(a, b)
    n = a.modulus
    if a.is_empty() or b.is_empty():
        return ResidueSet.empty(n)

    small, other = (a, b) if a.cardinality() <= b.cardinality() else (b, a)
    if small.cardinality() <= get_rotation_threshold():
        accumulated = np.zeros(n, dtype=bool)
        for shift in np.flatnonzero(small.bits):
            accumulated |= np.roll(other.bits, int(shift))
        return ResidueSet(n, accumulated)

    spectrum = np.fft.rfft(a.bits.astype(np.float64)) * np.fft.rfft(b.bits.astype(np.float64))
    counts = np.fft.irfft(spectrum, n=n)
    return ResidueSet(n, counts > 0.5)

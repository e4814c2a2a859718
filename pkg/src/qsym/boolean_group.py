"""The group Z_2^w, its Fourier transform, and folded cube graphs.

Group elements are words t_1^{i_1} ... t_w^{i_w} in w commuting order-two
generators, encoded as integers: bit s of the index is the exponent of
t_{s+1}, so the 2^w words appear in bit-lexicographic order
(e, t_1, t_2, t_1 t_2, t_3, ...).  The group law is XOR.

Two function spaces live on this group:

* the point basis e_g of functions on the group,
* the group basis T_g of the group algebra.

They are exchanged by the Fourier pair

    phi: e_g  ->  (1/2^w) sum_h (-1)^{g.h} T_h      (point -> group)
    psi: T_g  ->  sum_h (-1)^{g.h} e_h              (group -> point)

with g.h the GF(2) dot product of exponent vectors, i.e. both maps are the
+-1 Walsh-Hadamard matrix, phi carrying the 1/2^w normalization, which makes
them mutually inverse.

The folded n-cube graph lives on the 2^{n-1} words of width n-1: two words
are adjacent when they differ in exactly one exponent or are complementary.
Equivalently it is the Cayley graph for the connecting set
{t_1, ..., t_{n-1}, t_n} with t_n = t_1 ... t_{n-1}; both constructions are
implemented and must agree entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import CapacityError, DimensionError, UsageError
from .graphs import Graph

__all__ = [
    "GroupWord",
    "FunctionVector",
    "POINT_BASIS",
    "GROUP_BASIS",
    "folded_cube",
    "cayley_folded_cube",
    "fourier",
    "inverse_fourier",
    "walsh_transform",
    "walsh_matrix",
    "tau_generators",
    "FOLDED_CUBE_VERTEX_BOUND",
]

#: default cap on 2^{n-1}, the folded cube vertex count
FOLDED_CUBE_VERTEX_BOUND = 4096

POINT_BASIS = "point"
GROUP_BASIS = "group"


@dataclass(frozen=True)
class GroupWord:
    """Element of Z_2^width; ``bits`` holds the exponent vector."""

    bits: int
    width: int

    def __post_init__(self):
        if self.width < 0:
            raise UsageError("width must be non-negative")
        if not 0 <= self.bits < (1 << self.width):
            raise UsageError(f"bits {self.bits:#x} out of range for width {self.width}")

    @classmethod
    def identity(cls, width: int) -> "GroupWord":
        return cls(0, width)

    @classmethod
    def generator(cls, k: int, width: int) -> "GroupWord":
        """The generator t_k (1-based), i.e. the word with exponent vector e_k."""
        if not 1 <= k <= width:
            raise UsageError(f"generator index {k} out of range 1..{width}")
        return cls(1 << (k - 1), width)

    @classmethod
    def all_ones(cls, width: int) -> "GroupWord":
        return cls((1 << width) - 1, width)

    @classmethod
    def all_words(cls, width: int) -> Iterator["GroupWord"]:
        for bits in range(1 << width):
            yield cls(bits, width)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if self.width != other.width:
            raise DimensionError("group word widths differ")
        return GroupWord(self.bits ^ other.bits, self.width)

    def inverse(self) -> "GroupWord":
        return self

    def length(self) -> int:
        """Word length: number of generators with exponent 1."""
        return self.bits.bit_count()

    def dot(self, other: "GroupWord") -> int:
        """GF(2) dot product of exponent vectors (0 or 1)."""
        if self.width != other.width:
            raise DimensionError("group word widths differ")
        return (self.bits & other.bits).bit_count() & 1

    def exponents(self) -> tuple[int, ...]:
        return tuple((self.bits >> s) & 1 for s in range(self.width))

    def __repr__(self) -> str:
        if self.bits == 0:
            return f"GroupWord(e, width={self.width})"
        word = "*".join(f"t{s + 1}" for s in range(self.width) if (self.bits >> s) & 1)
        return f"GroupWord({word}, width={self.width})"


@dataclass(frozen=True)
class FunctionVector:
    """Complex coefficient vector over the 2^width words, with a basis tag."""

    coefficients: np.ndarray
    basis: str
    width: int

    def __post_init__(self):
        if self.basis not in (POINT_BASIS, GROUP_BASIS):
            raise UsageError(f'basis must be "{POINT_BASIS}" or "{GROUP_BASIS}"')
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 1 or c.shape[0] != (1 << self.width):
            raise DimensionError(
                f"expected {1 << self.width} coefficients for width {self.width}, got shape {c.shape}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def indicator(cls, word: GroupWord, basis: str) -> "FunctionVector":
        c = np.zeros(1 << word.width, dtype=complex)
        c[word.bits] = 1.0
        return cls(c, basis, word.width)

    def to_json(self) -> dict:
        return {
            "width": self.width,
            "basis": self.basis,
            "re": [float(x) for x in self.coefficients.real],
            "im": [float(x) for x in self.coefficients.imag],
        }

    @classmethod
    def from_json(cls, obj) -> "FunctionVector":
        if not isinstance(obj, dict) or set(obj) != {"width", "basis", "re", "im"}:
            raise UsageError('function vector JSON needs keys "width", "basis", "re", "im"')
        coeffs = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
        return cls(coeffs, obj["basis"], obj["width"])


def walsh_transform(values: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform y[i] = sum_j (-1)^{i.j} x[j].

    In-place butterfly on a copy; input length must be a power of two.
    Self-inverse up to the factor len(values).
    """
    a = np.array(values, dtype=complex)
    size = a.shape[0]
    if size & (size - 1):
        raise DimensionError(f"length {size} is not a power of two")
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        top = a[:, 0, :] + a[:, 1, :]
        bot = a[:, 0, :] - a[:, 1, :]
        a[:, 0, :] = top
        a[:, 1, :] = bot
        a = a.reshape(size)
        h *= 2
    return a


def walsh_matrix(width: int) -> np.ndarray:
    """The 2^width Walsh matrix H[g, h] = (-1)^{g.h} as float64."""
    h = np.array([[1.0]])
    block = np.array([[1.0, 1.0], [1.0, -1.0]])
    for _ in range(width):
        h = np.kron(block, h)
    return h


def fourier(v: FunctionVector) -> FunctionVector:
    """Fourier transform: point basis -> group basis, with 1/2^width."""
    if v.basis != POINT_BASIS:
        raise UsageError("fourier expects a point-basis vector")
    out = walsh_transform(v.coefficients) / (1 << v.width)
    return FunctionVector(out, GROUP_BASIS, v.width)


def inverse_fourier(v: FunctionVector) -> FunctionVector:
    """Inverse Fourier transform: group basis -> point basis, unnormalized."""
    if v.basis != GROUP_BASIS:
        raise UsageError("inverse_fourier expects a group-basis vector")
    return FunctionVector(walsh_transform(v.coefficients), POINT_BASIS, v.width)


def _check_cube_bounds(n: int, max_vertices: int) -> int:
    if not isinstance(n, int) or n < 2:
        raise UsageError(f"folded cube needs an integer n >= 2, got {n!r}")
    size = 1 << (n - 1)
    if size > max_vertices:
        raise CapacityError(f"folded {n}-cube has {size} > {max_vertices} vertices")
    return size


def folded_cube(n: int, max_vertices: int = FOLDED_CUBE_VERTEX_BOUND) -> Graph:
    """Folded n-cube graph on the 2^{n-1} bit words of width n-1.

    Words are adjacent iff they differ in exactly one position or are
    complementary.  For n >= 3 the graph is n-regular; for n = 2 the two
    conditions coincide and the graph is a single edge.
    """
    size = _check_cube_bounds(n, max_vertices)
    width = n - 1
    table = np.array([x.bit_count() for x in range(size)], dtype=np.int64)
    ii = np.arange(size)
    dist = table[ii[:, None] ^ ii[None, :]]
    adjacency = ((dist == 1) | (dist == width)).astype(np.uint8)
    return Graph(adjacency)


def cayley_folded_cube(n: int, max_vertices: int = FOLDED_CUBE_VERTEX_BOUND) -> Graph:
    """Cayley graph of Z_2^{n-1} for {t_1, ..., t_{n-1}, t_n = t_1...t_{n-1}}.

    Must coincide with :func:`folded_cube` entry for entry: the n-1
    generators give the single-bit flips, t_n the complement edge.
    """
    size = _check_cube_bounds(n, max_vertices)
    width = n - 1
    connecting = [GroupWord.generator(k, width) for k in range(1, width + 1)]
    connecting.append(GroupWord.all_ones(width))
    adjacency = np.zeros((size, size), dtype=np.uint8)
    ii = np.arange(size)
    for s in connecting:
        adjacency[ii, ii ^ s.bits] = 1
    return Graph(adjacency)


def tau_generators(n: int) -> list[GroupWord]:
    """The alternative generator system tau_1..tau_n of Z_2^{n-1}, n odd.

    tau_i = t_1 ... t_{i-1} t_{i+1} ... t_{n-1} for i <= n-1 (all generators
    but the i-th) and tau_n = t_1 ... t_{n-1}.  Each tau_i has order two and
    tau_n = tau_1 ... tau_{n-1}; the latter identity needs n odd, which is
    why even n is rejected.
    """
    if not isinstance(n, int) or n < 3 or n % 2 == 0:
        raise UsageError(f"tau generators need an odd n >= 3, got {n!r}")
    width = n - 1
    full = (1 << width) - 1
    taus = [GroupWord(full ^ (1 << (i - 1)), width) for i in range(1, n)]
    taus.append(GroupWord(full, width))
    product = 0
    for t in taus[:-1]:
        product ^= t.bits
    if product != full:  # pragma: no cover - guards the n-odd arithmetic above
        raise RuntimeError("tau_n != tau_1...tau_{n-1}; generator table is inconsistent")
    return taus

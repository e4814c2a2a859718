"""The q = -1 orthogonal relation system, its twist origin, and classical points.

Generators u_ij (1 <= i, j <= n) are subject to the relations

    (7.1)  u_ij = u_ij*
    (7.2)  sum_k u_ik u_jk = sum_k u_ki u_kj = delta_ij
    (7.3)  u_ij u_ik = -u_ik u_ij  and  u_ji u_ki = -u_ki u_ji   (j != k)
    (7.4)  u_ij u_kl = u_kl u_ij                                 (i != k, j != l)

defining the deformation O_n^{-1}; adding the sign-free quantum determinant

    (7.5)  sum_{sigma in S_n} u_{sigma(1)1} ... u_{sigma(n)n} = 1

gives SO_n^{-1}.  Two concrete models are certified here:

* the abelian model: commuting scalar solutions of (7.1)-(7.4) are exactly
  the signed permutation matrices, and (7.5) picks the ones whose entry
  product d is +1 (``abelian_points``);

* the twisted model: for n = 2m+1 there is a unique +-1 bicharacter on
  Z_2^{2m} whose cocycle deformation of the function algebra of SO_{2m+1}
  reproduces (7.1)-(7.5).  The bigrading assigns u_ij the degree pair
  (t_i, t_j), the twisted product of homogeneous classes is

      [u_ij] * [u_kl] = sigma(t_i, t_k) sigma(t_j, t_l) [u_ij u_kl],

  and every relation becomes a polynomial identity in the entries of a
  special orthogonal matrix once each monomial carries its accumulated
  twist sign.  Those identities are verified pointwise on seeded random
  special orthogonal samples, with exact integer sign bookkeeping.

Finally, every abelian point acts on the folded n-cube: the generators
tau_i of Z_2^{n-1} are sent to sign * tau_{perm(i)}, which (precisely
because d = 1) extends to an algebra map whose point-basis matrix is a
vertex permutation -- a classical graph automorphism preserving all
eigenspaces (``classical_point_action``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import permutations, product
from typing import Iterable

import numpy as np

from .boolean_group import GroupWord, folded_cube, tau_generators, walsh_matrix
from .config import DEFAULT_TOLERANCES
from .errors import CapacityError, DimensionError, UsageError
from .graphs import Permutation, is_automorphism
from .spectral import preserves_eigenspaces

__all__ = [
    "SignedPermMatrix",
    "Bicharacter",
    "GradedMonomial",
    "TwistedElement",
    "CheckReport",
    "all_signed_perm_matrices",
    "abelian_points",
    "scalar_relations_defect",
    "lemma_SO_sides",
    "lemma_SO_bruteforce",
    "lemma_sumzero_check",
    "bicharacter",
    "twisted_product",
    "twisted_chain",
    "chain_sign",
    "sample_special_orthogonal",
    "sample_orthogonal_reflection",
    "twisted_relation_check",
    "lemma_P_check",
    "classical_point_action",
    "SIGNED_PERM_BOUND",
    "SO_BRUTEFORCE_BOUND",
]

#: enumeration caps: 2^n n! signed permutation matrices
SIGNED_PERM_BOUND = 6
SO_BRUTEFORCE_BOUND = 5


# ---------------------------------------------------------------------------
# signed permutation matrices (the abelian model)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedPermMatrix:
    """Matrix with one entry +-1 per row and column: column a holds
    ``signs[a]`` at row ``perm(a)``."""

    perm: Permutation
    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        object.__setattr__(self, "signs", signs)
        if len(signs) != self.perm.size:
            raise DimensionError("sign vector length != permutation size")
        if any(s not in (-1, 1) for s in signs):
            raise UsageError("signs must be +-1")

    @classmethod
    def identity(cls, n: int) -> "SignedPermMatrix":
        return cls(Permutation.identity(n), (1,) * n)

    @property
    def n(self) -> int:
        return self.perm.size

    def entry(self, i: int, j: int) -> int:
        """0-based matrix entry."""
        return self.signs[j] if i == self.perm(j) else 0

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.int64)
        for a, s in enumerate(self.signs):
            m[self.perm(a), a] = s
        return m

    @property
    def quantum_determinant(self) -> int:
        """Product of the non-zero entries (sign-free determinant)."""
        out = 1
        for s in self.signs:
            out *= s
        return out

    def __mul__(self, other: "SignedPermMatrix") -> "SignedPermMatrix":
        """Matrix product self @ other."""
        if self.n != other.n:
            raise DimensionError("sizes differ")
        perm = self.perm.compose(other.perm)
        signs = tuple(other.signs[a] * self.signs[other.perm(a)] for a in range(self.n))
        return SignedPermMatrix(perm, signs)

    def inverse(self) -> "SignedPermMatrix":
        inv = self.perm.inverse()
        return SignedPermMatrix(inv, tuple(self.signs[inv(j)] for j in range(self.n)))

    def to_json(self) -> dict:
        return {"n": self.n, "perm": list(self.perm.images), "signs": list(self.signs)}

    @classmethod
    def from_json(cls, obj) -> "SignedPermMatrix":
        if not isinstance(obj, dict) or set(obj) != {"n", "perm", "signs"}:
            raise UsageError('signed permutation JSON needs keys "n", "perm", "signs"')
        p = Permutation(tuple(obj["perm"]))
        if p.size != obj["n"]:
            raise DimensionError("perm length != n")
        return cls(p, tuple(obj["signs"]))


def all_signed_perm_matrices(n: int, max_n: int = SIGNED_PERM_BOUND) -> list[SignedPermMatrix]:
    """All 2^n n! signed permutation matrices, in a deterministic order."""
    if n > max_n:
        raise CapacityError(f"n={n} exceeds the signed-permutation bound {max_n}")
    if n < 1:
        raise UsageError("n must be positive")
    out = []
    for images in permutations(range(n)):
        perm = Permutation(images)
        for signs in product((1, -1), repeat=n):
            out.append(SignedPermMatrix(perm, signs))
    return out


def scalar_relations_defect(m: np.ndarray) -> int:
    """Worst violation of (7.1)-(7.4) by a scalar (commuting) matrix.

    (7.1) is realness, (7.2) orthogonality of rows and columns, (7.3)
    degenerates to vanishing products within a row or column, and (7.4) is
    automatic for scalars.  Integer arithmetic, so 0 means exact.
    """
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    eye = np.eye(n, dtype=np.int64)
    defect = int(max(np.abs(m @ m.T - eye).max(), np.abs(m.T @ m - eye).max()))
    for i in range(n):
        for vec in (m[i, :], m[:, i]):
            outer = np.abs(vec[:, None] * vec[None, :])
            np.fill_diagonal(outer, 0)
            defect = max(defect, int(outer.max()))
    return defect


def abelian_points(
    n: int, max_n: int = SIGNED_PERM_BOUND, verify: bool = True
) -> list[SignedPermMatrix]:
    """Commutative solutions of (7.1)-(7.5): signed permutations with d = +1.

    Exactly half of the 2^n n! signed permutation matrices survive the
    quantum determinant condition.  With ``verify`` each survivor is also
    checked against (7.1)-(7.4) literally.
    """
    points = [sp for sp in all_signed_perm_matrices(n, max_n) if sp.quantum_determinant == 1]
    if verify:
        for sp in points:
            if scalar_relations_defect(sp.matrix()) != 0:  # pragma: no cover
                raise RuntimeError(f"abelian point violates the scalar relations: {sp}")
    return points


# ---------------------------------------------------------------------------
# the quantum determinant in the abelian model
# ---------------------------------------------------------------------------


def _column_tuples(n: int, avoid: int) -> np.ndarray:
    """All injective assignments of rows {0..n-1}\\{avoid} to columns 0..n-2."""
    rest = [r for r in range(n) if r != avoid]
    return np.array(list(permutations(rest)), dtype=np.intp)


def lemma_SO_sides(sp: SignedPermMatrix) -> list[tuple[int, int]]:
    """For each j: (u_jn, sum over injective tuples avoiding j of the
    column products u_{i_1 1} ... u_{i_{n-1} n-1}), exact integers."""
    n = sp.n
    m = sp.matrix()
    cols = np.arange(n - 1)
    out = []
    for j in range(n):
        tuples = _column_tuples(n, j)
        rhs = int(m[tuples, cols[None, :]].prod(axis=1).sum())
        out.append((int(m[j, n - 1]), rhs))
    return out


def lemma_SO_bruteforce(n: int, max_n: int = SO_BRUTEFORCE_BOUND) -> bool:
    """Exhaustively confirm, over all signed permutation matrices, that the
    quantum determinant equals one iff every column-n entry equals its
    injective-product expansion (the two formulations of (7.5))."""
    if n > max_n:
        raise CapacityError(f"n={n} exceeds the brute-force bound {max_n}")
    for sp in all_signed_perm_matrices(n, max_n=max(n, SIGNED_PERM_BOUND)):
        det_one = sp.quantum_determinant == 1
        expansion = all(lhs == rhs for lhs, rhs in lemma_SO_sides(sp))
        if det_one != expansion:
            return False
    return True


# ---------------------------------------------------------------------------
# generic check report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    relation: str
    max_defect: float
    tol: float
    passed: bool
    details: dict

    def to_json(self) -> dict:
        out = {
            "relation": self.relation,
            "max_defect": self.max_defect,
            "tol": self.tol,
            "pass": self.passed,
        }
        out.update(self.details)
        return out


# ---------------------------------------------------------------------------
# the bicharacter and the twisted product
# ---------------------------------------------------------------------------


def _generator_bits(i: int, width: int) -> int:
    """Exponent word of t_i in Z_2^width; t_{width+1} is the full product."""
    if 1 <= i <= width:
        return 1 << (i - 1)
    if i == width + 1:
        return (1 << width) - 1
    raise UsageError(f"generator index {i} out of range 1..{width + 1}")


@dataclass(frozen=True)
class Bicharacter:
    """+-1 pairing on Z_2^{2m}, tabulated on the generators t_1..t_{2m+1}.

    Antisymmetric off the diagonal among t_1..t_{2m} (value -1 for i < j),
    constant (-1)^m on the diagonal, and (-1)^{m-i} against the full
    product t_{2m+1} = t_1...t_{2m}.  ``word_sign`` extends the table
    multiplicatively to arbitrary pairs of words.
    """

    m: int
    table: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return 2 * self.m + 1

    @property
    def width(self) -> int:
        return 2 * self.m

    def value(self, i: int, j: int) -> int:
        """Table entry for generators t_i, t_j (1-based, up to 2m+1)."""
        return self.table[i - 1][j - 1]

    def generator_bits(self, i: int) -> int:
        return _generator_bits(i, self.width)

    def word_sign(self, g_bits: int, h_bits: int) -> int:
        """Multiplicative extension: product of table entries over the
        generator supports of the two words (width-2m encodings)."""
        sign = 1
        g = g_bits
        while g:
            a = (g & -g).bit_length() - 1
            h = h_bits
            while h:
                b = (h & -h).bit_length() - 1
                sign *= self.table[a][b]
                h &= h - 1
            g &= g - 1
        return sign

    def consistency_defect(self) -> int:
        """0 iff the prescribed last row/column agree with the
        multiplicative extension to t_{2m+1}."""
        bad = 0
        full = self.generator_bits(self.n)
        for i in range(1, self.n + 1):
            gi = self.generator_bits(i)
            bad += int(self.word_sign(gi, full) != self.value(i, self.n))
            bad += int(self.word_sign(full, gi) != self.value(self.n, i))
        return bad


def bicharacter(m: int) -> Bicharacter:
    """The unique bicharacter with the three prescribed value families."""
    if not isinstance(m, int) or m < 1:
        raise UsageError(f"m must be a positive integer, got {m!r}")
    n = 2 * m + 1
    diag = (-1) ** (m & 1)
    table = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        table[i - 1][i - 1] = diag
    for i in range(1, 2 * m + 1):
        for j in range(i + 1, 2 * m + 1):
            table[i - 1][j - 1] = -1
            table[j - 1][i - 1] = 1
    for i in range(1, 2 * m + 1):
        v = (-1) ** ((m - i) & 1)
        table[i - 1][n - 1] = v
        table[n - 1][i - 1] = -v
    bc = Bicharacter(m, tuple(tuple(row) for row in table))
    if bc.consistency_defect() != 0:  # pragma: no cover - fixed by the table
        raise RuntimeError("bicharacter table is inconsistent with its extension")
    return bc


@dataclass(frozen=True)
class GradedMonomial:
    """Class [u_{i_1 j_1} ... u_{i_d j_d}] of a commutative monomial.

    Factors are kept sorted (the underlying function algebra is
    commutative, so the sorted tuple is a canonical key); the bidegree over
    Z_2^{2m} is the product of the factor degrees (t_i, t_j).
    """

    factors: tuple[tuple[int, int], ...]
    width: int

    @classmethod
    def of(cls, factors: Iterable[tuple[int, int]], width: int) -> "GradedMonomial":
        return cls(tuple(sorted(tuple(f) for f in factors)), width)

    @property
    def left_bits(self) -> int:
        bits = 0
        for i, _ in self.factors:
            bits ^= _generator_bits(i, self.width)
        return bits

    @property
    def right_bits(self) -> int:
        bits = 0
        for _, j in self.factors:
            bits ^= _generator_bits(j, self.width)
        return bits

    @property
    def left_degree(self) -> GroupWord:
        return GroupWord(self.left_bits, self.width)

    @property
    def right_degree(self) -> GroupWord:
        return GroupWord(self.right_bits, self.width)

    def evaluate(self, u: np.ndarray):
        out = 1.0
        for i, j in self.factors:
            out = out * u[..., i - 1, j - 1]
        return out


class TwistedElement:
    """Finite combination sum c_M [M] of graded monomials, exact coefficients."""

    __slots__ = ("width", "terms")

    def __init__(self, width: int, terms=None):
        self.width = width
        self.terms: dict[GradedMonomial, complex] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, coeff in items:
                self._add(mono, coeff)

    def _add(self, mono: GradedMonomial, coeff):
        if mono.width != self.width:
            raise DimensionError("monomial width differs from element width")
        new = self.terms.get(mono, 0) + coeff
        if new == 0:
            self.terms.pop(mono, None)
        else:
            self.terms[mono] = new

    @classmethod
    def one(cls, m: int) -> "TwistedElement":
        width = 2 * m
        return cls(width, {GradedMonomial.of((), width): 1})

    @classmethod
    def generator(cls, i: int, j: int, m: int) -> "TwistedElement":
        """The class [u_ij] for n = 2m+1."""
        n = 2 * m + 1
        if not (1 <= i <= n and 1 <= j <= n):
            raise UsageError(f"generator indices ({i},{j}) out of range 1..{n}")
        width = 2 * m
        return cls(width, {GradedMonomial.of(((i, j),), width): 1})

    def __add__(self, other: "TwistedElement") -> "TwistedElement":
        if self.width != other.width:
            raise DimensionError("widths differ")
        out = TwistedElement(self.width, dict(self.terms))
        for mono, coeff in other.terms.items():
            out._add(mono, coeff)
        return out

    def __neg__(self) -> "TwistedElement":
        return TwistedElement(self.width, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "TwistedElement") -> "TwistedElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "TwistedElement":
        return TwistedElement(self.width, {m: scalar * c for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TwistedElement)
            and self.width == other.width
            and self.terms == other.terms
        )

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, u: np.ndarray):
        """Pointwise value at a matrix (or stack of matrices) u."""
        total = 0.0
        for mono, coeff in self.terms.items():
            total = total + coeff * mono.evaluate(u)
        return total

    def __repr__(self) -> str:
        if not self.terms:
            return "TwistedElement(0)"
        bits = []
        for mono, coeff in sorted(self.terms.items(), key=lambda t: t[0].factors):
            word = "".join(f"u{i}{j}" for i, j in mono.factors) or "1"
            bits.append(f"{coeff:+}[{word}]")
        return f"TwistedElement({' '.join(bits)})"


def twisted_product(f: TwistedElement, h: TwistedElement, bc: Bicharacter) -> TwistedElement:
    """Bilinear extension of [x][y] = sigma(deg_L x, deg_L y) sigma(deg_R x, deg_R y) [xy]."""
    if f.width != h.width or f.width != bc.width:
        raise DimensionError("element widths do not match the bicharacter")
    out = TwistedElement(f.width)
    for mf, cf in f.terms.items():
        for mh, ch in h.terms.items():
            sign = bc.word_sign(mf.left_bits, mh.left_bits) * bc.word_sign(
                mf.right_bits, mh.right_bits
            )
            out._add(GradedMonomial.of(mf.factors + mh.factors, f.width), cf * ch * sign)
    return out


def twisted_chain(pairs: Iterable[tuple[int, int]], bc: Bicharacter) -> TwistedElement:
    """Twisted product [u_{i_1 j_1}] * ... * [u_{i_d j_d}], left to right."""
    gens = [TwistedElement.generator(i, j, bc.m) for i, j in pairs]
    return reduce(lambda a, b: twisted_product(a, b, bc), gens, TwistedElement.one(bc.m))


def chain_sign(pairs: Iterable[tuple[int, int]], bc: Bicharacter) -> int:
    """Accumulated twist sign of a generator chain (fast path of twisted_chain)."""
    sign = 1
    gl = gr = 0
    for i, j in pairs:
        wi = _generator_bits(i, bc.width)
        wj = _generator_bits(j, bc.width)
        sign *= bc.word_sign(gl, wi) * bc.word_sign(gr, wj)
        gl ^= wi
        gr ^= wj
    return sign


# ---------------------------------------------------------------------------
# sampled special orthogonal matrices
# ---------------------------------------------------------------------------


def sample_special_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded random orthogonal matrix with determinant +1 (QR of a
    Gaussian, R-diagonal signs absorbed, last column flipped if needed)."""
    g = rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    q = q * np.where(np.diag(r) >= 0, 1.0, -1.0)[None, :]
    if np.linalg.det(q) < 0:
        q[:, -1] = -q[:, -1]
    return q


def sample_orthogonal_reflection(n: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded random orthogonal matrix with determinant -1."""
    q = sample_special_orthogonal(n, rng)
    q[:, -1] = -q[:, -1]
    return q


def _stack_samples(n: int, count: int, rng: np.random.Generator, negative: bool) -> np.ndarray:
    maker = sample_orthogonal_reflection if negative else sample_special_orthogonal
    if count < 1:
        raise UsageError("need at least one sample")
    return np.stack([maker(n, rng) for _ in range(count)])


# ---------------------------------------------------------------------------
# relation certification in the twisted model
# ---------------------------------------------------------------------------


def twisted_relation_check(
    m: int,
    n_samples: int = 50,
    seed: int = 42,
    tol: float = DEFAULT_TOLERANCES.residual,
) -> list[CheckReport]:
    """Certify (7.1)-(7.5) for the twisted generators, pointwise.

    Each monomial is evaluated as its accumulated twist sign times the
    product of matrix entries, on ``n_samples`` seeded special orthogonal
    matrices.  For (7.5) the twist signs collapse to the permutation sign,
    so the sum becomes the classical determinant: 1 on the special
    orthogonal samples and -1 on the determinant-(-1) control samples.
    """
    if m not in (1, 2):
        raise UsageError(f"twisted relation check supports m in {{1, 2}}, got {m}")
    n = 2 * m + 1
    bc = bicharacter(m)
    rng = np.random.default_rng(seed)
    so = _stack_samples(n, n_samples, rng, negative=False)
    refl = _stack_samples(n, n_samples, rng, negative=True)
    base = {"m": m, "n": n, "samples": n_samples, "seed": seed}
    reports = []

    d71 = float(np.abs(so.imag).max()) if np.iscomplexobj(so) else 0.0
    reports.append(CheckReport("7.1", d71, tol, d71 <= tol, dict(base)))

    d72 = 0.0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            target = 1.0 if i == j else 0.0
            row = np.zeros(n_samples)
            col = np.zeros(n_samples)
            for k in range(1, n + 1):
                row += chain_sign(((i, k), (j, k)), bc) * so[:, i - 1, k - 1] * so[:, j - 1, k - 1]
                col += chain_sign(((k, i), (k, j)), bc) * so[:, k - 1, i - 1] * so[:, k - 1, j - 1]
            d72 = max(d72, float(np.abs(row - target).max()), float(np.abs(col - target).max()))
    reports.append(CheckReport("7.2", d72, tol, d72 <= tol, dict(base)))

    d73 = 0.0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                if j == k:
                    continue
                anti_row = (
                    chain_sign(((i, j), (i, k)), bc) + chain_sign(((i, k), (i, j)), bc)
                ) * so[:, i - 1, j - 1] * so[:, i - 1, k - 1]
                anti_col = (
                    chain_sign(((j, i), (k, i)), bc) + chain_sign(((k, i), (j, i)), bc)
                ) * so[:, j - 1, i - 1] * so[:, k - 1, i - 1]
                d73 = max(d73, float(np.abs(anti_row).max()), float(np.abs(anti_col).max()))
    reports.append(CheckReport("7.3", d73, tol, d73 <= tol, dict(base)))

    d74 = 0.0
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            if i == k:
                continue
            for j in range(1, n + 1):
                for l in range(1, n + 1):
                    if j == l:
                        continue
                    comm = (
                        chain_sign(((i, j), (k, l)), bc) - chain_sign(((k, l), (i, j)), bc)
                    ) * so[:, i - 1, j - 1] * so[:, k - 1, l - 1]
                    d74 = max(d74, float(np.abs(comm).max()))
    reports.append(CheckReport("7.4", d74, tol, d74 <= tol, dict(base)))

    cols = np.arange(n)
    total = np.zeros(n_samples)
    total_refl = np.zeros(n_samples)
    for sigma in permutations(range(1, n + 1)):
        sign = chain_sign(tuple((sigma[a], a + 1) for a in range(n)), bc)
        rows = np.array(sigma) - 1
        total += sign * np.prod(so[:, rows, cols], axis=1)
        total_refl += sign * np.prod(refl[:, rows, cols], axis=1)
    d75 = float(np.abs(total - 1.0).max())
    control = float(np.abs(total_refl + 1.0).max())
    details = dict(base)
    details["control_det_negative_defect"] = control
    reports.append(CheckReport("7.5", d75, tol, d75 <= tol and control <= tol, details))
    return reports


# ---------------------------------------------------------------------------
# the two vanishing lemmas, abelian and twisted
# ---------------------------------------------------------------------------


def lemma_sumzero_check(
    n: int,
    model: str = "abelian",
    samples: int = 50,
    seed: int = 42,
    tol: float = DEFAULT_TOLERANCES.residual,
) -> CheckReport:
    """Check that sum_sigma u_{sigma(1)1} ... u_{sigma(n-1)n-1} u_{sigma(n)k}
    vanishes for every k != n, plus the k = n control (the quantum
    determinant itself: d per matrix in the abelian model, 1 on special
    orthogonal samples in the twisted model)."""
    if model == "abelian":
        if n > SO_BRUTEFORCE_BOUND:
            raise CapacityError(f"n={n} exceeds the abelian bound {SO_BRUTEFORCE_BOUND}")
        perms = np.array(list(permutations(range(n))), dtype=np.intp)
        first_cols = np.arange(n - 1)
        max_defect = 0
        control = 0
        mats = all_signed_perm_matrices(n, max_n=max(n, SIGNED_PERM_BOUND))
        for sp in mats:
            mat = sp.matrix()
            heads = mat[perms[:, :-1], first_cols[None, :]].prod(axis=1)
            for k in range(n):
                total = int((heads * mat[perms[:, -1], k]).sum())
                if k == n - 1:
                    control = max(control, abs(total - sp.quantum_determinant))
                else:
                    max_defect = max(max_defect, abs(total))
        details = {
            "model": "abelian",
            "n": n,
            "matrices": len(mats),
            "control_defect": float(control),
        }
        passed = max_defect <= tol and control <= tol
        return CheckReport("lemma_sumzero", float(max_defect), tol, passed, details)

    if model == "twisted":
        if n % 2 == 0 or n < 3:
            raise UsageError("twisted model needs odd n >= 3")
        if n > SO_BRUTEFORCE_BOUND:
            raise CapacityError(f"n={n} exceeds the twisted bound {SO_BRUTEFORCE_BOUND}")
        bc = bicharacter((n - 1) // 2)
        rng = np.random.default_rng(seed)
        so = _stack_samples(n, samples, rng, negative=False)
        max_defect = 0.0
        control = 0.0
        for k in range(1, n + 1):
            cols = list(range(1, n)) + [k]
            col_idx = np.array(cols) - 1
            total = np.zeros(samples)
            for sigma in permutations(range(1, n + 1)):
                sign = chain_sign(tuple(zip(sigma, cols)), bc)
                rows = np.array(sigma) - 1
                total += sign * np.prod(so[:, rows, col_idx], axis=1)
            if k == n:
                control = float(np.abs(total - 1.0).max())
            else:
                max_defect = max(max_defect, float(np.abs(total).max()))
        details = {
            "model": "twisted",
            "n": n,
            "samples": samples,
            "seed": seed,
            "control_defect": control,
        }
        passed = max_defect <= tol and control <= tol
        return CheckReport("lemma_sumzero", max_defect, tol, passed, details)

    raise UsageError(f'model must be "abelian" or "twisted", got {model!r}')


def lemma_P_check(
    n: int,
    l: int,
    model: str = "abelian",
    samples: int = 20,
    seed: int = 42,
    tol: float = DEFAULT_TOLERANCES.residual,
) -> CheckReport:
    """Check the repeated-index collapse of the tau-twisted sums.

    For every injective column tuple (i_1..i_l), the full sum
    sum_{j_1..j_l} tau_{j_1}...tau_{j_l} (x) u_{j_1 i_1}...u_{j_l i_l} must
    equal its restriction to pairwise-distinct row tuples.  Both sides are
    accumulated as coefficient vectors over Z_2^{n-1} (the tau products)
    and compared: exactly in the abelian model, within tol on seeded
    special orthogonal samples in the twisted model.
    """
    if n % 2 == 0 or n < 3:
        raise UsageError("lemma_P needs odd n >= 3 (tau generators)")
    if n > SO_BRUTEFORCE_BOUND:
        raise CapacityError(f"n={n} exceeds the bound {SO_BRUTEFORCE_BOUND}")
    if not 1 <= l <= n:
        raise UsageError(f"l must lie in 1..{n}, got {l}")
    taus = tau_generators(n)
    tau_bits = [t.bits for t in taus]
    size = 1 << (n - 1)
    i_tuples = list(permutations(range(1, n + 1), l))
    j_tuples = list(product(range(1, n + 1), repeat=l))
    j_info = []
    for jt in j_tuples:
        bits = 0
        for j in jt:
            bits ^= tau_bits[j - 1]
        j_info.append((jt, bits, len(set(jt)) == l))

    if model == "abelian":
        mats = all_signed_perm_matrices(n, max_n=max(n, SIGNED_PERM_BOUND))
        max_defect = 0
        for sp in mats:
            mat = sp.matrix()
            for it in i_tuples:
                lhs = np.zeros(size, dtype=np.int64)
                rhs = np.zeros(size, dtype=np.int64)
                for jt, bits, distinct in j_info:
                    coeff = 1
                    for a in range(l):
                        coeff *= int(mat[jt[a] - 1, it[a] - 1])
                        if coeff == 0:
                            break
                    if coeff == 0:
                        continue
                    lhs[bits] += coeff
                    if distinct:
                        rhs[bits] += coeff
                max_defect = max(max_defect, int(np.abs(lhs - rhs).max()))
        details = {"model": "abelian", "n": n, "l": l, "matrices": len(mats)}
        return CheckReport("lemma_P", float(max_defect), tol, max_defect <= tol, details)

    if model == "twisted":
        bc = bicharacter((n - 1) // 2)
        rng = np.random.default_rng(seed)
        so = _stack_samples(n, samples, rng, negative=False)
        max_defect = 0.0
        for it in i_tuples:
            it_idx = np.array(it) - 1
            lhs = np.zeros((size, samples))
            rhs = np.zeros((size, samples))
            for jt, bits, distinct in j_info:
                sign = chain_sign(tuple(zip(jt, it)), bc)
                vals = sign * np.prod(so[:, np.array(jt) - 1, it_idx], axis=1)
                lhs[bits] += vals
                if distinct:
                    rhs[bits] += vals
            max_defect = max(max_defect, float(np.abs(lhs - rhs).max()))
        details = {"model": "twisted", "n": n, "l": l, "samples": samples, "seed": seed}
        return CheckReport("lemma_P", max_defect, tol, max_defect <= tol, details)

    raise UsageError(f'model must be "abelian" or "twisted", got {model!r}')


# ---------------------------------------------------------------------------
# classical points acting on the folded cube
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _folded_cube_cached(n: int):
    return folded_cube(n)


def classical_point_action(point: SignedPermMatrix) -> Permutation:
    """Vertex permutation of FQ_n induced by an abelian point.

    The point sends tau_i to signs[i] tau_{perm(i)}; because its quantum
    determinant is one this respects tau_n = tau_1...tau_{n-1} and extends
    to an algebra map of the group algebra of Z_2^{n-1}.  Conjugating by
    the Fourier transform must produce a permutation matrix on the point
    basis; the permutation is returned after being checked to be a graph
    automorphism that preserves every eigenspace.
    """
    n = point.n
    if n % 2 == 0 or n < 3:
        raise UsageError("classical point action needs odd n >= 3")
    if point.quantum_determinant != 1:
        raise UsageError(
            "quantum determinant is -1: the sign pattern does not respect "
            "tau_n = tau_1...tau_{n-1}, so no vertex action exists"
        )
    width = n - 1
    size = 1 << width
    full = size - 1
    pi = point.perm
    signs = point.signs

    m = np.zeros((size, size))
    for g in range(size):
        # tau-exponent vector of the word g: the t-exponent bits plus a
        # tau_n exponent equal to the bit parity
        exps = [(g >> s) & 1 for s in range(width)] + [g.bit_count() & 1]
        sign = 1
        img = [0] * n
        for i, e in enumerate(exps):
            if e:
                sign *= signs[i]
                img[pi(i)] = 1
        # back to a t-word: tau_j = t_j tau_n for j < n, tau_n the full word
        bits = 0
        for j in range(width):
            if img[j]:
                bits |= 1 << j
        if (sum(img[:width]) + img[width]) & 1:
            bits ^= full
        m[bits, g] = sign

    h = walsh_matrix(width)
    v = h @ m @ h / size
    images = []
    for col in range(size):
        row = int(np.argmax(v[:, col]))
        onehot = np.zeros(size)
        onehot[row] = 1.0
        if np.max(np.abs(v[:, col] - onehot)) > 1e-9:
            raise UsageError("point does not induce a vertex permutation")
        images.append(row)
    perm = Permutation(tuple(images))
    cube = _folded_cube_cached(n)
    if not is_automorphism(cube, perm):  # pragma: no cover - theory guarantees it
        raise RuntimeError("induced permutation is not a graph automorphism")
    if not preserves_eigenspaces(n, perm):  # pragma: no cover
        raise RuntimeError("induced permutation moves an eigenspace")
    return perm

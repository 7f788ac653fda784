"""Symmetric functions at desk scale.

Partitions and formal Schur expansions, with every structure coefficient
(Littlewood-Richardson, Kronecker, double-skew brackets) computed from
symmetric-group characters: one engine, one source of truth.  On top of
those sit the stable Kronecker product, both by Littlewood's closed
formula and by the padded-partition limit that serves as its independent
oracle, and the Charlier/falling-factorial dimension identity.

All coefficients are exact; products of Schur expansions stay in
integers, scalar coefficients may be polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterable, Iterator, Tuple

from .errors import ScaleLimitError
from .groupchar import mn_character_value, partitions_of
from .polynomial import MPoly, falling_factorial

__all__ = [
    "Partition",
    "SchurVector",
    "schur_multiply",
    "kronecker_coeff",
    "skew_double",
    "stable_kronecker_littlewood",
    "stable_kronecker_limit",
    "charlier",
    "deligne_dim",
    "charlier_dimension_sum",
]


class Partition:
    """A partition: weakly decreasing positive parts, possibly empty.

    Construction normalizes (sorts descending, drops zeros) and rejects
    negative or non-integer parts.  Text form is "[3,1,1]"; the empty
    partition prints as "[]".
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        if isinstance(parts, Partition):
            object.__setattr__(self, "parts", parts.parts)
            return
        got = []
        for p in parts:
            if not isinstance(p, int) or isinstance(p, bool) or p < 0:
                raise ValueError(f"partition parts must be nonnegative integers; got {p!r}")
            if p > 0:
                got.append(p)
        got.sort(reverse=True)
        object.__setattr__(self, "parts", tuple(got))

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @classmethod
    def parse(cls, text: str) -> "Partition":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"partition text must look like [3,1]; got {text!r}")
        body = body[1:-1].strip()
        if not body:
            return cls()
        try:
            parts = [int(tok) for tok in body.split(",")]
        except ValueError:
            raise ValueError(f"partition text must list integers; got {text!r}") from None
        return cls(parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(("Partition", self.parts))

    def _key(self):
        # by total size, then lexicographically descending within a size,
        # matching the row order of symmetric-group character tables
        return (self.size, tuple(-p for p in self.parts))

    def __lt__(self, other: "Partition") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "Partition") -> bool:
        return self._key() <= other._key()

    def padded(self, n: int) -> "Partition":
        """The padding (n - |self|, self original parts) as a partition."""
        head = n - self.size
        if head < 0 or (self.parts and head < self.parts[0]):
            raise ValueError(
                f"padding to n = {n} is not a partition: first part {head} "
                f"falls below {self.parts[0] if self.parts else 0}")
        return Partition((head,) + self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"


class SchurVector:
    """A finite formal sum of Schur functions with exact coefficients.

    Coefficients are integers (or polynomials, for scalar multiples);
    zero coefficients are never stored.  Multiplication is the
    Littlewood-Richardson product, extended bilinearly.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Dict[Partition, object] = None):
        clean = {}
        for p, c in (coeffs or {}).items():
            if not isinstance(p, Partition):
                p = Partition(p)
            if c:
                clean[p] = c
        object.__setattr__(self, "_coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SchurVector is immutable")

    @classmethod
    def zero(cls) -> "SchurVector":
        return cls()

    @classmethod
    def unit(cls) -> "SchurVector":
        return cls({Partition(): 1})

    @classmethod
    def single(cls, p, coeff=1) -> "SchurVector":
        return cls({Partition(p): coeff})

    def coefficient(self, p) -> object:
        return self._coeffs.get(Partition(p), 0)

    def items(self):
        return sorted(self._coeffs.items(), key=lambda kv: kv[0]._key())

    def support(self):
        return sorted(self._coeffs, key=Partition._key)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def max_degree(self):
        return max((p.size for p in self._coeffs), default=None)

    def homogeneous_component(self, d: int) -> "SchurVector":
        return SchurVector({p: c for p, c in self._coeffs.items() if p.size == d})

    def __eq__(self, other) -> bool:
        return isinstance(other, SchurVector) and self._coeffs == other._coeffs

    __hash__ = None

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other: "SchurVector") -> "SchurVector":
        out = dict(self._coeffs)
        for p, c in other._coeffs.items():
            out[p] = out.get(p, 0) + c
        return SchurVector(out)

    def __sub__(self, other: "SchurVector") -> "SchurVector":
        out = dict(self._coeffs)
        for p, c in other._coeffs.items():
            out[p] = out.get(p, 0) - c
        return SchurVector(out)

    def __mul__(self, other):
        if isinstance(other, SchurVector):
            return schur_multiply(self, other)
        return SchurVector({p: c * other for p, c in self._coeffs.items()})

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        chunks = []
        for p, c in self.items():
            body = f"{c}*s{p}"
            if chunks:
                text = str(c)
                if text.startswith("-"):
                    chunks.append(" - " + f"{text[1:]}*s{p}")
                    continue
                chunks.append(" + " + body)
            else:
                chunks.append(body)
        return "".join(chunks)

    def __repr__(self) -> str:
        return f"SchurVector({self})"

    def to_json(self) -> Dict[str, object]:
        out = {}
        for p, c in self.items():
            out[str(p)] = c if isinstance(c, int) else str(c)
        return out


# ---------------------------------------------------------------- coefficients

@lru_cache(maxsize=None)
def _classes(n: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """Cycle types of S_n with their centralizer orders z_mu."""
    out = []
    for mu in partitions_of(n):
        z = 1
        run_len, run = None, 0
        for part in list(mu) + [0]:
            if part == run_len:
                run += 1
                continue
            if run_len is not None:
                z *= run_len ** run * factorial(run)
            run_len, run = part, 1
        out.append((mu, z))
    return tuple(out)


def _merge(*types: Tuple[int, ...]) -> Tuple[int, ...]:
    joined = []
    for tp in types:
        joined.extend(tp)
    joined.sort(reverse=True)
    return tuple(joined)


@lru_cache(maxsize=None)
def _induction_expand(lams: Tuple[Tuple[int, ...], ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """Expansion of the product s_{lam_1} ... s_{lam_k} in the Schur basis.

    The coefficient of s_nu is the multiplicity of chi^nu in the character
    induced from the outer tensor product, computed by summing characters
    over tuples of cycle types.
    """
    sizes = [sum(lam) for lam in lams]
    n = sum(sizes)

    def tuples(i):
        if i == len(lams):
            yield (), Fraction(1)
            return
        for mu, z in _classes(sizes[i]):
            chi = mn_character_value(lams[i], mu)
            if chi == 0:
                continue
            for rest, weight in tuples(i + 1):
                yield (mu,) + rest, weight * Fraction(chi, z)

    weights = {}
    for mus, weight in tuples(0):
        merged = _merge(*mus)
        weights[merged] = weights.get(merged, Fraction(0)) + weight

    out = []
    for nu in partitions_of(n):
        total = Fraction(0)
        for merged, weight in weights.items():
            total += weight * mn_character_value(nu, merged)
        if total:
            if total.denominator != 1 or total < 0:
                raise AssertionError(f"induction coefficient {total} is not a nonnegative integer")
            out.append((nu, int(total)))
    return tuple(out)


def schur_multiply(a: SchurVector, b: SchurVector) -> SchurVector:
    """Littlewood-Richardson product, extended bilinearly."""
    out: Dict[Partition, object] = {}
    for p, cp in a._coeffs.items():
        for q, cq in b._coeffs.items():
            scale = cp * cq
            for nu, c in _induction_expand((p.parts, q.parts)):
                key = Partition(nu)
                out[key] = out.get(key, 0) + scale * c
    return SchurVector(out)


def kronecker_coeff(lam, mu, nu) -> int:
    """Multiplicity of chi^nu in chi^lam . chi^mu over S_n."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    n = lam.size
    if mu.size != n or nu.size != n:
        raise ValueError(
            f"Kronecker coefficients need equal sizes; got {lam.size}, {mu.size}, {nu.size}")
    total = Fraction(0)
    for rho, z in _classes(n):
        total += Fraction(
            mn_character_value(lam.parts, rho)
            * mn_character_value(mu.parts, rho)
            * mn_character_value(nu.parts, rho), z)
    if total.denominator != 1 or total < 0:
        raise AssertionError(f"Kronecker coefficient {total} is not a nonnegative integer")
    return int(total)


@lru_cache(maxsize=None)
def _kron_expand(alpha: Tuple[int, ...], beta: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    n = sum(alpha)
    out = []
    for tau in partitions_of(n):
        g = kronecker_coeff(Partition(alpha), Partition(beta), Partition(tau))
        if g:
            out.append((tau, g))
    return tuple(out)


@lru_cache(maxsize=None)
def _skew_double_parts(lam: Tuple[int, ...], mu: Tuple[int, ...],
                       nu: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    k = sum(lam) - sum(mu) - sum(nu)
    if k < 0:
        return ()
    out = []
    for tau in partitions_of(k):
        expansion = dict(_induction_expand((mu, nu, tau)))
        c = expansion.get(lam, 0)
        if c:
            out.append((tau, c))
    return tuple(out)


def skew_double(lam, mu, nu) -> SchurVector:
    """The double-skew Schur function: sum over tau of <s_lam | s_mu s_nu s_tau> s_tau."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    return SchurVector({Partition(tau): c
                        for tau, c in _skew_double_parts(lam.parts, mu.parts, nu.parts)})


# ---------------------------------------------------------------- stable products

_STAR_LIMIT = 6


def stable_kronecker_littlewood(lam, mu) -> SchurVector:
    """The stable Kronecker product, by Littlewood's closed formula.

    Sums (s_alpha * s_beta) s_{lam minus alpha,gamma} s_{mu minus beta,gamma}
    over |alpha| = |beta| up to min(|lam|,|mu|) and gamma of size up to
    min(|lam|-|alpha|, |mu|-|alpha|); the double skews vanish beyond
    those bounds.
    """
    lam, mu = Partition(lam), Partition(mu)
    for p in (lam, mu):
        if p.size > _STAR_LIMIT:
            raise ScaleLimitError(
                f"stable Kronecker products are limited to |partition| <= {_STAR_LIMIT}; "
                f"got {p.size}")
    out = SchurVector.zero()
    for a in range(min(lam.size, mu.size) + 1):
        alphas = list(partitions_of(a))
        for alpha in alphas:
            for beta in alphas:
                paired = _kron_expand(alpha, beta)
                if not paired:
                    continue
                for c in range(min(lam.size, mu.size) - a + 1):
                    for gamma in partitions_of(c):
                        left = skew_double(lam, Partition(alpha), Partition(gamma))
                        if left.is_zero:
                            continue
                        right = skew_double(mu, Partition(beta), Partition(gamma))
                        if right.is_zero:
                            continue
                        base = schur_multiply(left, right)
                        for tau, g in paired:
                            out = out + (schur_multiply(
                                SchurVector.single(Partition(tau), g), base))
    return out


def stable_kronecker_limit(lam, mu, n: int) -> SchurVector:
    """The stable Kronecker product read off from S_n at a concrete n.

    Pads lambda, mu and each candidate tau to partitions of n and takes
    plain Kronecker coefficients; emits exactly the tau whose padding is
    valid at this n, so for n large enough this is the stable answer and
    serves as the oracle for the closed formula.
    """
    lam, mu = Partition(lam), Partition(mu)
    for p, name in ((lam, "lambda"), (mu, "mu")):
        first = p.parts[0] if p.parts else 0
        bound = p.size + first
        if n < bound:
            raise ValueError(
                f"n = {n} violates n >= |{name}| + {name}_1 = {bound}")
    lam_pad = lam.padded(n)
    mu_pad = mu.padded(n)
    out = {}
    for k in range(lam.size + mu.size + 1):
        for tau in partitions_of(k):
            part = Partition(tau)
            first = part.parts[0] if part.parts else 0
            if first > n - k:
                continue
            g = kronecker_coeff(lam_pad, mu_pad, part.padded(n))
            if g:
                out[part] = g
    return SchurVector(out)


# ---------------------------------------------------------------- dimension identity

def charlier(m: int) -> MPoly:
    """The m-th Charlier polynomial, as an alternating sum of falling factorials."""
    if m < 0:
        raise ValueError(f"Charlier polynomials need m >= 0; got {m}")
    t = MPoly.var("t")
    out = MPoly.zero()
    for k in range(m + 1):
        term = falling_factorial("t", k) * comb(m, k)
        out = out + (term if k % 2 == 0 else term * -1)
    return out


_DIM_LIMIT = 8


def deligne_dim(lam) -> MPoly:
    """Interpolated dimension of the simple object for a partition.

    (deg chi^lam / n!) times the product of (t - (lam_i + n - i)) over
    i = 1..n, with lam padded by zeros to length n = |lam|.
    """
    lam = Partition(lam)
    n = lam.size
    if n > _DIM_LIMIT:
        raise ScaleLimitError(f"dimension formulas are limited to |partition| <= {_DIM_LIMIT}; got {n}")
    parts = list(lam.parts) + [0] * (n - len(lam.parts))
    t = MPoly.var("t")
    out = MPoly.const(Fraction(mn_character_value(lam.parts, (1,) * n), factorial(n)))
    for i, part in enumerate(parts, start=1):
        out = out * (t - MPoly.const(part + n - i))
    return out


def charlier_dimension_sum(lam) -> MPoly:
    """The Charlier-side dimension sum over cycle types.

    Sum over mu of n of (-1)^len(mu) chi^lam_mu C_{m_1(mu)} / z_mu, where
    m_1 counts the parts equal to 1.
    """
    lam = Partition(lam)
    n = lam.size
    if n > _DIM_LIMIT:
        raise ScaleLimitError(f"dimension formulas are limited to |partition| <= {_DIM_LIMIT}; got {n}")
    out = MPoly.zero()
    for mu, z in _classes(n):
        chi = mn_character_value(lam.parts, mu)
        if chi == 0:
            continue
        ones = sum(1 for part in mu if part == 1)
        sign = -1 if len(mu) % 2 else 1
        out = out + charlier(ones) * Fraction(sign * chi, z)
    return out

"""Deformation-invariant data of (surface, curve class) and exponent bookkeeping.

Model geometries: an elliptic K3 with section (Picard lattice spanned by
``s``, ``f`` with ``s.s = -2``, ``s.f = 1``, ``f.f = 0``) and a product of
two elliptic curves, whose cohomology is the exterior algebra on
``dx1, dy1, dx2, dy2``.

Cohomological degrees are stored doubled (:class:`CohDegree`) so the
half-integral degrees of odd classes on abelian surfaces stay integral.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import NonIntegralExponent
from .series import rat


class SurfaceKind(enum.Enum):
    K3 = "k3"
    ABELIAN = "abelian"

    @classmethod
    def parse(cls, s) -> SurfaceKind:
        if isinstance(s, cls):
            return s
        return cls(str(s).lower())


@dataclass(frozen=True)
class CohDegree:
    """Complex cohomological degree of a class on a surface, stored doubled."""

    doubled: int

    def __post_init__(self):
        if not 0 <= self.doubled <= 4:
            raise ValueError(f"surface classes have complex degree in [0, 2], got {self.complex}")

    @classmethod
    def of(cls, complex_degree) -> CohDegree:
        d = rat(complex_degree) * 2
        if d.denominator != 1:
            raise ValueError(f"degree {complex_degree} is not a multiple of 1/2")
        return cls(int(d))

    @property
    def complex(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def is_integral(self) -> bool:
        return self.doubled % 2 == 0


POINT = CohDegree(4)
UNIT = CohDegree(0)


@dataclass(frozen=True)
class CurveClass:
    """The class ``beta_{m,r}``: self-intersection ``r^2 m``, divisibility ``r``."""

    kind: SurfaceKind
    m: int
    r: int = 1

    def __post_init__(self):
        if self.m % 2:
            raise ValueError(f"m must be even, got {self.m}")
        if self.r < 1:
            raise ValueError(f"divisibility must be positive, got {self.r}")

    def self_intersection(self) -> int:
        return self.r**2 * self.m

    def divisibility(self) -> int:
        return self.r

    def is_effective(self) -> bool:
        if self.kind is SurfaceKind.K3:
            return self.m >= -2
        return self.m >= 0

    def as_k3_class(self) -> K3Class:
        if self.kind is not SurfaceKind.K3:
            raise ValueError("not a K3 class")
        return K3Class(self.r, Fraction(self.r * (self.m + 2), 2))


def divisors(r: int) -> list[int]:
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    small = [d for d in range(1, int(r**0.5) + 1) if r % d == 0]
    return sorted(set(small + [r // d for d in small]))


def is_effective_primitive_image(kind, m: int, k_ratio: int) -> bool:
    """Whether ``beta_{k_ratio^2 m, 1}`` (the image of ``beta_{m, k_ratio}``) is effective.

    K3: effective iff ``m >= 0`` or ``(m, k_ratio) == (-2, 1)``.  Abelian: iff ``m >= 0``.
    """
    kind = SurfaceKind.parse(kind)
    if m % 2:
        raise ValueError(f"m must be even, got {m}")
    if k_ratio < 1:
        raise ValueError(f"k_ratio must be positive, got {k_ratio}")
    if m >= 0:
        return True
    return kind is SurfaceKind.K3 and (m, k_ratio) == (-2, 1)


# -- abelian surface cohomology ----------------------------------------------------

GENERATORS = ("dx1", "dy1", "dx2", "dy2")


def _wedge_sign(a: tuple, b: tuple):
    """Sign and sorted index tuple of ``e_a ^ e_b``, or ``(0, None)``."""
    if set(a) & set(b):
        return 0, None
    seq = list(a + b)
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1) ** inversions, tuple(sorted(seq))


class AbelianClass:
    """Element of the exterior algebra on ``dx1, dy1, dx2, dy2`` with rational coefficients.

    Stored as ``{sorted generator-index tuple: coefficient}``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, object] = ()):
        t = {}
        for k, v in dict(terms).items():
            key = tuple(k)
            if list(key) != sorted(set(key)) or any(not 0 <= i < 4 for i in key):
                raise ValueError(f"bad monomial {k}")
            v = rat(v)
            if v:
                t[key] = t.get(key, 0) + v
        self._terms = MappingProxyType({k: v for k, v in t.items() if v})

    @classmethod
    def generator(cls, name: str) -> AbelianClass:
        return cls({(GENERATORS.index(name),): 1})

    @classmethod
    def unit(cls) -> AbelianClass:
        return cls({(): 1})

    @classmethod
    def point(cls) -> AbelianClass:
        return cls({(0, 1, 2, 3): 1})

    @classmethod
    def fiber(cls, i: int) -> AbelianClass:
        """``f_i = dx_i ^ dy_i``."""
        return cls({(2 * i - 2, 2 * i - 1): 1})

    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        return self._terms

    def wedge(self, other: AbelianClass) -> AbelianClass:
        out: dict[tuple, Fraction] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                sign, key = _wedge_sign(a, b)
                if sign:
                    out[key] = out.get(key, 0) + sign * ca * cb
        return AbelianClass(out)

    __xor__ = wedge

    def __add__(self, other: AbelianClass) -> AbelianClass:
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return AbelianClass(out)

    def __mul__(self, c) -> AbelianClass:
        c = rat(c)
        return AbelianClass({k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, AbelianClass) and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def degree(self) -> CohDegree | None:
        """Doubled degree if homogeneous (word length = doubled degree), else None."""
        lengths = {len(k) for k in self._terms}
        if len(lengths) == 1:
            return CohDegree(lengths.pop())
        return None

    def __repr__(self):
        if not self._terms:
            return "AbelianClass(0)"
        parts = []
        for k, v in sorted(self._terms.items()):
            mon = "^".join(GENERATORS[i] for i in k) or "1"
            parts.append(f"{v}*{mon}")
        return "AbelianClass(" + " + ".join(parts) + ")"


def phi_r_abelian(c: AbelianClass, r: int) -> AbelianClass:
    """Algebra automorphism scaling ``dy1`` by ``1/r`` and ``dy2`` by ``r``."""
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    scale = (Fraction(1), Fraction(1, r), Fraction(1), Fraction(r))
    out = {}
    for k, v in c.terms.items():
        f = Fraction(1)
        for i in k:
            f *= scale[i]
        out[k] = v * f
    return AbelianClass(out)


# -- K3 cohomology (rank-2 model plus an opaque transcendental part) -----------------

@dataclass(frozen=True)
class Gram:
    """Symmetric pairing on labelled transcendental vectors."""

    entries: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        sym = {}
        for (a, b), v in dict(self.entries).items():
            v = rat(v)
            for key in ((a, b), (b, a)):
                if key in sym and sym[key] != v:
                    raise ValueError(f"inconsistent Gram entry for {key}")
                sym[key] = v
        object.__setattr__(self, "entries", MappingProxyType(sym))

    def pair(self, u: Mapping[str, Fraction], v: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for a, x in u.items():
            for b, y in v.items():
                total += x * y * self.entries.get((a, b), 0)
        return total

    def __hash__(self):
        return hash(frozenset(self.entries.items()))


EMPTY_GRAM = Gram()


@dataclass(frozen=True)
class K3Class:
    """A degree-2 class ``s_coeff*s + f_coeff*f + v`` with ``v`` orthogonal to ``s, f``."""

    s: Fraction = Fraction(0)
    f: Fraction = Fraction(0)
    transcendental: Mapping[str, Fraction] = field(default_factory=dict)
    gram: Gram = EMPTY_GRAM

    def __post_init__(self):
        object.__setattr__(self, "s", rat(self.s))
        object.__setattr__(self, "f", rat(self.f))
        t = {k: rat(v) for k, v in dict(self.transcendental).items() if rat(v)}
        object.__setattr__(self, "transcendental", MappingProxyType(t))

    def __hash__(self):
        return hash((self.s, self.f, frozenset(self.transcendental.items()), self.gram))

    def __eq__(self, other):
        if not isinstance(other, K3Class):
            return NotImplemented
        return (self.s, self.f, dict(self.transcendental)) == (
            other.s,
            other.f,
            dict(other.transcendental),
        )

    def _gram_with(self, other: K3Class) -> Gram:
        if self.gram is EMPTY_GRAM:
            return other.gram
        if other.gram is not EMPTY_GRAM and other.gram != self.gram:
            raise ValueError("classes carry different Gram contexts")
        return self.gram

    def pair(self, other: K3Class) -> Fraction:
        lattice = -2 * self.s * other.s + self.s * other.f + self.f * other.s
        return lattice + self._gram_with(other).pair(self.transcendental, other.transcendental)

    def __add__(self, other: K3Class) -> K3Class:
        t = dict(self.transcendental)
        for k, v in other.transcendental.items():
            t[k] = t.get(k, 0) + v
        return K3Class(self.s + other.s, self.f + other.f, t, self._gram_with(other))

    def __mul__(self, c) -> K3Class:
        c = rat(c)
        t = {k: c * v for k, v in self.transcendental.items()}
        return K3Class(c * self.s, c * self.f, t, self.gram)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        return f"K3Class({format_k3_class(self)})"


SECTION = K3Class(1, 0)
FIBER = K3Class(0, 1)


def phi_mr_k3(c: K3Class, m: int, r: int) -> K3Class:
    """Isometry sending ``beta_{m,r}`` to ``s + (r^2 m/2 + 1) f`` and ``f`` to ``r f``.

    Solving on ``span(s, f)`` gives ``s -> (s + (1 - r^2) f) / r``; the
    transcendental part is fixed.
    """
    if r < 1:
        raise ValueError(f"r must be positive, got {r}")
    if m % 2:
        raise ValueError(f"m must be even, got {m}")
    img_s = K3Class(Fraction(1, r), Fraction(1 - r * r, r))
    img_f = K3Class(0, r)
    lattice = img_s * c.s + img_f * c.f
    return K3Class(lattice.s, lattice.f, c.transcendental, c.gram)


# -- weighted partitions and exponents -------------------------------------------------

@dataclass(frozen=True)
class WeightedPart:
    size: int
    degree: CohDegree
    label: str = ""


@dataclass(frozen=True)
class WeightedPartition:
    parts: tuple[WeightedPart, ...] = ()

    def __post_init__(self):
        sizes = [p.size for p in self.parts]
        if any(s < 1 for s in sizes):
            raise ValueError("part sizes must be positive")
        if sizes != sorted(sizes, reverse=True):
            object.__setattr__(
                self, "parts", tuple(sorted(self.parts, key=lambda p: -p.size))
            )

    @property
    def n(self) -> int:
        return sum(p.size for p in self.parts)

    def __len__(self):
        return len(self.parts)

    def concat(self, other: WeightedPartition) -> WeightedPartition:
        return WeightedPartition(self.parts + other.parts)


def partition_degree(lam: WeightedPartition) -> Fraction:
    """Complex degree ``n - l + sum deg(delta_i)`` of the Hilbert scheme class."""
    doubled = 2 * (lam.n - len(lam)) + sum(p.degree.doubled for p in lam.parts)
    return Fraction(doubled, 2)


def mcf_exponent(g: int, degrees: Iterable[CohDegree]) -> Fraction:
    """``2g - 3 + sum deg_C(gamma_i)``."""
    return Fraction(2 * (2 * g - 3) + sum(d.doubled for d in degrees), 2)


def nu_exponent(partition_deg, descendents: Iterable[tuple[int, CohDegree]], n: int) -> int:
    """``deg(lambda) + sum(a_i - 2 + deg(gamma_i)) - 2n - 1`` for PT descendents ``a_i >= 2``."""
    total = rat(partition_deg) - 2 * n - 1
    for a, d in descendents:
        if a < 2:
            raise ValueError(f"descendent index must be >= 2, got {a}")
        total += a - 2 + d.complex
    if total.denominator != 1:
        raise NonIntegralExponent(f"nu = {total} is not an integer")
    return int(total)


# -- text forms ----------------------------------------------------------------------

_NAMED_DEGREES = {
    "1": 0, "p": 4, "s": 2, "f": 2, "f1": 2, "f2": 2,
    "dx1": 1, "dy1": 1, "dx2": 1, "dy2": 1,
}


def parse_weight(token: str) -> CohDegree:
    """``1``, ``p``, ``s``, ``f``, ``f1``, ``dx1``, ... or ``d=<complex degree>``."""
    token = token.strip()
    if token.startswith("d="):
        return CohDegree.of(token[2:])
    if token in _NAMED_DEGREES:
        return CohDegree(_NAMED_DEGREES[token])
    raise ValueError(f"unknown weight {token!r}")


_PART_RE = re.compile(r"\(\s*(\d+)\s*:\s*([^()]+?)\s*\)")


def parse_weighted_partition(text: str) -> WeightedPartition:
    """Parse e.g. ``"(2:p)(1:1)"``; the empty string is the empty partition."""
    text = text.strip()
    parts = []
    pos = 0
    for mt in _PART_RE.finditer(text):
        if text[pos : mt.start()].strip():
            raise ValueError(f"cannot parse weighted partition {text!r}")
        parts.append(WeightedPart(int(mt.group(1)), parse_weight(mt.group(2)), mt.group(2)))
        pos = mt.end()
    if text[pos:].strip():
        raise ValueError(f"cannot parse weighted partition {text!r}")
    return WeightedPartition(tuple(parts))


_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z_][A-Za-z0-9_]*)\s*")


def parse_k3_class(text: str, gram: Gram = EMPTY_GRAM) -> K3Class:
    """Parse e.g. ``"s+3f"``, ``"2s - 1/2 f + t1"``; other names are transcendental labels."""
    text = text.strip()
    if text in ("", "0"):
        return K3Class(gram=gram)
    s, f, t = Fraction(0), Fraction(0), {}
    pos = 0
    while pos < len(text):
        mt = _TERM_RE.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse K3 class {text!r}")
        if pos > 0 and mt.group(1) is None:
            raise ValueError(f"missing sign in {text!r}")
        c = Fraction(mt.group(2) or 1) * (-1 if mt.group(1) == "-" else 1)
        name = mt.group(3)
        if name == "s":
            s += c
        elif name == "f":
            f += c
        else:
            t[name] = t.get(name, 0) + c
        pos = mt.end()
    return K3Class(s, f, t, gram)


def format_k3_class(c: K3Class) -> str:
    parts = []
    for name, v in [("s", c.s), ("f", c.f)] + sorted(c.transcendental.items()):
        if v:
            parts.append(f"{v}{name}" if v != 1 else name)
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out

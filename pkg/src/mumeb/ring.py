"""Finite commutative rings with d elements.

A ring is a direct sum of local components, each either a finite field
F_{p^a} (realized as Z_p[t] modulo a monic irreducible polynomial) or the
integers mod p^a.  Elements are nested tuples: one part per component,
where a field part is a coefficient tuple of length a (low degree first)
and a mod part is a plain integer.  Everything is immutable, so elements
can be hashed, compared, and shared freely.

Phases of additive-character values are carried as `fractions.Fraction`
reduced into [0, 1); a value t stands for exp(2*pi*i*t).  No floating
point enters the exact path.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from math import gcd, prod

from .errors import BadSpec, NonPrime, NotAUnit, ShapeMismatch


def phase(num: int, den: int = 1) -> Fraction:
    """Reduced rational in [0, 1) standing for exp(2*pi*i*num/den)."""
    return Fraction(num, den) % 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n as (p, a) pairs, sorted by p**a ascending."""
    if n < 2:
        raise ValueError(f"cannot factor {n}: need n >= 2")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            out.append((p, a))
        p += 1
    if n > 1:
        out.append((n, 1))
    out.sort(key=lambda pa: (pa[0] ** pa[1], pa[0]))
    return out


# --- polynomial arithmetic over Z_p (coefficient lists, low degree first) ---

def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                out[i + j] = (out[i + j] + fi * gj) % p
    return _trim(out)


def _poly_mod(f: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of f modulo a monic polynomial m."""
    f = list(f)
    dm = len(m) - 1
    while len(f) - 1 >= dm and f:
        lead = f[-1]
        shift = len(f) - 1 - dm
        if lead:
            for j, mj in enumerate(m):
                f[shift + j] = (f[shift + j] - lead * mj) % p
        f.pop()
        _trim(f)
    return f


def _poly_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = list(f), list(g)
    while g:
        # make g monic so _poly_mod applies
        inv = pow(g[-1], p - 2, p)
        g = [(c * inv) % p for c in g]
        f, g = g, _poly_mod(f, g, p)
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [(c * inv) % p for c in f]
    return f


def _poly_powmod(f: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(f), m, p)
    while e > 0:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _is_irreducible(p: int, a: int, coeffs: tuple[int, ...]) -> bool:
    """Test x^a + sum(coeffs[j] x^j) for irreducibility over Z_p.

    Degree <= 3 reduces to a root search; otherwise the polynomial is
    irreducible iff it shares no factor with x^(p^k) - x for k <= a/2.
    """
    if a == 1:
        return True
    full = list(coeffs) + [1]
    if a <= 3:
        for x in range(p):
            acc = 0
            for c in reversed(full):
                acc = (acc * x + c) % p
            if acc == 0:
                return False
        return True
    for k in range(1, a // 2 + 1):
        xpk = _poly_powmod([0, 1], p ** k, full, p)
        xpk = list(xpk)
        while len(xpk) < 2:
            xpk.append(0)
        xpk[1] = (xpk[1] - 1) % p
        if _poly_gcd(full, _trim(xpk), p):
            return False
    return True


def find_irreducible(p: int, a: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree a over Z_p.

    Returns the non-leading coefficients (c_0, ..., c_{a-1}); "smallest"
    means minimal integer encoding sum(c_j p^j), so the result is stable
    across runs.  Degree 1 returns the empty tuple (prime field).
    """
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if a < 1:
        raise BadSpec(f"degree must be >= 1, got {a}")
    if a == 1:
        return ()
    for enc in range(p ** a):
        coeffs = []
        n = enc
        for _ in range(a):
            coeffs.append(n % p)
            n //= p
        coeffs = tuple(coeffs)
        if _is_irreducible(p, a, coeffs):
            return coeffs
    raise AssertionError("no irreducible polynomial found")  # unreachable


# --- ring specification ---

class Kind(str, Enum):
    FIELD = "field"
    MOD = "mod"


@dataclass(frozen=True)
class ComponentSpec:
    p: int
    a: int
    kind: Kind
    modulus: tuple[int, ...] | None = None  # field kind only; None picks the minimal one

    @property
    def size(self) -> int:
        return self.p ** self.a


@dataclass(frozen=True)
class RingSpec:
    components: tuple[ComponentSpec, ...]

    @property
    def d(self) -> int:
        return prod(c.size for c in self.components)

    def validate(self) -> None:
        if not self.components:
            raise BadSpec("ring needs at least one component")
        for c in self.components:
            if not is_prime(c.p):
                raise NonPrime(f"{c.p} is not prime")
            if c.a < 1:
                raise BadSpec(f"component degree must be >= 1, got {c.a}")
            if c.kind is Kind.MOD and c.modulus is not None:
                raise BadSpec("mod components take no modulus")
        keys = [(c.size, c.p) for c in self.components]
        if keys != sorted(keys):
            raise BadSpec(
                "components must be sorted ascending by p**a (ties by p); "
                f"got sizes {[c.size for c in self.components]}"
            )


def spec_for(d: int, kind: Kind) -> RingSpec:
    """Canonical spec for d: one component per prime power, all of one kind."""
    comps = tuple(ComponentSpec(p, a, kind) for p, a in factorize(d))
    return RingSpec(comps)


# --- runtime components ---

class FieldComponent:
    """F_{p^a} as Z_p[t] mod a monic irreducible; elements are coeff tuples."""

    kind = Kind.FIELD

    def __init__(self, p: int, a: int, modulus: tuple[int, ...] | None = None):
        if modulus is None:
            modulus = find_irreducible(p, a)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != (0 if a == 1 else a):
                raise BadSpec(f"modulus for F_{p}^{a} must list {a} coefficients")
            if a > 1 and not _is_irreducible(p, a, modulus):
                raise BadSpec(f"modulus {list(modulus)} is reducible over Z_{p}")
        self.p = p
        self.a = a
        self.modulus = modulus
        self.size = p ** a
        self.zero = (0,) * a
        self.one = (1,) + (0,) * (a - 1)
        # monic reduction polynomial; degree-1 case never triggers a reduction
        self._full_modulus = list(modulus) + [1] if a > 1 else [0, 1]

    def elements(self) -> list[tuple[int, ...]]:
        out = []
        for enc in range(self.size):
            c = []
            n = enc
            for _ in range(self.a):
                c.append(n % self.p)
                n //= self.p
            out.append(tuple(c))
        return out

    def encode(self, x: tuple[int, ...]) -> int:
        n = 0
        for c in reversed(x):
            n = n * self.p + c
        return n

    def check(self, x) -> None:
        if (
            not isinstance(x, tuple)
            or len(x) != self.a
            or not all(isinstance(c, int) and 0 <= c < self.p for c in x)
        ):
            raise ShapeMismatch(f"{x!r} is not an element of F_{self.p}^{self.a}")

    def add(self, x, y):
        return tuple((u + v) % self.p for u, v in zip(x, y))

    def sub(self, x, y):
        return tuple((u - v) % self.p for u, v in zip(x, y))

    def neg(self, x):
        return tuple(-u % self.p for u in x)

    def mul(self, x, y):
        r = _poly_mod(_poly_mul(list(x), list(y), self.p), self._full_modulus, self.p)
        return tuple(r) + (0,) * (self.a - len(r))

    def pow(self, x, e: int):
        result = self.one
        base = x
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_unit(self, x) -> bool:
        return x != self.zero

    def invert(self, x):
        if x == self.zero:
            raise NotAUnit(f"0 is not invertible in F_{self.p}^{self.a}")
        return self.pow(x, self.size - 2)

    def trace(self, x) -> int:
        """Absolute trace into Z_p by summing Frobenius powers."""
        acc = x
        frob = x
        for _ in range(self.a - 1):
            frob = self.pow(frob, self.p)
            acc = self.add(acc, frob)
        if any(acc[1:]):
            raise AssertionError(f"trace of {x} landed outside the prime subfield")
        return acc[0]

    def char_phase(self, x) -> Fraction:
        return phase(self.trace(x), self.p)

    def from_scalar(self, k: int):
        return (k % self.p,) + (0,) * (self.a - 1)


class ModComponent:
    """Integers mod p^a; elements are plain ints in [0, p^a)."""

    kind = Kind.MOD

    def __init__(self, p: int, a: int):
        self.p = p
        self.a = a
        self.modulus = None
        self.size = p ** a
        self.zero = 0
        self.one = 1 % self.size

    def elements(self) -> list[int]:
        return list(range(self.size))

    def encode(self, x: int) -> int:
        return x

    def check(self, x) -> None:
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < self.size:
            raise ShapeMismatch(f"{x!r} is not an element of Z_{self.size}")

    def add(self, x, y):
        return (x + y) % self.size

    def sub(self, x, y):
        return (x - y) % self.size

    def neg(self, x):
        return -x % self.size

    def mul(self, x, y):
        return (x * y) % self.size

    def is_unit(self, x) -> bool:
        return x % self.p != 0

    def invert(self, x):
        if x % self.p == 0:
            raise NotAUnit(f"{x} shares the factor {self.p} with {self.size}")
        return pow(x, -1, self.size)

    def char_phase(self, x) -> Fraction:
        return phase(x, self.size)

    def from_scalar(self, k: int):
        return k % self.size


class Ring:
    """A direct sum of field and mod components with a fixed element order.

    The element order is mixed-radix with the first component most
    significant; each component orders its own elements by integer
    encoding.  index(0) == 0 and the order is identical across runs.
    """

    def __init__(self, spec: RingSpec):
        spec.validate()
        self.spec = spec
        self.components = tuple(
            FieldComponent(c.p, c.a, c.modulus) if c.kind is Kind.FIELD else ModComponent(c.p, c.a)
            for c in spec.components
        )
        self.d = prod(c.size for c in self.components)
        self.zero = tuple(c.zero for c in self.components)
        self.one = tuple(c.one for c in self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ring):
            return NotImplemented
        return [(c.kind, c.p, c.a, c.modulus) for c in self.components] == [
            (c.kind, c.p, c.a, c.modulus) for c in other.components
        ]

    def __hash__(self):
        return hash(tuple((c.kind, c.p, c.a, c.modulus) for c in self.components))

    def __repr__(self) -> str:
        names = []
        for c in self.components:
            if c.kind is Kind.FIELD:
                names.append(f"F{c.size}")
            else:
                names.append(f"Z{c.size}")
        return "+".join(names)

    # -- element bookkeeping --

    @cached_property
    def elements(self) -> tuple:
        return tuple(itertools.product(*(c.elements() for c in self.components)))

    @cached_property
    def _index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, x) -> int:
        self.check(x)
        return self._index[x]

    def element(self, i: int):
        return self.elements[i]

    def check(self, x) -> None:
        if not isinstance(x, tuple) or len(x) != len(self.components):
            raise ShapeMismatch(f"{x!r} does not have {len(self.components)} parts")
        for c, part in zip(self.components, x):
            c.check(part)

    def scalar(self, k: int):
        """The element k*1, i.e. k reduced into every component."""
        return tuple(c.from_scalar(k) for c in self.components)

    # -- arithmetic --

    def add(self, x, y):
        self.check(x)
        self.check(y)
        return tuple(c.add(u, v) for c, u, v in zip(self.components, x, y))

    def sub(self, x, y):
        self.check(x)
        self.check(y)
        return tuple(c.sub(u, v) for c, u, v in zip(self.components, x, y))

    def mul(self, x, y):
        self.check(x)
        self.check(y)
        return tuple(c.mul(u, v) for c, u, v in zip(self.components, x, y))

    def neg(self, x):
        self.check(x)
        return tuple(c.neg(u) for c, u in zip(self.components, x))

    def is_unit(self, x) -> bool:
        self.check(x)
        return all(c.is_unit(u) for c, u in zip(self.components, x))

    def invert(self, x):
        self.check(x)
        return tuple(c.invert(u) for c, u in zip(self.components, x))

    def units(self) -> list:
        return [x for x in self.elements if all(c.is_unit(u) for c, u in zip(self.components, x))]

    def character(self, x) -> Fraction:
        """Additive-character exponent of x, a reduced rational in [0, 1)."""
        self.check(x)
        return sum(
            (c.char_phase(u) for c, u in zip(self.components, x)), start=Fraction(0)
        ) % 1

    # -- index-level tables (speed up basis construction) --

    @cached_property
    def add_table(self) -> list:
        els = self.elements
        return [[self._index[self.add(x, y)] for y in els] for x in els]

    @cached_property
    def mul_table(self) -> list:
        els = self.elements
        return [[self._index[self.mul(x, y)] for y in els] for x in els]

    @cached_property
    def character_by_index(self) -> list:
        return [self.character(x) for x in self.elements]

    @cached_property
    def is_generic(self) -> bool:
        return check_generic(self)

    def element_to_json(self, x):
        """Nested representation: field parts as coefficient lists, mod parts as ints."""
        self.check(x)
        return [list(u) if isinstance(u, tuple) else u for u in x]

    def element_from_json(self, obj):
        if not isinstance(obj, list) or len(obj) != len(self.components):
            raise ShapeMismatch(f"element {obj!r} does not have {len(self.components)} parts")
        parts = []
        for c, raw in zip(self.components, obj):
            if c.kind is Kind.FIELD:
                if not isinstance(raw, list):
                    raise ShapeMismatch(f"field part {raw!r} must be a coefficient list")
                part = tuple(raw)
            else:
                part = raw
            c.check(part)
            parts.append(part)
        return tuple(parts)

    def format_element(self, x) -> str:
        return str(self.element_to_json(x))


def make_ring(spec: RingSpec) -> Ring:
    return Ring(spec)


def fields_ring(d: int) -> Ring:
    """Direct sum of fields F_{p^a}, one per prime power of d, canonical order."""
    return Ring(spec_for(d, Kind.FIELD))


def zd_ring(d: int) -> Ring:
    """Z_d realized as the direct sum of its prime-power components Z_{p^a}."""
    return Ring(spec_for(d, Kind.MOD))


def check_generic(ring: Ring) -> bool:
    """Certify, without floating point, that the ring character is generic.

    For every a != 0 and every component where a has a nonzero part, the
    multiset of character phases of {a_j * x} must be uniform over a full
    cycle of m-th roots of unity with m >= 2; such a component sum is
    exactly zero, so the full sum over the ring factors to zero.
    """
    for a in ring.elements:
        if a == ring.zero:
            continue
        for comp, a_part in zip(ring.components, a):
            if a_part == comp.zero:
                continue  # this factor is the component size, handled elsewhere
            hist = Counter(comp.char_phase(comp.mul(a_part, x)) for x in comp.elements())
            m = len(hist)
            if m < 2:
                return False
            if len(set(hist.values())) != 1:
                return False
            if set(hist) != {phase(k, m) for k in range(m)}:
                return False
    return True

"""Dirichlet characters modulo k with exact root-of-unity values.

The unit group (Z/kZ)* is split into cyclic components: one per odd prime
power (generated by a primitive root), one of order 2 for 4 | k exactly,
and the pair <-1> x <5> for 2^e with e >= 3.  Each component carries a full
discrete-log table, so evaluating a character costs one lookup per component.

A character is an exponent vector (e_1, ..., e_c) with chi(g_i) = e(e_i / n_i)
where n_i is the order of component i.  Values are returned as `CharValue`,
an exponent over the character's order, never as a complex float.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd, lcm

import numpy as np


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (fine for desk-scale moduli)."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def multiplicative_order(g: int, n: int) -> int:
    """Order of g in (Z/nZ)*, computed from the factorisation of phi(n)."""
    if gcd(g, n) != 1:
        raise ValueError(f"{g} is not a unit mod {n}")
    order = euler_phi(n)
    for p in factorize(order):
        while order % p == 0 and pow(g, order // p, n) == 1:
            order //= p
    return order


def primitive_root(p: int) -> int:
    """Least primitive root of an odd prime p."""
    phi = p - 1
    qs = list(factorize(phi))
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in qs):
            return g
    raise ValueError(f"no primitive root found for {p}")


@dataclass(frozen=True, eq=False)
class Component:
    """A cyclic factor of (Z/kZ)*, living on the residues mod `modulus`."""

    prime: int
    modulus: int
    generator: int
    order: int
    log: np.ndarray = field(repr=False)  # log[u mod modulus]; -1 for non-units


def _odd_prime_power_component(p: int, e: int) -> Component:
    q = p**e
    g = primitive_root(p)
    if e > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    order = q - q // p
    log = np.full(q, -1, dtype=np.int64)
    x = 1
    for i in range(order):
        log[x] = i
        x = x * g % q
    return Component(p, q, g, order, log)


def _two_power_components(e: int) -> list[Component]:
    q = 1 << e
    if e == 1:
        return []
    if e == 2:
        log = np.full(4, -1, dtype=np.int64)
        log[1], log[3] = 0, 1
        return [Component(2, 4, 3, 2, log)]
    sign_log = np.full(q, -1, dtype=np.int64)
    five_log = np.full(q, -1, dtype=np.int64)
    x = 1
    for b in range(q >> 2):
        sign_log[x], five_log[x] = 0, b
        sign_log[q - x], five_log[q - x] = 1, b
        x = x * 5 % q
    return [Component(2, q, q - 1, 2, sign_log), Component(2, q, 5, q >> 2, five_log)]


@dataclass(frozen=True, eq=False)
class GroupStructure:
    modulus: int
    factors: dict[int, int]
    components: tuple[Component, ...]

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(c.order for c in self.components)

    @property
    def phi(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    @property
    def exponent(self) -> int:
        return lcm(*self.orders) if self.components else 1

    def logs(self, m: int) -> tuple[int, ...] | None:
        """Discrete logs of m in every component, or None for a non-unit."""
        m %= self.modulus
        if gcd(m, self.modulus) != 1:
            return None
        return tuple(int(c.log[m % c.modulus]) for c in self.components)

    @cached_property
    def unit_mask(self) -> np.ndarray:
        k = self.modulus
        return np.gcd(np.arange(k, dtype=np.int64), k) == 1


@lru_cache(maxsize=64)
def build_group(k: int) -> GroupStructure:
    if k < 2:
        raise ValueError("modulus must be at least 2")
    factors = factorize(k)
    comps: list[Component] = []
    for p, e in sorted(factors.items()):
        comps.extend(_two_power_components(e) if p == 2 else [_odd_prime_power_component(p, e)])
    return GroupStructure(k, factors, tuple(comps))


def roots_of_unity(n: int) -> np.ndarray:
    """e(j/n) for j < n; quarter turns are exact (1, i, -1, -i)."""
    j = np.arange(n, dtype=np.int64)
    quarter = (4 * j + n // 2) // n          # nearest multiple of 1/4
    rest = (4 * j - quarter * n) / (4.0 * n)  # |rest| <= 1/8
    return np.array([1, 1j, -1, -1j])[quarter % 4] * np.exp(2j * np.pi * rest)


@dataclass(frozen=True)
class CharValue:
    """Zero (j is None) or the root of unity e(j / order) with 0 <= j < order."""

    j: int | None
    order: int = 1

    def __post_init__(self):
        if self.j is not None and not 0 <= self.j < self.order:
            raise ValueError("root exponent out of range")

    @property
    def is_zero(self) -> bool:
        return self.j is None

    def __complex__(self):
        if self.j is None:
            return 0j
        return complex(roots_of_unity(self.order)[self.j])

    def __mul__(self, other: "CharValue") -> "CharValue":
        if self.j is None or other.j is None:
            return ZERO
        n = lcm(self.order, other.order)
        j = (self.j * (n // self.order) + other.j * (n // other.order)) % n
        g = gcd(j, n)
        return CharValue(j // g, n // g)

    def reduced(self) -> "CharValue":
        if self.j is None:
            return self
        g = gcd(self.j, self.order)
        return CharValue(self.j // g, self.order // g)

    def same_value(self, other: "CharValue") -> bool:
        return self.reduced() == other.reduced()


ZERO = CharValue(None, 1)


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    group: GroupStructure
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.group.components):
            raise ValueError("exponent vector does not match group structure")
        for e, n in zip(self.exponents, self.group.orders):
            if not 0 <= e < n:
                raise ValueError("exponent out of range")

    @property
    def modulus(self) -> int:
        return self.group.modulus

    @property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    @cached_property
    def order(self) -> int:
        return lcm(1, *(n // gcd(e, n) for e, n in zip(self.exponents, self.group.orders)))

    @cached_property
    def index(self) -> int:
        """Position in `enumerate_characters` order (last component fastest)."""
        i = 0
        for e, n in zip(self.exponents, self.group.orders):
            i = i * n + e
        return i

    @cached_property
    def _weights(self) -> tuple[int, ...]:
        # chi(m) = e(sum_i w_i * log_i(m) / order)
        out = []
        for e, n in zip(self.exponents, self.group.orders):
            g = gcd(e, n)
            out.append((e // g) * (self.order // (n // g)))
        return tuple(out)

    def __call__(self, m: int) -> CharValue:
        logs = self.group.logs(m)
        if logs is None:
            return ZERO
        return CharValue(sum(w * l for w, l in zip(self._weights, logs)) % self.order, self.order)

    @cached_property
    def table(self) -> np.ndarray:
        """Exponent of chi(m) over `order` for m = 0..k-1; -1 marks zeros."""
        k = self.modulus
        m = np.arange(k, dtype=np.int64)
        acc = np.zeros(k, dtype=np.int64)
        for w, c in zip(self._weights, self.group.components):
            if w:
                acc = (acc + w * c.log[m % c.modulus]) % self.order
        acc[~self.group.unit_mask] = -1
        acc.setflags(write=False)
        return acc

    @cached_property
    def complex_table(self) -> np.ndarray:
        roots = roots_of_unity(self.order)
        t = self.table
        out = np.where(t >= 0, roots[np.maximum(t, 0)], 0)
        out.setflags(write=False)
        return out

    def values(self, ms) -> np.ndarray:
        """Exponent table lookup for an integer array (negative m allowed)."""
        return self.table[np.mod(np.asarray(ms, dtype=np.int64), self.modulus)]

    @property
    def label(self) -> str:
        return f"{self.modulus}.{self.index}"

    def __repr__(self):
        return f"DirichletCharacter(k={self.modulus}, exponents={self.exponents})"


def character_from_index(group: GroupStructure, i: int) -> DirichletCharacter:
    if not 0 <= i < group.phi:
        raise IndexError(f"character index {i} out of range for modulus {group.modulus}")
    exps = []
    for n in reversed(group.orders):
        i, e = divmod(i, n)
        exps.append(e)
    return DirichletCharacter(group, tuple(reversed(exps)))


def enumerate_characters(k: int) -> list[DirichletCharacter]:
    g = build_group(k)
    return [DirichletCharacter(g, exps) for exps in itertools.product(*(range(n) for n in g.orders))]


def char_eval(chi: DirichletCharacter, m: int) -> CharValue:
    return chi(m)


def quadratic_character(k: int) -> DirichletCharacter:
    """The unique character of order 2 modulo an odd prime."""
    if k < 3 or k % 2 == 0 or not is_prime(k):
        raise ValueError(f"quadratic_character needs an odd prime modulus, got {k}")
    g = build_group(k)
    return DirichletCharacter(g, ((k - 1) // 2,))


def modulus_class(k: int) -> str:
    """'prime', 'prime-power' (p^e, e >= 2) or 'other'."""
    f = factorize(k)
    if len(f) == 1:
        return "prime" if next(iter(f.values())) == 1 else "prime-power"
    return "other"


_BURGESS_EXPONENT = {"prime": 1 / 4, "prime-power": 1 / 3, "other": 3 / 8}


def burgess_threshold(k: int, eps: float) -> float:
    """B_eps(k): k^(1/4+eps), k^(1/3+eps) or k^(3/8+eps) by modulus class."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    if k < 2:
        raise ValueError("modulus must be at least 2")
    return float(k) ** (_BURGESS_EXPONENT[modulus_class(k)] + eps)


# --- exact sums of roots of unity -----------------------------------------

@lru_cache(maxsize=256)
def cyclotomic_coefficients(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_coefficients(d)))
    return tuple(num)


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    a = a[:]
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        out[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    return out


def root_sum_is_zero(counts, order: int) -> bool:
    """Whether sum_j counts[j] * e(j/order) vanishes, decided exactly.

    Reduces the integer polynomial sum_j counts[j] x^j modulo the cyclotomic
    polynomial of degree phi(order).
    """
    rem = [int(c) for c in counts]
    phi = cyclotomic_coefficients(order)
    deg = len(phi) - 1
    for i in range(len(rem) - 1, deg - 1, -1):
        c = rem[i]
        if c:
            for j, pj in enumerate(phi):
                rem[i - deg + j] -= c * pj
    return not any(rem[:deg])

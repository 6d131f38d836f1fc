"""Table-driven finite fields of order <= 32 and transversal designs over them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import KTooLarge, UnsupportedOrder
from .model import DesignParams, DirectedDesign, GroupedDesign

# order -> (p, e, modulus coefficients c_0..c_e, lowest degree first)
IRREDUCIBLE = {
    4: (2, 2, (1, 1, 1)),        # x^2 + x + 1
    8: (2, 3, (1, 1, 0, 1)),     # x^3 + x + 1
    9: (3, 2, (1, 0, 1)),        # x^2 + 1
    16: (2, 4, (1, 1, 0, 0, 1)),  # x^4 + x + 1
    25: (5, 2, (2, 1, 1)),       # x^2 + x + 2
    27: (3, 3, (1, 2, 0, 1)),    # x^3 + 2x + 1
    32: (2, 5, (1, 0, 1, 0, 0, 1)),  # x^5 + x^2 + 1
}
PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)
SUPPORTED_ORDERS = tuple(sorted(PRIMES + tuple(IRREDUCIBLE)))


@dataclass(frozen=True)
class FiniteField:
    """Field on element indices ``0..q-1``.

    Index ``i`` encodes the polynomial whose base-p digits are its
    coefficients, so 0 and 1 are the additive and multiplicative identities.
    """

    q: int
    p: int
    e: int
    add: np.ndarray = field(repr=False, compare=False)
    mul: np.ndarray = field(repr=False, compare=False)

    def neg(self, a: int) -> int:
        return int(np.flatnonzero(self.add[a] == 0)[0])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(np.flatnonzero(self.mul[a] == 1)[0])


def _digits(x: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(ds, p: int) -> int:
    return sum(d * p**i for i, d in enumerate(ds))


def _polymul_mod(a: list[int], b: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    e = len(modulus) - 1
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # modulus is monic: x^e = -(c_0 + ... + c_{e-1} x^{e-1})
    for deg in range(len(prod) - 1, e - 1, -1):
        c = prod[deg]
        if c:
            prod[deg] = 0
            for i in range(e):
                prod[deg - e + i] = (prod[deg - e + i] - c * modulus[i]) % p
    return prod[:e]


@lru_cache(maxsize=None)
def field_build(q: int) -> FiniteField:
    if q in PRIMES:
        r = np.arange(q)
        return FiniteField(q, q, 1, (r[:, None] + r[None, :]) % q, (r[:, None] * r[None, :]) % q)
    if q not in IRREDUCIBLE:
        raise UnsupportedOrder(f"no field of order {q} (supported: {SUPPORTED_ORDERS})")
    p, e, modulus = IRREDUCIBLE[q]
    polys = [_digits(x, p, e) for x in range(q)]
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = _undigits([(x + y) % p for x, y in zip(polys[a], polys[b])], p)
            mul[a, b] = _undigits(_polymul_mod(polys[a], polys[b], modulus, p), p)
    return FiniteField(q, p, e, add, mul)


@dataclass(frozen=True)
class TdSpec:
    k: int
    n: int


def td_build(spec: Union[TdSpec, int], n: int = None) -> GroupedDesign:
    """TD(k, n) from the affine plane over GF(n).

    Group ``i`` holds points ``i*n .. i*n + n-1``.  Block ``(a, b)`` takes
    ``a*x_i + b`` in group ``i < n`` (with ``x_i`` the field element ``i``) and
    the slope ``a`` in group ``n`` when ``k = n + 1``.
    """
    if isinstance(spec, TdSpec):
        k, n = spec.k, spec.n
    else:
        k = spec
    if k < 2:
        raise KTooLarge(f"TD needs k >= 2, got {k}")
    groups = tuple(tuple(range(i * n, (i + 1) * n)) for i in range(k))
    if n == 1:
        # trivial TD(k, 1): one block through every group
        design = DirectedDesign(DesignParams(v=k, k=k, lam=1), (tuple(range(k)),))
        return GroupedDesign(design, groups, directed=False)
    F = field_build(n)
    if k > n + 1:
        raise KTooLarge(f"TD({k},{n}) needs k <= n+1 = {n + 1}")
    blocks = []
    for a in range(n):
        for b in range(n):
            pts = [i * n + int(F.add[F.mul[a, i], b]) for i in range(min(k, n))]
            if k == n + 1:
                pts.append(n * n + a)
            blocks.append(tuple(pts))
    design = DirectedDesign(DesignParams(v=k * n, k=k, lam=1), tuple(blocks))
    return GroupedDesign(design, groups, directed=False)

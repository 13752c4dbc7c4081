from typing import Iterable, List, Optional, Sequence

from sympy import QQ, S, Symbol, cyclotomic_poly
from sympy.polys.fields import FracElement

from ..errors import FieldTowerError, ZeroDenominatorError
from .rational import SymbolSpace, poly_divmod, univariate_coeffs


def _trim(coeffs: Iterable) -> List:
    out = list(coeffs)
    while out and not out[-1]:
        out.pop()
    return out


def _poly_mul(a: Sequence, b: Sequence, zero) -> List:
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = out[i + j] + x * y
    return _trim(out)


def _poly_sub(a: Sequence, b: Sequence, zero) -> List:
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else zero
        y = b[k] if k < len(b) else zero
        out.append(x - y)
    return _trim(out)


class QuotientRing:
    """K[w]/(p(w))，K 为精确域；p 不可约时即为代数扩张。"""

    def __init__(self, modulus: Sequence, zero, one, name: str = "w"):
        coeffs = _trim(modulus)
        if len(coeffs) < 2:
            raise FieldTowerError(f"{name} 的定义多项式次数至少为 1")
        lead = coeffs[-1]
        self.modulus = [c / lead for c in coeffs]
        self.degree = len(coeffs) - 1
        self.base_zero = zero
        self.base_one = one
        self.name = name
        self._power_sums: List = []

    def __repr__(self):
        return f"QuotientRing({self.name}, degree={self.degree})"

    def element(self, coeffs: Sequence) -> "QuotientElement":
        return QuotientElement(self, self._reduce([self._lift(c) for c in coeffs]))

    def _lift(self, c):
        if isinstance(c, QuotientElement) and c.ring is self:
            raise TypeError("系数不能是本环自身的元素")
        return self.base_one * c

    def _reduce(self, coeffs: Sequence) -> List:
        out = _trim(coeffs)
        d = self.degree
        while len(out) > d:
            top = out.pop()
            if top:
                shift = len(out) - d
                for i in range(d):
                    out[shift + i] = out[shift + i] - top * self.modulus[i]
            out = _trim(out)
        return out

    def scalar(self, value) -> "QuotientElement":
        return self.element([value])

    @property
    def zero(self) -> "QuotientElement":
        return QuotientElement(self, [])

    @property
    def one(self) -> "QuotientElement":
        return self.scalar(self.base_one)

    @property
    def gen(self) -> "QuotientElement":
        return self.element([self.base_zero, self.base_one])

    def modulus_text(self) -> str:
        """定义多项式，按降幂写出。"""
        gen = Symbol(self.name)
        expr = S.Zero
        for i, c in enumerate(self.modulus):
            if c:
                expr += (c.as_expr() if isinstance(c, FracElement) else QQ.to_sympy(c)) * gen**i
        return str(expr)

    def power_sums(self, count: int) -> List:
        """根的幂和 p_0..p_{count-1}，由 Newton 恒等式得到。"""
        d = self.degree
        # e_i = (-1)^i c_{d-i}
        e = [self.base_one] + [
            (self.modulus[d - i] if i % 2 == 0 else -self.modulus[d - i]) for i in range(1, d + 1)
        ]
        sums = self._power_sums
        if not sums:
            sums.append(self.base_one * d)
        while len(sums) < count:
            k = len(sums)
            total = self.base_zero
            for i in range(1, min(k, d + 1)):
                term = e[i] * sums[k - i]
                total = total + term if i % 2 == 1 else total - term
            if k <= d:
                term = e[k] * k
                total = total + term if k % 2 == 1 else total - term
            sums.append(total)
        return sums[:count]

    def trace(self, value: "QuotientElement"):
        """对 p 的全部根求和。"""
        coeffs = value.coeffs if isinstance(value, QuotientElement) and value.ring is self else [self._lift(value)]
        sums = self.power_sums(max(len(coeffs), 1))
        total = self.base_zero
        for c, s in zip(coeffs, sums):
            if c:
                total = total + c * s
        return total


class QuotientElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: QuotientRing, coeffs: List):
        self.ring = ring
        self.coeffs = coeffs

    def __repr__(self):
        return f"QuotientElement({self.ring.name}, {self.coeffs!r})"

    def _same(self, other) -> bool:
        return isinstance(other, QuotientElement) and other.ring is self.ring

    def __bool__(self):
        return any(bool(c) for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, float):
            return False
        return not bool(self - other)

    __hash__ = None

    def __neg__(self):
        return QuotientElement(self.ring, [-c for c in self.coeffs])

    def __add__(self, other):
        if self._same(other):
            n = max(len(self.coeffs), len(other.coeffs))
            zero = self.ring.base_zero
            out = [
                (self.coeffs[k] if k < len(self.coeffs) else zero)
                + (other.coeffs[k] if k < len(other.coeffs) else zero)
                for k in range(n)
            ]
            return QuotientElement(self.ring, _trim(out))
        other = self.ring._lift(other)
        out = list(self.coeffs) or [self.ring.base_zero]
        out[0] = out[0] + other
        return QuotientElement(self.ring, _trim(out))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._same(other):
            product = _poly_mul(self.coeffs, other.coeffs, self.ring.base_zero)
            return QuotientElement(self.ring, self.ring._reduce(product))
        other = self.ring._lift(other)
        if not other:
            return self.ring.zero
        return QuotientElement(self.ring, _trim([c * other for c in self.coeffs]))

    __rmul__ = __mul__

    def inverse(self) -> "QuotientElement":
        """扩展欧几里得求逆；与模多项式不互素时抛出 FieldTowerError。"""
        if not self:
            raise ZeroDenominatorError(f"{self.ring.name} 中除以零")
        zero = self.ring.base_zero
        r0, r1 = list(self.ring.modulus), list(self.coeffs)
        s0, s1 = [], [self.ring.base_one]
        while r1:
            quot, rem = poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, zero), zero)
        if len(r0) > 1:
            raise FieldTowerError(
                f"{self.ring.name} 中的元素与定义多项式不互素",
                denominator=r0,
            )
        factor = self.ring.base_one / r0[0]
        return QuotientElement(self.ring, self.ring._reduce([c * factor for c in s0]))

    def __truediv__(self, other):
        if self._same(other):
            return self * other.inverse()
        other = self.ring._lift(other)
        if not other:
            raise ZeroDenominatorError(f"{self.ring.name} 中除以零")
        inv = self.ring.base_one / other
        return QuotientElement(self.ring, _trim([c * inv for c in self.coeffs]))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def is_scalar(self) -> bool:
        return len(self.coeffs) <= 1

    def scalar_part(self):
        return self.coeffs[0] if self.coeffs else self.ring.base_zero

    def trace(self):
        return self.ring.trace(self)


def rational_ring(space: Optional[SymbolSpace], modulus: Sequence, name: str = "w") -> QuotientRing:
    if space is None:
        return QuotientRing([QQ.convert(c) for c in modulus], QQ(0), QQ(1), name=name)
    return QuotientRing([space.const(c) if not isinstance(c, FracElement) else c for c in modulus], space.zero, space.one, name=name)


def sqrt_ring(space: Optional[SymbolSpace], radicand, name: str = "s") -> QuotientRing:
    """K[s]/(s^2 - d)。"""
    zero = space.zero if space is not None else QQ(0)
    return rational_ring(space, [-radicand + zero, 0, 1], name=name)


def cyclotomic_ring(order: int, space: Optional[SymbolSpace] = None, name: str = "omega") -> QuotientRing:
    """K(ω)，ω 为 order 次本原单位根。"""
    if order < 1:
        raise ValueError("单位根的阶必须为正")
    if order <= 2:
        # ω = ±1 仍以一次模多项式表示
        return rational_ring(space, [1 if order == 2 else -1, 1], name=name)
    coeffs = [int(c) for c in reversed(cyclotomic_poly(order, polys=True).all_coeffs())]
    return rational_ring(space, coeffs, name=name)


def root_rings(f: FracElement, name: str) -> List[QuotientRing]:
    """f 关于 name 的分子在 K 上分解后，每个不可约因子给出一个 K[name]/(p)。"""
    field = f.field
    space = SymbolSpace([str(s) for s in field.symbols])
    rings = []
    _, factors = f.numer.factor_list()
    for factor, _multiplicity in factors:
        coeffs = univariate_coeffs(factor, name)
        if len(coeffs) < 2:
            continue
        modulus = [field.new(c, field.ring.one) for c in coeffs]
        rings.append(QuotientRing(modulus, space.zero, space.one, name=f"{name}_root{len(rings)}"))
    return rings


def root_multiplicities(f: FracElement, name: str) -> List[int]:
    _, factors = f.numer.factor_list()
    return [m for factor, m in factors if len(univariate_coeffs(factor, name)) >= 2]


def cyclotomic_sum_powers(r: int, j: int):
    """Σ_{k=0}^{r-1} ω^{jk}，ω 为 r 次本原单位根。"""
    if r < 2:
        raise ValueError("r 至少为 2")
    ring = cyclotomic_ring(r)
    omega_j = ring.gen ** (j % r)
    total = ring.zero
    power = ring.one
    for _ in range(r):
        total = total + power
        power = power * omega_j
    if not total.is_scalar():
        raise FieldTowerError(f"单位根幂和未落在有理数域：{total!r}")
    return total.scalar_part()


class FieldTower:
    """声明的数域塔：基域 Q 或 Q(符号)，可选再添 √d 与 r 次单位根。"""

    def __init__(self, space: Optional[SymbolSpace] = None, radicand=None, order: Optional[int] = None):
        self.space = space
        self.radicand = radicand
        self.order = order
        self.base_zero = space.zero if space is not None else QQ(0)
        self.base_one = space.one if space is not None else QQ(1)
        top = None
        if radicand is not None:
            top = sqrt_ring(space, radicand)
        if order is not None and order > 2:
            base = top
            if base is None:
                top = cyclotomic_ring(order, space)
            else:
                coeffs = [int(c) for c in reversed(cyclotomic_poly(order, polys=True).all_coeffs())]
                top = QuotientRing([base.scalar(c) for c in coeffs], base.zero, base.one, name="omega")
        self.top = top
        self.sqrt_level = None if radicand is None else (top if order is None or order <= 2 else top.base_one.ring)

    @property
    def zero(self):
        return self.top.zero if self.top is not None else self.base_zero

    @property
    def one(self):
        return self.top.one if self.top is not None else self.base_one

    def lift(self, value):
        return self.one * value

    def sqrt(self):
        if self.sqrt_level is None:
            raise FieldTowerError("数域塔未声明平方根")
        return self.lift(self.sqrt_level.gen)

    def omega(self):
        if self.order is None:
            raise FieldTowerError("数域塔未声明单位根")
        if self.order == 1:
            return self.one
        if self.order == 2:
            return -self.one
        return self.top.gen

    def scalar_part(self, value):
        """塔中元素落在基域时取出基域值，否则报错。"""
        while isinstance(value, QuotientElement):
            if not value.is_scalar():
                raise FieldTowerError(f"元素不在基域中：{value!r}")
            value = value.scalar_part()
        return value

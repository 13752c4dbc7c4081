from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import SymbolSpace, to_scalar
from .config import ALPHA_SYMBOL, U_SYMBOL, LambdaMode, lambda_name, z_name
from .errors import ConfigError


def potential_name(j: int) -> str:
    return f"v{j}"


@dataclass
class Model:
    """一次计算的模型参数：r、位势系数 v_1..v_{r+1}、非标记面参数 λ。"""

    r: int
    space: SymbolSpace
    v: Tuple = ()
    lambdas: Tuple = ()
    lambda_mode: LambdaMode = LambdaMode.SYMBOLIC
    n_max: int = 3
    symbolic_potential: bool = False
    meta: Dict = field(default_factory=dict)

    @property
    def N(self) -> int:
        return len(self.lambdas)

    def gen(self, name: str):
        return self.space.gen(name)

    def z(self, i: int):
        return self.space.gen(z_name(i))

    @property
    def u(self):
        return self.space.gen(U_SYMBOL)

    @property
    def alpha(self):
        return self.space.gen(ALPHA_SYMBOL)

    def coeff(self, j: int):
        """v_j，j 超出 1..r+1 时为 0。"""
        if 1 <= j <= self.r + 1:
            return self.v[j - 1]
        return self.space.zero

    def dV(self, x, order: int = 1):
        """V 的 order 阶导数在 x 处的值，V(z) = Σ v_j z^j / j。"""
        total = self.space.zero
        for j in range(1, self.r + 2):
            power = j - order
            if power < 0 or not self.v[j - 1]:
                continue
            factor = 1
            for m in range(j - 1, j - order, -1):
                factor *= m
            total += self.v[j - 1] * factor * x**power
        return total

    def V(self, x):
        total = self.space.zero
        for j in range(1, self.r + 2):
            if self.v[j - 1]:
                total += self.v[j - 1] * x**j / j
        return total

    def lambda_value(self, j: int):
        return self.lambdas[j - 1]

    def with_space(self, space: SymbolSpace) -> "Model":
        return Model(
            r=self.r,
            space=space,
            v=tuple(space.convert(c) for c in self.v),
            lambdas=tuple(space.convert(c) for c in self.lambdas),
            lambda_mode=self.lambda_mode,
            n_max=self.n_max,
            symbolic_potential=self.symbolic_potential,
            meta=dict(self.meta),
        )


def build_model(
    r: int,
    potential: Optional[Sequence] = None,
    N: int = 0,
    lambda_values: Optional[Sequence] = None,
    lambda_mode: LambdaMode = LambdaMode.SYMBOLIC,
    n_max: int = 3,
    extra_symbols: Iterable[str] = (),
) -> Model:
    """potential 为 v_1..v_{r+1} 的有理数，None 表示全部取符号；缺省 λ 为符号。"""
    if r < 2:
        raise ConfigError(f"r 必须至少为 2，实际为 {r}")
    names: List[str] = [ALPHA_SYMBOL, U_SYMBOL] + [z_name(i) for i in range(1, n_max + 1)]
    symbolic_potential = potential is None
    if symbolic_potential:
        names += [potential_name(j) for j in range(1, r + 2)]
    if lambda_mode == LambdaMode.INFINITY:
        N = 0
        lambda_values = None
    elif lambda_values is not None:
        N = len(lambda_values)
    elif N:
        names += [lambda_name(j) for j in range(1, N + 1)]
    names += list(extra_symbols)
    space = SymbolSpace(names)
    if symbolic_potential:
        v = tuple(space.gen(potential_name(j)) for j in range(1, r + 2))
    else:
        if len(potential) != r + 1:
            raise ConfigError(f"位势需要 {r + 1} 个系数，实际为 {len(potential)}")
        v = tuple(space.const(to_scalar(c)) for c in potential)
        if not v[-1]:
            raise ConfigError("v_{r+1} 不能为零")
    if lambda_values is not None:
        lambdas = tuple(space.const(to_scalar(c)) for c in lambda_values)
        mode = LambdaMode.VALUES
    else:
        lambdas = tuple(space.gen(lambda_name(j)) for j in range(1, N + 1))
        mode = lambda_mode
    return Model(
        r=r,
        space=space,
        v=v,
        lambdas=lambdas,
        lambda_mode=mode,
        n_max=n_max,
        symbolic_potential=symbolic_potential,
    )


def monomial_potential(r: int) -> List:
    """V(z) = z^{r+1}/(r+1)。"""
    return [0] * r + [1]

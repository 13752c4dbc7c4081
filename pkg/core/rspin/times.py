"""时间变量 t_{d,j} 与 λ 的约束。"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ

from ..algebra import SymbolSpace, rf_to_text, to_scalar
from ..config import ALPHA_SYMBOL
from ..errors import ConfigError
from ..report import CheckReport

INFINITY_TOKENS = ("inf", "infinity", "∞")


def c_coeff(d: int, j: int, r: int):
    """c_{d,j} = (−1)^d ∏_{i<d} (i + (j+1)/r)。"""
    if d < 0 or not 0 <= j <= r - 1:
        raise ValueError(f"c_{{{d},{j}}} 超出范围（r={r}）")
    value = QQ(1)
    step = QQ(j + 1, r)
    for i in range(d):
        value *= -(i + step)
    return value


def _is_infinite(value) -> bool:
    return value is None or (isinstance(value, str) and value.strip().lower() in INFINITY_TOKENS)


def _is_symbol(value) -> bool:
    if not isinstance(value, str) or _is_infinite(value):
        return False
    text = value.strip().lstrip("-")
    return not text.replace("/", "", 1).isdigit()


@dataclass
class LambdaField:
    """外场 λ_k；符号项代表 Λ_k^{1/r}，∞ 项不贡献。符号空间总含 α̂。"""

    space: SymbolSpace
    values: List = field(default_factory=list)

    @classmethod
    def parse(cls, lambdas: Iterable) -> "LambdaField":
        items = list(lambdas)
        names = [value.strip() for value in items if _is_symbol(value)]
        space = SymbolSpace([ALPHA_SYMBOL] + names)
        values = []
        for value in items:
            if _is_infinite(value):
                continue
            if _is_symbol(value):
                values.append(space.gen(value.strip()))
            else:
                values.append(space.const(to_scalar(value)))
        return cls(space=space, values=values)

    def power_sum(self, k: int):
        """Σ_k λ_k^{−k}。"""
        total = self.space.zero
        for value in self.values:
            if not value:
                raise ConfigError("λ = 0 没有 r 次根的逆")
            total += value ** (-k)
        return total


@dataclass
class TimesVector:
    r: int
    space: SymbolSpace
    values: Dict[Tuple[int, int], object] = field(default_factory=dict)

    def get(self, d: int, j: int):
        return self.values.get((d, j), self.space.zero)

    @property
    def is_zero(self) -> bool:
        return not any(self.values.values())

    def support(self) -> List[Tuple[int, int]]:
        return sorted(key for key, value in self.values.items() if value)

    def to_dict(self) -> Dict[str, str]:
        return {f"{d},{j}": rf_to_text(self.values[(d, j)]) for d, j in self.support()}


def zero_times(r: int, space: Optional[SymbolSpace] = None) -> TimesVector:
    return TimesVector(r=r, space=space or SymbolSpace([ALPHA_SYMBOL]))


def times_from_field(lambdas: Sequence, r: int, max_d: int = 2) -> TimesVector:
    """t_{d,j} = c_{d,j} Σ_k λ_k^{−(rd+j+1)}，d ≤ max_d。"""
    source = LambdaField.parse(lambdas)
    times = TimesVector(r=r, space=source.space)
    if not source.values:
        return times
    for d in range(max_d + 1):
        for j in range(r):
            times.values[(d, j)] = source.power_sum(r * d + j + 1) * source.space.const(c_coeff(d, j, r))
    return times


def constraint_check(lambdas: Sequence, r: int) -> CheckReport:
    """Σ_k λ_k^{−(j+1)} = 0，j = 0..r：前 r 个给出 t_{0,j} = 0，最后一个给出 t_{1,0} = 0。"""
    report = CheckReport(f"lambda_constraints_r{r}")
    source = LambdaField.parse(lambdas)
    for j in range(r + 1):
        label = f"Σ λ^-{j + 1} = 0"
        if j < r:
            label += f"（t0,{j}）"
        else:
            label += "（t1,0）"
        report.expect_zero(label, source.power_sum(j + 1))
    return report


from collections import Counter
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from ..config import Family, VertexColor, lambda_name, multi_name, z_name
from ..errors import ConfigError


@dataclass(frozen=True, order=True)
class VertexType:
    """生成时可区分的顶点类型；同度数的黑顶点彼此不可区分。"""

    color: str
    degree: int
    label: int = 0


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    r: int
    g: int
    n: int
    delta: int
    N: int = 0
    ks: Tuple[int, ...] = ()
    lambda_infinity: bool = False

    def __post_init__(self):
        if self.r < 2:
            raise ConfigError(f"r 必须至少为 2，实际为 {self.r}")
        if self.g < 0 or self.n < 1:
            raise ConfigError(f"(g, n) = ({self.g}, {self.n}) 不合法")
        if self.N < 0:
            raise ConfigError(f"N 不能为负：{self.N}")
        if self.family == Family.MULTI:
            if len(self.ks) != self.n or any(k < 1 for k in self.ks):
                raise ConfigError(f"多纤毛图的度数向量 {self.ks} 与 n={self.n} 不符")
        elif self.ks:
            raise ConfigError("只有多纤毛图族接受度数向量")

    @property
    def unmarked_choices(self) -> int:
        return 0 if self.lambda_infinity else self.N

    @property
    def face_target(self) -> int:
        return self.delta + 2 - 2 * self.g

    @property
    def marked_faces(self) -> int:
        if self.family == Family.MULTI:
            return sum(self.ks)
        return self.n

    @property
    def white_degrees(self) -> Tuple[int, ...]:
        if self.family == Family.MULTI:
            return self.ks
        if self.family == Family.UNCILIATED:
            return ()
        return (1,) * self.n

    def at_degree(self, delta: int) -> "FamilySpec":
        return FamilySpec(self.family, self.r, self.g, self.n, delta, self.N, self.ks, self.lambda_infinity)

    def marked_name(self, i: int, j: int = 1) -> str:
        if self.family == Family.MULTI:
            return multi_name(i, j)
        return z_name(i)

    def symbol_names(self) -> List[str]:
        if self.family == Family.MULTI:
            return [multi_name(i + 1, j + 1) for i, k in enumerate(self.ks) for j in range(k)]
        return [z_name(i) for i in range(1, self.n + 1)]

    def lambda_names(self) -> List[str]:
        return [lambda_name(j) for j in range(1, self.unmarked_choices + 1)]

    def is_possible(self) -> bool:
        """面数与标记面数的必要条件。"""
        target = self.face_target
        if target < 1 or self.marked_faces > target:
            return False
        if self.unmarked_choices == 0 and self.marked_faces != target:
            return False
        return True

    def black_budget(self, square_degree: Optional[int] = None) -> int:
        """黑顶点的 Σ(d_v − 2)。"""
        if self.family == Family.UNCILIATED:
            return 2 * self.delta
        if self.family == Family.CILIATED:
            return 2 * self.delta + self.n
        if self.family == Family.SQUARE:
            return 2 * self.delta + self.n + 2 - square_degree
        return 2 * self.delta - sum(k - 2 for k in self.ks)

    def square_degrees(self) -> List[int]:
        if self.family != Family.SQUARE:
            return [0]
        return list(range(1, 2 * self.delta + self.n + 3))


def black_degree_multisets(budget: int, r: int) -> Iterator[Tuple[int, ...]]:
    """把 budget 拆成 1..r−1 的部分，返回对应的黑顶点度数（非增）。"""
    if budget < 0:
        return

    def parts(remaining: int, largest: int):
        if remaining == 0:
            yield ()
            return
        for p in range(min(largest, remaining), 0, -1):
            for rest in parts(remaining - p, p):
                yield (p,) + rest

    for partition in parts(budget, r - 1):
        yield tuple(p + 2 for p in partition)


def vertex_pools(spec: FamilySpec) -> Iterator[Tuple[int, Counter]]:
    """(方顶点度数, 除根以外的顶点池) 的全部组合。"""
    whites = Counter(VertexType(VertexColor.WHITE.value, k, i + 1) for i, k in enumerate(spec.white_degrees) if i > 0)
    for square_degree in spec.square_degrees():
        budget = spec.black_budget(square_degree)
        for degrees in black_degree_multisets(budget, spec.r):
            if spec.family == Family.UNCILIATED and not degrees:
                continue
            pool = Counter(whites)
            for d in degrees:
                pool[VertexType(VertexColor.BLACK.value, d)] += 1
            yield square_degree, pool

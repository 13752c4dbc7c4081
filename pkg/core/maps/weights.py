from collections import Counter
from typing import Dict, Sequence, Tuple

from ..config import Family, VertexColor, lambda_name
from ..model import Model
from .ribbon import INFINITY_DECORATION, RibbonMap


def complete_homogeneous(args: Sequence, top: int, zero, one) -> list:
    """h_0..h_top(args)，逐个变量递推 h_m ← h_m + a·h_{m−1}。"""
    h = [one] + [zero] * top
    for a in args:
        for m in range(1, top + 1):
            h[m] = h[m] + a * h[m - 1]
    return h


def vertex_weight(args: Sequence, model: Model):
    """𝒱_d(a_1..a_d) = −Σ_{j≥d} v_j h_{j−d}(a_1..a_d)，d = len(args)。"""
    d = len(args)
    top = model.r + 1 - d
    if top < 0:
        return model.space.zero
    h = complete_homogeneous(args, top, model.space.zero, model.space.one)
    total = model.space.zero
    for j in range(d, model.r + 2):
        total -= model.coeff(j) * h[j - d]
    return total


def propagator(a1, a2, model: Model):
    """𝒫(a1, a2) = −1/𝒱_2(a1, a2)，重合时即 1/V″(a1)。"""
    return -1 / vertex_weight((a1, a2), model)


def square_weight(u, args: Sequence, model: Model):
    total = model.space.one
    for a in args:
        total = total / (u - a)
    return total


class WeightEvaluator:
    """按符号名缓存局部权重；权重只依赖签名（边、黑顶点、方顶点的装饰多重集）。"""

    def __init__(self, model: Model, auxiliary: bool = False):
        self.model = model
        self.auxiliary = auxiliary
        self._values: Dict[str, object] = {}
        self._vertices: Dict[Tuple[str, ...], object] = {}
        self._edges: Dict[Tuple[str, str], object] = {}
        self._lambda_index = {lambda_name(j): j for j in range(1, model.N + 1)}

    def value(self, name: str):
        if name not in self._values:
            if name in self._lambda_index:
                self._values[name] = self.model.lambda_value(self._lambda_index[name])
            else:
                self._values[name] = self.model.gen(name)
        return self._values[name]

    def vertex(self, names: Tuple[str, ...]):
        if names not in self._vertices:
            self._vertices[names] = vertex_weight([self.value(n) for n in names], self.model)
        return self._vertices[names]

    def edge(self, pair: Tuple[str, str]):
        if pair not in self._edges:
            self._edges[pair] = propagator(self.value(pair[0]), self.value(pair[1]), self.model)
        return self._edges[pair]

    def square(self, names: Tuple[str, ...]):
        u = self.model.u
        if self.auxiliary:
            return -vertex_weight([u] + [self.value(n) for n in names], self.model)
        return square_weight(u, [self.value(n) for n in names], self.model)

    @staticmethod
    def signature(m: RibbonMap) -> Tuple:
        edges = tuple(sorted(tuple(sorted(m.edge_sides(d))) for d, _ in m.edges()))
        blacks = []
        square = None
        for v, color in enumerate(m.colors):
            if color == VertexColor.BLACK:
                blacks.append(tuple(sorted(m.corner_decorations(v))))
            elif color == VertexColor.SQUARE:
                square = tuple(sorted(m.corner_decorations(v)))
        return edges, tuple(sorted(blacks)), square

    def weight_of_signature(self, signature: Tuple):
        edges, blacks, square = signature
        if any(INFINITY_DECORATION in pair for pair in edges):
            return self.model.space.zero
        total = self.model.space.one
        for pair in edges:
            total = total * self.edge(pair)
        for names in blacks:
            total = total * self.vertex(names)
            if not total:
                return total
        if square is not None:
            total = total * self.square(square)
        return total

    def weight(self, m: RibbonMap):
        return self.weight_of_signature(self.signature(m))

    def total(self, signatures: Counter):
        """Σ 系数 × 权重；相同签名只求一次权重。"""
        result = self.model.space.zero
        for signature in sorted(signatures):
            coeff = signatures[signature]
            if coeff:
                result += self.weight_of_signature(signature) * coeff
        return result


def map_weight(m: RibbonMap, model: Model, auxiliary: bool = False):
    """w(G)：边取 𝒫，黑顶点取 𝒱_d，方顶点取 ∏1/(u−a_f)（auxiliary 时改为 −𝒱_{d+1}(u, …)）。"""
    return WeightEvaluator(model, auxiliary=auxiliary).weight(m)


def family_prefactor(family: Family, model: Model, auxiliary: bool):
    """H 的组合解释多乘一个 V″(z_1)。"""
    if family == Family.SQUARE and auxiliary:
        return model.dV(model.z(1), 2)
    return model.space.one

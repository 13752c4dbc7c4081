"""W̃ 乘积的划分求和 𝓔^{(k)} 与去掉圆盘因子的 𝓡^{(k)}。"""
from itertools import product
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_partitions

from .correlator import CorrelatorTable, exact_value, place_args

# (亏格 h, 取自 t̲ 的下标, 取自 I 的下标)
Block = Tuple[int, Tuple[int, ...], Tuple[int, ...]]


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """total 写成 parts 个非负整数之和（有序）。"""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail


def partition_terms(k: int, g: int, rest: int, with_disc: bool = True) -> Iterator[List[Block]]:
    """t̲ 的集合划分 μ、I 在各块间的分配、Σ h_i = g + ℓ(μ) − k 的全部组合。"""
    if k == 0:
        if g == 0 and rest == 0:
            yield []
        return
    for mu in multiset_partitions(list(range(k))):
        length = len(mu)
        genus = g + length - k
        if genus < 0:
            continue
        for labels in product(range(length), repeat=rest):
            parts = [tuple(i for i, label in enumerate(labels) if label == b) for b in range(length)]
            for hs in compositions(genus, length):
                blocks = [(h, tuple(m), J) for h, m, J in zip(hs, mu, parts)]
                if not with_disc and any(h == 0 and len(m) + len(J) == 1 for h, m, J in blocks):
                    continue
                yield blocks


def operator_sum(terms: Iterator[List[Block]], factor: Callable[[int, Tuple[int, ...], Tuple[int, ...]], Optional[object]], one):
    """Σ_terms Π_blocks factor(block)；factor 返回 None 视为零。"""
    total = one * 0
    for blocks in terms:
        value = one
        for h, points, rest in blocks:
            part = factor(h, points, rest)
            if part is None:
                value = None
                break
            value = value * part
        if value is not None:
            total = total + value
    return total


def _operator(table: CorrelatorTable, k: int, g: int, points: Sequence, rest: Sequence, one, with_disc: bool):
    if len(points) != k:
        raise ValueError(f"t̲ 需要 {k} 个点，实际 {len(points)} 个")

    def factor(h, chosen, J):
        m = len(chosen) + len(J)
        args = [points[i] for i in chosen] + [rest[j] for j in J]
        return exact_value(table.wtilde(h, m), place_args(args), one)

    return operator_sum(partition_terms(k, g, len(rest), with_disc), factor, one)


def E_operator(table: CorrelatorTable, k: int, g: int, points: Sequence, rest: Sequence, one):
    """𝓔^{(k)} W_{g,n}(t̲; I)，W̃_{0,1} = α^{r+1} y、W̃_{0,2} 含 1/(x_1 − x_2)²。"""
    return _operator(table, k, g, points, rest, one, with_disc=True)


def R_operator(table: CorrelatorTable, k: int, g: int, points: Sequence, rest: Sequence, one):
    """同 𝓔^{(k)}，但去掉所有 (0,1) 因子。"""
    return _operator(table, k, g, points, rest, one, with_disc=False)

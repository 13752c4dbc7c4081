from collections import Counter
from typing import Dict, Iterator, List, Optional, Tuple

from sympy import QQ

from ..algebra import AlphaSeries
from ..config import ALPHA_SYMBOL, DEFAULT_MAX_MAPS, Family
from ..errors import ResourceGuardError
from ..log import LOG_TAG, logger
from ..model import Model
from .family import FamilySpec
from .generate import decorations, rooted_maps
from .ribbon import RibbonMap
from .weights import WeightEvaluator, family_prefactor


def decorated_rooted(spec: FamilySpec, max_maps: int = DEFAULT_MAX_MAPS) -> Iterator[Tuple[RibbonMap, object]]:
    """(有根装饰映射, 权重因子)；𝓕 的因子 1/#半边 把有根计数换成 1/#Aut。"""
    count = 0
    for raw in rooted_maps(spec):
        factor = QQ(1, len(raw.sigma)) if spec.family == Family.UNCILIATED else QQ(1)
        for m in decorations(raw, spec):
            count += 1
            if count > max_maps:
                logger.warning(f"{LOG_TAG} 枚举 {spec} 超过上限 {max_maps}")
                raise ResourceGuardError(f"{spec.family.value}_{spec.g},{spec.n} 在 δ={spec.delta} 处映射数超过 {max_maps}")
            yield m, factor


def enumerate_maps(spec: FamilySpec, max_maps: int = DEFAULT_MAX_MAPS) -> List[RibbonMap]:
    """每个同构类一个代表，按规范编码排序。"""
    seen: Dict[object, RibbonMap] = {}
    for m, _ in decorated_rooted(spec, max_maps):
        canon = m.canonical()
        seen.setdefault(canon.canonical_code, canon)
    maps = [seen[code] for code in sorted(seen)]
    logger.debug(f"{LOG_TAG} {spec.family.value}_{spec.g},{spec.n} δ={spec.delta}: {len(maps)} 个映射")
    return maps


def signature_counts(spec: FamilySpec, max_maps: int = DEFAULT_MAX_MAPS) -> Counter:
    counts: Counter = Counter()
    for m, factor in decorated_rooted(spec, max_maps):
        counts[WeightEvaluator.signature(m)] += factor
    return counts


def brute_coefficient(spec: FamilySpec, model: Model, auxiliary: bool = False, max_maps: int = DEFAULT_MAX_MAPS):
    """Σ_{G, deg G = (r+1)δ} w(G)/#Aut G。"""
    evaluator = WeightEvaluator(model, auxiliary=auxiliary)
    total = evaluator.total(signature_counts(spec, max_maps))
    if total:
        total = total * family_prefactor(spec.family, model, auxiliary)
    return total


def minimal_degree(spec: FamilySpec) -> int:
    return 2 * spec.g - 2 + spec.n


def brute_series(
    spec: FamilySpec,
    model: Model,
    delta_max: int,
    auxiliary: bool = False,
    delta_min: Optional[int] = None,
    max_maps: int = DEFAULT_MAX_MAPS,
) -> AlphaSeries:
    """α̂^δ 的系数为度数 δ 的全部映射之和，截断在 δ_max 之后。"""
    start = minimal_degree(spec) if delta_min is None else delta_min
    terms = {}
    for delta in range(start, delta_max + 1):
        value = brute_coefficient(spec.at_degree(delta), model, auxiliary=auxiliary, max_maps=max_maps)
        if value:
            terms[delta] = value
    return AlphaSeries.from_terms(terms, prec=delta_max + 1, zero=model.space.zero, var=ALPHA_SYMBOL)

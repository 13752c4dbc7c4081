from collections import Counter
from itertools import permutations, product
from typing import Iterator, List, Optional, Tuple

from sympy import QQ

from ..config import Family, VertexColor
from .family import FamilySpec, VertexType, vertex_pools
from .ribbon import RibbonMap

_COLORS = {c.value: c for c in VertexColor}


class RootedGenerator:
    """按根生成：每一步取编号最小的未配对半边，与已有半边配对或接上新顶点。

    新顶点的半边从配对的那一条起按逆时针连续编号，因此每个有根映射恰好出现一次。
    面闭合时立即检查：面数上限、每面至多一个白角、无 λ 时每面必须有白角。
    """

    def __init__(self, spec: FamilySpec, pool: Counter, square_degree: int = 0, root: Optional[VertexType] = None):
        self.spec = spec
        self.pool = Counter(pool)
        self.sigma: List[int] = []
        self.iota: List[int] = []
        self.vertex_of: List[int] = []
        self.vertices: List[Tuple[VertexType, int]] = []
        self.closed = 0
        self.require_white = spec.family != Family.UNCILIATED and spec.unmarked_choices == 0
        if spec.family == Family.UNCILIATED:
            self._add_vertex(root)
        else:
            self._add_vertex(VertexType(VertexColor.WHITE.value, spec.white_degrees[0], 1))
        self.dead = False
        if spec.family == Family.SQUARE:
            # 第一个白顶点的唯一边连到方顶点
            start = self._add_vertex(VertexType(VertexColor.SQUARE.value, square_degree, 1))
            self.dead = self._pair(0, start) is None

    def _add_vertex(self, vtype: VertexType, offset: int = 0) -> int:
        start = len(self.sigma)
        index = len(self.vertices)
        for k in range(vtype.degree):
            self.sigma.append(start + (k + 1) % vtype.degree)
            self.iota.append(-1)
            self.vertex_of.append(index)
        self.vertices.append((vtype, offset))
        return start

    def _drop_vertex(self) -> None:
        vtype, _ = self.vertices.pop()
        del self.sigma[-vtype.degree:]
        del self.iota[-vtype.degree:]
        del self.vertex_of[-vtype.degree:]

    def _is_white(self, d: int) -> bool:
        return self.vertices[self.vertex_of[d]][0].color == VertexColor.WHITE.value

    def _face_through(self, d: int) -> Optional[List[int]]:
        orbit = [d]
        x = d
        while True:
            y = self.iota[x]
            if y < 0:
                return None
            x = self.sigma[y]
            if x == d:
                return orbit
            orbit.append(x)

    def _face_ok(self, face: List[int]) -> bool:
        whites = sum(1 for d in face if self._is_white(d))
        if whites > 1:
            return False
        if whites == 0 and self.require_white:
            return False
        return True

    def _pair(self, d: int, e: int) -> Optional[int]:
        """配对 d、e 并返回新闭合的面数；违反约束时撤销并返回 None。"""
        self.iota[d] = e
        self.iota[e] = d
        faces = []
        first = self._face_through(d)
        if first is not None:
            faces.append(first)
        second = self._face_through(e)
        if second is not None and (first is None or e not in first):
            faces.append(second)
        if self.closed + len(faces) > self.spec.face_target or not all(self._face_ok(f) for f in faces):
            self.iota[d] = -1
            self.iota[e] = -1
            return None
        self.closed += len(faces)
        return len(faces)

    def _unpair(self, d: int, e: int, closed: int) -> None:
        self.iota[d] = -1
        self.iota[e] = -1
        self.closed -= closed

    def _first_open(self) -> int:
        for d, partner in enumerate(self.iota):
            if partner < 0:
                return d
        return -1

    def _offsets(self, vtype: VertexType) -> range:
        if vtype.color == VertexColor.WHITE.value and self.spec.family == Family.MULTI:
            return range(vtype.degree)
        return range(1)

    def run(self) -> Iterator["RawMap"]:
        if self.dead:
            return
        yield from self._extend()

    def _extend(self) -> Iterator["RawMap"]:
        d = self._first_open()
        if d < 0:
            if not +self.pool and self.closed == self.spec.face_target:
                yield self._snapshot()
            return
        for e in range(d + 1, len(self.iota)):
            if self.iota[e] >= 0:
                continue
            closed = self._pair(d, e)
            if closed is None:
                continue
            yield from self._extend()
            self._unpair(d, e, closed)
        for vtype in sorted(t for t, count in self.pool.items() if count > 0):
            self.pool[vtype] -= 1
            for offset in self._offsets(vtype):
                start = self._add_vertex(vtype, offset)
                closed = self._pair(d, start)
                if closed is not None:
                    yield from self._extend()
                    self._unpair(d, start, closed)
                self._drop_vertex()
            self.pool[vtype] += 1

    def _snapshot(self) -> "RawMap":
        return RawMap(
            sigma=tuple(self.sigma),
            iota=tuple(self.iota),
            vertex_of=tuple(self.vertex_of),
            vertices=tuple(self.vertices),
        )


class RawMap:
    """未装饰的有根映射。"""

    __slots__ = ("sigma", "iota", "vertex_of", "vertices", "_base")

    def __init__(self, sigma, iota, vertex_of, vertices):
        self.sigma = sigma
        self.iota = iota
        self.vertex_of = vertex_of
        self.vertices = vertices
        self._base = None

    @property
    def base(self) -> RibbonMap:
        if self._base is None:
            self._base = RibbonMap(
                sigma=self.sigma,
                iota=self.iota,
                vertex_of=self.vertex_of,
                colors=tuple(_COLORS[vtype.color] for vtype, _ in self.vertices),
                labels=tuple(vtype.label for vtype, _ in self.vertices),
            )
        return self._base

    def white_corner_names(self, spec: FamilySpec) -> List[Optional[str]]:
        """白顶点的角标号：第 i 个白顶点第 j 条半边前的角取 z_{i,((o−j) mod k)+1}。"""
        names: List[Optional[str]] = [None] * len(self.sigma)
        start = 0
        for vtype, offset in self.vertices:
            if vtype.color == VertexColor.WHITE.value:
                k = vtype.degree
                for j in range(k):
                    names[start + j] = spec.marked_name(vtype.label, (offset - j) % k + 1)
            start += vtype.degree
        return names


def decorations(raw: RawMap, spec: FamilySpec) -> Iterator[RibbonMap]:
    """给有根映射的面加上装饰：标记面来自白角（或 𝓕 的单射标号），其余面取 λ_j。"""
    base = raw.base
    faces = base.faces
    choices = spec.lambda_names()
    if spec.family == Family.UNCILIATED:
        for marked in permutations(range(len(faces)), spec.n):
            rest = [f for f in range(len(faces)) if f not in marked]
            for picks in product(choices, repeat=len(rest)):
                names = [""] * len(faces)
                for i, f in enumerate(marked):
                    names[f] = spec.marked_name(i + 1)
                for f, name in zip(rest, picks):
                    names[f] = name
                yield RibbonMap(base.sigma, base.iota, base.vertex_of, base.colors, base.labels, tuple(names))
        return
    corner_names = raw.white_corner_names(spec)
    names: List[Optional[str]] = [None] * len(faces)
    for f, face in enumerate(faces):
        for d in face:
            if corner_names[d] is not None:
                names[f] = corner_names[d]
    rest = [f for f, name in enumerate(names) if name is None]
    for picks in product(choices, repeat=len(rest)):
        filled = list(names)
        for f, name in zip(rest, picks):
            filled[f] = name
        yield RibbonMap(base.sigma, base.iota, base.vertex_of, base.colors, base.labels, tuple(filled))


def rooted_maps(spec: FamilySpec) -> Iterator[RawMap]:
    """族中全部有根映射（𝓕 以任一黑顶点为根，其余以第一个白顶点的 0 号半边为根）。"""
    if not spec.is_possible():
        return
    for square_degree, pool in vertex_pools(spec):
        if spec.family == Family.UNCILIATED:
            for root in sorted(t for t, count in pool.items() if count > 0):
                rest = Counter(pool)
                rest[root] -= 1
                yield from RootedGenerator(spec, rest, root=root).run()
        else:
            yield from RootedGenerator(spec, pool, square_degree=square_degree).run()

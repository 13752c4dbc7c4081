from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from ..config import VertexColor

INFINITY_DECORATION = "inf"


@dataclass(frozen=True)
class RibbonMap:
    """组合映射：sigma 为顶点处逆时针的下一条半边，iota 为边对合。

    每个半边 d 之前的角（sigma⁻¹(d) 与 d 之间）属于 face_of[d]，
    面是 phi = sigma∘iota 的轨道。
    """

    sigma: Tuple[int, ...]
    iota: Tuple[int, ...]
    vertex_of: Tuple[int, ...]
    colors: Tuple[VertexColor, ...]
    labels: Tuple[int, ...]
    decorations: Tuple[str, ...] = ()

    @classmethod
    def build(
        cls,
        sigma: Sequence[int],
        iota: Sequence[int],
        vertex_of: Sequence[int],
        colors: Sequence[VertexColor],
        labels: Sequence[int],
        dart_decorations: Optional[Sequence[str]] = None,
    ) -> "RibbonMap":
        """按半边给出的角装饰整理成按面排列的装饰。"""
        bare = cls(tuple(sigma), tuple(iota), tuple(vertex_of), tuple(colors), tuple(labels))
        if dart_decorations is None:
            return bare
        decorations = tuple(dart_decorations[face[0]] for face in bare.faces)
        return cls(bare.sigma, bare.iota, bare.vertex_of, bare.colors, bare.labels, decorations)

    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    @property
    def n_vertices(self) -> int:
        return len(self.colors)

    @property
    def n_edges(self) -> int:
        return len(self.sigma) // 2

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @cached_property
    def faces(self) -> Tuple[Tuple[int, ...], ...]:
        seen = [False] * self.n_darts
        faces = []
        for start in range(self.n_darts):
            if seen[start]:
                continue
            orbit = []
            d = start
            while not seen[d]:
                seen[d] = True
                orbit.append(d)
                d = self.sigma[self.iota[d]]
            faces.append(tuple(orbit))
        return tuple(faces)

    @cached_property
    def face_of(self) -> Tuple[int, ...]:
        owner = [0] * self.n_darts
        for index, face in enumerate(self.faces):
            for d in face:
                owner[d] = index
        return tuple(owner)

    @cached_property
    def vertex_darts(self) -> Tuple[Tuple[int, ...], ...]:
        """每个顶点的半边，从最小编号起按逆时针排列。"""
        firsts: Dict[int, int] = {}
        for d, v in enumerate(self.vertex_of):
            firsts.setdefault(v, d)
        result = []
        for v in range(self.n_vertices):
            start = firsts[v]
            darts = [start]
            d = self.sigma[start]
            while d != start:
                darts.append(d)
                d = self.sigma[d]
            result.append(tuple(darts))
        return tuple(result)

    def degree_of(self, v: int) -> int:
        return len(self.vertex_darts[v])

    @property
    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    @property
    def genus(self) -> int:
        chi = self.euler_characteristic
        if chi > 2 or chi % 2:
            raise ValueError(f"欧拉示性数 {chi} 不对应可定向闭曲面")
        return (2 - chi) // 2

    @property
    def degree(self) -> int:
        """#ℰ − #𝒱，即以 r+1 为单位的度数 δ。"""
        return self.n_edges - self.n_vertices

    def dart_decoration(self, d: int) -> str:
        return self.decorations[self.face_of[d]]

    def corner_decorations(self, v: int) -> Tuple[str, ...]:
        return tuple(self.dart_decoration(d) for d in self.vertex_darts[v])

    def edges(self) -> List[Tuple[int, int]]:
        return [(d, self.iota[d]) for d in range(self.n_darts) if d < self.iota[d]]

    def edge_sides(self, d: int) -> Tuple[str, str]:
        return self.dart_decoration(d), self.dart_decoration(self.iota[d])

    def vertices_of_color(self, color: VertexColor) -> List[int]:
        return [v for v, c in enumerate(self.colors) if c == color]

    def is_connected(self) -> bool:
        if not self.n_darts:
            return False
        seen = {0}
        stack = [0]
        while stack:
            d = stack.pop()
            for nxt in (self.sigma[d], self.iota[d]):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == self.n_darts

    def white_corner_counts(self) -> List[int]:
        counts = [0] * self.n_faces
        for d in range(self.n_darts):
            if self.colors[self.vertex_of[d]] == VertexColor.WHITE:
                counts[self.face_of[d]] += 1
        return counts

    def _code_from(self, root: int):
        new: Dict[int, int] = {}
        order: List[int] = []
        records = []

        def visit(start: int) -> None:
            v = self.vertex_of[start]
            corners = []
            d = start
            while True:
                new[d] = len(order)
                order.append(d)
                corners.append(self.dart_decoration(d) if self.decorations else "")
                d = self.sigma[d]
                if d == start:
                    break
            records.append((self.colors[v].value, len(corners), self.labels[v], tuple(corners)))

        visit(root)
        i = 0
        while i < len(order):
            partner = self.iota[order[i]]
            if partner not in new:
                visit(partner)
            i += 1
        code = (tuple(records), tuple(new[self.iota[d]] for d in order))
        return code, order

    @cached_property
    def _codes(self) -> List:
        return [self._code_from(root) for root in range(self.n_darts)]

    @cached_property
    def canonical_code(self):
        return min(code for code, _ in self._codes)

    def automorphism_order(self) -> int:
        """保持颜色、标号与装饰的自同构个数，等于取到最小编码的根的个数。"""
        best = self.canonical_code
        return sum(1 for code, _ in self._codes if code == best)

    def canonical(self) -> "RibbonMap":
        best = self.canonical_code
        order = next(order for code, order in self._codes if code == best)
        new = {old: k for k, old in enumerate(order)}
        vertex_index: Dict[int, int] = {}
        for old in order:
            vertex_index.setdefault(self.vertex_of[old], len(vertex_index))
        old_vertices = sorted(vertex_index, key=vertex_index.get)
        sigma = [new[self.sigma[old]] for old in order]
        iota = [new[self.iota[old]] for old in order]
        vertex_of = [vertex_index[self.vertex_of[old]] for old in order]
        colors = [self.colors[v] for v in old_vertices]
        labels = [self.labels[v] for v in old_vertices]
        darts = [self.dart_decoration(old) for old in order] if self.decorations else None
        return RibbonMap.build(sigma, iota, vertex_of, colors, labels, darts)

    def to_record(self) -> Dict:
        return {
            "darts": self.n_darts,
            "sigma": list(self.sigma),
            "iota": list(self.iota),
            "vertex_of": list(self.vertex_of),
            "colors": [c.value for c in self.colors],
            "labels": list(self.labels),
            "decorations": list(self.decorations),
            "genus": self.genus,
            "degree": self.degree,
            "automorphisms": self.automorphism_order(),
        }

    @classmethod
    def from_record(cls, record: Dict) -> "RibbonMap":
        return cls(
            sigma=tuple(record["sigma"]),
            iota=tuple(record["iota"]),
            vertex_of=tuple(record["vertex_of"]),
            colors=tuple(VertexColor(c) for c in record["colors"]),
            labels=tuple(record["labels"]),
            decorations=tuple(record.get("decorations", ())),
        )

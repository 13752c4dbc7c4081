from dataclasses import dataclass, field
from typing import Dict, List

from .algebra import rf_to_text


@dataclass
class CheckItem:
    label: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> Dict:
        return {"label": self.label, "ok": self.ok, "detail": self.detail}


@dataclass
class CheckReport:
    """校验结果：数学上不相等时记录在条目里，不抛异常。"""

    name: str
    items: List[CheckItem] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def add(self, label: str, ok: bool, detail: str = "") -> CheckItem:
        item = CheckItem(label=label, ok=bool(ok), detail=detail)
        self.items.append(item)
        return item

    def expect_zero(self, label: str, value) -> CheckItem:
        """value 为零即通过；否则把差值写进 detail。"""
        if not value:
            return self.add(label, True)
        return self.add(label, False, f"差值 {rf_to_text(value)}")

    def expect_equal(self, label: str, left, right) -> CheckItem:
        return self.expect_zero(label, left - right)

    def extend(self, other: "CheckReport", prefix: str = "") -> None:
        for item in other.items:
            self.items.append(CheckItem(label=f"{prefix}{item.label}", ok=item.ok, detail=item.detail))

    def failures(self) -> List[CheckItem]:
        return [item for item in self.items if not item.ok]

    def to_dict(self) -> Dict:
        return {"name": self.name, "ok": self.ok, "items": [item.to_dict() for item in self.items]}

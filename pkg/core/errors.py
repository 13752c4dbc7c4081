class KontsevichError(Exception):
    """计算引擎的基础异常。"""


class ZeroDenominatorError(KontsevichError, ZeroDivisionError):
    """分母为零。"""


class FieldTowerError(KontsevichError):
    """分母或多项式无法在声明的数域塔上分解。"""

    def __init__(self, message: str, denominator=None):
        super().__init__(message)
        self.denominator = denominator


class TruncationError(KontsevichError):
    """读取超出截断阶，或赋值不匹配。"""


class ResidueError(TruncationError):
    """截断不足以读出留数。"""


class PrerequisiteError(KontsevichError):
    """分级求解缺少低阶数据。"""


class NonGenericError(KontsevichError):
    """参数退化：V″(λ)=0、V′ 取值重合或非简单分支点。"""


class ResourceGuardError(KontsevichError):
    """枚举规模超出上限。"""


class ConfigError(KontsevichError):
    """任务配置校验失败。"""


class ExpansionError(KontsevichError):
    """关联子的展开含有相交数基以外的项。"""

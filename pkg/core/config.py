# 配置常量
from enum import Enum

SCHEMA_VERSION = "kontsevich-tr/1"

class Family(Enum):
    """图族"""
    UNCILIATED = "F"       # 无纤毛图
    CILIATED = "W"         # 纤毛图
    SQUARE = "U"           # 方形顶点纤毛图
    MULTI = "S"            # 多纤毛图

class VertexColor(Enum):
    """顶点颜色"""
    BLACK = "black"
    WHITE = "white"
    SQUARE = "square"

class SeriesKind(Enum):
    """生成级数种类"""
    W = "W"                # 纤毛图
    H = "H"                # 辅助函数
    U = "U"                # 方形顶点

class Command(Enum):
    """子命令"""
    ENUMERATE = "enumerate"
    TUTTE = "tutte"
    CURVE = "curve"
    TOPREC = "toprec"
    INTERSECT = "intersect"
    CROSSCHECK = "crosscheck"

class OutputFormat(Enum):
    """输出格式"""
    JSON = "json"
    CSV = "csv"

class LambdaMode(Enum):
    """非标记面参数"""
    SYMBOLIC = "symbolic"    # 符号 λ_1..λ_N
    VALUES = "values"        # 给定有理数
    INFINITY = "infinity"    # λ=∞，丢弃含非标记面的图

# 符号命名
ALPHA_SYMBOL = "a"          # α̂ = α^{-(r+1)}
U_SYMBOL = "u"
ZETA_SYMBOL = "zeta"
EPSILON_SYMBOL = "eps"

def z_name(i: int) -> str:
    return f"z{i}"

def lambda_name(j: int) -> str:
    return f"lam{j}"

def multi_name(i: int, j: int) -> str:
    return f"z{i}_{j}"

def zeta_name(i: int) -> str:
    return f"zeta{i}"

# 桌面规模上限
DEFAULT_MAX_MAPS = 2_000_000
DEFAULT_ORDER = 2
THREADS_ENV = "KONTSEVICH_THREADS"

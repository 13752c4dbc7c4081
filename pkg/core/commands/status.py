from ..errors import ConfigError, KontsevichError

# 退出码
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_CHECKS = 3


def error_status(error: KontsevichError) -> int:
    return EXIT_CONFIG if isinstance(error, ConfigError) else EXIT_ERROR

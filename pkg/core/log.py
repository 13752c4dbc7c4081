import logging

LOGGER_NAME = "kontsevich_tr"
LOG_TAG = "[Kontsevich]"

logger = logging.getLogger(LOGGER_NAME)
logger.addHandler(logging.NullHandler())


def setup_logging(level: str = "INFO") -> logging.Logger:
    """命令行入口挂载标准错误输出。"""
    if not any(getattr(h, "_kontsevich", False) for h in logger.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(message)s"))
        handler._kontsevich = True
        logger.addHandler(handler)
    logger.setLevel(getattr(logging, str(level or "INFO").upper(), logging.INFO))
    return logger

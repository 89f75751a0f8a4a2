import logging
import sys
from pathlib import Path

import colorlog

from src.utils.config import get_config

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

_configured = False


def setup_logging(level: str = None, force: bool = False):
    """Configure the root logger from the logging config section (once per process)"""
    global _configured
    if _configured and not force:
        return

    config = get_config("logging", {}) or {}
    level_name = (level or config.get("level", "WARNING")).upper()

    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    root.setLevel(getattr(logging, level_name, logging.WARNING))

    console_config = config.get("console", {}) or {}
    if console_config.get("enabled", True):
        # Reports own stdout; logs always go to stderr
        console = logging.StreamHandler(sys.stderr)
        if console_config.get("colored", True):
            console.setFormatter(colorlog.ColoredFormatter(
                '%(log_color)s' + LOG_FORMAT,
                log_colors={
                    'DEBUG': 'cyan',
                    'INFO': 'green',
                    'WARNING': 'yellow',
                    'ERROR': 'red',
                    'CRITICAL': 'red,bg_white',
                },
            ))
        else:
            console.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(console)

    file_config = config.get("file", {}) or {}
    if file_config.get("enabled", False):
        log_path = Path(file_config.get("path", "logs/workbench.log"))
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path, encoding='utf-8')
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(file_handler)

    _configured = True

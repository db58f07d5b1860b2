#!/usr/bin/env python3

import logging
import sys

from core import settings

# Documents go to stdout; logs go to stderr
logging.basicConfig(
    level=getattr(logging, settings.LOG_LEVEL, logging.INFO),
    format='%(asctime)s - %(levelname)s - %(message)s',
    handlers=[logging.StreamHandler(sys.stderr)]
)

from core.error_handler import error_handler
from core.cli_reports import run


def main(argv=None) -> int:
    if settings.ERROR_LOG:
        error_handler.attach_log_file(settings.ERROR_LOG)
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

import hashlib
import json
import logging
import os
import sys
from typing import Any

import multiprocessing_logging


def setup_logging(log_file: str = None, level: int = logging.INFO):
    logger = logging.getLogger()
    logger.setLevel(level)
    formatter = logging.Formatter('%(asctime)s %(levelname)-8s %(name)-15s %(threadName)-10s %(message)s')

    # repeated setup replaces the handlers of the previous one
    for handler in [h for h in logger.handlers if getattr(h, '_cmpl', False)]:
        logger.removeHandler(handler)
        handler.close()

    handlers = []
    if log_file is not None:
        directory = os.path.dirname(log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        handlers.append(logging.FileHandler(log_file, mode='w'))

    # stderr keeps stdout free for reports
    handlers.append(logging.StreamHandler(sys.stderr))
    for i, handler in enumerate(handlers):
        handler.setFormatter(formatter)
        wrapped = multiprocessing_logging.MultiProcessingHandler(f'mp-handler-{i}', sub_handler=handler)
        wrapped._cmpl = True
        logger.addHandler(wrapped)


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(',', ':'), ensure_ascii=False)


def content_hash(obj: Any) -> str:
    return hashlib.sha256(canonical_json(obj).encode('utf-8')).hexdigest()

# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""DimBench logging module.

A single package logger prints colored records to stdout. Each scenario or sweep run
also copies its records into ``dimbench.log`` next to the reports.
"""

import contextlib
import logging
import socket
import sys
from pathlib import Path

import colorlog

RECORD_FORMAT = '[%(asctime)s %(hostname)s:%(process)d][%(filename)s:%(lineno)s][%(levelname)s] %(message)s'
COLORED_FORMAT = (
    '%(reset)s[%(cyan)s%(asctime)s %(hostname)s:%(process)d%(reset)s]'
    '[%(blue)s%(filename)s:%(lineno)s%(reset)s][%(log_color)s%(levelname)s%(reset)s] %(message)s'
)
RUN_LOG_NAME = 'dimbench.log'


class LoggerAdapter(logging.LoggerAdapter):
    """Logger adapter stamping the hostname and raising logged errors."""
    def log_and_raise(self, exception, msg, *args):
        """Log msg at ERROR, then raise it as exception.

        Args:
            exception (type): exception class, usually from dimbench.common.errors.
            msg (str): message, %-formatted with args when given.
            args: message arguments.
        """
        self.error(msg, *args)
        raise exception(msg % args if args else msg)


class DimBenchLogger:
    """Factory of the package logger and its handlers."""
    @staticmethod
    def add_handler(logger, stream=sys.stdout, filename=None, color=False):
        """Attach a stream or file handler.

        Args:
            logger (Logger): target logger.
            stream (IO): stream used when filename is None.
            filename (str, optional): log file, appended to.
            color (bool): colorlog format instead of the plain one.

        Return:
            Handler: the attached handler.
        """
        handler = logging.FileHandler(filename) if filename else logging.StreamHandler(stream=stream)
        handler.setFormatter(colorlog.ColoredFormatter(COLORED_FORMAT) if color else logging.Formatter(RECORD_FORMAT))
        logger.addHandler(handler)
        return handler

    @staticmethod
    @contextlib.contextmanager
    def run_log(logger, output_dir):
        """Copy the records of a run into output_dir/dimbench.log.

        Args:
            logger (LoggerAdapter or Logger): logger whose records are copied.
            output_dir (str or Path): existing output directory.

        Yields:
            Path: the log file.
        """
        base = logger.logger if isinstance(logger, logging.LoggerAdapter) else logger
        path = Path(output_dir) / RUN_LOG_NAME
        handler = DimBenchLogger.add_handler(base, filename=str(path))
        try:
            yield path
        finally:
            base.removeHandler(handler)
            handler.close()

    @staticmethod
    def create_logger(name, level=logging.INFO):
        """Create a logger printing colored records to stdout.

        Args:
            name (str): logger name.
            level (int): logging level.

        Return:
            LoggerAdapter: the adapted logger.
        """
        base = logging.getLogger(name)
        base.setLevel(level)
        DimBenchLogger.add_handler(base, stream=sys.stdout, color=True)
        return LoggerAdapter(base, extra={'hostname': socket.gethostname()})


logger = DimBenchLogger.create_logger('dimbench')

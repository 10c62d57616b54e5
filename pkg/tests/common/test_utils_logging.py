# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for the logging utilities."""

import io
import logging
import tempfile
import unittest
from pathlib import Path

from dimbench.common.errors import DimBenchError, DomainError
from dimbench.common.utils import DimBenchLogger, LazyImport, logger


class LoggingTestCase(unittest.TestCase):
    """A class for logging test cases."""
    def test_log_and_raise(self):
        """Test the error is logged before it is raised."""
        with self.assertLogs('dimbench', level='ERROR') as captured:
            with self.assertRaises(DomainError) as context:
                logger.log_and_raise(DomainError, 'Bad value %s.', 3)
        self.assertEqual(str(context.exception), 'Bad value 3.')
        self.assertIsInstance(context.exception, ValueError)
        self.assertIsInstance(context.exception, DimBenchError)
        self.assertIn('Bad value 3.', captured.output[0])

    def test_add_handler(self):
        """Test an extra stream handler receives the records."""
        stream = io.StringIO()
        handler = DimBenchLogger.add_handler(logger.logger, stream=stream)
        try:
            logger.info('Stream record.')
        finally:
            logger.logger.removeHandler(handler)
        self.assertIn('[INFO] Stream record.', stream.getvalue())

    def test_run_log(self):
        """Test run records are copied to dimbench.log and the handler is detached afterwards."""
        handlers = list(logger.logger.handlers)
        with tempfile.TemporaryDirectory() as directory:
            with DimBenchLogger.run_log(logger, directory) as path:
                logger.warning('Run record.')
            logger.warning('After the run.')
            content = Path(path).read_text()
        self.assertIn('[WARNING] Run record.', content)
        self.assertNotIn('After the run.', content)
        self.assertEqual(logger.logger.handlers, handlers)

    def test_create_logger(self):
        """Test the logger level and adapter."""
        created = DimBenchLogger.create_logger('dimbench-test', level=logging.DEBUG)
        self.assertEqual(created.logger.level, logging.DEBUG)
        self.assertIn('hostname', created.extra)


class LazyImportTestCase(unittest.TestCase):
    """A class for lazy import test cases."""
    def test_attribute(self):
        """Test the target is imported on first use and the callback runs once."""
        calls = list()
        sqrt = LazyImport('math', 'sqrt', callback=lambda: calls.append(1))
        self.assertEqual(sqrt(4.0), 2.0)
        self.assertEqual(sqrt(9.0), 3.0)
        self.assertEqual(calls, [1])
        self.assertIn('pi', dir(LazyImport('math')))

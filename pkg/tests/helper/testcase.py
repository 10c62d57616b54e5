# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Unittest TestCase helpers."""

import shutil
import tempfile
from pathlib import Path

from dimbench.common.utils import set_config


class DimBenchTestCase(object):
    """Base class for DimBench test cases that write files or change the configuration.

    Examples:
        Inherit from both DimBenchTestCase and unittest.TestCase.
        ```
        class FooTestCase(DimBenchTestCase, unittest.TestCase):
            def setUp(self):
                super().setUp()
                ...
        ```
    """
    def setUp(self):
        """Hook method for setting up the test fixture before exercising it.

        Restores the bundled numerical defaults.
        """
        set_config()

    def tearDown(self):
        """Hook method for deconstructing the test fixture after testing it."""
        set_config()

    @classmethod
    def setUpClass(cls):
        """Hook method for setting up class fixture before running tests in the class.

        Will create a temp directory for all tests.
        Run once for the whole class.
        """
        cls._tmp_dir = tempfile.mkdtemp(prefix='dimbenchtest')

    @classmethod
    def tearDownClass(cls):
        """Hook method for deconstructing the class fixture after running all tests in the class.

        Will cleanup temp directory.
        Run once for the whole class.
        """
        shutil.rmtree(cls._tmp_dir)

    def output_dir(self, name):
        """Fresh directory under the temp directory.

        Args:
            name (str): directory name.

        Returns:
            Path: the directory, not yet created.
        """
        path = Path(self._tmp_dir) / name
        if path.exists():
            shutil.rmtree(path)
        return path

    def write_json(self, name, content):
        """Write a text file under the temp directory.

        Args:
            name (str): file name.
            content (str): file content.

        Returns:
            str: the file path.
        """
        path = Path(self._tmp_dir) / name
        path.write_text(content)
        return str(path)

# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Tests for the closed-form self-test suite."""

import json
import unittest

from dimbench.executor import ExitCode, Scenario, oracle_document, run_oracle
from tests.helper import decorator
from tests.helper.testcase import DimBenchTestCase


class OracleTestCase(DimBenchTestCase, unittest.TestCase):
    """A class for oracle test cases."""
    def test_document(self):
        """Test the suite is a valid scenario covering every closed form."""
        scenario = Scenario(oracle_document(), source='oracle')
        ids = {item.id for item in scenario.items}
        self.assertEqual(
            ids, {
                'lsi_dimensional', 'talagrand_dimensional', 'hwi', 'brascamp_lieb', 'tensorization', 'contraction',
                'improved_rate', 'fundamental_entropy'
            }
        )
        self.assertEqual(len(scenario.items), 3 * 3 * 3 + 2 * 3 + 3 + 2 + 3)

    @decorator.slow_test
    def test_run(self):
        """Test every closed-form check holds."""
        output = self.output_dir('oracle')
        self.assertEqual(run_oracle(output), ExitCode.SUCCESS)
        summary = json.loads((output / 'report.json').read_text())['summary']
        self.assertEqual(summary['failed'], 0)

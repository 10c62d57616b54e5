# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""DimBench cli module."""

from dimbench.cli.dimbench import DimBenchCLI

__all__ = ['DimBenchCLI']

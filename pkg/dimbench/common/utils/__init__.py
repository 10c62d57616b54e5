# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Exposes the interface of DimBench common utilities."""

from dimbench.common.utils.logging import DimBenchLogger, logger
from dimbench.common.utils.file_handler import create_dimbench_output_dir, get_dimbench_config, get_config, \
    set_config, read_json_file
from dimbench.common.utils.lazy_import import LazyImport

__all__ = [
    'DimBenchLogger',
    'LazyImport',
    'create_dimbench_output_dir',
    'get_config',
    'get_dimbench_config',
    'logger',
    'read_json_file',
    'set_config',
]

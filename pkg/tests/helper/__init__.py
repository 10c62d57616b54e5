# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Helper module for tests."""

# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Module for tests."""

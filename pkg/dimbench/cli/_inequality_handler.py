# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""DimBench CLI inequality subgroup command handler."""

import re

from knack.util import CLIError

from dimbench.inequalities import InequalityRegistry


def inequality_list_command_handler(name=None):
    """List catalogue items whose id matches the regular expression.

    Args:
        name (str, optional): Item id or regular expression. Defaults to None.

    Raises:
        CLIError: If the expression is invalid or cannot find the matching item.

    Returns:
        list: dicts with name, category, variants and description.
    """
    try:
        entries = InequalityRegistry.list_items(name)
    except re.error as e:
        raise CLIError('Invalid expression {}: {}.'.format(name, e)) from e
    if not entries:
        raise CLIError('Inequality {} does not exist.'.format(name))
    return entries

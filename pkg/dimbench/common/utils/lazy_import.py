# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Lazy import utility.

Registries pull in every evaluator module on first use, so importing
``dimbench.inequalities`` stays cheap for callers that only need the
deficit functions.
"""

import importlib


class LazyImport:
    """Proxy to a module or module attribute which is imported on first access."""
    def __init__(self, name, attr=None, callback=None):
        """Constructor.

        Args:
            name (str): Python module name.
            attr (str, optional): Attribute to resolve inside the module. Defaults to None.
            callback (callable, optional): Called once after the import, e.g. to load plugins. Defaults to None.
        """
        self._target = None
        self._name = name
        self._attr = attr
        self._callback = callback

    def _resolve(self):
        """Import the target if it has not been imported yet.

        Return:
            Any: the imported module or attribute.
        """
        if self._target is None:
            target = importlib.import_module(self._name)
            if self._attr is not None:
                target = getattr(target, self._attr)
            self._target = target
            if self._callback is not None:
                self._callback()
        return self._target

    def __getattr__(self, item):
        """Forward attribute access to the imported target.

        Args:
            item (str): Attribute name.

        Returns:
            Any: Attribute value.
        """
        return getattr(self._resolve(), item)

    def __dir__(self):
        """List attributes of the imported target.

        Returns:
            List[str]: The list of attributes.
        """
        return dir(self._resolve())

    def __call__(self, *args, **kwargs):
        """Call the imported target.

        Args:
            *args (list): Arguments.
            **kwargs (dict): Keyword arguments.

        Returns:
            Any: The return value of the target.
        """
        return self._resolve()(*args, **kwargs)

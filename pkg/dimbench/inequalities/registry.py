# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Interfaces that provide access to the inequality catalogue."""

import inspect
import re
from typing import Dict

from dimbench.common.errors import DomainError
from dimbench.common.utils import logger
from dimbench.inequalities.context import ItemCategory
from dimbench.inequalities.result import AuditReport, InequalityEvaluation

_RESERVED = ('variant', 'tolerance')


class InequalityRegistry:
    """Class that maintains all catalogue items.

    Provide the following functions:
        Register new inequality, structural check or audit.
        List the catalogue.
        Check the arguments of a scenario item.
        Evaluate one item and return its evaluations.
    """
    items: Dict[str, dict] = dict()

    @classmethod
    def register(cls, name, category=ItemCategory.INEQUALITY, variants=None, description=None):
        """Register an evaluator function, used as a decorator.

        Args:
            name (str): catalogue id.
            category (ItemCategory): category of the item.
            variants (Enum, optional): Enum class of the variants, the evaluator then takes a variant argument.
            description (str, optional): one line description, the first docstring line if None.

        Return:
            decorator (Callable): return the decorator to add the evaluator.
        """
        def decorator(func):
            cls.register_item(name, func, category, variants, description)
            return func

        return decorator

    @classmethod
    def register_item(cls, name, func, category=ItemCategory.INEQUALITY, variants=None, description=None):
        """Register new catalogue item, key is the id.

        Args:
            name (str): catalogue id.
            func (Callable): evaluator returning an InequalityEvaluation, a list of them or an AuditReport.
            category (ItemCategory): category of the item.
            variants (Enum, optional): Enum class of the variants.
            description (str, optional): one line description.
        """
        if not name or not isinstance(name, str):
            logger.log_and_raise(
                TypeError, 'Name of registered item is not string - item: {}, type: {}'.format(name, type(name))
            )
        if not callable(func):
            logger.log_and_raise(TypeError, 'Registered evaluator is not callable - item: {}'.format(name))
        if name in cls.items:
            logger.warning('Duplicate registration - item: {}'.format(name))
        if description is None:
            doc = inspect.getdoc(func) or ''
            description = doc.splitlines()[0] if doc else ''
        cls.items[name] = {
            'func': func,
            'category': ItemCategory(str(category)),
            'variants': variants,
            'description': description,
        }
        logger.debug('Item registration - item: {}, category: {}'.format(name, category))

    @classmethod
    def names(cls):
        """Return the sorted catalogue ids."""
        return sorted(cls.items)

    @classmethod
    def is_registered(cls, name):
        """Whether an id is in the catalogue."""
        return name in cls.items

    @classmethod
    def variants(cls, name):
        """Variant values of an item, empty when it has none."""
        variants = cls.__get(name)['variants']
        return [] if variants is None else variants.get_values()

    @classmethod
    def list_items(cls, pattern=None):
        """Catalogue entries whose id matches a regular expression.

        Args:
            pattern (str, optional): regular expression searched in the ids.

        Return:
            list: dicts with name, category, variants and description.
        """
        regex = re.compile(pattern) if pattern else None
        entries = list()
        for name in cls.names():
            if regex and not regex.search(name):
                continue
            entry = cls.items[name]
            entries.append(
                {
                    'name': name,
                    'category': entry['category'].value,
                    'variants': cls.variants(name),
                    'description': entry['description'],
                }
            )
        return entries

    @classmethod
    def check_arguments(cls, name, arguments, variant=None):
        """Problems of a scenario item, empty when the item can be evaluated.

        Args:
            name (str): catalogue id.
            arguments (dict): argument names of the item.
            variant (str, optional): requested variant.

        Return:
            list: one message per problem.
        """
        if name not in cls.items:
            return ['unknown item id {}, registered: {}'.format(name, cls.names())]
        problems = list()
        variants = cls.variants(name)
        if variants and variant not in variants:
            problems.append('item {} needs a variant among {}, got {}'.format(name, variants, variant))
        if not variants and variant is not None:
            problems.append('item {} has no variants, got {}'.format(name, variant))
        signature = inspect.signature(cls.items[name]['func'])
        parameters = {k: p for k, p in signature.parameters.items() if k not in _RESERVED}
        for key in arguments:
            if key not in parameters:
                problems.append('item {} has no argument {}, expected {}'.format(name, key, sorted(parameters)))
        for key, parameter in parameters.items():
            if parameter.default is inspect.Parameter.empty and key not in arguments:
                problems.append('item {} misses the argument {}'.format(name, key))
        return problems

    @classmethod
    def evaluate(cls, name, variant=None, tolerance=None, **arguments):
        """Evaluate one catalogue item.

        Args:
            name (str): catalogue id.
            variant (str, optional): variant for items that have variants.
            tolerance (float, optional): per-item tolerance override.
            arguments (dict): evaluator arguments, measures and parameters.

        Return:
            list: InequalityEvaluation objects of the item.
        """
        entry = cls.__get(name)
        if entry['variants'] is not None:
            arguments['variant'] = entry['variants'](variant)
        result = entry['func'](tolerance=tolerance, **arguments)
        return cls.__flatten(result)

    @classmethod
    def __get(cls, name):
        if name not in cls.items:
            logger.log_and_raise(DomainError, 'Unknown item {}, registered items: {}.'.format(name, cls.names()))
        return cls.items[name]

    @classmethod
    def __flatten(cls, result):
        if isinstance(result, InequalityEvaluation):
            return [result]
        if isinstance(result, AuditReport):
            return result.to_evaluations()
        evaluations = list()
        for item in result:
            evaluations.extend(cls.__flatten(item))
        return evaluations

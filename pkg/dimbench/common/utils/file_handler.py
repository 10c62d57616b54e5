# Copyright (c) Microsoft Corporation.
# Licensed under the MIT License.

"""Utilities for file and configuration handling."""

import json
from pathlib import Path
from datetime import datetime

import yaml
from omegaconf import OmegaConf

from dimbench.common.errors import ScenarioError
from dimbench.common.utils.logging import logger

_default_config_path = (Path(__file__).parent / '../../config/default.yaml').resolve()
_config = None


def create_dimbench_output_dir(output_dir=None):
    """Create output directory.

    Create output directory on filesystem, generate a new name based on current time if not provided.

    Args:
        output_dir (str): Output directory. Defaults to None.

    Returns:
        str: Given or generated output directory.
    """
    if not output_dir:
        output_dir = str(Path('outputs', datetime.now().strftime('%Y-%m-%d_%H-%M-%S')))
    output_path = Path(output_dir).expanduser().resolve()
    try:
        output_path.mkdir(mode=0o755, parents=True, exist_ok=True)
    except Exception:
        logger.exception('Failed to create directory %s.', str(output_path))
        raise
    return output_dir


def get_dimbench_config(config_file=None):
    """Read DimBench numerical defaults yaml.

    Args:
        config_file (str): config file path, the bundled default.yaml is used if None.

    Returns:
        DictConfig: Config object, None if file does not exist.
    """
    p = Path(str(config_file)) if config_file else _default_config_path
    if not p.is_file():
        return None
    with p.open() as fp:
        return OmegaConf.create(yaml.load(fp, Loader=yaml.SafeLoader))


def get_config():
    """Get the process wide numerical configuration.

    Returns:
        DictConfig: the active configuration, loaded from default.yaml on first use.
    """
    global _config
    if _config is None:
        _config = get_dimbench_config()
    return _config


def set_config(config=None, overrides=None):
    """Replace the process wide numerical configuration.

    Call before any evaluation starts; evaluations read it but never write it.

    Args:
        config (DictConfig, optional): new base config, the bundled defaults if None.
        overrides (list, optional): dotlist overrides such as ['measures.tail_epsilon=1e-8'].

    Returns:
        DictConfig: the active configuration.
    """
    global _config
    config = config if config is not None else get_dimbench_config()
    if overrides:
        config = OmegaConf.merge(config, OmegaConf.from_dotlist(list(overrides)))
    _config = config
    return _config


def read_json_file(path):
    """Read a JSON document with line level diagnostics.

    Args:
        path (str or Path): JSON file path.

    Returns:
        dict: parsed document.

    Raises:
        ScenarioError: if the file is missing or is not valid JSON.
    """
    p = Path(path)
    if not p.is_file():
        raise ScenarioError('File {} does not exist.'.format(p), ['{}: no such file'.format(p)])
    try:
        with p.open() as fp:
            return json.load(fp)
    except json.JSONDecodeError as e:
        diagnostic = '{}:{}:{}: {}'.format(p, e.lineno, e.colno, e.msg)
        raise ScenarioError('Failed to parse {}.'.format(p), [diagnostic]) from e

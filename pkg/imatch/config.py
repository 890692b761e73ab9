"""
Runtime configuration for the imatch command line

The format version tag is not configurable: every document imatch writes
and every one it reads is checked against ``FORMAT_VERSION``.
"""
import configparser
import logging
import os
from collections import namedtuple

from imatch.errors import ConfigError

LOG = logging.getLogger(__name__)

FORMAT_VERSION = 'imatch/1'
DEFAULT_BUDGET = 10 ** 7
DEFAULT_SEED = 1

SECTION = 'imatch'
BUDGET_ENV = 'IMATCH_BUDGET'
SEED_ENV = 'IMATCH_SEED'

CliConfig = namedtuple('CliConfig', ['budget', 'seed', 'output_dir'])


def parse_budget(value):
    """
    Read a node budget written either as an integer or in float notation
    (``1e8``). ``None``, ``''`` and ``'none'`` mean unbounded.

    :param value: str, int or float
    :returns: positive int or None
    :raises ConfigError: on anything else, ``'1e400'`` included
    """
    if value is None:
        return None
    if isinstance(value, str):
        value = value.strip()
        if value.lower() in ('', 'none'):
            return None
        try:
            value = float(value) if any(c in value for c in '.eE') \
                else int(value)
        except ValueError:
            raise ConfigError('budget %r is not a number' % value)
    try:
        budget = int(value)
    except (OverflowError, ValueError):
        raise ConfigError('budget %r is not finite' % value)
    if budget != value or budget < 1:
        raise ConfigError('budget must be a positive integer, got %r'
                          % value)
    return budget


def _parse_seed(value):
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ConfigError('seed %r is not an integer' % value)


def load_config(path=None, environ=None):
    """
    Build a ``CliConfig`` from defaults, an optional INI file and the
    environment, later sources winning.

    :param path: INI file with an ``[imatch]`` section, default: None
    :param environ: mapping to read ``IMATCH_BUDGET``/``IMATCH_SEED`` from,
                    default: ``os.environ``
    :returns: ``CliConfig``
    :raises ConfigError: on an unreadable file or a bad value
    """
    if environ is None:
        environ = os.environ
    values = {
        'budget': DEFAULT_BUDGET,
        'seed': DEFAULT_SEED,
        'output_dir': '.',
    }

    if path is not None:
        parser = configparser.ConfigParser()
        if not parser.read(path):
            raise ConfigError('cannot read config file %s' % path)
        if parser.has_section(SECTION):
            section = parser[SECTION]
            if 'budget' in section:
                values['budget'] = parse_budget(section['budget'])
            if 'seed' in section:
                values['seed'] = _parse_seed(section['seed'])
            if 'output_dir' in section:
                values['output_dir'] = section['output_dir']
            if section.get('format_version', FORMAT_VERSION) != \
                    FORMAT_VERSION:
                raise ConfigError('%s: format_version is fixed at %s'
                                  % (path, FORMAT_VERSION))
        LOG.debug('loaded config from %s' % path)

    if environ.get(BUDGET_ENV):
        values['budget'] = parse_budget(environ[BUDGET_ENV])
    if environ.get(SEED_ENV):
        values['seed'] = _parse_seed(environ[SEED_ENV])

    return CliConfig(**values)

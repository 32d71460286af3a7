"""
Utility functions for Elliptic Rotations
Configuration loading, logging setup and number parsing shared by all modules
"""
import os
import sys
import logging
from fractions import Fraction
from logging.handlers import RotatingFileHandler
from typing import Dict, Any, List, Optional, Sequence

import numpy as np
import yaml
from dotenv import load_dotenv

from src.errors import ConfigError

LOGGER_NAME = 'EllipticRotations'

# Absolute tolerance at unit scale used by every predicate unless overridden
DEFAULT_TOLERANCE = 1e-9
# User-supplied axes carry entry roundoff, so the unit check is looser
AXIS_UNIT_TOLERANCE = 1e-6
DEFAULT_SERIES_TERMS = 24


class SafeConsoleHandler(logging.StreamHandler):
    """
    Console handler that never fails on characters the terminal cannot encode.
    Writes to stderr so that stdout stays reserved for JSON/CSV documents.
    """

    def __init__(self, stream=None):
        super().__init__(stream if stream is not None else sys.stderr)

    def emit(self, record):
        try:
            msg = self.format(record)
            stream = self.stream
            try:
                stream.write(msg + self.terminator)
            except UnicodeEncodeError:
                safe_msg = msg.encode('ascii', errors='replace').decode('ascii')
                stream.write(safe_msg + self.terminator)
            self.flush()
        except Exception:
            self.handleError(record)


def setup_logging(config: Dict[str, Any]) -> logging.Logger:
    """
    Setup logging with optional file and console handlers

    Args:
        config: Configuration dictionary

    Returns:
        Configured logger instance
    """
    log_config = config.get('logging', {})
    log_level = getattr(logging, str(log_config.get('level', 'INFO')).upper(), logging.INFO)
    console_level = getattr(logging, str(log_config.get('console_level', 'WARNING')).upper(), logging.WARNING)
    log_file = log_config.get('file') or ''
    max_bytes = log_config.get('max_bytes', 10485760)
    backup_count = log_config.get('backup_count', 5)

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(min(log_level, console_level))

    # Remove existing handlers (repeated CLI runs inside one process)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(
        '%(asctime)s [%(levelname)s] [%(name)s] %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=max_bytes,
            backupCount=backup_count,
            encoding='utf-8'
        )
        file_handler.setLevel(log_level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    console_handler = SafeConsoleHandler()
    console_handler.setLevel(console_level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    return logger


def load_config(config_path: str = 'config/config.yaml') -> Dict[str, Any]:
    """
    Load configuration from YAML file, falling back to environment variables

    Args:
        config_path: Path to config file

    Returns:
        Configuration dictionary
    """
    load_dotenv('config.env')

    if not config_path or not os.path.exists(config_path):
        return _load_config_from_env()

    with open(config_path, 'r', encoding='utf-8') as f:
        config_str = f.read()

    config_str = os.path.expandvars(config_str)

    try:
        config = yaml.safe_load(config_str) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"cannot parse {config_path}: {e}")

    # Environment values win over the file for the numeric knobs
    env_config = _load_config_from_env()
    numerics = config.setdefault('numerics', {})
    for key, env_name in (('tolerance', 'ELLIPROT_TOLERANCE'),
                          ('axis_unit_tolerance', 'ELLIPROT_AXIS_TOLERANCE'),
                          ('series_terms', 'ELLIPROT_SERIES_TERMS'),
                          ('parallel', 'ELLIPROT_PARALLEL')):
        if os.getenv(env_name):
            numerics[key] = env_config['numerics'][key]
    config.setdefault('output', env_config['output'])
    log_section = config.setdefault('logging', env_config['logging'])
    for key, env_name in (('level', 'ELLIPROT_LOG_LEVEL'), ('file', 'ELLIPROT_LOG_FILE')):
        if os.getenv(env_name) is not None:
            log_section[key] = os.getenv(env_name)

    return config


def _load_config_from_env() -> Dict[str, Any]:
    """
    Create config directly from environment variables (config.env)

    Returns:
        Configuration dictionary
    """
    return {
        'numerics': {
            'tolerance': float(os.getenv('ELLIPROT_TOLERANCE', str(DEFAULT_TOLERANCE))),
            'axis_unit_tolerance': float(os.getenv('ELLIPROT_AXIS_TOLERANCE', str(AXIS_UNIT_TOLERANCE))),
            'series_terms': int(os.getenv('ELLIPROT_SERIES_TERMS', str(DEFAULT_SERIES_TERMS))),
            'parallel': os.getenv('ELLIPROT_PARALLEL', 'false').lower() == 'true'
        },
        'output': {
            'indent': 2
        },
        'logging': {
            'level': os.getenv('ELLIPROT_LOG_LEVEL', 'INFO'),
            'console_level': 'WARNING',
            'file': os.getenv('ELLIPROT_LOG_FILE', ''),
            'max_bytes': 10485760,
            'backup_count': 5
        }
    }


def create_class_logger(class_name: str) -> logging.Logger:
    """
    Create a logger for a specific component

    Args:
        class_name: Name of the component

    Returns:
        Logger instance
    """
    return logging.getLogger(f'{LOGGER_NAME}.{class_name}')


def parse_number(text: str) -> float:
    """
    Parse a real number, accepting exact fractions such as "1/4" or "-3/2"

    Args:
        text: Number as typed on the command line

    Returns:
        The value as binary64
    """
    cleaned = text.strip()
    if not cleaned:
        raise ConfigError("empty number")
    try:
        return float(Fraction(cleaned))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return float(cleaned)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}")


def parse_vector(text: str, expected_length: Optional[int] = None) -> List[float]:
    """
    Parse a comma-separated list of numbers

    Args:
        text: e.g. "1/4,1/4,1/9"
        expected_length: Required number of entries, if any

    Returns:
        List of floats
    """
    values = [parse_number(part) for part in text.split(',')]
    if expected_length is not None and len(values) != expected_length:
        raise ConfigError(f"expected {expected_length} values, got {len(values)} in {text!r}")
    return values


def as_vector(values: Sequence[float]) -> np.ndarray:
    """Read-only float64 copy of a vector."""
    arr = np.array(values, dtype=np.float64)
    arr.setflags(write=False)
    return arr


def max_abs(values) -> float:
    """∞-style norm: largest absolute entry (0 for empty input)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))

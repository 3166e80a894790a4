import os
from dataclasses import dataclass


@dataclass
class Config:
    knot_db_path = os.getenv('FLOERHP_DB', '')
    log_level: str = os.getenv('FLOERHP_LOG_LEVEL', 'WARNING')
    selftest_config_path = os.getenv('FLOERHP_SELFTEST_CONFIG', '')


def get_knot_db_path() -> str | None:
    return Config.knot_db_path or None


def set_knot_db_path(path: str | None):
    Config.knot_db_path = path or ''


def get_log_level() -> str:
    return Config.log_level


def set_log_level(level: str):
    Config.log_level = level.upper()


def get_selftest_config_path() -> str | None:
    return Config.selftest_config_path or None


def set_selftest_config_path(path: str | None):
    Config.selftest_config_path = path or ''

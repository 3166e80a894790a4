from typing import Iterable, Type

from floerhp.errors import KnotDataError
from floerhp.utils.log import log_and_raise


def compare_two_dicts(test_dict: dict, blueprint: dict, exception_type: Type[Exception] = KnotDataError):
    """The keys of test_dict must be a subset of the blueprint keys. Whenever a blueprint value is itself a
    dictionary, the matching test_dict value must be a dictionary validated recursively against it.
    """
    _check_if_dict(blueprint, "blueprint", ValueError)
    _check_if_dict(test_dict, "test_dict", exception_type)

    for key in test_dict.keys():
        if key not in blueprint.keys():
            msg = f"Unknown key {key}, expected one of {sorted(blueprint.keys())}"
            _raise(exception_type, msg, key)
        if isinstance(blueprint[key], dict):
            _check_if_dict(test_dict[key], key, exception_type)
            compare_two_dicts(test_dict[key], blueprint[key], exception_type)


def check_record_keys(record: dict, required: Iterable[str], optional: Iterable[str] = (), name: str = "record"):
    """
    Validate the keys of a flat record: every required key present, nothing outside required and optional.

    Raises:
        KnotDataError: naming the first missing or unknown field.
    """
    _check_if_dict(record, name, KnotDataError)
    required, optional = set(required), set(optional)
    missing = sorted(required - set(record.keys()))
    if missing:
        log_and_raise(KnotDataError, f"{name}: missing field {missing[0]}", field=missing[0])
    unknown = sorted(set(record.keys()) - required - optional)
    if unknown:
        log_and_raise(KnotDataError, f"{name}: unknown field {unknown[0]}", field=unknown[0])


def _check_if_dict(value: dict, name: str, exception_type: Type[Exception]):
    if not isinstance(value, dict):
        msg = f"Invalid type {type(value).__name__} for {name}"
        _raise(exception_type, msg, name)


def _raise(exception_type: Type[Exception], message: str, field: str):
    if issubclass(exception_type, KnotDataError):
        log_and_raise(exception_type, message, field=field)
    log_and_raise(exception_type, message)

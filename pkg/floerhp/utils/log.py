from typing import NoReturn, Type

from loguru import logger


def log_and_raise(exception_type: Type[BaseException], message: str = "", **fields) -> NoReturn:
    """
    Raise an exception with a message and log it.

    Args:
        exception_type (Exception): The exception to be raised.
        message (str): The message to be logged and raised. Defaults to "".
        **fields: Extra keyword arguments forwarded to the exception (e.g. `reason` or `field` for
            :class:`floerhp.errors.FloerHPError` subclasses).

    Raises:
        exception_type: The exception to be raised.
    """
    if fields:
        logger.bind(**fields).error(message)
        raise exception_type(message, **fields)
    logger.error(message)
    raise exception_type(message)

from enum import Enum

from typing_extensions import Self

from floerhp.utils.log import log_and_raise


class EnumFromInput(str, Enum):
    @classmethod
    def from_input(cls, value: str | Self) -> Self:
        if isinstance(value, cls):
            return value
        elif isinstance(value, str):
            for member in cls:
                if member.value.lower() == value.lower():
                    return member
        msg = f"Invalid input {value} for {cls.__name__}"
        log_and_raise(ValueError, msg)

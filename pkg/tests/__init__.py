import unittest
from pathlib import Path

from loguru import logger

from floerhp.models.graded import Coefficients, GradedGroup
from floerhp.models.knot import KnotDatabase

DATA_DIR = Path(__file__).parent / "data"
KNOTS_FILEPATH = DATA_DIR / "knots.json"


class TestWithKnots(unittest.TestCase):
    """
    Base class giving access to the built-in trefoils and the figure-eight record of the test database.
    """

    def setUp(self) -> None:
        self.knots = KnotDatabase.from_file(KNOTS_FILEPATH)
        self.trefoil = self.knots.get("trefoil-r")
        self.left_trefoil = self.knots.get("trefoil-l")
        self.figure_eight = self.knots.get("figure-eight")

    @staticmethod
    def is_group(group: GradedGroup, coeff: Coefficients | str, entries: dict) -> bool:
        expected = GradedGroup(coeff, entries)
        condition = group == expected
        if not condition:
            logger.error(f"{group!r} differs from the expected {expected!r}")
        return condition

import unittest

from loguru import logger

from floerhp.errors import KnotDataError
from floerhp.models import DEFAULT_SELFTEST_CONFIG
from floerhp.models.census import ComponentType
from floerhp.models.floer import DEFAULT_CONTRIBUTIONS
from floerhp.models.graded import Coefficients, GradedGroup
from floerhp.models.selftest import SuiteResult, check_apoly, check_cohomology_table, check_cubic_surface, \
    check_theorem_reproduction, load_selftest_config, run_selftest
from tests import DATA_DIR

TEST_CONFIG_FILEPATH = DATA_DIR / "selftest_config_test.yaml"


class TestSelftestConfig(unittest.TestCase):

    def test_defaults(self):
        self.assertTrue(load_selftest_config() == DEFAULT_SELFTEST_CONFIG["full"])
        self.assertTrue(load_selftest_config(quick=True) == DEFAULT_SELFTEST_CONFIG["quick"])

    def test_file_override(self):
        settings = load_selftest_config(TEST_CONFIG_FILEPATH, quick=True)
        self.assertTrue(settings == {
            "trefoil_max_p": 13,
            "trefoil_max_q": 3,
            "consistency_max_p": 25,
            "consistency_max_q": 3,
            "limit_q_values": [101, 103],
        })
        self.assertTrue(load_selftest_config(TEST_CONFIG_FILEPATH) == DEFAULT_SELFTEST_CONFIG["full"])

    def test_default_not_mutated(self):
        load_selftest_config(TEST_CONFIG_FILEPATH, quick=True)
        self.assertTrue(DEFAULT_SELFTEST_CONFIG["quick"]["trefoil_max_p"] == 50)

    def test_bad_version(self):
        with self.assertRaises(KnotDataError) as context:
            load_selftest_config(DATA_DIR / "selftest_config_bad_version.yaml", quick=True)
        self.assertTrue(context.exception.field == "version")

    def test_unknown_key(self):
        with self.assertRaises(KnotDataError) as context:
            load_selftest_config(DATA_DIR / "selftest_config_unknown_key.yaml", quick=True)
        self.assertTrue(context.exception.field == "sweep_everything")

    def test_missing_file(self):
        with self.assertRaises(KnotDataError) as context:
            load_selftest_config(DATA_DIR / "no_such_config.yaml")
        self.assertTrue(context.exception.field == "file")


class TestSuites(unittest.TestCase):

    def test_suite_result(self):
        suite = SuiteResult("demo")
        suite.check(True, "never")
        suite.check(False, "always")
        self.assertTrue(suite.checked == 2)
        self.assertFalse(suite.passed)
        self.assertTrue(suite.to_dict()["failures"] == ["always"])

    def test_static_suites(self):
        for suite in (check_theorem_reproduction(), check_apoly(), check_cubic_surface(), check_cohomology_table()):
            self.assertTrue(suite.passed, f"{suite.name}: {suite.failures}")
            self.assertTrue(suite.checked > 0)


class TestRunSelftest(unittest.TestCase):

    def test_quick_run(self):
        report = run_selftest(quick=True, config_filepath=TEST_CONFIG_FILEPATH)
        failures = {suite.name: suite.failures for suite in report.suites if not suite.passed}
        self.assertTrue(report.passed, f"{failures}")
        self.assertTrue(len(report.suites) == 10)
        # ±12/1 and ±24/1 are the swept square slopes with 12 | p
        self.assertTrue(report.swept_square_multiples_of_12 == 4)
        self.assertTrue(report.expected_discrepancies == report.swept_square_multiples_of_12)
        data = report.to_dict()
        self.assertTrue(data["passed"] is True)
        consistency = next(suite for suite in data["suites"] if suite["name"] == "consistency")
        self.assertTrue(consistency["notes"][0].startswith("EXPECTED"))

    def test_passing_run_logs_no_errors(self):
        messages = []
        handler_id = logger.add(messages.append, level="ERROR")
        try:
            report = run_selftest(quick=True, config_filepath=TEST_CONFIG_FILEPATH)
        finally:
            logger.remove(handler_id)
        self.assertTrue(report.passed)
        self.assertTrue(messages == [], f"{messages}")

    def test_tampered_table_fails(self):
        tampered = DEFAULT_CONTRIBUTIONS.with_row(
            ComponentType.CSTAR_MINUS_POINT, GradedGroup(Coefficients.F2, {1: 2, 0: 1})
        )
        report = run_selftest(quick=True, config_filepath=TEST_CONFIG_FILEPATH, table=tampered)
        self.assertFalse(report.passed)
        failed = [suite.name for suite in report.suites if not suite.passed]
        self.assertTrue(failed == ["consistency"])

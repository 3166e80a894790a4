import json
import unittest

from click.testing import CliRunner

from floerhp.cli import cli, run
from floerhp.models.floer import hp_granny, hp_sharp
from floerhp.models.knot import KnotDatabase
from floerhp.models.slope import Slope
from floerhp.utils.serialization import dump_json
from tests import DATA_DIR, KNOTS_FILEPATH

GRANNY_12_JSON = '{"coeff":"F2","entries":{"1":{"rank":4},"0":{"rank":4},"-2":{"rank":1}}}'


class TestCli(unittest.TestCase):

    def setUp(self) -> None:
        self.runner = CliRunner()

    def invoke(self, *args: str):
        return self.runner.invoke(cli, list(args))

    def test_casson(self):
        result = self.invoke("casson", "--knot", "trefoil-r", "--slope", "2/1")
        self.assertTrue(result.exit_code == 0)
        self.assertTrue(result.output.strip() == "2")

    def test_casson_json(self):
        result = self.invoke("casson", "--knot", "trefoil-r", "--slope", "3/1", "--format", "json")
        self.assertTrue(json.loads(result.output) == {"knot": "trefoil-r", "slope": "3/1", "casson": 1})

    def test_hp_family_json(self):
        result = self.invoke("hp", "--family", "granny", "--slope", "12/1", "--format", "json")
        self.assertTrue(result.exit_code == 0)
        self.assertTrue(result.output.strip() == GRANNY_12_JSON)

    def test_output_matches_library(self):
        result = self.invoke("hp", "--family", "granny", "--slope", "7/3", "--format", "json")
        self.assertTrue(result.output.strip() == dump_json(hp_granny(Slope(7, 3)).to_dict()))
        trefoil = KnotDatabase().get("trefoil-r")
        result = self.invoke("hpsharp", "--knot", "trefoil-r", "--slope", "3/1", "--format", "json")
        self.assertTrue(result.output.strip() == dump_json(hp_sharp(trefoil, Slope(3, 1)).to_dict()))

    def test_deterministic_output(self):
        args = ("census", "--family", "square", "--slope", "12/1", "--format", "json")
        first, second = self.invoke(*args), self.invoke(*args)
        self.assertTrue(first.output == second.output)
        self.assertTrue(json.loads(first.output) == {"point": 8, "cstar": 3, "cstar_minus_point": 2, "surface_s": 0})

    def test_hp_knot_table(self):
        result = self.invoke("hp", "--knot", "trefoil-r", "--slope", "2/1")
        self.assertTrue(result.exit_code == 0)
        self.assertTrue("coeff Z" in result.output)

    def test_precondition_exit_code(self):
        result = self.invoke("casson", "--knot", "trefoil-r", "--slope", "12/1")
        self.assertTrue(result.exit_code == 2)
        self.assertTrue("AlexanderRoot" in result.output)

    def test_slope_parsing(self):
        result = self.invoke("casson", "--knot", "trefoil-r", "--slope", "4/2")
        self.assertTrue(result.exit_code == 2)
        self.assertTrue("NotCoprime" in result.output)
        result = self.invoke("casson", "--knot", "trefoil-r", "--slope=-7/2")
        self.assertTrue(result.exit_code == 0)
        self.assertTrue(result.output.strip() == "9")
        result = self.invoke("casson", "--knot", "trefoil-r", "--slope", "two")
        self.assertTrue(result.exit_code == 2)

    def test_usage_errors(self):
        self.assertTrue(self.invoke("casson", "--slope", "2/1").exit_code == 64)
        self.assertTrue(self.invoke("frobnicate").exit_code == 64)
        both = self.invoke("hp", "--knot", "trefoil-r", "--family", "granny", "--slope", "1/1")
        self.assertTrue(both.exit_code == 64)
        self.assertTrue(self.invoke("census", "--family", "torus", "--slope", "1/1").exit_code == 64)
        result = self.invoke("triangle", "--knot", "trefoil-r", "--sweep", "3..1")
        self.assertTrue(result.exit_code == 64)

    def test_knot_database(self):
        db = str(KNOTS_FILEPATH)
        result = self.invoke("--log-level", "ERROR", "casson", "--knot", "figure-eight", "--slope", "1/1", "--db", db)
        self.assertTrue(result.exit_code == 0)
        self.assertTrue(result.output.strip() == "7")
        result = self.invoke("casson", "--knot", "figure-eight", "--slope", "1/1")
        self.assertTrue(result.exit_code == 2)
        self.assertTrue("UnknownKnot" in result.output)

    def test_bad_database(self):
        result = self.invoke("casson", "--knot", "x", "--slope", "1/1", "--db", str(DATA_DIR / "knots_bad_e1.json"))
        self.assertTrue(result.exit_code == 3)
        self.assertTrue('"field":"E1"' in result.output)

    def test_limit(self):
        result = self.invoke("limit", "--knot", "trefoil-r", "--degree", "0", "--p", "1")
        self.assertTrue(result.output.strip() == "3")
        result = self.invoke("limit", "--family", "granny", "--degree", "-1", "--p", "5", "--format", "json")
        self.assertTrue(json.loads(result.output) == {"degree": -1, "p": 5, "limit": "6"})
        result = self.invoke("limit", "--family", "granny", "--degree", "3", "--p", "5")
        self.assertTrue(result.exit_code == 2)

    def test_triangle(self):
        result = self.invoke("triangle", "--knot", "trefoil-r", "--slope", "2/1", "--slope", "3/1")
        self.assertTrue(result.exit_code == 0)
        self.assertTrue(result.output.strip() == "obstructed in degree(s) -2, -3")
        result = self.invoke("triangle", "--knot", "trefoil-r", "--sweep", "1..4", "--format", "json")
        data = json.loads(result.output)
        self.assertTrue([pair["p"] for pair in data["pairs"]] == [1, 2, 3, 4])
        self.assertTrue(data["pairs"][1] == {"p": 2, "compatible": False, "obstruction_degrees": [-2, -3]})

    def test_apoly(self):
        result = self.invoke("apoly", "--family", "square", "--format", "json")
        data = json.loads(result.output)
        self.assertTrue(data["newton_slopes"] == ["-6", "0", "6"])
        self.assertTrue(len(data["factors"]) == 3)

    def test_consistency(self):
        result = self.invoke("consistency", "--family", "square", "--slope", "12/1")
        self.assertTrue(result.exit_code == 0)
        self.assertTrue("delta: -1: -2" in result.output)

    def test_selftest(self):
        config = str(DATA_DIR / "selftest_config_test.yaml")
        result = self.invoke("selftest", "--quick", "--config", config)
        self.assertTrue(result.exit_code == 0, result.output)
        self.assertTrue("PASS  consistency" in result.output)

    def test_selftest_bad_config(self):
        config = str(DATA_DIR / "selftest_config_bad_version.yaml")
        self.assertTrue(self.invoke("selftest", "--quick", "--config", config).exit_code == 3)

    def test_run_returns_exit_code(self):
        self.assertTrue(run(["casson", "--knot", "trefoil-r", "--slope", "6/1"]) == 2)
        self.assertTrue(run(["--help"]) == 0)

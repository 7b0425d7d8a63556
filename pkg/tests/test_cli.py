import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

from dwd.cli import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, run


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue()


class TestCli(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def test_enumerate(self):
        code, out = invoke("enumerate", "-n", "3")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data["vertices"], 34)
        self.assertEqual(data["degree_sum"], 120)
        self.assertTrue(data["published"]["vertices_match"])

    def test_stats_alias(self):
        code, out = invoke("stats", "-n", "2")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["undirected_edges"], 1)

    def test_usage_errors(self):
        self.assertEqual(invoke("enumerate", "-n", "9999")[0], EXIT_USAGE)
        self.assertEqual(invoke("enumerate")[0], EXIT_USAGE)
        self.assertEqual(invoke("enumerate", "-n", "1")[0], EXIT_USAGE)
        self.assertEqual(invoke("enumerate", "-n", "5")[0], EXIT_USAGE)
        self.assertEqual(invoke("enumerate", "-n", "3", "--fingerprint")[0], EXIT_USAGE)
        self.assertEqual(invoke("verify", "-n", "4")[0], EXIT_USAGE)
        self.assertEqual(invoke("export", "-n", "5")[0], EXIT_USAGE)
        self.assertEqual(invoke("no-such-command")[0], EXIT_USAGE)
        self.assertEqual(invoke("enumerate", "-n", "3", "--config", "missing.json")[0], EXIT_USAGE)

    def test_verify(self):
        report_path = os.path.join(self.tmp.name, "verify_3.json")
        code, out = invoke("verify", "-n", "3", "--report", report_path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["pairs"], 476)
        with open(report_path) as f:
            self.assertEqual(json.load(f)["positive"], 476)

    def test_verify_sample(self):
        code, out = invoke("verify", "-n", "4", "--sample", "20", "--seed", "3")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["pairs"], 20)

    def test_express(self):
        code, out = invoke("express", "-n", "2", "--word", "R1 B1", "--minor", "2|2", "--check")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("D[2,2] = D[1,1]^-1*D[2,1]*D[1,2] + D[1,1]^-1*D[12,12]", out)
        self.assertIn("terms: 2  positive: True", out)
        self.assertIn("numeric check: True", out)

    def test_express_worked_example(self):
        code, out = invoke("express", "-n", "4", "--word", "R1 R3 R2 B2 R1 R3 R2 B1 B3 B2 B1 B3",
                           "--minor", "14|12")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("D[14,12] = D[1,1]*D[3,1]^-1*D[34,12] + D[3,1]^-1*D[4,1]*D[13,12]", out)

    def test_express_bad_input(self):
        self.assertEqual(invoke("express", "-n", "3", "--word", "R1 R1 R2 B1 B2 B1", "--minor", "2|2")[0],
                         EXIT_USAGE)
        self.assertEqual(invoke("express", "-n", "2", "--minor", "3|3")[0], EXIT_USAGE)
        self.assertEqual(invoke("express", "-n", "2", "--minor", "12|1")[0], EXIT_USAGE)

    def test_export(self):
        code, out = invoke("export", "-n", "2", "--out", self.tmp.name)
        self.assertEqual(code, EXIT_OK)
        files = json.loads(out)["files"]
        with open(files[0]) as f:
            self.assertEqual(f.read(), "0 1\n")

    def test_hamiltonian(self):
        code, out = invoke("hamiltonian", "-n", "3")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data["result"], "cycle")
        self.assertTrue(data["valid"])

    def test_oracle_and_identity_checks(self):
        code, out = invoke("oracle-check", "-n", "3")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["mismatches"], [])
        code, out = invoke("identity-check", "-n", "3", "--sample", "20")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), {"n": 3, "moves": 20, "failures": []})

    def test_hamiltonian_budget_exhausted(self):
        config_path = os.path.join(self.tmp.name, "tight.json")
        with open(config_path, "w") as f:
            json.dump({"hamiltonian_node_budget": 5}, f)
        code, out = invoke("hamiltonian", "-n", "3", "--config", config_path)
        self.assertEqual(code, EXIT_FAILURE)
        self.assertEqual(json.loads(out)["result"], "budget_exceeded")


if __name__ == "__main__":
    unittest.main()

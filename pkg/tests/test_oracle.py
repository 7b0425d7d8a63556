import unittest

from dwd.labels import class_key
from dwd.oracle import oracle_check, quiver_neighbors, witness_words, word_neighbors
from dwd.phi_graph import enumerate_phi
from dwd.wiring import chamber_labels, standard_word
from tests.helpers import long_test


class TestOracle(unittest.TestCase):

    def test_witnesses_cover_phi3(self):
        graph, _ = enumerate_phi(3)
        witnesses = witness_words(3)
        self.assertEqual(sorted(witnesses), graph.keys)
        for key, word in witnesses.items():
            self.assertEqual(class_key(chamber_labels(word)), key)

    def test_standard_word_neighbors_agree(self):
        word = standard_word(4)
        by_word = [neighbor for neighbor, _ in word_neighbors(word)]
        self.assertEqual(quiver_neighbors(class_key(chamber_labels(word))), by_word)

    def test_exhaustive_small(self):
        for n, classes in ((2, 2), (3, 34)):
            report = oracle_check(n)
            self.assertEqual(report.classes, classes)
            self.assertEqual(report.mismatches, [])
            self.assertTrue(report.ok)

    def test_n4_sample(self):
        report = oracle_check(4, sample=200, seed=3)
        self.assertEqual(report.classes, 200)
        self.assertTrue(report.ok, report.to_json())

    def test_n5_sample(self):
        report = oracle_check(5, sample=30, seed=5)
        self.assertTrue(report.ok, report.to_json())

    @long_test
    def test_n4_large_sample(self):
        report = oracle_check(4, sample=1000, seed=11)
        self.assertTrue(report.ok)
        self.assertGreater(report.classes, 900)


if __name__ == "__main__":
    unittest.main()

import os
import unittest

from dwd.labels import ChamberLabel

LONG_TESTS = os.environ.get("DWD_LONG_TESTS") == "1"

long_test = unittest.skipUnless(LONG_TESTS, "set DWD_LONG_TESTS=1 to run")

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def L(text: str) -> ChamberLabel:
    return ChamberLabel.parse(text)


def labels(*texts: str):
    return frozenset(L(t) for t in texts)

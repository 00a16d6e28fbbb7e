import itertools

import hypothesis
import pytest
import sympy

from tropfan import corpus
from tropfan.matroid import braid_matrix

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")


@pytest.fixture(scope="session")
def m_a3():
    return corpus.m_a3()


@pytest.fixture(scope="session")
def n5():
    return corpus.n5()


@pytest.fixture(scope="session")
def f7():
    return corpus.f7()


@pytest.fixture(scope="session")
def d22():
    return corpus.d22()


@pytest.fixture(scope="session")
def full_corpus():
    return corpus.corpus()


def sympy_matrix(mat):
    """Oracle copy of an ExactMatrix (rationals only)."""
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in mat.rows])


def brute_circuits(mat):
    """Minimal dependent column sets by direct rank computation in sympy."""
    a = sympy_matrix(mat)
    n = a.shape[1]

    def dep(s):
        return a[:, list(s)].rank() < len(s)

    out = []
    for k in range(1, n + 1):
        for s in itertools.combinations(range(n), k):
            if dep(s) and all(not dep(t) for t in itertools.combinations(s, k - 1)):
                out.append(frozenset(s))
    return sorted(out, key=sorted)


def brute_flats(mat):
    a = sympy_matrix(mat)
    n = a.shape[1]

    def rk(s):
        return a[:, sorted(s)].rank() if s else 0

    found = []
    for k in range(n + 1):
        for s in itertools.combinations(range(n), k):
            s = set(s)
            r = rk(s)
            if all(rk(s | {e}) > r for e in range(n) if e not in s):
                found.append(frozenset(s))
    return found


B_MATRIX = braid_matrix(3)

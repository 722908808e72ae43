"""Reference values and problem builders shared across the test suite.

The closed forms below are the independent oracles: they are evaluated
directly (never through the solver) and the solver output is compared
against them.
"""

import functools
import math

from fuzzybvp import TriangularFuzzyNumber
from fuzzybvp.ode import LinearODE, TimeGrid
from fuzzybvp.solver import FuzzyBVP, solve_fuzzy_bvp

E = math.e

# --- Example problem A: x'' - 3x' + 2x = 4t - 6 on [0, 1] ---------------
# x(0) = (1.5, 2, 3), x(1) = (2, 3, 4).  Fundamental pair {e^t, e^{2t}}.


def ex1_w1(t):
    return (math.exp(2 + t) - math.exp(1 + 2 * t)) / (E**2 - E)


def ex1_w2(t):
    return (math.exp(2 * t) - math.exp(t)) / (E**2 - E)


def ex1_crisp(t):
    return 2 * t + (2 * (math.exp(2 + t) - math.exp(1 + 2 * t))
                    + (math.exp(2 * t) - math.exp(t))) / (E**2 - E)


def ex1_basis1(t):
    # combination of {e^t, e^{2t}} with x(0) = 1, x'(0) = 0
    return 2 * math.exp(t) - math.exp(2 * t)


def ex1_basis2(t):
    # combination with x(0) = 0, x'(0) = 1
    return math.exp(2 * t) - math.exp(t)


# --- Example problem B: x'' + 16x = 47 - 8t^2 on [0, 2] -----------------
# x(0) = (2, 3, 3.5), x(2) = (0.5, 1, 1.5).  Fundamental pair {cos 4t, sin 4t}.


def ex2_w1(t):
    return math.sin(8 - 4 * t) / math.sin(8)


def ex2_w2(t):
    return math.sin(4 * t) / math.sin(8)


def ex2_crisp(t):
    return 3 - 0.5 * t * t


def make_example1(num_points=1001):
    ode = LinearODE.from_strings(2, ["-3", "2"], "4*t - 6")
    conditions = ((0.0, TriangularFuzzyNumber(1.5, 2.0, 3.0)),
                  (1.0, TriangularFuzzyNumber(2.0, 3.0, 4.0)))
    return FuzzyBVP(ode, conditions, TimeGrid(0.0, 1.0, num_points))


def make_example2(num_points=1001):
    ode = LinearODE.from_strings(2, ["0", "16"], "47 - 8*t^2")
    conditions = ((0.0, TriangularFuzzyNumber(2.0, 3.0, 3.5)),
                  (2.0, TriangularFuzzyNumber(0.5, 1.0, 1.5)))
    return FuzzyBVP(ode, conditions, TimeGrid(0.0, 2.0, num_points))


@functools.lru_cache(maxsize=None)
def solved_example1():
    return solve_fuzzy_bvp(make_example1())


@functools.lru_cache(maxsize=None)
def solved_example2():
    return solve_fuzzy_bvp(make_example2())

import pytest

import reference


@pytest.fixture(scope="session")
def example1():
    return reference.make_example1()


@pytest.fixture(scope="session")
def example2():
    return reference.make_example2()


@pytest.fixture(scope="session")
def solution1():
    return reference.solved_example1()


@pytest.fixture(scope="session")
def solution2():
    return reference.solved_example2()

import pytest

from factorlab import corpus_entries


@pytest.fixture(scope="session")
def entries():
    return {e.name: e for e in corpus_entries()}


@pytest.fixture(scope="session")
def m1(entries):
    return entries["m1"].presentation


@pytest.fixture(scope="session")
def m2_n2(entries):
    return entries["m2_n2"].presentation


@pytest.fixture(scope="session")
def m2_n3(entries):
    return entries["m2_n3"].presentation


@pytest.fixture(scope="session")
def m3_n2(entries):
    return entries["m3_n2"].presentation


@pytest.fixture(scope="session")
def m3_n3(entries):
    return entries["m3_n3"].presentation


@pytest.fixture(scope="session")
def non_atomic(entries):
    return entries["non_atomic"].presentation


@pytest.fixture(scope="session")
def half_factorial(entries):
    return entries["half_factorial"].presentation


@pytest.fixture(scope="session")
def free2(entries):
    return entries["free2"].presentation


@pytest.fixture(scope="session")
def free_elastic(entries):
    return entries["free_elastic"].presentation


@pytest.fixture(scope="session")
def unit_monoid(entries):
    return entries["unit"].presentation

import pytest

from qcdistortion.config import (
    PROFILE_ENV,
    PROFILES,
    THREADS_ENV,
    Tolerances,
    get_thread_count,
    get_tolerances,
    profile_name,
    with_overrides,
)
from qcdistortion.errors import InvalidInputError


def test_default_profile():
    assert get_tolerances() == Tolerances()


def test_profile_from_environment(monkeypatch):
    monkeypatch.setenv(PROFILE_ENV, "strict")
    assert get_tolerances() is PROFILES["strict"]
    assert get_tolerances("loose") is PROFILES["loose"]


def test_profile_name_resolution(monkeypatch):
    assert profile_name() == "default"
    monkeypatch.setenv(PROFILE_ENV, "loose")
    assert profile_name() == "loose"
    assert profile_name("strict") == "strict"


def test_unknown_profile(monkeypatch):
    monkeypatch.setenv(PROFILE_ENV, "sloppy")
    with pytest.raises(InvalidInputError, match="sloppy"):
        get_tolerances()


def test_overrides_do_not_mutate():
    tol = with_overrides(Tolerances(), rel=1e-3)
    assert tol.rel == 1e-3
    assert Tolerances().rel == 1e-9


def test_close_uses_absolute_floor():
    tol = Tolerances()
    assert tol.close(0.0, 1e-13)
    assert not tol.close(1.0, 1.0 + 1e-6)
    assert tol.close(1.0, 1.0 + 1e-6, rel=1e-5)


@pytest.mark.parametrize("raw, expected", [(None, 1), ("4", 4), ("0", 1), ("lots", 1)])
def test_thread_count(monkeypatch, raw, expected):
    if raw is not None:
        monkeypatch.setenv(THREADS_ENV, raw)
    assert get_thread_count() == expected

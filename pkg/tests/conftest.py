import functools

import pytest

from osp_yangian.root_data import BorelChoice, simple_root_system
from osp_yangian.yangian import YangianVerifier


@functools.lru_cache(maxsize=None)
def minimal_verifier(tags: str) -> YangianVerifier:
    """MY completion for a Borel, shared by every test module."""
    return YangianVerifier(simple_root_system(BorelChoice(tags)), "minimal")


@pytest.fixture(scope="session")
def verifier():
    return minimal_verifier

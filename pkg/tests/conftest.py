import os
import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

HERE = Path(__file__).parent
DATA = HERE / "data"

EXAMPLE_TEXT = ('Thai food was great, delicousr and not expensive, we loved it. '
                'We visited 3 beach resorts , they are highly recommended... '
                'We had "Fire-Vodka" !!!')


@pytest.fixture(scope="session")
def lex():
    from keypartx.normalize import load_lexicon
    return load_lexicon()


@pytest.fixture(scope="session")
def model():
    from keypartx.tag import bundled_model
    return bundled_model()


@pytest.fixture(scope="session")
def res(lex, model):
    from keypartx.pipeline import Resources
    return Resources(lex, model)


@pytest.fixture(scope="session")
def example(res):
    from keypartx.pipeline import process_text
    return process_text("ex", EXAMPLE_TEXT, res)


@pytest.fixture
def example_csv(tmp_path):
    p = tmp_path / "example.csv"
    p.write_text('id,text\nex,"' + EXAMPLE_TEXT.replace('"', '""') + '"\n', encoding="utf-8")
    return p

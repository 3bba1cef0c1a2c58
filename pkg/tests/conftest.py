import pytest

from app import create_app
from app.config import TestConfig
from app.extensions import db as _db
from app.services.class_cache import clear_memo
from app.services.coxeter import build_system, parse_group


@pytest.fixture
def app():
    """Create a test Flask application with SQLite in-memory database."""
    application = create_app(TestConfig)

    with application.app_context():
        _db.create_all()
        clear_memo()

        yield application

        _db.session.remove()
        _db.drop_all()
    clear_memo()


@pytest.fixture
def runner(app):
    """CLI runner bound to the test application."""
    return app.test_cli_runner()


@pytest.fixture(scope='session')
def system():
    """Build (and cache) a Coxeter system from its name, e.g. system('D5')."""
    def build(text):
        return build_system(parse_group(text))
    return build

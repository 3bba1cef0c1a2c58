import os
from dotenv import load_dotenv

load_dotenv()

CACHE_DIR = os.environ.get('COXETER_CACHE_DIR', '.coxeter-cache')


def _fix_db_url(url, cache_dir=CACHE_DIR):
    """Fix common DATABASE_URL issues for SQLAlchemy compatibility."""
    if not url:
        return f'sqlite:///{os.path.abspath(os.path.join(cache_dir, "classes.db"))}'
    # Heroku style URLs use postgres:// but SQLAlchemy requires postgresql://
    if url.startswith('postgres://'):
        url = url.replace('postgres://', 'postgresql://', 1)
    return url


class Config:
    SQLALCHEMY_DATABASE_URI = _fix_db_url(os.environ.get('DATABASE_URL', ''))
    SQLALCHEMY_TRACK_MODIFICATIONS = False

    # Engine settings
    COXETER_CACHE_DIR = CACHE_DIR
    COXETER_ORDER_BUDGET = int(os.environ.get('COXETER_ORDER_BUDGET', str(10 ** 7)))
    COXETER_SEARCH_BUDGET = int(os.environ.get('COXETER_SEARCH_BUDGET', '20000'))
    COXETER_OUTPUT = os.environ.get('COXETER_OUTPUT', 'text')
    ENGINE_VERSION = os.environ.get('ENGINE_VERSION', '1.0.0')

class DevConfig(Config):
    DEBUG = True

class ProdConfig(Config):
    DEBUG = False

class TestConfig(Config):
    TESTING = True
    SQLALCHEMY_DATABASE_URI = 'sqlite:///:memory:'
    COXETER_OUTPUT = 'text'

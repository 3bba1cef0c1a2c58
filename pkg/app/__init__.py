import logging
import os
import sys

from flask import Flask
from flask.logging import default_handler
from .extensions import db, migrate
from .config import DevConfig, ProdConfig


def _configure_logging(app):
    """Send app and engine logs to stdout."""
    handler = logging.StreamHandler(sys.stdout)
    handler.setFormatter(logging.Formatter(
        '[%(asctime)s] %(levelname)s in %(module)s: %(message)s'
    ))
    level = logging.INFO if not app.debug else logging.DEBUG
    # app.logger is the 'app' logger, parent of every app.services.* logger
    app.logger.setLevel(level)
    app.logger.removeHandler(default_handler)
    for old in [h for h in app.logger.handlers if getattr(h, 'coxeter_stdout', False)]:
        app.logger.removeHandler(old)
    handler.coxeter_stdout = True
    app.logger.addHandler(handler)


def _ensure_schema(app):
    """Create the class table cache if it doesn't exist yet.

    Idempotent (IF NOT EXISTS), so it is safe on every start and on
    databases that were never migrated.
    """
    with app.app_context():
        try:
            db.session.execute(db.text("""
                CREATE TABLE IF NOT EXISTS class_tables (
                    id VARCHAR(36) PRIMARY KEY,
                    group_name VARCHAR(20) NOT NULL,
                    engine_version VARCHAR(20) NOT NULL,
                    schema_version INTEGER NOT NULL DEFAULT 1,
                    payload TEXT NOT NULL,
                    created_at TIMESTAMP NOT NULL DEFAULT CURRENT_TIMESTAMP,
                    CONSTRAINT uq_class_table_group_version UNIQUE (group_name, engine_version)
                )
            """))
            db.session.commit()
            app.logger.debug('Schema check completed')
        except Exception as e:
            db.session.rollback()
            app.logger.warning('Schema check failed: %s', e)


def create_app(config=None):
    app = Flask(__name__, static_folder=None)

    if config is None:
        config = ProdConfig if os.environ.get('FLASK_ENV') == 'production' else DevConfig
    app.config.from_object(config)

    _configure_logging(app)

    uri = app.config['SQLALCHEMY_DATABASE_URI']
    if uri.startswith('sqlite:///') and ':memory:' not in uri:
        os.makedirs(app.config['COXETER_CACHE_DIR'], exist_ok=True)

    db.init_app(app)
    migrate.init_app(app, db)

    # Import models so they are registered with SQLAlchemy (needed for migrations)
    from . import models  # noqa: F401

    _ensure_schema(app)

    from .commands import register_commands
    register_commands(app)

    return app

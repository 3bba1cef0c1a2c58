"""Class table cache: in-process memo, then the database, then computation.

Payloads are canonical JSON (sorted keys, compact separators), so a table
read back from the database re-serializes to the stored text exactly.
"""

import json
import logging
import os
from dataclasses import dataclass, replace

from flask import has_app_context
from sqlalchemy.exc import SQLAlchemyError

from .conjugacy import ConjClassRecord, conjugacy_classes
from .coxeter import CoxeterError, CoxeterSystem

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 2
ENGINE_VERSION = os.environ.get('ENGINE_VERSION', '1.0.0')

# (group, engine version) -> CachedTable
_memo = {}


class CacheError(CoxeterError):
    pass


@dataclass(frozen=True)
class CachedTable:
    group: str
    engine_version: str
    payload: str
    records: tuple[ConjClassRecord, ...]
    source: str


def serialize_classes(home: CoxeterSystem, records, engine_version: str = ENGINE_VERSION) -> dict:
    return {
        'schema': SCHEMA_VERSION,
        'group': str(home.ctype),
        'engine_version': engine_version,
        'order': home.order,
        'classes': [r.to_dict() for r in records],
    }


def dump_payload(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(',', ':'))


def records_from_payload(home: CoxeterSystem, payload) -> tuple[ConjClassRecord, ...]:
    if isinstance(payload, str):
        payload = json.loads(payload)
    if payload.get('schema') != SCHEMA_VERSION:
        raise CacheError(f'unsupported class table schema {payload.get("schema")!r}')
    if payload.get('group') != str(home.ctype):
        raise CacheError(f'class table is for {payload.get("group")}, not {home.ctype}')
    return tuple(ConjClassRecord.from_dict(home, entry) for entry in payload['classes'])


def _load_from_db(group: str, engine_version: str):
    from app.extensions import db
    from app.models import ClassTable

    try:
        return ClassTable.query.filter_by(group=group, engine_version=engine_version).first()
    except SQLAlchemyError as e:
        db.session.rollback()
        logger.warning('Class table lookup failed for %s: %s', group, e)
        return None


def _store_in_db(group: str, engine_version: str, payload: str, overwrite: bool):
    from app.extensions import db
    from app.models import ClassTable

    try:
        if overwrite:
            ClassTable.query.filter_by(group=group, engine_version=engine_version).delete()
        db.session.add(ClassTable(
            group=group,
            engine_version=engine_version,
            schema_version=SCHEMA_VERSION,
            payload=payload,
        ))
        db.session.commit()
    except SQLAlchemyError as e:
        db.session.rollback()
        logger.warning('Could not store class table for %s: %s', group, e)


def load_or_compute(home: CoxeterSystem, *, engine_version: str = ENGINE_VERSION,
                    refresh: bool = False) -> CachedTable:
    group = str(home.ctype)
    key = (group, engine_version)
    if not refresh and key in _memo:
        logger.debug('Class table memo hit for %s', group)
        cached = _memo[key]
        records = cached.records
        if records[0].rep_min.home is not home:
            records = records_from_payload(home, cached.payload)
        return replace(cached, records=records, source='memo')

    use_db = has_app_context()
    row = None
    if use_db and not refresh:
        row = _load_from_db(group, engine_version)
        if row is not None and row.schema_version == SCHEMA_VERSION:
            logger.info('Class table cache hit for %s (engine %s)', group, engine_version)
            cached = CachedTable(group, engine_version, row.payload,
                                 records_from_payload(home, row.payload), 'database')
            _memo[key] = cached
            return cached

    logger.info('Class table cache miss for %s, computing', group)
    records = conjugacy_classes(home)
    payload = dump_payload(serialize_classes(home, records, engine_version))
    if use_db:
        _store_in_db(group, engine_version, payload, overwrite=refresh or row is not None)
    cached = CachedTable(group, engine_version, payload, records, 'computed')
    _memo[key] = cached
    return cached


def clear_memo():
    _memo.clear()

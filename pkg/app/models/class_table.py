import uuid
from datetime import datetime, timezone
from app.extensions import db


class ClassTable(db.Model):
    __tablename__ = 'class_tables'

    id = db.Column(db.String(36), primary_key=True, default=lambda: str(uuid.uuid4()))
    group = db.Column('group_name', db.String(20), nullable=False)
    engine_version = db.Column(db.String(20), nullable=False)
    schema_version = db.Column(db.Integer, nullable=False, default=1)
    payload = db.Column(db.Text, nullable=False)
    created_at = db.Column(db.DateTime, nullable=False, default=lambda: datetime.now(timezone.utc))

    __table_args__ = (
        db.UniqueConstraint('group_name', 'engine_version', name='uq_class_table_group_version'),
    )

    def __repr__(self):
        return f'<ClassTable {self.group} v{self.engine_version}>'

from app.models.class_table import ClassTable

import csv
import io
import json
from dataclasses import dataclass

import click
from flask import current_app

from app.services.class_cache import load_or_compute
from app.services.coxeter import CoxeterError, CoxeterSystem, build_system, parse_group

OUTPUT_FORMATS = ('json', 'csv', 'text')
JSON_SCHEMA = 1


@dataclass(frozen=True)
class RunConfig:
    group: str | None
    budget: int
    search_budget: int
    output: str
    cache_dir: str
    engine_version: str = '1.0.0'

    def __post_init__(self):
        if self.budget < 1:
            raise CoxeterError(f'budget must be at least 1, got {self.budget}')
        if self.output not in OUTPUT_FORMATS:
            raise CoxeterError(f'unknown output format {self.output!r}')
        if self.group is not None:
            parse_group(self.group)

    @classmethod
    def from_options(cls, group=None, budget=None, output=None, search_budget=None):
        config = current_app.config
        return cls(
            group=group,
            budget=budget if budget is not None else config['COXETER_ORDER_BUDGET'],
            search_budget=search_budget if search_budget is not None else config['COXETER_SEARCH_BUDGET'],
            output=output or config['COXETER_OUTPUT'],
            cache_dir=config['COXETER_CACHE_DIR'],
            engine_version=config['ENGINE_VERSION'],
        )

    def system(self) -> CoxeterSystem:
        return build_system(parse_group(self.group), self.budget)


# Shared options
output_option = click.option('--output', type=click.Choice(OUTPUT_FORMATS), default=None,
                             help='Output format (default from COXETER_OUTPUT).')
budget_option = click.option('--budget', type=int, default=None,
                             help='Largest group order to enumerate.')


def emit(run: RunConfig, payload: dict, lines=(), rows=None):
    """Print `payload` as JSON, `rows` as CSV, or `lines` as text."""
    if run.output == 'json':
        click.echo(json.dumps({'schema': JSON_SCHEMA, **payload}, sort_keys=True, indent=2))
    elif run.output == 'csv' and rows is not None:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator='\n')
        writer.writerows(rows)
        click.echo(out.getvalue(), nl=False)
    else:
        for line in lines:
            click.echo(line)


def word(w) -> str:
    labels = w.word_labels()
    return ' '.join(str(s) for s in labels) if labels else 'e'


def class_table(run: RunConfig, home, refresh: bool = False):
    return load_or_compute(home, engine_version=run.engine_version, refresh=refresh)

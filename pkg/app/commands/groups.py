import json

import click
from flask import Blueprint

from app.commands.run_config import RunConfig, class_table, budget_option, emit, output_option, word
from app.middleware.exit_codes import exit_codes
from app.services.characters import character_table
from app.services.coxeter import group_degrees

bp = Blueprint('groups', __name__, cli_group=None)


@bp.cli.command('group-info')
@click.argument('group')
@click.option('--enumerate', 'enumerate_', is_flag=True, help='Enumerate W and report its longest element.')
@output_option
@budget_option
@exit_codes
def group_info(group, enumerate_, output, budget):
    """Order, rank, Coxeter matrix and positive root count of GROUP."""
    run = RunConfig.from_options(group, budget, output)
    home = run.system()
    payload = {
        'group': str(home.ctype),
        'rank': home.rank,
        'order': home.order,
        'positive_roots': home.n_positive,
        'degrees': list(group_degrees(home.ctype)),
        'coxeter_matrix': [list(row) for row in home.coxeter_matrix],
    }
    lines = [
        f'group:          {home.ctype}',
        f'rank:           {home.rank}',
        f'order:          {home.order}',
        f'positive roots: {home.n_positive}',
        f'degrees:        {" ".join(str(d) for d in payload["degrees"])}',
        'coxeter matrix:',
    ] + ['  ' + ' '.join(f'{m:>2}' for m in row) for row in home.coxeter_matrix]
    if enumerate_:
        store = home.element_store()
        w0 = store.element(len(store.perms) - 1)
        payload['longest_element'] = list(w0.word_labels())
        payload['longest_length'] = int(store.lengths[-1])
        lines.append(f'longest element: {word(w0)} (length {payload["longest_length"]})')
    rows = [['key', 'value']] + [[k, v] for k, v in payload.items() if not isinstance(v, list)]
    emit(run, payload, lines, rows)


@bp.cli.command('classes')
@click.argument('group')
@click.option('--refresh', is_flag=True, help='Recompute and replace the cached table.')
@output_option
@budget_option
@exit_codes
def classes(group, refresh, output, budget):
    """Conjugacy classes of GROUP with minimal representatives and labels."""
    run = RunConfig.from_options(group, budget, output)
    cached = class_table(run, run.system(), refresh=refresh)
    header = ['position', 'rep_min', 'length', 'class_size', 'centralizer_order',
              'J', 'cuspidal', 'label', 'non_compliant']
    rows = [header]
    lines = [f'{cached.group}: {len(cached.records)} classes ({cached.source})']
    for record in cached.records:
        data = record.to_dict()
        J = str(record.J)
        rows.append([data['position'] + 1, word(record.rep_min), data['length'], data['class_size'],
                     data['centralizer_order'], J, int(data['cuspidal']), data['label'] or '',
                     int(data['non_compliant'])])
        flags = ' cuspidal' * data['cuspidal'] + ' non-compliant' * data['non_compliant']
        lines.append(f'{data["position"] + 1:>4}  {word(record.rep_min):<24} size {data["class_size"]:<6} '
                     f'J={J} {data["label"] or ""}{flags}')
    emit(run, json.loads(cached.payload), lines, rows)


@bp.cli.command('characters')
@click.argument('group')
@output_option
@budget_option
@exit_codes
def characters(group, output, budget):
    """pi_J for every class and subset J, then epsilon, as CSV by default."""
    run = RunConfig.from_options(group, budget, output or 'csv')
    table = character_table(run.system())
    if run.output == 'json':
        emit(run, {
            'group': table.group,
            'subsets': [list(J.labels) for J in table.subsets],
            'classes': [
                {'position': r.position + 1, 'rep_min': list(r.rep_min.word_labels()),
                 'values': [int(v) for v in row], 'epsilon': sign}
                for r, row, sign in zip(table.classes, table.values, table.signs)
            ],
        })
    else:
        click.echo(table.to_csv(), nl=False)

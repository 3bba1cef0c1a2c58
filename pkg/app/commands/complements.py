import re

import click
from flask import Blueprint

from app.commands.run_config import RunConfig, class_table, budget_option, emit, output_option, word
from app.middleware.exit_codes import EXIT_BUDGET, EXIT_VIOLATION, exit_codes
from app.services.complement import centralizer_complement
from app.services.coxeter import CoxeterError, coxeter_element
from app.services.signed_perm import DoublePartition, w_lambda

bp = Blueprint('complements', __name__, cli_group=None)


def parse_label(family: str, text: str, primed: bool) -> DoublePartition:
    """'(1,2,2)' for type A; '(1),(2,2)' with an optional trailing quote otherwise."""
    if family == 'A':
        parts = tuple(sorted(int(p) for p in re.findall(r'\d+', text)))
        return DoublePartition(parts, ())
    label = DoublePartition.parse(text)
    return DoublePartition(label.plus, label.minus, label.primed or primed)


def select_element(run: RunConfig, home, lam, primed, selector):
    if lam is not None:
        if home.ctype.family not in ('A', 'B', 'D'):
            raise CoxeterError(f'--lambda needs a classical group, not {home.ctype}')
        label = parse_label(home.ctype.family, lam, primed)
        return w_lambda(home.ctype, label).to_element(home)
    if selector is None:
        raise CoxeterError('give a class with --lambda or --class')
    if selector == 'coxeter':
        return coxeter_element(home)
    if selector.startswith('word:'):
        labels = [int(s) for s in re.findall(r'\d+', selector[5:])]
        if any(not 1 <= s <= home.rank for s in labels):
            raise CoxeterError(f'word {selector[5:]!r} uses generators outside 1..{home.rank}')
        return home.from_labels(labels)
    if not selector.isdigit():
        raise CoxeterError(f'unknown class selector {selector!r}')
    records = class_table(run, home).records
    position = int(selector)
    if not 1 <= position <= len(records):
        raise CoxeterError(f'{home.ctype} has classes 1..{len(records)}, not {position}')
    return records[position - 1].rep_min


@bp.cli.command('complement')
@click.argument('group')
@click.option('--lambda', 'lam', default=None, help="Class label, e.g. '(1),(2,2)'.")
@click.option('--primed', is_flag=True, help='Take the primed class of a split type D label.')
@click.option('--class', 'selector', default=None,
              help="Class position (1-based), 'coxeter', or 'word:1,2,3'.")
@click.option('--search-budget', type=int, default=None, help='Closures allowed in the exhaustive search.')
@output_option
@budget_option
@exit_codes
def complement(group, lam, primed, selector, search_budget, output, budget):
    """Run the centralizer complement algorithm on one class of GROUP."""
    run = RunConfig.from_options(group, budget, output, search_budget)
    home = run.system()
    w = select_element(run, home, lam, primed, selector)
    result = centralizer_complement(w, search_budget=run.search_budget)
    certificate = result.certificate
    lines = [
        f'group:       {home.ctype}',
        f'element:     {word(result.element)}  J={result.J}',
        f'|C_W(w)| = {certificate.centralizer_order}, |C_W_J(w)| = {certificate.parabolic_centralizer_order}',
        f'status:      {result.status} ({certificate.kind})',
    ]
    if result.found:
        lines += [f'  generator  {word(g)}' for g in result.generators]
        lines.append(f'complement order {certificate.complement_order}')
    elif certificate.detail:
        lines.append(f'certificate: {certificate.detail}')
    emit(run, {'group': str(home.ctype), **result.to_dict()}, lines)
    if not result.found and not result.non_existence_proven:
        ctx = click.get_current_context()
        ctx.exit(EXIT_BUDGET if 'unknown' in certificate.detail else EXIT_VIOLATION)

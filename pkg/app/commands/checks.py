import click
from flask import Blueprint

from app.commands.run_config import RunConfig, class_table, budget_option, emit, output_option, word
from app.middleware.exit_codes import exit_codes
from app.services.characters import macmahon_solomon_bridge, solomon_check, theorem3_check
from app.services.complement import centralizer_complement, class_is_non_compliant
from app.services.conjugacy import quotient_map_check, verify_theorem2
from app.services.coxeter import InvariantViolation

bp = Blueprint('checks', __name__, cli_group=None)


def _report(run, name, subject, passed, lines=()):
    emit(run, {'check': name, 'subject': subject, 'passed': passed},
         list(lines) + [f'{name} {subject}: {"pass" if passed else "FAIL"}'])
    return passed


@bp.cli.command('solomon')
@click.argument('group')
@click.option('--samples', type=int, default=3, help='Random class members checked besides rep_min.')
@click.option('--seed', type=int, default=0)
@output_option
@budget_option
@exit_codes
def solomon(group, samples, seed, output, budget):
    """Check sum_J (-1)^|J| pi_J = epsilon on every class of GROUP."""
    run = RunConfig.from_options(group, budget, output)
    home = run.system()
    return _report(run, 'solomon', str(home.ctype), solomon_check(home, samples=samples, seed=seed))


@bp.cli.command('macmahon')
@click.argument('n', type=int)
@click.option('--sample', type=int, default=None, help='Check this many random permutations only.')
@click.option('--seed', type=int, default=0)
@output_option
@exit_codes
def macmahon(n, sample, seed, output):
    """Check the master theorem coefficients against pi_J in S_N."""
    run = RunConfig.from_options(None, None, output)
    if sample is None and n >= 5:
        sample = 20
    return _report(run, 'macmahon', f'n={n}', macmahon_solomon_bridge(n, sample=sample, seed=seed))


@bp.cli.command('theorem3')
@click.argument('group')
@output_option
@budget_option
@exit_codes
def theorem3(group, output, budget):
    """For every minimal class representative w, find the unique v with J(w^v) = D(v^-1) and = A(v^-1)."""
    run = RunConfig.from_options(group, budget, output)
    home = run.system()
    lines = []
    for record in class_table(run, home).records:
        v_desc, v_asc = theorem3_check(record.rep_min)
        lines.append(f'{word(record.rep_min):<24} v_D = {word(v_desc):<24} v_A = {word(v_asc)}')
    return _report(run, 'theorem3', str(home.ctype), True, lines)


@bp.cli.command('verify')
@click.argument('group')
@click.option('--search-budget', type=int, default=None)
@output_option
@budget_option
@exit_codes
def verify(group, search_budget, output, budget):
    """C_W(w) W_J = N_W(W_J), the quotient map and the complement/non-compliance split on every class of GROUP."""
    run = RunConfig.from_options(group, budget, output, search_budget)
    home = run.system()
    lines = []
    for record in class_table(run, home).records:
        w = record.rep_min
        if not verify_theorem2(w):
            raise InvariantViolation('theorem2', f'{home.ctype} class {record.position + 1}')
        if not quotient_map_check(w).holds:
            raise InvariantViolation('quotient-map', f'{home.ctype} class {record.position + 1}')
        result = centralizer_complement(w, search_budget=run.search_budget)
        flagged = class_is_non_compliant(record, home)
        if result.found == flagged or (not result.found and not result.non_existence_proven):
            raise InvariantViolation(
                'complement',
                f'{home.ctype} class {record.position + 1}: status {result.status} '
                f'({result.certificate.kind}), non-compliant {flagged}',
            )
        lines.append(f'{record.position + 1:>4}  {word(w):<24} {result.status:<5} {result.certificate.kind}')
    return _report(run, 'verify', str(home.ctype), True, lines)

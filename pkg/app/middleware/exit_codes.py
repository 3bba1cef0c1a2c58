import logging
from functools import wraps

import click

from app.services.coxeter import BudgetExceeded, CoxeterError, InvariantViolation

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def exit_codes(f):
    """Map engine errors to process exit codes: violation 1, usage 2, budget 3."""
    @wraps(f)
    def decorated(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            result = f(*args, **kwargs)
        except InvariantViolation as e:
            logger.error('Invariant violated: %s', e.detail)
            click.echo(f'violation: {e.detail}', err=True)
            ctx.exit(EXIT_VIOLATION)
        except BudgetExceeded as e:
            logger.warning('Budget exceeded: order %s > %s', e.order, e.budget)
            click.echo(f'budget exceeded: {e.detail}', err=True)
            ctx.exit(EXIT_BUDGET)
        except CoxeterError as e:
            click.echo(f'error: {e.detail}', err=True)
            ctx.exit(EXIT_USAGE)
        if result is False:
            ctx.exit(EXIT_VIOLATION)
        return result
    return decorated

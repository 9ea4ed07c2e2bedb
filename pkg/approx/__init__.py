"""
Approximation Module
Dirichlet approximation and the per-k error schedule
"""
from approx.dirichlet import DirichletApprox, continued_fraction, convergents, dirichlet_approx
from approx.error_schedule import (
    ErrorSchedule,
    ScheduleRow,
    choose_m,
    build_error_schedule,
    schedule_report,
    MAX_SCHEDULE_DELTA,
)

__all__ = [
    'DirichletApprox',
    'continued_fraction',
    'convergents',
    'dirichlet_approx',
    'ErrorSchedule',
    'ScheduleRow',
    'choose_m',
    'build_error_schedule',
    'schedule_report',
    'MAX_SCHEDULE_DELTA'
]

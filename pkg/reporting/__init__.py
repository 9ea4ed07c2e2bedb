"""
Reporting Module
JSON/CSV export of reports and PNG plots
"""
from reporting.exporters import to_jsonable, report_table, dumps_report, write_report, read_json
from reporting.plots import plot_grid_values, plot_gamma_table

__all__ = [
    'to_jsonable',
    'report_table',
    'dumps_report',
    'write_report',
    'read_json',
    'plot_grid_values',
    'plot_gamma_table'
]

from biharmonica.suites.report import (
    CheckRecord,
    SuiteReport,
    lower,
    upper,
    verdict_check,
    write_report,
    write_rows,
)
from biharmonica.suites.suites import FULL_ORDER, SUITES, SuiteConfig, run_suite
from biharmonica.suites.sweep import SWEEP_FIELDS, mismatches, sweep, sweep_row, sweep_table
from biharmonica.suites.tables import ClosedForms, load_tables, table_deviations

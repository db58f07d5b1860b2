from .cli_reports import (
    CommandResult, build_parser, run, cmd_certify, cmd_bounds, cmd_mu, cmd_spectrum,
    cmd_generate, cmd_experiment, cmd_tightness, cmd_verify, EXIT_OK, EXIT_NEGATIVE
)
from .report_formatter import ReportFormatter, report_formatter, OUTPUT_FORMATS
from .verify_suites import fuzz_corpus, regular_corpus, run_suites, SuiteReport, PropertyResult, SUITES

__all__ = [
    'CommandResult', 'build_parser', 'run', 'cmd_certify', 'cmd_bounds', 'cmd_mu', 'cmd_spectrum',
    'cmd_generate', 'cmd_experiment', 'cmd_tightness', 'cmd_verify', 'EXIT_OK', 'EXIT_NEGATIVE',
    'ReportFormatter', 'report_formatter', 'OUTPUT_FORMATS', 'fuzz_corpus', 'regular_corpus', 'run_suites',
    'SuiteReport', 'PropertyResult', 'SUITES'
]

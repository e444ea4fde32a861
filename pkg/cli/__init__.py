"""
Command-line front end
"""
from cli.commands import (
    COMMANDS,
    FAMILY_TAGS,
    build_parser,
    cmd_build,
    cmd_cosets,
    cmd_table,
    output_format,
    parse_args,
    run_command,
    settings_overrides,
)
from cli.report import RunReport

__all__ = [
    'COMMANDS',
    'FAMILY_TAGS',
    'RunReport',
    'build_parser',
    'cmd_build',
    'cmd_cosets',
    'cmd_table',
    'output_format',
    'parse_args',
    'run_command',
    'settings_overrides',
]

"""Main program entry point module that parses original CLI arguments"""

import logging
import sys
from typing import List, Optional, Sequence

import configargparse
from fuzzywuzzy import process
from rich.console import Console

from perceptsim._command import Command
from perceptsim._config import (
    _DEFAULT_BINS,
    _DEFAULT_CONFIG_FILES,
    _DEFAULT_COHORT_SIZE,
    _DEFAULT_OUTPUT_DIR,
    _DEFAULT_SEED,
    _PROG,
    _SEED_ENV_VAR,
    rich_theme,
)
from perceptsim._containers import parsed_theme_override
from perceptsim._exceptions import ExitStatus
from perceptsim._util import resolved_path

from perceptsim.commands.commands import _COMMAND_NAMES
from perceptsim.commands.commands import _COMMAND_NAMES_AND_ALIASES
from perceptsim.commands.commands import get_command_obj

_CONSOLE = Console(theme=rich_theme)
_ERROR_CONSOLE = Console(theme=rich_theme, stderr=True)
_FUZZYISH_COMMAND_THRESHOLD = 50


def get_similar_commands(command: str) -> List[str]:
    """
    Perform a fuzzy check for similar command names to a given command. Only
    values meeting or exceeding the _FUZZYISH_COMMAND_THRESHOLD are returned.

    Arguments:
        command

    Returns:
        A list of fuzzy matches that meet a pre-determined threshold.
    """
    return [x[0] for x in process.extract(query=command,
                                          choices=_COMMAND_NAMES_AND_ALIASES)
            if x[1] > _FUZZYISH_COMMAND_THRESHOLD]


def create_main_parser() -> configargparse.ArgParser:
    """Creates and returns the main parser for perceptsim's CLI."""
    #
    # setup the parser
    #
    parser_kwargs = {
        'usage': f'{_PROG} <{"|".join(_COMMAND_NAMES)}> [options]\n\n'
                 'For help about a specific command:\n\t'
                 f'{_PROG} help <command>',
        'add_help': False,
        'allow_abbrev': False,
        'default_config_files': _DEFAULT_CONFIG_FILES,
        'config_file_parser_class': configargparse.YAMLConfigFileParser,
        'prog': _PROG,
        'description': 'Likert composites, Monte Carlo cohorts, OLS '
                       'diagnostics and SUS scoring from published item '
                       'statistics',
    }

    parser = configargparse.ArgumentParser(**parser_kwargs)

    #
    # setup the parser groups
    #
    simulation = parser.add_argument_group('simulation arguments')
    output = parser.add_argument_group('output arguments')
    optional = parser.add_argument_group('optional arguments')

    #
    # setup positional arguments
    #
    parser.add_argument('command',
                        nargs='?',
                        help=f'The main {_PROG} command to execute.')

    parser.add_argument('args',
                        nargs='*',
                        default=[],
                        help='The command arguments.')

    #
    # setup simulation arguments
    #
    simulation.add_argument('--seed',
                            type=int,
                            default=_DEFAULT_SEED,
                            env_var=_SEED_ENV_VAR,
                            help='Seed of the random stream, an unsigned '
                            f'64-bit integer (default: {_DEFAULT_SEED}).')

    simulation.add_argument('--n',
                            type=int,
                            default=_DEFAULT_COHORT_SIZE,
                            help='Number of virtual respondents '
                            f'(default: {_DEFAULT_COHORT_SIZE}).')

    simulation.add_argument('--noise-sd',
                            type=float,
                            default=None,
                            help='SD of the noise added to every success '
                            'score (default: 0.05).')

    simulation.add_argument('--clip-min',
                            type=float,
                            default=None,
                            help='Lower clip bound of the success score '
                            '(default: the scale floor).')

    simulation.add_argument('--clip-max',
                            type=float,
                            default=None,
                            help='Upper clip bound of the success score '
                            '(default: the scale ceiling).')

    simulation.add_argument('--replicate-paper',
                            action='store_true',
                            default=False,
                            help='Simulate with the theme parameters, noise '
                            'and clip bounds of the published run instead of '
                            'the recomputed composites.')

    simulation.add_argument('--override-theme',
                            action='append',
                            default=None,
                            metavar='ID=MEAN,SD',
                            type=parsed_theme_override,
                            help='Replace the mean and SD of one theme '
                            '(repeatable; applied after --replicate-paper).')

    #
    # setup output arguments
    #
    output.add_argument('--bins',
                        type=int,
                        default=_DEFAULT_BINS,
                        help='Number of histogram bins '
                        f'(default: {_DEFAULT_BINS}).')

    output.add_argument('--format',
                        choices=['json', 'csv'],
                        default=None,
                        help='Format of the document printed to stdout.')

    output.add_argument('-o', '--out',
                        default=_DEFAULT_OUTPUT_DIR,
                        type=resolved_path,
                        help='Directory the artifacts are written to '
                        f'(default: {_DEFAULT_OUTPUT_DIR}).')

    output.add_argument('--svg',
                        action='store_true',
                        default=False,
                        help='Also draw the histogram as SVG.')

    output.add_argument('--no-timestamp',
                        action='store_true',
                        default=False,
                        help='Leave the report timestamp empty so identical '
                        'runs write identical reports.')

    #
    # setup optional arguments
    #
    optional.add_argument('-c', '--config',
                          is_config_file=True,
                          help='Read options from this YAML file.')

    optional.add_argument('--help',
                          action='store_true',
                          help='Show help and exit.')

    optional.add_argument('-V', '--version',
                          action='store_true',
                          default=False,
                          help='Show version and exit.')

    #
    # Add verbosity argument option group
    #
    log_level = optional.add_mutually_exclusive_group()
    optional.set_defaults(log_level=logging.INFO)
    log_level.add_argument('-v', '--verbose',
                           action='store_const',
                           dest='log_level',
                           const=logging.DEBUG,
                           help='Show debug output.')

    log_level.add_argument('-q', '--quiet',
                           action='store_const',
                           dest='log_level',
                           const=logging.ERROR,
                           help='Show only the minimally necessary output.')

    return parser


def execute(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse the arguments, run the requested command and return its exit
    status.

    Arguments:
        argv -- The arguments after the program name (default: sys.argv)

    Returns:
        The process exit status.
    """
    parser = create_main_parser()
    try:
        args, remainder = parser.parse_known_args(
            args=None if argv is None else list(argv))
    except SystemExit as err:
        # argparse already printed the usage error
        return int(err.code or 0)

    # Unknown options end up with the positional command arguments, where
    # the command's own argument check rejects them.
    args.args.extend(remainder)

    # Without a command, the only valid requests are the version and help.
    if not args.command:
        if args.version:
            args.command = 'version'
        else:
            _CONSOLE.print(parser.format_help(), highlight=False,
                           markup=False)
            return int(ExitStatus.SUCCESS if args.help else ExitStatus.USAGE)

    # Check if the provided command matches one of the registered commands.
    # If so, pass it along to that command object to run.
    command = get_command_obj(args.command)

    if isinstance(command, Command):
        if args.help:
            command.show_help()
            return int(ExitStatus.SUCCESS)
        return command.invoke(parser, args)

    _ERROR_CONSOLE.print(f'[error]"{args.command}" is not a valid {_PROG} '
                         'command[/].\n', highlight=False)

    # Check for similar commands. If any similar-enough matches were found,
    # suggest them.
    similar_commands = get_similar_commands(args.command)
    if similar_commands:
        _ERROR_CONSOLE.print('Maybe you meant one of these commands?\n\t'
                             f'[i]{", ".join(similar_commands)}[/]\n')

    _ERROR_CONSOLE.print(parser.format_usage(), highlight=False, markup=False)
    return int(ExitStatus.USAGE)


def main():
    """Main entry point for the program"""
    sys.exit(execute())


if __name__ == "__main__":
    main()

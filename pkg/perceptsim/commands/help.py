"""Help command implementation"""

import sys

from perceptsim._command import Command
from perceptsim._config import _PROG
from perceptsim._exceptions import ExitStatus
from perceptsim._help import Help
from perceptsim._logging import get_rich_logger

# Import each of the other commands so their 'help' methods can be invoked
# from here. NOTE: Don't import the `commands_command` module, because that
# would introduce a circular dependency

# pylint: disable=unused-import
# flake8: noqa:401
from perceptsim.commands.compose import compose_command
from perceptsim.commands.histogram import histogram_command
from perceptsim.commands.regress import regress_command
from perceptsim.commands.run import run_command
from perceptsim.commands.simulate import simulate_command
from perceptsim.commands.sus import sus_command
from perceptsim.commands.validate import validate_command
from perceptsim.commands.version import version_command


_LOGGER = get_rich_logger(__name__)
_HELP = Help(
    name='help',
    brief='Show help documentation',
    synopsis=f'{_PROG} help <command>',
    description=f'This command will show help documentation for other {_PROG} '
                'commands. If the provided [keyword]<command>[/keyword] is '
                'not valid or no help documentation exists, an error is '
                'printed and the exit status is 2.'
                '\n\n'
                'If no command is passed to the [example]help[/] command, '
                f'then {_PROG}\'s default help output is printed to stdout.'
)


class HelpCommand(Command):
    """
    Inherits from the base Command class and overrides the `run` method
    to implement the Help functionality.
    """
    def __init__(self, name, aliases=None):
        super().__init__(name, _HELP, aliases=aliases or [])
        self.is_hidden = True

    def run(self, *args, **kwargs):
        """Implements the `help` commands functionality."""
        self.apply_log_level(_LOGGER)

        # If the `help` command didn't get any arguments, just show the
        # default help screen.
        args = Command.main_options.args
        if not args:
            Command.main_parser.print_help()
            return ExitStatus.SUCCESS

        command_name = args[0]
        if command_name == self.name:
            self.show_help()
            return ExitStatus.SUCCESS

        try:
            command = getattr(sys.modules[__name__], f'{command_name}_command')
        except AttributeError:
            _LOGGER.error('There is no help documentation available for '
                          'the command: "%s"', command_name)
            return ExitStatus.USAGE

        command.show_help()
        return ExitStatus.SUCCESS


#
# Create the HelpCommand instance
#
help_command = HelpCommand(name='help', aliases=['help'])

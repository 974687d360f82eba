"""Commands command implementation"""

import os
import sys
from typing import Dict, List, Optional, Set, Tuple

from perceptsim._command import Command
from perceptsim._config import _PROG
from perceptsim._help import Help
from perceptsim._logging import get_rich_logger

# pylint: disable=unused-import
# flake8: noqa:401
from perceptsim.commands.compose import compose_command
from perceptsim.commands.help import help_command
from perceptsim.commands.histogram import histogram_command
from perceptsim.commands.regress import regress_command
from perceptsim.commands.run import run_command
from perceptsim.commands.simulate import simulate_command
from perceptsim.commands.sus import sus_command
from perceptsim.commands.validate import validate_command
from perceptsim.commands.version import version_command


_LOGGER = get_rich_logger(__name__)
_HELP = Help(
    name='commands',
    brief=f'Lists the supported {_PROG} commands',
    synopsis=f'{_PROG} commands',
    description='For detailed information about a specific command, use '
                f'[example]{_PROG} help <command>[/example]')


class CommandsCommand(Command):
    """
    The CommandsCommand class defines the "commands" command. This class
    inherits from the base Command class.
    """
    def __init__(self, name, aliases=None):
        super().__init__(name, _HELP, aliases=aliases or [])
        self.is_hidden = True

    def run(self, *args, **kwargs):
        """
        Print the supported commands.
        """
        self.apply_log_level(_LOGGER)

        for cmd in get_command_objs(True):
            print('* ', cmd.help.heading)


#
# Create the CommandsCommand instance
#
commands_command = CommandsCommand(name='commands')


def get_command_list() -> List[str]:
    """
    Returns a list of all the filenames (without their extensions) from the
    commands/ directory, which represents the names of all the valid commands.

    Returns:
        list
    """
    here = os.path.dirname(__file__)
    cmds = {f.split('.')[0] for f in os.listdir(here)
            if f.endswith('.py') and not f.startswith('_')}
    return sorted(cmds)


def get_command_map() -> Tuple[Dict[str, str], Set[str]]:
    """
    Maps all command aliases to their command name.

    Returns:
        (dict of every alias to its command name, set of every name and
        alias)
    """
    mapped = {}
    commands_and_keys = set()

    for cmd in _COMMAND_NAMES:
        obj = getattr(sys.modules[__name__], f'{cmd}_command')
        for alias in [obj.name] + obj.aliases:
            mapped[alias] = obj.name
            commands_and_keys.add(alias)

    return mapped, commands_and_keys


def resolved_command(command_name: str) -> Optional[str]:
    """
    Returns the name of a registered command given a command name or alias to
    check against. If the input command does not match any registered command
    or alias, None is returned.

    Returns:
        The name of a registered command.
    """
    return _COMMAND_MAP.get(command_name, None)


def get_command_obj(command_name: str) -> Optional[Command]:
    """
    Returns an instance of a registered Command object associated with the
    command argument.
    """
    resolved_name = resolved_command(command_name)
    if resolved_name:
        return getattr(sys.modules[__name__], f'{resolved_name}_command')
    return None


def get_command_objs(include_hidden_commands: bool = False) -> List[Command]:
    """Returns a list of all Command objects"""
    command_objects = [get_command_obj(x) for x in get_command_list()]

    if include_hidden_commands:
        return command_objects
    return [x for x in command_objects if not x.is_hidden]


_COMMAND_NAMES = sorted([x for x in get_command_list() if x])
_COMMAND_MAP, _COMMAND_NAMES_AND_ALIASES = get_command_map()

"""Abstract Command class from which all program command subclasses inherit"""

import logging
from typing import List

from configargparse import ArgumentParser, Namespace
from rich.console import Console

from perceptsim._config import _PROG, rich_theme
from perceptsim._exceptions import (
    CommandError,
    ExitStatus,
    PerceptsimError,
    ValidationFailed,
)
from perceptsim._help import Help
from perceptsim._logging import get_rich_logger, set_log_level

# Errors and findings go to stderr; stdout carries command output only.
_console = Console(theme=rich_theme, stderr=True)
_LOGGER = get_rich_logger(__name__, console=_console)


class Command():
    """
    Abstract base command class from which all actionable commands inherit.
    """
    main_parser: ArgumentParser = None
    main_options: Namespace = None

    def __init__(self, name: str, help: Help, aliases: List[str] = None):
        # pylint: disable=redefined-builtin
        self.name: str = name
        self.help: Help = help
        self.aliases: List[str] = aliases or []

        # Override to True within the derived Command class in order to hide
        # the command from the general list of "all commands".
        self.is_hidden: bool = False

        # Ensure all sub-commands have instantiated a Help instance for their
        # 'help' attribute.
        assert isinstance(self.help, Help)

    @staticmethod
    def apply_log_level(logger: logging.Logger) -> None:
        """
        Update the logger to apply the log-level from the main options.

        Arguments:
            logger -- The logger from a command.
        """
        set_log_level(Command.main_options.log_level)
        logger.setLevel(Command.main_options.log_level)

    @staticmethod
    def show_error(text: str, **kwargs) -> None:
        """
        Print a styled error to stderr using the rich_theme error styling.

        NOTE: The difference between this and the logging.error is that the
        console error does not include the logging formatting (like the
        timestamp). This is just for direct error messages.

        Arguments:
            text -- The error message to output

        NOTE: **kwargs are passed to the console.print() method, so any named
        arguments that console.print() supports are supported here as well.
        """
        kwargs.setdefault('highlight', False)
        kwargs.setdefault('markup', False)
        _console.print(text, style=rich_theme.styles['error'], **kwargs)

    def expect_args(self, count: int) -> List[str]:
        """
        Return the command's positional arguments, making sure there are
        exactly `count` of them.

        Raises:
            CommandError: on a different number of arguments.
        """
        args = list(Command.main_options.args)
        if len(args) != count:
            raise CommandError(
                f'"{self.name}" expects {count} argument(s) '
                f'({len(args)} given); see "{_PROG} help {self.name}"',
                stage=self.name)
        return args

    def invoke(self, main_parser: ArgumentParser,
               main_options: Namespace) -> int:
        """
        Store the main parser and options where every Command subclass can
        reach them, then run the command and map its outcome onto an exit
        status.

        Arguments:
            main_parser -- The ArgParser from the top-level module.
            main_options -- The Namespace containing all of the arg options

        Returns:
            The process exit status.
        """
        Command.main_parser = main_parser
        Command.main_options = main_options
        set_log_level(main_options.log_level)

        try:
            status = self.run()
        except ValidationFailed as err:
            for finding in err.findings:
                self.show_error(str(finding))
            self.show_error(str(err))
            return int(err.exit_code)
        except PerceptsimError as err:
            self.show_error(str(err))
            return int(err.exit_code)
        except OSError as err:
            filename = f' {err.filename}' if err.filename else ''
            self.show_error(f'[io]{filename}: {err.strerror or err}')
            return int(ExitStatus.USAGE)

        return int(ExitStatus.SUCCESS if status is None else status)

    def show_help(self) -> None:
        """
        Invoke the print() method on a Command's help object instance.
        NOTE: This expects that each Command sub-class implements a Help class
        instance
        """
        self.help.print_help()

    def run(self, *args, **kwargs) -> int:
        """
        Implements the functionality of a particular command and returns its
        exit status. Failures are raised as perceptsim errors.
        NOTE: This needs to be implemented in each of the sub-classes

        Raises:
            NotImplementedError: if a subclass does not implement it.
        """
        raise NotImplementedError

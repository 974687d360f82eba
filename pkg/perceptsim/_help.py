"""
Manual-style help pages for perceptsim commands.

A page is a handful of titled sections (NAME, SYNOPSIS, DESCRIPTION, OPTIONS,
NOTES). Section bodies are rich markup using the styles of the package theme,
so `[keyword]--seed[/]` or `[path]cohort.csv[/]` render the same on every
page. Pages go to stdout because they are the requested output, not a
diagnostic.
"""

from dataclasses import dataclass
from textwrap import dedent
from typing import Iterator, Optional, Tuple

from rich.console import Console, Group
from rich.padding import Padding
from rich.text import Text

from perceptsim._config import rich_theme

_PAGE_WIDTH = 80
_BODY_INDENT = 4

_console = Console(theme=rich_theme)


@dataclass(frozen=True)
class Help:
    """The help page of one command."""
    name: str
    brief: Optional[str] = None
    synopsis: Optional[str] = None
    description: Optional[str] = None
    options: Optional[str] = None
    notes: Optional[str] = None

    @property
    def heading(self) -> str:
        """`name -- brief`, or the bare name when there is no brief."""
        return f'{self.name} -- {self.brief}' if self.brief else self.name

    def sections(self) -> Iterator[Tuple[str, str]]:
        """(title, markup body) of every non-empty section, in page order."""
        for title, body in (('NAME', self.heading),
                            ('SYNOPSIS', self.synopsis),
                            ('DESCRIPTION', self.description),
                            ('OPTIONS', self.options),
                            ('NOTES', self.notes)):
            if body:
                yield title, dedent(body).strip()

    def render(self) -> Group:
        """The page as one rich renderable."""
        parts = []
        for title, body in self.sections():
            parts.append(Text(title, style='h1'))
            parts.append(Padding(Text.from_markup(body, justify='left'),
                                 (0, 0, 1, _BODY_INDENT)))
        return Group(*parts)

    def print_help(self, console: Console = _console) -> None:
        """Print the page, no wider than a terminal page."""
        console.print(self.render(), width=min(console.width, _PAGE_WIDTH),
                      highlight=False)

"""
Command dispatcher.

This module defines `CommandRunner`, which combines the per-subcommand mixins
and maps library errors onto the documented exit codes.
"""
import logging

from fuforge.config.config import EXIT_UNRESOLVED, EXIT_USAGE
from fuforge.errors import AlgebraFault, BudgetExceeded, FuForgeError, WitnessFault

from .decode_commands import DecodeCommands
from .explore_commands import ExploreCommands
from .search_commands import SearchCommands
from .verify_commands import VerifyCommands

logger = logging.getLogger(__name__)


class CommandRunner(VerifyCommands, SearchCommands, DecodeCommands, ExploreCommands):
    """
    Runs one parsed command line.

    Args:
        args: The argparse namespace.
        app: The ApplicationManager holding config, cache and output.
    """

    def __init__(self, args, app):
        self.args = args
        self.app = app
        self.config = app.config

    def run(self) -> int:
        """
        Dispatches to `cmd_<subcommand>`.

        Returns:
            The process exit code.
        """
        handler = getattr(self, f"cmd_{self.args.command}")
        try:
            return handler()
        except (AlgebraFault, WitnessFault):
            logger.critical("internal invariant broken while running %s", self.args.command)
            raise
        except BudgetExceeded as e:
            logger.error("%s", e)
            return EXIT_UNRESOLVED
        except (FuForgeError, ValueError) as e:
            logger.error("%s", e)
            return EXIT_USAGE

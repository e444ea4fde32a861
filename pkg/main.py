"""
constamax - constacyclic code workbench entry point
"""
import sys
import logging

from cli import output_format, parse_args, run_command, settings_overrides
from core.errors import WorkbenchError
from utils import APP_NAME, APP_VERSION, CONFIG_DIR, EXIT_USAGE, LOG_FILE, load_settings

# =============================================================================
# TEMPLATE ARCHITECTURE
# =============================================================================

class State:
    """Shared run state"""
    argv = None
    args = None
    settings = None
    logger = None
    report = None

class Utils:
    """Helpers"""

    @staticmethod
    def setup_logging(level: str = "WARNING", to_file: bool = False):
        """Configures logging; stderr only, stdout carries the report."""
        handlers = [logging.StreamHandler(sys.stderr)]
        if to_file:
            CONFIG_DIR.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(LOG_FILE, encoding='utf-8'))

        logging.basicConfig(
            level=getattr(logging, level),
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            handlers=handlers,
            force=True,
        )

        logging.getLogger("galois").setLevel(logging.WARNING)
        logging.getLogger("numba").setLevel(logging.WARNING)
        logger = logging.getLogger(__name__)
        logger.info(f"{APP_NAME} v{APP_VERSION} starting")
        return logger

    @staticmethod
    def emit(text: str):
        """Writes the rendered report to stdout."""
        sys.stdout.write(text)
        sys.stdout.flush()

class Flow:
    """Main flow"""

    @staticmethod
    def initialize_system():
        """Parses arguments, loads settings, configures logging."""
        State.args = parse_args(State.argv)
        State.settings = load_settings(State.args.settings, **settings_overrides(State.args))
        State.logger = Utils.setup_logging(State.settings.log_level, State.settings.log_to_file)

    @staticmethod
    def run_command():
        """Runs the subcommand."""
        State.report = run_command(State.args, State.settings)
        return State.report.exit_code

    @staticmethod
    def write_output():
        """Renders the report in the requested format."""
        Utils.emit(State.report.render(output_format(State.args)))

class App:
    """Top-level control"""

    @staticmethod
    def main(argv=None):
        """Runs one command; returns the process exit code."""
        State.argv = argv
        logger = logging.getLogger(__name__)
        try:
            # 1. Arguments, settings, logging
            Flow.initialize_system()

            # 2. Command
            exit_code = Flow.run_command()

            # 3. Output
            Flow.write_output()
            return exit_code

        except WorkbenchError as e:
            logger.error(f"{type(e).__name__}: {e}")
            print(f"{APP_NAME}: error: {e}", file=sys.stderr)
            return EXIT_USAGE
        except KeyboardInterrupt:
            print("\nInterrupted.", file=sys.stderr)
            return 130

# =============================================================================
# MAIN EXECUTION
# =============================================================================

def main():
    """Entry point."""
    exit_code = App.main()
    sys.exit(exit_code)

if __name__ == "__main__":
    main()

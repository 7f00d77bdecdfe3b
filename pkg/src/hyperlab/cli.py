"Contains all entrypoints configured in `pyproject.toml`"

# copyright: B1 Systems GmbH <info@b1-systems.de>, 2021
# license:   GPLv3+, http://www.gnu.org/licenses/gpl-3.0.html
# author:    Tilman Lüttje <luettje@b1-systems.de>

from argparse import ArgumentParser

from hyperlab import __author__, __license__, __version__
from hyperlab.main import main, print_catalog


def hyperlab() -> None:
    exit(main())


def hyperlab_catalog() -> None:
    """
    Prints all available coordinate charts and contraction cases with a short
    description.

    Every chart lists the flat charts it contracts to, every negative case the
    reason why no limit exists.
    """
    parser = ArgumentParser(
        description=hyperlab_catalog.__doc__,
        epilog=f"v{__version__}, {__license__} @ {__author__}",
    )
    parser.add_argument(
        "kind",
        nargs="?",
        choices=["all", "charts", "cases"],
        default="all",
        help="Restrict the listing to charts or cases.",
    )
    parser.add_argument(
        "--json", action="store_true", help="Print the catalog as JSON instead."
    )
    args = parser.parse_args()
    print_catalog(args.kind, args.json)

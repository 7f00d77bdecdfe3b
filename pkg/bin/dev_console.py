#!/usr/bin/env python3

"""
Launches an IPython instance with the chart and case registries and a loaded
configuration.
"""
from argparse import ArgumentParser, FileType
from textwrap import wrap

from IPython import start_ipython
from pydantic import ValidationError

from hyperlab.chart_base import CHARTS_BY_ID, get_chart
from hyperlab.config import Config, load_config
from hyperlab.contraction import CASES_BY_ID, get_case, run_contraction


def main() -> int:

    parser = ArgumentParser(description=__doc__)

    parser.add_argument(
        "-c",
        "--config",
        help="Configuration file to use, built-in defaults otherwise.",
        type=FileType("r"),
    )
    parser.add_argument(
        "chart",
        nargs="?",
        default="H2/SPH",
        help="Chart id to preload as `chart`.",
    )
    args = parser.parse_args()

    try:
        config = load_config(args.config.read()) if args.config else Config()
    except ValidationError as exc:
        print(exc)
        return 1
    if args.chart not in CHARTS_BY_ID:
        print(f"Unknown chart `{args.chart}`. Aborting")
        return 1
    chart = get_chart(args.chart)
    for line in wrap(
        "`config`, `chart`, CHARTS_BY_ID, CASES_BY_ID, get_chart, get_case and run_contraction are available."
    ):
        print(line)
    print()
    start_ipython(
        argv=[],
        user_ns=dict(
            config=config,
            chart=chart,
            CHARTS_BY_ID=CHARTS_BY_ID,
            CASES_BY_ID=CASES_BY_ID,
            get_chart=get_chart,
            get_case=get_case,
            run_contraction=run_contraction,
        ),
    )

    return 0


if __name__ == "__main__":
    exit(main())

"""Characteristic forms, transgression forms and differential characters on
scenario bundles. The compiled core carries all operations; this package is a
thin re-export."""

try:
    from ._core import (  # type: ignore[attr-defined]
        __version__,
        characteristic_number,
        evaluate,
        holonomy_trace,
        list_scenarios,
        report_json,
        run_scenario,
    )
except ImportError:  # build-tree layout: the extension sits on sys.path
    from _core import (  # type: ignore[no-redef]
        __version__,
        characteristic_number,
        evaluate,
        holonomy_trace,
        list_scenarios,
        report_json,
        run_scenario,
    )

__all__ = [
    "__version__",
    "characteristic_number",
    "evaluate",
    "holonomy_trace",
    "list_scenarios",
    "report_json",
    "run_scenario",
]

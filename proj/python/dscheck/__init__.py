"""Numerical verification of the conformal invariants of regular space-like
hypersurfaces in the de Sitter space."""

from ._core import (
    DscError,
    Entry,
    __version__,
    convention,
    equivalence,
    family_ids,
    invariants_at,
    labeled_entries,
    make_entry,
    run,
    run_report_json,
)

__all__ = [
    "DscError",
    "Entry",
    "__version__",
    "convention",
    "equivalence",
    "family_ids",
    "invariants_at",
    "labeled_entries",
    "make_entry",
    "run",
    "run_report_json",
]

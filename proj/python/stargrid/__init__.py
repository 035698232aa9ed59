"""Star edge colorings of grids, cylinders and tori."""

from ._core import (
    BudgetExceeded,
    CatalogError,
    Coloring,
    FormatError,
    Grid,
    catalog_dir,
    certify,
    chi_star,
    check_inclusion,
    combine,
    count_colorings,
    digest,
    dumps,
    enumerate_cycle,
    extend,
    frobenius,
    grid,
    index,
    loads,
    render_dot,
    render_svg,
    restrict_to_path,
    solve,
    tile,
    transpose,
    verify,
    verify_partial,
)

__all__ = [
    "BudgetExceeded",
    "CatalogError",
    "Coloring",
    "FormatError",
    "Grid",
    "catalog_dir",
    "certify",
    "chi_star",
    "check_inclusion",
    "combine",
    "count_colorings",
    "digest",
    "dumps",
    "enumerate_cycle",
    "extend",
    "frobenius",
    "grid",
    "index",
    "loads",
    "render_dot",
    "render_svg",
    "restrict_to_path",
    "solve",
    "tile",
    "transpose",
    "verify",
    "verify_partial",
]

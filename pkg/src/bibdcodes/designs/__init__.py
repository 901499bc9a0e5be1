from .types import (
    Block,
    CyclicStructure,
    Design,
    DifferenceFamily,
    BibdReport,
    ResolutionReport,
    block_differences,
    expand_cdf_to_design,
    validate_difference_family,
    verify_bibd,
    verify_resolution,
)
from .families import (
    buratti_cdf,
    find_base_block_with_difference,
    netto_cdf,
    netto_dlog_to_index,
    netto_index_to_dlog,
    radical_df_search,
)
from .existence import (
    CodeParameters,
    ExistenceStatus,
    Status,
    cdf_exists,
    crcbibd_exists,
    ldpc_parameters,
    rbibd_existence_status,
)
from .resolution import find_cyclic_resolution, find_resolution
from .fileio import format_design, parse_design, read_design, write_design

__all__ = [
    "Block",
    "CyclicStructure",
    "Design",
    "DifferenceFamily",
    "BibdReport",
    "ResolutionReport",
    "block_differences",
    "expand_cdf_to_design",
    "validate_difference_family",
    "verify_bibd",
    "verify_resolution",
    "buratti_cdf",
    "find_base_block_with_difference",
    "netto_cdf",
    "netto_dlog_to_index",
    "netto_index_to_dlog",
    "radical_df_search",
    "CodeParameters",
    "ExistenceStatus",
    "Status",
    "cdf_exists",
    "crcbibd_exists",
    "ldpc_parameters",
    "rbibd_existence_status",
    "find_cyclic_resolution",
    "find_resolution",
    "format_design",
    "parse_design",
    "read_design",
    "write_design",
]

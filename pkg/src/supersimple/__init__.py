"""Super-simple directed designs: tables, verification, trade bounds, recursion."""

from .algebra import FiniteField, TdSpec, field_build, td_build
from .catalog import CatalogEntry, catalog_build, catalog_get, catalog_list
from .construct import (
    SHIPPED_RECIPES,
    Recipe,
    WeightAssignment,
    delete_points,
    fill_certificate,
    fill_groups,
    inflate_by_td,
    parse_recipe,
    run_recipe,
    shipped_recipe,
    weight_and_replace,
)
from .develop import develop, shift
from .errata import errata_rows, render_errata, suggest_repairs
from .errors import (
    AlignmentError,
    ArityMismatch,
    BlockTooSmall,
    DesignError,
    EntryOutOfRange,
    InvalidCertificate,
    KTooLarge,
    MissingFiller,
    MissingIngredient,
    NonIntegerCount,
    NotDeveloped,
    ParseError,
    RecipeError,
    SizeMismatch,
    StepVerificationFailed,
    TdNotVerified,
    UnknownId,
    UnsupportedOrder,
)
from .model import (
    DesignParams,
    DirectedDesign,
    FillSpec,
    GroupedDesign,
    GroupType,
    InflationSpec,
    admissible_v,
    expected_block_count_dd,
    expected_block_count_dgdd,
    expected_block_count_gdd,
    parse_design_file,
    write_design_file,
)
from .trades import (
    BoundCertificate,
    CyclicalTrade,
    TradePair,
    certify_half,
    find_block_trades,
    generic_bound,
    is_volume2_trade,
    orbit_trade_scan,
    parse_certificate,
    validate_certificate,
)
from .verify import (
    VerificationReport,
    check_dgdd_balance,
    check_directed_balance,
    check_simple,
    check_super_simple,
    check_td,
    full_report,
)

__version__ = "0.1.0"

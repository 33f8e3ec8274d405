"""Dynamic k-core maintenance: incremental core-number updates for evolving
graphs, a linear-time static decomposition, and a benchmark harness."""

from .graph import (
    DuplicateEdgeError,
    Graph,
    GraphError,
    InvariantError,
    LoadSummary,
    MissingEdgeError,
    ParseError,
    SelfLoopError,
    UnknownNodeError,
    dump_edge_list,
    load_edge_list,
    validate,
)
from .harness import (
    BenchReport,
    TrialConfig,
    breakeven,
    build_stream,
    generate_power_law,
    report_to_csv,
    run_trial,
)
from .maintenance import (
    UpdateReport,
    UpdateWorkspace,
    color,
    delete_and_maintain,
    insert_and_maintain,
    recolor_delete,
    recolor_insert,
    remove_node_and_maintain,
    update_delete,
    update_insert,
    x_prune_color,
    xy_prune_color,
    y_prune_color,
)
from .static_core import (
    bounds_all,
    brute_force_core,
    compute_x,
    compute_y,
    decompose,
    dump_cores,
)

__version__ = "0.1.0"

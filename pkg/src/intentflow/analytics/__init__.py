"""Action classification, annotation, summaries, and log export."""

from intentflow.analytics.actions import (
    NON_ACTION_EVENTS,
    ActionSummary,
    KindStats,
    annotate,
    classify_widget_action,
    summarize,
)
from intentflow.analytics.export import (
    CSV_COLUMNS,
    export_actions_csv,
    export_actions_json,
    import_actions_csv,
    import_actions_json,
)

__all__ = [name for name in dir() if not name.startswith("_")]

"""Perception graphs from review text: adjective/verb -> noun networks,
noun co-occurrence, downsizing and directed-modularity communities."""

__version__ = "0.1.0"

from .document import POS, Document, Token  # noqa: E402
from .graph import ConativeFilter, PerceptionGraph, build_graph  # noqa: E402
from .community import Partition, detect_communities, directed_modularity  # noqa: E402
from .pipeline import PipelineConfig, process_text, run_pipeline  # noqa: E402

__all__ = [
    "POS", "Document", "Token", "ConativeFilter", "PerceptionGraph", "build_graph",
    "Partition", "detect_communities", "directed_modularity", "PipelineConfig",
    "process_text", "run_pipeline",
]

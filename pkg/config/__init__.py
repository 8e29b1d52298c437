from .config import (
    initialize,
    get_logger,
    get_config,
    update_config,
    get_group_config,
    get_graph_config,
    get_numerics_config
)

__all__ = [
    "initialize",
    "get_logger",
    "get_config",
    "update_config",
    "get_group_config",
    "get_graph_config",
    "get_numerics_config"
]

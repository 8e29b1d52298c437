import os
import json
import logging
from dotenv import load_dotenv

__default__config = dict(
    # Default configuration settings
    logging_level=logging.INFO,  # Default logging level
    server_port=8090,            # Default server port
    batch_concurrency=4          # Spec files analysed concurrently in batch mode
)

__default_group_config = {
    # Finite group computations
    "automorphism_bound": 16,  # Largest group for brute-force automorphisms
    "equivalence_bound": 8,  # Largest matrix for Hadamard equivalence search
    "max_group_order": 4096,  # Refuse to tabulate larger groups
    "associativity_exhaustive_bound": 512,
    "associativity_samples": 10000,
    "random_seed": 0
}

__default_graph_config = {
    # Principal graph construction
    "default_radius": 2  # Ball radius for infinite-depth truncation
}

__default_numerics_config = {
    # Floating point verification layer
    "construction_tolerance": 1e-9,
    "rank_tolerance": 1e-7,
    "guard_band": 10.0,  # Singular values within this factor of the tolerance are ambiguous
    "memory_guard_entries": 5e7,
    "condition_limit": 1e12,
    "max_level1_size": 16,
    "max_level2_size": 6,
    "closure_samples": 16  # Random product pairs checked per constructed algebra
}


GROUP_CONFIGURATION = "GROUP_CONFIGURATION"
GRAPH_CONFIGURATION = "GRAPH_CONFIGURATION"
NUMERICS_CONFIGURATION = "NUMERICS_CONFIGURATION"

__sub_configurations = {
    GROUP_CONFIGURATION: __default_group_config,
    GRAPH_CONFIGURATION: __default_graph_config,
    NUMERICS_CONFIGURATION: __default_numerics_config,
}

# Library calls work before initialize() has been run
for _name, _defaults in __sub_configurations.items():
    __default__config[_name] = dict(_defaults)


def initialize():
    """
    Load default configuration and initalize logging
    This function should be called at the start of the application
    to ensure that the configuration is set up and logging is ready.
    """
    # Load environment variables
    load_dotenv()

    # Setup logging
    log_level = get_log_level()
    __default__config["logging_level"] = log_level
    logging.basicConfig(
        level=log_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler()  # Log to console
        ]
    )

    # Each sub configuration may be overridden by a JSON document
    for name, defaults in __sub_configurations.items():
        overrides = json.loads(os.getenv(name, json.dumps({})))
        merged = dict(defaults)
        merged.update(overrides)
        __default__config[name] = merged

    port = os.getenv("SERVER_PORT")
    if port:
        __default__config["server_port"] = int(port)

    logging.info(f"Configuration {__default__config} initialized successfully.")


def get_log_level() -> int:
    """
    Get the logging level from environment variable or default to INFO
    Returns:
        int: Logging level constant from logging module
    """
    log_level = os.getenv("LOGGING_LEVEL", "INFO").upper()
    if log_level == "DEBUG":
        return logging.DEBUG
    elif log_level == "WARNING":
        return logging.WARNING
    elif log_level == "ERROR":
        return logging.ERROR
    return logging.INFO


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance with the specified name
    Args:
        name (str): Name of the logger
    Returns:
        logging.Logger: Logger instance
    """
    if not name:
        raise ValueError("Logger name cannot be empty")

    return logging.getLogger(name)


def get_config() -> dict:
    """
    Get the default configuration settings
    Returns:
        dict: A copy of the default configuration dictionary
    """
    return __default__config.copy()


def update_config(new_config: dict):
    """
    Update the default configuration with new settings
    Args:
        new_config (dict): Dictionary containing new configuration settings
    """
    __default__config.update(new_config)
    logging.info(f"Configuration updated: {__default__config}")


def _sub_config(name: str) -> dict:
    merged = dict(__sub_configurations[name])
    merged.update(__default__config.get(name) or {})
    return merged


def get_group_config() -> dict:
    """
    Get the finite group settings (automorphism and equivalence bounds,
    group order refusal limit, associativity checking)
    Returns:
        dict: Group configuration merged over the defaults
    """
    return _sub_config(GROUP_CONFIGURATION)


def get_graph_config() -> dict:
    """
    Get the principal graph settings
    Returns:
        dict: Graph configuration merged over the defaults
    """
    return _sub_config(GRAPH_CONFIGURATION)


def get_numerics_config() -> dict:
    """
    Get the tolerances and size guards used by the numerical layer
    Returns:
        dict: Numerics configuration merged over the defaults
    """
    return _sub_config(NUMERICS_CONFIGURATION)

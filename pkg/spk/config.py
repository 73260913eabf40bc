"""Runtime configuration read from the environment (and an optional .env file)."""

import logging
import os

from dotenv import load_dotenv

load_dotenv()

DEFAULT_BUDGET = 1_000_000
DEFAULT_MAX_WEAKENINGS = 2
DEFAULT_MAX_CONTRACTIONS = 2
DEFAULT_NET_CANDIDATES = 200_000


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw.replace("_", ""))
    except ValueError:
        logging.getLogger(__name__).warning(f"❌ Ignoring non-integer {name}={raw!r}")
        return default


def node_budget() -> int:
    """Node budget for a single sequent search (``SPK_BUDGET``)."""
    return _int_env("SPK_BUDGET", DEFAULT_BUDGET)


def max_weakenings() -> int:
    return _int_env("SPK_MAX_WEAKENINGS", DEFAULT_MAX_WEAKENINGS)


def max_contractions() -> int:
    return _int_env("SPK_MAX_CONTRACTIONS", DEFAULT_MAX_CONTRACTIONS)


def net_candidates() -> int:
    """Cap on classical candidate structures examined by net synthesis."""
    return _int_env("SPK_NET_CANDIDATES", DEFAULT_NET_CANDIDATES)


def log_level() -> str:
    return os.getenv("SPK_LOG_LEVEL", "WARNING").upper()

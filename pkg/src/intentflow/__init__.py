"""IntentFlow: structured intent communication for LLM-assisted writing."""

__version__ = "0.1.0"

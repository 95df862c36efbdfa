from .settings import Config, settings

__all__ = ["Config", "settings"]

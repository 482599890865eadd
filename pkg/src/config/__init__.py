from .settings import APP_VERSION, Settings

__all__ = ["APP_VERSION", "Settings"]

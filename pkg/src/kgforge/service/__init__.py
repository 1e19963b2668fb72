from .app import ServiceConfig, create_app
from .catalog import CatalogEntry, ProfileAspect, load_catalog, load_profiles

__all__ = [
    "ServiceConfig",
    "create_app",
    "CatalogEntry",
    "ProfileAspect",
    "load_catalog",
    "load_profiles",
]

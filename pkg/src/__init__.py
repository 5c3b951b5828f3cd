# Disk Pattern Workbench
# Main source package

from .core.app_config import get_version, get_app_name, get_app_author

__version__ = get_version()
__author__ = get_app_author()
__app_name__ = get_app_name()

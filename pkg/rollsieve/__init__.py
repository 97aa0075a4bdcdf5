# rollsieve - Incremental prime sieves with work accounting
try:
    from importlib.metadata import version as _version
    __version__ = _version("rollsieve")
except Exception:
    __version__ = "0.1.0"

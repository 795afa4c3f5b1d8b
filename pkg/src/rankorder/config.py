"""Layered configuration.

A :class:`ConfigSource` merges plain dicts (defaults, a TOML file, command line
flags) into one, and structures a section of it into an attrs class.

    >>> @attr.s(auto_attribs=True)
    ... class FooConfig:
    ...     bar: float
    >>>
    >>> source = ConfigSource({'foo': {'bar': 1.23}})
    >>> source.load(FooConfig, "foo")
    FooConfig(bar=1.23)
"""

import enum
import typing

import attr
import cattr
import structlog
import toml

from . import util
from .exc import RankOrderError, UsageError

logger = structlog.get_logger()


class ConfigSource(dict):
    """Config dict, with loadable sections."""

    def __init__(self, *sources):
        super().__init__()
        util.merge_dict(*sources, dest=self)

    @classmethod
    def from_file(cls, path, *sources) -> "ConfigSource":
        try:
            loaded = toml.load(path)
        except (OSError, toml.TomlDecodeError) as ex:
            raise UsageError(f"Cannot read config file {path}: {ex}") from ex
        logger.debug("Loaded config", path=str(path))
        return cls(loaded, *sources)

    def merge(self, *sources):
        util.merge_dict(*sources, dest=self)

    def load(self, config_cls, name=None):
        if name is None:
            name = getattr(config_cls, "__rankorder_config_section__", None)
        values = self if name is None else self.get(name, {})
        try:
            return converter.structure(dict(values), config_cls)
        except Exception as ex:
            raise UsageError(f"Invalid `{name}` configuration: {ex}") from ex


class ConfigError(RankOrderError):
    """A config section is declared twice."""


skip_section = type.__new__(
    type, "skip_section", (object,), {"__repr__": lambda self: self.__class__.__name__}
)()


class Config:
    __rankorder_config_section__: typing.Optional[str] = None
    __rankorder_config_sections__: typing.Dict[str, type] = {}

    def __init_subclass__(cls, *, section: str = skip_section, **_):
        if section is skip_section:
            return
        if section in cls.__rankorder_config_sections__:
            raise ConfigError(
                f"Config section `{section}` already defined!",
                cls.__rankorder_config_sections__,
                cls,
            )
        cls.__rankorder_config_section__ = section
        cls.__rankorder_config_sections__[section] = cls


class ZeroPolicy(str, enum.Enum):
    REJECT = "reject"
    DROP = "drop"


class IngestMode(str, enum.Enum):
    RAW_VALUES = "raw-values"
    PRE_RANKED = "pre-ranked"


def _check_delimiter(instance, attribute, value):
    if len(value) != 1 or not (value.isprintable() or value == "\t"):
        raise UsageError(f"Delimiter must be a single printable character: {value!r}")


@attr.s(auto_attribs=True, frozen=True, kw_only=True)
class IngestOptions(Config, section="ingest"):
    """How tabular input is turned into a ranked series."""

    mode: IngestMode = IngestMode.RAW_VALUES
    zero_policy: ZeroPolicy = ZeroPolicy.REJECT
    delimiter: str = attr.ib(default=",", validator=_check_delimiter)


@attr.s(auto_attribs=True, frozen=True, kw_only=True)
class FitConfig(Config, section="fit"):
    rho_tolerance: float = 1e-6


@attr.s(auto_attribs=True, frozen=True, kw_only=True)
class LogSection(Config, section="log"):
    level: str = "WARNING"
    quiet: bool = False


converter = cattr.Converter()


def _to_bool(val, type):
    """
    Convert *val* to a bool if it's not a bool in the first place.
    """
    if isinstance(val, type):
        return val
    elif isinstance(val, str):
        val = val.strip().lower()
        if val in ("1", "true", "yes", "on"):
            return True

    return False


converter.register_structure_hook(bool, _to_bool)

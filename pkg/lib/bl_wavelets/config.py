"""
Numeric tolerances and limits for wavelet construction and verification.

Values resolve in order: explicit overrides, the item's environment variable (if any), the JSON config file, and
finally the item's default.

:author: Doug Skrypa
"""

from __future__ import annotations

import json
import logging
import os
from inspect import isclass
from pathlib import Path
from typing import TYPE_CHECKING, Any, Type, Union, Optional, Callable, TypeVar, Generic, Mapping

from .__version__ import __title__

if TYPE_CHECKING:
    from .typing import PathLike

__all__ = ['WaveletConfig', 'ConfigItem', 'config']
log = logging.getLogger(__name__)

DEFAULT_DIR = '~/.config'
DEFAULT_NAME = f'{__title__}_config.json'
DEFAULT_PATH = f'{DEFAULT_DIR}/{__title__}/{DEFAULT_NAME}'
PATH_ENV_VAR = 'BLW_CONFIG'

T = TypeVar('T')


class ConfigItem(Generic[T]):
    __slots__ = ('name', 'default', 'type', 'env_var', 'tolerance')

    def __init__(
        self, default: T, type: Callable[[Any], T] = None, env_var: str = None, tolerance: bool = False  # noqa
    ):
        self.default = default
        self.type = type
        self.env_var = env_var
        self.tolerance = tolerance

    def __set_name__(self, owner: Type[WaveletConfig], name: str):
        self.name = name

    def __repr__(self) -> str:
        name, default, env_var = self.name, self.default, self.env_var
        return f'<{self.__class__.__name__}[{name=}, {default=}, type={self.type!r}, {env_var=}]>'

    def get(self, instance: WaveletConfig) -> T:
        if self.name not in instance.overrides and self.env_var and (raw := os.environ.get(self.env_var)):
            try:
                return self.type(raw) if self.type else raw
            except (TypeError, ValueError):
                log.warning(f'Ignoring invalid value for {self.env_var}={raw!r}')
        try:
            return instance._get(self.name, type=self.type)
        except KeyError:
            return self.default

    def __get__(self, instance: Optional[WaveletConfig], owner: Type[WaveletConfig]) -> Union[T, ConfigItem]:
        if instance is None:
            return self
        return self.get(instance)

    def __set__(self, instance: WaveletConfig, value: T):
        if self.get(instance) != value:
            instance.overrides[self.name] = value

    def __delete__(self, instance: WaveletConfig):
        instance.overrides.pop(self.name, None)


class WaveletConfig:
    # region Construction
    epsilon = ConfigItem(1e-12, float)
    prune_ratio = ConfigItem(1e-2, float)
    max_bspline_order = ConfigItem(11, int)
    max_psi_order = ConfigItem(4, int, env_var='BLW_MAX_N')
    max_level = ConfigItem(8, int)
    lattice_terms = ConfigItem(10_000, int)
    sample_step = ConfigItem(1 / 64, float)
    figure_mass = ConfigItem(0.9999, float)
    # endregion

    # region Roots
    root_step_tol = ConfigItem(1e-13, float, tolerance=True)
    root_residual_tol = ConfigItem(1e-11, float, tolerance=True)
    root_simplicity_tol = ConfigItem(1e-9, float, tolerance=True)
    near_unit_root = ConfigItem(1e-9, float, tolerance=True)
    # endregion

    # region Verification
    continuity_tol = ConfigItem(1e-10, float, tolerance=True)
    symmetry_tol = ConfigItem(1e-12, float, tolerance=True)
    derivative_tol = ConfigItem(1e-12, float, tolerance=True)
    phi_residual_factor = ConfigItem(10.0, float, tolerance=True)
    psi_tolerance = ConfigItem(1e-8, float, tolerance=True)
    dym_tolerance = ConfigItem(1e-11, float, tolerance=True)
    dymm_tolerance = ConfigItem(1e-10, float, tolerance=True)
    gram_tolerance = ConfigItem(1e-6, float, tolerance=True)
    moment_tolerance = ConfigItem(1e-7, float, tolerance=True)
    localisation_tolerance = ConfigItem(1e-9, float, tolerance=True)
    bound_slack = ConfigItem(1e-9, float, tolerance=True)
    # endregion

    def __init__(self, path: PathLike = None, overrides: Mapping[str, Any] = None):
        self._file_data = None
        self.path = normalize_path(path)
        self.overrides = dict(overrides) if overrides else {}

    def __repr__(self) -> str:
        return f'<{self.__class__.__name__}({self.path.as_posix()!r})[overrides={self.overrides!r}]>'

    @classmethod
    def items(cls) -> dict[str, ConfigItem]:
        return {k: v for k, v in vars(cls).items() if isinstance(v, ConfigItem)}

    # region Data

    @property
    def file_data(self) -> dict[str, Any]:
        if self._file_data is None:
            if self.path.is_file():
                log.debug(f'Loading config from {self.path}')
                with self.path.open('r', encoding='utf-8') as f:
                    self._file_data = json.load(f)
            else:
                self._file_data = {}
        return self._file_data

    def _get(self, key: str, type: Callable[[Any], T] = None) -> T:  # noqa
        try:
            value = self.overrides[key]
        except KeyError:
            value = self.file_data[key]

        if type is None or (isclass(type) and isinstance(value, type)):
            return value
        return type(value)

    def __getitem__(self, key: str):
        try:
            item = self.items()[key]
        except KeyError:
            raise KeyError(key) from None
        return item.get(self)

    # endregion

    def overridden(self, **overrides) -> WaveletConfig:
        """Return a copy of this config that uses the given values in place of any configured ones."""
        unknown = set(overrides).difference(self.items())
        if unknown:
            raise KeyError(f'Unknown config items: {", ".join(sorted(unknown))}')
        clone = self.__class__(self.path, {**self.overrides, **overrides})
        clone._file_data = self._file_data
        return clone

    def tolerances(self) -> dict[str, Any]:
        """The verification block embedded in every report."""
        return {name: item.get(self) for name, item in self.items().items() if item.tolerance}

    def as_dict(self) -> dict[str, Any]:
        return {name: item.get(self) for name, item in self.items().items()}

    def save(self, path: PathLike = None):
        path = normalize_path(path) if path else self.path
        log.debug(f'Saving config to {path}')
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open('w', encoding='utf-8', newline='\n') as f:
            json.dump({**self.file_data, **self.overrides}, f, indent=4, sort_keys=True)


def normalize_path(path: Optional[PathLike]) -> Path:
    if path is None:
        path = os.environ.get(PATH_ENV_VAR) or DEFAULT_PATH
    path = Path(path).expanduser()
    if path.exists() and path.is_dir():
        return path.joinpath(DEFAULT_NAME)
    return path


config = WaveletConfig()

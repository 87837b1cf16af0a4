# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""Registry of named verification checks exposed through ``floquet-iso verify``."""

from __future__ import annotations

import argparse
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Optional

from floquet_iso_core.config import SpectralConfig

from .errors import VerificationNotFound
from .models import VerificationReport

logger = logging.getLogger(__name__)

ENTRY_POINT_GROUP = "floquet_iso.verifications"

Runner = Callable[[argparse.Namespace, SpectralConfig], VerificationReport]
Binder = Callable[[argparse.ArgumentParser], None]


@dataclass(frozen=True)
class VerificationCheck:
    """A check: its CLI argument binder and the runner that turns parsed arguments into a report."""

    name: str
    runner: Runner
    binder: Optional[Binder] = None
    description: str = ""

    def bind(self, parser: argparse.ArgumentParser) -> None:
        if self.binder:
            self.binder(parser)


class VerificationRegistry:
    """Central registry for verification checks."""

    _checks: Dict[str, VerificationCheck] = {}
    _initialized: bool = False

    @classmethod
    def register(
        cls,
        name: str,
        runner: Runner,
        binder: Optional[Binder] = None,
        description: str = "",
    ):
        """Register (or replace) a check under ``name``."""
        key = name.lower()
        cls._checks[key] = VerificationCheck(name=key, runner=runner, binder=binder, description=description)
        logger.debug(f"Registered verification check: {key}")

    @classmethod
    def get(cls, name: str) -> VerificationCheck:
        key = name.lower()
        if key not in cls._checks:
            cls.discover_checks()
        if key not in cls._checks:
            raise VerificationNotFound(
                f"Verification check '{name}' not found. Available checks: {sorted(cls._checks)}."
            )
        return cls._checks[key]

    @classmethod
    def discover_checks(cls):
        """Load every check package advertised under the entry point group."""
        if cls._initialized:
            return
        cls._initialized = True

        try:
            from importlib.metadata import entry_points

            for ep in entry_points(group=ENTRY_POINT_GROUP):
                try:
                    register_func = ep.load()
                    register_func()
                    logger.info(f"Discovered verification checks: {ep.name}")
                except Exception as e:
                    logger.warning(f"Failed to load verification checks {ep.name}: {e}")
        except Exception as e:
            logger.warning(f"Entry points discovery failed: {e}")

    @classmethod
    def list_checks(cls) -> Dict[str, VerificationCheck]:
        """All checks, discovering plugins first."""
        cls.discover_checks()
        return dict(sorted(cls._checks.items()))

    @classmethod
    def is_registered(cls, name: str) -> bool:
        return name.lower() in cls._checks

    @classmethod
    def unregister(cls, name: str) -> None:
        cls._checks.pop(name.lower(), None)


# Global instance
verification_registry = VerificationRegistry()

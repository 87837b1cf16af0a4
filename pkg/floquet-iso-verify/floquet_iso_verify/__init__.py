# Copyright 2025-present DatusAI, Inc.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""floquet-iso-verify: verification harness and command-line front end."""

__version__ = "0.1.0"


def register():
    """Register the built-in verification checks with the registry."""
    from .checks import BUILTIN_CHECKS
    from .registry import VerificationRegistry

    for name, (runner, binder, description) in BUILTIN_CHECKS.items():
        VerificationRegistry.register(name, runner, binder, description)

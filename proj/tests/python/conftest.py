# Copyright 2026 The stablewalk Authors
# SPDX-License-Identifier: Apache-2.0
import os
import sys

# ctest points this at the freshly built package; an editable install's
# redirecting finder would otherwise shadow it.
_build_dir = os.environ.get("STABLEWALK_PYTHON_DIR")
if _build_dir:
    sys.meta_path[:] = [f for f in sys.meta_path if "Redirecting" not in type(f).__name__]
    sys.path.insert(0, _build_dir)
    for name in [m for m in sys.modules if m == "stablewalk" or m.startswith("stablewalk.")]:
        del sys.modules[name]

import os
import sys

# The CMake test target points these at the build tree; a pip install works
# without them.
for var in ("PLSMODE_MODULE_DIR", "PLSMODE_PY_PACKAGE"):
    path = os.environ.get(var)
    if path and path not in sys.path:
        sys.path.insert(0, path)

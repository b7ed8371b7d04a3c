#!/usr/bin/env python3
"""Run every bundled scenario and print a one-line summary per scenario.

Equivalent to `vlab scenario --all` but with compact output; exits nonzero
if any scenario fails.
"""

import sys
import time

from vlab.engine import EngineContext
from vlab.scenarios import SCENARIOS


def main() -> int:
    ctx = EngineContext.bundled()
    failures = 0
    for scenario in SCENARIOS:
        start = time.monotonic()
        outcome = scenario.run(ctx)
        elapsed = time.monotonic() - start
        ok = outcome.get("ok", False)
        status = "ok" if ok else "FAIL"
        print(f"{scenario.name:24s} {status:4s} {elapsed:7.2f}s  "
              f"{scenario.description}")
        if not ok:
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

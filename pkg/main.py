"""
ctlcalc - interpreters, macro-translations and differential testing
for one-shot control calculi.
"""

from src.cli import main

# ============================================================================
# MAIN
# ============================================================================

if __name__ == "__main__":
    raise SystemExit(main())

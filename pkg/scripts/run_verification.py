#!/usr/bin/env python3
"""Run the full verification battery (oracle equivalence, optimizer recovery,
variant adjudication) and write the adjudication table next to this script's
parent directory."""

import pathlib
import sys

from weakamp.cli import main

ADJUDICATION = pathlib.Path(__file__).resolve().parent.parent / "adjudication.csv"

if __name__ == "__main__":
    sys.exit(main(["verify", "--seed", "7", "--samples", "1000",
                   "--adjudication-csv", str(ADJUDICATION)]))

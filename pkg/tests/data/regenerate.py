"""Rewrite expected_reports.json from a fresh scan.

Only run this after a scan has been checked against the independent
counts in test_search.py; the file is the regression baseline.
"""

import json
from pathlib import Path

from singspace.search import SUPPORTED, verify_dimension_bound, verify_equality_classification


def main():
    out = {}
    for n, p, q in sorted(SUPPORTED):
        key = f"{n},{p},{q}"
        out[key] = {
            "bound": verify_dimension_bound(n, p, q).to_dict(),
            "equality": verify_equality_classification(n, p, q).to_dict(),
        }
    path = Path(__file__).with_name("expected_reports.json")
    path.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()

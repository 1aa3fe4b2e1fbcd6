"""Regenerate the frozen catalogue of connected loopless cubic multigraphs.

Writes src/compalg/data/cubic_catalogue.json with one entry per vertex count.
The enumeration at ten vertices takes a while (tens of minutes); the test
suite never reruns it, because completeness of the frozen file is certified
at load time by double counting (see compalg.cubic.certify_catalogue).
"""

import json
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from compalg.cubic import certify_catalogue, connected_cubic_catalogue  # noqa: E402

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "compalg" / "data"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    payload = {}
    for n in (2, 4, 6, 8, 10):
        t0 = time.time()
        cat = connected_cubic_catalogue(n)
        certify_catalogue(cat, n)
        payload[str(n)] = [d.to_json() for d in cat]
        print(f"n={n}: {len(cat)} classes in {time.time() - t0:.1f}s", flush=True)
    path = OUT / "cubic_catalogue.json"
    with open(path, "w") as fh:
        json.dump(payload, fh, separators=(",", ":"), sort_keys=True)
        fh.write("\n")
    print(f"wrote {path}")


if __name__ == "__main__":
    main()

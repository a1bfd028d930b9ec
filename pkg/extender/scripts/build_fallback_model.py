"""Build the deterministic fallback SavedModel for offline use."""

from __future__ import annotations

import argparse

from gan_extender.fallback import build_fallback_model


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="models/fallback")
    parser.add_argument("--resolution", type=int, default=257)
    parser.add_argument("--fraction", type=float, default=0.25)
    args = parser.parse_args()
    path = build_fallback_model(args.out, resolution=args.resolution, fraction=args.fraction)
    print(f"wrote fallback SavedModel to {path}")


if __name__ == "__main__":
    main()

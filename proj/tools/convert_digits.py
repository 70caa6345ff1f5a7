#!/usr/bin/env python3
"""Write a subset of the scikit-learn 8x8 digits set in the photonrc binary layout."""

import argparse
import struct
from pathlib import Path

import numpy as np
from sklearn.datasets import load_digits


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--classes", type=int, nargs="+", default=[0, 1, 2])
    parser.add_argument("--per-class", type=int, default=60)
    parser.add_argument("--out", type=Path, default=Path("tests/data"))
    parser.add_argument("--prefix", default="digits")
    args = parser.parse_args()

    digits = load_digits()
    images, labels = [], []
    for new_label, cls in enumerate(args.classes):
        idx = np.flatnonzero(digits.target == cls)[: args.per_class]
        images.append(digits.images[idx])
        labels.extend([new_label] * len(idx))
    pixels = np.concatenate(images)
    pixels = np.round(pixels * (255.0 / 16.0)).astype(np.uint8)

    args.out.mkdir(parents=True, exist_ok=True)
    count, height, width = pixels.shape
    with open(args.out / f"{args.prefix}_images.bin", "wb") as f:
        f.write(struct.pack("<4I", count, height, width, 1))
        f.write(pixels.tobytes())
    with open(args.out / f"{args.prefix}_labels.bin", "wb") as f:
        f.write(struct.pack("<I", count))
        f.write(bytes(labels))


if __name__ == "__main__":
    main()

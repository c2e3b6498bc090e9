#!/usr/bin/env python3
"""Write a uniform random simple digraph as an edge list."""
import argparse
import random
import sys


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nodes", type=int, default=1751)
    parser.add_argument("--edges", type=int, default=1757)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="-", help="output path, '-' for stdout")
    args = parser.parse_args()
    if args.edges > args.nodes * (args.nodes - 1):
        parser.error("too many edges for a simple digraph")

    rng = random.Random(args.seed)
    edges = set()
    while len(edges) < args.edges:
        u = rng.randrange(args.nodes)
        v = rng.randrange(args.nodes)
        if u != v:
            edges.add((u, v))
    text = "\n".join(f"{u} {v}" for u, v in sorted(edges)) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())

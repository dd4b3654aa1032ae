#!/usr/bin/env python3
"""Regenerates the bundled benchmark matrices (data/*.mtx).

Every matrix is a row-net hypergraph: rows are hyperedges, columns are
vertices, stored as Matrix Market coordinate pattern. Generation is fully
seeded, so rerunning this script reproduces the committed files byte for
byte. Vertex counts are multiples of 8 so k in {2,4,8} always divides n.
"""

import random
import sys
from pathlib import Path


def write_mtx(path: Path, n_vertices: int, edges: list[list[int]]) -> None:
    covered = set()
    for e in edges:
        assert len(e) == len(set(e)) >= 2, f"bad edge {e} in {path.name}"
        covered.update(e)
    assert covered == set(range(n_vertices)), f"{path.name}: uncovered vertices"
    nnz = sum(len(e) for e in edges)
    with path.open("w") as f:
        f.write("%%MatrixMarket matrix coordinate pattern general\n")
        f.write(f"% generated by tools/make_data.py\n")
        f.write(f"{len(edges)} {n_vertices} {nnz}\n")
        for r, e in enumerate(edges, start=1):
            for c in e:
                f.write(f"{r} {c + 1}\n")


def cover_fixup(n: int, edges: list[list[int]], rng: random.Random) -> None:
    covered = {v for e in edges for v in e}
    for v in range(n):
        if v not in covered:
            other = rng.randrange(n - 1)
            if other >= v:
                other += 1
            edges.append(sorted([v, other]))
            covered.add(v)
            covered.add(other)


def grid2d(nx: int, ny: int) -> tuple[int, list[list[int]]]:
    vid = lambda x, y: x + nx * y
    edges = []
    for y in range(ny):
        for x in range(nx):
            if x + 1 < nx:
                edges.append([vid(x, y), vid(x + 1, y)])
            if y + 1 < ny:
                edges.append([vid(x, y), vid(x, y + 1)])
    return nx * ny, edges


def grid3d(nx: int, ny: int, nz: int) -> tuple[int, list[list[int]]]:
    vid = lambda x, y, z: x + nx * (y + ny * z)
    edges = []
    for z in range(nz):
        for y in range(ny):
            for x in range(nx):
                if x + 1 < nx:
                    edges.append([vid(x, y, z), vid(x + 1, y, z)])
                if y + 1 < ny:
                    edges.append([vid(x, y, z), vid(x, y + 1, z)])
                if z + 1 < nz:
                    edges.append([vid(x, y, z), vid(x, y, z + 1)])
    return nx * ny * nz, edges


def path(n: int) -> tuple[int, list[list[int]]]:
    return n, [[i, i + 1] for i in range(n - 1)]


def cycle(n: int) -> tuple[int, list[list[int]]]:
    return n, [[i, (i + 1) % n] for i in range(n)]


def clusters_bridge(n_clusters: int, size: int) -> tuple[int, list[list[int]]]:
    edges = []
    for c in range(n_clusters):
        base = c * size
        edges.append(list(range(base, base + size // 2)))
        edges.append(list(range(base + size // 2, base + size)))
        edges.append(list(range(base + size // 4, base + 3 * size // 4)))
        for i in range(size):
            edges.append(sorted([base + i, base + (i + 1) % size]))
    for c in range(n_clusters - 1):
        edges.append([c * size + size - 1, (c + 1) * size])
    return n_clusters * size, edges


def randnet(n: int, n_edges: int, max_pins: int, seed: int) -> tuple[int, list[list[int]]]:
    rng = random.Random(seed)
    edges = []
    for _ in range(n_edges):
        s = rng.randint(2, max_pins)
        edges.append(sorted(rng.sample(range(n), s)))
    cover_fixup(n, edges, rng)
    return n, edges


def bipartite_blocks(half: int, seed: int) -> tuple[int, list[list[int]]]:
    rng = random.Random(seed)
    edges = []
    for base in (0, half):
        for i in range(half):
            edges.append(sorted([base + i, base + (i + 1) % half]))
        for _ in range(half):
            edges.append(sorted(base + v for v in rng.sample(range(half), 3)))
    for _ in range(4):
        edges.append(sorted([rng.randrange(half), half + rng.randrange(half)]))
    return 2 * half, edges


def banded(n: int, band: int) -> tuple[int, list[list[int]]]:
    return n, [list(range(i, i + band)) for i in range(n - band + 1)]


def star_mesh(n_hubs: int, leaves_per_hub: int) -> tuple[int, list[list[int]]]:
    n = n_hubs * (1 + leaves_per_hub)
    leaf = lambda h, i: n_hubs + h * leaves_per_hub + i
    edges = []
    for h in range(n_hubs):
        edges.append([h] + [leaf(h, i) for i in range(leaves_per_hub)])
        for i in range(leaves_per_hub):
            edges.append(sorted([leaf(h, i), leaf(h, (i + 1) % leaves_per_hub)]))
        edges.append(sorted([h, (h + 1) % n_hubs]))
    for h in range(n_hubs - 1):
        edges.append(sorted([leaf(h, 0), leaf(h + 1, 0)]))
    return n, edges


def kite(blob: int, tail: int, seed: int) -> tuple[int, list[list[int]]]:
    rng = random.Random(seed)
    edges = []
    for _ in range(2 * blob):
        edges.append(sorted(rng.sample(range(blob), 3)))
    cover_fixup(blob, edges, rng)
    for i in range(tail):
        a = blob + i - 1 if i > 0 else blob - 1
        edges.append(sorted([a, blob + i]))
    return blob + tail, edges


def main() -> None:
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data")
    out_dir.mkdir(parents=True, exist_ok=True)
    suite = {
        "grid2d_8x8": grid2d(8, 8),
        "grid2d_8x16": grid2d(8, 16),
        "grid3d_4x4x8": grid3d(4, 4, 8),
        "path_120": path(120),
        "cycle_96": cycle(96),
        "clusters_bridge_40": clusters_bridge(5, 8),
        "randnet_104": randnet(104, 160, 6, seed=11),
        "randnet_160": randnet(160, 240, 5, seed=12),
        "bipartite_blocks_80": bipartite_blocks(40, seed=13),
        "banded_200": banded(200, 4),
        "star_mesh_56": star_mesh(8, 6),
        "kite_144": kite(96, 48, seed=14),
    }
    for name, (n, edges) in suite.items():
        write_mtx(out_dir / f"{name}.mtx", n, edges)
        print(f"{name}: {n} vertices, {len(edges)} edges, {sum(map(len, edges))} pins")


if __name__ == "__main__":
    main()

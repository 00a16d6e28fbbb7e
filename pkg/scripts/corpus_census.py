"""Census of the named corpus: flats, chains, fan sizes and theorem checks.

    python3 scripts/corpus_census.py [--names braid3 N5] [--samples 200]
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from tropfan import corpus
from tropfan.fans import bergman_fan, fine_subdivision, min_nested_fan, polytope_dim
from tropfan.lattice import flats, maximal_chains
from tropfan.verify import fans_equal_min_vs_bergman, fs_criterion, support_consistency, verify_distinct_spans


@dataclass
class CensusConfig:
    names: list[str] = field(default_factory=lambda: sorted(corpus.NAMED))
    samples: int = 200
    box: int = 3
    seed: int = 0


def census_row(name: str, cfg: CensusConfig) -> dict:
    t = time.perf_counter()
    m = corpus.NAMED[name]()
    lat = flats(m)
    row = {
        "name": name,
        "n": m.size,
        "rank": m.rank(),
        "flats": len(lat),
        "chains": len(maximal_chains(lat)),
        "fine": len(fine_subdivision(m, lat).cones),
        "min": len(min_nested_fan(m, lat).cones),
        "bergman": len(bergman_fan(m, lat=lat).cones),
        "rays": len(bergman_fan(m, lat=lat).rays),
        "pdim": polytope_dim(m),
        "fs": fs_criterion(m, lat).verdict,
        "fans": fans_equal_min_vs_bergman(m, lat).verdict,
        "spans": verify_distinct_spans(m).verdict,
    }
    sup = support_consistency(m, cfg.box, cfg.samples, cfg.seed, lat)
    row["support"] = f"{sup.verdict} ({sup.stats['in_trop']}/{cfg.samples} in)"
    row["secs"] = f"{time.perf_counter() - t:.2f}"
    return row


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--names", nargs="*", default=None)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--box", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    cfg = CensusConfig(samples=args.samples, box=args.box, seed=args.seed)
    if args.names:
        cfg.names = args.names
    rows = [census_row(name, cfg) for name in cfg.names]
    cols = list(rows[0])
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    print("  ".join(c.ljust(widths[c]) for c in cols))
    for r in rows:
        print("  ".join(str(r[c]).ljust(widths[c]) for c in cols))


if __name__ == "__main__":
    main()

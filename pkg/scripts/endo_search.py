"""Random search for fan-compatible integer maps that are not lattice automorphisms.

Candidates are A = s * P + B where P is a permutation matrix (a matroid
automorphism half of the time), s a small scale and B a sparse integer
perturbation with zero row sums, so that A always descends to the quotient. Maps that vanish on the quotient are
skipped: they send every cone to the origin and pass trivially.

    python3 scripts/endo_search.py --matroid braid3 --trials 400 --seed 1
"""
from __future__ import annotations

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from tropfan import corpus
from tropfan.endo import IntegerLinearMap, check_fan_compatibility, is_matroid_automorphism
from tropfan.fans import bergman_fan


@dataclass
class SearchConfig:
    matroid: str = "braid3"
    trials: int = 400
    seed: int = 1
    max_scale: int = 2
    perturb_entries: int = 2
    show: int = 5


def candidate(n: int, rng: random.Random, cfg: SearchConfig, autos: list) -> IntegerLinearMap:
    if autos and rng.random() < 0.5:
        perm = list(rng.choice(autos))
    else:
        perm = list(range(n))
        rng.shuffle(perm)
    s = rng.randint(1, cfg.max_scale)
    rows = [[s * int(perm[j] == i) for j in range(n)] for i in range(n)]
    for _ in range(rng.randint(0, cfg.perturb_entries)):
        i, j, k = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        d = rng.choice([-1, 1])
        rows[i][j] += d
        rows[i][k] -= d
    return IntegerLinearMap(tuple(map(tuple, rows)))


def search(cfg: SearchConfig) -> tuple[Counter, list]:
    m = corpus.NAMED[cfg.matroid]()
    fan = bergman_fan(m)
    rng = random.Random(cfg.seed)
    autos = [p for p in corpus.all_permutations(m.size) if is_matroid_automorphism(m, p)] if m.size <= 8 else []
    tally: Counter = Counter()
    found = []
    for _ in range(cfg.trials):
        a = candidate(m.size, rng, cfg, autos)
        if not any(any(r) for r in a.quotient_matrix()):
            tally["zero on quotient"] += 1
            continue
        rep = check_fan_compatibility(m, a, fan)
        if not rep.passed:
            tally["incompatible"] += 1
            continue
        monomial = all(sorted(abs(x) for x in r).count(0) == m.size - 1 for r in a.matrix)
        kind = "unimodular" if a.unimodular else "invertible" if a.invertible else "singular"
        tally[f"compatible {kind}{'' if monomial else ', perturbed'}"] += 1
        if not monomial or kind == "singular":
            if len(found) < cfg.show:
                found.append((kind, a.matrix, a.quotient_det()))
    return tally, found


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--matroid", default="braid3", choices=sorted(corpus.NAMED))
    ap.add_argument("--trials", type=int, default=400)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--max-scale", type=int, default=2)
    ap.add_argument("--perturb-entries", type=int, default=2)
    args = ap.parse_args()
    cfg = SearchConfig(args.matroid, args.trials, args.seed, args.max_scale, args.perturb_entries)
    m = corpus.NAMED[cfg.matroid]()
    autos = sum(is_matroid_automorphism(m, p) for p in corpus.all_permutations(m.size)) if m.size <= 8 else None
    print(f"{cfg.matroid}: n={m.size}, automorphisms={autos}")
    tally, found = search(cfg)
    for k, v in sorted(tally.items()):
        print(f"  {k:24s} {v}")
    for kind, mat, d in found:
        print(f"\n{kind}, quotient det {d}:")
        for r in mat:
            print("  " + " ".join(f"{x:3d}" for x in r))


if __name__ == "__main__":
    main()

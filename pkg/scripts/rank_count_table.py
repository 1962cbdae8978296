"""N(T; m, n, t) for K = Q with the colinear oracle, plus the brute-force partition at small T."""

import argparse
from modlat.numberfield import field_new
from modlat.rogers import count_rank1_colinear, rank_histogram


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--t", type=int, default=3)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--T", default="5,10,20,40,80")
    ap.add_argument("--brute-T", type=int, default=5)
    args = ap.parse_args()
    hist = rank_histogram(field_new(1), args.t, args.n, args.brute_T)
    print(f"# brute T={args.brute_T}: counts by rank {hist}, total {sum(hist)} = (2T+1)^(tn) = {(2 * args.brute_T + 1) ** (args.t * args.n)}")
    print("T,count,constant")
    for T in map(int, args.T.split(",")):
        c = count_rank1_colinear(args.t, args.n, T).count
        print(f"{T},{c},{c / T ** args.t:.4f}")


if __name__ == "__main__":
    main()

"""SVP ratio distribution and P(rho = 0) against the sandwich bounds, written as CSV."""

import argparse
from pathlib import Path

from modlat.harness import build_config, read_config_file, run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--config", default=str(Path(__file__).parent.parent / "configs" / "svp_k8.conf"))
    ap.add_argument("--samples", type=int)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="svp_records.csv")
    args = ap.parse_args()
    values = read_config_file(args.config)
    values["jobs"] = args.jobs
    if args.samples:
        values["samples"] = args.samples
    rep = run(build_config("svp", values))
    Path(args.out).write_text(rep.to_csv())
    print(rep.summary_csv(), end="")
    for flag in rep.flags:
        print("note:", flag)


if __name__ == "__main__":
    main()

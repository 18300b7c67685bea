import argparse


def build_parser(prog="tool"):
    parser = argparse.ArgumentParser(prog=prog, description="Process input files.")
    parser.add_argument("paths", nargs="*", help="input files")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("-j", "--jobs", type=int, default=1)
    parser.add_argument("--dry-run", action="store_true")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def parse(argv=None):
    args = build_parser().parse_args(argv)
    if args.jobs < 1:
        raise SystemExit("--jobs must be positive")
    return args


def split_csv_arg(value):
    return [v.strip() for v in value.split(",") if v.strip()]

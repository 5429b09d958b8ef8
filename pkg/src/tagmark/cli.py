"""Command-line frontend.

Subcommands: embed, extract, verify, attack, psnr, report. Machine-readable
results go to stdout as single key=value lines; diagnostics go to stderr.
Exit codes: 0 on success, 2 on any error; ``verify`` additionally exits 1
when the tag is rejected so scripts can count decisions.
"""

from __future__ import annotations

import argparse
import math
import sys

from .attacks import KINDS, AttackSpec, apply_attack
from .errors import TagmarkError
from .imagery import load_pgm, save_pgm
from .metrics import mse, psnr
from .watermark import (
    DEFAULT_ALPHA,
    DEFAULT_THRESHOLD_DB,
    EmbedParams,
    embed,
    extract,
    load_key,
    save_key,
    verify,
)


def _db_text(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.4f}"


def _cmd_embed(args) -> int:
    cover = load_pgm(args.cover)
    mark = load_pgm(args.mark)
    watermarked, key = embed(cover, mark, EmbedParams(alpha=args.alpha))
    save_pgm(args.out, watermarked)
    save_key(args.key, key)
    print(f"PSNR(cover,wm)={_db_text(psnr(cover, watermarked))} dB")
    return 0


def _cmd_extract(args) -> int:
    image = load_pgm(args.image)
    key = load_key(args.key)
    marks = extract(image, key)
    mark_svd, mark_dct = marks.images()
    save_pgm(args.out_svd, mark_svd)
    save_pgm(args.out_dct, mark_dct)
    print(f"PSNR={_db_text(psnr(mark_svd, mark_dct))} dB")
    return 0


def _cmd_verify(args) -> int:
    image = load_pgm(args.image)
    key = load_key(args.key)
    report = verify(image, key, args.threshold)
    verdict = "authentic" if report.authentic else "rejected"
    print(
        f"PSNR={_db_text(report.psnr_db)} dB "
        f"THRESHOLD={report.threshold_db:.4f} VERDICT={verdict}"
    )
    return 0 if report.authentic else 1


def _cmd_attack(args) -> int:
    image = load_pgm(args.image)
    spec = AttackSpec(
        kind=args.type,
        sigma=args.sigma,
        density=args.density,
        amplitude=args.amplitude,
        seed=args.seed,
    )
    save_pgm(args.out, apply_attack(image, spec))
    return 0


def _cmd_psnr(args) -> int:
    a = load_pgm(args.a)
    b = load_pgm(args.b)
    print(f"MSE={mse(a, b):.6g} PSNR={_db_text(psnr(a, b))} dB")
    return 0


def _cmd_report(args) -> int:
    # imported lazily: pulls in matplotlib
    from .report import run_report

    results = run_report(
        load_pgm(args.cover),
        load_pgm(args.mark),
        args.outdir,
        alpha=args.alpha,
        threshold_db=args.threshold,
        seed=args.seed,
    )
    for r in results:
        verdict = "authentic" if r.authentic else "rejected"
        print(f"SCENARIO={r.name} PSNR={_db_text(r.marks_psnr_db)} dB VERDICT={verdict}")
    print(f"REPORT={args.outdir}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tagmark",
        description="Embed, extract, and verify identification tags in PGM images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="embed a mark into a cover image")
    p.add_argument("--cover", required=True, help="cover image (binary PGM)")
    p.add_argument("--mark", required=True, help="mark image, one pixel per 8x8 cover block")
    p.add_argument("--out", required=True, help="watermarked image output path")
    p.add_argument("--key", required=True, help="side-info key output path (TAGKEY v1)")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA,
                   help="embedding strength (default %(default)s)")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("extract", help="extract both marks from a watermarked image")
    p.add_argument("--image", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--out-svd", required=True, help="output path for the SVD-layer mark")
    p.add_argument("--out-dct", required=True, help="output path for the DCT-layer mark")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("verify", help="decide tag authenticity (exit 0/1/2)")
    p.add_argument("--image", required=True)
    p.add_argument("--key", required=True)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD_DB,
                   help="inter-mark PSNR threshold in dB (default %(default)s)")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("attack", help="apply a seeded noise channel")
    p.add_argument("--image", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--type", required=True, choices=KINDS)
    p.add_argument("--sigma", type=float, default=0.0, help="gaussian standard deviation")
    p.add_argument("--density", type=float, default=0.0, help="fraction of pixels hit")
    p.add_argument("--amplitude", type=float, default=0.0,
                   help="uniform deviate range (random_uniform)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_attack)

    p = sub.add_parser("psnr", help="MSE/PSNR between two images")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=_cmd_psnr)

    p = sub.add_parser("report", help="attack sweep with CSV and figure output")
    p.add_argument("--cover", required=True)
    p.add_argument("--mark", required=True)
    p.add_argument("--outdir", required=True)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD_DB)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (TagmarkError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

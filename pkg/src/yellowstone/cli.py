"""Command-line interface.

Standard output carries only data (b-file lines, CSV, or plain text per
subcommand); progress and summaries go to standard error.  Identical
inputs produce byte-identical data output.  Exit codes: 0 success,
1 data mismatch (verify / import-bfile), 2 usage or format error, and
3..7 for the documented error families.
"""

import argparse
import sys
import time

from . import __version__
from .bfile import read_bfile, write_bfile
from .classify import (
    TermKind,
    check_hypothesis_a,
    classify_terms,
    frontier_track,
    kappa_distribution,
)
from .errors import (
    BFileFormatError,
    InsufficientDataError,
    InternalConsistencyError,
    InternalLimitError,
    InvalidArgumentError,
    OutOfRangeError,
    ResourceLimitError,
    YellowstoneError,
)
from .generator import Domain, SequenceState, VariantConfig, generate, verify_prefix
from .growthmodel import GrowthModel, curve_value, residuals
from .orbits import enumerate_cycles, find_fixed_points, orbit_offsets, trace_orbit
from .variants import detect_merge

_EXIT_CODES = [
    (BFileFormatError, 2),
    (InvalidArgumentError, 3),
    (OutOfRangeError, 4),
    (ResourceLimitError, 5),
    (InternalLimitError, 5),
    (InsufficientDataError, 6),
    (InternalConsistencyError, 7),
]

_KIND_NAMES = {
    TermKind.INITIAL_ONE: "one",
    TermKind.EVEN: "even",
    TermKind.PRIME: "prime",
    TermKind.KAPPA_P: "kappa-p",
    TermKind.ODD_COMPOSITE: "odd-composite",
}


def _parse_start(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InvalidArgumentError(f"bad start terms {text!r}; expected e.g. 1,2,3") from None


def _config(args) -> VariantConfig:
    domain = Domain.ODD_ONLY if args.domain == "odd" else Domain.ALL_POSITIVE
    start = _parse_start(args.start) if args.start else (
        (1, 3, 5) if domain is Domain.ODD_ONLY else (1, 2, 3)
    )
    return VariantConfig(start_terms=start, domain=domain)


def _state(args, n: int | None = None) -> SequenceState:
    n = n if n is not None else args.n
    cfg = _config(args)
    state = SequenceState(cfg)
    progress = getattr(args, "progress", 0)
    if progress:
        done = len(state)
        t0 = time.time()
        while done < n:
            done = min(done + progress, n)
            state.extend_to(done)
            print(f"generated {done}/{n} ({time.time() - t0:.1f}s)", file=sys.stderr)
    else:
        state.extend_to(n)
    return state


def _out(args):
    if getattr(args, "out", None):
        return open(args.out, "w")
    return sys.stdout


def _close(fh):
    if fh is not sys.stdout:
        fh.close()


def _add_common(p, n_default=None, formats=("bfile", "csv")):
    p.add_argument("--n", type=int, default=n_default, help="terms to generate")
    p.add_argument("--start", help="start terms, comma separated (default 1,2,3)")
    p.add_argument("--domain", choices=["all", "odd"], default="all")
    p.add_argument("--out", help="write data here instead of stdout")
    if formats:
        p.add_argument("--format", choices=list(formats), default=formats[0])


def _sigma_for(args, state=None):
    if getattr(args, "sigma", None):
        out = {}
        for part in args.sigma.split(","):
            k, v = part.split(":")
            out[int(k)] = float(v)
        return out
    src = state
    if src is None or len(src) < getattr(args, "sigma_n", 0):
        src = generate(n=max(getattr(args, "sigma_n", 0) or 10**5, 10**5))
    return kappa_distribution(src)


# -- subcommand handlers --------------------------------------------------


def _cmd_generate(args) -> int:
    state = _state(args)
    fh = _out(args)
    if args.format == "bfile":
        write_bfile(fh, state.terms())
    else:
        fh.write("n,value\n")
        for i, v in enumerate(state.terms(), 1):
            fh.write(f"{i},{v}\n")
    _close(fh)
    return 0


def _cmd_verify(args) -> int:
    state = _state(args)
    upto = args.upto or len(state)
    report = verify_prefix(state, upto)
    print(report, file=sys.stderr)
    fh = _out(args)
    fh.write(f"{report}\n")
    _close(fh)
    return 0 if report.matched else 1


def _cmd_classify(args) -> int:
    state = _state(args)
    cls = classify_terms(state)
    fh = _out(args)
    fh.write("n,value,kind,kappa\n")
    terms = state.terms()
    for i in range(1, len(state) + 1):
        kappa = cls.kappa_of(i)
        fh.write(f"{i},{terms[i - 1]},{_KIND_NAMES[cls.kind_of(i)]},"
                 f"{kappa if kappa else ''}\n")
    _close(fh)
    return 0


def _cmd_hypothesis_a(args) -> int:
    state = _state(args)
    report = check_hypothesis_a(state, start=args.start_index)
    print(
        f"range [{report.checked_range[0]}, {report.checked_range[1]}]: "
        f"{len(report.violations)} violations, {report.five_term_events} five-term events",
        file=sys.stderr,
    )
    fh = _out(args)
    fh.write("index,expected,observed\n")
    for v in report.violations:
        obs = " ".join(str(x) for x in v.observed)
        fh.write(f"{v.index},{v.expected},{obs}\n")
    _close(fh)
    return 0


def _cmd_frontiers(args) -> int:
    state = _state(args)
    ats = [int(t) for t in args.at.split(",")] if args.at else [len(state)]
    snaps = [frontier_track(state, at) for at in ats]
    fh = _out(args)
    fh.write("n,even_lo,even_hi,comp_lo,comp_hi,even_gap_fill\n")
    for s in snaps:
        fill = "" if s.even_gap_fill is None else f"{s.even_gap_fill:.6f}"
        lo = "" if s.even_lo is None else s.even_lo
        hi = "" if s.even_hi is None else s.even_hi
        fh.write(f"{s.n},{lo},{hi},{s.comp_lo},{s.comp_hi},{fill}\n")
    _close(fh)
    if args.plot:
        from .plotting import plot_frontiers

        plot_frontiers(snaps, args.plot)
    return 0


def _cmd_sigma(args) -> int:
    state = _state(args)
    sigma = kappa_distribution(state)
    fh = _out(args)
    fh.write("kappa,frequency\n")
    for k, v in sigma.items():
        fh.write(f"{k},{v:.6f}\n")
    _close(fh)
    if args.plot:
        from .plotting import plot_sigma

        plot_sigma(sigma, args.plot)
    return 0


def _cmd_model(args) -> int:
    sigma = {}
    needs_sigma = args.curve == "composite"
    if needs_sigma or args.sigma:
        state = generate(n=args.sigma_n) if not args.sigma else None
        sigma = _sigma_for(args, state)
    xs = [int(t) for t in args.x.split(",")]
    model = GrowthModel.for_scale(max(xs), sigma)
    fh = _out(args)
    fh.write("x,curve,y\n")
    for x in xs:
        fh.write(f"{x},{args.curve},{curve_value(model, args.curve, x)}\n")
    _close(fh)
    return 0


def _cmd_residuals(args) -> int:
    state = _state(args)
    sigma = kappa_distribution(state) if args.series == "odd-composite" else {}
    model = GrowthModel.for_scale(len(state), sigma)
    series = residuals(state, model, args.series)
    print(f"{args.series}: {series.summary()}", file=sys.stderr)
    fh = _out(args)
    series.write_csv(fh)
    _close(fh)
    if args.plot:
        from .plotting import plot_residuals

        plot_residuals(series, args.plot)
    return 0


def _cmd_orbit(args) -> int:
    domain = Domain.ODD_ONLY if args.domain == "odd" else Domain.ALL_POSITIVE
    start = (1, 3, 5) if domain is Domain.ODD_ONLY else (1, 2, 3)
    state = generate(VariantConfig(start_terms=start, domain=domain), args.n)
    report = trace_orbit(state, args.orbit_start, horizon=args.horizon)
    print(
        f"orbit of {report.start}: {report.status.value}"
        + (f" (length {report.cycle_length}, min {report.cycle_min})"
           if report.cycle_length else "")
        + (f"; {report.note}" if report.note else ""),
        file=sys.stderr,
    )
    fh = _out(args)
    if args.format == "csv":
        fh.write("offset,value\n")
        for off, v in orbit_offsets(report):
            fh.write(f"{off},{v}\n")
    else:
        fh.write(" ".join(str(v) for v in report.forward_path) + "\n")
    _close(fh)
    if args.plot:
        from .plotting import plot_orbit

        plot_orbit(orbit_offsets(report), args.plot, start=report.start)
    return 0


def _cmd_fixed_points(args) -> int:
    state = _state(args)
    fh = _out(args)
    for n in find_fixed_points(state, args.limit):
        fh.write(f"{n}\n")
    _close(fh)
    return 0


def _cmd_cycles(args) -> int:
    state = _state(args)
    survey = enumerate_cycles(state, args.search_limit)
    print(
        f"{len(survey.cycles)} cycles with min <= {survey.search_limit}; "
        f"{survey.unresolved_orbits} orbits escaped the prefix",
        file=sys.stderr,
    )
    fh = _out(args)
    fh.write("min,length,elements\n")
    for c in survey.cycles:
        fh.write(f"{c.min_element},{c.length},{' '.join(str(v) for v in c.elements)}\n")
    _close(fh)
    return 0


def _cmd_merge(args) -> int:
    horizon = args.horizon
    n = max(args.n or 0, horizon)
    a = generate(VariantConfig(start_terms=_parse_start(args.start_a)), n)
    b = generate(VariantConfig(start_terms=_parse_start(args.start_b)), n)
    result = detect_merge(a, b, horizon)
    fh = _out(args)
    if result.merged:
        fh.write(f"merged,{result.merge_index},{result.agreement_start}\n")
    else:
        fh.write(f"not-merged,,{result.horizon}\n")
    _close(fh)
    return 0


def _cmd_import_bfile(args) -> int:
    with open(args.path) as fh:
        first, values = read_bfile(fh)
    if first != 1:
        raise BFileFormatError(f"b-file must start at index 1, got {first}")
    state = _state(args, n=len(values))
    mine = state.terms()
    mismatches = [
        (i, values[i - 1], mine[i - 1])
        for i in range(1, len(values) + 1)
        if values[i - 1] != mine[i - 1]
    ]
    if mismatches:
        i, theirs, ours = mismatches[0]
        print(
            f"{len(mismatches)} mismatches; first at n={i}: file {theirs}, generated {ours}",
            file=sys.stderr,
        )
        return 1
    print(f"all {len(values)} terms match", file=sys.stderr)
    return 0


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="yellowstone",
        description="Generate and analyze the Yellowstone permutation (OEIS A098550).",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit terms as b-file or CSV")
    _add_common(p, n_default=20)
    p.add_argument("--progress", type=int, default=0,
                   help="report every K generated terms on stderr")
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("verify", help="re-derive a prefix with the naive rule")
    _add_common(p, n_default=1000, formats=None)
    p.add_argument("--upto", type=int, help="verify this many terms (default all)")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("classify", help="per-term kinds as CSV")
    _add_common(p, n_default=300, formats=("csv",))
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("hypothesis-a", help="check the five-term alternation structure")
    _add_common(p, n_default=10**5, formats=("csv",))
    p.add_argument("--start-index", type=int, default=213)
    p.set_defaults(fn=_cmd_hypothesis_a)

    p = sub.add_parser("frontiers", help="frontier snapshots at checkpoints")
    _add_common(p, n_default=10**4, formats=("csv",))
    p.add_argument("--at", help="comma separated checkpoints (default: n)")
    p.add_argument("--plot", help="also render a figure to this file")
    p.set_defaults(fn=_cmd_frontiers)

    p = sub.add_parser("sigma", help="geyser multiplier distribution")
    _add_common(p, n_default=10**5, formats=("csv",))
    p.add_argument("--plot", help="also render a figure to this file")
    p.set_defaults(fn=_cmd_sigma)

    p = sub.add_parser("model", help="evaluate a growth curve")
    p.add_argument("--curve", required=True,
                   help="even | prime | composite | kappa:K")
    p.add_argument("--x", required=True, help="comma separated indexes")
    p.add_argument("--sigma", help="inline distribution, e.g. 3:0.334,5:0.451")
    p.add_argument("--sigma-n", dest="sigma_n", type=int, default=10**5,
                   help="measure sigma from this many generated terms")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_model)

    p = sub.add_parser("residuals", help="residuals of one term class against its curve")
    _add_common(p, n_default=10**5, formats=("csv",))
    p.add_argument("--series", choices=["normal-even", "event-even", "odd-composite"],
                   default="normal-even")
    p.add_argument("--plot", help="also render a figure to this file")
    p.set_defaults(fn=_cmd_residuals)

    p = sub.add_parser("orbit", help="trace one orbit in both directions")
    p.add_argument("--start", dest="orbit_start", type=int, required=True,
                   help="starting value of the orbit")
    p.add_argument("--n", type=int, default=10**4, help="terms to generate")
    p.add_argument("--domain", choices=["all", "odd"], default="all")
    p.add_argument("--horizon", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.add_argument("--plot", help="also render a figure to this file")
    p.set_defaults(fn=_cmd_orbit)

    p = sub.add_parser("fixed-points", help="all n with a(n) = n")
    _add_common(p, n_default=10**4, formats=None)
    p.add_argument("--limit", type=int)
    p.set_defaults(fn=_cmd_fixed_points)

    p = sub.add_parser("cycles", help="enumerate finite cycles")
    _add_common(p, n_default=10**4, formats=("csv",))
    p.add_argument("--search-limit", dest="search_limit", type=int, default=100)
    p.set_defaults(fn=_cmd_cycles)

    p = sub.add_parser("merge", help="merge criterion between two start triples")
    p.add_argument("--start-a", default="1,2,3")
    p.add_argument("--start-b", required=True)
    p.add_argument("--horizon", type=int, default=100)
    p.add_argument("--n", type=int)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_merge)

    p = sub.add_parser("import-bfile", help="cross-check a b-file against generated terms")
    p.add_argument("path")
    p.add_argument("--start")
    p.add_argument("--domain", choices=["all", "odd"], default="all")
    p.set_defaults(fn=_cmd_import_bfile)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BFileFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except YellowstoneError as e:
        print(f"error: {e}", file=sys.stderr)
        for klass, code in _EXIT_CODES:
            if isinstance(e, klass):
                return code
        return 5


if __name__ == "__main__":
    raise SystemExit(main())

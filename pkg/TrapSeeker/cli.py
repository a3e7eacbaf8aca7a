"""
trapseeker command line

Every verb writes JSON-lines to stdout. Exit status is 0 on success, 1 when
a checked claim fails and 2 for usage or input errors.
"""

import argparse
import logging
import sys

from TrapSeeker import analysis, fileio, holes, trap_search
from TrapSeeker.symbolic import BiSeq, Window
from TrapSeeker.utility import DomainError, UsageError
from TrapSeeker.words import doubling_constant

EXIT_OK, EXIT_REGRESSION, EXIT_USAGE = 0, 1, 2

WINDOW_FAMILIES = {
    'delta': lambda: [(w, ['delta']) for w in analysis.delta_windows()],
    'pk': analysis.pk_windows,
    'delta1': lambda: [(w, ['delta1']) for w in analysis.delta1_windows()],
    'delta2': lambda: [(w, ['delta2']) for w in analysis.delta2_windows()],
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog='trapseeker', description="Traps for the baker's map")
    parser.add_argument('--jobs', type=int, default=None,
                        help="dask workers, 0 for all cores (default: TRAPSEEKER_JOBS or 1)")
    parser.add_argument('--verbose', action='store_true')
    verbs = parser.add_subparsers(dest='verb', required=True, parser_class=_Parser)

    p = verbs.add_parser('hole', help="describe a hole")
    p.add_argument('--spec', required=True,
                   help="hole spec, or trap:<k> for the complete trap A_k")
    p.add_argument('--svg')

    p = verbs.add_parser('forbidden', help="certify forbidden windows")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--window')
    group.add_argument('--family', choices=sorted(WINDOW_FAMILIES))
    p.add_argument('--hole')
    p.add_argument('--mode', choices=('strict', 'essential'), default='essential')

    p = verbs.add_parser('cycles', help="scan periodic orbits")
    p.add_argument('--hole', required=True)
    p.add_argument('--max-period', type=int, required=True)
    p.add_argument('--expect-trap', action='store_true',
                   help="exit 1 unless the hole is a cycle trap")

    p = verbs.add_parser('dim', help="dimension bounds of the survivor set")
    p.add_argument('--hole', required=True)
    p.add_argument('-L', type=int, required=True)
    p.add_argument('-m', type=int, default=None)

    p = verbs.add_parser('search', help="search for small convex traps")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--config')
    group.add_argument('--preset', choices=sorted(trap_search.CAMPAIGN_PRESETS))
    p.add_argument('--svg')

    p = verbs.add_parser('appendix', help="balanced sequences and |x - y| > 1/2")
    p.add_argument('--check', choices=('balanced', 'witness'), required=True)
    p.add_argument('--word', help="periodic word or '(P)T·U(Q)' sequence")
    p.add_argument('--w', default='')
    p.add_argument('--m', type=int, default=0)

    p = verbs.add_parser('constants', help="numerical constants")
    p.add_argument('--which', choices=('gs', 'pinfty-area'), required=True)
    p.add_argument('-k', type=int, default=8)
    return parser


def cmd_hole(args, emit):
    if args.spec.startswith('trap:'):
        try:
            k = int(args.spec[5:])
        except ValueError:
            raise UsageError(f"trap spec needs an integer, got {args.spec!r}")
        trap = holes.complete_trap(k)
        emit([{
            'hole': f"A_{k}",
            'boxes': len(trap.boxes),
            'horizontal': len(trap.horizontal),
            'vertical': len(trap.vertical),
            'measure': fileio.rat_record(trap.measure()),
        }])
        if args.svg:
            svg = fileio.SVG()
            for box in trap.boxes:
                svg.rect(box)
            svg.save(args.svg)
        return EXIT_OK

    hole = holes.named_hole(args.spec)
    emit([{
        'hole': hole.name,
        'convex': hole.convex,
        'parts': list(hole.parts),
        'area': fileio.rat_record(hole.area()),
    }])
    if args.svg:
        fileio.hole_svg(hole).save(args.svg)
    return EXIT_OK


def cmd_forbidden(args, emit):
    if args.window:
        if not args.hole:
            raise UsageError("--window needs --hole")
        record = analysis.certify_report(Window.parse(args.window), holes.named_hole(args.hole), args.mode)
        emit([record])
        return EXIT_OK

    failures = 0
    records = []
    for w, specs in WINDOW_FAMILIES[args.family]():
        for spec in specs:
            record = analysis.certify_report(w, holes.named_hole(spec), args.mode)
            failures += not record['result']
            records.append(record)
    records.append({'summary': args.family, 'checked': len(records), 'failures': failures})
    emit(records)
    return EXIT_REGRESSION if failures else EXIT_OK


def cmd_cycles(args, emit):
    hole = holes.named_hole(args.hole)
    report = analysis.scan_cycles(hole, args.max_period, jobs=args.jobs)
    emit(report.records() + [{
        'summary': hole.name,
        'max_period': args.max_period,
        'verdict': report.verdict,
        'cycle_trap': report.is_cycle_trap,
        'open_avoiders': report.open_avoiders(),
        'closed_avoiders': report.closed_avoiders(),
    }])
    if args.expect_trap and not report.is_cycle_trap:
        return EXIT_REGRESSION
    return EXIT_OK


def cmd_dim(args, emit):
    hole = holes.named_hole(args.hole)
    bounds = analysis.dim_bounds(hole, args.L, args.m)
    emit([{
        'hole': hole.name,
        'L': bounds.L,
        'm': bounds.m,
        'lower': bounds.lower,
        'upper': bounds.upper,
        'lower_ratio': bounds.lower_ratio,
        'upper_count': str(bounds.upper_count),
        'component_size': len(bounds.component),
    }])
    return EXIT_OK


def cmd_search(args, emit):
    if args.config:
        cfg = trap_search.campaign_config(**fileio.read_campaign_config(args.config))
    else:
        cfg = trap_search.campaign_config(preset=args.preset)
    family, constraints = trap_search.run_campaign(cfg, jobs=args.jobs)
    records = [{'polygon': poly, 'area': fileio.rat_record(poly.area())} for poly in family.polygons]
    summary = {
        'count': len(family),
        'constraints': [str(c) for c in constraints],
        'symmetry': cfg.symmetry,
        'threshold': cfg.area_threshold,
    }
    if len(family):
        summary['min_area'] = fileio.rat_record(family.min_area())
        summary['lower_bound'] = fileio.rat_record(trap_search.lower_bound(family, cfg.epsilon))
    else:
        summary['lower_bound'] = fileio.rat_record(cfg.area_threshold - 4 * cfg.epsilon)
    emit(records + [summary])
    if args.svg:
        fileio.family_svg(family, cfg.anchors).save(args.svg)
    return EXIT_OK


def cmd_appendix(args, emit):
    if args.check == 'balanced':
        if not args.word:
            raise UsageError("--check balanced needs --word")
        s = BiSeq.parse(args.word) if '(' in args.word else BiSeq.periodic(args.word)
        balanced = analysis.biseq_balanced(s)
        survivor = analysis.balanced_survivor(s)
        emit([{'item': str(s), 'balanced': balanced, 'survivor': survivor}])
        return EXIT_OK if balanced == survivor else EXIT_REGRESSION

    window = analysis.h_witness(args.w, args.m)
    record = analysis.certify_report(window, holes.h_script(), 'essential')
    emit([record])
    return EXIT_OK if record['result'] else EXIT_REGRESSION


def cmd_constants(args, emit):
    if args.which == 'gs':
        value = doubling_constant(args.k)
        emit([{'constant': 'gs', 'terms': args.k, 'value': fileio.rat_record(value),
               'rounded': f"{float(value):.6f}"}])
        return EXIT_OK

    inner, outer = holes.p_infty_bounds(args.k)
    lo, hi = inner.area(), outer.area()
    emit([{'constant': 'pinfty-area', 'k': args.k,
           'lower': fileio.rat_record(lo), 'upper': fileio.rat_record(hi),
           'width': float(hi - lo), 'rounded': f"{float(lo):.5f}"}])
    return EXIT_OK


COMMANDS = {
    'hole': cmd_hole,
    'forbidden': cmd_forbidden,
    'cycles': cmd_cycles,
    'dim': cmd_dim,
    'search': cmd_search,
    'appendix': cmd_appendix,
    'constants': cmd_constants,
}


def dispatch(argv, stream=None):
    """
    Runs one verb and returns its exit status
    """

    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"trapseeker: {e}\n")
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format='%(levelname)s %(name)s: %(message)s',
    )

    def emit(records):
        fileio.write_json_lines(records, stream)

    try:
        return COMMANDS[args.verb](args, emit)
    except DomainError as e:
        logging.error("%s", e)
        return EXIT_USAGE


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == '__main__':
    main()

#!/usr/bin/env python3
# encoding: utf-8

import argparse
import logging
import os
import sys

from common import load_instance, load_partition, load_schedule, save_json, save_text
from maintsched.approx import audit_lemma2
from maintsched.bench import ALGORITHMS, ORACLES, instance_files, render_csv, run_bench, solve
from maintsched.codec import evaluation_to_dict, instance_to_dict, schedule_to_dict
from maintsched.errors import InfeasibleSchedule, InvalidParameter
from maintsched.generate import agreeable_instance, random_instance, tight_instance
from maintsched.model import evaluate
from maintsched.reduction import build_reduction, decide_partition_by_search, subset_with_half_sum
from maintsched.runtime import Runner

log = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """Parser that raises instead of exiting on bad arguments"""

    def error(self, message):
        raise InvalidParameter(message)


def setting(runner, args, name):
    """Flag value if given, else the runner's setting"""
    value = getattr(args, name, None)
    return runner.settings[name] if value is None else value


def solve_instance(runner, args):
    """Solve an instance file and print schedule plus evaluation"""
    instance = load_instance(args.path)
    schedule = solve(
        instance, args.algorithm,
        brute_force_limit=runner.settings['brute_force_limit'],
        dp_limit=runner.settings['dp_limit'],
        workers=setting(runner, args, 'workers'),
    )
    evaluation = evaluate(instance, schedule)
    log.info("%s: total %d, makespan %d", args.algorithm, evaluation.total, evaluation.makespan)

    if args.out:
        save_json(args.out, schedule_to_dict(schedule))
    save_json(None, {
        'schedule': schedule_to_dict(schedule),
        'evaluation': evaluation_to_dict(evaluation),
    })
    return 0


def reduction_outputs(part_path, out):
    """Build the reduction of a partition file, write instance and sidecar"""
    art = build_reduction(load_partition(part_path))
    save_json(out, instance_to_dict(art.instance))
    meta = art.metadata()
    if out:
        stem = os.path.splitext(out)[0]
        save_json(stem + '.meta.json', meta)
    log.info("reduction: M=%d Q0=%d Q=%d B=%d", meta['M'], meta['Q0'], meta['Q'], meta['B'])
    return 0


def generate_instance(args):
    """Write a generated instance"""
    if args.kind == 'reduction':
        if not args.partition_file:
            raise InvalidParameter("generate reduction needs --partition-file")
        return reduction_outputs(args.partition_file, args.out)

    if args.kind == 'tight':
        if args.lam is None:
            raise InvalidParameter("generate tight needs --lambda")
        instance = tight_instance(args.lam)
    elif args.kind == 'agreeable':
        instance = agreeable_instance(args.n, args.max_p, args.max_delta, args.seed)
    else:
        instance = random_instance(args.n, args.max_p, args.max_delta, args.seed)

    save_json(args.out, instance_to_dict(instance))
    return 0


def bench_directory(runner, args):
    """Benchmark all instance files of a directory, CSV to --out or stdout"""
    if not os.path.isdir(args.directory):
        raise InvalidParameter(f"{args.directory} is not a directory")
    algorithms = args.algorithm or ['spt', 'a1']
    records = run_bench(
        instance_files(args.directory), algorithms,
        oracle=args.oracle,
        workers=setting(runner, args, 'workers'),
        brute_force_limit=runner.settings['brute_force_limit'],
        dp_limit=runner.settings['dp_limit'],
        timing=not args.no_timing,
    )
    text = render_csv(records, places=runner.settings['ratio_places'],
                      with_summary=args.oracle != 'none')
    save_text(args.out, text)
    return 0


def audit_schedule(args):
    """Evaluate a schedule file against an instance and audit its structure"""
    instance = load_instance(args.path)
    schedule = load_schedule(args.schedule)
    evaluation = evaluate(instance, schedule)
    if not evaluation.feasible:
        raise InfeasibleSchedule(f"{args.schedule} is not feasible for {args.path}")
    report = audit_lemma2(instance, schedule)
    save_json(args.out, {
        'evaluation': evaluation_to_dict(evaluation),
        'audit': report.to_dict(),
    })
    return 0


def decide_partition(args):
    """Decide a partition file through the reduction and cross-check it"""
    part = load_partition(args.partition_file)
    art = build_reduction(part)
    within = decide_partition_by_search(part)
    subset = subset_with_half_sum(part)
    if within != (subset is not None):
        log.error("reduction says %s but subset search says %s", within, subset is not None)
    save_json(args.out, {
        'x': list(part.x),
        'B': part.b,
        'Q': art.q,
        'optimum_within_q': within,
        'subset': None if subset is None else list(subset),
        'agree': within == (subset is not None),
    })
    return 0


def common_options(default=None):
    """Options accepted before and after the command name"""
    common = ArgumentParser(add_help=False)
    common.add_argument('--settings', default=default, help='JSON settings file')
    common.add_argument('--debug', action='store_true', default=default, help='log at DEBUG level')
    common.add_argument('--out', default=default, help='output file (default: standard output)')
    return common


def build_parser():
    parser = ArgumentParser(prog='maintsched', parents=[common_options()])
    # suppressed defaults keep a value given before the command name
    common = common_options(argparse.SUPPRESS)
    sub = parser.add_subparsers(dest='command')

    p = sub.add_parser('solve', parents=[common], help='solve an instance')
    p.add_argument('path')
    p.add_argument('--algorithm', choices=ALGORITHMS, default='a1')
    p.add_argument('--workers', type=int)

    p = sub.add_parser('generate', parents=[common], help='generate an instance')
    p.add_argument('kind', choices=('random', 'agreeable', 'tight', 'reduction'))
    p.add_argument('--n', type=int, default=6)
    p.add_argument('--max-p', type=int, default=20)
    p.add_argument('--max-delta', type=int, default=20)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--lambda', dest='lam', type=int)
    p.add_argument('--partition-file')

    p = sub.add_parser('gen-reduction', parents=[common], help='reduce a partition file')
    p.add_argument('--partition-file', required=True)

    p = sub.add_parser('bench', parents=[common], help='benchmark a directory of instances')
    p.add_argument('directory')
    p.add_argument('--algorithm', action='append', choices=ALGORITHMS)
    p.add_argument('--oracle', choices=ORACLES, default='exact-dp')
    p.add_argument('--workers', type=int)
    p.add_argument('--no-timing', action='store_true', help='write wall_ms as 0')

    p = sub.add_parser('audit', parents=[common], help='audit a schedule')
    p.add_argument('path')
    p.add_argument('--schedule', required=True)

    p = sub.add_parser('decide', parents=[common], help='decide a partition file')
    p.add_argument('--partition-file', required=True)

    return parser


def main(runner):
    args = build_parser().parse_args(runner.args)
    if args.debug:
        runner.debugging = True

    if args.command == 'solve':
        return solve_instance(runner, args)
    elif args.command == 'generate':
        return generate_instance(args)
    elif args.command == 'gen-reduction':
        return reduction_outputs(args.partition_file, args.out)
    elif args.command == 'bench':
        return bench_directory(runner, args)
    elif args.command == 'audit':
        return audit_schedule(args)
    elif args.command == 'decide':
        return decide_partition(args)
    else:
        raise InvalidParameter("a command is required: solve, generate, gen-reduction, bench, audit or decide")


def cli(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    pre = ArgumentParser(prog='maintsched', add_help=False)
    pre.add_argument('--settings')
    pre.add_argument('--debug', action='store_true')
    try:
        known, _ = pre.parse_known_args(argv)
    except InvalidParameter:
        # main's parser reports the same error inside the run loop
        known = argparse.Namespace(settings=None, debug=False)

    runner = Runner(argv, settings_path=known.settings)
    if known.debug:
        runner.debugging = True
    return runner.run(main)


if __name__ == '__main__':
    sys.exit(cli())

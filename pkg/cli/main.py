"""
Command-line frontend.

Every command prints one report (JSON by default, CSV with --format csv) to
stdout or to --output. Exit codes: 0 when every requested verification passes,
1 when a verification fails, 2 on invalid input or exhausted resources.
"""
import argparse
import sys
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from approx.error_schedule import build_error_schedule, schedule_report
from arith.rational_angle import parse_angle
from cli.run_config import RunConfig, load_sweeps
from construct.construction import (
    ConstructionSchedule,
    build_construction,
    toy_construction,
    corrupt_construction,
    CORRUPTION_MODES,
)
from construct.evaluator import verify_bound
from construct.exponent_law import exponent_law
from expsum.calibration import calibrate_c1, check_weyl_envelope, gauss_identity_sweep, evaluator_equivalence_sweep
from expsum.leading_terms import vartheta, tau
from expsum.quadratic_sums import complete_gauss_sums
from modular.corollary import corollary_check, threshold_polynomial, density_sweep, corollary_table
from modular.modular_function import autocorrelation
from modular.squares import squares_mod, max_squarefree_set, difference_equivalence_sweep
from oracle.extremal import (
    gamma_table,
    gamma_sweep_report,
    compare_with_construction,
    FREE,
    NONNEGATIVE,
)
from reporting.exporters import write_report, read_json
from reporting.plots import plot_grid_values, plot_gamma_table
from utils.errors import ToolkitError, ResourceLimitError
from utils.logger import setup_logger, set_global_level
from utils.result_cache import CACHED_KINDS, ResultCache, get_cache
from weights.sweeps import lemma1_sweep, lemma2_sweep, scheme_contract_sweep, lcm_sweep
from weights.weight_scheme import build_scheme, scheme_summary

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

MODE_ALIASES = {'free': [FREE], 'nonneg': [NONNEGATIVE], 'both': [FREE, NONNEGATIVE]}


def _int_list(text: str) -> List[int]:
    return [int(item) for item in text.replace(',', ' ').split() if item]


def _cache(config: RunConfig) -> Optional[ResultCache]:
    return get_cache() if config.use_cache else None


def cmd_scheme(args, config: RunConfig) -> Dict[str, Any]:
    scheme = build_scheme(args.delta)
    report = scheme_summary(scheme)
    report['scheme'] = scheme.to_dict()
    return report


def _gauss_deviation(L: int, q: int) -> float:
    coprime = np.gcd(np.arange(q), q) == 1
    moduli = np.abs(complete_gauss_sums(q, L)[coprime])
    return float(np.max(np.abs(moduli - vartheta(L, q).value)))


def cmd_tau(args, config: RunConfig) -> Dict[str, Any]:
    """Columns: q, case, r, vartheta, tau, gauss_deviation"""
    rows = []
    for q in range(1, args.q_max + 1):
        theta = vartheta(args.L, q)
        rows.append({
            'q': q,
            'case': theta.case,
            'r': theta.r,
            'vartheta': theta.value,
            'tau': tau(args.L, q).value,
            'gauss_deviation': _gauss_deviation(args.L, q)
        })
    table = pd.DataFrame(rows, columns=['q', 'case', 'r', 'vartheta', 'tau', 'gauss_deviation'])
    worst = float(table['gauss_deviation'].max()) if len(table) else 0.0
    return {
        'status': 'PASS' if worst <= 1e-9 else 'FAIL',
        'L': args.L,
        'q_max': args.q_max,
        'max_gauss_deviation': worst,
        'table': table
    }


def cmd_gauss(args, config: RunConfig) -> Dict[str, Any]:
    L_values = _int_list(args.L_values) if args.L_values else (1, 2, 3, 4, 6, 12)
    return gauss_identity_sweep(args.q_max, L_values)


def _load_or_build(args) -> ConstructionSchedule:
    if args.L_seq or args.M_seq:
        if not (args.L_seq and args.M_seq):
            raise ToolkitError("--L-seq and --M-seq must be given together")
        cons = toy_construction(_int_list(args.L_seq), _int_list(args.M_seq), delta=args.delta)
    else:
        cons = build_construction(args.delta)
    if args.corrupt:
        cons = corrupt_construction(cons, args.corrupt)
    return cons


def cmd_build(args, config: RunConfig) -> Dict[str, Any]:
    """Columns of the worst-point table: i, x, T"""
    cons = _load_or_build(args)
    report: Dict[str, Any] = {'summary': cons.summary(), 'construction': cons.to_dict()}
    if args.verify or args.plot:
        G = args.grid or config.grid_size
        verification = verify_bound(cons, G, precision=config.precision, include_values=bool(args.plot),
                                    max_terms=config.max_terms)
        if args.plot:
            plot_grid_values(verification.pop('values')['T'].to_numpy(), cons.delta, args.plot,
                             title=f"{cons.label}, G={G}")
        report.update(verification)
    return report


def cmd_oracle(args, config: RunConfig) -> Dict[str, Any]:
    """Columns: n, gamma_free, gamma_nonneg, iterations, certified_margin"""
    if args.from_file:
        data = read_json(args.from_file)
        cons = ConstructionSchedule.from_dict(data.get('construction', data))
        return compare_with_construction(cons, cap=args.cap, G=args.grid, max_terms=config.max_terms)

    n_list = _int_list(args.n_list) if args.n_list else []
    modes = MODE_ALIASES[args.mode]
    cache = _cache(config)

    def compute():
        return gamma_table(n_list, modes=modes, G=args.grid, max_workers=args.workers)

    if cache and n_list:
        table = cache.fetch('gamma_table', {'n': n_list, 'modes': modes, 'G': args.grid}, compute)
    else:
        table = compute()
    if args.plot and len(table):
        plot_gamma_table(table, args.plot)
    return {'table': table, 'modes': modes, 'n_list': n_list}


def cmd_modular(args, config: RunConfig) -> Dict[str, Any]:
    n = args.n
    threshold = config.max_exhaustive_n
    if args.exhaustive:
        if n > config.max_exhaustive_n:
            raise ResourceLimitError("exhaustive subset search", n, config.max_exhaustive_n)
        threshold = n
    squares = squares_mod(n)
    best = max_squarefree_set(n, budget=config.max_heuristic_iterations,
                              exhaustive_threshold=threshold, seed=config.seed)
    poly = threshold_polynomial(n)
    verdict = corollary_check(autocorrelation(n, best.witness), poly, squares)
    status = 'FAIL' if verdict['status'] == 'FAIL' else 'PASS'
    return {
        'status': status,
        'n': n,
        'squares': squares.sorted(),
        'max_squarefree_size': best.size,
        'witness': list(best.witness),
        'optimal': best.optimal,
        'lp_delta': float(poly.a0),
        'corollary': verdict
    }


def cmd_schedule(args, config: RunConfig) -> Dict[str, Any]:
    """Columns: k, log_M, p, q, eps, E, weyl, tail, drift, within_quarter"""
    x = parse_angle(args.x)
    L = args.L if args.L else build_scheme(args.delta).L_max
    return schedule_report(build_error_schedule(x, L, args.delta, args.c1 or config.c1))


def cmd_calibrate(args, config: RunConfig) -> Dict[str, Any]:
    """Columns: q, M, max_ratio, worst_p, deviation"""
    q_max = args.q_max or config.calibration_q_max
    M_values = _int_list(args.M_values) if args.M_values else config.calibration_M_values
    params = {'q_max': q_max, 'M_values': list(M_values), 'safety_factor': config.calibration_safety_factor}
    cache = _cache(config)

    def compute():
        return calibrate_c1(q_max, M_values, safety_factor=config.calibration_safety_factor)

    return cache.fetch('calibration', params, compute) if cache else compute()


def cmd_cache(args, config: RunConfig) -> Dict[str, Any]:
    """Columns: kind, entries, stale, size_bytes"""
    cache = get_cache()
    removed = cache.clear(None if args.clear == 'all' else args.clear) if args.clear else 0
    return {'cache_dir': cache.cache_dir, 'removed': removed, 'table': cache.summary()}


def _verification_suite(config: RunConfig) -> Dict[str, Callable[[], Dict[str, Any]]]:
    sweeps = load_sweeps()
    seed = config.seed

    def section(name: str) -> Dict[str, Any]:
        return sweeps.get(name) or {}

    def scheme_contract() -> Dict[str, Any]:
        params = section('scheme_contract')
        reports = [scheme_contract_sweep(build_scheme(delta), q_max=params.get('q_max', 100000),
                                         random_count=params.get('random_count', 10000), seed=seed)
                   for delta in params.get('deltas', [0.4, 0.5])]
        return {'status': 'PASS' if all(r['status'] == 'PASS' for r in reports) else 'FAIL',
                'reports': [{k: v for k, v in r.items() if k != 'violations'} for r in reports]}

    def end_to_end() -> Dict[str, Any]:
        params = section('end_to_end')
        cons = build_construction(params.get('delta', 0.5))
        return verify_bound(cons, params.get('grid_size', 8192), precision=config.precision,
                            max_terms=config.max_terms)

    def exponent() -> Dict[str, Any]:
        params = section('exponent_law')
        return exponent_law(params.get('deltas', (0.56, 0.5, 0.45, 0.4)),
                            expected=params.get('expected_slope', 3.0), tolerance=params.get('tolerance', 0.6))

    def modular_suite() -> Dict[str, Any]:
        params = section('modular')
        densities = density_sweep(params.get('density_count', 500), params.get('density_n_max', 64), seed=seed)
        equivalence = difference_equivalence_sweep(params.get('equivalence_n_max', 16))
        table = corollary_table(params.get('corollary_n', [2, 3, 4, 5, 8]), seed=seed)
        ok = (densities['status'] == 'PASS' and equivalence['status'] == 'PASS'
              and (table['corollary_status'] != 'FAIL').all())
        return {'status': 'PASS' if ok else 'FAIL', 'density': densities,
                'equivalence': equivalence, 'table': table}

    return {
        'gauss': lambda: gauss_identity_sweep(**section('gauss_identity')),
        'evaluator': lambda: evaluator_equivalence_sweep(seed=seed, **section('evaluator_equivalence')),
        'weyl': lambda: check_weyl_envelope(config.c1, q_max=config.calibration_q_max,
                                             M_values=config.calibration_M_values),
        'lemma1': lambda: lemma1_sweep(**section('lemma1')),
        'lemma2': lambda: lemma2_sweep(**section('lemma2')),
        'scheme': scheme_contract,
        'end_to_end': end_to_end,
        'exponent_law': exponent,
        'oracle': lambda: gamma_sweep_report(section('oracle').get('n_list', [1, 4, 9, 16, 25, 36, 49])),
        'lcm': lambda: lcm_sweep(**section('lcm')),
        'modular': modular_suite,
    }


def cmd_verify(args, config: RunConfig) -> Dict[str, Any]:
    suite = _verification_suite(config)
    selected = args.only.split(',') if args.only else list(suite)
    unknown = [name for name in selected if name not in suite]
    if unknown:
        raise ToolkitError(f"unknown verification(s) {unknown}; available: {sorted(suite)}")

    results = {}
    rows = []
    for name in selected:
        result = suite[name]()
        results[name] = result
        rows.append({'check': name, 'status': result['status']})
    table = pd.DataFrame(rows, columns=['check', 'status'])
    status = 'PASS' if (table['status'] == 'PASS').all() else 'FAIL'
    return {'status': status, 'table': table, 'results': results}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='vdc-toolkit',
        description='Construct and verify nonnegative cosine polynomials with square frequencies.'
    )
    parser.add_argument('--config', help='run configuration YAML (default: $VDC_TOOLKIT_CONFIG or config/run_defaults.yaml)')
    parser.add_argument('--seed', type=int, help='seed for randomized sweeps')
    parser.add_argument('--format', dest='output_format', choices=['json', 'csv'], help='output format')
    parser.add_argument('--output', help='write output to this file (UTF-8) instead of stdout')
    parser.add_argument('--precision', type=int, help='bits for high-precision evaluation (>= 53)')
    parser.add_argument('--no-cache', action='store_true', help='ignore the on-disk result cache')
    parser.add_argument('--verbose', '-v', action='store_true', help='debug logging')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('scheme', help='weight scheme for delta')
    p.add_argument('--delta', type=float, required=True)
    p.set_defaults(handler=cmd_scheme)

    p = sub.add_parser('tau', help='vartheta/tau table; CSV columns: q, case, r, vartheta, tau, gauss_deviation')
    p.add_argument('--L', type=int, required=True)
    p.add_argument('--q-max', type=int, required=True)
    p.set_defaults(handler=cmd_tau)

    p = sub.add_parser('gauss', help='Gauss sum identity sweep; CSV columns: q, L, deviation (violations)')
    p.add_argument('--q-max', type=int, default=500)
    p.add_argument('--L-values', help='comma separated dilations')
    p.set_defaults(handler=cmd_gauss)

    p = sub.add_parser('build', help='build the construction; CSV columns: i, x, T (worst grid points)')
    p.add_argument('--delta', type=float)
    p.add_argument('--grid', type=int, help='grid size G')
    p.add_argument('--verify', action='store_true', help='evaluate on the grid and compare with -delta')
    p.add_argument('--L-seq', help='toy chain, comma separated')
    p.add_argument('--M-seq', help='toy moduli, comma separated')
    p.add_argument('--corrupt', choices=CORRUPTION_MODES, help='negative control')
    p.add_argument('--plot', help='PNG path for the grid values')
    p.set_defaults(handler=cmd_build)

    p = sub.add_parser('oracle', help='extremal LP; CSV columns: n, gamma_free, gamma_nonneg, iterations, '
                                      'certified_margin, max_duality_gap, status')
    p.add_argument('--n-list', help='comma separated spectrum caps')
    p.add_argument('--mode', choices=sorted(MODE_ALIASES), default='both')
    p.add_argument('--grid', type=int, help='common grid size (default 128 max n)')
    p.add_argument('--from-file', help='build output to compare against the LP optimum')
    p.add_argument('--cap', type=int, help='frequency cap for the expansion in --from-file mode')
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--plot', help='PNG path for the gamma table')
    p.set_defaults(handler=cmd_oracle)

    p = sub.add_parser('modular', help='squares mod n, largest square-difference-free set, density check')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--exhaustive', action='store_true', help='force the exact search')
    p.set_defaults(handler=cmd_modular)

    p = sub.add_parser('schedule', help='per-k error schedule; CSV columns: k, log_M, p, q, eps, E, weyl, '
                                        'tail, drift, within_quarter')
    p.add_argument('--delta', type=float, required=True)
    p.add_argument('--x', required=True, help='rational point p/q')
    p.add_argument('--L', type=int, help='dilation (default: L_max of the scheme)')
    p.add_argument('--c1', type=float)
    p.set_defaults(handler=cmd_schedule)

    p = sub.add_parser('calibrate', help='measure c1; CSV columns: q, M, max_ratio, worst_p, deviation')
    p.add_argument('--q-max', type=int)
    p.add_argument('--M-values', help='comma separated')
    p.set_defaults(handler=cmd_calibrate)

    p = sub.add_parser('cache', help='cached sweep results; CSV columns: kind, entries, stale, size_bytes')
    p.add_argument('--clear', nargs='?', const='all', choices=['all', *CACHED_KINDS],
                   help='delete cached results of one kind (default: all)')
    p.set_defaults(handler=cmd_cache)

    p = sub.add_parser('verify', help='run the configured verification sweeps')
    p.add_argument('--only', help='comma separated subset of checks')
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig.from_yaml(args.config).with_overrides(
            seed=args.seed,
            output_format=args.output_format,
            precision=args.precision,
            use_cache=False if args.no_cache else None,
            log_level='DEBUG' if args.verbose else None
        ).validate()
        set_global_level(config.log_level)
        if args.command == 'build' and args.delta is None and not args.L_seq:
            raise ToolkitError("build needs --delta or a toy schedule")
        report = args.handler(args, config)
    except ToolkitError as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    write_report(report, config.output_format, path=args.output, stream=sys.stdout)
    status = report.get('status') if isinstance(report, dict) else None
    return EXIT_FAILED if status == 'FAIL' else EXIT_OK

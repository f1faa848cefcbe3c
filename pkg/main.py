"""
spinbound 命令行入口

子命令：
- solve:    精确求解实例文件
- verify:   暴力枚举并与 solve 的结果比对 (n <= 26)
- convert:  QUBO / MaxCut / Ising 文件 -> Ising 稀疏文件或 JSON
- generate: 生成随机实例
- bench:    按清单批量运行，输出 CSV / JSON

退出码：0 最优 (或验证通过)，2 超时，1 错误。
"""
import argparse
import os
import sys
from dataclasses import replace
from typing import Dict, List, Optional

from bench.bench import (ManifestError, fit_exponent, load_manifest, median_nodes, run_bench, to_frame, write_csv,
                         write_json)
from const.const import ExitCode, ProblemKind, Sense, SolveStatus
from instance.errors import InstanceError
from instance.generator import generate_random
from instance.parser import format_instance, read_instance, to_ising, write_instance
from solver.brute import OracleSizeError, brute_force
from solver.config import SolverConfig, SolverConfigError
from solver.solver import solve
from utils import Logger, dump_json, format_number
from utils.config_yaml import ConfigYaml

logger = Logger.get_logger()


def build_parser() -> argparse.ArgumentParser:
    """命令行参数"""
    parser = argparse.ArgumentParser(description='spinbound: 精确分支定界求解 QUBO / Ising / MaxCut')
    parser.add_argument('--path', type=str, default='config/', help='配置文件路径')
    parser.add_argument('--custom', type=str, default='default', help='自定义配置文件名，如 custom-default.yaml')
    parser.add_argument('--log-level', type=str, default=None, help='日志级别 DEBUG/INFO/WARNING/ERROR')
    sub = parser.add_subparsers(dest='command', required=True)

    def solver_flags(p: argparse.ArgumentParser):
        p.add_argument('--threads', type=int, default=None, help='线程数 (2 的幂)')
        p.add_argument('--kmin', type=int, default=None, help='顶部使用 KH 根界的层数')
        p.add_argument('--frontier-limit', type=int, default=None, help='BFS 前沿上限')
        p.add_argument('--time-limit', type=float, default=None, help='时间限制(秒)')
        p.add_argument('--no-reorder', action='store_true', help='关闭变量重排序')
        p.add_argument('--field-mode', choices=['keep', 'omit'], default=None, help='局部场模式')
        p.add_argument('--bound', choices=['hdk', 'kh'], default=None, help='对偶界类型')
        p.add_argument('--seed', type=int, default=None, help='随机种子 (默认 SPINBOUND_SEED 或配置)')

    def instance_flags(p: argparse.ArgumentParser):
        p.add_argument('instance', type=str, help='实例文件')
        p.add_argument('--kind', choices=[k.value for k in ProblemKind], default='qubo', help='实例类型')
        p.add_argument('--sense', choices=[s.value for s in Sense], default=None,
                       help='优化方向 (默认 maxcut 为 max，其余为 min)')

    p = sub.add_parser('solve', help='精确求解')
    instance_flags(p)
    solver_flags(p)
    p.add_argument('--json', action='store_true', help='输出 JSON 报告')
    p.add_argument('--dump-order', action='store_true', help='输出变量顺序')
    p.add_argument('--dump-table', action='store_true', help='报告中附带 E 表')

    p = sub.add_parser('verify', help='暴力枚举验证')
    instance_flags(p)
    solver_flags(p)

    p = sub.add_parser('convert', help='转换为 Ising 稀疏文件或 JSON')
    instance_flags(p)
    p.add_argument('--to', choices=['ising', 'json'], default='ising', help='输出格式')
    p.add_argument('--out', type=str, default=None, help='输出文件 (默认标准输出)')

    p = sub.add_parser('generate', help='生成随机实例')
    p.add_argument('--class', dest='cls', choices=['sk', 'uniform', 'grid2d', 'grid3d'], default='uniform')
    p.add_argument('--n', type=int, required=True, help='自旋数')
    p.add_argument('--density', type=float, default=1.0, help='边密度 (uniform)')
    p.add_argument('--seed', type=int, default=0, help='随机种子')
    p.add_argument('--out', type=str, default=None, help='输出文件 (默认标准输出)')

    p = sub.add_parser('bench', help='批量基准测试')
    p.add_argument('manifest', type=str, help='YAML 清单')
    solver_flags(p)
    p.add_argument('--csv', type=str, default=None, help='CSV 输出')
    p.add_argument('--json', dest='json_out', type=str, default=None, help='JSON 输出')
    p.add_argument('--parallel-instances', type=int, default=None, help='并行实例数')
    p.add_argument('--fit-exponent', action='store_true', help='拟合 log2(nodes) 对 n 的斜率 (SK 实例)')
    return parser


def solver_config(args: argparse.Namespace, config: Dict) -> SolverConfig:
    """配置文件 + 命令行覆盖"""
    overrides = {
        'threads': args.threads,
        'k_min': args.kmin,
        'frontier_limit': args.frontier_limit,
        'time_limit_s': args.time_limit,
        'field_mode': args.field_mode,
        'bound': args.bound,
        'seed': args.seed,
    }
    if args.no_reorder:
        overrides['reorder'] = False
    return SolverConfig.from_config(config.get('solver'), **overrides)


def instance_path(path: str, config: Dict) -> str:
    """
    实例文件路径：当前目录下不存在的相对路径到配置的 instance_dir 下查找

    Args:
        path: 命令行给出的路径
        config: 完整配置

    Returns:
        str: 找到的路径，都不存在时原样返回
    """
    if os.path.isabs(path) or os.path.exists(path):
        return path
    folder = config.get('instance_dir')
    if folder:
        candidate = os.path.join(folder, path)
        if os.path.exists(candidate):
            logger.debug(f"Resolved {path} to {candidate}")
            return candidate
    return path


def load(args: argparse.Namespace, config: Dict):
    """读取实例 (maxcut 默认求最大割，QUBO 与 Ising 默认求最小)"""
    sense = args.sense or ('max' if args.kind == ProblemKind.MAXCUT.value else 'min')
    return read_instance(instance_path(args.instance, config), args.kind, sense)


def exit_code(status: SolveStatus) -> int:
    if status is SolveStatus.OPTIMAL:
        return ExitCode.Ok
    if status is SolveStatus.TIMEOUT:
        return ExitCode.Timeout
    return ExitCode.Error


def cmd_solve(args: argparse.Namespace, config: Dict) -> int:
    """求解并输出报告"""
    cfg = solver_config(args, config)
    report = solve(load(args, config), cfg, with_table=args.dump_table)
    if args.json:
        print(dump_json(report.to_dict()))
    else:
        print(report.summary_line())
        if report.optimum is not None:
            print(f"optimum: {format_number(report.optimum)}")
        if args.dump_order:
            print("order: " + " ".join(str(v) for v in report.permutation))
    if report.message:
        logger.error(report.message)
    return exit_code(report.status)


def cmd_verify(args: argparse.Namespace, config: Dict) -> int:
    """暴力枚举的最优值与 solve 比对"""
    cfg = solver_config(args, config)
    inst = load(args, config)
    ising = to_ising(inst)
    raw, _ = brute_force(ising, jobs=cfg.threads)
    truth = ising.objective_of(raw)
    report = solve(inst, replace(cfg, time_limit_s=None))
    print(f"brute force: {format_number(truth)}")
    print(f"solver:      {format_number(report.optimum) if report.optimum is not None else '-'} "
          f"({report.status.value})")
    if report.optimal and report.optimum == truth:
        print("verified")
        return ExitCode.Ok
    logger.error(f"Verification failed: brute force {truth}, solver {report.optimum}")
    return ExitCode.Error


def cmd_convert(args: argparse.Namespace, config: Dict) -> int:
    """转换为内部最小化形式的 Ising 模型"""
    ising = to_ising(load(args, config))
    plain = replace(ising, kind=ProblemKind.ISING, sense=Sense.MIN, objective_map=None)
    text = dump_json(plain.to_dict()) + "\n" if args.to == 'json' else format_instance(plain)
    if args.out:
        with open(args.out, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info(f"Wrote {args.to} to {args.out}")
    else:
        sys.stdout.write(text)
    return ExitCode.Ok


def cmd_generate(args: argparse.Namespace, config: Dict) -> int:
    """生成随机实例"""
    inst = generate_random(args.n, args.cls, args.density, args.seed)
    if args.out:
        write_instance(inst, args.out)
    else:
        sys.stdout.write(format_instance(inst))
    return ExitCode.Ok


def cmd_bench(args: argparse.Namespace, config: Dict) -> int:
    """批量运行"""
    entries, overrides = load_manifest(args.manifest)
    solver = dict(config.get('solver') or {})
    solver.update(overrides)
    cfg = solver_config(args, {'solver': solver})
    bench = config.get('bench') or {}
    parallel = args.parallel_instances or int(bench.get('parallel_instances', 1))

    rows = run_bench(entries, cfg, parallel)
    write_csv(rows, args.csv or bench.get('csv', 'storage/bench/bench.csv'))
    write_json(rows, args.json_out or bench.get('json', 'storage/bench/bench.json'))
    if rows:
        print(to_frame(rows).to_string(index=False))
        for n, nodes in median_nodes(rows).items():
            print(f"n={n} median nodes={nodes:g} ({cfg.bound.value})")

    if args.fit_exponent:
        try:
            fit = fit_exponent(rows)
        except ValueError as e:
            logger.error(f"Exponent fit failed: {e}")
            return ExitCode.Error
        print(f"fitted exponent: nodes ~ 2^({fit['slope']:.4f} n {fit['intercept']:+.4f}), "
              f"r={fit['rvalue']:.4f}, rows={fit['count']}")
    return ExitCode.Ok


COMMANDS = {
    'solve': cmd_solve,
    'verify': cmd_verify,
    'convert': cmd_convert,
    'generate': cmd_generate,
    'bench': cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    """主程序入口"""
    args = build_parser().parse_args(argv)

    # 加载配置
    ConfigYaml.reset()
    config = ConfigYaml(args.path, args.custom).all()
    log = config.get('log') or {}
    Logger.configure(args.log_level or log.get('level', 'INFO'), log.get('log_dir'))
    logger.debug(f"Loaded config from path: {args.path} custom: {args.custom}")

    try:
        return COMMANDS[args.command](args, config)
    except (InstanceError, ManifestError, SolverConfigError, OracleSizeError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        return ExitCode.Error


if __name__ == "__main__":
    sys.exit(main())

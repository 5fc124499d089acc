# -*- coding: utf-8 -*-
import argparse
import os
import sys

from config import EXIT_CODES, get_config_for_environment

# Import SystemChecker for startup validation
from services.system_checker import SystemChecker
from services.logging_config import get_logger, setup_logging

from services.config_validator import ConfigValidator
from services.exceptions import (
    ConfigurationError, ConvergenceError, NonFiniteError, SingularMetricError, WarpSolError
)
from services.run_config import RunConfig, apply_overrides, load_run_config, run_config_from_dict
from services.runner import oracle_run, sample_run, verify_run
from services.solutions import presets

# Initialize logger
logger = get_logger(__name__)

# Numerical failures are residual failures; everything else raised before a report exists is a setup problem
NUMERICAL_ERRORS = (ConvergenceError, NonFiniteError, SingularMetricError)


def _say(args, text: str):
    if not getattr(args, "quiet", False):
        print(text)


def _print_error(error: WarpSolError):
    print(f"\n[ERROR] {error.message}")
    print(f"   Codigo de error: {error.error_code}")
    for key, value in error.details.items():
        print(f"   - {key}: {value}")


def load_run(args) -> RunConfig:
    """Run configuration from --config or --preset, with command-line overrides applied."""
    if args.config and args.preset:
        raise ConfigurationError("Use either --config or --preset, not both")
    if args.config:
        run = load_run_config(args.config)
    elif args.preset:
        run = run_config_from_dict({'family': {'name': f"preset:{args.preset}"}})
    else:
        raise ConfigurationError("A run configuration is required: pass --config <path> or --preset <name>")
    return apply_overrides(run, args.tolerance, args.fd_step, args.out, args.format)


def cmd_verify(args) -> int:
    """
    Verifica los residuos de la familia configurada y escribe el reporte.
    """
    run = load_run(args)
    logger.info(f"Executing verify command: family={run.family}, preset={run.preset}")
    report = verify_run(run)

    status = "[OK]" if report.verdict == "pass" else "[FAIL]"
    _say(args, f"\n{status} verify: {report.message}")
    for name, entry in report.equations.items():
        _say(args, f"   - {name}: max {entry['max_abs']:.3e}, rms {entry['rms']:.3e} "
                   f"(tolerance {entry['tolerance']:.1e})")
    for name, entry in report.checks.items():
        _say(args, f"   - {name}: {entry['message']}")
    if report.oracle is not None:
        _say(args, f"   - oracle: residual {report.oracle['max_residual']:.3e}, "
                   f"order {report.oracle['fitted_order'] or report.oracle['order_status']}")
    for note in report.notes:
        _say(args, f"   Nota: {note}")
    if report.error is not None:
        print(f"\n[ERROR] {report.error['message']}")
        print(f"   Codigo de error: {report.error['error_code']}")
    _say(args, f"   Reporte: {report.data['report']}")
    return EXIT_CODES["pass"] if report.verdict == "pass" else EXIT_CODES["fail"]


def cmd_sample(args) -> int:
    """
    Tabula los perfiles (phi, f, h) y sus derivadas.
    """
    run = load_run(args)
    logger.info(f"Executing sample command: family={run.family}, samples={run.grid.samples}")
    result = sample_run(run)
    _say(args, f"\n[OK] {result.rows} filas escritas en {result.table_path}")
    _say(args, f"   - Columnas: {', '.join(result.columns)}")
    for note in result.data['notes']:
        _say(args, f"   Nota: {note}")
    return EXIT_CODES["pass"]


def cmd_oracle(args) -> int:
    """
    Estudio de convergencia del oraculo de diferencias finitas.
    """
    run = load_run(args)
    logger.info(f"Executing oracle command: family={run.family}, steps={run.oracle.steps}")
    report = oracle_run(run)

    status = "[OK]" if report.verdict == "pass" else "[FAIL]"
    _say(args, f"\n{status} oracle: {report.message}")
    if report.oracle is not None:
        for row in report.oracle['steps']:
            _say(args, f"   - step {row['step']:.1e}: residual {row['max_residual']:.3e}, "
                       f"gap {row['max_gap']:.3e}")
        order = report.oracle['fitted_order']
        _say(args, f"   - order: {report.oracle['order_status'] if order is None else f'{order:.3f}'}")
        _say(args, f"   - extrapolated residual: {report.oracle['extrapolated_residual']:.3e}")
    if report.error is not None:
        print(f"\n[ERROR] {report.error['message']}")
        print(f"   Codigo de error: {report.error['error_code']}")
    _say(args, f"   Reporte: {report.data['report']}")
    return EXIT_CODES["pass"] if report.verdict == "pass" else EXIT_CODES["fail"]


def cmd_presets(args) -> int:
    """
    Lista los presets o escribe la configuracion de uno de ellos.
    """
    catalog = presets()
    if args.name is None:
        for preset in catalog.values():
            print(f"{preset.name:<24} {preset.family:<6} n={preset.n} m={preset.m}  {preset.description}")
        return EXIT_CODES["pass"]

    if args.name not in catalog:
        print(f"\n[ERROR] Preset desconocido: {args.name}")
        print(f"   Disponibles: {', '.join(catalog)}")
        return EXIT_CODES["config_error"]
    doc = catalog[args.name].to_config()
    path = os.path.join(args.out or ".", f"{args.name}.json")
    result = ConfigValidator().save_validated_config(doc, path)
    if not result.success:
        print(f"\n[ERROR] {result.message}")
        return EXIT_CODES["config_error"]
    _say(args, f"\n[OK] Configuracion del preset escrita en {path}")
    return EXIT_CODES["pass"]


# --- CONFIGURACIÓN DE ARGUMENTOS ---
common = argparse.ArgumentParser(add_help=False)
common.add_argument("--config", type=str, help="Archivo JSON de configuracion (o un reporte previo).")
common.add_argument("--preset", type=str, help="Nombre de un preset en lugar de --config.")
common.add_argument("--out", type=str, help="Directorio de salida.")
common.add_argument("--format", type=str, choices=["csv", "json"], help="Formato de las tablas.")
common.add_argument("--tolerance", type=float, help="Tolerancia que reemplaza a las del archivo.")
common.add_argument("--fd-step", dest="fd_step", type=float, help="Paso de diferencias finitas.")
common.add_argument("--quiet", action="store_true", help="Solo advertencias y errores en consola.")

parser = argparse.ArgumentParser(
    prog="WARPSOL",
    description="Verificacion numerica de solitones de Ricci gradiente en productos warped."
)
subparsers = parser.add_subparsers(dest="comando", required=True, help="Comandos disponibles")

parser_verify = subparsers.add_parser("verify", parents=[common], help="Verifica los residuos y escribe un reporte.")
parser_verify.set_defaults(handler=cmd_verify)

parser_sample = subparsers.add_parser("sample", parents=[common], help="Tabula los perfiles en la grilla de xi.")
parser_sample.set_defaults(handler=cmd_sample)

parser_oracle = subparsers.add_parser("oracle", parents=[common], help="Estudio de convergencia del oraculo FD.")
parser_oracle.set_defaults(handler=cmd_oracle)

parser_presets = subparsers.add_parser("presets", help="Lista los presets o exporta uno.")
parser_presets.add_argument("--name", type=str, help="Preset a exportar.")
parser_presets.add_argument("--out", type=str, help="Directorio donde escribir <name>.json.")
parser_presets.add_argument("--quiet", action="store_true", help="Solo advertencias y errores en consola.")
parser_presets.set_defaults(handler=cmd_presets)


def main(argv=None) -> int:
    args = parser.parse_args(argv)

    logging_config = get_config_for_environment()["logging"]
    setup_logging(
        log_level=logging_config["file_level"],
        console_level="WARNING" if args.quiet else logging_config["console_level"],
        log_dir=logging_config["log_dir"],
        max_file_size=logging_config["max_file_size"],
        backup_count=logging_config["backup_count"]
    )

    # Perform startup system validation
    logger.info("Starting WARPSOL CLI application")
    startup_result = SystemChecker().validate_startup_requirements(getattr(args, "out", None))
    if not startup_result.success:
        logger.error(f"Startup validation failed: {startup_result.message}")
        if startup_result.missing_dependencies:
            print("[ERROR] Missing system dependencies detected:")
            for dep in startup_result.missing_dependencies:
                print(f"  - {dep}")
                if startup_result.installation_instructions and dep in startup_result.installation_instructions:
                    print(f"    Installation: {startup_result.installation_instructions[dep]}")
        else:
            print(f"[ERROR] Configuration issues detected: {startup_result.message}")
        return EXIT_CODES["config_error"]

    try:
        logger.info(f"Executing {args.comando} command")
        return args.handler(args)

    except NUMERICAL_ERRORS as e:
        logger.error(f"Numerical failure in '{args.comando}': {e}")
        _print_error(e)
        return EXIT_CODES["fail"]
    except WarpSolError as e:
        logger.error(f"Setup error in '{args.comando}': {e}", extra={'error_code': e.error_code})
        _print_error(e)
        return EXIT_CODES["config_error"]
    except KeyboardInterrupt:
        logger.info("Command execution interrupted by user")
        print("\n[INFO] Operacion interrumpida por el usuario")
        return EXIT_CODES["fail"]
    except Exception as e:
        logger.error(f"Error executing command '{args.comando}': {e}", exc_info=True)
        print(f"\n[ERROR] Error ejecutando comando '{args.comando}': {e}")
        return EXIT_CODES["fail"]


# --- LÓGICA PRINCIPAL ---
if __name__ == "__main__":
    sys.exit(main())

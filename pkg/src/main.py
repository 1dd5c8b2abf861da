"""Point d'entrée : mesures d'impact, courbes de bundles, ingestion, convergence, classification."""
import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel, ValidationError, field_validator, model_validator

from src.bundles.curves import POSITIVE_KINDS, BundleSpec, bundle_curve, measure_at
from src.bundles.exotic import StepFSpec
from src.config import (
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_PHI_MAX,
    DEFAULT_THETA_COUNT,
    DEFAULT_THETA_MAX,
    DEFAULT_THETA_MIN,
    EPS_UNIFORM,
    FUNCTIONS_DIR,
    REPORTS_DIR,
    SIGNIFICANT_DIGITS,
)
from src.convergence.classification import classify, format_table
from src.convergence.reports import ConvergenceReport
from src.convergence.runner import function_convergence, measure_convergence
from src.convergence.scenarios import run_scenarios
from src.funcspace.families import Figure1, PowerComplementSeq, StepApproach
from src.funcspace.models import GridSpec
from src.funcspace.operations import from_citations
from src.measures.impact import ped_measure
from src.utils.data_utils import read_citations_csv, save_frame_csv, save_function_spec, save_json
from src.utils.errors import ImpactError, NotAdmissible, SpecParseError
from src.utils.parsing import (
    load_json_argument,
    parse_constant_rule,
    parse_family_spec,
    parse_fspec,
    parse_function_spec,
)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NOT_ADMISSIBLE = 2
EXIT_SCENARIO_FAILURE = 3

MEASURE_KINDS = ("I", "mu", "P", "h", "g", "kosmulski", "ped", "R", "polar", "mf", "m")
FAMILIES = ("power_complement", "constants", "figure1", "step_approach", "user")


class RunConfig(BaseModel):
    """Configuration d'une exécution : drapeaux > fichier --config > défauts de src/config.py."""

    command: Literal["measure", "bundle", "ingest", "converge", "classify"]
    fn: Optional[str] = None
    kind: Optional[str] = None
    theta: Optional[float] = None
    phi: Optional[float] = None
    p: Optional[float] = None
    f: Optional[Any] = None
    step: Optional[Any] = None
    grid_min: float = DEFAULT_THETA_MIN
    grid_max: Optional[float] = None
    grid_count: int = DEFAULT_THETA_COUNT
    spacing: Literal["linear", "log"] = "log"
    output_format: Literal["csv", "json"] = DEFAULT_OUTPUT_FORMAT
    out: Optional[Path] = None
    csv: Optional[Path] = None
    tail: Literal["hold", "zero"] = "hold"
    family: Optional[Literal["power_complement", "constants", "figure1", "step_approach", "user"]] = None
    an: str = "1/n"
    S: float = 1.0
    T: float = 1.0
    family_file: Optional[str] = None
    boundary_probes: Optional[bool] = None
    n_list: Optional[List[int]] = None
    eps_u: float = EPS_UNIFORM
    method: Literal["auto", "bisection"] = "auto"
    json_out: Optional[Path] = None
    quiet: bool = False

    @field_validator("n_list", mode="before")
    @classmethod
    def _split_n_list(cls, value):
        if isinstance(value, str):
            return [int(v) for v in value.replace(" ", "").split(",") if v]
        return value

    @model_validator(mode="after")
    def _check_grid(self) -> "RunConfig":
        if self.grid_count < 2:
            raise ValueError("grid_count doit être >= 2")
        if self.kind in POSITIVE_KINDS and self.grid_min <= 0:
            raise ValueError(f"grid_min doit être > 0 pour le bundle {self.kind}")
        return self

    def grid(self) -> GridSpec:
        stop = self.grid_max
        if stop is None:
            stop = DEFAULT_PHI_MAX if self.kind == "polar" else DEFAULT_THETA_MAX
        return GridSpec(start=self.grid_min, stop=stop, count=self.grid_count, spacing=self.spacing)

    def bundle(self) -> BundleSpec:
        step = None
        if self.step is not None:
            raw = self.step if isinstance(self.step, dict) else load_json_argument(self.step)
            step = StepFSpec.model_validate(raw)
        return BundleSpec(kind=self.kind, p=self.p, step=step)


def format_value(value: float) -> str:
    """Valeur à SIGNIFICANT_DIGITS chiffres significatifs : 2.0, 0.666666666667."""
    return repr(float(f"{value:.{SIGNIFICANT_DIGITS}g}"))


def _require(value, flag: str):
    if value is None:
        raise SpecParseError(f"{flag} est requis")
    return value


# --- Commandes -------------------------------------------------------------------


def cmd_measure(cfg: RunConfig) -> int:
    F = parse_function_spec(_require(cfg.fn, "--fn"))
    kind = _require(cfg.kind, "--kind")
    if kind == "ped":
        value = ped_measure(F, parse_fspec(_require(cfg.f, "--f")), method=cfg.method)
    elif kind == "polar":
        value = measure_at(F, cfg.bundle(), _require(cfg.phi, "--phi"), method=cfg.method)
    else:
        value = measure_at(F, cfg.bundle(), _require(cfg.theta, "--theta"), method=cfg.method)
    print(format_value(value))
    return EXIT_OK


def cmd_bundle(cfg: RunConfig) -> int:
    F = parse_function_spec(_require(cfg.fn, "--fn"))
    bundle = cfg.bundle()
    curve = bundle_curve(F, bundle, cfg.grid(), method=cfg.method)
    out = cfg.out or REPORTS_DIR / f"bundle_{bundle.kind}.{cfg.output_format}"
    if cfg.output_format == "json":
        save_json(curve.model_dump(mode="json"), out)
    else:
        save_frame_csv(curve.to_frame(), out)
    n_ok = sum(curve.admissible)
    print(f"[OK] Courbe {curve.measure} : {n_ok}/{len(curve.thetas)} θ admissibles, θ₀ = {format_value(curve.theta0)}")
    print(f"[OK] Écrit : {out}")
    return EXIT_OK


def cmd_ingest(cfg: RunConfig) -> int:
    path = Path(_require(cfg.csv, "--csv"))
    counts, already_sorted = read_citations_csv(path)
    if not already_sorted:
        print("[WARNING] Comptes non triés : tri par ordre décroissant appliqué")
    model = from_citations(counts, tail=cfg.tail)
    out = cfg.out or FUNCTIONS_DIR / f"{path.stem}.json"
    save_function_spec(model, out)
    print(f"[OK] N = {len(counts)}, c₁ = {max(counts)}")
    print(f"[OK] Spécification écrite : {out}")
    return EXIT_OK


def _family(cfg: RunConfig):
    family = _require(cfg.family, "--family")
    if family == "power_complement":
        return PowerComplementSeq()
    if family == "constants":
        return parse_constant_rule(cfg.an, T=cfg.T)
    if family == "figure1":
        return Figure1(S=cfg.S, T=cfg.T)
    if family == "step_approach":
        return StepApproach(T=cfg.T, x0=cfg.T / 2)
    spec = parse_family_spec(_require(cfg.family_file, "--family-file"))
    if spec.kind != "user":
        raise SpecParseError(f"--family-file doit décrire une famille 'user' (reçu {spec.kind!r})")
    return spec


def _write_report(report: ConvergenceReport, cfg: RunConfig, stem: str) -> Path:
    out = cfg.out or REPORTS_DIR / f"{stem}.{cfg.output_format}"
    if cfg.output_format == "json":
        save_json(report.model_dump(mode="json"), out)
    else:
        save_frame_csv(report.to_long_frame(scenario=stem), out)
    return out


def cmd_converge(cfg: RunConfig) -> int:
    spec = _family(cfg)
    kind = cfg.kind or "function"
    if kind == "function":
        report = function_convergence(spec, n_list=cfg.n_list, eps_u=cfg.eps_u)
    else:
        report = measure_convergence(
            spec,
            cfg.bundle(),
            cfg.grid(),
            n_list=cfg.n_list,
            boundary_probes=cfg.boundary_probes,
            eps_u=cfg.eps_u,
            method=cfg.method,
        )
    out = _write_report(report, cfg, f"converge_{cfg.family}_{kind}")
    for note in report.notes:
        print(f"[WARNING] {note}")
    last = report.sup_errors[-1] if report.sup_errors else None
    print(f"     n = {report.n_list}")
    print(f"     sup au plus grand n : {'-' if last is None else format_value(last)}")
    if report.rate is not None:
        print(f"     pente log-log : {report.rate:.3f}")
    print(f"[OK] Verdict : {report.verdict.value}")
    print(f"[OK] Écrit : {out}")
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    print("\n" + "=" * 60)
    print("SCÉNARIOS DE CONVERGENCE ET CLASSIFICATION DES BUNDLES")
    print("=" * 60 + "\n")

    print("[1/2] Exécution des scénarios...")
    results = run_scenarios(verbose=not cfg.quiet)
    for r in results:
        tag = "[OK]" if r.passed else "[ERROR]"
        print(f"  {tag} {r.scenario_id} - {r.title}" + (f" ({r.error})" if r.error else ""))
        if r.passed and not r.reproduces_expected:
            print(f"  [WARNING] {r.scenario_id} : les mesures ne reproduisent pas « {r.expected} »")

    print("\n[2/2] Classification...")
    rows = classify(results)
    print(format_table(rows))

    if cfg.json_out:
        save_json(
            {
                "scenarios": [r.model_dump(mode="json") for r in results],
                "classification": [row.model_dump(mode="json") for row in rows],
            },
            cfg.json_out,
        )
        print(f"\n[OK] Écrit : {cfg.json_out}")

    failures = [r.scenario_id for r in results if not r.passed]
    print("\n" + "=" * 60)
    if failures:
        print(f"[ERROR] Scénarios en échec : {', '.join(failures)}")
        return EXIT_SCENARIO_FAILURE
    print(f"[OK] {len(results)} scénarios réussis")
    return EXIT_OK


COMMANDS = {
    "measure": cmd_measure,
    "bundle": cmd_bundle,
    "ingest": cmd_ingest,
    "converge": cmd_converge,
    "classify": cmd_classify,
}


# --- Arguments -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # Défauts SUPPRESS : seuls les drapeaux fournis écrasent le fichier --config
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="fichier JSON de configuration (champs de RunConfig)")
    common.add_argument("--out", type=Path, help="fichier de sortie")
    common.add_argument("--format", dest="output_format", choices=("csv", "json"))
    common.add_argument("--method", choices=("auto", "bisection"))

    function = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    function.add_argument("--fn", help="spécification de fonction : chemin JSON ou JSON inline")

    params = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    params.add_argument("--kind", choices=MEASURE_KINDS)
    params.add_argument("--p", type=float, help="exposant (kosmulski)")
    params.add_argument("--step", help="fonction en escalier {c, low, high} pour mf (chemin ou JSON)")

    grid = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    grid.add_argument("--grid-min", type=float)
    grid.add_argument("--grid-max", type=float)
    grid.add_argument("--grid-count", type=int)
    grid.add_argument("--spacing", choices=("linear", "log"))

    parser = argparse.ArgumentParser(
        prog="python -m src.main",
        description="Mesures d'impact généralisées et harnais de convergence",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    measure = sub.add_parser("measure", parents=[common, function, params], help="une mesure à paramètre fixé")
    measure.add_argument("--theta", type=float, default=argparse.SUPPRESS)
    measure.add_argument("--phi", type=float, default=argparse.SUPPRESS, help="angle (polar)")
    measure.add_argument("--f", default=argparse.SUPPRESS, help="fonction de comparaison (ped)")

    sub.add_parser("bundle", parents=[common, function, params, grid], help="courbe θ -> m_θ(Z)")

    ingest = sub.add_parser("ingest", parents=[common], help="CSV de citations -> fonction JSON")
    ingest.add_argument("--csv", type=Path, default=argparse.SUPPRESS)
    ingest.add_argument("--tail", choices=("hold", "zero"), default=argparse.SUPPRESS)

    converge = sub.add_parser("converge", parents=[common, params, grid], help="convergence d'une famille")
    converge.add_argument("--family", choices=FAMILIES, default=argparse.SUPPRESS)
    converge.add_argument("--an", default=argparse.SUPPRESS, help="règle a_n = a + c/n^p (constants)")
    converge.add_argument("--S", type=float, default=argparse.SUPPRESS)
    converge.add_argument("--T", type=float, default=argparse.SUPPRESS)
    converge.add_argument("--family-file", default=argparse.SUPPRESS)
    converge.add_argument("--boundary-probes", action=argparse.BooleanOptionalAction, default=argparse.SUPPRESS)
    converge.add_argument("--n-list", default=argparse.SUPPRESS, help="ex. 3,10,100")
    converge.add_argument("--eps-u", type=float, default=argparse.SUPPRESS)

    classify_parser = sub.add_parser("classify", parents=[common], help="scénarios + tableau PC/PC*/UC")
    classify_parser.add_argument("--json", dest="json_out", type=Path, default=argparse.SUPPRESS)
    classify_parser.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    return parser


def load_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    merged: Dict[str, Any] = {}
    config_path = args.pop("config", None)
    if config_path:
        data = load_json_argument(config_path)
        if not isinstance(data, dict):
            raise SpecParseError("--config doit contenir un objet JSON")
        merged.update(data)
    merged.update(args)
    return RunConfig(**merged)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = load_config(argv)
    except SystemExit as e:
        # argparse : --help -> 0, usage invalide -> 1
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT_ERROR
    except (ImpactError, ValidationError) as e:
        print(f"[ERROR] {e}")
        return EXIT_INPUT_ERROR

    try:
        return COMMANDS[cfg.command](cfg)
    except NotAdmissible as e:
        print(f"[ERROR] Non admissible : {e}")
        if e.theta0 is not None:
            print(f"        θ₀ = {format_value(e.theta0)} (choisir θ >= θ₀)")
        return EXIT_NOT_ADMISSIBLE
    except (ImpactError, ValidationError) as e:
        print(f"[ERROR] {e}")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())

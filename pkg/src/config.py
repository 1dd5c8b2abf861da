"""Configuration globale du projet (chemins, tolérances numériques, défauts du harnais)."""
import os
from pathlib import Path
from dotenv import load_dotenv

load_dotenv()

# Paths
REPO_ROOT = Path(__file__).resolve().parents[1]
DATA_DIR = REPO_ROOT / "DATA"
RAW_DIR = DATA_DIR / "raw"
FUNCTIONS_DIR = DATA_DIR / "functions"
PROCESSED_DIR = DATA_DIR / "processed"
REPORTS_DIR = PROCESSED_DIR / "reports"

# Solveurs (bissection, tolérance relative sur le résidu)
BISECTION_RTOL = float(os.getenv("IMPACT_BISECTION_RTOL", "1e-12"))
MAX_ITER = int(os.getenv("IMPACT_MAX_ITER", "200"))

# Admissibilité : marge absolue tolérée sur Z(T) <= θT et Y(T) <= θT²
ADMISSIBILITY_ATOL = float(os.getenv("IMPACT_ADMISSIBILITY_ATOL", "1e-12"))

# Harnais de convergence
EPS_UNIFORM = float(os.getenv("IMPACT_EPS_UNIFORM", "1e-3"))
PROBE_DELTA = float(os.getenv("IMPACT_PROBE_DELTA", "1e-3"))
JUMP_PROBE = float(os.getenv("IMPACT_JUMP_PROBE", "1e-9"))
N_LIST = tuple(
    int(n) for n in os.getenv("IMPACT_N_LIST", "3,10,100,1000,10000").split(",")
)
N_LIST_HEAVY = tuple(n for n in N_LIST if n <= 1000)

# Grilles
DEFAULT_GRID_COUNT = int(os.getenv("IMPACT_DEFAULT_GRID_COUNT", "1001"))
DEFAULT_THETA_COUNT = int(os.getenv("IMPACT_DEFAULT_THETA_COUNT", "40"))
DEFAULT_THETA_MIN = float(os.getenv("IMPACT_DEFAULT_THETA_MIN", "0.2"))
DEFAULT_THETA_MAX = float(os.getenv("IMPACT_DEFAULT_THETA_MAX", "10"))
# polar : grille en angle φ, bornée sous π/2
DEFAULT_PHI_MAX = float(os.getenv("IMPACT_DEFAULT_PHI_MAX", "1.5"))

# Sorties CLI
SIGNIFICANT_DIGITS = int(os.getenv("IMPACT_SIGNIFICANT_DIGITS", "12"))
DEFAULT_OUTPUT_FORMAT = os.getenv("IMPACT_OUTPUT_FORMAT", "csv")  # csv or json

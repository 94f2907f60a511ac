"""
Configuration management for the quasi-Herglotz approximation toolkit
Loads environment variables and validates configuration
"""

import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Output locations
OUTPUT_DIR = os.getenv("QH_OUTPUT_DIR", "outputs")
RESULTS_DB_PATH = os.getenv("QH_RESULTS_DB", "solve_history.db")

# Cone solver
SOLVER = os.getenv("QH_SOLVER", "CLARABEL").upper()
SUPPORTED_SOLVERS = ("CLARABEL", "SCS", "ECOS")
SOLVER_TOL = float(os.getenv("QH_SOLVER_TOL", "1e-8"))
SOLVER_MAX_ITER = int(os.getenv("QH_SOLVER_MAX_ITER", "50000"))

# Norm discretization
SAMPLES_PER_CELL = int(os.getenv("QH_SAMPLES_PER_CELL", "8"))

# Sweeps (joblib n_jobs; 1 runs the points in-process)
SWEEP_JOBS = int(os.getenv("QH_SWEEP_JOBS", "1"))

# Plots written next to the CSV outputs
SAVE_PLOTS = os.getenv("QH_SAVE_PLOTS", "false").lower() in ("1", "true", "yes")
PLOT_DPI = 300

RESULT_TIME_FORMAT = "%Y%m%d_%H%M%S"  # Timestamp format for output folders


def validate_config():
    """Validate the configuration; raises ValueError listing every bad setting."""
    problems = []
    if SOLVER not in SUPPORTED_SOLVERS:
        problems.append(f"QH_SOLVER={SOLVER} (choose one of {', '.join(SUPPORTED_SOLVERS)})")
    if not 0 < SOLVER_TOL < 1:
        problems.append(f"QH_SOLVER_TOL={SOLVER_TOL} (must lie in (0, 1))")
    if SOLVER_MAX_ITER < 1:
        problems.append(f"QH_SOLVER_MAX_ITER={SOLVER_MAX_ITER} (must be positive)")
    if SAMPLES_PER_CELL < 2:
        problems.append(f"QH_SAMPLES_PER_CELL={SAMPLES_PER_CELL} (need at least 2)")
    if SWEEP_JOBS == 0:
        problems.append("QH_SWEEP_JOBS=0 (use a positive count or -1 for all cores)")

    if problems:
        raise ValueError(
            f"❌ Invalid configuration: {'; '.join(problems)}\n"
            f"Please check your .env file!"
        )

    print("✅ Configuration validated successfully!")
    return True


def print_config_summary():
    """Print configuration summary."""
    print("\n" + "="*60)
    print("📋 QUASI-HERGLOTZ APPROXIMATION CONFIGURATION")
    print("="*60)
    print(f"🧮 Solver: {SOLVER} (tol {SOLVER_TOL:g}, max {SOLVER_MAX_ITER} iterations)")
    print(f"📐 Samples per spline cell: {SAMPLES_PER_CELL}")
    print(f"⚙️  Sweep workers: {SWEEP_JOBS}")
    print(f"📁 Output Directory: {OUTPUT_DIR}")
    print(f"💾 Results Database: {RESULTS_DB_PATH}")
    print(f"📈 Plots: {'✅ Enabled' if SAVE_PLOTS else '➖ Disabled'}")
    print("="*60 + "\n")


if __name__ == "__main__":
    try:
        validate_config()
        print_config_summary()
    except Exception as e:
        print(f"\n❌ Configuration Error: {e}\n")
        exit(1)

"""
Convergence Study Script
Solves one preset for a growing number of basis functions and tabulates d_N
"""

import argparse
import os
import sys
from datetime import datetime
from pathlib import Path

# Add parent directory to Python path to import the toolkit
parent_dir = Path(__file__).parent.parent
sys.path.insert(0, str(parent_dir))

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

import config
from approx import convergence_study
from presets import PRESETS, get_preset
from scenario_io import scenario_from_dict


def run_study(preset, counts, length_scale=None):
    """Solve the preset for every N; returns the result frame or None"""
    print(f"🔬 Convergence study: {preset}")
    print("="*60)
    try:
        template = scenario_from_dict(get_preset(preset))
        if template.basis_spec is None:
            print(f"❌ {preset} has no spline basis to refine")
            return None
        df = convergence_study(template, counts, length_scale=length_scale, verbose=True)
        print(f"✅ Solved {int((df['status'] == 'optimal').sum())} of {len(df)} sizes")
        return df
    except Exception as e:
        print(f"❌ Error running convergence study: {e}")
        return None


def plot_study(df, preset, output_dir):
    """d_N and spacing versus N on log axes"""
    os.makedirs(output_dir, exist_ok=True)
    plt.style.use('seaborn-v0_8')
    fig, axes = plt.subplots(1, 2, figsize=(14, 5))

    axes[0].loglog(df['N'], df['error'], marker='o', linewidth=2, markersize=6)
    axes[0].set_title(f'Approximation error d_N - {preset}', fontsize=14, fontweight='bold')
    axes[0].set_xlabel('N')
    axes[0].set_ylabel('d_N')
    axes[0].grid(True, alpha=0.3)

    axes[1].loglog(df['N'], df['spacing'], marker='s', linewidth=2, markersize=6, color='#ff7f0e')
    axes[1].set_title('Breakpoint spacing', fontsize=14, fontweight='bold')
    axes[1].set_xlabel('N')
    axes[1].set_ylabel('δ')
    axes[1].grid(True, alpha=0.3)

    path = os.path.join(output_dir, f"{preset}_convergence.png")
    plt.tight_layout()
    plt.savefig(path, dpi=config.PLOT_DPI, bbox_inches='tight')
    plt.close()
    print(f"✅ Convergence plot saved: {path}")
    return path


def print_study(df):
    print("\n" + "="*60)
    print("📊 CONVERGENCE SUMMARY")
    print("="*60)
    for _, row in df.iterrows():
        mark = "✅" if row['status'] == 'optimal' else "❌"
        print(f"   {mark} N={row['N']:6d}  δ={row['spacing']:.3g}  d_N={row['error']:.6g}  "
              f"({row['seconds']:.1f}s)")
    print("="*60 + "\n")


def main():
    parser = argparse.ArgumentParser(description="d_N for growing spline bases")
    parser.add_argument("--preset", default="passive_5_1", choices=sorted(PRESETS))
    parser.add_argument("--counts", default="25,50,100,200,400",
                        help="Comma-separated basis sizes")
    parser.add_argument("--length-scale", dest="length_scale", type=float,
                        help="Support length is length_scale * sqrt(N)")
    args = parser.parse_args()

    counts = [int(c) for c in args.counts.split(",") if c.strip()]
    df = run_study(args.preset, counts, args.length_scale)
    if df is None:
        return 1

    stamp = datetime.now().strftime(config.RESULT_TIME_FORMAT)
    output_dir = os.path.join(config.OUTPUT_DIR, f"{args.preset}_convergence_{stamp}")
    os.makedirs(output_dir, exist_ok=True)
    csv_path = os.path.join(output_dir, "convergence.csv")
    df.to_csv(csv_path, index=False)
    print(f"💾 Table: {csv_path}")

    print_study(df)
    plot_study(df, args.preset, output_dir)
    return 0


if __name__ == "__main__":
    sys.exit(main())

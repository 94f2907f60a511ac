"""
Result plots: permittivity over Omega and sweep error curves
"""

import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import seaborn as sns

import config
from representation import permittivity


def plot_permittivity(result, output_dir, bound=None, padding=2.0):
    """Re/Im of eps = q/x around Omega with the eps_t +- Delta band; returns the PNG path."""
    scenario = result.scenario
    lo = min(a for a, _ in scenario.omega)
    hi = max(b for _, b in scenario.omega)
    width = hi - lo
    x = np.linspace(max(lo - padding * width, 1e-3), hi + padding * width, 1500)
    x = x[~np.isin(x, result.rep.mass_locations)]
    eps = permittivity(result.rep, x)

    os.makedirs(output_dir, exist_ok=True)
    plt.style.use('seaborn-v0_8')
    fig, axes = plt.subplots(1, 2, figsize=(14, 5))

    axes[0].plot(x, eps.real, linewidth=2, label='Re ε')
    axes[1].plot(x, eps.imag, linewidth=2, color='#ff7f0e', label='Im ε')
    eps_t = scenario.metadata.get("eps_t")
    for ax in axes:
        for a, b in scenario.omega:
            ax.axvspan(a, b, color='grey', alpha=0.15)
        ax.set_xlabel('normalized frequency x')
        ax.grid(True, alpha=0.3)
    if eps_t is not None and bound is not None:
        axes[0].axhline(eps_t + bound, color='k', linestyle='--', linewidth=1, label='ε_t ± Δ')
        axes[0].axhline(eps_t - bound, color='k', linestyle='--', linewidth=1)
        axes[0].set_ylim(eps_t - 6 * bound, eps_t + 6 * bound)
    axes[0].set_title(f'Re ε - {scenario.label}', fontsize=14, fontweight='bold')
    axes[1].set_title(f'Im ε - {scenario.label}', fontsize=14, fontweight='bold')
    axes[0].legend()
    axes[1].legend()

    path = os.path.join(output_dir, f"{scenario.label}_permittivity.png")
    plt.tight_layout()
    plt.savefig(path, dpi=config.PLOT_DPI, bbox_inches='tight')
    plt.close()
    return path


def plot_sweep(frame, axis, label, output_dir):
    """Error versus sweep axis, log scale; returns the PNG path."""
    os.makedirs(output_dir, exist_ok=True)
    plt.style.use('seaborn-v0_8')
    fig, ax = plt.subplots(figsize=(8, 5))
    ok = frame[frame['status'] == 'optimal']
    sns.lineplot(data=ok, x='value', y='error', marker='o', ax=ax)
    ax.set_yscale('log')
    ax.set_xlabel(axis)
    ax.set_ylabel('approximation error')
    ax.set_title(f'Error vs {axis} - {label}', fontsize=14, fontweight='bold')
    ax.grid(True, alpha=0.3)

    path = os.path.join(output_dir, f"{label}_sweep_{axis}.png")
    plt.tight_layout()
    plt.savefig(path, dpi=config.PLOT_DPI, bbox_inches='tight')
    plt.close()
    return path

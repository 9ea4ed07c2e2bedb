"""
PNG plots of grid values of T and of the gamma table
"""
import os
from typing import Optional

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from utils.logger import setup_logger

logger = setup_logger(__name__)

FIGSIZE = (10, 5)
DPI = 150


def _save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path, dpi=DPI, bbox_inches='tight')
    plt.close(fig)
    logger.info(f"Saved plot {path}")
    return path


def plot_grid_values(values: np.ndarray, delta: Optional[float], path: str, title: str = 'T on the grid') -> str:
    """T(i/G) against x with the -delta line"""
    values = np.asarray(values, dtype=float)
    x = np.arange(values.shape[0]) / values.shape[0]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(x, values, linewidth=0.6, color='#1e40af')
    if delta is not None:
        ax.axhline(-delta, color='#dc2626', linestyle='--', linewidth=1, label=f'-delta = {-delta:g}')
        ax.legend(loc='upper right')
    ax.axhline(0.0, color='#334155', linewidth=0.5)
    ax.set_xlabel('x')
    ax.set_ylabel('T(x)')
    ax.set_title(title)
    return _save(fig, path)


def plot_gamma_table(table: pd.DataFrame, path: str) -> str:
    """gamma(n) and gamma+(n) against n on a log axis"""
    fig, ax = plt.subplots(figsize=FIGSIZE)
    for column, label, color in (('gamma_free', 'free', '#059669'), ('gamma_nonneg', 'nonnegative', '#d97706')):
        series = pd.to_numeric(table[column], errors='coerce')
        if series.notna().any():
            ax.plot(table['n'], series, marker='o', label=label, color=color)
    ax.set_xscale('log')
    ax.set_xlabel('n')
    ax.set_ylabel('smallest a0')
    ax.set_title('Extremal free coefficient over square spectra')
    ax.legend()
    return _save(fig, path)

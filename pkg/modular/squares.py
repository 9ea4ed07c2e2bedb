"""
Perfect squares in Z/nZ and sets whose difference set avoids them
"""
from dataclasses import dataclass
from datetime import datetime
from math import isqrt
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np
import pandas as pd

from modular.modular_function import dft_matrix
from utils.errors import DomainError
from utils.logger import setup_logger, LogContext

logger = setup_logger(__name__)

EXHAUSTIVE_THRESHOLD = 24
DEFAULT_BUDGET = 2000


@dataclass(frozen=True)
class SquareSet:
    """alpha is a square mod n iff alpha = +-k^2 (mod n) for some k >= 1 with k^2 < n/2"""
    n: int
    members: FrozenSet[int]

    def __contains__(self, alpha: int) -> bool:
        return alpha % self.n in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> List[int]:
        return sorted(self.members)


@dataclass
class SquareFreeSet:
    """A subset of Z/nZ whose differences avoid the squares; optimal only in exact mode"""
    n: int
    size: int
    witness: Tuple[int, ...]
    optimal: bool
    nodes: int = 0


def squares_mod(n: int) -> SquareSet:
    if n < 2:
        raise DomainError(f"modulus must be at least 2, got {n}")
    members = set()
    for k in range(1, isqrt(n) + 1):
        # k^2 < n/2
        if 2 * k * k >= n:
            break
        members.add((k * k) % n)
        members.add((-k * k) % n)
    return SquareSet(n, frozenset(members))


def difference_set(n: int, members) -> FrozenSet[int]:
    return frozenset((a - b) % n for a in members for b in members)


def avoids_squares(n: int, members, squares: Optional[SquareSet] = None) -> bool:
    squares = squares if squares is not None else squares_mod(n)
    return difference_set(n, members).isdisjoint(squares.members)


def _exact_search(n: int, squares: SquareSet) -> Tuple[List[int], int]:
    """Branch and bound for a maximum independent set of the square Cayley graph, 0 fixed"""
    forbidden = squares.members
    candidates = [c for c in range(1, n) if c not in forbidden]
    best = [0]
    nodes = 0

    def extend(chosen: List[int], remaining: List[int]):
        nonlocal best, nodes
        nodes += 1
        if len(chosen) > len(best):
            best = list(chosen)
        for index, c in enumerate(remaining):
            if len(chosen) + len(remaining) - index <= len(best):
                return
            rest = [r for r in remaining[index + 1:] if (r - c) % n not in forbidden]
            chosen.append(c)
            extend(chosen, rest)
            chosen.pop()

    extend([0], candidates)
    return best, nodes


def _greedy_search(n: int, squares: SquareSet, budget: int, rng: np.random.Generator) -> Tuple[List[int], int]:
    """Randomized greedy restarts; each restart adds random compatible elements until none are left"""
    forbidden = squares.members
    best: List[int] = [0]
    for _ in range(budget):
        order = rng.permutation(n)
        chosen: List[int] = []
        for c in order:
            c = int(c)
            if all((c - a) % n not in forbidden for a in chosen):
                chosen.append(c)
        if len(chosen) > len(best):
            best = chosen
    return sorted(best), budget


def max_squarefree_set(n: int, budget: int = DEFAULT_BUDGET, exhaustive_threshold: int = EXHAUSTIVE_THRESHOLD,
                       seed: int = 0) -> SquareFreeSet:
    """
    Largest A in Z/nZ with (A - A) disjoint from the squares mod n.

    Exact by branch and bound for n <= exhaustive_threshold; beyond it the best
    set from `budget` greedy restarts is returned with optimal=False.
    """
    squares = squares_mod(n)
    if n <= exhaustive_threshold:
        with LogContext(logger, f"Exhaustive square-difference-free search n={n}"):
            witness, nodes = _exact_search(n, squares)
        optimal = True
    else:
        logger.info(f"n={n} above exhaustive threshold {exhaustive_threshold}, using {budget} greedy restarts")
        witness, nodes = _greedy_search(n, squares, budget, np.random.default_rng(seed))
        optimal = False

    if not avoids_squares(n, witness, squares):
        raise DomainError(f"search returned an invalid witness {witness} for n={n}")
    return SquareFreeSet(n=n, size=len(witness), witness=tuple(sorted(witness)), optimal=optimal, nodes=nodes)


def _autocorrelation_by_transform(n: int, mask: int, forward: np.ndarray, inverse: np.ndarray) -> np.ndarray:
    """1_A * 1_{-A} as the inverse transform of |1_A^|^2"""
    values = np.array([(mask >> i) & 1 for i in range(n)], dtype=np.float64)
    spectrum = np.abs(forward @ values) ** 2
    return (inverse @ spectrum).real / n


def difference_equivalence_sweep(n_max: int = 16) -> Dict[str, Any]:
    """
    For every A in Z/nZ containing 0, n <= n_max: A - A meets the squares exactly
    when the autocorrelation, computed through the transform, is nonzero on a square.
    """
    rows = []
    checked = 0
    with LogContext(logger, f"Difference-set equivalence sweep n<={n_max}"):
        for n in range(2, n_max + 1):
            squares = squares_mod(n)
            square_list = squares.sorted()
            forward = dft_matrix(n)
            inverse = dft_matrix(n, sign=1)
            for rest in range(1 << (n - 1)):
                mask = (rest << 1) | 1
                members = [i for i in range(n) if (mask >> i) & 1]
                direct = not avoids_squares(n, members, squares)
                correlation = _autocorrelation_by_transform(n, mask, forward, inverse)
                spectral = bool(square_list) and bool(np.any(correlation[square_list] > 0.5))
                checked += 1
                if direct != spectral:
                    rows.append({'n': n, 'A': tuple(members), 'direct': direct, 'spectral': spectral})

    violations = pd.DataFrame(rows, columns=['n', 'A', 'direct', 'spectral'])
    status = 'PASS' if violations.empty else 'FAIL'
    if status == 'FAIL':
        logger.warning(f"Difference-set equivalence failed for {len(violations)} sets")
    return {
        'status': status,
        'checked': checked,
        'n_max': n_max,
        'violations': violations,
        'generation_time': datetime.now().isoformat()
    }

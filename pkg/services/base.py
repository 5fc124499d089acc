# -*- coding: utf-8 -*-
"""
Base data classes for consistent return types across the WARPSOL toolkit.
"""

from dataclasses import dataclass, field
from typing import Optional, Any, Dict, List


@dataclass
class Result:
    """Base result class for consistent return types across services."""
    success: bool
    message: str
    data: Optional[Any] = None
    error_code: Optional[str] = None

    def __bool__(self) -> bool:
        """Allow Result to be used in boolean contexts."""
        return self.success


@dataclass
class CheckResult(Result):
    """Result of a sampled numerical check (oracle comparisons, consistency sweeps)."""
    max_deviation: float = 0.0
    tolerance: float = 0.0
    points_checked: int = 0
    details: Dict[str, Any] = field(default_factory=dict)


@dataclass
class TableResult(Result):
    """Result of a sampling run that wrote a table to disk."""
    table_path: Optional[str] = None
    columns: List[str] = field(default_factory=list)
    rows: int = 0

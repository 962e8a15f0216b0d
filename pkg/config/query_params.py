# QUERY PARAMETERS - File-format tokens, output formats, modes and exit codes for the query front-end.

import re
from typing import Dict, Optional, Tuple


class QueryParams:
    """Query front-end parameters"""

    # Identifiers (vertex, edge and label names)
    NAME_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
    EPS_KEYWORD = "eps"
    EMPTY_LABELS = "-"
    COMMENT = "#"

    # Output
    FORMATS = ['edges', 'full']
    FORMAT_DEFAULT = 'edges'
    EDGE_SEPARATOR = ","
    MULTIPLICITY_PREFIX = " x"

    # Modes
    MODES = ['shortest', 'cheapest']
    MODE_DEFAULT = 'shortest'

    # Exit codes
    EXIT_OK = 0
    EXIT_INPUT_ERROR = 2
    EXIT_NO_MATCH = 3

    @classmethod
    def is_name(cls, token: str) -> bool:
        return cls.NAME_PATTERN.fullmatch(token) is not None

    @classmethod
    def validate_request(cls, regex: Optional[str], nfa_path: Optional[str],
                         target: Optional[str], all_targets: bool,
                         mode: str, resume_from: Optional[str],
                         limit: Optional[int]) -> Tuple[bool, str]:
        """
        Validate the combination of query options

        Returns:
            (valid, message): Validation result and message
        """
        if (regex is None) == (nfa_path is None):
            return False, "Exactly one of --regex / --nfa must be given"

        if (target is None) == (not all_targets):
            return False, "Exactly one of --target / --all-targets must be given"

        if mode not in cls.MODES:
            return False, f"mode must be one of {cls.MODES}"

        if limit is not None and limit < 0:
            return False, "--limit must be >= 0"

        if resume_from is not None and all_targets:
            return False, "--resume-from needs a single --target"

        if resume_from is not None and mode != 'shortest':
            return False, "--resume-from is only available in shortest mode"

        return True, "Request valid"

    @classmethod
    def get_summary(cls) -> Dict:
        """Return summary of query parameters"""
        return {
            'Identifier pattern': cls.NAME_PATTERN.pattern,
            'Empty-word keyword': cls.EPS_KEYWORD,
            'Empty label list': cls.EMPTY_LABELS,
            'Output formats': cls.FORMATS,
            'Modes': cls.MODES,
            'Exit codes': f"ok={cls.EXIT_OK}, input={cls.EXIT_INPUT_ERROR}, "
                          f"no-match={cls.EXIT_NO_MATCH}",
        }


if __name__ == "__main__":
    print("Query Parameters")
    print("=" * 50)
    for key, value in QueryParams.get_summary().items():
        print(f"{key:30s}: {value}")

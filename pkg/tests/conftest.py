import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polyhorner import make_polynomial

# the running example: p(x) = 5 + x1^3 x2 + 2 x1^2 x3 + 3 x1 x2 x3
P_COEFFICIENTS = [5.0, 1.0, 2.0, 3.0]
P_EXPONENTS = [[0, 0, 0], [3, 1, 0], [2, 0, 1], [1, 1, 1]]
P_RENDERED = "x_1 (x_1 (x_1 (1.0 x_2) + 2.0 x_3) + 3.0 x_2 x_3) + 5.0"


@pytest.fixture
def poly_p():
    return make_polynomial(P_COEFFICIENTS, P_EXPONENTS)


@pytest.fixture
def p_file(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(
        json.dumps(
            {
                "dimension": 3,
                "coefficients": P_COEFFICIENTS,
                "exponents": P_EXPONENTS,
                "name": "p",
            }
        ),
        encoding="utf-8",
    )
    return str(path)


@pytest.fixture
def constant_file(tmp_path):
    path = tmp_path / "constant.json"
    path.write_text(
        json.dumps({"dimension": 3, "coefficients": [7.0], "exponents": [[0, 0, 0]]}),
        encoding="utf-8",
    )
    return str(path)

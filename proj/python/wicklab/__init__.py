# Copyright 2026 The wicklab authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Wick expansions of finite-dimensional integrals."""

import json as _json

try:
    from . import _core
except ImportError:  # development layout: extension built next to the package
    import _core  # type: ignore

parse_polynomial = _core.parse_polynomial
wick_value = _core.wick_value
expand = _core.expand
transform_expand = _core.transform_expand
check_ibp = _core.check_ibp
lattice_demo = _core.lattice_demo
morse_bott = _core.morse_bott
integrate_numeric = _core.integrate_numeric
WicklabError = _core.WicklabError


def run(command, problem, **options):
    """Run a CLI subcommand against a problem description.

    `problem` is a dict in the problem-file schema (or a JSON string). The
    returned dict carries `exit_code`, the parsed `report`, and `csv` for
    sweep commands.
    """
    text = problem if isinstance(problem, str) else _json.dumps(problem)
    raw = _core.run(command, text, **options)
    return {
        "exit_code": raw["exit_code"],
        "report": _json.loads(raw["report_json"]),
        "csv": raw["report_csv"],
    }


__all__ = [
    "parse_polynomial",
    "wick_value",
    "expand",
    "transform_expand",
    "check_ibp",
    "lattice_demo",
    "morse_bott",
    "integrate_numeric",
    "run",
    "WicklabError",
]

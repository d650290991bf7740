# Copyright 2026 The wtype Authors
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
"""Transformations of W-type multipartite entangled states."""

from ._wtype import *  # noqa: F401,F403
from ._wtype import (
    DomainError,
    InfeasibleError,
    NotWTypeError,
    NumericError,
    ParamVector,
)

__all__ = [
    "DomainError",
    "InfeasibleError",
    "NotWTypeError",
    "NumericError",
    "OutcomeSpec",
    "ParamVector",
    "Protocol",
    "apply_kraus_symbolic",
    "build_state",
    "can_convert",
    "canonical",
    "classify",
    "compile_deterministic_protocol",
    "compile_distillation_protocol",
    "concurrence_party",
    "concurrence_subset",
    "distill_bound",
    "equivalent",
    "extract_params",
    "pair_product",
    "pair_product_from_concurrences",
    "run_protocol",
    "solve_phase_closure",
    "synthesize_kraus",
    "validate_ensemble",
]

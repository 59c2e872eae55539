# Copyright 2026 The gqpt Authors
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

"""Gaussian quantum process tomography from coherent-state probes."""

from ._gqpt import (
    FORMAT_VERSION,
    Channel,
    GaussianState,
    GqptError,
    ProbeRecord,
    ProcessState,
    QForm,
    Reconstruction,
    beam_splitter_process,
    bs_squeezed_closed_form,
    canonical_probes,
    load_process,
    max_parameter_deviation,
    predict_coherent,
    predict_gaussian,
    qform_to_state,
    reconstruct,
    save_process,
    simulate,
    state_to_qform,
    validate_probes,
)

__all__ = [name for name in dir() if not name.startswith("_")]

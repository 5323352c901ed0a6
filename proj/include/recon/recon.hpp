// Copyright 2026 The Recon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Umbrella header.

#ifndef RECON_RECON_HPP_
#define RECON_RECON_HPP_

#include "recon/alignment.hpp"
#include "recon/counting.hpp"
#include "recon/dataio.hpp"
#include "recon/domain.hpp"
#include "recon/error.hpp"
#include "recon/experiment.hpp"
#include "recon/knowledge.hpp"
#include "recon/learners.hpp"
#include "recon/metrics.hpp"
#include "recon/model_io.hpp"
#include "recon/reconstruction.hpp"
#include "recon/text.hpp"

#endif  // RECON_RECON_HPP_

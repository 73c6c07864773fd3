//
// Copyright 2026 The geopriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <cstdint>
#include <vector>

#include "geopriv/grid.hpp"
#include "geopriv/prior.hpp"
#include "geopriv/users.hpp"

namespace geopriv {

// One isotropic Gaussian bump, discretized at cell centers, truncated to
// the grid and renormalized. spread is in grid units; spread == 0 puts all
// mass on the center region.
struct MixtureComponent {
  int center_region = 0;
  double spread = 1.0;
  double weight = 1.0;
};

struct SynthResult {
  UserLocations users;
  Prior prior;  // exact mixture distribution, not the empirical sample
};

// Draws n users i.i.d. from the mixture. User i's draw is a pure function
// of (seed, i), so results are bit-reproducible and schedule-independent.
// User ids are "u0".."u<n-1>".
SynthResult synth_population(const Grid& grid,
                             const std::vector<MixtureComponent>& components,
                             int n, std::uint64_t seed);

// The exact mixture distribution on its own.
Prior mixture_prior(const Grid& grid,
                    const std::vector<MixtureComponent>& components);

}  // namespace geopriv

// Copyright 2026 The toa-firstclick Authors
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

#ifndef TOA_CHECKS_HPP
#define TOA_CHECKS_HPP

#include <string>
#include <vector>

namespace toa {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Quick self-test of the library invariants (a few seconds): propagator
/// against the closed form and the dense oracle, unitarity, projector
/// algebra, probability conservation, memoryless normalization and config
/// round trips of the built-in scenarios.  Deterministic (fixed seeds).
std::vector<CheckResult> run_invariant_checks();

}  // namespace toa

#endif  // TOA_CHECKS_HPP

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

#ifndef TOA_ERRORS_HPP
#define TOA_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace toa {

/// Invalid parameters for a grid, detector, propagator or config file.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its contract (mismatched grids,
/// empty inputs, disabled snapshots, ...).
class UsageError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Base class for numerical or physical failures detected at run time.
class PhysicsError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A Gaussian packet (or its evolved width) does not fit inside the grid.
class SupportError : public PhysicsError {
   public:
    using PhysicsError::PhysicsError;
};

/// Amplitude left the working grid, or could wrap around the periodic
/// transform domain within one step.
class WrapAroundError : public PhysicsError {
   public:
    using PhysicsError::PhysicsError;
};

/// The detection-history probabilities do not add up to the initial norm.
class ConsistencyError : public PhysicsError {
   public:
    using PhysicsError::PhysicsError;
};

/// The Bayes denominator vanished: nothing ever reaches the detector.
class NoDetectionError : public PhysicsError {
   public:
    using PhysicsError::PhysicsError;
};

class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Collects non-fatal warnings (e.g. a packet close to the grid edge).
struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
};

}  // namespace toa

#endif  // TOA_ERRORS_HPP

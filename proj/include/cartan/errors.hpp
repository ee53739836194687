// Copyright 2026 The cartan-synth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cartan {

enum class ErrorCode {
  NotNormal,
  NoConvergence,
  NotCommuting,
  NotSymmetric,
  NotUnitary,
  BranchAmbiguity,
  NotSkewHermitian,
  BadParams,
  TypeMismatch,
  BadLocalChoice,
  ScheduleExhausted,
  FactorizationFailed,
  NonCommutingInvolutions,
  DimensionMismatch,
  CartanRelationViolated,
  NotASubalgebra,
  RealityViolated,
  PairingFailed,
  GluingFailed,
  BlockSingular,
  UnsupportedScheme,
  LogOutsideSubspace,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception type; `code()`
// identifies the failure class for callers that need to branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cartan

// Copyright 2026 The sidlab Authors
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

namespace sidlab {

enum class ErrorKind {
  NonPositiveRange,
  TooFewPoints,
  TooManyPoints,
  UnsupportedFamily,
  InvalidParameter,
  LengthMismatch,
  GridMismatch,
  NotHermitian,
  InvalidState,
  WindowExceeded,
  DimensionMismatch,
  LatticeTooLarge,
  NotClosed,
  InvalidDocument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveRange: return "NonPositiveRange";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::TooManyPoints: return "TooManyPoints";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::WindowExceeded: return "WindowExceeded";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LatticeTooLarge: return "LatticeTooLarge";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::InvalidDocument: return "InvalidDocument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sidlab

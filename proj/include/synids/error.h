// Copyright 2026 The synids Authors
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

#ifndef SYNIDS_ERROR_H_
#define SYNIDS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace synids {

enum class ErrorCode {
  kMalformedHeader,
  kTruncatedRecord,
  kLineParse,
  kDegenerateBasis,
  kDimensionMismatch,
  kEmptyInput,
  kInsufficientData,
  kMissingClass,
  kEmptyClass,
  kFileError,
  kFormatError,
  kFormatVersionMismatch,
  kChecksumMismatch,
  kInvalidSpec,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// Process exit code for the command-line tool:
// 0 success, 2 empty/missing input class, 3 insufficient data,
// 4 format error, 1 other.
int ExitCodeFor(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace synids

#endif  // SYNIDS_ERROR_H_

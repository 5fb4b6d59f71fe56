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

#include "synids/error.h"

namespace synids {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedHeader: return "MalformedHeader";
    case ErrorCode::kTruncatedRecord: return "TruncatedRecord";
    case ErrorCode::kLineParse: return "LineParseError";
    case ErrorCode::kDegenerateBasis: return "DegenerateBasis";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kMissingClass: return "MissingClass";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kFileError: return "FileError";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kFormatVersionMismatch: return "FormatVersionMismatch";
    case ErrorCode::kChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyClass:
    case ErrorCode::kMissingClass:
    case ErrorCode::kEmptyInput:
      return 2;
    case ErrorCode::kInsufficientData:
      return 3;
    case ErrorCode::kMalformedHeader:
    case ErrorCode::kTruncatedRecord:
    case ErrorCode::kLineParse:
    case ErrorCode::kFormatError:
    case ErrorCode::kFormatVersionMismatch:
    case ErrorCode::kChecksumMismatch:
      return 4;
    default:
      return 1;
  }
}

}  // namespace synids

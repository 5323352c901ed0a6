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

#ifndef RECON_ERROR_HPP_
#define RECON_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace recon {

enum class ErrorCode {
  kInvalidArgument,
  kParseError,
  kSchemaMismatch,
  kSizeMismatch,
  kContradictoryPath,
  kEmptyCapture,
  kCeilingExceeded,
  kUndefinedForRuleLists,
  kNonBinarySchema,
  kMissingLabel,
  kRaggedRows,
  kEmptyFile,
  kIoError,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kContradictoryPath: return "ContradictoryPath";
    case ErrorCode::kEmptyCapture: return "EmptyCapture";
    case ErrorCode::kCeilingExceeded: return "CeilingExceeded";
    case ErrorCode::kUndefinedForRuleLists: return "UndefinedForRuleLists";
    case ErrorCode::kNonBinarySchema: return "NonBinarySchema";
    case ErrorCode::kMissingLabel: return "MissingLabel";
    case ErrorCode::kRaggedRows: return "RaggedRows";
    case ErrorCode::kEmptyFile: return "EmptyFile";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace recon

#endif  // RECON_ERROR_HPP_

// uwasr/base/error.h

// Copyright 2026  The uwasr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef UWASR_BASE_ERROR_H_
#define UWASR_BASE_ERROR_H_

#include <stdexcept>
#include <string>

namespace uwasr {

enum class ErrorCode {
  kSignalTooShort,
  kAllSilent,
  kInvalidNoiseWindow,
  kDimMismatch,
  kEmptyDataset,
  kMissingFeature,
  kEmptyInput,
  kTooLarge,
  kEmptyReference,
  kUnknownWord,
  kMissingDependency,
  kIoError,
  kInvalidConfig,
  kFormatError,
};

const char *ErrorCodeName(ErrorCode code);

/// All failures raised by the library carry one of the codes above; the
/// message names the offending value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string &message);

inline void Require(bool condition, ErrorCode code, const std::string &message) {
  if (!condition) Fail(code, message);
}

}  // namespace uwasr

#endif  // UWASR_BASE_ERROR_H_

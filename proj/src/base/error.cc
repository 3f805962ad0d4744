// src/base/error.cc

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

#include "uwasr/base/error.h"

namespace uwasr {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSignalTooShort: return "SignalTooShort";
    case ErrorCode::kAllSilent: return "AllSilent";
    case ErrorCode::kInvalidNoiseWindow: return "InvalidNoiseWindow";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kMissingFeature: return "MissingFeature";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kUnknownWord: return "UnknownWord";
    case ErrorCode::kMissingDependency: return "MissingDependency";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kFormatError: return "FormatError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Fail(ErrorCode code, const std::string &message) {
  throw Error(code, message);
}

}  // namespace uwasr

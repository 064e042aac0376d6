// Copyright 2026 The cvclone Authors
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

#ifndef CVCLONE_ERRORS_HPP
#define CVCLONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cvclone {

// Root of every error thrown by the library. Callers that only care about
// "the physics rejected this input" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CVCLONE_DEFINE_ERROR(Name)          \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

CVCLONE_DEFINE_ERROR(DimensionError);
CVCLONE_DEFINE_ERROR(IndexError);
CVCLONE_DEFINE_ERROR(InvalidState);
CVCLONE_DEFINE_ERROR(InvalidChannel);
CVCLONE_DEFINE_ERROR(InvalidTransform);
CVCLONE_DEFINE_ERROR(InvalidGain);
CVCLONE_DEFINE_ERROR(InvalidShape);
CVCLONE_DEFINE_ERROR(InvalidNoise);
CVCLONE_DEFINE_ERROR(InvalidVariance);
CVCLONE_DEFINE_ERROR(NoSqueezing);
CVCLONE_DEFINE_ERROR(DomainError);
CVCLONE_DEFINE_ERROR(TooFewSamples);
CVCLONE_DEFINE_ERROR(GridTooSmall);
CVCLONE_DEFINE_ERROR(InvalidSpec);

#undef CVCLONE_DEFINE_ERROR

}  // namespace cvclone

#endif  // CVCLONE_ERRORS_HPP

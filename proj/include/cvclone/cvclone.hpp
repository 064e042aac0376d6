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

#ifndef CVCLONE_CVCLONE_HPP
#define CVCLONE_CVCLONE_HPP

#include "cvclone/errors.hpp"
#include "cvclone/gaussian.hpp"
#include "cvclone/optics.hpp"
#include "cvclone/cloners.hpp"
#include "cvclone/random.hpp"
#include "cvclone/measurement.hpp"
#include "cvclone/grid_oracle.hpp"
#include "cvclone/qkd.hpp"
#include "cvclone/io.hpp"
#include "cvclone/verify.hpp"

#endif  // CVCLONE_CVCLONE_HPP

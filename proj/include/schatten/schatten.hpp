// Copyright 2026 The schatten authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Umbrella header for the core library (everything except file I/O and the
// command-line front end).

#include "schatten/bounds.hpp"
#include "schatten/errors.hpp"
#include "schatten/linalg.hpp"
#include "schatten/norms.hpp"
#include "schatten/pinching.hpp"
#include "schatten/rng.hpp"
#include "schatten/states.hpp"
#include "schatten/summation.hpp"
#include "schatten/types.hpp"
#include "schatten/verify.hpp"

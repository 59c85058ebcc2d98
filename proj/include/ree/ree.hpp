// Copyright 2026 The ree2q Authors
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

#pragma once

#include "ree/bell.hpp"
#include "ree/divided_difference.hpp"
#include "ree/error.hpp"
#include "ree/families.hpp"
#include "ree/io.hpp"
#include "ree/measures.hpp"
#include "ree/newton.hpp"
#include "ree/oracle.hpp"
#include "ree/qmat.hpp"
#include "ree/random.hpp"
#include "ree/ree_core.hpp"

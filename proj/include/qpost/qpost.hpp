// Copyright 2026 qpost developers
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include "qpost/bench.hpp"
#include "qpost/chimera.hpp"
#include "qpost/correction.hpp"
#include "qpost/errors.hpp"
#include "qpost/generate.hpp"
#include "qpost/io.hpp"
#include "qpost/ising.hpp"
#include "qpost/report.hpp"
#include "qpost/rng.hpp"
#include "qpost/sampler.hpp"

/*
   Copyright 2026 The trimat Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "trimat/classify.hpp"
#include "trimat/counterexample.hpp"
#include "trimat/cpoly.hpp"
#include "trimat/error.hpp"
#include "trimat/field.hpp"
#include "trimat/generic.hpp"
#include "trimat/inductive.hpp"
#include "trimat/ncpoly.hpp"
#include "trimat/oracle.hpp"
#include "trimat/parallel.hpp"
#include "trimat/prime_field.hpp"
#include "trimat/rational.hpp"
#include "trimat/roots.hpp"
#include "trimat/utm.hpp"
#include "trimat/witness.hpp"

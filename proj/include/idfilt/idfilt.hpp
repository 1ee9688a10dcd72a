/* Copyright 2026 The idfilt Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

#ifndef IDFILT_IDFILT_HPP
#define IDFILT_IDFILT_HPP

#include "errors.hpp"
#include "rational.hpp"
#include "field.hpp"
#include "poly.hpp"
#include "linalg.hpp"
#include "jet.hpp"
#include "filtration.hpp"
#include "leading.hpp"
#include "expansion.hpp"
#include "invariants.hpp"
#include "instance.hpp"
#include "random.hpp"

#endif

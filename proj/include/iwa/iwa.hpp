/*
   Copyright 2026 The iwa Authors

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

#ifndef IWA_IWA_HPP
#define IWA_IWA_HPP

#include "cli.hpp"
#include "elementary.hpp"
#include "error.hpp"
#include "finite_dual.hpp"
#include "finite_module.hpp"
#include "growth.hpp"
#include "intpoly.hpp"
#include "module_file.hpp"
#include "presented.hpp"
#include "profile.hpp"
#include "residue.hpp"
#include "series.hpp"
#include "snf.hpp"
#include "tower.hpp"
#include "weierstrass.hpp"

#endif

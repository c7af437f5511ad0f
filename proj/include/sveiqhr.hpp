/*
* Copyright (C) 2026 The sveiqhr authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef SVEIQHR_SVEIQHR_HPP
#define SVEIQHR_SVEIQHR_HPP

#include "sveiqhr/config.hpp"
#include "sveiqhr/dynamics.hpp"
#include "sveiqhr/equilibrium.hpp"
#include "sveiqhr/errors.hpp"
#include "sveiqhr/figures.hpp"
#include "sveiqhr/manifest.hpp"
#include "sveiqhr/model.hpp"
#include "sveiqhr/parameters.hpp"
#include "sveiqhr/serialize.hpp"
#include "sveiqhr/strategy.hpp"
#include "sveiqhr/version.hpp"

#endif // SVEIQHR_SVEIQHR_HPP

/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The effsub Authors
 */

#pragma once

#include "effsub/chow.hpp"
#include "effsub/effective_constants.hpp"
#include "effsub/errors.hpp"
#include "effsub/filtration.hpp"
#include "effsub/graded_ideal.hpp"
#include "effsub/heights.hpp"
#include "effsub/hilbert_bounds.hpp"
#include "effsub/numbers.hpp"
#include "effsub/parse.hpp"
#include "effsub/polynomial.hpp"
#include "effsub/report.hpp"
#include "effsub/scenario.hpp"

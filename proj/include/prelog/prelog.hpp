// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "prelog/bounds.hpp"
#include "prelog/eigen.hpp"
#include "prelog/error.hpp"
#include "prelog/models.hpp"
#include "prelog/parallel.hpp"
#include "prelog/processes.hpp"
#include "prelog/random.hpp"
#include "prelog/serialize.hpp"
#include "prelog/spectra.hpp"
#include "prelog/toeplitz.hpp"

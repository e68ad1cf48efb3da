#pragma once

#include "admissibility.hpp"
#include "algebra.hpp"
#include "config.hpp"
#include "duality.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "io.hpp"
#include "partial_map.hpp"
#include "structure.hpp"
#include "term.hpp"
#include "test_space.hpp"

#pragma once

#include "metriq/corpus.hpp"
#include "metriq/error.hpp"
#include "metriq/exact_scalar.hpp"
#include "metriq/genericity.hpp"
#include "metriq/genpoly.hpp"
#include "metriq/invariants.hpp"
#include "metriq/io.hpp"
#include "metriq/isometry.hpp"
#include "metriq/linalg.hpp"
#include "metriq/metric_space.hpp"
#include "metriq/numeric.hpp"
#include "metriq/reconstruct.hpp"
#include "metriq/symbol_basis.hpp"

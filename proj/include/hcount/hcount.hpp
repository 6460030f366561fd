#pragma once

#include "hcount/arith.hpp"
#include "hcount/counting.hpp"
#include "hcount/errors.hpp"
#include "hcount/gauge.hpp"
#include "hcount/io.hpp"
#include "hcount/numeric.hpp"
#include "hcount/parallel.hpp"
#include "hcount/riesz.hpp"
#include "hcount/scanner.hpp"
#include "hcount/verify.hpp"

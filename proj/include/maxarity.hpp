#pragma once

#include "maxarity/rational.hpp"
#include "maxarity/linalg.hpp"
#include "maxarity/simplex.hpp"
#include "maxarity/expr.hpp"
#include "maxarity/arrangement.hpp"
#include "maxarity/equivalence.hpp"
#include "maxarity/delta.hpp"
#include "maxarity/arity.hpp"
#include "maxarity/decompose.hpp"
#include "maxarity/report.hpp"
#include "maxarity/json_io.hpp"

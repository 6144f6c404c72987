#pragma once

#include "bettifan/rational.hpp"
#include "bettifan/errors.hpp"
#include "bettifan/polynomial.hpp"
#include "bettifan/diagram.hpp"
#include "bettifan/poset.hpp"
#include "bettifan/functionals.hpp"
#include "bettifan/decompose.hpp"
#include "bettifan/hilbert.hpp"
#include "bettifan/io.hpp"

#pragma once

#include "prmachine/code.hpp"
#include "prmachine/deduction.hpp"
#include "prmachine/denote.hpp"
#include "prmachine/eval.hpp"
#include "prmachine/godel.hpp"
#include "prmachine/ordinal.hpp"
#include "prmachine/partial.hpp"
#include "prmachine/stdlib.hpp"
#include "prmachine/surface.hpp"
#include "prmachine/term.hpp"
#include "prmachine/value.hpp"

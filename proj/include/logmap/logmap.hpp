#pragma once

#include "logmap/analysis.hpp"
#include "logmap/ctrlsim.hpp"
#include "logmap/errors.hpp"
#include "logmap/fixq16.hpp"
#include "logmap/uoml.hpp"
